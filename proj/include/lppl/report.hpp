#pragma once

#include <iosfwd>
#include <string_view>

#include "json.hpp"
#include "lppl/analytics.hpp"
#include "lppl/calendar.hpp"
#include "lppl/fitter.hpp"
#include "lppl/scan.hpp"
#include "lppl/synth.hpp"

namespace lppl {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "lppl-report";
inline constexpr int kReportSchemaVersion = 1;

/// Critical time in every form a report carries. `index` is window-relative,
/// `offset` counts trading days past `anchor` (the last observation).
struct TcSummary {
    double index = 0.0;
    double offset = 0.0;
    double std = 0.0;
    Date anchor{};
    Date date{};
    Date band_low{};
    Date band_high{};
};

TcSummary summarize_tc(const FitResult& fit, const TradingCalendar& calendar, double tc_std = 0.0);
TcSummary summarize_tc(const ScanResult& scan);

Json to_json(const LpplParams& params);
Json to_json(const TcSummary& tc);
/// The fit without tc dates (see to_json(FitResult, TradingCalendar)).
Json fit_fields(const FitResult& fit);
Json to_json(const FitResult& fit, const TradingCalendar& calendar);
Json to_json(const ScanResult& scan, const TradingCalendar& calendar);
Json to_json(const CorrelationReport& report);
Json to_json(const FitConfig& config);
Json to_json(const ScanConfig& config);
Json describe(const PriceSeries& series);

/// {"schema", "schema_version", "command", "input", "config", "result"}
Json make_report(std::string_view command, Json input, Json config, Json result);

/// Ground-truth sidecar written next to synthetic series.
Json truth_to_json(const SynthSpec& spec);
SynthSpec truth_from_json(const Json& json);

/// Plot data: date, observed, fitted, in_band, is_tc. Rows cover the window and
/// continue past its end through the later of the tc date and the band end.
void write_plot_data(std::ostream& out, const PriceSeries& window, const LpplParams& params,
                     const TcSummary& tc, const TradingCalendar& calendar);

}  // namespace lppl
