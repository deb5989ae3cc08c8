#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lppl/calendar.hpp"
#include "lppl/fitter.hpp"
#include "lppl/series.hpp"

namespace lppl {

/// Shrinking-window stability scan: t1 moves forward from t1_first to
/// t1_last (inclusive) in steps of t1_step trading days; every window ends at t2.
struct ScanConfig {
    Date t1_first{};
    Date t1_last{};
    int t1_step = 5;
    Date t2{};
    FitConfig fit;
    TradingCalendar calendar;

    void validate() const;
};

struct WindowFit {
    Date t1{};
    std::optional<FitResult> fit;
    std::string failure;  // set when fit is empty
};

struct ScanResult {
    std::vector<WindowFit> windows;
    FitResult best;
    Date best_t1{};
    /// Last observation shared by every window; tc offsets count from here.
    Date anchor{};

    double tc_offset = 0.0;  // best fit, trading days past anchor
    double tc_mean = 0.0;    // over successful windows, trading days past anchor
    double tc_std = 0.0;     // sample standard deviation, trading days
    Date tc_date{};
    Date band_low{};
    Date band_high{};

    std::vector<FitResult> successful() const;
};

/// Window start dates, both endpoints included.
std::vector<Date> window_starts(const ScanConfig& config);

/// Ascending MSE, stable, ties resolved by earlier window start.
/// Throws InvalidArgument on empty input.
std::vector<FitResult> compare_windows(std::vector<FitResult> results);

/// Date `k` trading days from `anchor` after rounding half-up; `anchor`
/// itself need not be a trading day.
Date tc_to_date(const TradingCalendar& calendar, Date anchor, double offset);

/// Sample standard deviation (n-1); zero for fewer than two values.
double sample_std(const std::vector<double>& values);

/// Runs fit_window on every window. Windows whose fit fails are recorded and
/// excluded from tc statistics; throws NoFeasibleFit only if all fail.
/// Throws InvalidArgument if any window is shorter than kMinWindowLength.
ScanResult scan(const PriceSeries& series, const ScanConfig& config);

}  // namespace lppl
