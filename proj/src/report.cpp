#include "lppl/report.hpp"

#include <algorithm>
#include <ostream>

#include "lppl/csv.hpp"
#include "lppl/error.hpp"

namespace lppl {

namespace {

Json start_json(const StartPoint& p) {
    return Json{{"tc", p.tc}, {"m", p.m}, {"omega", p.omega}};
}

Json constraints_json(const ConstraintSet& c) {
    Json j;
    j["m_min"] = c.m_min;
    j["m_max"] = c.m_max;
    j["omega_min"] = c.omega_min;
    j["omega_max"] = c.omega_max;
    j["require_B_negative"] = c.require_B_negative;
    j["amplitude_cap"] = c.amplitude_cap ? Json(*c.amplitude_cap) : Json(nullptr);
    j["require_tc_after_window"] = c.require_tc_after_window;
    return j;
}

}  // namespace

TcSummary summarize_tc(const FitResult& fit, const TradingCalendar& calendar, double tc_std) {
    TcSummary s;
    s.index = fit.params.tc;
    s.offset = fit.tc_offset();
    s.std = tc_std;
    s.anchor = fit.window_end;
    s.date = tc_to_date(calendar, s.anchor, s.offset);
    s.band_low = tc_to_date(calendar, s.anchor, s.offset - tc_std);
    s.band_high = tc_to_date(calendar, s.anchor, s.offset + tc_std);
    return s;
}

TcSummary summarize_tc(const ScanResult& scan) {
    return TcSummary{scan.best.params.tc, scan.tc_offset, scan.tc_std, scan.anchor,
                     scan.tc_date,        scan.band_low,  scan.band_high};
}

Json to_json(const LpplParams& p) {
    Json j;
    j["A"] = p.A;
    j["B"] = p.B;
    j["C1"] = p.C1;
    j["C2"] = p.C2;
    j["m"] = p.m;
    j["omega"] = p.omega;
    j["tc"] = p.tc;
    j["C"] = p.amplitude();
    j["phi"] = p.phase();
    j["lambda"] = p.lambda();
    return j;
}

Json to_json(const TcSummary& tc) {
    Json j;
    j["index"] = tc.index;
    j["offset"] = tc.offset;
    j["std"] = tc.std;
    j["anchor"] = format_date(tc.anchor);
    j["date"] = format_date(tc.date);
    j["band"] = Json::array({format_date(tc.band_low), format_date(tc.band_high)});
    return j;
}

Json fit_fields(const FitResult& fit) {
    Json j;
    j["params"] = to_json(fit.params);
    j["ssr"] = fit.ssr;
    j["mse"] = fit.mse;
    j["n_obs"] = fit.n_obs;
    j["window_start"] = format_date(fit.window_start);
    j["window_end"] = format_date(fit.window_end);
    j["converged"] = fit.converged;
    j["start_point"] = start_json(fit.start);
    j["start_index"] = fit.start_index;
    j["iterations"] = fit.iterations;
    return j;
}

Json to_json(const FitResult& fit, const TradingCalendar& calendar) {
    Json j = fit_fields(fit);
    j["tc"] = to_json(summarize_tc(fit, calendar));
    return j;
}

Json to_json(const ScanResult& scan, const TradingCalendar& calendar) {
    Json windows = Json::array();
    for (const WindowFit& w : scan.windows) {
        Json entry;
        entry["t1"] = format_date(w.t1);
        if (w.fit) {
            entry["status"] = "ok";
            entry["fit"] = fit_fields(*w.fit);
            entry["tc_offset"] = w.fit->tc_offset();
            entry["tc_date"] = format_date(tc_to_date(calendar, scan.anchor, w.fit->tc_offset()));
        } else {
            entry["status"] = "failed";
            entry["failure"] = w.failure;
        }
        windows.push_back(std::move(entry));
    }
    Json j;
    j["windows"] = std::move(windows);
    j["best_t1"] = format_date(scan.best_t1);
    j["best"] = fit_fields(scan.best);
    j["tc"] = to_json(summarize_tc(scan));
    j["tc"]["mean_offset"] = scan.tc_mean;
    return j;
}

Json to_json(const CorrelationReport& report) {
    Json entries = Json::array();
    for (const CorrelationEntry& e : report.entries) {
        entries.push_back(Json{{"name", e.name},
                               {"level_corr", e.level_corr},
                               {"return_corr", e.return_corr},
                               {"n_obs", e.n_obs}});
    }
    return Json{{"reference", report.reference}, {"entries", std::move(entries)}};
}

Json to_json(const FitConfig& c) {
    Json j;
    j["m_grid"] = c.m_grid;
    j["tc_grid_step"] = c.tc_grid_step;
    j["tc_grid_span_fraction"] = c.tc_grid_span_fraction;
    j["omega_start"] = c.omega_start;
    j["tolerance"] = c.tolerance;
    j["max_iterations"] = c.max_iterations;
    j["constraints"] = constraints_json(c.constraints);
    return j;
}

Json to_json(const ScanConfig& c) {
    Json j;
    j["t1_first"] = format_date(c.t1_first);
    j["t1_last"] = format_date(c.t1_last);
    j["t1_step"] = c.t1_step;
    j["t2"] = format_date(c.t2);
    j["fit"] = to_json(c.fit);
    Json holidays = Json::array();
    for (auto day : c.calendar.holidays()) holidays.push_back(format_date(Date{day}));
    j["holidays"] = std::move(holidays);
    return j;
}

Json describe(const PriceSeries& s) {
    Json j;
    j["label"] = s.label();
    j["n_obs"] = s.size();
    j["first_date"] = s.empty() ? Json(nullptr) : Json(format_date(s.front_date()));
    j["last_date"] = s.empty() ? Json(nullptr) : Json(format_date(s.back_date()));
    return j;
}

Json make_report(std::string_view command, Json input, Json config, Json result) {
    Json j;
    j["schema"] = kReportSchema;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = command;
    j["input"] = std::move(input);
    j["config"] = std::move(config);
    j["result"] = std::move(result);
    return j;
}

Json truth_to_json(const SynthSpec& spec) {
    Json j;
    j["schema"] = "lppl-synth-truth";
    j["schema_version"] = 1;
    j["params"] = to_json(spec.params);
    j["n"] = spec.n;
    j["noise_sigma"] = spec.noise_sigma;
    j["seed"] = spec.seed;
    j["start_date"] = format_date(spec.start_date);
    return j;
}

SynthSpec truth_from_json(const Json& j) {
    try {
        SynthSpec spec;
        const Json& p = j.at("params");
        spec.params = LpplParams{p.at("A").get<double>(),  p.at("B").get<double>(),
                                 p.at("C1").get<double>(), p.at("C2").get<double>(),
                                 p.at("m").get<double>(),  p.at("omega").get<double>(),
                                 p.at("tc").get<double>()};
        spec.n = j.at("n").get<std::size_t>();
        spec.noise_sigma = j.at("noise_sigma").get<double>();
        spec.seed = j.at("seed").get<std::uint64_t>();
        const auto date = parse_date(j.at("start_date").get<std::string>());
        if (!date) throw Error(ErrorKind::Parse, "truth sidecar: bad start_date");
        spec.start_date = *date;
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("truth sidecar: ") + e.what());
    }
}

void write_plot_data(std::ostream& out, const PriceSeries& window, const LpplParams& params,
                     const TcSummary& tc, const TradingCalendar& calendar) {
    const auto in_band = [&](Date d) { return tc.band_low <= d && d <= tc.band_high; };
    const auto fitted = [&](double t) {
        return t < params.tc ? format_number(evaluate_lppl(params, t)) : std::string();
    };
    out << "date,observed,fitted,in_band,is_tc\n";
    for (std::size_t i = 0; i < window.size(); ++i) {
        const Date d = window.dates()[i];
        out << format_date(d) << ',' << format_number(window.values()[i]) << ','
            << fitted(static_cast<double>(i)) << ',' << (in_band(d) ? 1 : 0) << ','
            << (d == tc.date ? 1 : 0) << '\n';
    }
    const Date last = std::max(tc.date, tc.band_high);
    const double last_index = static_cast<double>(window.size()) - 1.0;
    Date d = window.back_date();
    for (long k = 1;; ++k) {
        d = tc_to_date(calendar, window.back_date(), static_cast<double>(k));
        if (last < d) break;
        out << format_date(d) << ",," << fitted(last_index + static_cast<double>(k)) << ','
            << (in_band(d) ? 1 : 0) << ',' << (d == tc.date ? 1 : 0) << '\n';
    }
}

}  // namespace lppl
