#include "lppl/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lppl/error.hpp"

namespace lppl {

void ScanConfig::validate() const {
    if (!t1_first.ok() || !t1_last.ok() || !t2.ok()) {
        throw Error(ErrorKind::InvalidArgument, "scan dates are not set");
    }
    if (!(t1_first <= t1_last && t1_last < t2)) {
        throw Error(ErrorKind::InvalidArgument, "scan requires t1_first <= t1_last < t2");
    }
    if (t1_step < 1) throw Error(ErrorKind::InvalidArgument, "t1 step must be >= 1");
    fit.validate();
}

std::vector<FitResult> ScanResult::successful() const {
    std::vector<FitResult> out;
    for (const WindowFit& w : windows) {
        if (w.fit) out.push_back(*w.fit);
    }
    return out;
}

std::vector<Date> window_starts(const ScanConfig& config) {
    std::vector<Date> starts;
    for (Date d = config.calendar.next_or_same(config.t1_first); d <= config.t1_last;
         d = config.calendar.offset(d, config.t1_step)) {
        starts.push_back(d);
    }
    return starts;
}

std::vector<FitResult> compare_windows(std::vector<FitResult> results) {
    if (results.empty()) throw Error(ErrorKind::InvalidArgument, "no fit results to compare");
    std::stable_sort(results.begin(), results.end(), [](const FitResult& a, const FitResult& b) {
        if (a.mse != b.mse) return a.mse < b.mse;
        return a.window_start < b.window_start;
    });
    return results;
}

Date tc_to_date(const TradingCalendar& calendar, Date anchor, double offset) {
    const long k = static_cast<long>(std::floor(offset + 0.5));
    std::chrono::sys_days day{anchor};
    const std::chrono::days step{k > 0 ? 1 : -1};
    for (long remaining = std::labs(k); remaining > 0;) {
        day += step;
        if (calendar.is_trading_day(Date{day})) --remaining;
    }
    return Date{day};
}

double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (n - 1.0));
}

ScanResult scan(const PriceSeries& series, const ScanConfig& config) {
    config.validate();
    const std::vector<Date> starts = window_starts(config);
    if (starts.empty()) throw Error(ErrorKind::InvalidArgument, "scan has no windows");

    std::vector<PriceSeries> windows;
    for (Date t1 : starts) {
        PriceSeries w = series.slice(t1, config.t2);
        if (w.size() < kMinWindowLength) {
            throw Error(ErrorKind::InvalidArgument,
                        "window starting " + format_date(t1) + " has " +
                            std::to_string(w.size()) + " observations; at least " +
                            std::to_string(kMinWindowLength) + " required");
        }
        windows.push_back(std::move(w));
    }

    ScanResult result;
    result.anchor = windows.front().back_date();
    std::vector<double> offsets;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        WindowFit wf{starts[i], std::nullopt, {}};
        try {
            wf.fit = fit_window(windows[i], config.fit);
            offsets.push_back(wf.fit->tc_offset());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoFeasibleFit) throw;
            wf.failure = e.what();
        }
        result.windows.push_back(std::move(wf));
    }
    if (offsets.empty()) {
        throw Error(ErrorKind::NoFeasibleFit, "no window produced a feasible fit");
    }

    const std::vector<FitResult> ranked = compare_windows(result.successful());
    result.best = ranked.front();
    for (const WindowFit& w : result.windows) {
        if (w.fit && w.fit->window_start == result.best.window_start) result.best_t1 = w.t1;
    }

    result.tc_offset = result.best.tc_offset();
    result.tc_mean = std::accumulate(offsets.begin(), offsets.end(), 0.0) /
                     static_cast<double>(offsets.size());
    result.tc_std = sample_std(offsets);
    result.tc_date = tc_to_date(config.calendar, result.anchor, result.tc_offset);
    result.band_low = tc_to_date(config.calendar, result.anchor, result.tc_offset - result.tc_std);
    result.band_high = tc_to_date(config.calendar, result.anchor, result.tc_offset + result.tc_std);
    return result;
}

}  // namespace lppl
