#include "lppl/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lppl/error.hpp"
#include "lppl/linear.hpp"
#include "parallel.hpp"

namespace lppl {

double NormalGenerator::uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalGenerator::operator()() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

void SynthSpec::validate() const {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "synthetic series needs n >= 2");
    if (!(noise_sigma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise sigma must be >= 0");
    if (!(params.tc > static_cast<double>(n) - 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "tc must lie beyond the generated window");
    }
    if (!start_date.ok()) throw Error(ErrorKind::InvalidArgument, "invalid start date");
}

std::vector<double> model_curve(const LpplParams& params, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = evaluate_lppl(params, static_cast<double>(i));
    return out;
}

PriceSeries generate(const SynthSpec& spec) {
    spec.validate();
    std::vector<double> values = model_curve(spec.params, spec.n);
    if (spec.noise_sigma > 0.0) {
        NormalGenerator noise(spec.seed);
        for (double& v : values) v += spec.noise_sigma * noise();
    }
    const TradingCalendar calendar;
    std::vector<Date> dates;
    dates.reserve(spec.n);
    Date d = calendar.next_or_same(spec.start_date);
    for (std::size_t i = 0; i < spec.n; ++i) {
        dates.push_back(d);
        d = calendar.offset(d, 1);
    }
    return PriceSeries(std::move(dates), std::move(values), "synthetic");
}

double GridAxis::at(std::size_t i) const {
    if (points <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

double GridAxis::cell() const {
    return points <= 1 ? 0.0 : (hi - lo) / static_cast<double>(points - 1);
}

StartPoint SsrGrid::node(std::size_t index) const {
    const std::size_t io = index % omega.points;
    const std::size_t im = (index / omega.points) % m.points;
    const std::size_t it = index / (omega.points * m.points);
    return {tc.at(it), m.at(im), omega.at(io)};
}

StartPoint SsrGrid::argmin_point() const { return node(argmin); }

SsrGrid brute_force_ssr_grid(const PriceSeries& series, const GridAxis& tc, const GridAxis& m,
                             const GridAxis& omega, std::size_t cap, unsigned threads) {
    for (const GridAxis* axis : {&tc, &m, &omega}) {
        if (axis->points == 0) throw Error(ErrorKind::InvalidArgument, "grid axis has no points");
    }
    const std::size_t total = tc.points * m.points * omega.points;
    if (total > cap) {
        throw Error(ErrorKind::InvalidArgument,
                    "grid of " + std::to_string(total) + " nodes exceeds cap " +
                        std::to_string(cap));
    }
    const double last = static_cast<double>(series.size()) - 1.0;
    if (!(std::min(tc.lo, tc.at(tc.points - 1)) > last)) {
        throw Error(ErrorKind::InvalidArgument, "tc grid must lie beyond the last observation");
    }

    SsrGrid grid{tc, m, omega, std::vector<double>(total), 0};
    const auto values = series.view();
    detail::parallel_for(total, threads, [&](std::size_t i) {
        const StartPoint p = grid.node(i);
        const auto fit = try_solve_linear(values, p.tc, p.m, p.omega);
        grid.ssr[i] = fit ? fit->ssr : std::numeric_limits<double>::infinity();
    });
    for (std::size_t i = 1; i < total; ++i) {
        if (grid.ssr[i] < grid.ssr[grid.argmin]) grid.argmin = i;
    }
    return grid;
}

}  // namespace lppl
