#include "lppl/fitter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lppl/error.hpp"
#include "lppl/linear.hpp"
#include "parallel.hpp"

namespace lppl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nelder-Mead coefficients (reflection, expansion, contraction, shrink).
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

// SSR spreads below this fraction of the total sum of squares count as
// converged; relative tolerance alone never triggers on noiseless data.
constexpr double kAbsoluteFloor = 1e-15;

using Point = std::array<double, 3>;

struct Vertex {
    Point x;
    double f;
};

StartPoint to_start(const Point& x) { return {x[0], x[1], x[2]}; }

double total_sum_of_squares(std::span<const double> v) {
    if (v.empty()) return 0.0;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double tss = 0.0;
    for (double x : v) tss += (x - mean) * (x - mean);
    return tss;
}

bool better(const FitResult& a, const FitResult& b) {
    if (a.ssr != b.ssr) return a.ssr < b.ssr;
    if (a.params.tc != b.params.tc) return a.params.tc < b.params.tc;
    if (a.params.m != b.params.m) return a.params.m < b.params.m;
    return a.start_index < b.start_index;
}

}  // namespace

std::vector<double> default_m_grid() {
    std::vector<double> grid;
    for (int k = 10; k <= 90; k += 5) grid.push_back(k / 100.0);
    return grid;
}

void FitConfig::validate() const {
    if (m_grid.empty()) throw Error(ErrorKind::InvalidArgument, "m grid is empty");
    if (!(tc_grid_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "tc step must be > 0");
    if (!(tc_grid_span_fraction > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "tc span fraction must be > 0");
    }
    if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be > 0");
    if (max_iterations < 1) throw Error(ErrorKind::InvalidArgument, "max iterations must be >= 1");
    if (!(omega_start > 0.0)) throw Error(ErrorKind::InvalidArgument, "omega start must be > 0");
    constraints.validate();
}

std::vector<double> tc_start_offsets(std::size_t n, const FitConfig& config) {
    const double span = config.tc_grid_span_fraction * static_cast<double>(n);
    std::vector<double> offsets;
    // Offsets are generated by counting so that 1 + k*step is exact.
    for (std::size_t k = 0;; ++k) {
        const double offset = 1.0 + static_cast<double>(k) * config.tc_grid_step;
        if (offset > span + 1e-9) break;
        offsets.push_back(offset);
    }
    if (offsets.empty()) offsets.push_back(1.0);
    return offsets;
}

std::vector<StartPoint> grid_starts(std::size_t n, const FitConfig& config) {
    std::vector<StartPoint> starts;
    const double last = static_cast<double>(n) - 1.0;
    for (double offset : tc_start_offsets(n, config)) {
        for (double m : config.m_grid) starts.push_back({last + offset, m, config.omega_start});
    }
    return starts;
}

double profiled_ssr(std::span<const double> values, const StartPoint& point,
                    const ConstraintSet& constraints, LpplParams* params_out) {
    const double last = static_cast<double>(values.size()) - 1.0;
    if (!(point.m > constraints.m_min && point.m < constraints.m_max)) return kInf;
    if (!(point.omega >= constraints.omega_min && point.omega <= constraints.omega_max)) {
        return kInf;
    }
    if (!(point.tc > last) || !std::isfinite(point.tc)) return kInf;

    const auto lin = try_solve_linear(values, point.tc, point.m, point.omega);
    if (!lin) return kInf;
    const LpplParams params{lin->A, lin->B, lin->C1, lin->C2, point.m, point.omega, point.tc};
    if (!is_feasible(params, constraints, last)) return kInf;
    if (params_out) *params_out = params;
    return lin->ssr;
}

namespace {

// Objective seen by the simplex. Box violations stay +inf, but a point whose
// profiled B or amplitude breaks the constraints scores (2 + excess) * TSS:
// worse than any feasible point (OLS with a constant column never exceeds
// TSS) yet sloped, so a simplex seeded in such a region can walk out of it.
double penalized_ssr(std::span<const double> values, const StartPoint& point,
                     const ConstraintSet& constraints, double tss, double sd) {
    const double last = static_cast<double>(values.size()) - 1.0;
    if (!(point.m > constraints.m_min && point.m < constraints.m_max)) return kInf;
    if (!(point.omega >= constraints.omega_min && point.omega <= constraints.omega_max)) {
        return kInf;
    }
    if (!(point.tc > last) || !std::isfinite(point.tc)) return kInf;

    const auto lin = try_solve_linear(values, point.tc, point.m, point.omega);
    if (!lin) return kInf;
    const LpplParams params{lin->A, lin->B, lin->C1, lin->C2, point.m, point.omega, point.tc};
    if (is_feasible(params, constraints, last)) return lin->ssr;

    const double scale = std::pow(point.tc, point.m) / sd;  // coefficient -> price units
    double excess = 0.0;
    if (constraints.require_B_negative) excess += std::max(0.0, params.B) * scale;
    if (constraints.amplitude_cap) {
        excess += std::max(0.0, params.amplitude() - *constraints.amplitude_cap) * scale;
    }
    return (2.0 + excess) * tss;
}

}  // namespace

FitResult minimize_window(const PriceSeries& series, const StartPoint& start,
                          const FitConfig& config) {
    const std::span<const double> values = series.view();
    const std::size_t n = values.size();
    if (n < 5) throw Error(ErrorKind::InvalidArgument, "window needs at least 5 observations");

    FitResult result;
    result.n_obs = n;
    result.window_start = series.front_date();
    result.window_end = series.back_date();
    result.start = start;

    const double tss = total_sum_of_squares(values);
    const double base = tss > 0.0 ? tss : 1.0;
    const double sd = std::sqrt(base / static_cast<double>(n));
    int evaluations = 0;
    auto objective = [&](const Point& x) {
        ++evaluations;
        return penalized_ssr(values, to_start(x), config.constraints, base, sd);
    };

    const double floor = kAbsoluteFloor * tss;
    const Point steps{std::max(1.0, 0.5 * config.tc_grid_step), 0.05, 0.5};

    std::array<Vertex, 4> simplex;
    const Point x0{start.tc, start.m, start.omega};
    simplex[0] = {x0, objective(x0)};
    for (int j = 0; j < 3; ++j) {
        Point x = x0;
        x[j] += steps[j];
        double f = objective(x);
        if (!std::isfinite(f)) {
            Point y = x0;
            y[j] -= steps[j];
            const double g = objective(y);
            if (std::isfinite(g)) {
                x = y;
                f = g;
            }
        }
        simplex[j + 1] = {x, f};
    }

    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    auto combine = [](const Point& c, const Point& x, double coef) {
        // c + coef * (x - c)
        return Point{c[0] + coef * (x[0] - c[0]), c[1] + coef * (x[1] - c[1]),
                     c[2] + coef * (x[2] - c[2])};
    };
    auto collapsed = [&] {
        double size = 0.0;
        for (int i = 1; i < 4; ++i) {
            for (int j = 0; j < 3; ++j) {
                size = std::max(size, std::abs(simplex[i].x[j] - simplex[0].x[j]) / steps[j]);
            }
        }
        return size < 1e-12;
    };

    bool converged = false;
    int iteration = 0;
    for (; iteration < config.max_iterations; ++iteration) {
        order();
        const double best = simplex[0].f;
        if (!std::isfinite(best)) break;
        const double spread = simplex[3].f - best;
        if (spread <= config.tolerance * std::abs(best) + floor || collapsed()) {
            converged = true;
            break;
        }

        Point centroid{0.0, 0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) centroid[j] += simplex[i].x[j] / 3.0;
        }
        const Point xr = combine(centroid, simplex[3].x, -kReflect);
        const double fr = objective(xr);
        if (fr < simplex[0].f) {
            const Point xe = combine(centroid, xr, kExpand);
            const double fe = objective(xe);
            simplex[3] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
            continue;
        }
        if (fr < simplex[2].f) {
            simplex[3] = {xr, fr};
            continue;
        }
        if (fr < simplex[3].f) {
            const Point xc = combine(centroid, xr, kContract);
            const double fc = objective(xc);
            if (fc <= fr) {
                simplex[3] = {xc, fc};
                continue;
            }
        } else {
            const Point xc = combine(centroid, simplex[3].x, kContract);
            const double fc = objective(xc);
            if (fc < simplex[3].f) {
                simplex[3] = {xc, fc};
                continue;
            }
        }
        for (int i = 1; i < 4; ++i) {
            simplex[i].x = combine(simplex[0].x, simplex[i].x, kShrink);
            simplex[i].f = objective(simplex[i].x);
        }
    }
    order();

    result.iterations = iteration;
    result.evaluations = evaluations;
    const Vertex& best = simplex[0];
    const double ssr = profiled_ssr(values, to_start(best.x), config.constraints, &result.params);
    result.ssr = ssr;
    result.mse = ssr / static_cast<double>(n);
    if (std::isfinite(ssr)) {
        result.feasible = true;
        result.converged = converged;
    } else {
        result.params = LpplParams{0.0, 0.0, 0.0, 0.0, start.m, start.omega, start.tc};
    }
    return result;
}

std::vector<FitResult> fit_all_starts(const PriceSeries& series, const FitConfig& config) {
    config.validate();
    if (series.size() < kMinWindowLength) {
        throw Error(ErrorKind::InvalidArgument,
                    "fit window has " + std::to_string(series.size()) +
                        " observations; at least " + std::to_string(kMinWindowLength) +
                        " required");
    }
    const std::vector<StartPoint> starts = grid_starts(series.size(), config);
    std::vector<FitResult> results(starts.size());
    detail::parallel_for(starts.size(), config.threads, [&](std::size_t i) {
        results[i] = minimize_window(series, starts[i], config);
        results[i].start_index = i;
    });
    return results;
}

FitResult fit_window(const PriceSeries& series, const FitConfig& config) {
    const std::vector<FitResult> results = fit_all_starts(series, config);
    const FitResult* winner = nullptr;
    for (const FitResult& r : results) {
        if (!r.converged || !r.feasible) continue;
        if (!winner || better(r, *winner)) winner = &r;
    }
    if (!winner) {
        throw Error(ErrorKind::NoFeasibleFit,
                    "no start converged to a feasible fit (" + std::to_string(results.size()) +
                        " starts tried)");
    }
    return *winner;
}

}  // namespace lppl
