#pragma once

#include <cstddef>
#include <vector>

#include "lppl/model.hpp"
#include "lppl/series.hpp"

namespace lppl {

/// Windows shorter than this are rejected by fit_window.
inline constexpr std::size_t kMinWindowLength = 30;

/// A point in the nonlinear parameter space. tc is a window-relative index.
struct StartPoint {
    double tc = 0.0;
    double m = 0.0;
    double omega = 0.0;
};

/// m = 0.10, 0.15, ..., 0.90
std::vector<double> default_m_grid();

struct FitConfig {
    std::vector<double> m_grid = default_m_grid();
    double tc_grid_step = 5.0;             // trading days
    double tc_grid_span_fraction = 0.1;    // tc starts reach last index + fraction * n
    ConstraintSet constraints = ConstraintSet::standard();
    double tolerance = 1e-9;               // relative SSR spread across the simplex
    int max_iterations = 500;              // per start
    double omega_start = 9.064720283654388;  // 2 pi / ln 2
    unsigned threads = 0;                  // 0 = hardware concurrency

    void validate() const;
};

struct FitResult {
    LpplParams params;
    double ssr = 0.0;
    double mse = 0.0;
    std::size_t n_obs = 0;
    Date window_start{};
    Date window_end{};
    bool converged = false;
    bool feasible = false;
    StartPoint start{};
    std::size_t start_index = 0;
    int iterations = 0;
    int evaluations = 0;

    /// tc measured in trading days past the last observation of the window.
    double tc_offset() const { return params.tc - static_cast<double>(n_obs - 1); }
};

/// Offsets (in trading days past the last index) of the tc grid:
/// 1, 1 + step, ... while <= fraction * n.
std::vector<double> tc_start_offsets(std::size_t n, const FitConfig& config);

/// Cartesian product of tc starts (outer) and m_grid (inner), omega at omega_start.
std::vector<StartPoint> grid_starts(std::size_t n, const FitConfig& config);

/// Profiled SSR at (tc, m, omega): linear parameters solved exactly, +inf for
/// anything infeasible under `constraints` or numerically singular.
double profiled_ssr(std::span<const double> values, const StartPoint& point,
                    const ConstraintSet& constraints, LpplParams* params_out = nullptr);

/// Nelder-Mead descent on (tc, m, omega) from `start`. Never throws for
/// numerical trouble: failure shows up as converged = false.
FitResult minimize_window(const PriceSeries& series, const StartPoint& start,
                          const FitConfig& config);

/// Multistart over grid_starts(); the winner is the converged feasible result
/// with the lowest SSR (ties: lower tc, then lower m, then lower start index).
/// Throws NoFeasibleFit if no start qualifies.
FitResult fit_window(const PriceSeries& series, const FitConfig& config);

/// All per-start results of the multistart, indexed like grid_starts().
std::vector<FitResult> fit_all_starts(const PriceSeries& series, const FitConfig& config);

}  // namespace lppl
