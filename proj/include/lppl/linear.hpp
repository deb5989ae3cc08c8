#pragma once

#include <optional>
#include <span>

#include "lppl/series.hpp"

namespace lppl {

/// Design matrices with condition number above this are treated as singular.
inline constexpr double kConditionLimit = 1e12;

/// Least-squares linear parameters for fixed (tc, m, omega).
struct LinearFit {
    double A = 0.0;
    double B = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double ssr = 0.0;
    /// Condition number of the column-equilibrated design matrix.
    double condition = 1.0;
};

/// Exact OLS over the basis {1, f, f cos(omega ln dt), f sin(omega ln dt)},
/// f = dt^m, dt = tc - t, t = 0..n-1.
///
/// Throws Domain when tc <= n-1, InvalidArgument when n < 5 and RankDeficient
/// when the design matrix condition number exceeds `condition_limit`.
LinearFit solve_linear(std::span<const double> values, double tc, double m, double omega,
                       double condition_limit = kConditionLimit);

inline LinearFit solve_linear(const PriceSeries& series, double tc, double m, double omega,
                              double condition_limit = kConditionLimit) {
    return solve_linear(series.view(), tc, m, omega, condition_limit);
}

/// Non-throwing form used inside the optimizer: nullopt wherever solve_linear
/// would throw.
std::optional<LinearFit> try_solve_linear(std::span<const double> values, double tc, double m,
                                          double omega, double condition_limit = kConditionLimit);

}  // namespace lppl
