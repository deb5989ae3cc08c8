#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace lppl {

/// LPPL parameters in the linearized form
///
///   p(t) = A + B (tc-t)^m + C1 (tc-t)^m cos(omega ln(tc-t)) + C2 (tc-t)^m sin(omega ln(tc-t))
///
/// which equals A + B (tc-t)^m + C (tc-t)^m cos(omega ln(tc-t) - phi) with
/// C1 = C cos(phi), C2 = C sin(phi). Time is a 0-based trading-day index.
struct LpplParams {
    double A = 0.0;
    double B = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double m = 0.5;
    double omega = 9.0;
    double tc = 0.0;

    /// sqrt(C1^2 + C2^2)
    double amplitude() const;
    /// atan2(C2, C1), normalized to (-pi, pi].
    double phase() const;
    /// exp(2 pi / omega)
    double lambda() const;

    static LpplParams from_phase_form(double A, double B, double C, double phi, double m,
                                      double omega, double tc);
};

struct ConstraintSet {
    double m_min = 0.0;       // exclusive
    double m_max = 1.0;       // exclusive
    double omega_min = 6.0;   // inclusive
    double omega_max = 13.0;  // inclusive
    bool require_B_negative = true;
    std::optional<double> amplitude_cap = 1.0;  // |C| < cap
    bool require_tc_after_window = true;

    /// 0 < m < 1, 6 <= omega <= 13, B < 0, |C| < 1, tc after the window.
    static ConstraintSet standard();
    /// standard() without the amplitude cap, for series in raw price units.
    static ConstraintSet raw_prices();
    /// Narrows omega to [8.5, 9.7] around the lambda = 2 value.
    ConstraintSet with_strict_lambda() const;

    void validate() const;
};

enum class Violation { MBound, OmegaBound, BSign, AmplitudeCap, TcNotAfterWindow };

std::string_view to_string(Violation v);

/// Model price at trading-day index t. Throws Domain if t >= tc.
double evaluate_lppl(const LpplParams& params, double t);

/// Throws Domain unless omega > 0.
double lambda_from_omega(double omega);
/// Throws Domain unless lambda > 1.
double omega_from_lambda(double lambda);

/// Every violated constraint; empty means feasible. `window_end` is the index
/// of the last observation in the fitted window.
std::vector<Violation> check_constraints(const LpplParams& params,
                                         const ConstraintSet& constraints, double window_end);

inline bool is_feasible(const LpplParams& params, const ConstraintSet& constraints,
                        double window_end) {
    return check_constraints(params, constraints, window_end).empty();
}

}  // namespace lppl
