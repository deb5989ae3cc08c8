#include "lppl/model.hpp"

#include <cmath>
#include <numbers>

#include "lppl/error.hpp"

namespace lppl {

double LpplParams::amplitude() const { return std::hypot(C1, C2); }

double LpplParams::phase() const {
    const double phi = std::atan2(C2, C1);
    return phi == -std::numbers::pi ? std::numbers::pi : phi;
}

double LpplParams::lambda() const { return lambda_from_omega(omega); }

LpplParams LpplParams::from_phase_form(double A, double B, double C, double phi, double m,
                                       double omega, double tc) {
    return LpplParams{A, B, C * std::cos(phi), C * std::sin(phi), m, omega, tc};
}

ConstraintSet ConstraintSet::standard() { return ConstraintSet{}; }

ConstraintSet ConstraintSet::raw_prices() {
    ConstraintSet c;
    c.amplitude_cap.reset();
    return c;
}

ConstraintSet ConstraintSet::with_strict_lambda() const {
    ConstraintSet c = *this;
    c.omega_min = 8.5;
    c.omega_max = 9.7;
    return c;
}

void ConstraintSet::validate() const {
    if (!(m_min < m_max)) throw Error(ErrorKind::InvalidArgument, "m_min must be < m_max");
    if (!(omega_min < omega_max)) {
        throw Error(ErrorKind::InvalidArgument, "omega_min must be < omega_max");
    }
    if (amplitude_cap && !(*amplitude_cap > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "amplitude cap must be positive");
    }
}

std::string_view to_string(Violation v) {
    switch (v) {
        case Violation::MBound: return "m_bound";
        case Violation::OmegaBound: return "omega_bound";
        case Violation::BSign: return "b_sign";
        case Violation::AmplitudeCap: return "amplitude_cap";
        case Violation::TcNotAfterWindow: return "tc_after_window";
    }
    return "unknown";
}

double evaluate_lppl(const LpplParams& p, double t) {
    const double dt = p.tc - t;
    if (!(dt > 0.0)) throw Error(ErrorKind::Domain, "evaluate_lppl requires t < tc");
    const double log_dt = std::log(dt);
    const double power = std::exp(p.m * log_dt);
    const double arg = p.omega * log_dt;
    return p.A + power * (p.B + p.C1 * std::cos(arg) + p.C2 * std::sin(arg));
}

double lambda_from_omega(double omega) {
    if (!(omega > 0.0)) throw Error(ErrorKind::Domain, "omega must be positive");
    return std::exp(2.0 * std::numbers::pi / omega);
}

double omega_from_lambda(double lambda) {
    if (!(lambda > 1.0)) throw Error(ErrorKind::Domain, "lambda must exceed 1");
    return 2.0 * std::numbers::pi / std::log(lambda);
}

std::vector<Violation> check_constraints(const LpplParams& p, const ConstraintSet& c,
                                         double window_end) {
    std::vector<Violation> out;
    if (!(p.m > c.m_min && p.m < c.m_max)) out.push_back(Violation::MBound);
    if (!(p.omega >= c.omega_min && p.omega <= c.omega_max)) {
        out.push_back(Violation::OmegaBound);
    }
    if (c.require_B_negative && !(p.B < 0.0)) out.push_back(Violation::BSign);
    if (c.amplitude_cap && !(p.amplitude() < *c.amplitude_cap)) {
        out.push_back(Violation::AmplitudeCap);
    }
    if (c.require_tc_after_window && !(p.tc > window_end)) {
        out.push_back(Violation::TcNotAfterWindow);
    }
    return out;
}

}  // namespace lppl
