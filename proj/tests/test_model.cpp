#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lppl/model.hpp"
#include "test_support.hpp"

using namespace lppl;
using lppl::test::error_kind;

namespace {

constexpr double kPi = std::numbers::pi;

bool has(const std::vector<Violation>& v, Violation x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

struct Draw {
    std::mt19937_64 rng;
    explicit Draw(std::uint64_t seed) : rng(seed) {}
    double operator()(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
};

}  // namespace

TEST_CASE("evaluate_lppl hand values") {
    LpplParams p;
    p.A = 5;
    p.B = 0;
    p.m = 0.3;
    p.omega = 7;
    p.tc = 50;
    CHECK(evaluate_lppl(p, 0) == 5.0);

    LpplParams q{0, 1, 0, 0, 0.5, 9, 100};
    CHECK(evaluate_lppl(q, 96) == doctest::Approx(2.0).epsilon(1e-15));

    LpplParams r{1, -1, 0.1, 0, 0.5, 2 * kPi / std::log(2.0), 10};
    CHECK(evaluate_lppl(r, 9) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("evaluate_lppl rejects t at or past tc") {
    LpplParams p{1, -1, 0.1, 0, 0.5, 9, 10};
    CHECK(error_kind([&] { evaluate_lppl(p, 10); }) == ErrorKind::Domain);
    CHECK(error_kind([&] { evaluate_lppl(p, 11.5); }) == ErrorKind::Domain);
}

TEST_CASE("lambda and omega conversions") {
    CHECK(lambda_from_omega(2 * kPi / std::log(2.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(lambda_from_omega(8.9256) - 2.022) <= 0.001);
    CHECK(std::abs(lambda_from_omega(8.9817) - 2.013) <= 0.001);

    CHECK(std::abs(omega_from_lambda(2.0) - 9.0647) <= 1e-4);
    CHECK(std::abs(omega_from_lambda(2.022) - 8.926) <= 0.01);
    CHECK(omega_from_lambda(std::exp(2 * kPi)) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(error_kind([] { omega_from_lambda(1.0); }) == ErrorKind::Domain);
    CHECK(error_kind([] { omega_from_lambda(0.5); }) == ErrorKind::Domain);
    CHECK(error_kind([] { lambda_from_omega(0.0); }) == ErrorKind::Domain);
    CHECK(error_kind([] { lambda_from_omega(-3.0); }) == ErrorKind::Domain);
}

TEST_CASE("lambda/omega round trips") {
    Draw draw(11);
    for (int i = 0; i < 2000; ++i) {
        const double lambda = 1.0 + std::exp(draw(-5, 5));
        const double back = lambda_from_omega(omega_from_lambda(lambda));
        REQUIRE(std::abs(back - lambda) <= 1e-12 * lambda);

        const double omega = std::exp(draw(-1.5, 5));
        const double again = omega_from_lambda(lambda_from_omega(omega));
        REQUIRE(std::abs(again - omega) <= 1e-12 * omega);
    }
}

TEST_CASE("phase form and linear form agree") {
    Draw draw(12);
    for (int i = 0; i < 2000; ++i) {
        const double A = draw(-50, 200), B = draw(-5, -0.01), C = draw(0, 3);
        const double phi = draw(-kPi, kPi), m = draw(0.01, 0.99), omega = draw(6, 13);
        const double tc = draw(30, 300);
        const LpplParams p = LpplParams::from_phase_form(A, B, C, phi, m, omega, tc);
        REQUIRE(p.amplitude() == doctest::Approx(C).epsilon(1e-12));
        if (C > 1e-6) {
            REQUIRE(std::remainder(p.phase() - phi, 2 * kPi) == doctest::Approx(0).epsilon(1e-9));
        }

        const double t = draw(0, tc - 1e-3);
        const double dt = tc - t;
        const double f = std::pow(dt, m);
        const double direct = A + B * f + C * f * std::cos(omega * std::log(dt) - phi);
        const double scale = std::abs(A) + std::abs(B) * f + C * f;
        REQUIRE(std::abs(evaluate_lppl(p, t) - direct) <= 1e-12 * scale);

        // (C1, C2) rebuilt from amplitude and phase yields the same curve
        const LpplParams q =
            LpplParams::from_phase_form(A, B, p.amplitude(), p.phase() + 2 * kPi, m, omega, tc);
        REQUIRE(std::abs(evaluate_lppl(q, t) - evaluate_lppl(p, t)) <= 1e-12 * scale);
    }
}

TEST_CASE("phase convention") {
    LpplParams p{0, -1, 0.0, 0.5, 0.5, 9, 100};
    CHECK(p.phase() == doctest::Approx(kPi / 2));
    p.C1 = -0.5;
    p.C2 = 0.0;
    CHECK(p.phase() == doctest::Approx(kPi));  // (-pi, pi]
    p.C1 = 0.3;
    p.C2 = -0.3;
    CHECK(p.phase() == doctest::Approx(-kPi / 4));
    CHECK(p.lambda() == doctest::Approx(std::exp(2 * kPi / 9)));
}

TEST_CASE("check_constraints examples") {
    const ConstraintSet c = ConstraintSet::standard();
    const double end = 99;

    auto p = LpplParams::from_phase_form(10, -1, 0.5, 0.3, 0.5, 9, end + 10);
    CHECK(check_constraints(p, c, end).empty());
    CHECK(is_feasible(p, c, end));

    p.m = 1.2;
    const auto one = check_constraints(p, c, end);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Violation::MBound);

    auto bad = LpplParams::from_phase_form(10, 1, 2.0, 0.3, 0.5, 5, end - 1);
    const auto all = check_constraints(bad, c, end);
    CHECK(all.size() == 4);
    CHECK(has(all, Violation::OmegaBound));
    CHECK(has(all, Violation::BSign));
    CHECK(has(all, Violation::AmplitudeCap));
    CHECK(has(all, Violation::TcNotAfterWindow));
}

TEST_CASE("constraint boundaries") {
    const ConstraintSet c = ConstraintSet::standard();
    auto p = LpplParams::from_phase_form(10, -1, 0.5, 0.3, 0.5, 6.0, 120);
    CHECK(is_feasible(p, c, 99));  // omega bounds are inclusive
    p.omega = 13.0;
    CHECK(is_feasible(p, c, 99));
    p.m = 0.0;
    CHECK_FALSE(is_feasible(p, c, 99));
    p.m = 1.0;
    CHECK_FALSE(is_feasible(p, c, 99));
    p.m = 0.5;
    p.B = 0.0;
    CHECK_FALSE(is_feasible(p, c, 99));
    p.B = -1;
    p.tc = 99;
    CHECK_FALSE(is_feasible(p, c, 99));
    p.tc = 120;

    auto big = LpplParams::from_phase_form(10, -1, 5.0, 0.3, 0.5, 9, 120);
    CHECK_FALSE(is_feasible(big, c, 99));
    CHECK(is_feasible(big, ConstraintSet::raw_prices(), 99));

    const ConstraintSet strict = c.with_strict_lambda();
    CHECK(strict.omega_min == 8.5);
    CHECK(strict.omega_max == 9.7);
    p.omega = 8.0;
    CHECK(is_feasible(p, c, 99));
    CHECK_FALSE(is_feasible(p, strict, 99));
}

TEST_CASE("interior accepted, one coordinate out rejected") {
    const ConstraintSet c = ConstraintSet::standard();
    Draw draw(13);
    const double end = 199;
    for (int i = 0; i < 1000; ++i) {
        const double m = draw(1e-3, 1 - 1e-3), omega = draw(6, 13), B = draw(-10, -1e-6);
        const double C = draw(0, 0.999), phi = draw(-kPi, kPi), tc = end + draw(1e-3, 50);
        const auto inside = LpplParams::from_phase_form(draw(-10, 10), B, C, phi, m, omega, tc);
        REQUIRE(check_constraints(inside, c, end).empty());

        const double u = draw(1e-6, 5);
        LpplParams out = inside;
        Violation expected{};
        switch (i % 5) {
            case 0:
                out.m = (i % 2) ? 1 + u : -u;
                expected = Violation::MBound;
                break;
            case 1:
                out.omega = (i % 2) ? 13 + u : 6 - u;
                expected = Violation::OmegaBound;
                break;
            case 2:
                out.B = u;
                expected = Violation::BSign;
                break;
            case 3:
                out = LpplParams::from_phase_form(inside.A, B, 1 + u, phi, m, omega, tc);
                expected = Violation::AmplitudeCap;
                break;
            default:
                out.tc = end - u * 10;
                expected = Violation::TcNotAfterWindow;
        }
        const auto v = check_constraints(out, c, end);
        REQUIRE(v.size() == 1);
        REQUIRE(v[0] == expected);
    }
}

TEST_CASE("constraint set validation") {
    ConstraintSet c;
    c.omega_min = 14;
    CHECK(error_kind([&] { c.validate(); }) == ErrorKind::InvalidArgument);
    ConstraintSet d;
    d.m_min = 0.9;
    d.m_max = 0.1;
    CHECK(error_kind([&] { d.validate(); }) == ErrorKind::InvalidArgument);
    CHECK_NOTHROW(ConstraintSet::standard().validate());
}
