#include <cmath>
#include <random>

#include "doctest.h"
#include "lppl/linear.hpp"
#include "lppl/model.hpp"
#include "test_support.hpp"

using namespace lppl;
using namespace lppl::test;

namespace {

double norm2(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

TEST_CASE("noiseless series recovered at the true nonlinear parameters") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const SynthSpec spec = random_case(seed, 400, 0.0);
        const PriceSeries s = generate(spec);
        const LpplParams& p = spec.params;
        const LinearFit fit = solve_linear(s, p.tc, p.m, p.omega);
        CAPTURE(seed);
        CHECK(fit.A == doctest::Approx(p.A).epsilon(1e-8));
        CHECK(fit.B == doctest::Approx(p.B).epsilon(1e-8));
        CHECK(fit.C1 == doctest::Approx(p.C1).epsilon(1e-8));
        CHECK(fit.C2 == doctest::Approx(p.C2).epsilon(1e-8));
        CHECK(fit.ssr <= 1e-16 * norm2(s.view()));
        CHECK(fit.condition < kConditionLimit);
    }
}

TEST_CASE("constant series") {
    const std::vector<double> seven(120, 7.0);
    for (double m : {0.2, 0.5, 0.8}) {
        const LinearFit fit = solve_linear(seven, 140.0, m, 9.0);
        CHECK(fit.A == doctest::Approx(7.0).epsilon(1e-12));
        CHECK(std::abs(fit.B) < 1e-10);
        CHECK(std::abs(fit.C1) < 1e-10);
        CHECK(std::abs(fit.C2) < 1e-10);
        CHECK(fit.ssr <= 1e-16 * norm2(seven));
    }
}

TEST_CASE("noisy series: normal-equations oracle and standard errors") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const SynthSpec spec = random_case(seed, 400, 0.02);
        const PriceSeries s = generate(spec);
        const LpplParams& p = spec.params;
        const LinearFit fit = solve_linear(s, p.tc, p.m, p.omega);
        const NormalEquations oracle = normal_equations(s.view(), p.tc, p.m, p.omega);

        const double got[4] = {fit.A, fit.B, fit.C1, fit.C2};
        const double truth[4] = {p.A, p.B, p.C1, p.C2};
        const double sigma2 = fit.ssr / (400.0 - 4.0);
        CAPTURE(seed);
        for (int k = 0; k < 4; ++k) {
            const double se = std::sqrt(sigma2 * oracle.inverse[k][k]);
            CAPTURE(k);
            CHECK(std::abs(got[k] - oracle.beta[k]) <= 1e-4 * se);
            CHECK(std::abs(got[k] - truth[k]) <= 5.0 * se);
        }
    }
}

TEST_CASE("residuals are orthogonal to every regressor") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int solved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 30 + static_cast<std::size_t>(u(rng) * 400);
        const double tc = static_cast<double>(n) - 1.0 + 0.05 + u(rng) * 0.3 * n;
        const double m = 0.05 + 0.9 * u(rng);
        const double omega = 6.0 + 7.0 * u(rng);
        std::vector<double> v(n);
        double level = 50 + 100 * u(rng);
        for (double& x : v) {
            level += u(rng) - 0.45;
            x = level;
        }
        const auto fit = try_solve_linear(v, tc, m, omega);
        if (!fit) continue;
        ++solved;

        const auto rows = design_rows(n, tc, m, omega);
        double dot[4] = {}, col[4] = {};
        for (std::size_t i = 0; i < n; ++i) {
            double r[4];
            for (int k = 0; k < 4; ++k) r[k] = static_cast<double>(rows[i][k]);
            const double res = v[i] - (fit->A * r[0] + fit->B * r[1] + fit->C1 * r[2] + fit->C2 * r[3]);
            for (int k = 0; k < 4; ++k) {
                dot[k] += res * r[k];
                col[k] += r[k] * r[k];
            }
        }
        const double pnorm = std::sqrt(norm2(v));
        for (int k = 0; k < 4; ++k) {
            REQUIRE(std::abs(dot[k]) <= 1e-8 * pnorm * std::sqrt(col[k]));
        }
    }
    CHECK(solved > 250);
}

TEST_CASE("ssr matches the residuals of the returned coefficients") {
    const SynthSpec spec = random_case(3, 250, 0.05);
    const PriceSeries s = generate(spec);
    const LinearFit fit = solve_linear(s, spec.params.tc + 3, 0.4, 8.0);
    LpplParams q{fit.A, fit.B, fit.C1, fit.C2, 0.4, 8.0, spec.params.tc + 3};
    double ssr = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = s.values()[i] - evaluate_lppl(q, static_cast<double>(i));
        ssr += r * r;
    }
    CHECK(fit.ssr == doctest::Approx(ssr).epsilon(1e-10));
}

TEST_CASE("solve_linear errors") {
    const std::vector<double> four{1, 2, 3, 4};
    CHECK(error_kind([&] { solve_linear(four, 10, 0.5, 9); }) == ErrorKind::InvalidArgument);

    const std::vector<double> v(50, 1.0);
    CHECK(error_kind([&] { solve_linear(v, 49, 0.5, 9); }) == ErrorKind::Domain);
    CHECK(error_kind([&] { solve_linear(v, 20, 0.5, 9); }) == ErrorKind::Domain);

    // m -> 0 makes the power-law column collinear with the constant
    std::vector<double> w(50);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::sin(0.3 * i) + 0.01 * i;
    CHECK(error_kind([&] { solve_linear(w, 60, 1e-14, 9); }) == ErrorKind::RankDeficient);
    CHECK_FALSE(try_solve_linear(w, 60, 1e-14, 9).has_value());
    CHECK(try_solve_linear(w, 60, 0.5, 9).has_value());
}
