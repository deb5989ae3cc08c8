#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "lppl/fitter.hpp"
#include "lppl/model.hpp"
#include "lppl/series.hpp"

namespace lppl {

/// Standard normal deviates from a 64-bit Mersenne Twister via Box-Muller.
/// Both stages are spelled out here (std::normal_distribution is
/// implementation-defined), so a seed gives the same stream everywhere.
class NormalGenerator {
public:
    explicit NormalGenerator(std::uint64_t seed) : engine_(seed) {}

    double operator()();
    /// Uniform on (0, 1].
    double uniform();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

struct SynthSpec {
    LpplParams params;
    std::size_t n = 400;
    double noise_sigma = 0.0;
    std::uint64_t seed = 1;
    Date start_date = Date{std::chrono::year{2014}, std::chrono::June, std::chrono::day{12}};

    void validate() const;
};

/// series[i] = evaluate_lppl(params, i) + sigma * z_i, dated on consecutive
/// weekdays from start_date (moved forward to a weekday if needed).
PriceSeries generate(const SynthSpec& spec);

/// Noise-free model values at t = 0..n-1.
std::vector<double> model_curve(const LpplParams& params, std::size_t n);

/// Evenly spaced inclusive axis; a single point uses `lo`.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 1;

    double at(std::size_t i) const;
    double cell() const;
};

struct SsrGrid {
    GridAxis tc, m, omega;
    /// Row-major: index = (i_tc * m.points + i_m) * omega.points + i_omega.
    std::vector<double> ssr;
    std::size_t argmin = 0;

    double argmin_ssr() const { return ssr[argmin]; }
    StartPoint argmin_point() const;
    StartPoint node(std::size_t index) const;
};

inline constexpr std::size_t kDefaultGridCap = 4'000'000;

/// Unconstrained profiled SSR (linear parameters by OLS) at every node.
/// Singular nodes get +inf. The argmin is the lowest linear index among ties.
/// Throws InvalidArgument when the grid exceeds `cap` nodes or any tc node is
/// not beyond the last observation.
SsrGrid brute_force_ssr_grid(const PriceSeries& series, const GridAxis& tc, const GridAxis& m,
                             const GridAxis& omega, std::size_t cap = kDefaultGridCap,
                             unsigned threads = 0);

}  // namespace lppl
