#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lppl/series.hpp"

namespace lppl {

/// Two series restricted to their common dates (inner join, no interpolation).
struct AlignedPair {
    std::vector<Date> dates;
    std::vector<double> x;
    std::vector<double> y;
};

/// Throws Degenerate if fewer than 3 dates are shared.
AlignedPair align(const PriceSeries& x, const PriceSeries& y);

/// Pearson product-moment correlation. Throws Degenerate when either input
/// has zero variance, InvalidArgument on mismatched or too-short inputs.
double pearson(std::span<const double> x, std::span<const double> y);
inline double pearson(const AlignedPair& pair) { return pearson(pair.x, pair.y); }

enum class ReturnKind { Difference, Log };

/// out[i] = in[i+1] - in[i] (or the log ratio), dated at the later date.
/// Throws InvalidArgument for fewer than 2 observations.
PriceSeries returns(const PriceSeries& series, ReturnKind kind = ReturnKind::Difference);

/// Affine map to sample mean 2 and sample standard deviation 1.
/// Throws Degenerate on a constant series.
PriceSeries standardize(const PriceSeries& series);

/// Element-wise reciprocal. Throws Domain on any non-positive value.
PriceSeries invert_price(const PriceSeries& series);

enum class BasketMethod {
    /// standardize components, average date-wise, standardize the average
    Standardized,
    /// sum raw components date-wise, then standardize
    RawSum,
};

/// Equal-weight basket on the dates common to every component.
PriceSeries build_basket(std::span<const PriceSeries> components,
                         BasketMethod method = BasketMethod::Standardized);

struct CorrelationEntry {
    std::string name;
    double level_corr = 0.0;
    double return_corr = 0.0;
    std::size_t n_obs = 0;
};

struct CorrelationReport {
    std::string reference;
    std::vector<CorrelationEntry> entries;
};

/// Level and return correlations of `reference` against each of `others`.
/// Returns are taken after aligning the levels.
CorrelationReport correlate(const PriceSeries& reference, std::span<const PriceSeries> others,
                            ReturnKind kind = ReturnKind::Difference);

}  // namespace lppl
