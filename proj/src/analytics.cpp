#include "lppl/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lppl/error.hpp"

namespace lppl {

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::pair<double, double> mean_and_sd(std::span<const double> v) {
    const double mean = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

std::vector<double> standardized_values(std::span<const double> v, const std::string& label) {
    if (v.size() < 2) throw Error(ErrorKind::Degenerate, "standardize needs at least 2 values");
    const auto [mean, sd] = mean_and_sd(v);
    if (!(sd > 0.0)) {
        throw Error(ErrorKind::Degenerate,
                    "cannot standardize constant series" + (label.empty() ? "" : " " + label));
    }
    std::vector<double> z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) z[i] = (v[i] - mean) / sd;
    // second pass: a large level over a tiny spread leaves the first mean off
    // by far more than the z-scores can absorb
    const auto [zmean, zsd] = mean_and_sd(z);
    for (double& x : z) x = (x - zmean) / zsd + 2.0;
    return z;
}

// Dates present in every series, ascending.
std::vector<Date> common_dates(std::span<const PriceSeries> series) {
    std::vector<Date> common = series.front().dates();
    for (const PriceSeries& s : series.subspan(1)) {
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(), s.dates().begin(), s.dates().end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    return common;
}

std::vector<double> values_on(const PriceSeries& s, const std::vector<Date>& dates) {
    std::vector<double> out;
    out.reserve(dates.size());
    auto it = s.dates().begin();
    for (Date d : dates) {
        it = std::lower_bound(it, s.dates().end(), d);
        out.push_back(s.values()[static_cast<std::size_t>(it - s.dates().begin())]);
    }
    return out;
}

}  // namespace

AlignedPair align(const PriceSeries& x, const PriceSeries& y) {
    const PriceSeries both[] = {x, y};
    AlignedPair pair;
    pair.dates = common_dates(both);
    if (pair.dates.size() < 3) {
        throw Error(ErrorKind::Degenerate, "fewer than 3 common dates between " + x.label() +
                                               " and " + y.label());
    }
    pair.x = values_on(x, pair.dates);
    pair.y = values_on(y, pair.dates);
    return pair;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "pearson: length mismatch");
    if (x.size() < 2) throw Error(ErrorKind::InvalidArgument, "pearson: need at least 2 values");
    const double mx = mean_of(x), my = mean_of(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw Error(ErrorKind::Degenerate, "pearson: zero variance input");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

PriceSeries returns(const PriceSeries& series, ReturnKind kind) {
    if (series.size() < 2) throw Error(ErrorKind::InvalidArgument, "returns: need at least 2 values");
    const auto& v = series.values();
    std::vector<double> out(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (kind == ReturnKind::Log) {
            if (!(v[i] > 0.0 && v[i + 1] > 0.0)) {
                throw Error(ErrorKind::Domain, "log returns need positive prices");
            }
            out[i] = std::log(v[i + 1] / v[i]);
        } else {
            out[i] = v[i + 1] - v[i];
        }
    }
    return PriceSeries(std::vector<Date>(series.dates().begin() + 1, series.dates().end()),
                       std::move(out), series.label());
}

PriceSeries standardize(const PriceSeries& series) {
    return series.with_values(standardized_values(series.view(), series.label()));
}

PriceSeries invert_price(const PriceSeries& series) {
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double v = series.values()[i];
        if (!(v > 0.0)) {
            throw Error(ErrorKind::Domain, "invert_price: non-positive value on " +
                                               format_date(series.dates()[i]));
        }
        out[i] = 1.0 / v;
    }
    return series.with_values(std::move(out));
}

PriceSeries build_basket(std::span<const PriceSeries> components, BasketMethod method) {
    if (components.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "basket needs at least 2 components");
    }
    const std::vector<Date> dates = common_dates(components);
    if (dates.size() < 3) throw Error(ErrorKind::Degenerate, "basket: fewer than 3 common dates");

    std::vector<double> sum(dates.size(), 0.0);
    for (const PriceSeries& c : components) {
        std::vector<double> v = values_on(c, dates);
        if (method == BasketMethod::Standardized) v = standardized_values(v, c.label());
        for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
    }
    if (method == BasketMethod::Standardized) {
        for (double& s : sum) s /= static_cast<double>(components.size());
    }
    return PriceSeries(dates, standardized_values(sum, "basket"), "basket");
}

CorrelationReport correlate(const PriceSeries& reference, std::span<const PriceSeries> others,
                            ReturnKind kind) {
    CorrelationReport report;
    report.reference = reference.label();
    for (const PriceSeries& other : others) {
        const AlignedPair pair = align(reference, other);
        const PriceSeries rx = returns(PriceSeries(pair.dates, pair.x), kind);
        const PriceSeries ry = returns(PriceSeries(pair.dates, pair.y), kind);
        report.entries.push_back({other.label(), pearson(pair), pearson(rx.view(), ry.view()),
                                  pair.dates.size()});
    }
    return report;
}

}  // namespace lppl
