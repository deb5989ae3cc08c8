#include "lppl/series.hpp"

#include <algorithm>

#include "lppl/error.hpp"

namespace lppl {

PriceSeries::PriceSeries(std::vector<Date> dates, std::vector<double> values, std::string label)
    : dates_(std::move(dates)), values_(std::move(values)), label_(std::move(label)) {
    if (dates_.size() != values_.size()) {
        throw Error(ErrorKind::InvalidArgument, "dates and values differ in length");
    }
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (!(dates_[i - 1] < dates_[i])) {
            throw Error(ErrorKind::InvalidArgument,
                        "dates not strictly increasing at " + format_date(dates_[i]));
        }
    }
}

PriceSeries PriceSeries::slice(Date first, Date last) const {
    const auto lo = std::lower_bound(dates_.begin(), dates_.end(), first);
    const auto hi = std::upper_bound(dates_.begin(), dates_.end(), last);
    if (lo >= hi) return PriceSeries({}, {}, label_);
    const auto a = lo - dates_.begin(), b = hi - dates_.begin();
    return PriceSeries(std::vector<Date>(lo, hi),
                       std::vector<double>(values_.begin() + a, values_.begin() + b), label_);
}

PriceSeries PriceSeries::with_values(std::vector<double> values) const {
    return PriceSeries(dates_, std::move(values), label_);
}

PriceSeries PriceSeries::with_label(std::string label) const {
    return PriceSeries(dates_, values_, std::move(label));
}

}  // namespace lppl
