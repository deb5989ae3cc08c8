#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lppl/calendar.hpp"

namespace lppl {

/// Date-indexed observations. Dates are strictly increasing; values are
/// whatever the producer put there (raw quotes, transformed, synthetic).
class PriceSeries {
public:
    PriceSeries() = default;
    PriceSeries(std::vector<Date> dates, std::vector<double> values, std::string label = {});

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& values() const { return values_; }
    std::span<const double> view() const { return values_; }
    const std::string& label() const { return label_; }

    Date front_date() const { return dates_.front(); }
    Date back_date() const { return dates_.back(); }

    /// Observations with first <= date <= last.
    PriceSeries slice(Date first, Date last) const;

    /// Same dates and label, new values (size must match).
    PriceSeries with_values(std::vector<double> values) const;
    PriceSeries with_label(std::string label) const;

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
    std::string label_;
};

}  // namespace lppl
