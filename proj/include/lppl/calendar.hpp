#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lppl {

using Date = std::chrono::year_month_day;

/// Parses "YYYY-MM-DD" or "DD.MM.YYYY". Returns nullopt on anything else,
/// including impossible dates such as 2015-02-30.
std::optional<Date> parse_date(std::string_view text);

/// ISO-8601 (YYYY-MM-DD).
std::string format_date(Date date);

/// Weekend-excluding calendar with an optional holiday list.
///
/// Trading-day arithmetic is only defined on dates the calendar includes, which
/// makes offset() a bijection between integer steps and trading days.
class TradingCalendar {
public:
    TradingCalendar() = default;
    explicit TradingCalendar(const std::vector<Date>& holidays);

    bool is_trading_day(Date date) const;

    /// The k-th trading day after (k > 0) or before (k < 0) `date`.
    /// Throws InvalidArgument if `date` itself is not a trading day.
    Date offset(Date date, long k) const;

    /// Number of trading-day steps from `from` to `to` (negative if `to` is earlier).
    /// Both dates must be trading days.
    long distance(Date from, Date to) const;

    /// First trading day on or after `date`.
    Date next_or_same(Date date) const;

    const std::set<std::chrono::sys_days>& holidays() const { return holidays_; }

private:
    std::set<std::chrono::sys_days> holidays_;
};

/// Free-function form of TradingCalendar::offset.
Date trading_day_offset(const TradingCalendar& calendar, Date date, long k);

/// Reads a holiday file: one date per line, '#' comments and blank lines ignored.
std::vector<Date> load_holidays(const std::string& path);

}  // namespace lppl
