#include "lppl/calendar.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "lppl/error.hpp"

namespace lppl {

namespace {

using std::chrono::sys_days;

bool parse_int(std::string_view text, int& out) {
    if (text.empty()) return false;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::optional<Date> make_date(int y, int m, int d) {
    Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
              std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

bool is_weekend(sys_days day) {
    const std::chrono::weekday wd{day};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::RankDeficient: return "rank_deficient";
        case ErrorKind::Degenerate: return "degenerate";
        case ErrorKind::NoFeasibleFit: return "no_feasible_fit";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

std::optional<Date> parse_date(std::string_view text) {
    int y = 0, m = 0, d = 0;
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        if (parse_int(text.substr(0, 4), y) && parse_int(text.substr(5, 2), m) &&
            parse_int(text.substr(8, 2), d)) {
            return make_date(y, m, d);
        }
    } else if (text.size() == 10 && text[2] == '.' && text[5] == '.') {
        if (parse_int(text.substr(0, 2), d) && parse_int(text.substr(3, 2), m) &&
            parse_int(text.substr(6, 4), y)) {
            return make_date(y, m, d);
        }
    }
    return std::nullopt;
}

std::string format_date(Date date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

TradingCalendar::TradingCalendar(const std::vector<Date>& holidays) {
    for (const Date& h : holidays) {
        if (!h.ok()) throw Error(ErrorKind::InvalidArgument, "invalid holiday date");
        if (!holidays_.insert(sys_days{h}).second) {
            throw Error(ErrorKind::InvalidArgument, "duplicate holiday " + format_date(h));
        }
    }
}

bool TradingCalendar::is_trading_day(Date date) const {
    const sys_days day{date};
    return !is_weekend(day) && !holidays_.contains(day);
}

Date TradingCalendar::offset(Date date, long k) const {
    if (!is_trading_day(date)) {
        throw Error(ErrorKind::InvalidArgument,
                    format_date(date) + " is not a trading day");
    }
    sys_days day{date};
    const std::chrono::days step{k > 0 ? 1 : -1};
    for (long remaining = k > 0 ? k : -k; remaining > 0;) {
        day += step;
        if (is_trading_day(Date{day})) --remaining;
    }
    return Date{day};
}

long TradingCalendar::distance(Date from, Date to) const {
    if (!is_trading_day(from) || !is_trading_day(to)) {
        throw Error(ErrorKind::InvalidArgument, "distance requires trading days");
    }
    const sys_days a{from}, b{to};
    const sys_days lo = std::min(a, b), hi = std::max(a, b);
    long count = 0;
    for (sys_days d = lo; d < hi;) {
        d += std::chrono::days{1};
        if (is_trading_day(Date{d})) ++count;
    }
    return a <= b ? count : -count;
}

Date TradingCalendar::next_or_same(Date date) const {
    sys_days day{date};
    while (!is_trading_day(Date{day})) day += std::chrono::days{1};
    return Date{day};
}

Date trading_day_offset(const TradingCalendar& calendar, Date date, long k) {
    return calendar.offset(date, k);
}

std::vector<Date> load_holidays(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open holiday file " + path);
    std::vector<Date> out;
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        auto date = parse_date(std::string_view(line).substr(first, last - first + 1));
        if (!date) {
            throw Error(ErrorKind::Parse,
                        path + ":" + std::to_string(line_no) + ": bad holiday date");
        }
        out.push_back(*date);
    }
    return out;
}

}  // namespace lppl
