#include "lppl/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "lppl/error.hpp"

namespace lppl {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(delimiter, pos);
        fields.push_back(trim(line.substr(pos, next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return fields;
}

std::optional<double> parse_number(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::size_t> parse_index(const std::string& text) {
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return index;
}

std::size_t resolve_column(const std::string& spec, const std::vector<std::string>& header,
                           const std::string& source) {
    if (auto index = parse_index(spec)) return *index;
    const auto it = std::find(header.begin(), header.end(), spec);
    if (it == header.end()) {
        throw Error(ErrorKind::Parse, source + ": column '" + spec + "' not found in header");
    }
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

PriceSeries read_csv(std::istream& in, const CsvOptions& options,
                     std::vector<std::string>* warnings, const std::string& source) {
    struct Row {
        Date date;
        double value;
        int line;
    };
    std::vector<Row> rows;
    std::vector<std::string> header;
    std::optional<std::size_t> date_col, value_col;
    bool first_content = true;

    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        if (trim(line).empty()) continue;
        const auto fields = split(line, options.delimiter);
        const auto where = [&] { return source + ":" + std::to_string(line_no) + ": "; };

        if (first_content) {
            first_content = false;
            // A first row whose date field does not parse is a header.
            const auto probe = parse_index(options.date_column).value_or(0);
            const bool is_header = !parse_index(options.date_column) ||
                                   !parse_index(options.value_column) ||
                                   probe >= fields.size() || !parse_date(fields[probe]);
            if (is_header) {
                for (auto f : fields) header.emplace_back(f);
                date_col = resolve_column(options.date_column, header, source);
                value_col = resolve_column(options.value_column, header, source);
                continue;
            }
            date_col = *parse_index(options.date_column);
            value_col = *parse_index(options.value_column);
        }

        if (*date_col >= fields.size() || *value_col >= fields.size()) {
            throw Error(ErrorKind::Parse, where() + "missing column");
        }
        const auto date = parse_date(fields[*date_col]);
        if (!date) {
            throw Error(ErrorKind::Parse, where() + "bad date '" + std::string(fields[*date_col]) + "'");
        }
        const auto value = parse_number(fields[*value_col]);
        if (!value) {
            throw Error(ErrorKind::Parse,
                        where() + "bad value '" + std::string(fields[*value_col]) + "'");
        }
        rows.push_back({*date, *value, line_no});
    }

    if (!std::is_sorted(rows.begin(), rows.end(),
                        [](const Row& a, const Row& b) { return a.date < b.date; })) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.date < b.date; });
        if (warnings) warnings->push_back(source + ": rows not in date order; sorted");
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw Error(ErrorKind::Parse, source + ":" + std::to_string(rows[i].line) +
                                              ": duplicate date " + format_date(rows[i].date) +
                                              " (first seen on line " +
                                              std::to_string(rows[i - 1].line) + ")");
        }
    }

    std::string label = options.label;
    if (label.empty() && !header.empty()) label = header[*value_col];

    std::vector<Date> dates;
    std::vector<double> values;
    dates.reserve(rows.size());
    values.reserve(rows.size());
    for (const Row& r : rows) {
        dates.push_back(r.date);
        values.push_back(r.value);
    }
    return PriceSeries(std::move(dates), std::move(values), std::move(label));
}

PriceSeries load_csv(const std::filesystem::path& path, const CsvOptions& options,
                     std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    PriceSeries series = read_csv(in, options, warnings, path.string());
    if (series.label().empty()) return series.with_label(path.stem().string());
    return series;
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const PriceSeries& series) {
    out << "date," << (series.label().empty() ? "value" : series.label()) << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_date(series.dates()[i]) << ',' << format_number(series.values()[i]) << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const PriceSeries& series) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    write_csv(out, series);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace lppl
