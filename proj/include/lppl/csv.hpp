#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lppl/series.hpp"

namespace lppl {

/// Column selection for load_csv. A column is named either by its header text
/// or by a 0-based index written as a number ("0", "3").
struct CsvOptions {
    std::string date_column = "0";
    std::string value_column = "1";
    char delimiter = ',';
    /// Series label; defaults to the value column's header, then the file stem.
    std::string label;
};

/// Reads a date/value CSV. The header row is optional (detected by an
/// unparseable date in the first row). Dates may be ISO-8601 or DD.MM.YYYY.
/// Out-of-order rows are sorted (a warning is appended to `warnings`);
/// duplicate dates and unparseable values are Parse errors naming the line.
PriceSeries load_csv(const std::filesystem::path& path, const CsvOptions& options = {},
                     std::vector<std::string>* warnings = nullptr);

PriceSeries read_csv(std::istream& in, const CsvOptions& options = {},
                     std::vector<std::string>* warnings = nullptr,
                     const std::string& source = "<stream>");

/// "date,<label>" header, ISO dates, shortest round-trip number formatting.
void write_csv(std::ostream& out, const PriceSeries& series);
void write_csv(const std::filesystem::path& path, const PriceSeries& series);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace lppl
