#pragma once

// Tabular command output rendered as an aligned table, CSV or JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace vbir::report {

using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Column {
    std::string name;
    std::string unit;  ///< empty for dimensionless or text columns
};

struct Table {
    std::string title;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    /// Appends a row; throws std::invalid_argument on a width mismatch.
    void add_row(std::vector<Cell> row);
};

struct Report {
    std::string command;
    std::vector<Table> tables;
    std::vector<std::pair<std::string, std::string>> notes;  ///< key / value, in order
    std::optional<bool> check_passed;
    std::vector<std::string> messages;
};

enum class Format { Table, Csv, Json };

/// table | csv | json; throws ConfigError otherwise.
Format parse_format(std::string_view s);
std::string_view to_string(Format f);

/// Scientific notation with `digits` significant digits.
std::string sci(double v, int digits = 4);

std::string render(const Report& r, Format f);
std::string to_json(const Report& r);
/// Inverse of to_json; throws ConfigError on malformed input.
Report from_json(std::string_view text);

}  // namespace vbir::report
