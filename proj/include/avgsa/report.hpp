#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace avgsa {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Ordered key/value echo of the configuration that produced a table.
using Meta = std::vector<std::pair<std::string, std::string>>;

enum class ReportFormat { Csv, Json };

/// 10 significant digits ("%.10g"); "inf", "-inf", "nan" for non-finite values.
std::string format_number(double value);

/// Header line plus one line per row, comma separated, LF endings.
std::string to_csv(const Table& table);
/// {"meta": {...}, "rows": [{column: value, ...}, ...]}; numbers rounded
/// to 10 significant digits, non-finite values as strings.
nlohmann::json to_json(const Table& table, const Meta& meta);

/// Writes the table; throws IoError naming the path on failure.
void emit_report(const Table& table, const Meta& meta, const std::filesystem::path& path,
                 ReportFormat format);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace avgsa
