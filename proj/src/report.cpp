#include "avgsa/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "avgsa/error.hpp"

namespace avgsa {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

namespace {

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) return format_number(v);
            else if constexpr (std::is_same_v<V, std::int64_t>) return std::to_string(v);
            else return v;
        },
        cell);
}

nlohmann::json cell_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
                if (!std::isfinite(v)) return format_number(v);
                return std::stod(format_number(v));
            } else {
                return v;
            }
        },
        cell);
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const Table& table, const Meta& meta) {
    nlohmann::json meta_obj = nlohmann::json::object();
    for (const auto& [k, v] : meta) meta_obj[k] = v;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i)
            obj[table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    return {{"meta", std::move(meta_obj)}, {"rows", std::move(rows)}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void emit_report(const Table& table, const Meta& meta, const std::filesystem::path& path,
                 ReportFormat format) {
    if (format == ReportFormat::Csv) {
        write_text(path, to_csv(table));
    } else {
        write_text(path, to_json(table, meta).dump(2) + "\n");
    }
}

}  // namespace avgsa
