#pragma once

// Tabular output: fixed column schemas per command, CSV rendered with six
// significant digits, JSON at full round-trip precision.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "artin/error.hpp"

namespace artin {

using Cell = std::variant<std::int64_t, double>;

struct TableRow {
    std::vector<std::pair<std::string, Cell>> cells;

    TableRow& add(std::string name, Cell value) {
        cells.emplace_back(std::move(name), value);
        return *this;
    }
};

struct Table {
    std::string command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::vector<TableRow> rows;

    void append(TableRow row) {
        if (row.cells.size() != columns.size()) {
            throw Error("table: row has " + std::to_string(row.cells.size()) + " cells, schema has " +
                        std::to_string(columns.size()));
        }
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (row.cells[k].first != columns[k]) {
                throw Error("table: column '" + row.cells[k].first + "' where '" + columns[k] +
                            "' was expected");
            }
            if (const double* v = std::get_if<double>(&row.cells[k].second); v && !std::isfinite(*v)) {
                throw AccuracyError("table: non-finite value in column '" + columns[k] + "'");
            }
        }
        rows.push_back(std::move(row));
    }
};

namespace schema {

inline const std::vector<std::string> zeros = {"n", "u", "residual"};
inline const std::vector<std::string> resonances = {"n", "u", "E", "Gamma"};
inline const std::vector<std::string> resonances_with_approx = {
    "n", "u", "E", "Gamma", "E_approx", "Gamma_approx", "delta_offset"};
inline const std::vector<std::string> phase = {"E", "p", "delta", "re_S", "im_S"};
inline const std::vector<std::string> wave = {"x", "y_tilde", "re_psi", "im_psi", "modes_used"};

}  // namespace schema

inline std::string format_cell(const Cell& cell, int significant_digits = 6) {
    if (const auto* n = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*n);
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, std::get<double>(cell));
    return buffer;
}

inline std::string to_csv(const Table& table, int significant_digits = 6) {
    std::string out;
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        if (k) out += ',';
        out += table.columns[k];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.cells.size(); ++k) {
            if (k) out += ',';
            out += format_cell(row.cells[k].second, significant_digits);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json to_json_value(const Table& table) {
    nlohmann::ordered_json doc;
    doc["command"] = table.command;
    doc["params"] = table.params;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json object = nlohmann::ordered_json::object();
        for (const auto& [name, cell] : row.cells) {
            std::visit([&](auto v) { object[name] = v; }, cell);
        }
        rows.push_back(std::move(object));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

// nlohmann writes doubles with the shortest representation that round-trips.
inline std::string to_json(const Table& table) { return to_json_value(table).dump(2) + "\n"; }

}  // namespace artin
