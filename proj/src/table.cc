// Copyright 2026 The qsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsep/table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qsep {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row width does not match the table header");
    }
    rows.push_back(std::move(row));
}

std::vector<double> Table::column(const std::string &name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::out_of_range("no column named " + name);
    }
    auto idx = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) {
        out.push_back(r[idx]);
    }
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table &table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const Table &table, const nlohmann::ordered_json &meta) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = std::isfinite(row[i]) ? nlohmann::ordered_json(row[i]) : nlohmann::ordered_json(nullptr);
        }
        rows.push_back(std::move(obj));
    }
    return {{"meta", meta}, {"rows", rows}};
}

}  // namespace qsep
