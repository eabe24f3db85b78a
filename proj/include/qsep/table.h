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

#ifndef QSEP_TABLE_H
#define QSEP_TABLE_H

#include <string>
#include <vector>

#include "json.hpp"

namespace qsep {

inline constexpr const char *kVersion = "0.1.0";

/// Numeric columns with a frozen header.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    /// Values of one column, looked up by name.
    std::vector<double> column(const std::string &name) const;
};

/// %.17g formatting; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

/// Header line plus one line per row, comma separated, LF terminated.
std::string to_csv(const Table &table);

/// {"meta": meta, "rows": [{column: value, ...}, ...]}; non-finite values become null.
nlohmann::ordered_json to_json(const Table &table, const nlohmann::ordered_json &meta);

}  // namespace qsep

#endif
