// Copyright 2026-present the qfluid project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfluid/units.hpp"

namespace qfluid::app {

enum class UnitSystem { SI, CGS };

UnitSystem unit_system_from_string(std::string_view s);
std::string_view to_string(UnitSystem u);

/// Display unit for a dimension in the given system.
const Unit& display_unit(Dimension d, UnitSystem system);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

/// "<shortest number> <symbol>", parseable by parse_quantity.
std::string quantity_text(double si_value, const Unit& unit);

/// Two or more columns, left-aligned, separated by two spaces.
class Table {
 public:
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string str() const;

 private:
  std::vector<std::vector<std::string>> rows_;
};

/// Minimal CSV field quoting (fields with comma, quote or newline).
std::string csv_field(std::string_view s);

/// Comma-separated list, whitespace trimmed, empty items rejected as InputError(field).
std::vector<std::string> split_list(std::string_view text, std::string_view field);

}  // namespace qfluid::app
