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

#include "qfluid/app/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qfluid/errors.hpp"

namespace qfluid::app {

UnitSystem unit_system_from_string(std::string_view s) {
  if (s == "si") return UnitSystem::SI;
  if (s == "cgs") return UnitSystem::CGS;
  throw InputError("units", "expected si or cgs, got '" + std::string(s) + "'");
}

std::string_view to_string(UnitSystem u) { return u == UnitSystem::SI ? "si" : "cgs"; }

const Unit& display_unit(Dimension d, UnitSystem system) {
  const bool cgs = system == UnitSystem::CGS;
  switch (d) {
    case Dimension::Length: return cgs ? units::cm : units::m;
    case Dimension::Time: return units::s;
    case Dimension::Mass: return cgs ? units::g : units::kg;
    case Dimension::Temperature: return units::K;
    case Dimension::NumberDensity: return cgs ? units::per_cm3 : units::per_m3;
    case Dimension::Area: return cgs ? units::cm2 : units::m2;
    case Dimension::Energy: return cgs ? units::erg : units::J;
    case Dimension::Velocity: return cgs ? units::cm_per_s : units::m_per_s;
    case Dimension::Dimensionless: return units::one;
  }
  return units::one;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string quantity_text(double si_value, const Unit& unit) {
  return format_number(si_value / unit.to_si) + " " + std::string(unit.symbol);
}

std::string Table::str() const {
  std::vector<std::size_t> width;
  for (const auto& row : rows_) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows_) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << line << '\n';
  }
  return out.str();
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_list(std::string_view text, std::string_view field) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (item.empty()) throw InputError(std::string(field), "empty item in list '" + std::string(text) + "'");
    items.emplace_back(item);
    start = end + 1;
  }
  return items;
}

}  // namespace qfluid::app
