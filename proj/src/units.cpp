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

#include "qfluid/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <string>

namespace qfluid {

namespace {

constexpr std::array kUnits{
    units::m,   units::cm,     units::mm,      units::um,    units::nm,   units::angstrom,
    units::s,   units::ms,     units::us,      units::ns,    units::ps,   units::kg,
    units::g,   units::u,      units::K,       units::mK,    units::uK,   units::nK,
    units::per_m3, units::per_cm3, units::m2,  units::cm2,   units::J,    units::erg,
    units::eV,  units::meV,    units::m_per_s, units::cm_per_s, units::one,
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require_same(Dimension a, Dimension b, std::string_view op) {
  if (a != b) {
    throw DimensionError(std::string("dimension mismatch in ") + std::string(op) + ": " +
                         std::string(to_string(a)) + " vs " + std::string(to_string(b)));
  }
}

}  // namespace

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::Length: return "length";
    case Dimension::Time: return "time";
    case Dimension::Mass: return "mass";
    case Dimension::Temperature: return "temperature";
    case Dimension::NumberDensity: return "number-density";
    case Dimension::Area: return "area";
    case Dimension::Energy: return "energy";
    case Dimension::Velocity: return "velocity";
    case Dimension::Dimensionless: return "dimensionless";
  }
  return "?";
}

const Unit& unit_by_symbol(std::string_view symbol) {
  // A few spellings people type for the same thing.
  if (symbol == "cm^-3" || symbol == "cm-3") symbol = "/cm3";
  if (symbol == "m^-3" || symbol == "m-3") symbol = "/m3";
  if (symbol == "Angstrom" || symbol == "angstrom") symbol = "A";
  if (symbol == "amu" || symbol == "Da") symbol = "u";
  for (const Unit& unit : kUnits) {
    if (unit.symbol == symbol) return unit;
  }
  throw InputError("unit", "unknown unit '" + std::string(symbol) + "'");
}

double Quantity::in(const Unit& unit) const {
  require_same(dim_, unit.dimension, "conversion");
  return value_ / unit.to_si;
}

Quantity Quantity::operator+(const Quantity& o) const {
  require_same(dim_, o.dim_, "addition");
  return {value_ + o.value_, dim_};
}

Quantity Quantity::operator-(const Quantity& o) const {
  require_same(dim_, o.dim_, "subtraction");
  return {value_ - o.value_, dim_};
}

double Quantity::operator/(const Quantity& o) const {
  require_same(dim_, o.dim_, "ratio");
  return value_ / o.value_;
}

std::partial_ordering Quantity::operator<=>(const Quantity& o) const {
  require_same(dim_, o.dim_, "comparison");
  return value_ <=> o.value_;
}

bool Quantity::operator==(const Quantity& o) const {
  require_same(dim_, o.dim_, "comparison");
  return value_ == o.value_;
}

UnitValue convert(const Quantity& q, const Unit& target) {
  return {q.in(target), target};
}

Quantity parse_quantity(std::string_view text, std::string_view field) {
  const std::string name(field);
  std::string_view s = trim(text);
  if (s.empty()) throw InputError(name, "empty value");

  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc()) {
    throw InputError(name, "cannot parse a number from '" + std::string(text) + "'");
  }
  std::string_view suffix = trim(std::string_view(ptr, static_cast<size_t>(s.data() + s.size() - ptr)));
  if (suffix.empty()) {
    throw InputError(name, "missing unit in '" + std::string(text) + "'");
  }
  try {
    return Quantity::from(value, unit_by_symbol(suffix));
  } catch (const InputError&) {
    throw InputError(name, "unknown unit '" + std::string(suffix) + "' in '" + std::string(text) + "'");
  }
}

Quantity parse_quantity(std::string_view text, std::string_view field, Dimension expected) {
  Quantity q = parse_quantity(text, field);
  if (q.dimension() != expected) {
    throw InputError(std::string(field), "expected " + std::string(to_string(expected)) + ", got " +
                                             std::string(to_string(q.dimension())) + " from '" +
                                             std::string(text) + "'");
  }
  return q;
}

}  // namespace qfluid
