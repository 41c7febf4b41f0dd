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

#include <compare>
#include <string>
#include <string_view>

#include "qfluid/errors.hpp"

namespace qfluid {

enum class Dimension {
  Length,
  Time,
  Mass,
  Temperature,
  NumberDensity,
  Area,
  Energy,
  Velocity,
  Dimensionless,
};

std::string_view to_string(Dimension d);

/// A unit is a named SI multiplier on one dimension.
struct Unit {
  std::string_view symbol;
  Dimension dimension;
  double to_si;
};

namespace units {
inline constexpr Unit m{"m", Dimension::Length, 1.0};
inline constexpr Unit cm{"cm", Dimension::Length, 1e-2};
inline constexpr Unit mm{"mm", Dimension::Length, 1e-3};
inline constexpr Unit um{"um", Dimension::Length, 1e-6};
inline constexpr Unit nm{"nm", Dimension::Length, 1e-9};
inline constexpr Unit angstrom{"A", Dimension::Length, 1e-10};
inline constexpr Unit s{"s", Dimension::Time, 1.0};
inline constexpr Unit ms{"ms", Dimension::Time, 1e-3};
inline constexpr Unit us{"us", Dimension::Time, 1e-6};
inline constexpr Unit ns{"ns", Dimension::Time, 1e-9};
inline constexpr Unit ps{"ps", Dimension::Time, 1e-12};
inline constexpr Unit kg{"kg", Dimension::Mass, 1.0};
inline constexpr Unit g{"g", Dimension::Mass, 1e-3};
inline constexpr Unit u{"u", Dimension::Mass, 1.66053906660e-27};
inline constexpr Unit K{"K", Dimension::Temperature, 1.0};
inline constexpr Unit mK{"mK", Dimension::Temperature, 1e-3};
inline constexpr Unit uK{"uK", Dimension::Temperature, 1e-6};
inline constexpr Unit nK{"nK", Dimension::Temperature, 1e-9};
inline constexpr Unit per_m3{"/m3", Dimension::NumberDensity, 1.0};
inline constexpr Unit per_cm3{"/cm3", Dimension::NumberDensity, 1e6};
inline constexpr Unit m2{"m2", Dimension::Area, 1.0};
inline constexpr Unit cm2{"cm2", Dimension::Area, 1e-4};
inline constexpr Unit J{"J", Dimension::Energy, 1.0};
inline constexpr Unit erg{"erg", Dimension::Energy, 1e-7};
inline constexpr Unit eV{"eV", Dimension::Energy, 1.602176634e-19};
inline constexpr Unit meV{"meV", Dimension::Energy, 1.602176634e-22};
inline constexpr Unit m_per_s{"m/s", Dimension::Velocity, 1.0};
inline constexpr Unit cm_per_s{"cm/s", Dimension::Velocity, 1e-2};
inline constexpr Unit one{"1", Dimension::Dimensionless, 1.0};
}  // namespace units

/// Looks up a unit by symbol; throws InputError for unknown symbols.
const Unit& unit_by_symbol(std::string_view symbol);

/// SI-valued scalar tagged with its dimension.
class Quantity {
 public:
  constexpr Quantity(double si_value, Dimension dim) : value_(si_value), dim_(dim) {}

  static constexpr Quantity from(double value, const Unit& unit) {
    return Quantity(value * unit.to_si, unit.dimension);
  }

  constexpr double si() const { return value_; }
  constexpr Dimension dimension() const { return dim_; }

  /// Numeric value expressed in `unit`; throws DimensionError on mismatch.
  double in(const Unit& unit) const;

  Quantity operator+(const Quantity& o) const;
  Quantity operator-(const Quantity& o) const;
  constexpr Quantity operator*(double k) const { return {value_ * k, dim_}; }
  constexpr Quantity operator/(double k) const { return {value_ / k, dim_}; }
  /// Ratio of like quantities.
  double operator/(const Quantity& o) const;
  std::partial_ordering operator<=>(const Quantity& o) const;
  bool operator==(const Quantity& o) const;

 private:
  double value_;
  Dimension dim_;
};

/// A number paired with the unit it is expressed in.
struct UnitValue {
  double value;
  Unit unit;
};

UnitValue convert(const Quantity& q, const Unit& target);

/// Parses "<number><unit>" such as "170nK", "2.6e12/cm3" or "1e-6 cm".
/// A missing or unknown unit is an InputError naming `field`.
Quantity parse_quantity(std::string_view text, std::string_view field);

/// As parse_quantity, additionally requiring `expected` dimension.
Quantity parse_quantity(std::string_view text, std::string_view field, Dimension expected);

}  // namespace qfluid
