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

#include <numbers>

#include "qfluid/units.hpp"

namespace qfluid {

/// CODATA 2018 values in SI. h, k_B and e are exact by definition of the SI.
struct PhysicalConstants {
  double h;
  double hbar;
  double k_B;
  double m_e;
  /// Elementary charge in coulomb. The Gaussian-unit e^2 of a_B = hbar^2/(m_e e^2)
  /// corresponds to e^2/(4 pi eps0) here.
  double e_charge;
  double u;
  double epsilon0;
  double c;
  double alpha;
};

inline constexpr PhysicalConstants kConstants{
    .h = 6.62607015e-34,
    .hbar = 6.62607015e-34 / (2.0 * std::numbers::pi),
    .k_B = 1.380649e-23,
    .m_e = 9.1093837015e-31,
    .e_charge = 1.602176634e-19,
    .u = 1.66053906660e-27,
    .epsilon0 = 8.8541878128e-12,
    .c = 299792458.0,
    .alpha = 7.2973525693e-3,
};

/// BEC threshold of the degeneracy parameter, zeta(3/2).
inline constexpr double kBecDegeneracy = 2.612;

/// Bohr radius, the scale of the condensed-phase interparticle distance d.
/// Evaluated as 4 pi eps0 hbar^2 / (m_e e^2), the SI form of hbar^2/(m_e e^2).
Quantity bohr_radius();

}  // namespace qfluid
