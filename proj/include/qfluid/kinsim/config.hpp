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

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qfluid::kinsim {

/// Where exchange detection takes its reference positions from.
enum class ExchangeReference {
  /// Each particle's own most recent collision (position and time).
  LastCollision,
  /// Positions of all particles, re-snapshotted every `snapshot_stride`.
  Stride,
};

std::string_view to_string(ExchangeReference r);
ExchangeReference exchange_reference_from_string(std::string_view s);

/// Parameters of one event-driven hard-sphere run. SI units throughout.
struct SimConfig {
  std::size_t N = 500;
  /// Periodic cube edge (m).
  double box = 0.0;
  /// Hard-sphere diameter (m).
  double d_hs = 0.0;
  double T = 0.0;
  double m = 0.0;
  std::uint64_t seed = 1;
  double t_end = 0.0;
  /// Statistics only count flights and exchange references starting at or after this time.
  double warmup = 0.0;
  /// Exchange-detection radius; 0 selects d_hs.
  double r_ex = 0.0;
  ExchangeReference reference = ExchangeReference::LastCollision;
  /// Snapshot period for ExchangeReference::Stride (s).
  double snapshot_stride = 0.0;
  /// Period of speed-distribution sampling ticks (s); 0 disables sampling.
  double sample_interval = 0.0;

  static constexpr double kMaxPackingFraction = 0.05;

  /// Throws InputError naming the offending field.
  void validate() const;

  double exchange_radius() const { return r_ex > 0.0 ? r_ex : d_hs; }
  double number_density() const;
  /// (pi/6) N d^3 / L^3.
  double packing_fraction() const;

  bool operator==(const SimConfig&) const = default;
};

/// Box edge giving packing fraction `eta` for N spheres of diameter d.
double box_for_packing(std::size_t N, double d_hs, double eta);

/// Geometric diameter whose disk area equals `sigma`: sqrt(sigma/pi).
double diameter_from_cross_section(double sigma);

/// Classical dilute hard-sphere gas: l = 1/(sqrt2 n pi d^2), <v> = sqrt(8kT/(pi m)).
struct HardSphereTheory {
  double ell;
  double mean_speed;
  /// ell / <v>: mean time between collisions of one particle.
  double tau;
};

HardSphereTheory hard_sphere_theory(const SimConfig& cfg);

}  // namespace qfluid::kinsim
