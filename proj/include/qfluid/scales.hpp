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

#include <optional>

namespace qfluid {

// All arguments and results in this header are SI.

enum class Dynamics { Gaslike, Liquidlike };

/// Simple: l = 1/(n sigma). Kinetic: l = (sqrt(pi)/8)/(n sigma).
enum class MfpPrefactor { Simple, Kinetic };

/// Thermal: v = sqrt(kT/m) (the default everywhere).
/// MeanSpeed: v = sqrt(8kT/(pi m)), offered for comparison only.
enum class VelocityConvention { Thermal, MeanSpeed };

inline constexpr double kDefaultAttemptTime = 1e-13;

struct FluidState {
  double T = 0.0;
  double n = 0.0;
  double m = 0.0;
  double a = 0.0;
  /// Activation energy (J) and attempt time (s); needed for liquidlike dynamics.
  std::optional<double> U_act;
  std::optional<double> tau0;
  Dynamics dynamics = Dynamics::Gaslike;
  /// Length that replaces the mean free path when collisions are negligible.
  std::optional<double> system_size;

  /// Throws InputError naming the first offending field.
  void validate() const;
};

struct LiquidTime {
  double seconds;
  /// exp(U/kT) overflowed; seconds is +inf and `exponent` carries U/kT.
  bool frozen;
  double exponent;

  bool operator==(const LiquidTime&) const = default;
};

struct ScaleReport {
  double sigma;
  /// Absent for liquidlike dynamics, where no mean free path exists.
  std::optional<double> ell;
  /// ell was replaced by the system size.
  bool collisionless = false;
  double x;
  double lambda_dB;
  double v_th;
  std::optional<double> tau;
  double tau_x;
  double tau_planck;
  std::optional<LiquidTime> tau_l;
  double degeneracy;

  bool operator==(const ScaleReport&) const = default;
};

struct ScaleOptions {
  MfpPrefactor prefactor = MfpPrefactor::Kinetic;
  VelocityConvention velocity = VelocityConvention::Thermal;
};

/// Total cross-section 8 pi a^2.
double cross_section(double a);

/// Throws CollisionlessError when a == 0.
double mean_free_path(double n, double a, MfpPrefactor prefactor);

/// n^(-1/3).
double interparticle_spacing(double n);

double thermal_velocity(double T, double m,
                        VelocityConvention convention = VelocityConvention::Thermal);

/// h / (m v_th) with v_th = sqrt(kT/m).
double de_broglie(double T, double m);

double tau_exchange(double ell, double v);
double tau_stringent(double x, double v);
/// h / (k_B T).
double tau_planckian(double T);
/// tau0 * exp(U / (k_B T)).
LiquidTime tau_liquid(double U_act, double T, double tau0);
/// n * lambda_dB^3.
double degeneracy_parameter(double n, double T, double m);

/// Collisionless when a == 0, or when n sigma L < 1 for a known system size L.
bool is_collisionless(const FluidState& s);

ScaleReport full_report(const FluidState& s, const ScaleOptions& options = {});

}  // namespace qfluid
