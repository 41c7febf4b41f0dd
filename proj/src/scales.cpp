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

#include "qfluid/scales.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qfluid/constants.hpp"
#include "qfluid/errors.hpp"

namespace qfluid {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InputError(field, "must be positive and finite");
}

}  // namespace

void FluidState::validate() const {
  require_positive(T, "T");
  require_positive(n, "n");
  require_positive(m, "m");
  if (!(a >= 0.0) || !std::isfinite(a)) throw InputError("a", "must be non-negative and finite");
  if (system_size) require_positive(*system_size, "system_size");
  if (dynamics == Dynamics::Liquidlike) {
    if (!U_act) throw InputError("U_act", "required for liquidlike dynamics");
    if (!tau0) throw InputError("tau0", "required for liquidlike dynamics");
  }
  if (U_act && (!(*U_act >= 0.0) || !std::isfinite(*U_act))) {
    throw InputError("U_act", "must be non-negative and finite");
  }
  if (tau0) require_positive(*tau0, "tau0");
}

double cross_section(double a) { return 8.0 * kPi * a * a; }

double mean_free_path(double n, double a, MfpPrefactor prefactor) {
  require_positive(n, "n");
  const double sigma = cross_section(a);
  if (!(sigma > 0.0)) throw CollisionlessError("zero cross-section: mean free path is unbounded, use the system size");
  const double simple = 1.0 / (n * sigma);
  return prefactor == MfpPrefactor::Simple ? simple : (std::sqrt(kPi) / 8.0) * simple;
}

double interparticle_spacing(double n) {
  require_positive(n, "n");
  return std::cbrt(1.0 / n);
}

double thermal_velocity(double T, double m, VelocityConvention convention) {
  require_positive(T, "T");
  require_positive(m, "m");
  const double v2 = kConstants.k_B * T / m;
  return convention == VelocityConvention::Thermal ? std::sqrt(v2) : std::sqrt(8.0 * v2 / kPi);
}

double de_broglie(double T, double m) {
  return kConstants.h / (m * thermal_velocity(T, m));
}

double tau_exchange(double ell, double v) {
  require_positive(ell, "ell");
  require_positive(v, "v");
  return ell / v;
}

double tau_stringent(double x, double v) {
  require_positive(x, "x");
  require_positive(v, "v");
  return x / v;
}

double tau_planckian(double T) {
  require_positive(T, "T");
  return kConstants.h / (kConstants.k_B * T);
}

LiquidTime tau_liquid(double U_act, double T, double tau0) {
  if (!(U_act >= 0.0)) throw InputError("U_act", "must be non-negative");
  require_positive(T, "T");
  require_positive(tau0, "tau0");
  const double exponent = U_act / (kConstants.k_B * T);
  if (exponent > std::log(std::numeric_limits<double>::max()) - std::log(tau0)) {
    return {std::numeric_limits<double>::infinity(), true, exponent};
  }
  return {tau0 * std::exp(exponent), false, exponent};
}

double degeneracy_parameter(double n, double T, double m) {
  require_positive(n, "n");
  const double lambda = de_broglie(T, m);
  return n * lambda * lambda * lambda;
}

bool is_collisionless(const FluidState& s) {
  const double sigma = cross_section(s.a);
  if (!(sigma > 0.0)) return true;
  return s.system_size && s.n * sigma * *s.system_size < 1.0;
}

ScaleReport full_report(const FluidState& s, const ScaleOptions& options) {
  s.validate();

  ScaleReport r{};
  r.sigma = cross_section(s.a);
  r.x = interparticle_spacing(s.n);
  r.v_th = thermal_velocity(s.T, s.m, options.velocity);
  r.lambda_dB = de_broglie(s.T, s.m);
  r.tau_x = tau_stringent(r.x, r.v_th);
  r.tau_planck = tau_planckian(s.T);
  r.degeneracy = s.n * r.lambda_dB * r.lambda_dB * r.lambda_dB;

  if (s.dynamics == Dynamics::Liquidlike) {
    r.tau_l = tau_liquid(*s.U_act, s.T, *s.tau0);
    return r;
  }

  if (is_collisionless(s)) {
    if (!s.system_size) {
      throw InputError("system_size", "collisionless state (a = 0) needs a system size to stand in for the mean free path");
    }
    r.ell = *s.system_size;
    r.collisionless = true;
  } else {
    r.ell = mean_free_path(s.n, s.a, options.prefactor);
  }
  r.tau = tau_exchange(*r.ell, r.v_th);
  return r;
}

}  // namespace qfluid
