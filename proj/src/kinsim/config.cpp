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

#include "qfluid/kinsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qfluid/constants.hpp"
#include "qfluid/errors.hpp"

namespace qfluid::kinsim {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError(field, "must be positive and finite");
}
}  // namespace

std::string_view to_string(ExchangeReference r) {
  return r == ExchangeReference::Stride ? "stride" : "last_collision";
}

ExchangeReference exchange_reference_from_string(std::string_view s) {
  if (s == "last_collision" || s == "collision") return ExchangeReference::LastCollision;
  if (s == "stride") return ExchangeReference::Stride;
  throw InputError("reference", "expected 'last_collision' or 'stride', got '" + std::string(s) + "'");
}

void SimConfig::validate() const {
  if (N == 0) throw InputError("N", "need at least one particle");
  if (N > (std::size_t{1} << 31)) throw InputError("N", "too many particles");
  require_positive(box, "box");
  require_positive(d_hs, "d_hs");
  require_positive(T, "T");
  require_positive(m, "m");
  require_positive(t_end, "t_end");
  if (!(warmup >= 0.0) || !(warmup < t_end)) throw InputError("warmup", "must lie in [0, t_end)");
  if (!(r_ex >= 0.0) || !std::isfinite(r_ex)) throw InputError("r_ex", "must be non-negative (0 selects d_hs)");
  if (box <= 3.0 * std::max(d_hs, exchange_radius())) {
    throw InputError("box", "edge must exceed 3 * max(d_hs, r_ex)");
  }
  if (packing_fraction() >= kMaxPackingFraction) {
    throw InputError("packing", "packing fraction " + std::to_string(packing_fraction()) +
                                    " is not dilute (must stay below 0.05)");
  }
  if (reference == ExchangeReference::Stride) require_positive(snapshot_stride, "snapshot_stride");
  if (!(sample_interval >= 0.0) || !std::isfinite(sample_interval)) {
    throw InputError("sample_interval", "must be non-negative");
  }
}

double SimConfig::number_density() const { return static_cast<double>(N) / (box * box * box); }

double SimConfig::packing_fraction() const {
  return kPi / 6.0 * static_cast<double>(N) * d_hs * d_hs * d_hs / (box * box * box);
}

double box_for_packing(std::size_t N, double d_hs, double eta) {
  return d_hs * std::cbrt(kPi / 6.0 * static_cast<double>(N) / eta);
}

double diameter_from_cross_section(double sigma) { return std::sqrt(sigma / kPi); }

HardSphereTheory hard_sphere_theory(const SimConfig& cfg) {
  const double n = cfg.number_density();
  const double ell = 1.0 / (std::sqrt(2.0) * n * kPi * cfg.d_hs * cfg.d_hs);
  const double mean_speed = std::sqrt(8.0 * kConstants.k_B * cfg.T / (kPi * cfg.m));
  return {ell, mean_speed, ell / mean_speed};
}

}  // namespace qfluid::kinsim
