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

#include "qfluid/kinsim/state.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qfluid/constants.hpp"
#include "qfluid/errors.hpp"
#include "qfluid/kinsim/rng.hpp"
#include "qfluid/simd/kernels.hpp"

namespace qfluid::kinsim {

Vec3 SimState::position(std::size_t i, double t) const {
  const double dt = t - t_local[i];
  return {x[i] + vx[i] * dt, y[i] + vy[i] * dt, z[i] + vz[i] * dt};
}

void SimState::advance(std::size_t i, double t) {
  const double dt = t - t_local[i];
  x[i] = x[i] + vx[i] * dt;
  y[i] = y[i] + vy[i] * dt;
  z[i] = z[i] + vz[i] * dt;
  t_local[i] = t;
}

void SimState::synchronize() {
  for (std::size_t i = 0; i < size(); ++i) advance(i, time);
}

Vec3 SimState::minimum_image(Vec3 d) const {
  for (double& c : d) c -= box * std::nearbyint(c / box);
  return d;
}

Vec3 SimState::separation(std::size_t i, std::size_t j) const {
  const Vec3 ri = position(i);
  const Vec3 rj = position(j);
  return minimum_image({rj[0] - ri[0], rj[1] - ri[1], rj[2] - ri[2]});
}

double SimState::kinetic_energy() const {
  const auto sums = simd::velocity_sums(vx, vy, vz);
  return 0.5 * m * sums.sum_v2;
}

Vec3 SimState::momentum() const {
  const auto sums = simd::velocity_sums(vx, vy, vz);
  return {m * sums.px, m * sums.py, m * sums.pz};
}

double SimState::kinetic_temperature() const {
  const double dof = size() >= 2 ? 3.0 * static_cast<double>(size() - 1) : 3.0;
  return 2.0 * kinetic_energy() / (dof * kConstants.k_B);
}

double SimState::min_pair_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      const Vec3 d = separation(i, j);
      best = std::min(best, std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]));
    }
  }
  return best;
}

SimState SimState::from_particles(double box, double d_hs, double m, const std::vector<Vec3>& positions,
                                  const std::vector<Vec3>& velocities) {
  if (positions.size() != velocities.size()) {
    throw InputError("particles", "positions and velocities differ in length");
  }
  SimState s;
  s.box = box;
  s.d_hs = d_hs;
  s.m = m;
  const std::size_t n = positions.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 p = positions[i];
    for (double& c : p) c -= box * std::floor(c / box);
    s.x.push_back(p[0]);
    s.y.push_back(p[1]);
    s.z.push_back(p[2]);
    s.vx.push_back(velocities[i][0]);
    s.vy.push_back(velocities[i][1]);
    s.vz.push_back(velocities[i][2]);
  }
  s.t_local.assign(n, 0.0);
  return s;
}

SimState init_state(const SimConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::size_t n = cfg.N;
  const double L = cfg.box;
  const double d2 = cfg.d_hs * cfg.d_hs;

  std::vector<Vec3> pos;
  pos.reserve(n);
  constexpr int kAttemptsPerParticle = 10000;
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kAttemptsPerParticle && !placed; ++attempt) {
      const Vec3 p{rng.uniform() * L, rng.uniform() * L, rng.uniform() * L};
      placed = true;
      for (const Vec3& q : pos) {
        double r2 = 0.0;
        for (int k = 0; k < 3; ++k) {
          double c = q[k] - p[k];
          c -= L * std::nearbyint(c / L);
          r2 += c * c;
        }
        if (r2 < d2) {
          placed = false;
          break;
        }
      }
      if (placed) pos.push_back(p);
    }
    if (!placed) {
      throw InputError("packing", "could not place particle " + std::to_string(i) + " of " + std::to_string(n) +
                                      " at packing fraction " + std::to_string(cfg.packing_fraction()));
    }
  }

  const double sigma_v = std::sqrt(kConstants.k_B * cfg.T / cfg.m);
  std::vector<Vec3> vel(n);
  for (Vec3& v : vel) {
    for (double& c : v) c = sigma_v * rng.normal();
  }
  if (n >= 2) {
    Vec3 mean{0.0, 0.0, 0.0};
    for (const Vec3& v : vel) {
      for (int k = 0; k < 3; ++k) mean[k] += v[k];
    }
    for (double& c : mean) c /= static_cast<double>(n);
    for (Vec3& v : vel) {
      for (int k = 0; k < 3; ++k) v[k] -= mean[k];
    }
  }

  SimState s = SimState::from_particles(L, cfg.d_hs, cfg.m, pos, vel);
  const double scale = std::sqrt(cfg.T / s.kinetic_temperature());
  for (std::size_t i = 0; i < n; ++i) {
    s.vx[i] *= scale;
    s.vy[i] *= scale;
    s.vz[i] *= scale;
  }
  return s;
}

std::optional<double> predict_pair_collision(const SimState& state, std::size_t i, std::size_t j) {
  const Vec3 d = state.separation(i, j);
  const double dvx = state.vx[j] - state.vx[i];
  const double dvy = state.vy[j] - state.vy[i];
  const double dvz = state.vz[j] - state.vz[i];
  double t = 0.0;
  simd::contact_times({{&d[0], 1}, {&d[1], 1}, {&d[2], 1}, {&dvx, 1}, {&dvy, 1}, {&dvz, 1}}, state.d_hs,
                      simd::InsidePolicy::Immediate, {&t, 1});
  if (!std::isfinite(t)) return std::nullopt;
  return state.time + t;
}

void resolve_collision(SimState& state, std::size_t i, std::size_t j, double contact_tolerance) {
  state.advance(i, state.time);
  state.advance(j, state.time);
  const Vec3 d = state.separation(i, j);
  const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (std::abs(r - state.d_hs) > contact_tolerance * state.d_hs) {
    throw SimulationError("collision between " + std::to_string(i) + " and " + std::to_string(j) +
                          " resolved off contact: separation/d_hs = " + std::to_string(r / state.d_hs));
  }
  const double nx = d[0] / r, ny = d[1] / r, nz = d[2] / r;
  const double dvn = (state.vx[j] - state.vx[i]) * nx + (state.vy[j] - state.vy[i]) * ny +
                     (state.vz[j] - state.vz[i]) * nz;
  if (!(dvn < 0.0)) return;  // grazing or receding: nothing to exchange
  state.vx[i] += dvn * nx;
  state.vy[i] += dvn * ny;
  state.vz[i] += dvn * nz;
  state.vx[j] -= dvn * nx;
  state.vy[j] -= dvn * ny;
  state.vz[j] -= dvn * nz;
}

}  // namespace qfluid::kinsim
