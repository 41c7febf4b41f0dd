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

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qfluid/kinsim/config.hpp"

namespace qfluid::kinsim {

using Vec3 = std::array<double, 3>;

/// Particle coordinates with per-particle clocks: particle i sits at
/// r[i] + v[i] * (t - t_local[i]) at time t. Coordinates stay inside the box
/// up to one free flight; displacements go through the minimum image.
struct SimState {
  double box = 0.0;
  double d_hs = 0.0;
  double m = 0.0;
  double time = 0.0;
  std::vector<double> x, y, z;
  std::vector<double> vx, vy, vz;
  std::vector<double> t_local;

  std::size_t size() const { return x.size(); }

  Vec3 position(std::size_t i, double t) const;
  Vec3 position(std::size_t i) const { return position(i, time); }
  Vec3 velocity(std::size_t i) const { return {vx[i], vy[i], vz[i]}; }

  /// Moves particle i's stored coordinates to time t.
  void advance(std::size_t i, double t);
  /// Advances every particle to `time`.
  void synchronize();

  /// Minimum-image separation r_j - r_i at the current time.
  Vec3 separation(std::size_t i, std::size_t j) const;
  Vec3 minimum_image(Vec3 d) const;

  double kinetic_energy() const;
  Vec3 momentum() const;
  /// 2 KE / (dof k_B), dof = 3(N-1) for N >= 2 (centre of mass removed), 3 for N = 1.
  double kinetic_temperature() const;
  /// Smallest minimum-image pair distance, O(N^2).
  double min_pair_distance() const;

  /// Builds a state from explicit coordinates (all particles at t = 0).
  static SimState from_particles(double box, double d_hs, double m, const std::vector<Vec3>& positions,
                                 const std::vector<Vec3>& velocities);
};

/// Random non-overlapping placement and Maxwell-Boltzmann velocities with the
/// centre-of-mass velocity removed and kinetic temperature rescaled to cfg.T.
/// Deterministic in cfg.seed. Throws InputError if placement fails.
SimState init_state(const SimConfig& cfg);

/// Absolute time of the next contact of i and j (minimum image), if any.
std::optional<double> predict_pair_collision(const SimState& state, std::size_t i, std::size_t j);

/// Elastic equal-mass collision at the current time: exchanges the normal
/// velocity components. Throws SimulationError if the pair is not in contact.
void resolve_collision(SimState& state, std::size_t i, std::size_t j, double contact_tolerance = 1e-9);

}  // namespace qfluid::kinsim
