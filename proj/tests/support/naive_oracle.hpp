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

// Brute-force hard-sphere reference: fixed time steps, every pair tested at
// every step, contact instants solved exactly inside a step. Shares no code
// with the event-driven simulator beyond the initial state.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "qfluid/kinsim/state.hpp"

namespace qfluid::testing {

class NaiveGas {
 public:
  NaiveGas(const kinsim::SimState& s, double dt) : L_(s.box), d_(s.d_hs), dt_(dt) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto p = s.position(i, 0.0);
      r_.push_back({wrap(p[0]), wrap(p[1]), wrap(p[2])});
      v_.push_back({s.vx[i], s.vy[i], s.vz[i]});
    }
  }

  void run_until(double t_final) {
    while (t_ < t_final) {
      const double h = std::min(dt_, t_final - t_);
      step(h);
    }
    t_ = t_final;
  }

  std::size_t collisions() const { return collisions_; }
  double time() const { return t_; }
  const std::array<double, 3>& position(std::size_t i) const { return r_[i]; }

 private:
  double wrap(double x) const { return x - L_ * std::floor(x / L_); }
  double image(double d) const { return d - L_ * std::round(d / L_); }

  void drift(double h) {
    for (std::size_t i = 0; i < r_.size(); ++i) {
      for (int k = 0; k < 3; ++k) r_[i][k] = wrap(r_[i][k] + v_[i][k] * h);
    }
  }

  // Smaller root of |r + v t| = d for an approaching pair, else +inf.
  double contact(std::size_t i, std::size_t j) const {
    double r[3], v[3];
    for (int k = 0; k < 3; ++k) {
      r[k] = image(r_[j][k] - r_[i][k]);
      v[k] = v_[j][k] - v_[i][k];
    }
    const double b = r[0] * v[0] + r[1] * v[1] + r[2] * v[2];
    if (b >= 0.0) return std::numeric_limits<double>::infinity();
    const double vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    const double rr = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    const double disc = b * b - vv * (rr - d_ * d_);
    if (disc < 0.0) return std::numeric_limits<double>::infinity();
    return std::max(0.0, (-b - std::sqrt(disc)) / vv);
  }

  void collide(std::size_t i, std::size_t j) {
    double n[3], len2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      n[k] = image(r_[j][k] - r_[i][k]);
      len2 += n[k] * n[k];
    }
    const double len = std::sqrt(len2);
    double dvn = 0.0;
    for (int k = 0; k < 3; ++k) {
      n[k] /= len;
      dvn += (v_[j][k] - v_[i][k]) * n[k];
    }
    for (int k = 0; k < 3; ++k) {
      v_[i][k] += dvn * n[k];
      v_[j][k] -= dvn * n[k];
    }
    ++collisions_;
  }

  void step(double h) {
    double left = h;
    for (;;) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i < r_.size(); ++i) {
        for (std::size_t j = i + 1; j < r_.size(); ++j) {
          const double t = contact(i, j);
          if (t < best) best = t, bi = i, bj = j;
        }
      }
      if (best > left) break;
      drift(best);
      collide(bi, bj);
      left -= best;
    }
    drift(left);
    t_ += h;
  }

  double L_, d_, dt_;
  double t_ = 0.0;
  std::size_t collisions_ = 0;
  std::vector<std::array<double, 3>> r_, v_;
};

/// Largest minimum-image distance between oracle and simulator positions.
inline double max_position_error(const NaiveGas& oracle, const kinsim::SimState& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto p = s.position(i, s.time);
    const auto& q = oracle.position(i);
    double e2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double d = p[k] - q[k];
      const double im = d - s.box * std::round(d / s.box);
      e2 += im * im;
    }
    worst = std::max(worst, std::sqrt(e2));
  }
  return worst;
}

}  // namespace qfluid::testing
