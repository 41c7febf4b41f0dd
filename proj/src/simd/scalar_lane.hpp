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

// Per-lane arithmetic shared by the scalar kernels and the vector tails.
// The AVX2 bodies must mirror these expressions operation for operation.

#include <cmath>
#include <complex>
#include <limits>
#include <span>

#include "qfluid/simd/kernels.hpp"

namespace qfluid::simd::detail {

inline double contact_time_lane(double dx, double dy, double dz, double dvx, double dvy, double dvz,
                                double r2, double inside_value) {
  const double b = dx * dvx + dy * dvy + dz * dvz;
  if (b >= 0.0) return std::numeric_limits<double>::infinity();
  const double c = (dx * dx + dy * dy + dz * dz) - r2;
  if (c <= 0.0) return inside_value;
  const double vv = dvx * dvx + dvy * dvy + dvz * dvz;
  const double disc = b * b - vv * c;
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  // Root of the quadratic in the cancellation-free form c / (sqrt(disc) - b).
  return c / (std::sqrt(disc) - b);
}

struct RowConstants {
  double a1;      // |f1|^2
  double b1;      // |g1|^2
  double qr, qi;  // f1* g1
  double sign2;   // 2 * sign
  double prefactor;
};

inline RowConstants row_constants(std::complex<double> f1, std::complex<double> g1, double sign,
                                  double prefactor) {
  return {f1.real() * f1.real() + f1.imag() * f1.imag(),
          g1.real() * g1.real() + g1.imag() * g1.imag(),
          f1.real() * g1.real() + f1.imag() * g1.imag(),
          f1.real() * g1.imag() - f1.imag() * g1.real(),
          2.0 * sign,
          prefactor};
}

inline double pair_density_lane(const RowConstants& rc, double f2r, double f2i, double g2r, double g2i) {
  const double a2 = f2r * f2r + f2i * f2i;
  const double b2 = g2r * g2r + g2i * g2i;
  // g2* f2
  const double sr = g2r * f2r + g2i * f2i;
  const double si = g2r * f2i - g2i * f2r;
  const double interference = rc.qr * sr - rc.qi * si;
  const double p = rc.prefactor * ((rc.a1 * b2 + a2 * rc.b1) + rc.sign2 * interference);
  return p > 0.0 ? p : 0.0;
}

inline double reduce4(const double (&lanes)[4]) { return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]); }

inline void accumulate_tail(VelocitySums& r, std::span<const double> vx, std::span<const double> vy,
                            std::span<const double> vz, std::size_t from) {
  for (std::size_t j = from; j < vx.size(); ++j) {
    const double s = vx[j] * vx[j] + vy[j] * vy[j] + vz[j] * vz[j];
    r.sum_v2 = r.sum_v2 + s;
    r.sum_speed = r.sum_speed + std::sqrt(s);
    r.px = r.px + vx[j];
    r.py = r.py + vy[j];
    r.pz = r.pz + vz[j];
  }
}

}  // namespace qfluid::simd::detail
