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

#include <limits>

#include "qfluid/simd/kernels.hpp"
#include "scalar_lane.hpp"

namespace qfluid::simd::scalar {

void contact_times(const ContactBatch& batch, double radius, InsidePolicy inside, std::span<double> out) {
  const double r2 = radius * radius;
  const double inside_value = inside == InsidePolicy::Immediate ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < batch.size(); ++k) {
    out[k] = detail::contact_time_lane(batch.dx[k], batch.dy[k], batch.dz[k], batch.dvx[k], batch.dvy[k],
                                       batch.dvz[k], r2, inside_value);
  }
}

void pair_density_row(std::complex<double> f1, std::complex<double> g1, const ComplexColumn& f2,
                      const ComplexColumn& g2, double sign, double prefactor, std::span<double> out) {
  const detail::RowConstants rc = detail::row_constants(f1, g1, sign, prefactor);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = detail::pair_density_lane(rc, f2.re[j], f2.im[j], g2.re[j], g2.im[j]);
  }
}

VelocitySums velocity_sums(std::span<const double> vx, std::span<const double> vy, std::span<const double> vz) {
  const std::size_t n = vx.size();
  const std::size_t bulk = n - n % 4;
  double v2[4] = {}, sp[4] = {}, px[4] = {}, py[4] = {}, pz[4] = {};
  for (std::size_t j = 0; j < bulk; j += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double s = vx[j + l] * vx[j + l] + vy[j + l] * vy[j + l] + vz[j + l] * vz[j + l];
      v2[l] = v2[l] + s;
      sp[l] = sp[l] + std::sqrt(s);
      px[l] = px[l] + vx[j + l];
      py[l] = py[l] + vy[j + l];
      pz[l] = pz[l] + vz[j + l];
    }
  }
  VelocitySums r{detail::reduce4(v2), detail::reduce4(sp), detail::reduce4(px), detail::reduce4(py),
                 detail::reduce4(pz)};
  detail::accumulate_tail(r, vx, vy, vz, bulk);
  return r;
}

}  // namespace qfluid::simd::scalar
