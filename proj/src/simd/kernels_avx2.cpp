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

// Compiled with -mavx2 only (no -mfma): multiplies and adds must stay separate
// to round exactly like the scalar reference.

#include <immintrin.h>

#include <limits>

#include "qfluid/simd/kernels.hpp"
#include "scalar_lane.hpp"

namespace qfluid::simd::avx2 {

void contact_times(const ContactBatch& batch, double radius, InsidePolicy inside, std::span<double> out) {
  const std::size_t n = batch.size();
  const std::size_t bulk = n - n % 4;
  const double r2 = radius * radius;
  const double inside_value = inside == InsidePolicy::Immediate ? 0.0 : std::numeric_limits<double>::infinity();

  const __m256d vr2 = _mm256_set1_pd(r2);
  const __m256d vinside = _mm256_set1_pd(inside_value);
  const __m256d vinf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  const __m256d zero = _mm256_setzero_pd();

  for (std::size_t k = 0; k < bulk; k += 4) {
    const __m256d dx = _mm256_loadu_pd(&batch.dx[k]);
    const __m256d dy = _mm256_loadu_pd(&batch.dy[k]);
    const __m256d dz = _mm256_loadu_pd(&batch.dz[k]);
    const __m256d dvx = _mm256_loadu_pd(&batch.dvx[k]);
    const __m256d dvy = _mm256_loadu_pd(&batch.dvy[k]);
    const __m256d dvz = _mm256_loadu_pd(&batch.dvz[k]);

    const __m256d b = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dvx), _mm256_mul_pd(dy, dvy)),
                                    _mm256_mul_pd(dz, dvz));
    const __m256d rr = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                     _mm256_mul_pd(dz, dz));
    const __m256d c = _mm256_sub_pd(rr, vr2);
    const __m256d vv = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dvx, dvx), _mm256_mul_pd(dvy, dvy)),
                                     _mm256_mul_pd(dvz, dvz));
    const __m256d disc = _mm256_sub_pd(_mm256_mul_pd(b, b), _mm256_mul_pd(vv, c));
    const __m256d t = _mm256_div_pd(c, _mm256_sub_pd(_mm256_sqrt_pd(disc), b));

    // Later blends take priority, mirroring the early returns of the scalar lane.
    __m256d result = _mm256_blendv_pd(t, vinf, _mm256_cmp_pd(disc, zero, _CMP_LT_OQ));
    result = _mm256_blendv_pd(result, vinside, _mm256_cmp_pd(c, zero, _CMP_LE_OQ));
    result = _mm256_blendv_pd(result, vinf, _mm256_cmp_pd(b, zero, _CMP_GE_OQ));
    _mm256_storeu_pd(&out[k], result);
  }
  for (std::size_t k = bulk; k < n; ++k) {
    out[k] = detail::contact_time_lane(batch.dx[k], batch.dy[k], batch.dz[k], batch.dvx[k], batch.dvy[k],
                                       batch.dvz[k], r2, inside_value);
  }
}

void pair_density_row(std::complex<double> f1, std::complex<double> g1, const ComplexColumn& f2,
                      const ComplexColumn& g2, double sign, double prefactor, std::span<double> out) {
  const detail::RowConstants rc = detail::row_constants(f1, g1, sign, prefactor);
  const std::size_t n = out.size();
  const std::size_t bulk = n - n % 4;

  const __m256d a1 = _mm256_set1_pd(rc.a1);
  const __m256d b1 = _mm256_set1_pd(rc.b1);
  const __m256d qr = _mm256_set1_pd(rc.qr);
  const __m256d qi = _mm256_set1_pd(rc.qi);
  const __m256d sign2 = _mm256_set1_pd(rc.sign2);
  const __m256d pre = _mm256_set1_pd(rc.prefactor);
  const __m256d zero = _mm256_setzero_pd();

  for (std::size_t j = 0; j < bulk; j += 4) {
    const __m256d f2r = _mm256_loadu_pd(&f2.re[j]);
    const __m256d f2i = _mm256_loadu_pd(&f2.im[j]);
    const __m256d g2r = _mm256_loadu_pd(&g2.re[j]);
    const __m256d g2i = _mm256_loadu_pd(&g2.im[j]);

    const __m256d a2 = _mm256_add_pd(_mm256_mul_pd(f2r, f2r), _mm256_mul_pd(f2i, f2i));
    const __m256d b2 = _mm256_add_pd(_mm256_mul_pd(g2r, g2r), _mm256_mul_pd(g2i, g2i));
    const __m256d sr = _mm256_add_pd(_mm256_mul_pd(g2r, f2r), _mm256_mul_pd(g2i, f2i));
    const __m256d si = _mm256_sub_pd(_mm256_mul_pd(g2r, f2i), _mm256_mul_pd(g2i, f2r));
    const __m256d interference = _mm256_sub_pd(_mm256_mul_pd(qr, sr), _mm256_mul_pd(qi, si));
    const __m256d classical = _mm256_add_pd(_mm256_mul_pd(a1, b2), _mm256_mul_pd(a2, b1));
    const __m256d p = _mm256_mul_pd(pre, _mm256_add_pd(classical, _mm256_mul_pd(sign2, interference)));
    // max_pd returns its second operand for NaN and signed zeros, like `p > 0 ? p : 0`.
    _mm256_storeu_pd(&out[j], _mm256_max_pd(p, zero));
  }
  for (std::size_t j = bulk; j < n; ++j) {
    out[j] = detail::pair_density_lane(rc, f2.re[j], f2.im[j], g2.re[j], g2.im[j]);
  }
}

VelocitySums velocity_sums(std::span<const double> vx, std::span<const double> vy, std::span<const double> vz) {
  const std::size_t n = vx.size();
  const std::size_t bulk = n - n % 4;
  __m256d v2 = _mm256_setzero_pd();
  __m256d sp = _mm256_setzero_pd();
  __m256d px = _mm256_setzero_pd();
  __m256d py = _mm256_setzero_pd();
  __m256d pz = _mm256_setzero_pd();
  for (std::size_t j = 0; j < bulk; j += 4) {
    const __m256d x = _mm256_loadu_pd(&vx[j]);
    const __m256d y = _mm256_loadu_pd(&vy[j]);
    const __m256d z = _mm256_loadu_pd(&vz[j]);
    const __m256d s =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)), _mm256_mul_pd(z, z));
    v2 = _mm256_add_pd(v2, s);
    sp = _mm256_add_pd(sp, _mm256_sqrt_pd(s));
    px = _mm256_add_pd(px, x);
    py = _mm256_add_pd(py, y);
    pz = _mm256_add_pd(pz, z);
  }
  auto reduce = [](__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return detail::reduce4(lanes);
  };
  VelocitySums r{reduce(v2), reduce(sp), reduce(px), reduce(py), reduce(pz)};
  detail::accumulate_tail(r, vx, vy, vz, bulk);
  return r;
}

}  // namespace qfluid::simd::avx2
