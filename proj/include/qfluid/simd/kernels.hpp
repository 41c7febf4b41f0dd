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

// Data-parallel inner loops. Every kernel has a scalar reference in
// `scalar::` and, where the build and CPU allow it, an AVX2 variant in
// `avx2::`. The unqualified entry points dispatch at runtime.
//
// The variants perform the same IEEE operations in the same order (the
// project builds with -ffp-contract=off), so they agree bit for bit.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qfluid::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// True when the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available();

/// Best available ISA, unless the QFLUID_SIMD environment variable
/// ("scalar" or "avx2") asked for something else at startup.
Isa active_isa();

/// Overrides the dispatch target. Throws std::invalid_argument if unavailable.
void set_active_isa(Isa isa);

/// Relative coordinates (candidate minus reference), structure-of-arrays.
struct ContactBatch {
  std::span<const double> dx, dy, dz;
  std::span<const double> dvx, dvy, dvz;

  std::size_t size() const { return dx.size(); }
};

/// What to report for a lane that already lies inside the contact sphere.
enum class InsidePolicy {
  Immediate,  // t = 0 if approaching (hard-sphere overlap from roundoff)
  Never,      // +inf: only entries from outside count
};

/// Earliest t >= 0 at which |d + dv t| == radius while approaching, else +inf.
void contact_times(const ContactBatch& batch, double radius, InsidePolicy inside,
                   std::span<double> out);

struct ComplexColumn {
  std::span<const double> re, im;
};

/// One row x1 of the two-body density
///   out[j] = prefactor * (|f1|^2 |g2_j|^2 + |f2_j|^2 |g1|^2 + sign * 2 Re(f1* g1 g2_j* f2_j)),
/// with f1 = f(x1), g1 = g(x1), f2_j = f(x2_j), g2_j = g(x2_j). Negative roundoff is clamped to 0.
void pair_density_row(std::complex<double> f1, std::complex<double> g1, const ComplexColumn& f2,
                      const ComplexColumn& g2, double sign, double prefactor, std::span<double> out);

struct VelocitySums {
  double sum_v2;     // sum of |v|^2
  double sum_speed;  // sum of |v|
  double px, py, pz;
};

/// Unit-mass velocity moments. Summation uses four interleaved partial sums.
VelocitySums velocity_sums(std::span<const double> vx, std::span<const double> vy,
                           std::span<const double> vz);

namespace scalar {
void contact_times(const ContactBatch& batch, double radius, InsidePolicy inside, std::span<double> out);
void pair_density_row(std::complex<double> f1, std::complex<double> g1, const ComplexColumn& f2,
                      const ComplexColumn& g2, double sign, double prefactor, std::span<double> out);
VelocitySums velocity_sums(std::span<const double> vx, std::span<const double> vy,
                           std::span<const double> vz);
}  // namespace scalar

#if defined(QFLUID_HAVE_AVX2)
namespace avx2 {
void contact_times(const ContactBatch& batch, double radius, InsidePolicy inside, std::span<double> out);
void pair_density_row(std::complex<double> f1, std::complex<double> g1, const ComplexColumn& f2,
                      const ComplexColumn& g2, double sign, double prefactor, std::span<double> out);
VelocitySums velocity_sums(std::span<const double> vx, std::span<const double> vy,
                           std::span<const double> vz);
}  // namespace avx2
#endif

}  // namespace qfluid::simd
