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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qfluid/simd/kernels.hpp"

namespace qfluid::simd {

namespace {

bool cpu_has_avx2() {
#if defined(QFLUID_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  const bool have = cpu_has_avx2();
  if (const char* env = std::getenv("QFLUID_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && have) return Isa::Avx2;
  }
  return have ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool avx2_available() {
  static const bool have = cpu_has_avx2();
  return have;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) throw std::invalid_argument("AVX2 kernels unavailable on this build/CPU");
  current().store(isa, std::memory_order_relaxed);
}

void contact_times(const ContactBatch& batch, double radius, InsidePolicy inside, std::span<double> out) {
#if defined(QFLUID_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::contact_times(batch, radius, inside, out);
#endif
  scalar::contact_times(batch, radius, inside, out);
}

void pair_density_row(std::complex<double> f1, std::complex<double> g1, const ComplexColumn& f2,
                      const ComplexColumn& g2, double sign, double prefactor, std::span<double> out) {
#if defined(QFLUID_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::pair_density_row(f1, g1, f2, g2, sign, prefactor, out);
#endif
  scalar::pair_density_row(f1, g1, f2, g2, sign, prefactor, out);
}

VelocitySums velocity_sums(std::span<const double> vx, std::span<const double> vy, std::span<const double> vz) {
#if defined(QFLUID_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::velocity_sums(vx, vy, vz);
#endif
  return scalar::velocity_sums(vx, vy, vz);
}

}  // namespace qfluid::simd
