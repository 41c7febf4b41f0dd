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

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "qfluid/simd/kernels.hpp"

using namespace qfluid::simd;

namespace {

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

struct Batch {
  std::vector<double> dx, dy, dz, dvx, dvy, dvz;
  ContactBatch view() const { return {dx, dy, dz, dvx, dvy, dvz}; }
};

Batch random_batch(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), vel(-1.0, 1.0);
  Batch b;
  for (std::size_t k = 0; k < n; ++k) {
    b.dx.push_back(pos(rng));
    b.dy.push_back(pos(rng));
    b.dz.push_back(pos(rng));
    b.dvx.push_back(vel(rng));
    b.dvy.push_back(vel(rng));
    b.dvz.push_back(vel(rng));
  }
  // Edge lanes: touching, inside, zero velocity, grazing.
  b.dx.push_back(1.0), b.dy.push_back(0.0), b.dz.push_back(0.0);
  b.dvx.push_back(-1.0), b.dvy.push_back(0.0), b.dvz.push_back(0.0);
  b.dx.push_back(0.5), b.dy.push_back(0.0), b.dz.push_back(0.0);
  b.dvx.push_back(-1.0), b.dvy.push_back(0.0), b.dvz.push_back(0.0);
  b.dx.push_back(2.0), b.dy.push_back(0.0), b.dz.push_back(0.0);
  b.dvx.push_back(0.0), b.dvy.push_back(0.0), b.dvz.push_back(0.0);
  b.dx.push_back(2.0), b.dy.push_back(1.0), b.dz.push_back(0.0);
  b.dvx.push_back(-1.0), b.dvy.push_back(0.0), b.dvz.push_back(0.0);
  return b;
}

}  // namespace

TEST_CASE("scalar contact time closed forms") {
  // Head-on: gap 2 - 1 closes at unit speed.
  std::vector<double> dx{2.0}, zero{0.0}, dvx{-1.0};
  std::vector<double> out(1);
  scalar::contact_times({dx, zero, zero, dvx, zero, zero}, 1.0, InsidePolicy::Never, out);
  CHECK(out[0] == 1.0);
  // Receding.
  dvx[0] = 1.0;
  scalar::contact_times({dx, zero, zero, dvx, zero, zero}, 1.0, InsidePolicy::Never, out);
  CHECK(std::isinf(out[0]));
  // Inside and approaching.
  dx[0] = 0.5, dvx[0] = -1.0;
  scalar::contact_times({dx, zero, zero, dvx, zero, zero}, 1.0, InsidePolicy::Immediate, out);
  CHECK(out[0] == 0.0);
  scalar::contact_times({dx, zero, zero, dvx, zero, zero}, 1.0, InsidePolicy::Never, out);
  CHECK(std::isinf(out[0]));
}

TEST_CASE("velocity sums") {
  std::vector<double> vx{3.0, 0.0, 1.0, 0.0, 2.0}, vy{4.0, 0.0, 0.0, 0.0, 0.0}, vz{0.0, 1.0, 0.0, 0.0, 0.0};
  const VelocitySums s = scalar::velocity_sums(vx, vy, vz);
  CHECK(s.sum_v2 == 25.0 + 1.0 + 1.0 + 4.0);
  CHECK(s.sum_speed == 5.0 + 1.0 + 1.0 + 2.0);
  CHECK(s.px == 6.0);
  CHECK(s.py == 4.0);
  CHECK(s.pz == 1.0);
}

TEST_CASE("dispatch honours overrides") {
  const Isa before = active_isa();
  set_active_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  if (avx2_available()) {
    set_active_isa(Isa::Avx2);
    CHECK(active_isa() == Isa::Avx2);
  } else {
    CHECK_THROWS(set_active_isa(Isa::Avx2));
  }
  set_active_isa(before);
}

#if defined(QFLUID_HAVE_AVX2)

TEST_CASE("AVX2 contact times are bit-identical to scalar") {
  if (!avx2_available()) return;
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
    const Batch b = random_batch(n, 42 + n);
    for (InsidePolicy policy : {InsidePolicy::Immediate, InsidePolicy::Never}) {
      std::vector<double> ref(b.dx.size()), vec(b.dx.size());
      scalar::contact_times(b.view(), 1.0, policy, ref);
      avx2::contact_times(b.view(), 1.0, policy, vec);
      for (std::size_t k = 0; k < ref.size(); ++k) CHECK(bits(ref[k]) == bits(vec[k]));
    }
  }
}

TEST_CASE("AVX2 pair density rows are bit-identical to scalar") {
  if (!avx2_available()) return;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {1u, 4u, 6u, 513u}) {
    std::vector<double> fr(n), fi(n), gr(n), gi(n);
    for (std::size_t k = 0; k < n; ++k) fr[k] = u(rng), fi[k] = u(rng), gr[k] = u(rng), gi[k] = u(rng);
    const std::complex<double> f1(u(rng), u(rng)), g1(u(rng), u(rng));
    for (double sign : {1.0, -1.0, 0.0}) {
      std::vector<double> ref(n), vec(n);
      scalar::pair_density_row(f1, g1, {fr, fi}, {gr, gi}, sign, 0.5, ref);
      avx2::pair_density_row(f1, g1, {fr, fi}, {gr, gi}, sign, 0.5, vec);
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(bits(ref[k]) == bits(vec[k]));
        CHECK(ref[k] >= 0.0);
      }
    }
  }
}

TEST_CASE("AVX2 velocity sums are bit-identical to scalar") {
  if (!avx2_available()) return;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (std::size_t n : {0u, 1u, 2u, 7u, 8u, 500u, 1001u}) {
    std::vector<double> vx(n), vy(n), vz(n);
    for (std::size_t k = 0; k < n; ++k) vx[k] = g(rng), vy[k] = g(rng), vz[k] = g(rng);
    const VelocitySums a = scalar::velocity_sums(vx, vy, vz);
    const VelocitySums b = avx2::velocity_sums(vx, vy, vz);
    CHECK(bits(a.sum_v2) == bits(b.sum_v2));
    CHECK(bits(a.sum_speed) == bits(b.sum_speed));
    CHECK(bits(a.px) == bits(b.px));
    CHECK(bits(a.py) == bits(b.py));
    CHECK(bits(a.pz) == bits(b.pz));
  }
}

#endif
