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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qfluid/errors.hpp"
#include "qfluid/wavepacket/wavepacket.hpp"

using namespace qfluid;
using namespace qfluid::wavepacket;
using cd = std::complex<double>;

namespace {

// Equal widths w, centres a and b, momenta kf and kg.
cd overlap_closed_form(double a, double b, double w, double kf, double kg) {
  const double delta = b - a, q = kg - kf, c = 0.5 * (a + b);
  return std::exp(-delta * delta / (8.0 * w * w)) * std::exp(-0.5 * q * q * w * w) * std::polar(1.0, q * c);
}

// Gaussian U: U0 exp(-D^2/(4w^2)) R/sqrt(R^2+2w^2) exp(-q^2/(2A)), A = 1/(2w^2) + 1/R^2.
double exchange_closed_form(double a, double b, double w, double kf, double kg, double U0, double R) {
  const double delta = b - a, q = kg - kf;
  const double A = 1.0 / (2.0 * w * w) + 1.0 / (R * R);
  return U0 * std::exp(-delta * delta / (4.0 * w * w)) * R / std::sqrt(R * R + 2.0 * w * w) * std::exp(-q * q / (2.0 * A));
}

// Dense trapezoid on an n x n grid over [lo, hi]^2.
cd exchange_trapezoid(const GaussianPacket& f, const GaussianPacket& g, double U0, double R, double lo, double hi,
                      std::size_t n) {
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<cd> fg(n), fgc(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = lo + h * static_cast<double>(k);
    fg[k] = f(x) * std::conj(g(x));
    fgc[k] = std::conj(f(x)) * g(x);
  }
  std::vector<double> kernel(2 * n - 1);
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    const double r = h * (static_cast<double>(k) - static_cast<double>(n - 1));
    kernel[k] = U0 * std::exp(-r * r / (2.0 * R * R));
  }
  cd sum{};
  for (std::size_t i = 0; i < n; ++i) {
    cd row{};
    for (std::size_t j = 0; j < n; ++j) row += kernel[i + n - 1 - j] * fgc[j];
    sum += fg[i] * row;
  }
  return sum * h * h;
}

PacketPair pair_of(double delta, double kw, Symmetry sym, Normalization norm = Normalization::Raw) {
  return {{0.0, 1.0, kw}, {delta, 1.0, 0.0}, sym, norm};
}

}  // namespace

TEST_CASE("packets are unit-normalized") {
  for (double w : {0.1, 1.0, 7.5}) {
    for (double k : {0.0, 3.0}) {
      const GaussianPacket p{1.5, w, k};
      const auto n = overlap(p, p);
      CHECK(std::abs(n.value - 1.0) < 1e-10);
      CHECK(n.converged);
    }
  }
}

TEST_CASE("overlap of identical and distant packets") {
  const GaussianPacket f{0.0, 1.0, 0.0};
  CHECK(std::abs(overlap(f, f).value - 1.0) < 1e-12);
  CHECK(std::abs(overlap(f, {20.0, 1.0, 0.0}).value) < 1e-20);
}

TEST_CASE("overlap matches the closed form") {
  for (double delta : {0.0, 0.5, 2.0, 5.0}) {
    for (double w : {0.3, 1.0, 2.0}) {
      for (double kf : {0.0, 0.7, -1.5}) {
        const GaussianPacket f{-0.4, w, kf}, g{-0.4 + delta, w, 0.25};
        const auto S = overlap(f, g);
        CHECK(std::abs(S.value - overlap_closed_form(-0.4, -0.4 + delta, w, kf, 0.25)) < 1e-10);
        CHECK(std::abs(S.value) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("raw norm is 1 +- |S|^2 across separations and momenta") {
  for (double delta : {0.5, 1.0, 2.0, 4.0}) {
    for (double kw : {0.0, 0.5, 1.0}) {
      const double s2 = std::norm(overlap_closed_form(0.0, delta, 1.0, kw, 0.0));
      for (Symmetry sym : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
        const double expected = 1.0 + interference_sign(sym) * s2;
        const RealEstimate total = total_probability(pair_of(delta, kw, sym));
        CHECK(total.converged);
        CHECK(std::abs(total.value - expected) / expected < 1e-8);
      }
    }
  }
}

TEST_CASE("interference weight") {
  CHECK(interference_weight(pair_of(0.0, 0.0, Symmetry::Symmetric)).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(interference_weight(pair_of(40.0, 0.0, Symmetry::Symmetric)).value) < 1e-12);
  const double e = std::exp(-4.0 / 4.0);
  CHECK(interference_weight(pair_of(2.0, 0.0, Symmetry::Symmetric)).value == doctest::Approx(e).epsilon(1e-9));
  CHECK(interference_weight(pair_of(2.0, 0.0, Symmetry::Antisymmetric)).value == doctest::Approx(-e).epsilon(1e-9));
  CHECK(interference_weight(pair_of(2.0, 0.0, Symmetry::Boltzmann)).value == 0.0);
}

TEST_CASE("renormalized and Boltzmann densities integrate to one") {
  for (Symmetry sym : {Symmetry::Symmetric, Symmetry::Antisymmetric, Symmetry::Boltzmann}) {
    const RealEstimate t = total_probability(pair_of(1.0, 0.5, sym, Normalization::Renormalized));
    CHECK(t.value == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(total_probability(pair_of(1.0, 0.5, Symmetry::Boltzmann)).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(PairDensity(pair_of(0.0, 0.0, Symmetry::Antisymmetric, Normalization::Renormalized)), InputError);
}

TEST_CASE("density is non-negative and has a Pauli node") {
  for (Symmetry sym : {Symmetry::Symmetric, Symmetry::Antisymmetric, Symmetry::Boltzmann}) {
    for (Normalization norm : {Normalization::Raw, Normalization::Renormalized}) {
      const DensityGrid grid = density_grid(pair_of(1.3, 0.8, sym, norm), 121);
      for (double p : grid.values) CHECK(p >= 0.0);
    }
  }
  const PairDensity anti(pair_of(1.3, 0.8, Symmetry::Antisymmetric));
  double off_max = 0.0, diag_max = 0.0;
  for (int i = -80; i <= 80; ++i) {
    const double x1 = 0.05 * i;
    diag_max = std::max(diag_max, anti(x1, x1));
    for (int j = -80; j <= 80; ++j) off_max = std::max(off_max, anti(x1, 0.05 * j));
  }
  CHECK(off_max > 0.0);
  CHECK(diag_max <= 1e-12 * off_max);
}

TEST_CASE("grid rows agree with pointwise evaluation") {
  const PacketPair pair = pair_of(1.0, 0.3, Symmetry::Symmetric);
  const PairDensity density(pair);
  const DensityGrid grid = density_grid(pair, 33);
  for (std::size_t i = 0; i < 33; ++i) {
    for (std::size_t j = 0; j < 33; ++j) {
      CHECK(grid.values[i * 33 + j] == doctest::Approx(density(grid.x[i], grid.x[j])).epsilon(1e-13).scale(1e-14));
    }
  }
  CHECK_THROWS_AS(density_grid(pair, 1), InputError);
}

TEST_CASE("distant packets give the classical density") {
  const PacketPair q = pair_of(30.0, 0.0, Symmetry::Antisymmetric);
  const PacketPair c = pair_of(30.0, 0.0, Symmetry::Boltzmann);
  const PairDensity pq(q), pc(c);
  for (double x1 : {-2.0, 0.0, 1.0, 15.0, 30.0}) {
    for (double x2 : {-1.0, 0.0, 15.0, 29.0, 31.0}) CHECK(std::abs(pq(x1, x2) - pc(x1, x2)) < 1e-12);
  }
}

TEST_CASE("exchange element, Gaussian interaction, closed form") {
  for (double delta : {0.0, 1.0, 3.0}) {
    for (double R : {0.2, 1.0, 4.0}) {
      for (double kf : {0.0, 1.2}) {
        const GaussianPacket f{0.0, 1.0, kf}, g{delta, 1.0, 0.0};
        const auto J = exchange_matrix_element(f, g, InteractionModel::gaussian(2.5, R));
        const double expected = exchange_closed_form(0.0, delta, 1.0, kf, 0.0, 2.5, R);
        CHECK(J.converged);
        CHECK(std::abs(J.value - expected) < 1e-8 * std::abs(expected));
      }
    }
  }
}

TEST_CASE("closed form agrees with a 2048^2 trapezoid grid") {
  const GaussianPacket f{0.0, 1.0, 0.4}, g{1.5, 1.0, -0.3};
  const Interval w = integration_window(f, g);
  const cd trap = exchange_trapezoid(f, g, 1.0, 0.7, w.lo, w.hi, 2048);
  const double closed = exchange_closed_form(0.0, 1.5, 1.0, 0.4, -0.3, 1.0, 0.7);
  CHECK(std::abs(trap - closed) < 1e-10 * std::abs(closed));
}

TEST_CASE("exchange element, unequal widths, against the trapezoid grid") {
  const GaussianPacket f{0.0, 0.8, 0.5}, g{1.0, 1.4, -0.2};
  const InteractionModel U = InteractionModel::gaussian(1.0, 0.9);
  const Interval w = integration_window(f, g);
  const cd trap = exchange_trapezoid(f, g, 1.0, 0.9, w.lo, w.hi, 2048);
  const auto J = exchange_matrix_element(f, g, U);
  CHECK(std::abs(J.value - trap) < 1e-8 * std::abs(trap));
}

TEST_CASE("exchange element, contact interaction") {
  const double w = 0.7, delta = 1.1;
  const auto J = exchange_matrix_element({0.0, w, 0.3}, {delta, w, 0.0}, InteractionModel::contact(3.0));
  const double expected = 3.0 * std::exp(-delta * delta / (4.0 * w * w)) / (2.0 * std::sqrt(std::numbers::pi) * w);
  CHECK(std::abs(J.value - expected) < 1e-10 * expected);
}

TEST_CASE("exchange element edge cases") {
  const GaussianPacket f{0.0, 1.0, 0.0};
  CHECK(exchange_matrix_element(f, {1.0, 1.0, 0.0}, InteractionModel::gaussian(0.0, 1.0)).value == cd(0.0));
  CHECK(std::abs(exchange_matrix_element(f, {40.0, 1.0, 0.0}, InteractionModel::gaussian(5.0, 1.0)).value) < 5e-15);
  CHECK_THROWS_AS(exchange_matrix_element(f, f, InteractionModel::gaussian(1.0, 0.0)), InputError);
  CHECK_THROWS_AS(exchange_matrix_element(f, {0.0, -1.0, 0.0}, InteractionModel::contact(1.0)), InputError);
}

TEST_CASE("rate scales with the square of the interaction") {
  const GaussianPacket f{0.0, 1.0, 0.2}, g{0.8, 1.0, 0.0};
  const auto J1 = exchange_matrix_element(f, g, InteractionModel::gaussian(1.7, 0.6));
  CHECK(transition_rate(J1.value) == std::norm(J1.value));
  CHECK(transition_rate(cd(0.0)) == 0.0);
  CHECK(transition_rate(J1.value, 2.0) == 2.0 * std::norm(J1.value));
  for (double c : {2.0, 0.5, -4.0}) {
    const auto Jc = exchange_matrix_element(f, g, InteractionModel::gaussian(c * 1.7, 0.6));
    CHECK(transition_rate(Jc.value) == c * c * transition_rate(J1.value));
  }
  for (double c : {3.0, 0.1}) {
    const auto Jc = exchange_matrix_element(f, g, InteractionModel::gaussian(c * 1.7, 0.6));
    CHECK(transition_rate(Jc.value) == doctest::Approx(c * c * transition_rate(J1.value)).epsilon(1e-15));
  }
}

TEST_CASE("tightening the tolerance stays within the reported error") {
  const PacketPair pair = pair_of(1.0, 0.5, Symmetry::Symmetric);
  Options loose;
  loose.quadrature.abs_tol = 1e-6;
  loose.quadrature.rel_tol = 1e-6;
  Options tight = loose;
  tight.quadrature.abs_tol *= 0.5;
  tight.quadrature.rel_tol *= 0.5;
  const RealEstimate a = total_probability(pair, loose), b = total_probability(pair, tight);
  CHECK(std::abs(a.value - b.value) < a.error);
  const auto Sa = overlap(pair.f, pair.g, loose), Sb = overlap(pair.f, pair.g, tight);
  CHECK(std::abs(Sa.value - Sb.value) <= Sa.error);
}

TEST_CASE("quadrature reports non-convergence") {
  QuadratureOptions opt;
  opt.max_intervals = 20;
  const auto r = integrate([](double x) { return cd(std::sin(1e4 * x)); }, 0.0, 10.0, opt);
  CHECK_FALSE(r.converged);
  CHECK(r.error > 0.0);
}

TEST_CASE("names round-trip") {
  for (Symmetry s : {Symmetry::Symmetric, Symmetry::Antisymmetric, Symmetry::Boltzmann}) {
    CHECK(symmetry_from_string(to_string(s)) == s);
  }
  CHECK(normalization_from_string(to_string(Normalization::Renormalized)) == Normalization::Renormalized);
  CHECK_THROWS_AS(symmetry_from_string("sideways"), InputError);
}
