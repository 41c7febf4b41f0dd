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

// Two-particle wave-packet numerics in one dimension (dimensionless model units).
//
// Width convention: a packet of width w is
//
//     phi(x) = (2 pi w^2)^(-1/4) exp(-(x - c)^2 / (4 w^2)) exp(i k0 x),
//
// so |phi|^2 is a normal density with standard deviation w. Two packets with
// equal widths, k0 = 0 and centres Delta apart overlap as S = exp(-Delta^2 / (8 w^2)).
//
// The Gaussian interaction is U(r) = U0 exp(-r^2 / (2 R^2)); the contact
// interaction is U0 delta(r).

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "qfluid/wavepacket/quadrature.hpp"

namespace qfluid::wavepacket {

struct GaussianPacket {
  double center = 0.0;
  double width = 1.0;
  double k0 = 0.0;

  std::complex<double> operator()(double x) const;
  void validate(std::string_view name) const;
};

enum class Symmetry { Symmetric, Antisymmetric, Boltzmann };
/// Raw keeps the bare 1/sqrt(2) prefactor, so the norm is 1 +- |S|^2.
enum class Normalization { Raw, Renormalized };

std::string_view to_string(Symmetry s);
std::string_view to_string(Normalization n);
Symmetry symmetry_from_string(std::string_view s);
Normalization normalization_from_string(std::string_view s);

struct PacketPair {
  GaussianPacket f;
  GaussianPacket g;
  Symmetry symmetry = Symmetry::Symmetric;
  Normalization normalization = Normalization::Raw;
};

struct InteractionModel {
  enum class Kind { Gaussian, Contact };
  Kind kind = Kind::Gaussian;
  double U0 = 0.0;
  double range = 1.0;

  static InteractionModel gaussian(double U0, double range) { return {Kind::Gaussian, U0, range}; }
  static InteractionModel contact(double U0) { return {Kind::Contact, U0, 0.0}; }

  /// U(r) for the Gaussian kind.
  double operator()(double r) const;
  void validate() const;
};

struct Interval {
  double lo, hi;
};

struct Options {
  QuadratureOptions quadrature{};
  /// Integration window: packet centres padded by this many of the larger width.
  double truncation_widths = 12.0;
};

/// Window covering both packets, padded by `truncation_widths` widths.
Interval integration_window(const GaussianPacket& f, const GaussianPacket& g, double truncation_widths = 12.0);

struct ComplexEstimate {
  std::complex<double> value;
  double error = 0.0;
  bool converged = false;
};

struct RealEstimate {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

/// S = integral f*(x) g(x) dx.
ComplexEstimate overlap(const GaussianPacket& f, const GaussianPacket& g, const Options& opt = {});

/// +1 symmetric, -1 antisymmetric, 0 Boltzmann.
double interference_sign(Symmetry s);

/// Evaluates the two-body density of a packet pair. Construction computes the
/// overlap once (needed by the renormalized mode).
class PairDensity {
 public:
  explicit PairDensity(const PacketPair& pair, const Options& opt = {});

  /// 1/2 {|f1 g2|^2 + |f2 g1|^2 +- [f1* g1 g2* f2 + c.c.]}, divided by 1 +- |S|^2 when renormalized.
  double operator()(double x1, double x2) const;
  /// Row x1 over the points xs (vectorized kernel).
  void row(double x1, std::span<const double> xs, std::span<double> out) const;

  const PacketPair& pair() const { return pair_; }
  const ComplexEstimate& overlap() const { return overlap_; }
  /// 0.5 for the raw prefactor, 0.5 / (1 +- |S|^2) renormalized.
  double prefactor() const { return prefactor_; }

 private:
  PacketPair pair_;
  ComplexEstimate overlap_;
  double prefactor_;
  double sign_;
};

double probability_density(const PacketPair& pair, double x1, double x2);

/// Double integral of the density (1 +- |S|^2 for Raw).
RealEstimate total_probability(const PacketPair& pair, const Options& opt = {});

/// Double integral of the interference terms alone: +-|S|^2 (Raw), 0 for Boltzmann.
RealEstimate interference_weight(const PacketPair& pair, const Options& opt = {});

/// J = integral U(x1 - x2) f(x1) f*(x2) g(x2) g*(x1) dx1 dx2.
ComplexEstimate exchange_matrix_element(const GaussianPacket& f, const GaussianPacket& g,
                                        const InteractionModel& U, const Options& opt = {});

/// Golden-rule rate: constant * |J|^2.
double transition_rate(std::complex<double> J, double constant = 1.0);

struct DensityGrid {
  std::vector<double> x;
  /// Row-major, values[i * x.size() + j] = P(x[i], x[j]).
  std::vector<double> values;
};

DensityGrid density_grid(const PacketPair& pair, std::size_t points, const Options& opt = {});

}  // namespace qfluid::wavepacket
