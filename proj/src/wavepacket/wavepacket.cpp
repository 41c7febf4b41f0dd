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

#include "qfluid/wavepacket/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qfluid/errors.hpp"
#include "qfluid/simd/kernels.hpp"

namespace qfluid::wavepacket {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::complex<double> GaussianPacket::operator()(double x) const {
  const double norm = std::pow(2.0 * kPi * width * width, -0.25);
  const double u = x - center;
  return norm * std::exp(-u * u / (4.0 * width * width)) * std::polar(1.0, k0 * x);
}

void GaussianPacket::validate(std::string_view name) const {
  const std::string n(name);
  if (!std::isfinite(center)) throw InputError(n + ".center", "must be finite");
  if (!(width > 0.0) || !std::isfinite(width)) throw InputError(n + ".width", "must be positive");
  if (!std::isfinite(k0)) throw InputError(n + ".k0", "must be finite");
}

std::string_view to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Antisymmetric: return "antisymmetric";
    case Symmetry::Boltzmann: return "boltzmann";
  }
  return "?";
}

std::string_view to_string(Normalization n) {
  return n == Normalization::Raw ? "raw" : "renormalized";
}

Symmetry symmetry_from_string(std::string_view s) {
  if (s == "symmetric" || s == "boson") return Symmetry::Symmetric;
  if (s == "antisymmetric" || s == "fermion") return Symmetry::Antisymmetric;
  if (s == "boltzmann" || s == "classical") return Symmetry::Boltzmann;
  throw InputError("symmetry", "expected symmetric, antisymmetric or boltzmann, got '" + std::string(s) + "'");
}

Normalization normalization_from_string(std::string_view s) {
  if (s == "raw") return Normalization::Raw;
  if (s == "renormalized") return Normalization::Renormalized;
  throw InputError("normalization", "expected raw or renormalized, got '" + std::string(s) + "'");
}

double InteractionModel::operator()(double r) const {
  return U0 * std::exp(-r * r / (2.0 * range * range));
}

void InteractionModel::validate() const {
  if (!std::isfinite(U0)) throw InputError("U0", "must be finite");
  if (kind == Kind::Gaussian && (!(range > 0.0) || !std::isfinite(range))) {
    throw InputError("range", "must be positive for the Gaussian interaction");
  }
}

Interval integration_window(const GaussianPacket& f, const GaussianPacket& g, double truncation_widths) {
  const double pad = truncation_widths * std::max(f.width, g.width);
  return {std::min(f.center, g.center) - pad, std::max(f.center, g.center) + pad};
}

ComplexEstimate overlap(const GaussianPacket& f, const GaussianPacket& g, const Options& opt) {
  f.validate("f");
  g.validate("g");
  const Interval w = integration_window(f, g, opt.truncation_widths);
  const QuadratureResult r =
      integrate([&](double x) { return std::conj(f(x)) * g(x); }, w.lo, w.hi, opt.quadrature);
  return {r.value, r.error, r.converged};
}

double interference_sign(Symmetry s) {
  switch (s) {
    case Symmetry::Symmetric: return 1.0;
    case Symmetry::Antisymmetric: return -1.0;
    case Symmetry::Boltzmann: return 0.0;
  }
  return 0.0;
}

PairDensity::PairDensity(const PacketPair& pair, const Options& opt)
    : pair_(pair), overlap_(wavepacket::overlap(pair.f, pair.g, opt)), prefactor_(0.5), sign_(interference_sign(pair.symmetry)) {
  if (pair_.normalization == Normalization::Renormalized) {
    const double norm = 1.0 + sign_ * std::norm(overlap_.value);
    if (!(norm > 1e-14)) {
      throw InputError("normalization", "the antisymmetric state of identical packets vanishes and cannot be renormalized");
    }
    prefactor_ = 0.5 / norm;
  }
}

double PairDensity::operator()(double x1, double x2) const {
  const std::complex<double> f1 = pair_.f(x1), g1 = pair_.g(x1);
  const std::complex<double> f2 = pair_.f(x2), g2 = pair_.g(x2);
  const double classical = std::norm(f1 * g2) + std::norm(f2 * g1);
  const double interference = 2.0 * std::real(std::conj(f1) * g1 * std::conj(g2) * f2);
  const double p = prefactor_ * (classical + sign_ * interference);
  return p > 0.0 ? p : 0.0;
}

void PairDensity::row(double x1, std::span<const double> xs, std::span<double> out) const {
  std::vector<double> fr(xs.size()), fi(xs.size()), gr(xs.size()), gi(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto f = pair_.f(xs[j]);
    const auto g = pair_.g(xs[j]);
    fr[j] = f.real(), fi[j] = f.imag(), gr[j] = g.real(), gi[j] = g.imag();
  }
  simd::pair_density_row(pair_.f(x1), pair_.g(x1), {fr, fi}, {gr, gi}, sign_, prefactor_, out);
}

double probability_density(const PacketPair& pair, double x1, double x2) {
  return PairDensity(pair)(x1, x2);
}

RealEstimate total_probability(const PacketPair& pair, const Options& opt) {
  const PairDensity density(pair, opt);
  const Interval w = integration_window(pair.f, pair.g, opt.truncation_widths);
  const QuadratureResult r = integrate_2d([&](double x1, double x2) { return std::complex<double>(density(x1, x2)); },
                                          w.lo, w.hi, w.lo, w.hi, opt.quadrature);
  return {r.value.real(), r.error, r.converged};
}

RealEstimate interference_weight(const PacketPair& pair, const Options& opt) {
  const PairDensity density(pair, opt);
  const double sign = interference_sign(pair.symmetry);
  if (sign == 0.0) return {0.0, 0.0, true};
  const Interval w = integration_window(pair.f, pair.g, opt.truncation_widths);
  const double scale = density.prefactor() * sign * 2.0;
  const QuadratureResult r = integrate_2d(
      [&](double x1, double x2) {
        return std::complex<double>(
            scale * std::real(std::conj(pair.f(x1)) * pair.g(x1) * std::conj(pair.g(x2)) * pair.f(x2)));
      },
      w.lo, w.hi, w.lo, w.hi, opt.quadrature);
  return {r.value.real(), r.error, r.converged};
}

ComplexEstimate exchange_matrix_element(const GaussianPacket& f, const GaussianPacket& g, const InteractionModel& U,
                                        const Options& opt) {
  f.validate("f");
  g.validate("g");
  U.validate();
  const Interval w = integration_window(f, g, opt.truncation_widths);
  // The strength multiplies a U0-independent integral, so refinement decisions
  // and hence J are exactly linear in U0 up to the final rounding.
  QuadratureResult r;
  if (U.kind == InteractionModel::Kind::Contact) {
    r = integrate([&](double x) { return std::complex<double>(std::norm(f(x)) * std::norm(g(x))); }, w.lo, w.hi,
                  opt.quadrature);
  } else {
    const double inv = 1.0 / (2.0 * U.range * U.range);
    r = integrate_2d(
        [&](double x1, double x2) {
          const double r12 = x1 - x2;
          return std::exp(-r12 * r12 * inv) * f(x1) * std::conj(f(x2)) * g(x2) * std::conj(g(x1));
        },
        w.lo, w.hi, w.lo, w.hi, opt.quadrature);
  }
  return {U.U0 * r.value, std::abs(U.U0) * r.error, r.converged};
}

double transition_rate(std::complex<double> J, double constant) { return constant * std::norm(J); }

DensityGrid density_grid(const PacketPair& pair, std::size_t points, const Options& opt) {
  if (points < 2) throw InputError("grid", "need at least 2 points per axis");
  const PairDensity density(pair, opt);
  const Interval w = integration_window(pair.f, pair.g, opt.truncation_widths);
  DensityGrid grid;
  grid.x.resize(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid.x[k] = w.lo + (w.hi - w.lo) * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  grid.values.resize(points * points);
  for (std::size_t i = 0; i < points; ++i) {
    density.row(grid.x[i], grid.x, std::span<double>(grid.values).subspan(i * points, points));
  }
  return grid;
}

}  // namespace qfluid::wavepacket
