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

// Globally adaptive Gauss-Kronrod (G7/K15) integration of complex-valued
// integrands, plus a nested tensor version for rectangles.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace qfluid::wavepacket {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 4000;
  /// Uniform pre-split so narrow features cannot fall between the first nodes.
  std::size_t initial_intervals = 16;
};

struct QuadratureResult {
  std::complex<double> value;
  /// Sum over intervals of |K15 - G7|.
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  std::complex<double> value;
  double error;
};

template <class F>
Segment gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = f(center);
  std::complex<double> kronrod = fc * kKronrodWeights[7];
  std::complex<double> gauss = fc * kGaussWeights[3];
  for (std::size_t k = 0; k < 7; ++k) {
    const double dx = half * kKronrodNodes[k];
    const std::complex<double> sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[k] * sum;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  using detail::Segment;
  auto by_error = [](const Segment& x, const Segment& y) { return x.error < y.error; };

  std::vector<Segment> heap;
  const std::size_t pieces = std::max<std::size_t>(1, opt.initial_intervals);
  const double step = (b - a) / static_cast<double>(pieces);
  for (std::size_t k = 0; k < pieces; ++k) {
    const double lo = a + step * static_cast<double>(k);
    const double hi = k + 1 == pieces ? b : a + step * static_cast<double>(k + 1);
    heap.push_back(detail::gk15(f, lo, hi));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  QuadratureResult r;
  r.evaluations = 15 * pieces;
  auto totals = [&] {
    std::complex<double> v{};
    double e = 0.0;
    for (const Segment& s : heap) {
      v += s.value;
      e += s.error;
    }
    r.value = v;
    r.error = e;
  };
  totals();
  while (r.error > std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value))) {
    if (heap.size() >= opt.max_intervals) {
      r.converged = false;
      return r;
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = detail::gk15(f, worst.a, mid);
    const Segment right = detail::gk15(f, mid, worst.b);
    r.evaluations += 30;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    totals();
  }
  r.converged = true;
  return r;
}

/// Integral of f(x1, x2) over [a1, b1] x [a2, b2] as an outer adaptive rule over
/// inner adaptive rules. The reported error adds the outer estimate and the
/// width-weighted worst inner estimate.
template <class F>
QuadratureResult integrate_2d(F&& f, double a1, double b1, double a2, double b2,
                              const QuadratureOptions& opt = {}) {
  QuadratureOptions inner = opt;
  inner.abs_tol = 0.1 * opt.abs_tol / (b1 - a1);
  double worst_inner = 0.0;
  std::size_t inner_evals = 0;
  bool inner_ok = true;
  auto row = [&](double x1) {
    const QuadratureResult ri = integrate([&](double x2) { return f(x1, x2); }, a2, b2, inner);
    worst_inner = std::max(worst_inner, ri.error);
    inner_evals += ri.evaluations;
    inner_ok = inner_ok && ri.converged;
    return ri.value;
  };
  QuadratureResult r = integrate(row, a1, b1, opt);
  r.error += worst_inner * (b1 - a1);
  r.evaluations = inner_evals;
  r.converged = r.converged && inner_ok;
  return r;
}

}  // namespace qfluid::wavepacket
