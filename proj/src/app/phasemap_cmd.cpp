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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qfluid/app/commands.hpp"
#include "qfluid/constants.hpp"
#include "qfluid/errors.hpp"

namespace qfluid::app {

void PhaseMapSpec::validate() const {
  auto range = [](double lo, double hi, std::size_t count, const char* field) {
    if (!(lo > 0.0) || !std::isfinite(hi) || !(hi > lo)) {
      throw InputError(field, "range must be positive and increasing");
    }
    if (count < 2) throw InputError(field, "need at least 2 grid points");
  };
  range(T_min, T_max, T_count, "T");
  range(n_min, n_max, n_count, "n");
  if (!(m > 0.0)) throw InputError("m", "must be positive");
  if (!(a > 0.0)) throw InputError("a", "must be positive for a gaslike phase map");
  ObservationWindow{t_obs, onset_multiplier}.validate();
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  const double span = std::log(hi / lo);
  for (std::size_t k = 0; k < count; ++k) {
    v[k] = lo * std::exp(span * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

double temperature_lambda_equals_x(double n, double m) {
  // h / sqrt(m k T) = n^(-1/3)
  const double h = kConstants.h;
  return h * h * std::cbrt(n * n) / (m * kConstants.k_B);
}

double temperature_bec(double n, double m) {
  // n (h / sqrt(m k T))^3 = 2.612
  const double lambda = std::cbrt(kBecDegeneracy / n);
  return kConstants.h * kConstants.h / (m * kConstants.k_B * lambda * lambda);
}

double temperature_tau_equals(double n, double m, double a, double tau) {
  // (sqrt(pi)/8)/(n sigma) / sqrt(kT/m) = tau
  const double v = mean_free_path(n, a, MfpPrefactor::Kinetic) / tau;
  return m * v * v / kConstants.k_B;
}

namespace {

struct Curve {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (n, T)
};

std::vector<Curve> boundary_curves(const PhaseMapSpec& spec) {
  const std::vector<double> ns = log_space(spec.n_min, spec.n_max, std::max<std::size_t>(64, 4 * spec.n_count));
  std::vector<Curve> curves{{"lambda_dB_equals_x", {}},
                            {"degeneracy_equals_2.612", {}},
                            {"tau_equals_t_obs", {}},
                            {"tau_equals_t_obs_over_k", {}}};
  for (double n : ns) {
    curves[0].points.emplace_back(n, temperature_lambda_equals_x(n, spec.m));
    curves[1].points.emplace_back(n, temperature_bec(n, spec.m));
    curves[2].points.emplace_back(n, temperature_tau_equals(n, spec.m, spec.a, spec.t_obs));
    curves[3].points.emplace_back(n, temperature_tau_equals(n, spec.m, spec.a, spec.t_obs / spec.onset_multiplier));
  }
  return curves;
}

const char* phase_colour(StatisticsPhase p) {
  switch (p) {
    case StatisticsPhase::Inactive: return "#d9d9d9";
    case StatisticsPhase::Onset: return "#fdd49e";
    case StatisticsPhase::Active: return "#6baed6";
    case StatisticsPhase::Classical: return "#f4f4f4";
  }
  return "#ffffff";
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct CellRecord {
  double T, n;
  StatisticsPhase phase;
};

std::string render_svg(const PhaseMapSpec& spec, const std::vector<double>& Ts, const std::vector<double>& ns,
                       const std::vector<CellRecord>& cells, const std::vector<Curve>& curves) {
  const double W = 720, H = 540, left = 80, right = 180, top = 30, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  const double lx0 = std::log10(spec.n_min), lx1 = std::log10(spec.n_max);
  const double ly0 = std::log10(spec.T_min), ly1 = std::log10(spec.T_max);
  auto X = [&](double n) { return left + pw * (std::log10(n) - lx0) / (lx1 - lx0); };
  auto Y = [&](double T) { return top + ph * (1.0 - (std::log10(T) - ly0) / (ly1 - ly0)); };
  // Tile edges at geometric midpoints, clamped to the plot range.
  auto edges = [](const std::vector<double>& v) {
    std::vector<double> e(v.size() + 1);
    e.front() = v.front();
    e.back() = v.back();
    for (std::size_t k = 1; k < v.size(); ++k) e[k] = std::sqrt(v[k - 1] * v[k]);
    return e;
  };
  const std::vector<double> Te = edges(Ts), ne = edges(ns);

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<defs><clipPath id=\"plot\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\""
    << ph << "\"/></clipPath></defs>\n";
  s << "<g clip-path=\"url(#plot)\">\n";
  for (const CellRecord& c : cells) {
    const std::size_t i = static_cast<std::size_t>(std::find(Ts.begin(), Ts.end(), c.T) - Ts.begin());
    const std::size_t j = static_cast<std::size_t>(std::find(ns.begin(), ns.end(), c.n) - ns.begin());
    const double x0 = X(ne[j]), x1 = X(ne[j + 1]), y0 = Y(Te[i + 1]), y1 = Y(Te[i]);
    s << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y0) << "\" width=\"" << fixed(x1 - x0) << "\" height=\""
      << fixed(y1 - y0) << "\" fill=\"" << phase_colour(c.phase) << "\"/>\n";
  }
  const char* colours[] = {"#238b45", "#cb181d", "#2171b5", "#6a51a3"};
  for (std::size_t k = 0; k < curves.size(); ++k) {
    s << "<polyline fill=\"none\" stroke=\"" << colours[k % 4] << "\" stroke-width=\"2\" points=\"";
    for (const auto& [n, T] : curves[k].points) s << fixed(X(n)) << ',' << fixed(Y(T)) << ' ';
    s << "\"/>\n";
  }
  s << "</g>\n";
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
    const double x = X(std::pow(10.0, d));
    s << "<line x1=\"" << fixed(x) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed(x) << "\" y2=\"" << top + ph + 5
      << "\" stroke=\"#000\"/><text x=\"" << fixed(x) << "\" y=\"" << top + ph + 20
      << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
    const double y = Y(std::pow(10.0, d));
    s << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(y) << "\" x2=\"" << left << "\" y2=\"" << fixed(y)
      << "\" stroke=\"#000\"/><text x=\"" << left - 8 << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">1e" << d
      << "</text>\n";
  }
  s << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">n (m^-3)</text>\n";
  s << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << top + ph / 2
    << ")\">T (K)</text>\n";
  double ly = top + 10;
  for (StatisticsPhase p : {StatisticsPhase::Inactive, StatisticsPhase::Onset, StatisticsPhase::Active,
                            StatisticsPhase::Classical}) {
    s << "<rect x=\"" << W - right + 15 << "\" y=\"" << ly - 10 << "\" width=\"12\" height=\"12\" fill=\""
      << phase_colour(p) << "\" stroke=\"#000\"/><text x=\"" << W - right + 32 << "\" y=\"" << ly << "\">"
      << to_string(p) << "</text>\n";
    ly += 20;
  }
  for (std::size_t k = 0; k < curves.size(); ++k) {
    s << "<line x1=\"" << W - right + 15 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - right + 27 << "\" y2=\""
      << ly - 4 << "\" stroke=\"" << colours[k % 4] << "\" stroke-width=\"2\"/><text x=\"" << W - right + 32
      << "\" y=\"" << ly << "\" font-size=\"10\">" << curves[k].name << "</text>\n";
    ly += 20;
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace

CommandOutput cmd_phasemap(const PhaseMapSpec& spec) {
  spec.validate();
  const std::vector<double> Ts = log_space(spec.T_min, spec.T_max, spec.T_count);
  const std::vector<double> ns = log_space(spec.n_min, spec.n_max, spec.n_count);
  const ObservationWindow window{spec.t_obs, spec.onset_multiplier};

  std::string csv =
      "T_K,n_per_m3,sigma_m2,ell_m,x_m,lambda_dB_m,v_th_m_per_s,tau_s,tau_x_s,tau_planck_s,degeneracy,"
      "statistics_phase,governing_time,onset_time_s\n";
  std::vector<CellRecord> cells;
  std::size_t counts[4] = {0, 0, 0, 0};
  for (double T : Ts) {
    for (double n : ns) {
      FluidState s;
      s.T = T;
      s.n = n;
      s.m = spec.m;
      s.a = spec.a;
      const ScaleReport r = full_report(s);
      const RegimeReport g = classify(s, r, window, spec.stringent);
      const std::vector<std::string> row{format_number(T),           format_number(n),
                                         format_number(r.sigma),     format_number(*r.ell),
                                         format_number(r.x),         format_number(r.lambda_dB),
                                         format_number(r.v_th),      format_number(*r.tau),
                                         format_number(r.tau_x),     format_number(r.tau_planck),
                                         format_number(r.degeneracy), std::string(to_string(g.statistics_phase)),
                                         std::string(to_string(g.governing_time)), format_number(g.onset_time)};
      for (std::size_t c = 0; c < row.size(); ++c) csv += (c ? "," : "") + row[c];
      csv += "\n";
      cells.push_back({T, n, g.statistics_phase});
      ++counts[static_cast<int>(g.statistics_phase)];
    }
  }

  const std::vector<Curve> curves = boundary_curves(spec);
  std::string bcsv = "curve,n_per_m3,T_K\n";
  for (const Curve& c : curves) {
    for (const auto& [n, T] : c.points) bcsv += c.name + "," + format_number(n) + "," + format_number(T) + "\n";
  }

  Json config;
  config["T_min"] = quantity_text(spec.T_min, units::K);
  config["T_max"] = quantity_text(spec.T_max, units::K);
  config["T_count"] = spec.T_count;
  config["n_min"] = quantity_text(spec.n_min, units::per_m3);
  config["n_max"] = quantity_text(spec.n_max, units::per_m3);
  config["n_count"] = spec.n_count;
  config["m"] = quantity_text(spec.m, units::kg);
  config["a"] = quantity_text(spec.a, units::m);
  config["t_obs"] = quantity_text(spec.t_obs, units::s);
  config["onset_multiplier"] = spec.onset_multiplier;
  config["stringent"] = spec.stringent;
  config["svg"] = spec.svg;

  Json result;
  result["cells"] = Ts.size() * ns.size();
  result["phase_counts"] = {{"inactive", counts[0]}, {"onset", counts[1]}, {"active", counts[2]}, {"classical", counts[3]}};
  result["files"] = {"phasemap_cells.csv", "phasemap_boundaries.csv"};
  if (spec.svg) result["files"].push_back("phasemap.svg");

  CommandOutput out;
  out.document = make_document(kPhasemapSchema, std::move(config), std::move(result));
  out.files.push_back({"phasemap_cells.csv", std::move(csv)});
  out.files.push_back({"phasemap_boundaries.csv", std::move(bcsv)});
  if (spec.svg) out.files.push_back({"phasemap.svg", render_svg(spec, Ts, ns, cells, curves)});

  Table t;
  t.add({"phase", "cells"});
  for (StatisticsPhase p : {StatisticsPhase::Inactive, StatisticsPhase::Onset, StatisticsPhase::Active,
                            StatisticsPhase::Classical}) {
    t.add({std::string(to_string(p)), std::to_string(counts[static_cast<int>(p)])});
  }
  out.table = t.str();
  return out;
}

}  // namespace qfluid::app
