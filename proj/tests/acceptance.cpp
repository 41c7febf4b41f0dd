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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "qfluid/app/commands.hpp"
#include "qfluid/constants.hpp"
#include "qfluid/kinsim/simulator.hpp"
#include "qfluid/scales.hpp"
#include "qfluid/wavepacket/wavepacket.hpp"
#include "support/naive_oracle.hpp"

using namespace qfluid;
using app::Json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [out of bounds]");
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

FluidState rb87() {
  app::StateText t;
  t.T = "170nK";
  t.n = "2.6e12/cm3";
  t.m = "87u";
  t.a = "1e-6cm";
  return app::parse_state(t);
}

kinsim::SimConfig hard_sphere_gas(std::size_t N, double packing, double tau_multiple, std::uint64_t seed) {
  kinsim::SimConfig c;
  c.N = N;
  c.d_hs = 1e-8;
  c.T = 170e-9;
  c.m = 87.0 * kConstants.u;
  c.seed = seed;
  c.box = kinsim::box_for_packing(N, c.d_hs, packing);
  const double tau = kinsim::hard_sphere_theory(c).tau;
  c.t_end = tau_multiple * tau;
  c.warmup = 0.1 * c.t_end;
  return c;
}

Outcome rb87_scales() {
  Outcome o;
  const Json r = app::cmd_scales(rb87(), {}, app::UnitSystem::CGS).document["result"];
  const double ell = r["ell"]["value"].get<double>();
  const double x = r["x"]["value"].get<double>();
  const double tau = r["tau"]["value"].get<double>();
  const double tau_h = r["tau_planck"]["value"].get<double>();
  o.require(rel(ell, 3.4e-3) <= 0.03, "ell " + num(ell) + " cm vs 3.4e-3");
  o.require(rel(x, 7.3e-5) <= 0.02, "x " + num(x) + " cm vs 7.3e-5");
  o.require(rel(tau, 8e-3) <= 0.10, "tau " + num(tau) + " s vs 8e-3");
  o.require(rel(tau_h, 0.3e-3) <= 0.15, "tau_x (h/k_BT form) " + num(tau_h) + " s vs 3e-4");
  o.detail += "; x/v " + num(r["tau_x"]["value"].get<double>()) + " s (informational)";
  return o;
}

Outcome planck_identity() {
  Outcome o;
  double worst = 0.0;
  const auto Ts = app::log_space(1e-9, 1e3, 10);
  const auto ms = app::log_space(1.0 * kConstants.u, 1000.0 * kConstants.u, 10);
  for (double T : Ts) {
    for (double m : ms) {
      const double via_lambda = tau_stringent(de_broglie(T, m), thermal_velocity(T, m));
      worst = std::max(worst, rel(via_lambda, tau_planckian(T)));
    }
  }
  o.require(worst < 1e-12, "100 (T, m) points, max relative error " + num(worst));
  return o;
}

Outcome simulator_fidelity() {
  Outcome o;
  const kinsim::SimResult r = kinsim::run(hard_sphere_gas(500, 1e-3, 100.0, 1));
  o.require(std::abs(r.mfp_ratio - 1.0) <= 0.05, "MFP / (1/(sqrt2 n pi d^2)) " + num(r.mfp_ratio));
  o.require(std::abs(r.collision_time_vs_mfp - 1.0) <= 0.05, "collision time / (MFP/<v>) " + num(r.collision_time_vs_mfp));
  o.require(std::abs(r.collision_time_ratio - 1.0) <= 0.05, "collision time / theory " + num(r.collision_time_ratio));
  o.require(r.energy_drift < 1e-9, "energy drift " + num(r.energy_drift));
  o.require(r.momentum_drift < 1e-9, "momentum drift " + num(r.momentum_drift));
  o.detail += "; " + std::to_string(r.collisions) + " collisions";
  return o;
}

Outcome exchange_sweep() {
  Outcome o;
  app::SweepRequest req;
  req.base = hard_sphere_gas(500, 1e-3, 60.0, 2);
  const double n0 = req.base.number_density();
  req.densities = {n0, 2.0 * n0, 4.0 * n0, 8.0 * n0};
  const Json r = app::cmd_sweep(req).document["result"];
  double min_ratio = 1e300;
  for (const Json& run : r["runs"]) min_ratio = std::min(min_ratio, run["result"]["ratios"]["waiting_mean_over_tau"].get<double>());
  const Json& fit = r["waiting_vs_tau_fit"];
  o.require(r["waiting_mean_at_least_tau_in_every_run"].get<bool>(), "min waiting/tau " + num(min_ratio));
  o.require(fit["slope"].get<double>() > 0.0, "slope " + num(fit["slope"].get<double>()));
  o.require(fit["r2"].get<double>() > 0.9, "R^2 " + num(fit["r2"].get<double>()));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  double worst = 0.0;
  bool counts = true;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const kinsim::SimConfig c = hard_sphere_gas(32, 0.045, 1000.0, seed);
    const kinsim::SimState s0 = kinsim::init_state(c);
    // Compare halfway between collisions 100 and 101 so both integrators agree on the count.
    kinsim::Simulator probe(c, s0);
    counts = counts && probe.advance_collisions(100) == 100;
    const double t100 = probe.time();
    counts = counts && probe.advance_collisions(1) == 1;
    const double t_cmp = 0.5 * (t100 + probe.time());

    kinsim::Simulator sim(c, s0);
    sim.run_until(t_cmp);
    const kinsim::SimState end = sim.snapshot();
    testing::NaiveGas oracle(s0, 0.02 * kinsim::hard_sphere_theory(c).tau);
    oracle.run_until(end.time);
    counts = counts && sim.collisions() == 100 && oracle.collisions() == 100;
    worst = std::max(worst, testing::max_position_error(oracle, end) / c.box);
  }
  o.require(counts, "100 collisions on both sides");
  o.require(worst < 1e-6, "N=32, 6 seeds, max position error " + num(worst) + " box");
  return o;
}

Outcome wavepacket_identities() {
  using namespace wavepacket;
  Outcome o;
  double norm_err = 0.0;
  for (double delta : {0.5, 1.0, 2.0, 4.0}) {
    for (Symmetry sym : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
      PacketPair p;
      p.f = {0.0, 1.0, 0.0};
      p.g = {delta, 1.0, 0.6};
      p.symmetry = sym;
      const double s2 = std::norm(overlap(p.f, p.g).value);
      const double expected = 1.0 + interference_sign(sym) * s2;
      norm_err = std::max(norm_err, std::abs(total_probability(p).value - expected));
    }
  }
  o.require(norm_err < 1e-8, "raw norm vs 1 +- |S|^2 max error " + num(norm_err));

  PacketPair anti;
  anti.f = {-0.5, 1.0, 0.0};
  anti.g = {0.7, 0.8, 0.4};
  anti.symmetry = Symmetry::Antisymmetric;
  const DensityGrid grid = density_grid(anti, 101);
  const std::size_t n = grid.x.size();
  double diag = 0.0, off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      (i == j ? diag : off) = std::max(i == j ? diag : off, std::abs(grid.values[i * n + j]));
    }
  }
  o.require(diag <= 1e-12 * off, "antisymmetric P(x,x)/max P " + num(diag / off));

  double j_err = 0.0;
  for (double delta : {0.0, 1.0, 3.0}) {
    for (double R : {0.3, 1.0, 4.0}) {
      const double w = 1.0, q = 0.5, U0 = 1.7;
      const GaussianPacket f{0.0, w, 0.0}, g{delta, w, q};
      const double A = 1.0 / (2.0 * w * w) + 1.0 / (R * R);
      const double closed = U0 * std::exp(-delta * delta / (4.0 * w * w)) * R / std::sqrt(R * R + 2.0 * w * w) *
                            std::exp(-q * q / (2.0 * A));
      const auto J = exchange_matrix_element(f, g, InteractionModel::gaussian(U0, R));
      j_err = std::max(j_err, std::abs(J.value - closed) / closed);
    }
  }
  o.require(j_err < 1e-8, "J vs Gaussian closed form max relative error " + num(j_err));

  const GaussianPacket f{0.0, 1.0, 0.0}, g{1.2, 1.0, 0.3};
  const double base = transition_rate(exchange_matrix_element(f, g, InteractionModel::gaussian(0.9, 1.1)).value);
  bool exact = true;
  for (double c : {0.5, 2.0, 4.0, 1024.0}) {
    const double scaled =
        transition_rate(exchange_matrix_element(f, g, InteractionModel::gaussian(c * 0.9, 1.1)).value);
    exact = exact && scaled == c * c * base;
  }
  o.require(exact, "Gamma(cU) == c^2 Gamma(U) bitwise for c in {0.5, 2, 4, 1024}");
  double scale_err = 0.0;
  for (double c : {3.0, 0.1, 7.5}) {
    const double scaled =
        transition_rate(exchange_matrix_element(f, g, InteractionModel::gaussian(c * 0.9, 1.1)).value);
    scale_err = std::max(scale_err, rel(scaled, c * c * base));
  }
  o.require(scale_err < 1e-15, "other c max relative error " + num(scale_err));
  return o;
}

Outcome degeneracy() {
  Outcome o;
  const double d = full_report(rb87()).degeneracy;
  o.require(d > kBecDegeneracy, "n lambda^3 " + num(d) + " > 2.612");
  return o;
}

Outcome determinism() {
  Outcome o;
  const kinsim::SimConfig c = hard_sphere_gas(200, 2e-3, 40.0, 42);
  setenv("QFLUID_TIMESTAMP", "2000-01-01T00:00:00Z", 1);
  const app::CommandOutput a = app::cmd_simulate(c, {true});
  setenv("QFLUID_TIMESTAMP", "2030-06-30T12:00:00Z", 1);
  const app::CommandOutput b = app::cmd_simulate(app::sim_config_from_echo(a.document["config"]), {true});
  unsetenv("QFLUID_TIMESTAMP");
  const std::string pa = app::payload_without_timestamp(a.document).dump(2);
  const std::string pb = app::payload_without_timestamp(b.document).dump(2);
  o.require(pa == pb, "simulate payload re-run from its echo: " + std::to_string(pa.size()) + " bytes identical");
  o.require(a.files.size() == 1 && b.files.size() == 1 && a.files[0].contents == b.files[0].contents,
            "exchange CSV identical");

  app::SweepRequest req;
  req.base = c;
  req.seeds = {1, 2, 3};
  req.jobs = 3;
  const Json s1 = app::payload_without_timestamp(app::cmd_sweep(req).document);
  req.jobs = 1;
  const Json s2 = app::payload_without_timestamp(app::cmd_sweep(req).document);
  o.require(s1.dump() == s2.dump(), "3-seed sweep identical with 3 workers and 1 worker");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 Rb-87 scale reproduction", rb87_scales},
      {"2 tau_x(lambda_dB, v_th) = h/(k_B T)", planck_identity},
      {"3 simulator kinetic-theory fidelity", simulator_fidelity},
      {"4 exchange waiting time vs tau across densities", exchange_sweep},
      {"5 event-driven vs brute-force oracle", oracle_equivalence},
      {"6 wave-packet identities", wavepacket_identities},
      {"7 Rb-87 degeneracy above BEC threshold", degeneracy},
      {"8 same-seed determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %s  (%.2f s)  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
