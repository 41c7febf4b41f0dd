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
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "qfluid/app/commands.hpp"
#include "qfluid/errors.hpp"

namespace qfluid::app {

using kinsim::SimConfig;
using kinsim::SimResult;

namespace {

const std::set<std::string, std::less<>> kSimKeys{
    "N",      "seed",  "d_hs", "sigma",     "box",       "packing",         "n",
    "T",      "m",     "t_end", "warmup",   "r_ex",      "reference",       "snapshot_stride",
    "sample_interval"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class Int>
Int parse_integer(std::string_view text, const std::string& field) {
  text = trim(text);
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(field, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

double parse_plain(std::string_view text, const std::string& field) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(field, "expected a plain number, got '" + std::string(text) + "'");
  }
  return v;
}

/// A time in seconds, or in multiples of the hard-sphere collision time ("50 tau").
double parse_time(std::string_view text, const std::string& field, double tau) {
  std::string_view t = trim(text);
  if (t.size() > 3 && t.substr(t.size() - 3) == "tau") {
    return parse_plain(t.substr(0, t.size() - 3), field) * tau;
  }
  return parse_quantity(text, field, Dimension::Time).si();
}

const std::string* find(const SimSpec& spec, const char* key) {
  auto it = spec.find(key);
  return it == spec.end() ? nullptr : &it->second;
}

int count_of(const SimSpec& spec, std::initializer_list<const char*> keys) {
  int k = 0;
  for (const char* key : keys) k += spec.count(key) ? 1 : 0;
  return k;
}

Json mean_json(const kinsim::MeanWithError& m) {
  return {{"count", m.count}, {"sum", m.sum}, {"mean", m.mean}, {"std_error", m.std_error}};
}

}  // namespace

SimSpec parse_sim_spec(std::string_view text) {
  SimSpec spec;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("config", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kSimKeys.count(key)) throw InputError(key, "unknown simulation key (line " + std::to_string(line_no) + ")");
    if (value.empty()) throw InputError(key, "empty value (line " + std::to_string(line_no) + ")");
    if (!spec.emplace(key, value).second) {
      throw InputError(key, "given twice (line " + std::to_string(line_no) + ")");
    }
  }
  return spec;
}

SimConfig build_sim_config(const SimSpec& spec) {
  for (const auto& [key, value] : spec) {
    if (!kSimKeys.count(key)) throw InputError(key, "unknown simulation key");
  }
  SimConfig c;
  if (auto v = find(spec, "N")) c.N = parse_integer<std::size_t>(*v, "N");
  if (auto v = find(spec, "seed")) c.seed = parse_integer<std::uint64_t>(*v, "seed");

  if (count_of(spec, {"d_hs", "sigma"}) != 1) throw InputError("d_hs", "give exactly one of d_hs or sigma");
  if (auto v = find(spec, "d_hs")) {
    c.d_hs = parse_quantity(*v, "d_hs", Dimension::Length).si();
  } else {
    c.d_hs = kinsim::diameter_from_cross_section(parse_quantity(*find(spec, "sigma"), "sigma", Dimension::Area).si());
  }

  if (count_of(spec, {"box", "packing", "n"}) != 1) throw InputError("box", "give exactly one of box, packing or n");
  if (c.N == 0) throw InputError("N", "must be at least 1");
  if (auto v = find(spec, "box")) {
    c.box = parse_quantity(*v, "box", Dimension::Length).si();
  } else if (auto p = find(spec, "packing")) {
    const double eta = parse_plain(*p, "packing");
    if (!(eta > 0.0)) throw InputError("packing", "must be positive");
    c.box = kinsim::box_for_packing(c.N, c.d_hs, eta);
  } else {
    const double n = parse_quantity(*find(spec, "n"), "n", Dimension::NumberDensity).si();
    if (!(n > 0.0)) throw InputError("n", "must be positive");
    c.box = std::cbrt(static_cast<double>(c.N) / n);
  }

  const std::string* T = find(spec, "T");
  const std::string* m = find(spec, "m");
  if (!T) throw InputError("T", "required");
  if (!m) throw InputError("m", "required");
  c.T = parse_quantity(*T, "T", Dimension::Temperature).si();
  c.m = parse_quantity(*m, "m", Dimension::Mass).si();
  if (!(c.T > 0.0)) throw InputError("T", "must be positive");
  if (!(c.m > 0.0)) throw InputError("m", "must be positive");
  if (!(c.d_hs > 0.0)) throw InputError("d_hs", "must be positive");
  if (!(c.box > 0.0)) throw InputError("box", "must be positive");

  const double tau = kinsim::hard_sphere_theory(c).tau;
  const std::string* t_end = find(spec, "t_end");
  if (!t_end) throw InputError("t_end", "required");
  c.t_end = parse_time(*t_end, "t_end", tau);
  if (auto v = find(spec, "warmup")) c.warmup = parse_time(*v, "warmup", tau);
  if (auto v = find(spec, "snapshot_stride")) c.snapshot_stride = parse_time(*v, "snapshot_stride", tau);
  if (auto v = find(spec, "sample_interval")) c.sample_interval = parse_time(*v, "sample_interval", tau);
  if (auto v = find(spec, "r_ex")) c.r_ex = parse_quantity(*v, "r_ex", Dimension::Length).si();
  if (auto v = find(spec, "reference")) c.reference = kinsim::exchange_reference_from_string(*v);
  c.validate();
  return c;
}

Json echo_sim_config(const SimConfig& c) {
  Json j;
  j["N"] = c.N;
  j["seed"] = c.seed;
  j["box"] = quantity_text(c.box, units::m);
  j["d_hs"] = quantity_text(c.d_hs, units::m);
  j["T"] = quantity_text(c.T, units::K);
  j["m"] = quantity_text(c.m, units::kg);
  j["t_end"] = quantity_text(c.t_end, units::s);
  j["warmup"] = quantity_text(c.warmup, units::s);
  j["r_ex"] = quantity_text(c.exchange_radius(), units::m);
  j["reference"] = kinsim::to_string(c.reference);
  j["snapshot_stride"] = quantity_text(c.snapshot_stride, units::s);
  j["sample_interval"] = quantity_text(c.sample_interval, units::s);
  return j;
}

SimConfig sim_config_from_echo(const Json& echo) {
  SimSpec spec;
  for (const auto& [key, value] : echo.items()) {
    spec[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  SimConfig c = build_sim_config(spec);
  return c;
}

Json sim_result_json(const SimResult& r) {
  Json j;
  j["cells_per_edge"] = r.cells_per_edge;
  j["events"] = r.events;
  j["collisions"] = r.collisions;
  j["number_density_per_m3"] = r.config.number_density();
  j["packing_fraction"] = r.config.packing_fraction();
  j["free_path_m"] = mean_json(r.free_path);
  j["free_time_s"] = mean_json(r.free_time);
  j["sampled_speed_m_per_s"] = mean_json(r.sampled_speed);
  const auto& w = r.waiting;
  j["waiting_time_s"] = {{"count", w.count},   {"sum", w.sum},       {"mean", w.mean}, {"std_error", w.std_error},
                         {"min", w.min},       {"q10", w.q10},       {"q25", w.q25},   {"median", w.median},
                         {"q75", w.q75},       {"q90", w.q90},       {"max", w.max}};
  j["theory"] = {{"ell_m", r.theory.ell}, {"mean_speed_m_per_s", r.theory.mean_speed}, {"tau_s", r.theory.tau}};
  // Ratios without samples behind them are null rather than 0.
  auto ratio = [](double v, std::size_t count) { return count > 0 ? Json(v) : Json(nullptr); };
  j["ratios"] = {{"free_path_over_ell", ratio(r.mfp_ratio, r.free_path.count)},
                 {"free_time_over_tau", ratio(r.collision_time_ratio, r.free_time.count)},
                 {"free_time_over_free_path_per_speed", ratio(r.collision_time_vs_mfp, r.free_time.count)},
                 {"waiting_mean_over_tau", ratio(r.waiting_ratio, r.waiting.count)}};
  j["drift"] = {{"energy", r.energy_drift}, {"momentum", r.momentum_drift}};
  return j;
}

std::string exchanges_csv(const SimResult& r) {
  std::string out = "event_index,particle_i,particle_j,waiting_time_s\n";
  for (std::size_t k = 0; k < r.exchanges.size(); ++k) {
    const auto& e = r.exchanges[k];
    out += std::to_string(k) + "," + std::to_string(e.i) + "," + std::to_string(e.j) + "," +
           format_number(e.waiting_time) + "\n";
  }
  return out;
}

namespace {

std::string result_table(const SimResult& r) {
  Table t;
  t.add({"quantity", "measured", "theory", "ratio"});
  t.add({"collisions", std::to_string(r.collisions), "", ""});
  auto shown = [](double v, std::size_t count) { return count > 0 ? format_number(v) : std::string("-"); };
  t.add({"mean free path (m)", shown(r.free_path.mean, r.free_path.count), format_number(r.theory.ell),
         shown(r.mfp_ratio, r.free_path.count)});
  t.add({"mean free time (s)", shown(r.free_time.mean, r.free_time.count), format_number(r.theory.tau),
         shown(r.collision_time_ratio, r.free_time.count)});
  t.add({"exchange waiting mean (s)", shown(r.waiting.mean, r.waiting.count), format_number(r.theory.tau),
         shown(r.waiting_ratio, r.waiting.count)});
  t.add({"exchange events", std::to_string(r.waiting.count), "", ""});
  t.add({"energy drift", format_number(r.energy_drift), "", ""});
  t.add({"momentum drift", format_number(r.momentum_drift), "", ""});
  return t.str();
}

}  // namespace

CommandOutput cmd_simulate(const SimConfig& cfg, const SimulateOptions& opt) {
  cfg.validate();
  const SimResult r = run_all({cfg}, 1).front();
  CommandOutput out{make_document(kSimulateSchema, echo_sim_config(cfg), sim_result_json(r)), result_table(r), {}, {}};
  if (opt.exchanges_csv) out.files.push_back({"exchanges.csv", exchanges_csv(r)});
  return out;
}

std::vector<SimConfig> sweep_configs(const SweepRequest& req) {
  const std::vector<double> densities = req.densities.empty() ? std::vector<double>{req.base.number_density()} : req.densities;
  const std::vector<std::uint64_t> seeds = req.seeds.empty() ? std::vector<std::uint64_t>{req.base.seed} : req.seeds;
  std::vector<SimConfig> configs;
  for (double n : densities) {
    if (!(n > 0.0)) throw InputError("densities", "must be positive");
    for (std::uint64_t seed : seeds) {
      SimConfig c = req.base;
      c.box = std::cbrt(static_cast<double>(c.N) / n);
      c.seed = seed;
      c.validate();
      configs.push_back(c);
    }
  }
  return configs;
}

std::vector<SimResult> run_all(const std::vector<SimConfig>& configs, std::size_t jobs) {
  std::vector<SimResult> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < configs.size(); k = next++) {
      try {
        results[k] = kinsim::run(configs[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, configs.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const std::exception& e) {
      throw SimulationError("run " + std::to_string(k) + " (seed " + std::to_string(configs[k].seed) + "): " + e.what());
    }
  }
  return results;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2 || x.size() != y.size()) return {};
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) mx += x[k], my += y[k];
  mx /= n, my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  LinearFit f;
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

std::string aggregate_csv(const std::vector<SimResult>& results) {
  std::string out =
      "run_index,seed,N,number_density_per_m3,packing_fraction,theory_ell_m,theory_tau_s,free_path_mean_m,"
      "free_path_std_error_m,free_path_over_ell,free_time_mean_s,free_time_std_error_s,waiting_count,"
      "waiting_mean_s,waiting_std_error_s,waiting_mean_over_tau,energy_drift,momentum_drift\n";
  for (std::size_t k = 0; k < results.size(); ++k) {
    const SimResult& r = results[k];
    const std::vector<std::string> row{std::to_string(k),
                                       std::to_string(r.config.seed),
                                       std::to_string(r.config.N),
                                       format_number(r.config.number_density()),
                                       format_number(r.config.packing_fraction()),
                                       format_number(r.theory.ell),
                                       format_number(r.theory.tau),
                                       format_number(r.free_path.mean),
                                       format_number(r.free_path.std_error),
                                       format_number(r.mfp_ratio),
                                       format_number(r.free_time.mean),
                                       format_number(r.free_time.std_error),
                                       std::to_string(r.waiting.count),
                                       format_number(r.waiting.mean),
                                       format_number(r.waiting.std_error),
                                       format_number(r.waiting_ratio),
                                       format_number(r.energy_drift),
                                       format_number(r.momentum_drift)};
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
    out += "\n";
  }
  return out;
}

namespace {

std::string run_tag(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", k);
  return buf;
}

}  // namespace

CommandOutput cmd_sweep(const SweepRequest& req) {
  const std::vector<SimConfig> configs = sweep_configs(req);
  const std::vector<SimResult> results = run_all(configs, req.jobs);

  Json config;
  config["base"] = echo_sim_config(req.base);
  config["densities"] = Json::array();
  for (double n : req.densities) config["densities"].push_back(quantity_text(n, units::per_m3));
  config["seeds"] = req.seeds;

  CommandOutput out;
  Json runs = Json::array();
  std::vector<double> tau, wait;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const std::string tag = run_tag(k);
    Json run_doc = make_document(kSimulateSchema, echo_sim_config(configs[k]), sim_result_json(results[k]));
    out.files.push_back({"run_" + tag + ".json", run_doc.dump(2) + "\n"});
    if (req.options.exchanges_csv) out.files.push_back({"exchanges_" + tag + ".csv", exchanges_csv(results[k])});
    runs.push_back({{"run_index", k}, {"file", "run_" + tag + ".json"}, {"config", echo_sim_config(configs[k])},
                    {"result", sim_result_json(results[k])}});
    if (results[k].waiting.count > 0) {
      tau.push_back(results[k].theory.tau);
      wait.push_back(results[k].waiting.mean);
    }
  }
  out.files.push_back({"aggregate.csv", aggregate_csv(results)});

  const LinearFit fit = fit_line(tau, wait);
  // A run without any exchange cannot show the bound, so it counts against it.
  bool all_above = !wait.empty() && wait.size() == results.size();
  for (std::size_t k = 0; k < wait.size(); ++k) all_above = all_above && wait[k] >= tau[k];
  Json result;
  result["runs"] = std::move(runs);
  result["waiting_vs_tau_fit"] = {{"slope", fit.slope}, {"intercept_s", fit.intercept}, {"r2", fit.r2},
                                  {"points", tau.size()}};
  result["waiting_mean_at_least_tau_in_every_run"] = all_above;
  out.document = make_document(kSweepSchema, std::move(config), std::move(result));

  Table t;
  t.add({"run", "seed", "n (/m3)", "tau (s)", "waiting mean (s)", "ratio"});
  for (std::size_t k = 0; k < results.size(); ++k) {
    t.add({std::to_string(k), std::to_string(configs[k].seed), format_number(configs[k].number_density()),
           format_number(results[k].theory.tau), format_number(results[k].waiting.mean),
           format_number(results[k].waiting_ratio)});
  }
  out.table = t.str() + "fit: slope " + format_number(fit.slope) + ", R^2 " + format_number(fit.r2) + "\n";
  return out;
}

}  // namespace qfluid::app
