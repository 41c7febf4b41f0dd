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

// qfluid: scale reports, regime classification, hard-sphere runs, phase maps
// and wave-packet numerics from the command line.
//
// Exit status: 0 success, 1 computation error, 2 invalid input,
// 3 output produced but a numerical check failed (e.g. unconverged quadrature).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfluid/app/commands.hpp"
#include "qfluid/errors.hpp"
#include "qfluid/units.hpp"

namespace app = qfluid::app;
namespace wp = qfluid::wavepacket;
namespace fs = std::filesystem;

namespace {

struct Globals {
  bool json = false;
  std::string out;
  std::string units = "si";
  std::optional<std::uint64_t> seed;
};

struct StateFlags {
  app::StateText text;
  std::string U_act, tau0, size;
  std::string prefactor = "kinetic";
  std::string velocity = "thermal";

  void add(CLI::App* cmd) {
    cmd->add_option("-T,--temperature", text.T, "Temperature, e.g. 170nK");
    cmd->add_option("-n,--density", text.n, "Number density, e.g. 2.6e12/cm3");
    cmd->add_option("-m,--mass", text.m, "Particle mass, e.g. 87u");
    cmd->add_option("-a,--radius", text.a, "Interaction radius, e.g. 1e-6cm");
    cmd->add_option("--dynamics", text.dynamics, "gaslike or liquidlike")->capture_default_str();
    cmd->add_option("--U-act", U_act, "Activation energy (energy, or temperature as U/k_B)");
    cmd->add_option("--tau0", tau0, "Attempt time for liquidlike dynamics (default 1e-13 s)");
    cmd->add_option("--size", size, "System size, used for the collisionless check");
    cmd->add_option("--mfp-prefactor", prefactor, "kinetic or simple")->capture_default_str();
    cmd->add_option("--velocity", velocity, "thermal (sqrt(kT/m)) or mean (sqrt(8kT/(pi m)))")->capture_default_str();
  }

  qfluid::FluidState state() {
    if (!U_act.empty()) text.U_act = U_act;
    if (!tau0.empty()) text.tau0 = tau0;
    if (!size.empty()) text.system_size = size;
    return app::parse_state(text);
  }

  qfluid::ScaleOptions options() const {
    return {app::mfp_prefactor_from_string(prefactor), app::velocity_from_string(velocity)};
  }
};

// Spec keys that may be given as flags; they override the config file.
const char* const kSimFlagKeys[] = {"N",     "seed", "d_hs",  "sigma",   "box",   "packing",         "n",
                                    "T",     "m",    "t_end", "warmup",  "r_ex",  "reference",       "snapshot_stride",
                                    "sample_interval"};

struct SimulateFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::vector<std::string> sets;
  std::string sweep_n, sweep_seeds;
  std::size_t jobs = 0;
  bool exchanges_csv = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Key-value config file (key = value, # comments)")
        ->check(CLI::ExistingFile);
    for (const char* key : kSimFlagKeys) {
      std::string flag = std::string("--") + key;
      for (char& c : flag) {
        if (c == '_') c = '-';
      }
      cmd->add_option(flag, values[key], std::string("Config key ") + key);
    }
    cmd->add_option("--set", sets, "Extra key=value config entries");
    cmd->add_option("--sweep-n", sweep_n, "Comma-separated number densities, one run set per value");
    cmd->add_option("--sweep-seeds", sweep_seeds, "Comma-separated seeds, one run per value and density");
    cmd->add_option("--jobs", jobs, "Worker threads for sweeps (0: all cores)");
    cmd->add_flag("--exchanges-csv", exchanges_csv, "Also write the raw exchange events as CSV");
  }

  app::SimSpec spec(const Globals& g) const {
    app::SimSpec spec;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      spec = app::parse_sim_spec(text);
    }
    for (const std::string& s : sets) {
      const app::SimSpec more = app::parse_sim_spec(s);
      for (const auto& [k, v] : more) spec[k] = v;
    }
    for (const auto& [k, v] : values) {
      if (!v.empty()) spec[k] = v;
    }
    if (g.seed) spec["seed"] = std::to_string(*g.seed);
    return spec;
  }
};

struct PhasemapFlags {
  std::string T_min, T_max, n_min, n_max, m, a, t_obs;
  std::size_t T_count = 24, n_count = 24;
  double onset_multiplier = 10.0;
  bool stringent = false, svg = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--T-min", T_min, "Lowest temperature")->required();
    cmd->add_option("--T-max", T_max, "Highest temperature")->required();
    cmd->add_option("--T-count", T_count, "Temperature grid points (log-spaced)")->capture_default_str();
    cmd->add_option("--n-min", n_min, "Lowest number density")->required();
    cmd->add_option("--n-max", n_max, "Highest number density")->required();
    cmd->add_option("--n-count", n_count, "Density grid points (log-spaced)")->capture_default_str();
    cmd->add_option("-m,--mass", m, "Particle mass")->required();
    cmd->add_option("-a,--radius", a, "Interaction radius")->required();
    cmd->add_option("--t-obs", t_obs, "Observation time")->required();
    cmd->add_option("--onset-multiplier", onset_multiplier, "Onset factor k in t_obs >= k tau*")->capture_default_str();
    cmd->add_flag("--stringent", stringent, "Use the stringent exchange time");
    cmd->add_flag("--svg", svg, "Also render a static SVG");
  }

  app::PhaseMapSpec spec() const {
    using qfluid::Dimension;
    using qfluid::parse_quantity;
    app::PhaseMapSpec s;
    s.T_min = parse_quantity(T_min, "T_min", Dimension::Temperature).si();
    s.T_max = parse_quantity(T_max, "T_max", Dimension::Temperature).si();
    s.n_min = parse_quantity(n_min, "n_min", Dimension::NumberDensity).si();
    s.n_max = parse_quantity(n_max, "n_max", Dimension::NumberDensity).si();
    s.m = parse_quantity(m, "m", Dimension::Mass).si();
    s.a = parse_quantity(a, "a", Dimension::Length).si();
    s.t_obs = parse_quantity(t_obs, "t_obs", Dimension::Time).si();
    s.T_count = T_count;
    s.n_count = n_count;
    s.onset_multiplier = onset_multiplier;
    s.stringent = stringent;
    s.svg = svg;
    return s;
  }
};

wp::GaussianPacket parse_packet(const std::string& text, const char* field) {
  const std::vector<std::string> parts = app::split_list(text, field);
  if (parts.size() < 2 || parts.size() > 3) throw qfluid::InputError(field, "expected center,width[,k0]");
  wp::GaussianPacket p;
  try {
    p.center = std::stod(parts[0]);
    p.width = std::stod(parts[1]);
    if (parts.size() == 3) p.k0 = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw qfluid::InputError(field, "expected numbers, got '" + text + "'");
  }
  p.validate(field);
  return p;
}

struct WavepacketFlags {
  std::string f = "0,1", g = "3,1";
  std::string symmetry = "symmetric", normalization = "raw", interaction = "gaussian";
  double U0 = 1.0, range = 1.0, rate_constant = 1.0;
  std::size_t grid = 0;
  double abs_tol = 1e-10, truncation = 12.0;
  std::size_t max_intervals = wp::QuadratureOptions{}.max_intervals;

  void add(CLI::App* cmd) {
    cmd->add_option("--f", f, "First packet: center,width[,k0] (model units)")->capture_default_str();
    cmd->add_option("--g", g, "Second packet: center,width[,k0]")->capture_default_str();
    cmd->add_option("--symmetry", symmetry, "symmetric, antisymmetric or boltzmann")->capture_default_str();
    cmd->add_option("--normalization", normalization, "raw or renormalized")->capture_default_str();
    cmd->add_option("--interaction", interaction, "gaussian or contact")->capture_default_str();
    cmd->add_option("--U0", U0, "Interaction strength")->capture_default_str();
    cmd->add_option("--range", range, "Gaussian interaction range R")->capture_default_str();
    cmd->add_option("--rate-constant", rate_constant, "Gamma = constant * |J|^2")->capture_default_str();
    cmd->add_option("--grid", grid, "Points per axis of the P(x1, x2) grid CSV (0: none)")->capture_default_str();
    cmd->add_option("--abs-tol", abs_tol, "Quadrature absolute tolerance")->capture_default_str();
    cmd->add_option("--max-intervals", max_intervals, "Quadrature subdivision budget")->capture_default_str();
    cmd->add_option("--truncation", truncation, "Integration window half-width in packet widths")
        ->capture_default_str();
  }

  app::WavepacketRequest request() const {
    app::WavepacketRequest r;
    r.pair.f = parse_packet(f, "f");
    r.pair.g = parse_packet(g, "g");
    r.pair.symmetry = wp::symmetry_from_string(symmetry);
    r.pair.normalization = wp::normalization_from_string(normalization);
    if (interaction == "gaussian") {
      r.interaction = wp::InteractionModel::gaussian(U0, range);
    } else if (interaction == "contact") {
      r.interaction = wp::InteractionModel::contact(U0);
    } else {
      throw qfluid::InputError("interaction", "expected gaussian or contact, got '" + interaction + "'");
    }
    r.rate_constant = rate_constant;
    r.grid_points = grid;
    r.options.quadrature.abs_tol = abs_tol;
    r.options.quadrature.max_intervals = max_intervals;
    r.options.truncation_widths = truncation;
    return r;
  }
};

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw qfluid::Error("cannot write " + path.string());
}

int emit(const std::string& command, const app::CommandOutput& out, const Globals& g) {
  if (g.json) {
    std::cout << out.document.dump(2) << '\n';
  } else {
    std::cout << out.table;
  }
  if (!g.out.empty()) {
    const fs::path dir(g.out);
    fs::create_directories(dir);
    write_file(dir / (command + ".json"), out.document.dump(2) + "\n");
    for (const app::OutputFile& f : out.files) write_file(dir / f.name, f.contents);
  } else if (!out.files.empty()) {
    std::cerr << "note: " << out.files.size() << " extra file(s) not written; pass --out DIR\n";
  }
  for (const std::string& failure : out.failures) std::cerr << "failure: " << failure << '\n';
  return out.failures.empty() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Exchange-time scales and statistics regimes of dilute quantum fluids"};
  cli.set_version_flag("--version", std::string(app::kToolVersion));
  cli.require_subcommand(1);
  // Global flags may also follow the subcommand.
  cli.fallthrough();

  Globals g;
  cli.add_flag("--json", g.json, "Print the JSON document instead of a table");
  cli.add_option("--out", g.out, "Directory for <command>.json and extra files");
  cli.add_option("--units", g.units, "Display units for tables and results: si or cgs")->capture_default_str();
  cli.add_option("--seed", g.seed, "Seed override for stochastic commands");

  StateFlags scales_flags;
  CLI::App* scales = cli.add_subcommand("scales", "Length and time scales of a fluid state");
  scales_flags.add(scales);

  StateFlags classify_flags;
  std::string t_obs;
  double onset_multiplier = 10.0;
  bool stringent = false;
  CLI::App* classify = cli.add_subcommand("classify", "Statistics regime at an observation time");
  classify_flags.add(classify);
  classify->add_option("--t-obs", t_obs, "Observation time (required)")->required();
  classify->add_option("--onset-multiplier", onset_multiplier, "Onset factor k in t_obs >= k tau*")
      ->capture_default_str();
  classify->add_flag("--stringent", stringent, "Use the stringent exchange time");

  SimulateFlags sim_flags;
  CLI::App* simulate = cli.add_subcommand("simulate", "Event-driven hard-sphere run or density/seed sweep");
  sim_flags.add(simulate);

  PhasemapFlags map_flags;
  CLI::App* phasemap = cli.add_subcommand("phasemap", "Statistics phase over a (T, n) grid");
  map_flags.add(phasemap);

  WavepacketFlags wave_flags;
  CLI::App* wavepacket = cli.add_subcommand("wavepacket", "Two-particle wave-packet overlap and exchange");
  wave_flags.add(wavepacket);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; malformed flags count as invalid input.
    return cli.exit(e) == 0 ? 0 : 2;
  }

  try {
    const app::UnitSystem units = app::unit_system_from_string(g.units);
    if (scales->parsed()) {
      return emit("scales", app::cmd_scales(scales_flags.state(), scales_flags.options(), units), g);
    }
    if (classify->parsed()) {
      app::ClassifyRequest req;
      req.state = classify_flags.state();
      req.window = {qfluid::parse_quantity(t_obs, "t_obs", qfluid::Dimension::Time).si(), onset_multiplier};
      req.stringent = stringent;
      req.options = classify_flags.options();
      return emit("classify", app::cmd_classify(req, units), g);
    }
    if (simulate->parsed()) {
      const qfluid::kinsim::SimConfig cfg = app::build_sim_config(sim_flags.spec(g));
      const app::SimulateOptions opt{sim_flags.exchanges_csv};
      if (sim_flags.sweep_n.empty() && sim_flags.sweep_seeds.empty()) {
        return emit("simulate", app::cmd_simulate(cfg, opt), g);
      }
      app::SweepRequest req;
      req.base = cfg;
      req.jobs = sim_flags.jobs;
      req.options = opt;
      if (!sim_flags.sweep_n.empty()) {
        for (const std::string& s : app::split_list(sim_flags.sweep_n, "sweep_n")) {
          req.densities.push_back(qfluid::parse_quantity(s, "sweep_n", qfluid::Dimension::NumberDensity).si());
        }
      }
      if (!sim_flags.sweep_seeds.empty()) {
        for (const std::string& s : app::split_list(sim_flags.sweep_seeds, "sweep_seeds")) {
          try {
            std::size_t used = 0;
            req.seeds.push_back(std::stoull(s, &used));
            if (used != s.size()) throw std::invalid_argument(s);
          } catch (const std::exception&) {
            throw qfluid::InputError("sweep_seeds", "expected non-negative integers, got '" + s + "'");
          }
        }
      }
      return emit("sweep", app::cmd_sweep(req), g);
    }
    if (phasemap->parsed()) return emit("phasemap", app::cmd_phasemap(map_flags.spec()), g);
    if (wavepacket->parsed()) return emit("wavepacket", app::cmd_wavepacket(wave_flags.request()), g);
  } catch (const qfluid::InputError& e) {
    std::cerr << "error: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const qfluid::DimensionError& e) {
    std::cerr << "error: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const qfluid::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
