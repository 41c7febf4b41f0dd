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

// Command implementations behind the qfluid executable. Each command takes
// parsed inputs and returns documents and file payloads; the executable only
// does flag parsing, printing and file writing.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qfluid/app/format.hpp"
#include "qfluid/kinsim/simulator.hpp"
#include "qfluid/regimes.hpp"
#include "qfluid/scales.hpp"
#include "qfluid/wavepacket/wavepacket.hpp"

namespace qfluid::app {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "qfluid";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::string_view kScalesSchema = "qfluid.scales/1";
inline constexpr std::string_view kClassifySchema = "qfluid.classify/1";
inline constexpr std::string_view kSimulateSchema = "qfluid.simulate/1";
inline constexpr std::string_view kSweepSchema = "qfluid.sweep/1";
inline constexpr std::string_view kPhasemapSchema = "qfluid.phasemap/1";
inline constexpr std::string_view kWavepacketSchema = "qfluid.wavepacket/1";

/// {"schema", "config", "result", "provenance": {tool, version, timestamp}}.
Json make_document(std::string_view schema, Json config, Json result);
/// Copy with provenance.timestamp removed; what determinism is judged on.
Json payload_without_timestamp(const Json& doc);
/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ, or $QFLUID_TIMESTAMP when set.
std::string utc_timestamp();

/// A file to be written under the output directory.
struct OutputFile {
  std::string name;
  std::string contents;
};

/// Result of a command: the main document, its human-readable rendering and extra files.
struct CommandOutput {
  Json document;
  std::string table;
  std::vector<OutputFile> files;
  /// Numerical failures that still produced output (e.g. unconverged quadrature).
  std::vector<std::string> failures;
};

// ---- fluid state ----------------------------------------------------------

/// Raw unit-tagged text of a fluid state, as typed on the command line.
struct StateText {
  std::string T, n, m, a;
  std::optional<std::string> U_act, tau0, system_size;
  std::string dynamics = "gaslike";
};

FluidState parse_state(const StateText& text);
/// Echo with every quantity as SI text; parse_state(state_from_echo(echo)) reproduces the state.
Json echo_state(const FluidState& s);
StateText state_from_echo(const Json& echo);

MfpPrefactor mfp_prefactor_from_string(std::string_view s);
VelocityConvention velocity_from_string(std::string_view s);

// ---- scales / classify ----------------------------------------------------

CommandOutput cmd_scales(const FluidState& state, const ScaleOptions& options, UnitSystem units);
/// Result block shared by cmd_scales and the phase map.
Json scales_result(const ScaleReport& r, UnitSystem units);

struct ClassifyRequest {
  FluidState state;
  ObservationWindow window;
  bool stringent = false;
  ScaleOptions options;
};

CommandOutput cmd_classify(const ClassifyRequest& req, UnitSystem units);

// ---- simulate -------------------------------------------------------------

/// Key-value simulation spec. Keys (all physical values need unit suffixes):
///   N, seed, d_hs | sigma, box | packing | n, T, m, t_end, warmup, r_ex,
///   reference (last_collision | stride), snapshot_stride, sample_interval.
/// Time values also accept the unit "tau", the hard-sphere collision time of the config.
using SimSpec = std::map<std::string, std::string>;

/// Reads "key = value" lines; '#' starts a comment. Unknown keys are InputErrors.
SimSpec parse_sim_spec(std::string_view text);
kinsim::SimConfig build_sim_config(const SimSpec& spec);
/// Config echo: SI text for every quantity, seed as a number.
Json echo_sim_config(const kinsim::SimConfig& cfg);
/// Inverse of echo_sim_config.
kinsim::SimConfig sim_config_from_echo(const Json& echo);

Json sim_result_json(const kinsim::SimResult& r);
/// event_index,particle_i,particle_j,waiting_time_s
std::string exchanges_csv(const kinsim::SimResult& r);

struct SimulateOptions {
  bool exchanges_csv = false;
};

CommandOutput cmd_simulate(const kinsim::SimConfig& cfg, const SimulateOptions& opt);

/// One run per (density, seed) pair, density-major. An empty list keeps the base value.
struct SweepRequest {
  kinsim::SimConfig base;
  std::vector<double> densities;  // number density, m^-3
  std::vector<std::uint64_t> seeds;
  std::size_t jobs = 0;  // 0: hardware concurrency
  SimulateOptions options;
};

std::vector<kinsim::SimConfig> sweep_configs(const SweepRequest& req);
/// Runs configs on `jobs` worker threads; results come back in config order.
/// A failing run is rethrown as SimulationError naming its run index and seed.
std::vector<kinsim::SimResult> run_all(const std::vector<kinsim::SimConfig>& configs, std::size_t jobs);
CommandOutput cmd_sweep(const SweepRequest& req);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
std::string aggregate_csv(const std::vector<kinsim::SimResult>& results);

// ---- phase map ------------------------------------------------------------

struct PhaseMapSpec {
  double T_min = 0.0, T_max = 0.0;
  std::size_t T_count = 0;
  double n_min = 0.0, n_max = 0.0;
  std::size_t n_count = 0;
  double m = 0.0;
  double a = 0.0;
  double t_obs = 0.0;
  double onset_multiplier = 10.0;
  bool stringent = false;
  bool svg = false;

  /// Throws InputError for degenerate ranges or counts below 2.
  void validate() const;
};

/// count log-spaced points with exact endpoints.
std::vector<double> log_space(double lo, double hi, std::size_t count);

/// Closed-form boundary temperatures at density n.
double temperature_lambda_equals_x(double n, double m);
double temperature_bec(double n, double m);
/// T at which l/v_th equals `tau` (gaslike, kinetic prefactor).
double temperature_tau_equals(double n, double m, double a, double tau);

CommandOutput cmd_phasemap(const PhaseMapSpec& spec);

// ---- wave packets ---------------------------------------------------------

struct WavepacketRequest {
  wavepacket::PacketPair pair;
  wavepacket::InteractionModel interaction = wavepacket::InteractionModel::gaussian(1.0, 1.0);
  double rate_constant = 1.0;
  std::size_t grid_points = 0;  // 0: no grid file
  wavepacket::Options options;
};

CommandOutput cmd_wavepacket(const WavepacketRequest& req);

}  // namespace qfluid::app
