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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qfluid/kinsim/config.hpp"
#include "qfluid/kinsim/state.hpp"

namespace qfluid::kinsim {

/// Particle i entered the ball of radius r_ex around j's reference position
/// after having changed course at least once since that reference was taken.
struct ExchangeEvent {
  std::uint32_t i;
  std::uint32_t j;
  double time;
  /// time minus the reference time of j's position.
  double waiting_time;
};

struct MeanWithError {
  std::size_t count = 0;
  double sum = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct DistributionSummary {
  std::size_t count = 0;
  double sum = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  double min = 0.0;
  double q10 = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double q90 = 0.0;
  double max = 0.0;
};

DistributionSummary summarize(std::vector<double> values);

struct SimResult {
  SimConfig config;
  std::size_t cells_per_edge = 0;
  std::size_t events = 0;
  std::size_t collisions = 0;
  /// Completed free flights that started at or after warmup.
  MeanWithError free_path;
  MeanWithError free_time;
  /// Mean speed over the sampling ticks (0 if sampling is off).
  MeanWithError sampled_speed;
  DistributionSummary waiting;
  std::vector<ExchangeEvent> exchanges;
  std::vector<double> speed_samples;
  HardSphereTheory theory{};
  /// Measured over theory: free path / l, free time / (l/<v>), waiting mean / (l/<v>).
  double mfp_ratio = 0.0;
  double collision_time_ratio = 0.0;
  double waiting_ratio = 0.0;
  /// Measured free time over measured free path / <v>.
  double collision_time_vs_mfp = 0.0;
  /// |E - E0| / E0 and |P - P0| / (m sum|v|) at the end of the run.
  double energy_drift = 0.0;
  double momentum_drift = 0.0;
};

/// Event-driven hard-sphere gas in a periodic cube. Single-threaded; a run is
/// strictly ordered by event time with ties broken by (kind, i, j).
class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg);
  /// Starts from an explicit state instead of init_state(cfg).
  Simulator(const SimConfig& cfg, SimState initial);

  /// Processes every event up to cfg.t_end.
  void run();
  /// Processes events with time <= t (clamped to t_end) and moves the clock to t.
  void run_until(double t);
  /// Processes events until `count` more collisions happened or t_end is reached.
  /// Returns the number of collisions executed.
  std::size_t advance_collisions(std::size_t count);

  double time() const { return now_; }
  std::size_t collisions() const { return collisions_; }
  std::size_t events() const { return events_; }
  std::size_t cells_per_edge() const { return nc_; }
  std::span<const ExchangeEvent> exchanges() const { return exchanges_; }
  const SimConfig& config() const { return cfg_; }

  /// Copy of the state with every particle advanced to the current time.
  SimState snapshot() const;

  SimResult result() const;

 private:
  enum class Kind : std::uint8_t { Collision = 0, SiteEntry = 1, CellCross = 2, Tick = 3 };
  enum TickKind : std::uint32_t { kSampleTick = 0, kSnapshotTick = 1 };

  struct Event {
    double time;
    Kind kind;
    std::uint32_t i;
    std::uint32_t j;
    std::uint64_t ci;
    std::uint64_t cj;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const;
  };

  struct Site {
    Vec3 pos{};
    double time = 0.0;
    std::uint64_t version = 0;
    std::size_t cell = 0;
    std::size_t slot = 0;
    bool alive = false;
    std::vector<std::uint32_t> visitors;
  };

  using Offset = std::array<int, 3>;

  void setup();
  bool valid(const Event& e) const;
  void push(const Event& e);
  void compact_queue();
  void execute(const Event& e);

  void on_collision(std::uint32_t i, std::uint32_t j);
  void on_site_entry(std::uint32_t i, std::uint32_t j);
  void on_cell_cross(std::uint32_t i, std::uint32_t code);
  void on_tick(std::uint32_t kind);

  void predict(std::uint32_t i, std::span<const Offset> offsets);
  void schedule_crossing(std::uint32_t i);
  void place_site(std::uint32_t j, const Vec3& pos, std::size_t cell);
  void record_flight(std::uint32_t i, double speed);
  void check_conservation() const;

  std::size_t cell_index(const std::array<int, 3>& c) const;

  SimConfig cfg_;
  SimState state_;
  double now_ = 0.0;
  double r_ex_ = 0.0;

  std::size_t nc_ = 0;
  double cell_size_ = 0.0;
  std::vector<std::array<int, 3>> cell_of_;
  std::vector<std::vector<std::uint32_t>> cell_particles_;
  std::vector<std::size_t> slot_in_cell_;
  std::vector<std::vector<std::uint32_t>> cell_sites_;
  std::vector<Site> sites_;

  std::vector<std::uint64_t> counter_;
  std::vector<double> last_collision_;
  std::vector<double> flight_start_;

  std::vector<Event> heap_;  // min-heap under Later
  std::size_t compact_threshold_ = 0;

  std::size_t events_ = 0;
  std::size_t collisions_ = 0;
  double path_sum_ = 0.0, path_sq_ = 0.0, time_sum_ = 0.0, time_sq_ = 0.0;
  std::size_t flights_ = 0;
  std::vector<ExchangeEvent> exchanges_;
  std::vector<double> speed_samples_;
  double energy0_ = 0.0;
  Vec3 momentum0_{};
  double momentum_scale_ = 0.0;

  // Scratch buffers for batched contact solves.
  std::vector<double> bx_, by_, bz_, bvx_, bvy_, bvz_, bt_;
  std::vector<std::uint32_t> bid_;
};

/// Runs cfg from init_state to t_end.
SimResult run(const SimConfig& cfg);

}  // namespace qfluid::kinsim
