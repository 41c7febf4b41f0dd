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

#include "qfluid/kinsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "qfluid/errors.hpp"
#include "qfluid/simd/kernels.hpp"

namespace qfluid::kinsim {

namespace {

using Offset = std::array<int, 3>;

constexpr std::array<Offset, 27> make_all_offsets() {
  std::array<Offset, 27> out{};
  std::size_t n = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) out[n++] = {a, b, c};
  return out;
}

// Nine cells that enter the neighbourhood after a crossing along `axis` in direction `dir`.
constexpr std::array<Offset, 9> make_slab(int axis, int dir) {
  std::array<Offset, 9> out{};
  std::size_t n = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      Offset o{};
      o[axis] = dir;
      o[(axis + 1) % 3] = a;
      o[(axis + 2) % 3] = b;
      out[n++] = o;
    }
  return out;
}

constexpr auto kAllOffsets = make_all_offsets();
constexpr std::array<std::array<std::array<Offset, 9>, 2>, 3> kSlabs{{
    {make_slab(0, -1), make_slab(0, 1)},
    {make_slab(1, -1), make_slab(1, 1)},
    {make_slab(2, -1), make_slab(2, 1)},
}};

// Overlap beyond this relative depth is an invariant breach.
constexpr double kOverlapTolerance = 1e-9;
// Allowed relative energy/momentum drift per million events.
constexpr double kDriftPerMillionEvents = 1e-9;

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return 0.0;
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + (v[hi] - v[lo]) * frac;
}

MeanWithError mean_with_error(std::size_t n, double sum, double sum_sq) {
  MeanWithError r;
  r.count = n;
  r.sum = sum;
  if (n == 0) return r;
  r.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - sum * r.mean) / static_cast<double>(n - 1));
    r.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return r;
}

}  // namespace

DistributionSummary summarize(std::vector<double> values) {
  DistributionSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sq = 0.0;
  for (double v : values) {
    s.sum += v;
    sq += v * v;
  }
  const MeanWithError m = mean_with_error(values.size(), s.sum, sq);
  s.mean = m.mean;
  s.std_error = m.std_error;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.q10 = quantile_sorted(values, 0.10);
  s.q25 = quantile_sorted(values, 0.25);
  s.median = quantile_sorted(values, 0.50);
  s.q75 = quantile_sorted(values, 0.75);
  s.q90 = quantile_sorted(values, 0.90);
  return s;
}

bool Simulator::Later::operator()(const Event& a, const Event& b) const {
  return std::tie(a.time, a.kind, a.i, a.j, a.ci, a.cj) > std::tie(b.time, b.kind, b.i, b.j, b.ci, b.cj);
}

Simulator::Simulator(const SimConfig& cfg) : cfg_(cfg), state_(init_state(cfg)) { setup(); }

Simulator::Simulator(const SimConfig& cfg, SimState initial) : cfg_(cfg), state_(std::move(initial)) {
  if (state_.size() != cfg_.N) throw InputError("N", "initial state holds a different number of particles");
  state_.box = cfg_.box;
  state_.d_hs = cfg_.d_hs;
  state_.m = cfg_.m;
  setup();
}

std::size_t Simulator::cell_index(const std::array<int, 3>& c) const {
  return (static_cast<std::size_t>(c[0]) * nc_ + static_cast<std::size_t>(c[1])) * nc_ +
         static_cast<std::size_t>(c[2]);
}

void Simulator::setup() {
  cfg_.validate();
  r_ex_ = cfg_.exchange_radius();
  const std::size_t n = state_.size();
  const double L = cfg_.box;
  const double reach = std::max(cfg_.d_hs, r_ex_);

  const auto widest = static_cast<long>(std::floor(L / (reach * (1.0 + 1e-9))));
  if (widest < 3) throw InputError("box", "edge must exceed 3 * max(d_hs, r_ex)");
  const long wanted = std::lround(std::cbrt(static_cast<double>(n) / 2.0));
  nc_ = static_cast<std::size_t>(std::clamp(wanted, 3L, widest));
  cell_size_ = L / static_cast<double>(nc_);

  now_ = state_.time;
  state_.synchronize();

  const std::size_t cells = nc_ * nc_ * nc_;
  cell_particles_.assign(cells, {});
  cell_sites_.assign(cells, {});
  cell_of_.assign(n, {});
  slot_in_cell_.assign(n, 0);
  const std::array<std::vector<double>*, 3> coords{&state_.x, &state_.y, &state_.z};
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      double& c = (*coords[k])[i];
      c -= L * std::floor(c / L);
      const long idx = static_cast<long>(std::floor(c / cell_size_));
      cell_of_[i][k] = static_cast<int>(std::clamp(idx, 0L, static_cast<long>(nc_) - 1));
    }
    auto& list = cell_particles_[cell_index(cell_of_[i])];
    slot_in_cell_[i] = list.size();
    list.push_back(static_cast<std::uint32_t>(i));
  }

  sites_.assign(n, {});
  counter_.assign(n, 0);
  last_collision_.assign(n, -std::numeric_limits<double>::infinity());
  flight_start_.assign(n, std::numeric_limits<double>::quiet_NaN());
  heap_.clear();
  compact_threshold_ = std::max<std::size_t>(std::size_t{1} << 16, 64 * n);

  energy0_ = state_.kinetic_energy();
  momentum0_ = state_.momentum();
  momentum_scale_ = cfg_.m * simd::velocity_sums(state_.vx, state_.vy, state_.vz).sum_speed;

  for (std::uint32_t i = 0; i < n; ++i) {
    predict(i, kAllOffsets);
    schedule_crossing(i);
  }
  if (cfg_.sample_interval > 0.0) push({std::max(cfg_.warmup, now_), Kind::Tick, kSampleTick, 0, 0, 0});
  if (cfg_.reference == ExchangeReference::Stride) push({now_, Kind::Tick, kSnapshotTick, 0, 0, 0});
}

void Simulator::push(const Event& e) {
  heap_.push_back(e);
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  if (heap_.size() > compact_threshold_) compact_queue();
}

void Simulator::compact_queue() {
  std::erase_if(heap_, [this](const Event& e) { return !valid(e); });
  std::make_heap(heap_.begin(), heap_.end(), Later{});
  compact_threshold_ = std::max(compact_threshold_, 2 * heap_.size());
}

bool Simulator::valid(const Event& e) const {
  switch (e.kind) {
    case Kind::Collision: return counter_[e.i] == e.ci && counter_[e.j] == e.cj;
    case Kind::SiteEntry: return counter_[e.i] == e.ci && sites_[e.j].alive && sites_[e.j].version == e.cj;
    case Kind::CellCross: return counter_[e.i] == e.ci;
    case Kind::Tick: return true;
  }
  return false;
}

void Simulator::run() { run_until(cfg_.t_end); }

void Simulator::run_until(double t) {
  const double limit = std::min(t, cfg_.t_end);
  while (!heap_.empty() && heap_.front().time <= limit) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    const Event e = heap_.back();
    heap_.pop_back();
    if (!valid(e)) continue;
    execute(e);
  }
  if (limit > now_) {
    now_ = limit;
    state_.time = now_;
  }
  check_conservation();
}

std::size_t Simulator::advance_collisions(std::size_t count) {
  const std::size_t start = collisions_;
  while (collisions_ - start < count && !heap_.empty() && heap_.front().time <= cfg_.t_end) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    const Event e = heap_.back();
    heap_.pop_back();
    if (!valid(e)) continue;
    execute(e);
  }
  return collisions_ - start;
}

void Simulator::execute(const Event& e) {
  if (e.time < now_) {
    throw SimulationError("event queue went backwards: event at " + std::to_string(e.time) + " s, clock at " +
                          std::to_string(now_) + " s");
  }
  now_ = e.time;
  state_.time = now_;
  ++events_;
  switch (e.kind) {
    case Kind::Collision: on_collision(e.i, e.j); break;
    case Kind::SiteEntry: on_site_entry(e.i, e.j); break;
    case Kind::CellCross: on_cell_cross(e.i, e.j); break;
    case Kind::Tick: on_tick(e.i); break;
  }
}

void Simulator::predict(std::uint32_t i, std::span<const Offset> offsets) {
  const Vec3 pi = state_.position(i, now_);
  const std::array<int, 3>& ci = cell_of_[i];
  const double L = cfg_.box;
  const int nc = static_cast<int>(nc_);
  const double overlap_r2 = cfg_.d_hs * cfg_.d_hs * (1.0 - 2.0 * kOverlapTolerance);
  const bool eligible = std::isfinite(last_collision_[i]);

  auto clear = [this] {
    bx_.clear(), by_.clear(), bz_.clear(), bvx_.clear(), bvy_.clear(), bvz_.clear(), bid_.clear();
  };
  auto solve = [this](double radius, simd::InsidePolicy policy) {
    bt_.resize(bx_.size());
    simd::contact_times({bx_, by_, bz_, bvx_, bvy_, bvz_}, radius, policy, bt_);
  };

  // Pass 1: particles.
  clear();
  for (const Offset& o : offsets) {
    std::array<int, 3> c{};
    Vec3 shift{};
    for (int k = 0; k < 3; ++k) {
      int w = ci[k] + o[k];
      if (w < 0) {
        w += nc;
        shift[k] = -L;
      } else if (w >= nc) {
        w -= nc;
        shift[k] = L;
      }
      c[k] = w;
    }
    for (std::uint32_t j : cell_particles_[cell_index(c)]) {
      if (j == i) continue;
      const Vec3 pj = state_.position(j, now_);
      const double dx = (pj[0] + shift[0]) - pi[0];
      const double dy = (pj[1] + shift[1]) - pi[1];
      const double dz = (pj[2] + shift[2]) - pi[2];
      if (dx * dx + dy * dy + dz * dz < overlap_r2) {
        throw SimulationError("particles " + std::to_string(i) + " and " + std::to_string(j) + " overlap at t = " +
                              std::to_string(now_) + " s");
      }
      bx_.push_back(dx), by_.push_back(dy), bz_.push_back(dz);
      bvx_.push_back(state_.vx[j] - state_.vx[i]);
      bvy_.push_back(state_.vy[j] - state_.vy[i]);
      bvz_.push_back(state_.vz[j] - state_.vz[i]);
      bid_.push_back(j);
    }
  }
  solve(cfg_.d_hs, simd::InsidePolicy::Immediate);
  for (std::size_t k = 0; k < bt_.size(); ++k) {
    if (!std::isfinite(bt_[k])) continue;
    const std::uint32_t a = std::min(i, bid_[k]);
    const std::uint32_t b = std::max(i, bid_[k]);
    push({now_ + bt_[k], Kind::Collision, a, b, counter_[a], counter_[b]});
  }

  if (!eligible) return;

  // Pass 2: reference sites laid down before i last changed course.
  clear();
  for (const Offset& o : offsets) {
    std::array<int, 3> c{};
    Vec3 shift{};
    for (int k = 0; k < 3; ++k) {
      int w = ci[k] + o[k];
      if (w < 0) {
        w += nc;
        shift[k] = -L;
      } else if (w >= nc) {
        w -= nc;
        shift[k] = L;
      }
      c[k] = w;
    }
    for (std::uint32_t j : cell_sites_[cell_index(c)]) {
      if (j == i) continue;
      const Site& s = sites_[j];
      if (!(last_collision_[i] > s.time)) continue;
      bx_.push_back((s.pos[0] + shift[0]) - pi[0]);
      by_.push_back((s.pos[1] + shift[1]) - pi[1]);
      bz_.push_back((s.pos[2] + shift[2]) - pi[2]);
      bvx_.push_back(-state_.vx[i]);
      bvy_.push_back(-state_.vy[i]);
      bvz_.push_back(-state_.vz[i]);
      bid_.push_back(j);
    }
  }
  solve(r_ex_, simd::InsidePolicy::Never);
  for (std::size_t k = 0; k < bt_.size(); ++k) {
    if (!std::isfinite(bt_[k])) continue;
    const std::uint32_t j = bid_[k];
    push({now_ + bt_[k], Kind::SiteEntry, i, j, counter_[i], sites_[j].version});
  }
}

void Simulator::schedule_crossing(std::uint32_t i) {
  // A lone particle has nobody to meet; cell bookkeeping would only burn events.
  if (state_.size() < 2) return;
  const Vec3 p = state_.position(i, now_);
  const Vec3 v = state_.velocity(i);
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t code = 0;
  for (int k = 0; k < 3; ++k) {
    if (v[k] == 0.0) continue;
    const double edge = (cell_of_[i][k] + (v[k] > 0.0 ? 1 : 0)) * cell_size_;
    const double t = std::max(0.0, (edge - p[k]) / v[k]);
    if (t < best) {
      best = t;
      code = static_cast<std::uint32_t>(2 * k + (v[k] > 0.0 ? 1 : 0));
    }
  }
  if (std::isfinite(best)) push({now_ + best, Kind::CellCross, i, code, counter_[i], 0});
}

void Simulator::on_cell_cross(std::uint32_t i, std::uint32_t code) {
  state_.advance(i, now_);
  const int axis = static_cast<int>(code / 2);
  const int dir = (code % 2) ? 1 : -1;
  const int nc = static_cast<int>(nc_);

  auto& old_list = cell_particles_[cell_index(cell_of_[i])];
  const std::size_t slot = slot_in_cell_[i];
  old_list[slot] = old_list.back();
  slot_in_cell_[old_list[slot]] = slot;
  old_list.pop_back();

  std::vector<double>& coord = axis == 0 ? state_.x : (axis == 1 ? state_.y : state_.z);
  int& c = cell_of_[i][axis];
  c += dir;
  if (c == nc) {
    c = 0;
    coord[i] -= cfg_.box;
  } else if (c < 0) {
    c = nc - 1;
    coord[i] += cfg_.box;
  }

  auto& new_list = cell_particles_[cell_index(cell_of_[i])];
  slot_in_cell_[i] = new_list.size();
  new_list.push_back(i);

  predict(i, kSlabs[axis][dir > 0 ? 1 : 0]);
  schedule_crossing(i);
}

void Simulator::record_flight(std::uint32_t i, double speed) {
  const double start = flight_start_[i];
  if (start >= cfg_.warmup) {
    const double dt = now_ - start;
    const double len = speed * dt;
    path_sum_ += len;
    path_sq_ += len * len;
    time_sum_ += dt;
    time_sq_ += dt * dt;
    ++flights_;
  }
  flight_start_[i] = now_;
}

void Simulator::place_site(std::uint32_t j, const Vec3& pos, std::size_t cell) {
  Site& s = sites_[j];
  if (s.alive) {
    auto& list = cell_sites_[s.cell];
    list[s.slot] = list.back();
    sites_[list[s.slot]].slot = s.slot;
    list.pop_back();
  }
  s.pos = pos;
  s.time = now_;
  ++s.version;
  s.visitors.clear();
  s.alive = true;
  s.cell = cell;
  s.slot = cell_sites_[cell].size();
  cell_sites_[cell].push_back(j);
}

void Simulator::on_collision(std::uint32_t i, std::uint32_t j) {
  state_.advance(i, now_);
  state_.advance(j, now_);
  const double speed_i = norm(state_.velocity(i));
  const double speed_j = norm(state_.velocity(j));
  resolve_collision(state_, i, j, kOverlapTolerance);

  ++collisions_;
  ++counter_[i];
  ++counter_[j];
  record_flight(i, speed_i);
  record_flight(j, speed_j);
  last_collision_[i] = now_;
  last_collision_[j] = now_;

  if (cfg_.reference == ExchangeReference::LastCollision) {
    place_site(i, state_.position(i, now_), cell_index(cell_of_[i]));
    place_site(j, state_.position(j, now_), cell_index(cell_of_[j]));
  }

  predict(i, kAllOffsets);
  predict(j, kAllOffsets);
  schedule_crossing(i);
  schedule_crossing(j);
}

void Simulator::on_site_entry(std::uint32_t i, std::uint32_t j) {
  Site& s = sites_[j];
  if (std::find(s.visitors.begin(), s.visitors.end(), i) != s.visitors.end()) return;
  const Vec3 pj = state_.position(j, now_);
  const Vec3 away = state_.minimum_image({pj[0] - s.pos[0], pj[1] - s.pos[1], pj[2] - s.pos[2]});
  if (norm(away) < r_ex_) return;  // j has not vacated its spot
  s.visitors.push_back(i);
  if (s.time >= cfg_.warmup) exchanges_.push_back({i, j, now_, now_ - s.time});
}

void Simulator::on_tick(std::uint32_t kind) {
  if (kind == kSampleTick) {
    if (now_ >= cfg_.warmup) {
      for (std::size_t i = 0; i < state_.size(); ++i) speed_samples_.push_back(norm(state_.velocity(i)));
    }
    check_conservation();
    const double next = now_ + cfg_.sample_interval;
    if (next <= cfg_.t_end) push({next, Kind::Tick, kSampleTick, 0, 0, 0});
    return;
  }
  for (std::uint32_t j = 0; j < state_.size(); ++j) {
    place_site(j, state_.position(j, now_), cell_index(cell_of_[j]));
  }
  const double next = now_ + cfg_.snapshot_stride;
  if (next <= cfg_.t_end) push({next, Kind::Tick, kSnapshotTick, 0, 0, 0});
}

void Simulator::check_conservation() const {
  const double allowed = kDriftPerMillionEvents * std::max(1.0, static_cast<double>(events_) / 1e6);
  const double energy = state_.kinetic_energy();
  const double de = std::abs(energy - energy0_) / energy0_;
  const Vec3 p = state_.momentum();
  const double dp = momentum_scale_ > 0.0
                        ? norm({p[0] - momentum0_[0], p[1] - momentum0_[1], p[2] - momentum0_[2]}) / momentum_scale_
                        : 0.0;
  if (de > allowed || dp > allowed) {
    throw SimulationError("conservation drift after " + std::to_string(events_) +
                          " events: energy " + std::to_string(de) + ", momentum " + std::to_string(dp));
  }
}

SimState Simulator::snapshot() const {
  SimState s = state_;
  s.time = now_;
  s.synchronize();
  return s;
}

SimResult Simulator::result() const {
  SimResult r;
  r.config = cfg_;
  r.cells_per_edge = nc_;
  r.events = events_;
  r.collisions = collisions_;
  r.free_path = mean_with_error(flights_, path_sum_, path_sq_);
  r.free_time = mean_with_error(flights_, time_sum_, time_sq_);
  {
    double sum = 0.0, sq = 0.0;
    for (double v : speed_samples_) {
      sum += v;
      sq += v * v;
    }
    r.sampled_speed = mean_with_error(speed_samples_.size(), sum, sq);
  }
  std::vector<double> waits;
  waits.reserve(exchanges_.size());
  for (const auto& e : exchanges_) waits.push_back(e.waiting_time);
  r.waiting = summarize(std::move(waits));
  r.exchanges = exchanges_;
  r.speed_samples = speed_samples_;
  r.theory = hard_sphere_theory(cfg_);
  if (flights_ > 0) {
    r.mfp_ratio = r.free_path.mean / r.theory.ell;
    r.collision_time_ratio = r.free_time.mean / r.theory.tau;
    r.collision_time_vs_mfp = r.free_time.mean / (r.free_path.mean / r.theory.mean_speed);
  }
  if (r.waiting.count > 0) r.waiting_ratio = r.waiting.mean / r.theory.tau;

  const double energy = state_.kinetic_energy();
  r.energy_drift = std::abs(energy - energy0_) / energy0_;
  const Vec3 p = state_.momentum();
  r.momentum_drift = momentum_scale_ > 0.0
                         ? norm({p[0] - momentum0_[0], p[1] - momentum0_[1], p[2] - momentum0_[2]}) / momentum_scale_
                         : 0.0;
  return r;
}

SimResult run(const SimConfig& cfg) {
  Simulator sim(cfg);
  sim.run();
  return sim.result();
}

}  // namespace qfluid::kinsim
