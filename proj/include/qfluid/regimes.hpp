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

#include <string_view>

#include "qfluid/scales.hpp"

namespace qfluid {

struct ObservationWindow {
  /// Elapsed time since the system was prepared (s).
  double t_obs = 0.0;
  /// Statistics count as established once t_obs >= onset_multiplier * onset time.
  double onset_multiplier = 10.0;

  void validate() const;
};

enum class StatisticsPhase {
  /// t_obs below the onset time: no pair exchanges yet, Boltzmann statistics.
  Inactive,
  /// Exchanges have begun but t_obs < k * onset time.
  Onset,
  /// Exchanges established and lambda_dB >= x.
  Active,
  /// Exchanges operating but lambda_dB < x: a classical fluid.
  Classical,
};

/// Which time scale was compared against t_obs.
enum class GoverningTime { Tau, TauX, TauL };

std::string_view to_string(StatisticsPhase p);
std::string_view to_string(GoverningTime g);

struct RegimeMargins {
  double time_ratio;        // t_obs / onset time
  double wavelength_ratio;  // lambda_dB / x
  double degeneracy_ratio;  // n lambda^3 / 2.612
};

struct RegimeReport {
  bool quantum_mechanical;
  bool degenerate;
  StatisticsPhase statistics_phase;
  GoverningTime governing_time;
  double onset_time;
  RegimeMargins margins;
};

struct OnsetTime {
  double seconds;
  GoverningTime which;
};

/// Gaslike: tau = l/v, or with `stringent` the Planckian form of tau_x = x/v at
/// x = lambda_dB, h/(k_B T), capped at tau. Liquidlike: tau_l regardless of `stringent`.
OnsetTime onset_time(const FluidState& s, bool stringent);

RegimeReport classify(const FluidState& s, const ObservationWindow& w, bool stringent);

/// Same as above with a precomputed report for `s` (shared code path for grids).
RegimeReport classify(const FluidState& s, const ScaleReport& scales, const ObservationWindow& w,
                      bool stringent);

}  // namespace qfluid
