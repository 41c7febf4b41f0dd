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

#include "qfluid/regimes.hpp"

#include <algorithm>
#include <cmath>

#include "qfluid/constants.hpp"
#include "qfluid/errors.hpp"

namespace qfluid {

void ObservationWindow::validate() const {
  if (!(t_obs >= 0.0) || !std::isfinite(t_obs)) throw InputError("t_obs", "must be non-negative and finite");
  if (!(onset_multiplier >= 1.0) || !std::isfinite(onset_multiplier)) {
    throw InputError("onset_multiplier", "must be >= 1");
  }
}

std::string_view to_string(StatisticsPhase p) {
  switch (p) {
    case StatisticsPhase::Inactive: return "inactive";
    case StatisticsPhase::Onset: return "onset";
    case StatisticsPhase::Active: return "active";
    case StatisticsPhase::Classical: return "classical";
  }
  return "?";
}

std::string_view to_string(GoverningTime g) {
  switch (g) {
    case GoverningTime::Tau: return "tau";
    case GoverningTime::TauX: return "tau_x";
    case GoverningTime::TauL: return "tau_l";
  }
  return "?";
}

namespace {

OnsetTime onset_from_report(const ScaleReport& r, bool stringent) {
  if (r.tau_l) return {r.tau_l->seconds, GoverningTime::TauL};
  if (stringent) return {std::min(r.tau_planck, *r.tau), GoverningTime::TauX};
  return {*r.tau, GoverningTime::Tau};
}

}  // namespace

OnsetTime onset_time(const FluidState& s, bool stringent) {
  return onset_from_report(full_report(s), stringent);
}

RegimeReport classify(const FluidState& s, const ObservationWindow& w, bool stringent) {
  return classify(s, full_report(s), w, stringent);
}

RegimeReport classify(const FluidState& s, const ScaleReport& scales, const ObservationWindow& w,
                      bool stringent) {
  s.validate();
  w.validate();
  const OnsetTime onset = onset_from_report(scales, stringent);

  RegimeReport r{};
  r.quantum_mechanical = scales.lambda_dB >= scales.x;
  r.degenerate = scales.degeneracy > kBecDegeneracy;
  r.governing_time = onset.which;
  r.onset_time = onset.seconds;
  r.margins = {w.t_obs / onset.seconds, scales.lambda_dB / scales.x, scales.degeneracy / kBecDegeneracy};

  if (w.t_obs < onset.seconds) {
    r.statistics_phase = StatisticsPhase::Inactive;
  } else if (!r.quantum_mechanical) {
    r.statistics_phase = StatisticsPhase::Classical;
  } else if (w.t_obs < w.onset_multiplier * onset.seconds) {
    r.statistics_phase = StatisticsPhase::Onset;
  } else {
    r.statistics_phase = StatisticsPhase::Active;
  }
  return r;
}

}  // namespace qfluid
