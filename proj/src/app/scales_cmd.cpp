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

#include <cmath>

#include "qfluid/app/commands.hpp"
#include "qfluid/constants.hpp"
#include "qfluid/errors.hpp"

namespace qfluid::app {

namespace {

double required(const std::string& text, const char* field, Dimension dim) {
  if (text.empty()) throw InputError(field, "required");
  return parse_quantity(text, field, dim).si();
}

Json quantity(double si, Dimension dim, UnitSystem units) {
  const Unit& u = display_unit(dim, units);
  return {{"value", si / u.to_si}, {"unit", u.symbol}};
}

Json optional_quantity(const std::optional<double>& si, Dimension dim, UnitSystem units) {
  return si ? quantity(*si, dim, units) : Json(nullptr);
}

std::string cell(double si, Dimension dim, UnitSystem units) {
  return format_number(si / display_unit(dim, units).to_si);
}

std::string symbol(Dimension dim, UnitSystem units) { return std::string(display_unit(dim, units).symbol); }

}  // namespace

MfpPrefactor mfp_prefactor_from_string(std::string_view s) {
  if (s == "kinetic") return MfpPrefactor::Kinetic;
  if (s == "simple") return MfpPrefactor::Simple;
  throw InputError("prefactor", "expected kinetic or simple, got '" + std::string(s) + "'");
}

VelocityConvention velocity_from_string(std::string_view s) {
  if (s == "thermal") return VelocityConvention::Thermal;
  if (s == "mean") return VelocityConvention::MeanSpeed;
  throw InputError("velocity", "expected thermal or mean, got '" + std::string(s) + "'");
}

FluidState parse_state(const StateText& text) {
  FluidState s;
  s.T = required(text.T, "T", Dimension::Temperature);
  s.n = required(text.n, "n", Dimension::NumberDensity);
  s.m = required(text.m, "m", Dimension::Mass);
  s.a = required(text.a, "a", Dimension::Length);
  if (text.U_act) {
    // An activation energy may also be given as a temperature (U / k_B).
    const Quantity q = parse_quantity(*text.U_act, "U_act");
    if (q.dimension() == Dimension::Energy) {
      s.U_act = q.si();
    } else if (q.dimension() == Dimension::Temperature) {
      s.U_act = q.si() * kConstants.k_B;
    } else {
      throw InputError("U_act", "expected an energy or a temperature, got '" + *text.U_act + "'");
    }
  }
  if (text.tau0) s.tau0 = parse_quantity(*text.tau0, "tau0", Dimension::Time).si();
  if (text.system_size) s.system_size = parse_quantity(*text.system_size, "system_size", Dimension::Length).si();
  if (text.dynamics == "gaslike") {
    s.dynamics = Dynamics::Gaslike;
  } else if (text.dynamics == "liquidlike") {
    s.dynamics = Dynamics::Liquidlike;
    if (!s.tau0) s.tau0 = kDefaultAttemptTime;
  } else {
    throw InputError("dynamics", "expected gaslike or liquidlike, got '" + text.dynamics + "'");
  }
  s.validate();
  return s;
}

Json echo_state(const FluidState& s) {
  Json j;
  j["T"] = quantity_text(s.T, units::K);
  j["n"] = quantity_text(s.n, units::per_m3);
  j["m"] = quantity_text(s.m, units::kg);
  j["a"] = quantity_text(s.a, units::m);
  j["dynamics"] = s.dynamics == Dynamics::Gaslike ? "gaslike" : "liquidlike";
  if (s.U_act) j["U_act"] = quantity_text(*s.U_act, units::J);
  if (s.tau0) j["tau0"] = quantity_text(*s.tau0, units::s);
  if (s.system_size) j["system_size"] = quantity_text(*s.system_size, units::m);
  return j;
}

StateText state_from_echo(const Json& echo) {
  StateText t;
  t.T = echo.at("T").get<std::string>();
  t.n = echo.at("n").get<std::string>();
  t.m = echo.at("m").get<std::string>();
  t.a = echo.at("a").get<std::string>();
  t.dynamics = echo.value("dynamics", "gaslike");
  if (echo.contains("U_act")) t.U_act = echo["U_act"].get<std::string>();
  if (echo.contains("tau0")) t.tau0 = echo["tau0"].get<std::string>();
  if (echo.contains("system_size")) t.system_size = echo["system_size"].get<std::string>();
  return t;
}

Json scales_result(const ScaleReport& r, UnitSystem units) {
  Json j;
  j["sigma"] = quantity(r.sigma, Dimension::Area, units);
  j["ell"] = optional_quantity(r.ell, Dimension::Length, units);
  j["collisionless"] = r.collisionless;
  j["x"] = quantity(r.x, Dimension::Length, units);
  j["lambda_dB"] = quantity(r.lambda_dB, Dimension::Length, units);
  j["v_th"] = quantity(r.v_th, Dimension::Velocity, units);
  j["tau"] = optional_quantity(r.tau, Dimension::Time, units);
  j["tau_x"] = quantity(r.tau_x, Dimension::Time, units);
  j["tau_planck"] = quantity(r.tau_planck, Dimension::Time, units);
  if (r.tau_l) {
    j["tau_l"] = quantity(r.tau_l->seconds, Dimension::Time, units);
    j["tau_l"]["frozen"] = r.tau_l->frozen;
    j["tau_l"]["exponent"] = r.tau_l->exponent;
  } else {
    j["tau_l"] = nullptr;
  }
  j["degeneracy"] = r.degeneracy;
  j["bec_threshold"] = kBecDegeneracy;
  return j;
}

namespace {

void scale_rows(Table& t, const ScaleReport& r, UnitSystem u) {
  t.add({"sigma", cell(r.sigma, Dimension::Area, u), symbol(Dimension::Area, u), "total cross-section 8 pi a^2"});
  if (r.ell) {
    t.add({"ell", cell(*r.ell, Dimension::Length, u), symbol(Dimension::Length, u),
           r.collisionless ? "system size (collisionless)" : "mean free path"});
  } else {
    t.add({"ell", "-", "", "no mean free path (liquidlike)"});
  }
  t.add({"x", cell(r.x, Dimension::Length, u), symbol(Dimension::Length, u), "interparticle spacing n^(-1/3)"});
  t.add({"lambda_dB", cell(r.lambda_dB, Dimension::Length, u), symbol(Dimension::Length, u), "thermal de Broglie wavelength"});
  t.add({"v_th", cell(r.v_th, Dimension::Velocity, u), symbol(Dimension::Velocity, u), "thermal velocity"});
  if (r.tau) t.add({"tau", cell(*r.tau, Dimension::Time, u), "s", "exchange time ell/v"});
  t.add({"tau_x", cell(r.tau_x, Dimension::Time, u), "s", "x/v"});
  t.add({"tau_planck", cell(r.tau_planck, Dimension::Time, u), "s", "h/(k_B T), x/v at x = lambda_dB"});
  if (r.tau_l) {
    t.add({"tau_l", format_number(r.tau_l->seconds), "s",
           r.tau_l->frozen ? "liquid relaxation time (overflow: frozen)" : "liquid relaxation time"});
  }
  t.add({"n lambda^3", format_number(r.degeneracy), "", "degeneracy (BEC above 2.612)"});
}

}  // namespace

CommandOutput cmd_scales(const FluidState& state, const ScaleOptions& options, UnitSystem units) {
  const ScaleReport r = full_report(state, options);
  Json config;
  config["state"] = echo_state(state);
  config["prefactor"] = options.prefactor == MfpPrefactor::Kinetic ? "kinetic" : "simple";
  config["velocity"] = options.velocity == VelocityConvention::Thermal ? "thermal" : "mean";
  config["units"] = to_string(units);

  Table t;
  t.add({"quantity", "value", "unit", "meaning"});
  scale_rows(t, r, units);
  return {make_document(kScalesSchema, std::move(config), scales_result(r, units)), t.str(), {}, {}};
}

CommandOutput cmd_classify(const ClassifyRequest& req, UnitSystem units) {
  const ScaleReport scales = full_report(req.state, req.options);
  const RegimeReport r = classify(req.state, scales, req.window, req.stringent);

  Json config;
  config["state"] = echo_state(req.state);
  config["t_obs"] = quantity_text(req.window.t_obs, units::s);
  config["onset_multiplier"] = req.window.onset_multiplier;
  config["stringent"] = req.stringent;
  config["prefactor"] = req.options.prefactor == MfpPrefactor::Kinetic ? "kinetic" : "simple";
  config["velocity"] = req.options.velocity == VelocityConvention::Thermal ? "thermal" : "mean";
  config["units"] = to_string(units);

  Json result;
  result["statistics_phase"] = to_string(r.statistics_phase);
  result["governing_time"] = to_string(r.governing_time);
  result["onset_time"] = {{"value", r.onset_time}, {"unit", "s"}};
  result["quantum_mechanical"] = r.quantum_mechanical;
  result["degenerate"] = r.degenerate;
  result["margins"] = {{"time_ratio", r.margins.time_ratio},
                       {"wavelength_ratio", r.margins.wavelength_ratio},
                       {"degeneracy_ratio", r.margins.degeneracy_ratio}};
  result["scales"] = scales_result(scales, units);

  Table t;
  t.add({"statistics phase", std::string(to_string(r.statistics_phase))});
  t.add({"governing time", std::string(to_string(r.governing_time)), format_number(r.onset_time) + " s"});
  t.add({"t_obs / onset", format_number(r.margins.time_ratio)});
  t.add({"lambda_dB / x", format_number(r.margins.wavelength_ratio), r.quantum_mechanical ? "quantum" : "classical"});
  t.add({"n lambda^3 / 2.612", format_number(r.margins.degeneracy_ratio), r.degenerate ? "degenerate" : "non-degenerate"});
  return {make_document(kClassifySchema, std::move(config), std::move(result)), t.str(), {}, {}};
}

}  // namespace qfluid::app
