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

namespace qfluid::app {

namespace wp = qfluid::wavepacket;

namespace {

Json packet_json(const wp::GaussianPacket& p) {
  return {{"center", p.center}, {"width", p.width}, {"k0", p.k0}};
}

Json complex_json(const wp::ComplexEstimate& e) {
  return {{"re", e.value.real()}, {"im", e.value.imag()}, {"abs", std::abs(e.value)},
          {"error", e.error},     {"converged", e.converged}};
}

Json real_json(const wp::RealEstimate& e) {
  return {{"value", e.value}, {"error", e.error}, {"converged", e.converged}};
}

}  // namespace

CommandOutput cmd_wavepacket(const WavepacketRequest& req) {
  const wp::PacketPair& pair = req.pair;
  pair.f.validate("f");
  pair.g.validate("g");
  req.interaction.validate();

  const wp::ComplexEstimate S = wp::overlap(pair.f, pair.g, req.options);
  const wp::RealEstimate weight = wp::interference_weight(pair, req.options);
  const wp::RealEstimate total = wp::total_probability(pair, req.options);
  const wp::ComplexEstimate J = wp::exchange_matrix_element(pair.f, pair.g, req.interaction, req.options);
  const double gamma = wp::transition_rate(J.value, req.rate_constant);

  Json config;
  config["f"] = packet_json(pair.f);
  config["g"] = packet_json(pair.g);
  config["symmetry"] = wp::to_string(pair.symmetry);
  config["normalization"] = wp::to_string(pair.normalization);
  const bool gaussian = req.interaction.kind == wp::InteractionModel::Kind::Gaussian;
  config["interaction"] = {{"kind", gaussian ? "gaussian" : "contact"}, {"U0", req.interaction.U0}};
  if (gaussian) config["interaction"]["range"] = req.interaction.range;
  config["rate_constant"] = req.rate_constant;
  config["grid_points"] = req.grid_points;
  config["quadrature"] = {{"abs_tol", req.options.quadrature.abs_tol},
                          {"rel_tol", req.options.quadrature.rel_tol},
                          {"truncation_widths", req.options.truncation_widths}};

  Json result;
  result["overlap"] = complex_json(S);
  result["interference_weight"] = real_json(weight);
  result["total_probability"] = real_json(total);
  result["J"] = complex_json(J);
  result["Gamma"] = gamma;

  CommandOutput out;
  auto check = [&out](const char* what, bool converged, double error) {
    if (!converged) out.failures.push_back(std::string(what) + ": quadrature did not converge, error estimate " + format_number(error));
  };
  check("overlap", S.converged, S.error);
  check("interference_weight", weight.converged, weight.error);
  check("total_probability", total.converged, total.error);
  check("J", J.converged, J.error);

  if (req.grid_points > 0) {
    const wp::DensityGrid grid = wp::density_grid(pair, req.grid_points, req.options);
    std::string csv = "x1,x2,P\n";
    const std::size_t n = grid.x.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        csv += format_number(grid.x[i]) + "," + format_number(grid.x[j]) + "," + format_number(grid.values[i * n + j]) + "\n";
      }
    }
    out.files.push_back({"wavepacket_grid.csv", std::move(csv)});
    result["grid_file"] = "wavepacket_grid.csv";
  }

  Table t;
  t.add({"quantity", "value", "error estimate"});
  t.add({"S", format_number(S.value.real()) + (S.value.imag() < 0 ? " - " : " + ") +
                  format_number(std::abs(S.value.imag())) + "i",
         format_number(S.error)});
  t.add({"|S|^2", format_number(std::norm(S.value)), ""});
  t.add({"interference weight", format_number(weight.value), format_number(weight.error)});
  t.add({"total probability", format_number(total.value), format_number(total.error)});
  t.add({"J", format_number(J.value.real()) + (J.value.imag() < 0 ? " - " : " + ") +
                  format_number(std::abs(J.value.imag())) + "i",
         format_number(J.error)});
  t.add({"Gamma", format_number(gamma), ""});
  out.table = t.str();
  out.document = make_document(kWavepacketSchema, std::move(config), std::move(result));
  return out;
}

}  // namespace qfluid::app
