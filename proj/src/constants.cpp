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

#include "qfluid/constants.hpp"

namespace qfluid {

Quantity bohr_radius() {
  const auto& k = kConstants;
  const double a0 = 4.0 * std::numbers::pi * k.epsilon0 * k.hbar * k.hbar / (k.m_e * k.e_charge * k.e_charge);
  return {a0, Dimension::Length};
}

}  // namespace qfluid
