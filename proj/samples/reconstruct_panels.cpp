// Copyright 2026 The ghzdet Authors
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

// Builds panels from known states and recovers the states from the panels.

#include "ghzdet/ghzdet.hpp"

#include <iostream>

int main() {
  using namespace ghzdet;
  const std::vector<std::pair<std::string, Ket>> sources = {
      {"Haar random, 5 qubits", haar_random_ket(5, 7)},
      {"cluster state", cluster4()},
      {"eta state, phi = 0.8", eta_state(4, 0.8)},
  };
  for (const auto& [name, psi] : sources) {
    const ReconstructionResult r = reconstruct(panel_of_pure(psi));
    std::cout << name << ": " << to_string(r.outcome) << ", residual " << r.residual << '\n';
    if (r.outcome == Outcome::Unique) {
      std::cout << "  fidelity with source " << fidelity(*r.state, psi) << '\n';
    } else if (r.outcome == Outcome::GhzFamily) {
      const double phi = family_phase_of(*r.certificate, psi);
      std::cout << "  source is the family member at phi = " << phi << ", fidelity "
                << fidelity(phase_family(*r.certificate, phi), psi) << '\n';
    } else {
      std::cout << "  " << r.reason << '\n';
    }
  }
  return 0;
}
