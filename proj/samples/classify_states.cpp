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

// Classifies a few states and prints the GHZ certificate when there is one.

#include "ghzdet/ghzdet.hpp"

#include <iostream>

int main() {
  using namespace ghzdet;
  const std::vector<std::pair<std::string, Ket>> states = {
      {"GHZ_3", ghz(3)},
      {"W_3", w_state(3)},
      {"LU orbit of 0.6|0000> + 0.8|1111>", random_lu_orbit(generalized_ghz(4, 0.6, 0.8), 1)},
      {"Haar random, 4 qubits", haar_random_ket(4, 2)},
  };
  for (const auto& [name, psi] : states) {
    const Classification c = classify(psi);
    std::cout << name << ": " << to_string(c.verdict) << " (" << c.reason << ")\n";
    if (!c.certificate) continue;
    const GhzCertificate& cert = *c.certificate;
    std::cout << "  |alpha| = " << std::abs(cert.alpha) << ", |beta| = " << std::abs(cert.beta) << ", support "
              << cert.support.str() << " / " << cert.partner().str() << '\n';
    const Ket sib = sibling(psi, cert);
    std::cout << "  sibling overlap " << std::abs(inner(psi, sib)) << ", panel distance "
              << panel_distance(panel_of_pure(psi), panel_of_pure(sib)) << '\n';
  }
  return 0;
}
