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

// Named states used throughout the tests and demos.

#pragma once

#include "ghzdet/tensor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ghzdet {

/// alpha|0...0> + beta|1...1>; (alpha, beta) is normalized here.
inline Ket generalized_ghz(int n, Complex alpha, Complex beta) {
  if (n < 1) throw std::invalid_argument("generalized_ghz needs n >= 1");
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim_of(n)));
  amps(0) = alpha;
  amps(amps.size() - 1) = beta;
  return Ket(n, amps.normalized());
}

inline Ket ghz(int n) { return generalized_ghz(n, 1.0, 1.0); }

/// (|0...0> + eta|1...1>)/sqrt(2) with eta = e^{i phi}.
inline Ket eta_state(int n, double phi) { return generalized_ghz(n, 1.0, std::polar(1.0, phi)); }

/// Equal superposition of the weight-one basis kets.
inline Ket w_state(int n) {
  if (n < 1) throw std::invalid_argument("w_state needs n >= 1");
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim_of(n)));
  for (int q = 0; q < n; ++q) amps(Eigen::Index{1} << q) = 1.0;
  return Ket(n, amps.normalized());
}

/// Tensor product of one-qubit vectors, first factor on qubit 1.
inline Ket product_state(const std::vector<Vector2c>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_state needs at least one factor");
  CVector v = CVector::Ones(1);
  for (const auto& f : factors) {
    CVector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * f(0);
      next(2 * i + 1) = v(i) * f(1);
    }
    v = std::move(next);
  }
  return Ket(static_cast<int>(factors.size()), v.normalized());
}

/// |0...0>.
inline Ket zero_state(int n) { return Ket::basis(n, 0); }

/// (|0000> + |0011> + |1100> - |1111>)/2; every one-qubit marginal is I/2.
inline Ket cluster4() {
  CVector amps = CVector::Zero(16);
  amps(0b0000) = 0.5;
  amps(0b0011) = 0.5;
  amps(0b1100) = 0.5;
  amps(0b1111) = -0.5;
  return Ket(4, amps);
}

/// a ⊗ b with a on the leading qubits.
inline Ket kron(const Ket& a, const Ket& b) {
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  CVector v(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v.segment(i * y.size(), y.size()) = x(i) * y;
  return Ket(a.num_qubits() + b.num_qubits(), v);
}

}  // namespace ghzdet
