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

// Brute-force cross-checks: a numerical sibling search that knows nothing
// about GHZ structure, random state generators, and the chi example.
//
// Every panel-sharing pure state is L psi for a unitary L on qubit 1. The L
// that fix all entries k >= 2 form the unitary group of a *-subalgebra of
// M_2: scalars, a diagonal torus, or all of U(2). A non-scalar solution
// therefore exists iff a reflection n.sigma (n on the unit sphere) solves,
// so the search runs over the sphere and never meets the scalar locus.

#pragma once

#include "ghzdet/descent.hpp"
#include "ghzdet/ghz.hpp"
#include "ghzdet/panel.hpp"
#include "ghzdet/states.hpp"
#include "ghzdet/tensor.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace ghzdet {

// ---------------------------------------------------------------------------
// Random states and unitaries

/// Standard complex Gaussian amplitudes, normalized. Deterministic per seed.
inline Ket haar_random_ket(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("haar_random_ket needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CVector v(static_cast<Eigen::Index>(dim_of(n)));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  return Ket(n, std::move(v));
}

/// Haar-distributed 2x2 unitary: QR of a Gaussian matrix with R's diagonal
/// phases pushed into Q.
inline Matrix2c haar_random_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix2c z;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double re = g(rng);
      const double im = g(rng);
      z(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix2c> qr(z);
  Matrix2c q = qr.householderQ() * Matrix2c::Identity();
  const Matrix2c rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 2; ++k) {
    const Complex d = rr(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

inline std::vector<SingleQubitUnitary> random_locals(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SingleQubitUnitary> out;
  for (int j = 1; j <= n; ++j) out.emplace_back(haar_random_unitary2(rng), j);
  return out;
}

/// psi under an independent Haar-random unitary on every qubit.
inline Ket random_lu_orbit(const Ket& psi, std::uint64_t seed) {
  return apply_locals(random_locals(psi.num_qubits(), seed), psi);
}

/// Random generalized GHZ state on a random LU orbit, |alpha|^2 in
/// [lo, hi]. Returns the state and |alpha|.
struct GhzSample {
  Ket state;
  double abs_alpha;
  double abs_beta;
};

inline GhzSample random_ghz_orbit(int n, std::uint64_t seed, double lo = 0.05, double hi = 0.95) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  const double a2 = u(rng);
  const Complex alpha = std::polar(std::sqrt(a2), ph(rng));
  const Complex beta = std::polar(std::sqrt(1.0 - a2), ph(rng));
  const Ket base = generalized_ghz(n, alpha, beta);
  return {random_lu_orbit(base, rng()), std::sqrt(a2), std::sqrt(1.0 - a2)};
}

/// Product-times-entangled hybrid: a random one-qubit state or Bell pair at
/// the front, a Haar or GHZ-orbit block on the rest, then a random LU orbit.
inline Ket hybrid_ket(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("hybrid_ket needs n >= 2");
  std::mt19937_64 rng(seed);
  const auto kind = rng() % 3;
  Ket head = Ket::basis(1, 0);
  int rest = n - 1;
  if (kind == 2 && n >= 4) {
    head = ghz(2);
    rest = n - 2;
  }
  Ket tail = (kind == 1 && rest >= 2) ? random_ghz_orbit(rest, rng()).state : haar_random_ket(rest, rng());
  return random_lu_orbit(kron(head, tail), rng());
}

/// (|0000> + |0001> + |1111>)/sqrt(3).
inline Ket chi_state() {
  CVector v = CVector::Zero(16);
  const double a = 1.0 / std::sqrt(3.0);
  v(0b0000) = a;
  v(0b0001) = a;
  v(0b1111) = a;
  return Ket(4, v);
}

// ---------------------------------------------------------------------------
// Sibling search

struct SiblingWitness {
  SingleQubitUnitary unitary;  // on qubit 1
  Ket sibling;
};

struct SearchReport {
  bool found = false;
  std::optional<SiblingWitness> witness;
  /// sqrt of the smallest objective reached by a non-rejected minimizer.
  double best_residual = std::numeric_limits<double>::infinity();
  int trials = 0;
  /// Minimizers that reached zero but were phase-equal to the source.
  int scalar_rejections = 0;
};

namespace detail {

inline Eigen::Vector3d search_start(int index, std::mt19937_64& rng) {
  static const double kDirs[14][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},  {0, -1, 0}, {0, 0, 1},
                                      {0, 0, -1}, {1, 1, 1},  {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
                                      {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}};
  if (index < 14) return Eigen::Vector3d(kDirs[index][0], kDirs[index][1], kDirs[index][2]).normalized();
  std::normal_distribution<double> g;
  Eigen::Vector3d w;
  do {
    const double a = g(rng);
    const double b = g(rng);
    const double c = g(rng);
    w = {a, b, c};
  } while (w.norm() < 1e-6);
  return w.normalized();
}

inline Matrix2c reflection(const Eigen::Vector3d& axis) {
  const auto s = paulis();
  return axis(0) * s[0] + axis(1) * s[1] + axis(2) * s[2];
}

}  // namespace detail

/// Looks for L on qubit 1 with rho_(k)(L psi) = rho_(k)(psi) for all k >= 2
/// and L psi != psi up to phase.
inline SearchReport search_sibling(const Ket& psi, double tol = kDefaultTol, int budget = 64,
                                   std::uint64_t seed = 0) {
  const int n = psi.num_qubits();
  if (n < 2) throw std::invalid_argument("search_sibling needs at least two qubits");
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  std::vector<ConjugationTerm> terms;
  for (int k = 2; k <= n; ++k) {
    const CMatrix s = reduced_density(psi, {k}).matrix();
    terms.push_back({s, s, n - 2});  // qubit 1 is the top bit of every entry k >= 2
  }
  // w -> n = w/|w|, L = n.sigma. The mismatch ignores |w|; the radial term
  // (|w|^2 - 1)^2 pins it without moving any stationary point.
  const Objective f = [&](const Eigen::VectorXd& w, Eigen::VectorXd* grad) {
    const double r = w.norm();
    const Eigen::Vector3d axis = w / r;
    const Matrix2c l = detail::reflection(axis);
    const double radial = r * r - 1.0;
    if (!grad) return conjugation_mismatch(terms, l, nullptr, 3, nullptr) + radial * radial;
    const auto s = paulis();
    std::array<Matrix2c, 3> dl;
    for (int a = 0; a < 3; ++a) {
      dl[static_cast<std::size_t>(a)] = (s[static_cast<std::size_t>(a)] - axis(a) * l) / r;
    }
    const double v = conjugation_mismatch(terms, l, dl.data(), 3, grad);
    *grad += 4.0 * radial * w;
    return v + radial * radial;
  };

  SearchReport report;
  std::mt19937_64 rng(seed);
  DescentOptions opts;
  for (int t = 0; t < budget; ++t) {
    ++report.trials;
    const DescentResult d = bfgs_minimize(f, detail::search_start(t, rng), opts);
    const Eigen::Vector3d axis = d.x.normalized();
    const Matrix2c l = detail::reflection(axis);
    CVector moved = psi.amplitudes();
    apply_on_bit(l, moved, bit_of(1, n));
    const Ket candidate(n, std::move(moved));
    const double mismatch = f(Eigen::VectorXd(axis), nullptr);
    const bool zero = mismatch < tol * tol;
    if (zero && std::abs(inner(psi, candidate)) >= 1.0 - tol) {
      ++report.scalar_rejections;
      continue;
    }
    const double res = std::sqrt(std::max(0.0, mismatch));
    if (res < report.best_residual) report.best_residual = res;
    if (zero) {
      report.found = true;
      report.witness = SiblingWitness{SingleQubitUnitary(l, 1), canonical_phase(candidate)};
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// LU equivalence from equal panels

/// Per-qubit unitaries L_j, each mapping a to b up to phase on its own.
/// Absent when some transport fails verification.
inline std::optional<std::vector<SingleQubitUnitary>> lu_equivalence_check(const Ket& a, const Ket& b,
                                                                           double tol = kDefaultTol) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("kets differ in qubit count");
  if (!panels_equal(panel_of_pure(a), panel_of_pure(b), tol)) {
    throw std::invalid_argument("lu_equivalence_check: panels differ beyond tolerance");
  }
  std::vector<SingleQubitUnitary> out;
  for (int j = 1; j <= a.num_qubits(); ++j) {
    try {
      SingleQubitUnitary l = extract_local_unitary(a, b, j, tol);
      if (!equal_up_to_phase(apply_local(l, a), b, tol)) return std::nullopt;
      out.push_back(std::move(l));
    } catch (const InconsistentInput&) {
      return std::nullopt;
    }
  }
  return out;
}

}  // namespace ghzdet
