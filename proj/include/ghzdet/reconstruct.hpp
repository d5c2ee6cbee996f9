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

// Inverting the panel map on pure states.
//
// Any pure state with entry j of the panel is a purification of that entry
// over qubit j, so it is L_j applied to one fixed purification. When the
// qubit-j marginal is non-degenerate, L_j is fixed up to one relative phase,
// which the cross blocks of the other entries determine. Otherwise the full
// U(2) freedom is searched by descent.

#pragma once

#include "ghzdet/descent.hpp"
#include "ghzdet/ghz.hpp"
#include "ghzdet/panel.hpp"
#include "ghzdet/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzdet {

/// The panel cannot come from any pure state.
class IncompatiblePanel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Purification {
  Ket candidate;
  bool degenerate = false;
  std::array<double, 2> weights{1.0, 0.0};
  CMatrix vectors;  // top two eigenvectors of the entry, as columns
};

/// sum_i sqrt(p_i) |i> ⊗_j |v_i> from the top two eigenpairs of `rdm`,
/// which must cover every label but j.
inline Purification purify_over_qubit(const DensityMatrix& rdm, int j, double tol = kDefaultTol) {
  const int n = rdm.num_qubits() + 1;
  check_label(j, n);
  if (rdm.has_label(j)) throw std::invalid_argument("entry still contains the purified qubit");
  const Eigenpairs e = spectral_decompose(rdm.matrix(), 1e-8);
  if (e.values.size() > 2 && e.values(2) > tol) {
    throw IncompatiblePanel("entry omitting qubit " + std::to_string(j) + " has rank above 2 (third eigenvalue " +
                            std::to_string(e.values(2)) + ")");
  }
  double p0 = std::max(0.0, e.values(0));
  double p1 = e.values.size() > 1 ? std::max(0.0, e.values(1)) : 0.0;
  const double total = p0 + p1;
  p0 /= total;
  p1 /= total;
  CMatrix vecs(e.vectors.rows(), 2);
  for (int k = 0; k < 2; ++k) {
    CVector v = e.vectors.col(std::min<Eigen::Index>(k, e.vectors.cols() - 1));
    fix_vector_phase(v);
    vecs.col(k) = v;
  }
  if (e.vectors.cols() < 2) vecs.col(1) = detail::orthogonal_complement(vecs.col(0));
  CVector psi = std::sqrt(p0) * tensor_insert(Vector2c(1.0, 0.0), vecs.col(0), j) +
                std::sqrt(p1) * tensor_insert(Vector2c(0.0, 1.0), vecs.col(1), j);
  return {Ket(n, std::move(psi)), p0 - p1 < kDegeneracyTol, {p0, p1}, std::move(vecs)};
}

/// Max entrywise deviation of panel_of_pure(psi) from `panel`.
inline double check_panel(const Ket& psi, const RdmPanel& panel) {
  if (psi.num_qubits() != panel.num_qubits()) throw std::invalid_argument("state and panel differ in size");
  return panel_distance(panel_of_pure(psi), panel);
}

struct ReconstructOptions {
  double tol = kDefaultTol;
  int starts = 16;
  double gradient_tol = 1e-12;
  int max_iterations = 500;
};

enum class Outcome { Unique, GhzFamily, Incompatible };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Unique: return "Unique";
    case Outcome::GhzFamily: return "GhzFamily";
    case Outcome::Incompatible: return "Incompatible";
  }
  return "?";
}

struct ReconstructionResult {
  Outcome outcome = Outcome::Incompatible;
  std::optional<Ket> state;                   // Unique: the state; GhzFamily: the phi = 0 member
  std::optional<GhzCertificate> certificate;  // GhzFamily only
  std::string reason;                         // Incompatible only
  double residual = std::numeric_limits<double>::infinity();
};

namespace detail {

inline ReconstructionResult incompatible(std::string why, double residual = std::numeric_limits<double>::infinity()) {
  ReconstructionResult r;
  r.reason = std::move(why);
  r.residual = residual;
  return r;
}

inline ReconstructionResult family_result(const Ket& member, const RdmPanel& panel, double tol) {
  const Classification c = classify(member, tol);
  if (!c.is_ghz()) return incompatible("panel admits a continuum of states but no GHZ certificate was found");
  ReconstructionResult r;
  r.outcome = Outcome::GhzFamily;
  r.state = canonical_phase(phase_family(*c.certificate, 0.0));
  r.certificate = c.certificate;
  r.residual = check_panel(*r.state, panel);
  if (r.residual > tol) return incompatible("family representative does not reproduce the panel", r.residual);
  return r;
}

inline ReconstructionResult unique_or_incompatible(const Ket& candidate, const RdmPanel& panel, double tol) {
  const double res = check_panel(candidate, panel);
  if (res > tol) return incompatible("best candidate misses the panel by " + std::to_string(res), res);
  ReconstructionResult r;
  r.outcome = Outcome::Unique;
  r.state = canonical_phase(candidate);
  r.residual = res;
  return r;
}

// Position of `label` inside entry k (labels 1..n without k), as a bit.
inline int bit_in_entry(int label, int k, int n) {
  const int local = label < k ? label : label - 1;
  return (n - 1) - local;
}

inline ReconstructionResult reconstruct_nondegenerate(const RdmPanel& panel, int j, const Purification& pur,
                                                      double tol) {
  const int n = panel.num_qubits();
  // Qubit-j eigenbasis from any other entry.
  const int other = (j == 1) ? 2 : 1;
  Eigenpairs marg = spectral_decompose(marginal_from_entry(panel, other, j), 1e-8);
  Matrix2c e;
  for (int k = 0; k < 2; ++k) {
    Vector2c v = marg.vectors.col(k);
    fix_vector_phase(v);
    e.col(k) = v;
  }
  const CVector x = std::sqrt(pur.weights[0]) * tensor_insert(e.col(0), pur.vectors.col(0), j);
  const CVector y = std::sqrt(pur.weights[1]) * tensor_insert(e.col(1), pur.vectors.col(1), j);
  if (pur.weights[1] <= tol) return unique_or_incompatible(Ket(n, x), panel, tol);  // product at j

  // rho_(k)(x + z y) = xx + yy + conj(z) K + z K^†, K = tr_k |x><y|. In the
  // qubit-j eigenframe K sits in block (0,1) alone.
  const Matrix2c to_eigen = e.adjoint();
  double best = 0.0;
  Complex zbar(1.0);
  for (int k = 1; k <= n; ++k) {
    if (k == j) continue;
    const int bp = bit_in_entry(j, k, n);
    const CMatrix kk = conjugate_on_bit(to_eigen, reduced_operator(x, y, n, {k}), bp);
    const CMatrix target = conjugate_on_bit(to_eigen, panel.entry(k).matrix(), bp);
    for (Eigen::Index r = 0; r < kk.rows(); ++r) {
      for (Eigen::Index c = 0; c < kk.cols(); ++c) {
        // block (0,1): row has bit bp = 0, column has bit bp = 1
        const bool row0 = ((r >> bp) & 1) == 0;
        const bool col1 = ((c >> bp) & 1) == 1;
        if (!row0 || !col1) continue;
        if (std::abs(kk(r, c)) > best) {
          best = std::abs(kk(r, c));
          zbar = target(r, c) / kk(r, c);
        }
      }
    }
  }
  if (best < 10.0 * tol) return family_result(Ket(n, x + y), panel, tol);
  if (std::abs(zbar) < 1e-300) return incompatible("cross block of the panel vanishes where the state's does not");
  const Complex z = std::conj(zbar / std::abs(zbar));
  return unique_or_incompatible(Ket(n, x + z * y), panel, tol);
}

// Halton points in [-pi/2, pi/2]^3, shared by every degenerate reconstruction.
inline Eigen::Vector3d grid_start(int index) {
  auto radical = [](int i, int base) {
    double f = 1.0;
    double r = 0.0;
    while (i > 0) {
      f /= base;
      r += f * (i % base);
      i /= base;
    }
    return r;
  };
  const double h = std::numbers::pi;
  return {h * (radical(index + 1, 2) - 0.5), h * (radical(index + 1, 3) - 0.5), h * (radical(index + 1, 5) - 0.5)};
}

inline ReconstructionResult reconstruct_degenerate(const RdmPanel& panel, int j, const Purification& pur,
                                                   const ReconstructOptions& opts) {
  const int n = panel.num_qubits();
  const double tol = opts.tol;
  const Ket& base = pur.candidate;
  std::vector<ConjugationTerm> terms;
  for (int k = 1; k <= n; ++k) {
    if (k == j) continue;
    terms.push_back({reduced_density(base, {k}).matrix(), panel.entry(k).matrix(), bit_in_entry(j, k, n)});
  }
  const Objective f = [&](const Eigen::VectorXd& w, Eigen::VectorXd* grad) {
    const Eigen::Vector3d x = w;
    const Matrix2c l = su2_exp(x);
    if (!grad) return conjugation_mismatch(terms, l, nullptr, 3, nullptr);
    const auto dl = su2_exp_derivatives(x);
    return conjugation_mismatch(terms, l, dl.data(), 3, grad);
  };
  DescentOptions dopt;
  dopt.gradient_tol = opts.gradient_tol;
  dopt.max_iterations = opts.max_iterations;

  auto state_at = [&](const Eigen::VectorXd& w) {
    CVector amps = base.amplitudes();
    apply_on_bit(su2_exp(Eigen::Vector3d(w)), amps, bit_of(j, n));
    return Ket(n, std::move(amps));
  };

  std::vector<Ket> classes;
  std::vector<Eigen::VectorXd> class_points;
  double best_residual = std::numeric_limits<double>::infinity();
  std::optional<Ket> best_state;
  auto record = [&](const Eigen::VectorXd& w) {
    const Ket s = state_at(w);
    const double res = check_panel(s, panel);
    if (res < best_residual) {
      best_residual = res;
      best_state = s;
    }
    if (res > tol) return;
    for (const auto& c : classes) {
      if (1.0 - std::abs(inner(c, s)) <= 1e-6) return;
    }
    classes.push_back(s);
    class_points.push_back(w);
  };

  for (int s = 0; s < opts.starts; ++s) {
    record(bfgs_minimize(f, grid_start(s), dopt).x);
  }
  if (classes.size() == 1) {
    // A lone class may be one point of a circle the starts happened to hit once.
    for (int p = 0; p < 3 && classes.size() == 1; ++p) {
      Eigen::VectorXd w = class_points.front();
      w(p) += 0.3;
      record(bfgs_minimize(f, w, dopt).x);
    }
  }
  if (classes.empty()) {
    return incompatible("no unitary on the maximally mixed qubit reproduces the panel", best_residual);
  }
  if (classes.size() >= 2) return family_result(classes.front(), panel, tol);
  return unique_or_incompatible(classes.front(), panel, tol);
}

}  // namespace detail

/// Recovers the pure state(s) with the given panel.
inline ReconstructionResult reconstruct(const RdmPanel& panel, const ReconstructOptions& opts = {}) {
  const int n = panel.num_qubits();
  const double tol = opts.tol;
  const double consistency = panel_consistency_residual(panel);
  if (consistency > tol) {
    return detail::incompatible("one-qubit marginals disagree across entries by " + std::to_string(consistency));
  }
  std::vector<Purification> pur;
  try {
    for (int j = 1; j <= n; ++j) pur.push_back(purify_over_qubit(panel.entry(j), j, tol));
  } catch (const IncompatiblePanel& e) {
    return detail::incompatible(e.what());
  }
  int pivot = 1;
  if (pur.front().degenerate) {
    for (int j = 2; j <= n; ++j) {
      if (!pur[static_cast<std::size_t>(j - 1)].degenerate) {
        pivot = j;
        break;
      }
    }
  }
  const Purification& p = pur[static_cast<std::size_t>(pivot - 1)];
  if (!p.degenerate) return detail::reconstruct_nondegenerate(panel, pivot, p, tol);
  return detail::reconstruct_degenerate(panel, pivot, p, opts);
}

inline ReconstructionResult reconstruct(const RdmPanel& panel, double tol) {
  ReconstructOptions o;
  o.tol = tol;
  return reconstruct(panel, o);
}

}  // namespace ghzdet
