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

// Panels: the n-tuple of (n-1)-qubit reduced density matrices of an n-qubit
// state, entry j having qubit j traced out.

#pragma once

#include "ghzdet/tensor.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzdet {

class RdmPanel {
 public:
  RdmPanel(int n, std::vector<DensityMatrix> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 2) throw std::invalid_argument("a panel needs at least two qubits");
    if (static_cast<int>(entries_.size()) != n) {
      throw std::invalid_argument("panel must hold exactly n entries");
    }
    for (int j = 1; j <= n; ++j) {
      const auto& labels = entry(j).labels();
      if (static_cast<int>(labels.size()) != n - 1 || entry(j).has_label(j) ||
          (!labels.empty() && labels.back() > n)) {
        throw std::invalid_argument("panel entry " + std::to_string(j) +
                                    " must cover every label except " + std::to_string(j));
      }
    }
  }

  int num_qubits() const { return n_; }

  /// Entry j (1-based): the state with qubit j traced out.
  const DensityMatrix& entry(int j) const {
    check_label(j, n_);
    return entries_[static_cast<std::size_t>(j - 1)];
  }

  const std::vector<DensityMatrix>& entries() const { return entries_; }

 private:
  int n_;
  std::vector<DensityMatrix> entries_;
};

/// A panel together with the entries that count as supplied. The panel
/// itself always stores all n entries.
struct PanelSubset {
  RdmPanel panel;
  std::set<int> kept;

  PanelSubset(RdmPanel p, std::set<int> k) : panel(std::move(p)), kept(std::move(k)) {
    if (kept.empty()) throw std::invalid_argument("a panel subset keeps at least one entry");
    for (int j : kept) check_label(j, panel.num_qubits());
  }
};

inline RdmPanel panel_of_pure(const Ket& psi) {
  const int n = psi.num_qubits();
  if (n < 2) throw std::invalid_argument("a panel needs at least two qubits");
  std::vector<DensityMatrix> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) entries.push_back(reduced_density(psi, {j}));
  return {n, std::move(entries)};
}

/// Panel of a density matrix over labels 1..n.
inline RdmPanel panel_of_mixed(const DensityMatrix& rho) {
  const int n = rho.num_qubits();
  if (rho.labels() != detail::all_labels(n)) {
    throw std::invalid_argument("panel_of_mixed needs a state on labels 1..n");
  }
  std::vector<DensityMatrix> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) entries.push_back(partial_trace(rho, {j}));
  return {n, std::move(entries)};
}

inline double entry_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.labels() != b.labels()) throw std::invalid_argument("entries cover different labels");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

/// Max over entries of the entrywise max-norm difference.
inline double panel_distance(const RdmPanel& a, const RdmPanel& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("panel sizes differ");
  double worst = 0.0;
  for (int j = 1; j <= a.num_qubits(); ++j) {
    worst = std::max(worst, entry_distance(a.entry(j), b.entry(j)));
  }
  return worst;
}

inline bool panels_equal(const RdmPanel& a, const RdmPanel& b, double tol = kDefaultTol) {
  return panel_distance(a, b) <= tol;
}

/// Equality restricted to the kept entries of both subsets, which must agree.
inline bool panels_equal(const PanelSubset& a, const PanelSubset& b, double tol = kDefaultTol) {
  if (a.kept != b.kept) throw std::invalid_argument("panel subsets keep different entries");
  if (a.panel.num_qubits() != b.panel.num_qubits()) throw std::invalid_argument("panel sizes differ");
  return std::all_of(a.kept.begin(), a.kept.end(), [&](int j) {
    return entry_distance(a.panel.entry(j), b.panel.entry(j)) <= tol;
  });
}

/// rho_(j)(a) == rho_(j)(b) within tol for every j in kept.
inline bool subset_equal(const Ket& a, const Ket& b, const std::set<int>& kept,
                         double tol = kDefaultTol) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("kets differ in qubit count");
  for (int j : kept) {
    check_label(j, a.num_qubits());
    if (entry_distance(reduced_density(a, {j}), reduced_density(b, {j})) > tol) return false;
  }
  return true;
}

/// One-qubit marginal of qubit m read off entry j (m != j).
inline Matrix2c marginal_from_entry(const RdmPanel& panel, int j, int m) {
  const DensityMatrix& e = panel.entry(j);
  if (!e.has_label(m)) throw std::out_of_range("qubit " + std::to_string(m) + " is not in entry " + std::to_string(j));
  std::vector<int> traced;
  for (int label : e.labels()) {
    if (label != m) traced.push_back(label);
  }
  return partial_trace(e, traced).matrix();
}

/// Largest disagreement between one-qubit marginals derived from different
/// entries. Zero for panels of a single state, up to rounding.
inline double panel_consistency_residual(const RdmPanel& panel) {
  const int n = panel.num_qubits();
  double worst = 0.0;
  for (int m = 1; m <= n; ++m) {
    const int first = (m == 1) ? 2 : 1;
    const Matrix2c ref = marginal_from_entry(panel, first, m);
    for (int j = first + 1; j <= n; ++j) {
      if (j == m) continue;
      worst = std::max(worst, (marginal_from_entry(panel, j, m) - ref).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace ghzdet
