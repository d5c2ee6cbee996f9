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

// Local unitary stabilizer subalgebra of a pure state.
//
// An element is A = sum_j i(x_j X_j + y_j Y_j + z_j Z_j) together with a
// phase theta such that A|psi> = i theta |psi>. Such A fix |psi><psi| under
// the infinitesimal action rho -> [A, rho]; the phase coordinate lets the
// computed object be the stabilizer of the projective state.

#pragma once

#include "ghzdet/tensor.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ghzdet {

struct AlgebraElement {
  std::vector<std::array<double, 3>> coords;  // (x_j, y_j, z_j) per qubit
  double phase = 0.0;                         // theta

  int num_qubits() const { return static_cast<int>(coords.size()); }

  /// sum_j i(x X + y Y + z Z)_j |psi>.
  CVector act(const Ket& psi) const {
    const int n = psi.num_qubits();
    if (num_qubits() != n) throw std::invalid_argument("element and ket differ in qubit count");
    const auto sigma = paulis();
    CVector out = CVector::Zero(psi.amplitudes().size());
    for (int j = 1; j <= n; ++j) {
      const auto& c = coords[static_cast<std::size_t>(j - 1)];
      const Matrix2c gen = kI * (c[0] * sigma[0] + c[1] * sigma[1] + c[2] * sigma[2]);
      CVector term = psi.amplitudes();
      apply_on_bit(gen, term, bit_of(j, n));
      out += term;
    }
    return out;
  }

  /// || A|psi> - i theta |psi> ||.
  double defect(const Ket& psi) const {
    return (act(psi) - kI * phase * psi.amplitudes()).norm();
  }

  Eigen::VectorXd flat() const {
    Eigen::VectorXd v(3 * num_qubits() + 1);
    for (int j = 0; j < num_qubits(); ++j) {
      for (int a = 0; a < 3; ++a) v(3 * j + a) = coords[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
    }
    v(3 * num_qubits()) = phase;
    return v;
  }
};

struct StabilizerBasis {
  std::vector<AlgebraElement> elements;
  int dimension = 0;
};

/// Singular values below max(1e-9, 1e-12 * sigma_max * max(rows, cols))
/// count as zero.
inline double nullspace_threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) {
  return std::max(1e-9, 1e-12 * sigma_max * static_cast<double>(std::max(rows, cols)));
}

/// Real 2*2^n x (3n+1) matrix whose columns are the realified vectors
/// (iX_j)psi, (iY_j)psi, (iZ_j)psi for j = 1..n, then i*psi.
inline Eigen::MatrixXd stabilizer_system(const Ket& psi) {
  const int n = psi.num_qubits();
  const auto d = static_cast<Eigen::Index>(psi.dim());
  Eigen::MatrixXd m(2 * d, 3 * n + 1);
  const auto sigma = paulis();
  for (int j = 1; j <= n; ++j) {
    for (int a = 0; a < 3; ++a) {
      CVector col = psi.amplitudes();
      apply_on_bit(kI * sigma[static_cast<std::size_t>(a)], col, bit_of(j, n));
      m.col(3 * (j - 1) + a) << col.real(), col.imag();
    }
  }
  const CVector phase_col = kI * psi.amplitudes();
  m.col(3 * n) << phase_col.real(), phase_col.imag();
  return m;
}

namespace detail {

// Gauss-Jordan on the rows of `rows`, partial pivoting, in place.
inline void reduced_row_echelon(Eigen::MatrixXd& rows, double pivot_tol = 1e-9) {
  Eigen::Index lead = 0;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    Eigen::Index pivot_row = -1;
    while (lead < rows.cols()) {
      double best = pivot_tol;
      for (Eigen::Index i = r; i < rows.rows(); ++i) {
        if (std::abs(rows(i, lead)) > best) {
          best = std::abs(rows(i, lead));
          pivot_row = i;
        }
      }
      if (pivot_row >= 0) break;
      ++lead;
    }
    if (pivot_row < 0) return;
    rows.row(r).swap(rows.row(pivot_row));
    rows.row(r) /= rows(r, lead);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      if (i != r) rows.row(i) -= rows(i, lead) * rows.row(r);
    }
    rows.row(r) = rows.row(r).unaryExpr([](double v) { return std::abs(v) < 1e-13 ? 0.0 : v; });
    ++lead;
  }
}

}  // namespace detail

/// Basis of the stabilizer subalgebra, in reduced row echelon order over the
/// coordinates (x_1, y_1, z_1, ..., x_n, y_n, z_n, -theta).
inline StabilizerBasis stabilizer_subalgebra(const Ket& psi) {
  const int n = psi.num_qubits();
  const Eigen::MatrixXd m = stabilizer_system(psi);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double threshold = nullspace_threshold(sv(0), m.rows(), m.cols());

  const Eigen::Index cols = m.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > threshold) ++rank;
  }
  const Eigen::Index nullity = cols - rank;

  Eigen::MatrixXd null_rows = svd.matrixV().rightCols(nullity).transpose();
  detail::reduced_row_echelon(null_rows);

  StabilizerBasis basis;
  basis.dimension = static_cast<int>(nullity);
  for (Eigen::Index r = 0; r < nullity; ++r) {
    AlgebraElement e;
    e.coords.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < 3; ++a) {
        e.coords[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] = null_rows(r, 3 * j + a);
      }
    }
    e.phase = -null_rows(r, 3 * n);
    basis.elements.push_back(std::move(e));
  }
  return basis;
}

enum class DimensionVerdict { Undetermined, Determined, Inapplicable };

inline const char* to_string(DimensionVerdict v) {
  switch (v) {
    case DimensionVerdict::Undetermined: return "undetermined";
    case DimensionVerdict::Determined: return "determined";
    case DimensionVerdict::Inapplicable: return "inapplicable";
  }
  return "?";
}

/// Product across some one-qubit cut: a Schmidt weight p1 below 1e-10.
inline bool has_product_cut(const Ket& psi) {
  for (int j = 1; j <= psi.num_qubits(); ++j) {
    const Eigen::Vector2d p = spectral_decompose(one_qubit_rdm(psi, j)).values;
    if (p(1) < 1e-10) return true;
  }
  return false;
}

/// Undetermined iff no one-qubit cut is a product and the stabilizer has
/// dimension n-1. Only stated for n = 3 and n >= 5.
inline DimensionVerdict undetermined_by_dimension(const Ket& psi) {
  const int n = psi.num_qubits();
  if (n < 3 || n == 4) return DimensionVerdict::Inapplicable;
  if (has_product_cut(psi)) return DimensionVerdict::Determined;
  return stabilizer_subalgebra(psi).dimension == n - 1 ? DimensionVerdict::Undetermined
                                                       : DimensionVerdict::Determined;
}

/// R with U (v . sigma) U^† = (R v) . sigma.
inline Eigen::Matrix3d adjoint_rotation(const Matrix2c& u) {
  const auto sigma = paulis();
  Eigen::Matrix3d r;
  for (int b = 0; b < 3; ++b) {
    for (int a = 0; a < 3; ++a) {
      r(b, a) = 0.5 * (sigma[static_cast<std::size_t>(b)] * u * sigma[static_cast<std::size_t>(a)] *
                       u.adjoint())
                          .trace()
                          .real();
    }
  }
  return r;
}

/// Element transformed by the local unitary u_1 ⊗ ... ⊗ u_n: stabilizes
/// (⊗u_j)|psi> whenever the input stabilizes |psi>.
inline AlgebraElement conjugate_element(const AlgebraElement& e,
                                        const std::vector<SingleQubitUnitary>& locals) {
  if (static_cast<int>(locals.size()) != e.num_qubits()) {
    throw std::invalid_argument("need exactly one local unitary per qubit");
  }
  AlgebraElement out = e;
  for (const auto& u : locals) {
    check_label(u.target(), e.num_qubits());
    const auto q = static_cast<std::size_t>(u.target() - 1);
    const Eigen::Vector3d v(e.coords[q][0], e.coords[q][1], e.coords[q][2]);
    const Eigen::Vector3d w = adjoint_rotation(u.matrix()) * v;
    out.coords[q] = {w(0), w(1), w(2)};
  }
  return out;
}

/// True iff, after conjugation by the locals, the basis spans exactly
/// { sum_j i t_j Z_j : sum_j t_j = 0 }.
inline bool verify_ghz_subalgebra(const StabilizerBasis& basis,
                                  const std::vector<SingleQubitUnitary>& locals,
                                  double tol = 1e-8) {
  const int n = static_cast<int>(locals.size());
  for (const auto& e : basis.elements) {
    if (e.num_qubits() != n) throw std::invalid_argument("basis and locals differ in qubit count");
  }
  if (basis.dimension != n - 1 || static_cast<int>(basis.elements.size()) != n - 1) return false;
  Eigen::MatrixXd z_parts(n - 1, n);
  for (int r = 0; r < n - 1; ++r) {
    const AlgebraElement c = conjugate_element(basis.elements[static_cast<std::size_t>(r)], locals);
    const double scale = std::max(1.0, c.flat().norm());
    double sum_z = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto& v = c.coords[static_cast<std::size_t>(j)];
      if (std::abs(v[0]) > tol * scale || std::abs(v[1]) > tol * scale) return false;
      sum_z += v[2];
      z_parts(r, j) = v[2];
    }
    if (std::abs(sum_z) > tol * scale || std::abs(c.phase) > tol * scale) return false;
  }
  if (n == 1) return true;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(z_parts);
  return svd.singularValues()(n - 2) > tol;
}

}  // namespace ghzdet
