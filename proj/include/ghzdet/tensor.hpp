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

// Dense qubit-indexed linear algebra: kets, density matrices, one-qubit
// operators, partial traces and Schmidt splits.
//
// Conventions used throughout the library:
//   * Qubits carry 1-based labels 1..n.
//   * Linear index of |i_1 i_2 ... i_n> is sum_j i_j * 2^(n-j), i.e. qubit 1
//     is the most significant bit. Dumps therefore read left to right.
//   * A density matrix on an ordered label subset uses the same convention
//     restricted to its labels (smallest label = most significant bit).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ghzdet {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Vector2c = Eigen::Vector2cd;
using Matrix2c = Eigen::Matrix2cd;

/// Tolerance used wherever a caller does not supply one.
inline constexpr double kDefaultTol = 1e-9;
/// |p0 - p1| below this marks a one-qubit spectrum as degenerate.
inline constexpr double kDegeneracyTol = 1e-8;
/// Dense storage limit; everything here is exponential in n.
inline constexpr int kMaxQubits = 24;

inline constexpr Complex kI{0.0, 1.0};

inline std::size_t dim_of(int n) { return std::size_t{1} << n; }

/// Bit position (from the least significant end) of qubit `label` in an
/// index over `n` qubits.
inline int bit_of(int label, int n) { return n - label; }

inline void check_label(int label, int n) {
  if (label < 1 || label > n) {
    throw std::out_of_range("qubit label " + std::to_string(label) +
                            " outside 1.." + std::to_string(n));
  }
}

inline int log2_exact(std::size_t size) {
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(size) +
                                " is not a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  return n;
}

/// Splices bit `b` into `rest` (an index over n-1 qubits) so that it lands at
/// qubit `label` of an n-qubit index.
inline std::size_t splice_bit(std::size_t rest, int b, int label, int n) {
  const int p = bit_of(label, n);
  const std::size_t low = rest & ((std::size_t{1} << p) - 1);
  const std::size_t high = rest >> p;
  return (high << (p + 1)) | (static_cast<std::size_t>(b) << p) | low;
}

/// Inverse of splice_bit: removes the bit of qubit `label`.
inline std::size_t drop_bit(std::size_t index, int label, int n) {
  const int p = bit_of(label, n);
  const std::size_t low = index & ((std::size_t{1} << p) - 1);
  const std::size_t high = index >> (p + 1);
  return (high << p) | low;
}

// ---------------------------------------------------------------------------
// MultiIndex

class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<int> bits) : bits_(std::move(bits)) {
    for (int b : bits_) {
      if (b != 0 && b != 1) throw std::invalid_argument("multi-index bits must be 0 or 1");
    }
  }

  static MultiIndex from_linear(std::size_t index, int n) {
    if (n < 0 || n > kMaxQubits || index >= dim_of(n)) {
      throw std::out_of_range("linear index outside the n-qubit range");
    }
    std::vector<int> bits(static_cast<std::size_t>(n));
    for (int label = 1; label <= n; ++label) {
      bits[static_cast<std::size_t>(label - 1)] =
          static_cast<int>((index >> bit_of(label, n)) & 1U);
    }
    return MultiIndex(std::move(bits));
  }

  static MultiIndex from_string(std::string_view text) {
    std::vector<int> bits;
    bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw std::invalid_argument("multi-index text must be 0/1");
      bits.push_back(c - '0');
    }
    return MultiIndex(std::move(bits));
  }

  int size() const { return static_cast<int>(bits_.size()); }

  /// Bit of qubit `label` (1-based).
  int bit(int label) const {
    check_label(label, size());
    return bits_[static_cast<std::size_t>(label - 1)];
  }

  std::size_t linear() const {
    std::size_t index = 0;
    for (int b : bits_) index = (index << 1) | static_cast<std::size_t>(b);
    return index;
  }

  MultiIndex complement() const {
    std::vector<int> flipped(bits_.size());
    std::transform(bits_.begin(), bits_.end(), flipped.begin(), [](int b) { return 1 - b; });
    return MultiIndex(std::move(flipped));
  }

  std::string str() const {
    std::string s;
    s.reserve(bits_.size());
    for (int b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  const std::vector<int>& bits() const { return bits_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> bits_;
};

// ---------------------------------------------------------------------------
// Ket

/// Normalized n-qubit pure state.
class Ket {
 public:
  Ket(int n, CVector amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    if (n < 1 || n > kMaxQubits) {
      throw std::invalid_argument("qubit count " + std::to_string(n) + " out of range");
    }
    if (static_cast<std::size_t>(amps_.size()) != dim_of(n)) {
      throw std::invalid_argument("expected " + std::to_string(dim_of(n)) +
                                  " amplitudes, got " + std::to_string(amps_.size()));
    }
    const double norm = amps_.norm();
    if (!(norm > 1e-300) || !std::isfinite(norm)) {
      throw std::invalid_argument("ket has zero or non-finite norm");
    }
    // unit vectors stay bit-exact
    if (std::abs(norm - 1.0) > 1e-15) amps_ /= norm;
  }

  /// Infers n from the amplitude count.
  explicit Ket(const CVector& amplitudes)
      : Ket(log2_exact(static_cast<std::size_t>(amplitudes.size())), CVector(amplitudes)) {}

  static Ket basis(int n, std::size_t index) {
    if (n < 1 || n > kMaxQubits || index >= dim_of(n)) {
      throw std::out_of_range("basis index outside the n-qubit range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim_of(n)));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return Ket(n, std::move(v));
  }

  /// Basis ket from a bit string such as "0101".
  static Ket basis(std::string_view bits) {
    const MultiIndex index = MultiIndex::from_string(bits);
    return basis(index.size(), index.linear());
  }

  int num_qubits() const { return n_; }
  std::size_t dim() const { return dim_of(n_); }
  const CVector& amplitudes() const { return amps_; }

  Complex operator[](std::size_t index) const { return amps_(static_cast<Eigen::Index>(index)); }
  Complex operator[](const MultiIndex& index) const {
    if (index.size() != n_) throw std::invalid_argument("multi-index length differs from qubit count");
    return (*this)[index.linear()];
  }

 private:
  int n_;
  CVector amps_;
};

inline Complex inner(const Ket& a, const Ket& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("kets differ in qubit count");
  return a.amplitudes().dot(b.amplitudes());
}

inline double fidelity(const Ket& a, const Ket& b) { return std::norm(inner(a, b)); }

/// True iff |<a|b>| >= 1 - tol.
inline bool equal_up_to_phase(const Ket& a, const Ket& b, double tol = kDefaultTol) {
  return std::abs(inner(a, b)) >= 1.0 - tol;
}

/// Rotates the first amplitude with magnitude above 1e-9 onto the positive
/// real axis.
inline Ket canonical_phase(const Ket& psi) {
  const CVector& a = psi.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i)) > 1e-9) {
      const Complex phase = std::abs(a(i)) / a(i);
      return Ket(psi.num_qubits(), a * phase);
    }
  }
  return psi;
}

/// Makes the largest-magnitude component of `v` real and positive.
template <class Derived>
void fix_vector_phase(Eigen::MatrixBase<Derived>& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex c = v(imax);
  if (std::abs(c) > 0.0) v *= std::abs(c) / c;
}

// ---------------------------------------------------------------------------
// Spectral decomposition

struct Eigenpairs {
  Eigen::VectorXd values;  // descending
  CMatrix vectors;         // column k pairs with values(k)
};

inline double hermiticity_defect(const CMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigenpairs of a Hermitian matrix in descending eigenvalue order.
inline Eigenpairs spectral_decompose(const CMatrix& h, double hermitian_tol = 1e-10) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("spectral_decompose needs a non-empty square matrix");
  }
  if (hermiticity_defect(h) > hermitian_tol) {
    throw std::invalid_argument("spectral_decompose: matrix is not Hermitian");
  }
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::Index d = h.rows();
  Eigenpairs out{Eigen::VectorXd(d), CMatrix(d, d)};
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values(k) = solver.eigenvalues()(d - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(d - 1 - k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DensityMatrix

/// Hermitian, PSD, unit-trace operator on an ordered subset of qubit labels.
class DensityMatrix {
 public:
  /// Skips validation; for outputs of trace- and positivity-preserving maps.
  struct Unchecked {};

  DensityMatrix(std::vector<int> labels, CMatrix entries, double tol = 1e-10)
      : DensityMatrix(Unchecked{}, std::move(labels), std::move(entries)) {
    if (hermiticity_defect(m_) > tol) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m_.trace() - Complex(1.0)) > tol) {
      throw std::invalid_argument("density matrix trace differs from 1");
    }
    const Eigenpairs eig = spectral_decompose(m_, tol);
    if (eig.values(eig.values.size() - 1) < -tol) {
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
  }

  DensityMatrix(Unchecked, std::vector<int> labels, CMatrix entries)
      : labels_(std::move(labels)), m_(std::move(entries)) {
    if (!std::is_sorted(labels_.begin(), labels_.end()) ||
        std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
      throw std::invalid_argument("density matrix labels must be strictly increasing");
    }
    if (!labels_.empty() && labels_.front() < 1) throw std::invalid_argument("labels start at 1");
    if (labels_.size() > static_cast<std::size_t>(kMaxQubits)) {
      throw std::invalid_argument("too many labels");
    }
    const auto d = static_cast<Eigen::Index>(dim_of(static_cast<int>(labels_.size())));
    if (m_.rows() != d || m_.cols() != d) {
      throw std::invalid_argument("density matrix side must be 2^(label count)");
    }
  }

  static DensityMatrix from_ket(const Ket& psi) {
    std::vector<int> labels(static_cast<std::size_t>(psi.num_qubits()));
    for (int j = 1; j <= psi.num_qubits(); ++j) labels[static_cast<std::size_t>(j - 1)] = j;
    return {Unchecked{}, std::move(labels), psi.amplitudes() * psi.amplitudes().adjoint()};
  }

  const std::vector<int>& labels() const { return labels_; }
  int num_qubits() const { return static_cast<int>(labels_.size()); }
  const CMatrix& matrix() const { return m_; }

  bool has_label(int label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
  }

  /// Position of `label` within labels(), 1-based (the local qubit label).
  int local_label(int label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) {
      throw std::out_of_range("label " + std::to_string(label) + " not present");
    }
    return static_cast<int>(it - labels_.begin()) + 1;
  }

 private:
  std::vector<int> labels_;
  CMatrix m_;
};

// ---------------------------------------------------------------------------
// SingleQubitUnitary

inline Matrix2c pauli_x() { return (Matrix2c() << 0, 1, 1, 0).finished(); }
inline Matrix2c pauli_y() { return (Matrix2c() << 0, -kI, kI, 0).finished(); }
inline Matrix2c pauli_z() { return (Matrix2c() << 1, 0, 0, -1).finished(); }
inline Matrix2c hadamard() {
  return (Matrix2c() << 1, 1, 1, -1).finished() / std::numbers::sqrt2;
}
inline std::array<Matrix2c, 3> paulis() { return {pauli_x(), pauli_y(), pauli_z()}; }

inline double unitarity_defect(const Matrix2c& u) {
  return (u * u.adjoint() - Matrix2c::Identity()).cwiseAbs().maxCoeff();
}

/// Closest unitary in Frobenius norm (polar factor).
inline Matrix2c nearest_unitary(const Matrix2c& m) {
  Eigen::JacobiSVD<Matrix2c> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// A 2x2 unitary acting on one labeled qubit.
class SingleQubitUnitary {
 public:
  SingleQubitUnitary(Matrix2c entries, int target, double tol = 1e-10)
      : m_(std::move(entries)), target_(target) {
    if (target < 1) throw std::out_of_range("target label must be >= 1");
    if (unitarity_defect(m_) > tol) throw std::invalid_argument("matrix is not unitary");
  }

  static SingleQubitUnitary identity(int target) { return {Matrix2c::Identity(), target}; }

  const Matrix2c& matrix() const { return m_; }
  int target() const { return target_; }

  SingleQubitUnitary adjoint() const { return {m_.adjoint(), target_}; }

 private:
  Matrix2c m_;
  int target_;
};

// ---------------------------------------------------------------------------
// Qubit-local kernels on raw amplitude storage

/// In place: applies `u` to the bit at position `bitpos` of every index.
inline void apply_on_bit(const Matrix2c& u, CVector& amps, int bitpos) {
  const std::size_t stride = std::size_t{1} << bitpos;
  const auto size = static_cast<std::size_t>(amps.size());
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const auto i0 = static_cast<Eigen::Index>(base + off);
      const auto i1 = static_cast<Eigen::Index>(base + off + stride);
      const Complex a0 = amps(i0);
      const Complex a1 = amps(i1);
      amps(i0) = u(0, 0) * a0 + u(0, 1) * a1;
      amps(i1) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

/// Left-multiplies `m` by (I ⊗ u ⊗ I) with u on bit `bitpos` of the row index.
inline CMatrix left_apply_on_bit(const Matrix2c& u, const CMatrix& m, int bitpos) {
  CMatrix out = m;
  const std::size_t stride = std::size_t{1} << bitpos;
  const auto rows = static_cast<std::size_t>(m.rows());
  for (std::size_t base = 0; base < rows; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const auto r0 = static_cast<Eigen::Index>(base + off);
      const auto r1 = static_cast<Eigen::Index>(base + off + stride);
      out.row(r0) = u(0, 0) * m.row(r0) + u(0, 1) * m.row(r1);
      out.row(r1) = u(1, 0) * m.row(r0) + u(1, 1) * m.row(r1);
    }
  }
  return out;
}

/// (I ⊗ u ⊗ I) m (I ⊗ u ⊗ I)^† with u on bit `bitpos`.
inline CMatrix conjugate_on_bit(const Matrix2c& u, const CMatrix& m, int bitpos) {
  const CMatrix half = left_apply_on_bit(u, m, bitpos);
  return left_apply_on_bit(u, half.adjoint(), bitpos).adjoint();
}

/// 2 x 2^(n-1) matrix whose row i holds the amplitudes with qubit `label`
/// equal to i; columns index the remaining qubits in order.
inline CMatrix split_qubit(const CVector& amps, int label, int n) {
  check_label(label, n);
  const std::size_t rest = dim_of(n - 1);
  CMatrix a(2, static_cast<Eigen::Index>(rest));
  for (std::size_t r = 0; r < rest; ++r) {
    for (int b = 0; b < 2; ++b) {
      a(b, static_cast<Eigen::Index>(r)) = amps(static_cast<Eigen::Index>(splice_bit(r, b, label, n)));
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Operations

/// Amplitude at the index formed by splicing i_j into position j equals
/// one_qubit[i_j] * rest[remaining bits]. The result is not normalized.
inline CVector tensor_insert(const Vector2c& one_qubit, const CVector& rest, int j) {
  const int n = log2_exact(static_cast<std::size_t>(rest.size())) + 1;
  check_label(j, n);
  CVector out(static_cast<Eigen::Index>(dim_of(n)));
  for (std::size_t r = 0; r < static_cast<std::size_t>(rest.size()); ++r) {
    for (int b = 0; b < 2; ++b) {
      out(static_cast<Eigen::Index>(splice_bit(r, b, j, n))) =
          one_qubit(b) * rest(static_cast<Eigen::Index>(r));
    }
  }
  return out;
}

namespace detail {

// Row-major table full[k * traced_dim + t] of the full index whose kept
// qubits read k and traced qubits read t.
inline std::vector<std::size_t> kept_traced_table(int n, const std::vector<int>& kept_local,
                                                  const std::vector<int>& traced_local) {
  const std::size_t kd = dim_of(static_cast<int>(kept_local.size()));
  const std::size_t td = dim_of(static_cast<int>(traced_local.size()));
  std::vector<std::size_t> table(kd * td);
  for (std::size_t k = 0; k < kd; ++k) {
    std::size_t kbits = 0;
    for (std::size_t q = 0; q < kept_local.size(); ++q) {
      const std::size_t bit = (k >> (kept_local.size() - 1 - q)) & 1U;
      kbits |= bit << bit_of(kept_local[q], n);
    }
    for (std::size_t t = 0; t < td; ++t) {
      std::size_t full = kbits;
      for (std::size_t q = 0; q < traced_local.size(); ++q) {
        const std::size_t bit = (t >> (traced_local.size() - 1 - q)) & 1U;
        full |= bit << bit_of(traced_local[q], n);
      }
      table[k * td + t] = full;
    }
  }
  return table;
}

struct LabelSplit {
  std::vector<int> kept_labels;   // global labels
  std::vector<int> kept_local;    // 1-based positions inside the source
  std::vector<int> traced_local;
};

inline LabelSplit split_labels(const std::vector<int>& labels, const std::vector<int>& traced) {
  LabelSplit s;
  for (std::size_t i = 0; i < traced.size(); ++i) {
    const int t = traced[i];
    if (!std::binary_search(labels.begin(), labels.end(), t)) {
      throw std::out_of_range("traced label " + std::to_string(t) + " not present");
    }
    if (std::find(traced.begin(), traced.begin() + static_cast<std::ptrdiff_t>(i), t) != traced.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw std::invalid_argument("traced label " + std::to_string(t) + " repeated");
    }
  }
  for (std::size_t q = 0; q < labels.size(); ++q) {
    const int local = static_cast<int>(q) + 1;
    if (std::find(traced.begin(), traced.end(), labels[q]) != traced.end()) {
      s.traced_local.push_back(local);
    } else {
      s.kept_labels.push_back(labels[q]);
      s.kept_local.push_back(local);
    }
  }
  return s;
}

// Matrix A (kept_dim x traced_dim) of amplitudes; the reduced operator of
// |a><b| is A_a A_b^†.
inline CMatrix amplitude_block(const CVector& amps, int n, const LabelSplit& s) {
  const auto table = kept_traced_table(n, s.kept_local, s.traced_local);
  const std::size_t kd = dim_of(static_cast<int>(s.kept_local.size()));
  const std::size_t td = dim_of(static_cast<int>(s.traced_local.size()));
  CMatrix a(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(td));
  for (std::size_t k = 0; k < kd; ++k) {
    for (std::size_t t = 0; t < td; ++t) {
      a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t)) =
          amps(static_cast<Eigen::Index>(table[k * td + t]));
    }
  }
  return a;
}

inline std::vector<int> all_labels(int n) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) labels[static_cast<std::size_t>(j - 1)] = j;
  return labels;
}

}  // namespace detail

/// Traces out `traced` (global labels) from `rho`.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& traced) {
  const auto s = detail::split_labels(rho.labels(), traced);
  const int n = rho.num_qubits();
  const auto table = detail::kept_traced_table(n, s.kept_local, s.traced_local);
  const std::size_t kd = dim_of(static_cast<int>(s.kept_local.size()));
  const std::size_t td = dim_of(static_cast<int>(s.traced_local.size()));
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t a = 0; a < kd; ++a) {
    for (std::size_t b = 0; b < kd; ++b) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < td; ++t) {
        sum += m(static_cast<Eigen::Index>(table[a * td + t]),
                 static_cast<Eigen::Index>(table[b * td + t]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  }
  return {DensityMatrix::Unchecked{}, s.kept_labels, std::move(out)};
}

/// Reduced density matrix of a pure state with `traced` removed, computed
/// without forming |psi><psi|.
inline DensityMatrix reduced_density(const Ket& psi, const std::vector<int>& traced) {
  const int n = psi.num_qubits();
  const auto s = detail::split_labels(detail::all_labels(n), traced);
  const CMatrix a = detail::amplitude_block(psi.amplitudes(), n, s);
  return {DensityMatrix::Unchecked{}, s.kept_labels, a * a.adjoint()};
}

/// tr_traced |a><b| for two (not necessarily normalized) n-qubit vectors.
inline CMatrix reduced_operator(const CVector& a, const CVector& b, int n,
                                const std::vector<int>& traced) {
  const auto s = detail::split_labels(detail::all_labels(n), traced);
  return detail::amplitude_block(a, n, s) * detail::amplitude_block(b, n, s).adjoint();
}

/// One-qubit reduced density matrix of qubit `label`.
inline Matrix2c one_qubit_rdm(const Ket& psi, int label) {
  const CMatrix a = split_qubit(psi.amplitudes(), label, psi.num_qubits());
  return a * a.adjoint();
}

inline Ket apply_local(const SingleQubitUnitary& u, const Ket& psi) {
  check_label(u.target(), psi.num_qubits());
  CVector amps = psi.amplitudes();
  apply_on_bit(u.matrix(), amps, bit_of(u.target(), psi.num_qubits()));
  return Ket(psi.num_qubits(), std::move(amps));
}

/// Applies one unitary per qubit; locals[q] must target qubit q+1.
inline Ket apply_locals(const std::vector<SingleQubitUnitary>& locals, const Ket& psi) {
  const int n = psi.num_qubits();
  if (static_cast<int>(locals.size()) != n) {
    throw std::invalid_argument("need exactly one local unitary per qubit");
  }
  CVector amps = psi.amplitudes();
  for (const auto& u : locals) {
    check_label(u.target(), n);
    apply_on_bit(u.matrix(), amps, bit_of(u.target(), n));
  }
  return Ket(n, std::move(amps));
}

// ---------------------------------------------------------------------------
// Schmidt split across qubit j versus the rest

struct SchmidtSplit {
  int pivot = 1;
  std::array<double, 2> weights{1.0, 0.0};  // p0 >= p1 >= 0, sum 1
  Matrix2c one_qubit_vectors;               // columns |0>, |1> of the qubit side
  CMatrix rest_vectors;                     // 2^(n-1) x 2, orthonormal columns
  bool degenerate = false;                  // basis is not unique when set

  /// sqrt(p0)|0>⊗_j|0;(j)> + sqrt(p1)|1>⊗_j|1;(j)>.
  CVector reassemble() const {
    CVector out = CVector::Zero(rest_vectors.rows() * 2);
    for (int k = 0; k < 2; ++k) {
      out += std::sqrt(weights[static_cast<std::size_t>(k)]) *
             tensor_insert(one_qubit_vectors.col(k), rest_vectors.col(k), pivot);
    }
    return out;
  }
};

namespace detail {

// Unit vector orthogonal to `v` (length >= 2).
inline CVector orthogonal_complement(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    CVector e = CVector::Zero(v.size());
    e(i) = 1.0;
    e -= v.dot(e) * v;
    if (e.norm() > 0.5) return e.normalized();
  }
  throw std::logic_error("no orthogonal complement found");
}

}  // namespace detail

inline SchmidtSplit schmidt_split(const Ket& psi, int j) {
  const int n = psi.num_qubits();
  check_label(j, n);
  if (n < 2) throw std::invalid_argument("schmidt_split needs at least two qubits");
  const CMatrix a = split_qubit(psi.amplitudes(), j, n);
  Eigenpairs eig = spectral_decompose(a * a.adjoint());

  SchmidtSplit s;
  s.pivot = j;
  const double p0 = std::clamp(eig.values(0), 0.0, 1.0);
  s.weights = {p0, 1.0 - p0};
  s.degenerate = std::abs(s.weights[0] - s.weights[1]) < kDegeneracyTol;
  s.rest_vectors.resize(a.cols(), 2);
  for (int k = 0; k < 2; ++k) {
    auto col = eig.vectors.col(k);
    fix_vector_phase(col);
    s.one_qubit_vectors.col(k) = col;
  }
  // rest_k = A^T conj(e_k) / sqrt(p_k)
  CVector r0 = a.transpose() * s.one_qubit_vectors.col(0).conjugate();
  s.rest_vectors.col(0) = r0.normalized();
  CVector r1 = a.transpose() * s.one_qubit_vectors.col(1).conjugate();
  r1 -= s.rest_vectors.col(0).dot(r1) * s.rest_vectors.col(0);
  if (r1.norm() > 1e-12) {
    s.rest_vectors.col(1) = r1.normalized();
  } else {
    s.rest_vectors.col(1) = detail::orthogonal_complement(s.rest_vectors.col(0));
  }
  return s;
}

}  // namespace ghzdet
