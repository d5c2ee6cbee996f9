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

// Generalized GHZ detection.
//
// A pure n-qubit state shares its panel of (n-1)-qubit marginals with some
// other pure state exactly when a local unitary brings it to
// alpha|J> + beta|J̄> with alpha*beta != 0. This header decides that
// property, produces certificates, and builds the sibling and the whole
// one-parameter family sharing the panel. It also implements the
// constructive route from a sibling pair back to a certificate: per-qubit
// transports L_j, their diagonalization, and the phase condition that
// forces antipodal support.

#pragma once

#include "ghzdet/panel.hpp"
#include "ghzdet/states.hpp"
#include "ghzdet/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ghzdet {

/// Raised when numerically derived data contradicts what exact arithmetic
/// guarantees; usually a tolerance breach upstream.
class InconsistentInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Off-support amplitudes of a certificate must stay below this.
inline constexpr double kSupportTol = 1e-8;

struct GhzCertificate {
  std::vector<SingleQubitUnitary> locals;  // locals[q] targets qubit q+1
  Complex alpha;                           // amplitude at J after the locals
  Complex beta;                            // amplitude at J̄
  MultiIndex support;                      // J; the partner is support.complement()

  int num_qubits() const { return static_cast<int>(locals.size()); }
  MultiIndex partner() const { return support.complement(); }
};

struct QubitSpectrum {
  double major = 1.0;  // larger eigenvalue of the one-qubit marginal
  double minor = 0.0;
  bool degenerate = false;
  double gap() const { return major - minor; }
};

enum class Verdict { GhzClass, Determined };

inline const char* to_string(Verdict v) {
  return v == Verdict::GhzClass ? "GHZ-class" : "determined";
}

struct Classification {
  Verdict verdict = Verdict::Determined;
  std::optional<GhzCertificate> certificate;  // set iff verdict == GhzClass
  std::vector<QubitSpectrum> spectra;         // spectra[q] for qubit q+1
  /// Set when the spectrum gaps sit near the degeneracy threshold and the
  /// degenerate and non-degenerate procedures disagree.
  bool ill_conditioned = false;
  std::string reason;

  bool is_ghz() const { return verdict == Verdict::GhzClass; }
};

/// Phases of D_j = e^{i alpha} diag(e^{i beta}, e^{-i beta}).
struct RelativePhases {
  double alpha = 0.0;
  double beta = 0.0;
};

// ---------------------------------------------------------------------------
// Certificates

/// Largest off-support amplitude after applying the certificate's locals.
inline double off_support_amplitude(const Ket& psi, const GhzCertificate& cert) {
  const Ket rotated = apply_locals(cert.locals, psi);
  const std::size_t j = cert.support.linear();
  const std::size_t jbar = cert.partner().linear();
  double worst = 0.0;
  for (std::size_t i = 0; i < rotated.dim(); ++i) {
    if (i != j && i != jbar) worst = std::max(worst, std::abs(rotated[i]));
  }
  return worst;
}

/// Throws std::invalid_argument unless `cert` is a valid certificate for psi.
inline void validate_certificate(const Ket& psi, const GhzCertificate& cert,
                                 double tol = kSupportTol) {
  const int n = psi.num_qubits();
  if (cert.num_qubits() != n || cert.support.size() != n) {
    throw std::invalid_argument("certificate does not match the qubit count");
  }
  for (int q = 0; q < n; ++q) {
    if (cert.locals[static_cast<std::size_t>(q)].target() != q + 1) {
      throw std::invalid_argument("certificate locals must target qubits 1..n in order");
    }
  }
  if (std::abs(cert.alpha * cert.beta) <= tol) {
    throw std::invalid_argument("certificate amplitudes must both be non-zero");
  }
  if (std::abs(std::norm(cert.alpha) + std::norm(cert.beta) - 1.0) > std::max(tol, 1e-10)) {
    throw std::invalid_argument("certificate amplitudes are not normalized");
  }
  if (off_support_amplitude(psi, cert) > tol) {
    throw std::invalid_argument("certificate locals leave amplitude off the antipodal pair");
  }
}

namespace detail {

inline std::vector<SingleQubitUnitary> adjoint_locals(const std::vector<SingleQubitUnitary>& locals) {
  std::vector<SingleQubitUnitary> out;
  out.reserve(locals.size());
  for (const auto& u : locals) out.push_back(u.adjoint());
  return out;
}

// Unitary whose rows are the conjugates of the given columns, i.e. maps
// col0 -> |0>, col1 -> |1>.
inline Matrix2c rows_from_basis(const Vector2c& col0, const Vector2c& col1) {
  Matrix2c m;
  m.row(0) = col0.adjoint();
  m.row(1) = col1.adjoint();
  return nearest_unitary(m);
}

inline std::optional<GhzCertificate> certificate_from_rotation(const Ket& psi,
                                                               std::vector<SingleQubitUnitary> locals,
                                                               double support_tol) {
  const Ket rotated = apply_locals(locals, psi);
  Eigen::Index jmax = 0;
  rotated.amplitudes().cwiseAbs().maxCoeff(&jmax);
  const MultiIndex j = MultiIndex::from_linear(static_cast<std::size_t>(jmax), psi.num_qubits());
  GhzCertificate cert{std::move(locals), rotated[j], rotated[j.complement()], j};
  if (std::abs(cert.beta) <= support_tol) return std::nullopt;
  if (off_support_amplitude(psi, cert) > support_tol) return std::nullopt;
  return cert;
}

// Two-qubit states: the Schmidt form is the generalized GHZ_2.
inline std::optional<GhzCertificate> schmidt_certificate(const Ket& psi, double support_tol) {
  const SchmidtSplit s = schmidt_split(psi, 1);
  std::vector<SingleQubitUnitary> locals;
  locals.emplace_back(rows_from_basis(s.one_qubit_vectors.col(0), s.one_qubit_vectors.col(1)), 1);
  locals.emplace_back(rows_from_basis(s.rest_vectors.col(0), s.rest_vectors.col(1)), 2);
  return certificate_from_rotation(psi, std::move(locals), support_tol);
}

// Product-vector search inside span{A, B} of (n-1)-qubit vectors.
//
// For v = s A + t B, every 2x2 minor of every one-qubit flattening of v is a
// homogeneous quadratic in (s, t). Collect their coefficient rows c_m into
// the Gram matrix G = sum conj(c_m) c_m^T. The minors share a root exactly
// when the Veronese vector (s^2, st, t^2) lies in ker G, so
//   rank 0: every vector in the span is a product,
//   rank 1: the minors are all multiples of one quadratic q (their gcd),
//   rank >= 2: at most one common root.
// Exactly two product vectors therefore requires rank 1 and q square-free.
struct ProductPair {
  CVector first;
  CVector second;
};

inline Eigen::Matrix3cd minor_gram(const CVector& a, const CVector& b, int m) {
  Eigen::Matrix3cd gram = Eigen::Matrix3cd::Zero();
  for (int site = 1; site <= m; ++site) {
    const CMatrix fa = split_qubit(a, site, m);
    const CMatrix fb = split_qubit(b, site, m);
    const Eigen::Index cols = fa.cols();
    for (Eigen::Index x = 0; x < cols; ++x) {
      for (Eigen::Index y = x + 1; y < cols; ++y) {
        const Complex c0 = fa(0, x) * fa(1, y) - fa(0, y) * fa(1, x);
        const Complex c1 = fa(0, x) * fb(1, y) + fb(0, x) * fa(1, y) - fa(0, y) * fb(1, x) -
                           fb(0, y) * fa(1, x);
        const Complex c2 = fb(0, x) * fb(1, y) - fb(0, y) * fb(1, x);
        const Eigen::Vector3cd c(c0, c1, c2);
        gram += c.conjugate() * c.transpose();
      }
    }
  }
  return gram;
}

// Roots (s, t) of q0 s^2 + q1 s t + q2 t^2, polished by Gauss-Newton on the
// summed squared minors sum |c_m . (s^2, st, t^2)|^2 = v^H G v.
inline std::vector<std::pair<Complex, Complex>> quadratic_roots(const Eigen::Vector3cd& q,
                                                                const Eigen::Matrix3cd& gram) {
  // Stable formula in the chart t = 1 (z = s/t): a z^2 + b z + c, a = q0.
  // Roots are kept homogeneous so one at infinity is harmless.
  const Complex a = q(0);
  const Complex b = q(1);
  const Complex c = q(2);
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  const double sign = (std::real(std::conj(b) * disc) >= 0.0) ? 1.0 : -1.0;
  const Complex big = -(b + sign * disc) / 2.0;
  std::vector<std::pair<Complex, Complex>> roots = {{big, a}, {c, big}};

  std::vector<std::pair<Complex, Complex>> out;
  for (auto [s, t] : roots) {
    const bool t_chart = std::abs(s) >= std::abs(t);  // s = 1, z = t/s
    Complex z = t_chart ? t / s : s / t;
    for (int it = 0; it < 8; ++it) {
      Eigen::Vector3cd v;
      Eigen::Vector3cd dv;
      if (t_chart) {
        v << 1.0, z, z * z;
        dv << 0.0, 1.0, 2.0 * z;
      } else {
        v << z * z, z, 1.0;
        dv << 2.0 * z, 1.0, 0.0;
      }
      const Complex num = dv.dot(gram * v);
      const Complex den = dv.dot(gram * dv);
      if (std::abs(den) < 1e-300) break;
      const Complex step = num / den;
      z -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    out.emplace_back(t_chart ? std::make_pair(Complex(1.0), z) : std::make_pair(z, Complex(1.0)));
  }
  return out;
}

inline std::optional<ProductPair> product_vectors_in_span(const CVector& a, const CVector& b) {
  const int m = log2_exact(static_cast<std::size_t>(a.size()));
  const Eigen::Matrix3cd gram = minor_gram(a, b, m);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> eig(gram);
  const Eigen::Vector3d ev = eig.eigenvalues().cwiseMax(0.0);  // ascending
  // eigenvalues of G carry round-off ~1e-16 * top; compare them, not their roots
  constexpr double kCoeffTol = 1e-10;
  const double top = ev(2);
  if (top <= kCoeffTol * kCoeffTol) return std::nullopt;  // whole span is product
  if (ev(1) > kCoeffTol * top) return std::nullopt;
  const Eigen::Vector3cd q = eig.eigenvectors().col(2).conjugate();
  const double disc = std::abs(q(1) * q(1) - 4.0 * q(0) * q(2));
  if (disc <= kCoeffTol * q.squaredNorm()) return std::nullopt;  // double root
  const auto roots = quadratic_roots(q, gram);
  ProductPair pair{(roots[0].first * a + roots[0].second * b).normalized(),
                   (roots[1].first * a + roots[1].second * b).normalized()};
  return pair;
}

// Per-site factors of an (approximately) product vector over m qubits.
inline std::vector<Vector2c> product_factors(const CVector& v) {
  const Ket k(v);
  std::vector<Vector2c> factors;
  for (int site = 1; site <= k.num_qubits(); ++site) {
    Vector2c f = spectral_decompose(one_qubit_rdm(k, site)).vectors.col(0);
    fix_vector_phase(f);
    factors.push_back(f);
  }
  return factors;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Degenerate branch: every one-qubit marginal is maximally mixed

/// Certificate for a state whose one-qubit marginals all equal I/2, or
/// nullopt when the state is not of generalized GHZ type.
inline std::optional<GhzCertificate> degenerate_ghz_test(const Ket& psi, double tol = kDefaultTol) {
  const int n = psi.num_qubits();
  if (n < 2) throw std::invalid_argument("degenerate_ghz_test needs at least two qubits");
  const double pre_tol = std::max(tol, kDegeneracyTol);
  for (int j = 1; j <= n; ++j) {
    const Matrix2c rho = one_qubit_rdm(psi, j);
    if ((rho - 0.5 * Matrix2c::Identity()).cwiseAbs().maxCoeff() > pre_tol) {
      throw std::domain_error("degenerate_ghz_test: qubit " + std::to_string(j) +
                              " marginal is not maximally mixed");
    }
  }
  const double support_tol = std::max(tol, kSupportTol);
  if (n == 2) return detail::schmidt_certificate(psi, support_tol);

  const SchmidtSplit split = schmidt_split(psi, 1);
  const auto pair = detail::product_vectors_in_span(split.rest_vectors.col(0), split.rest_vectors.col(1));
  if (!pair) return std::nullopt;

  const auto f0 = detail::product_factors(pair->first);
  const auto f1 = detail::product_factors(pair->second);
  constexpr double kOrthTol = 1e-6;
  for (std::size_t s = 0; s < f0.size(); ++s) {
    if (std::abs(f0[s].dot(f1[s])) > kOrthTol) return std::nullopt;
  }

  // Qubit-1 side: psi = |x> ⊗ P0 + |y> ⊗ P1.
  const CVector p0 = product_state(f0).amplitudes();
  const CVector p1 = product_state(f1).amplitudes();
  const CMatrix a = split_qubit(psi.amplitudes(), 1, n);
  Vector2c x = a * p0.conjugate();
  Vector2c y = a * p1.conjugate();
  if (x.norm() < 1e-12 || y.norm() < 1e-12) return std::nullopt;
  x.normalize();
  y.normalize();
  if (std::abs(x.dot(y)) > kOrthTol) return std::nullopt;

  std::vector<SingleQubitUnitary> locals;
  locals.emplace_back(detail::rows_from_basis(x, y), 1);
  for (std::size_t s = 0; s < f0.size(); ++s) {
    locals.emplace_back(detail::rows_from_basis(f0[s], f1[s]), static_cast<int>(s) + 2);
  }
  return detail::certificate_from_rotation(psi, std::move(locals), support_tol);
}

// ---------------------------------------------------------------------------
// Classification

namespace detail {

struct QubitEigen {
  QubitSpectrum spectrum;
  Matrix2c basis;  // columns: eigenvectors, descending eigenvalue, phase-fixed
};

inline std::vector<QubitEigen> one_qubit_eigen(const Ket& psi) {
  std::vector<QubitEigen> out;
  for (int j = 1; j <= psi.num_qubits(); ++j) {
    Eigenpairs e = spectral_decompose(one_qubit_rdm(psi, j));
    QubitEigen q;
    q.spectrum.major = e.values(0);
    q.spectrum.minor = std::max(0.0, e.values(1));
    q.spectrum.degenerate = q.spectrum.gap() < kDegeneracyTol;
    for (int k = 0; k < 2; ++k) {
      Vector2c v = e.vectors.col(k);
      fix_vector_phase(v);
      q.basis.col(k) = v;
    }
    out.push_back(q);
  }
  return out;
}

// Rotate each qubit into its marginal eigenbasis and test for antipodal
// support.
inline std::optional<GhzCertificate> eigenbasis_support_test(const Ket& psi,
                                                             const std::vector<QubitEigen>& eig,
                                                             double support_tol) {
  std::vector<SingleQubitUnitary> locals;
  for (std::size_t q = 0; q < eig.size(); ++q) {
    locals.emplace_back(rows_from_basis(eig[q].basis.col(0), eig[q].basis.col(1)),
                        static_cast<int>(q) + 1);
  }
  return certificate_from_rotation(psi, std::move(locals), support_tol);
}

}  // namespace detail

/// Decides whether psi is LU-equivalent to a generalized GHZ state.
inline Classification classify(const Ket& psi, double tol = kDefaultTol) {
  const int n = psi.num_qubits();
  if (n < 2) throw std::invalid_argument("classify needs at least two qubits");
  const auto eig = detail::one_qubit_eigen(psi);
  const double support_tol = std::max(tol, kSupportTol);

  Classification out;
  for (const auto& e : eig) out.spectra.push_back(e.spectrum);

  for (int j = 1; j <= n; ++j) {
    if (out.spectra[static_cast<std::size_t>(j - 1)].minor < tol) {
      out.reason = "qubit " + std::to_string(j) + " marginal is pure";
      return out;
    }
  }

  const bool all_degenerate = std::all_of(out.spectra.begin(), out.spectra.end(),
                                          [](const QubitSpectrum& s) { return s.degenerate; });
  const bool any_degenerate = std::any_of(out.spectra.begin(), out.spectra.end(),
                                          [](const QubitSpectrum& s) { return s.degenerate; });

  // Band around the degeneracy threshold where both procedures run.
  constexpr double kBandLow = kDegeneracyTol / 100.0;
  constexpr double kBandHigh = kDegeneracyTol * 100.0;
  const bool all_below_band = std::all_of(out.spectra.begin(), out.spectra.end(),
                                          [&](const QubitSpectrum& s) { return s.gap() < kBandHigh; });
  const bool some_in_band = std::any_of(out.spectra.begin(), out.spectra.end(),
                                        [&](const QubitSpectrum& s) { return s.gap() >= kBandLow; });
  const bool near_threshold = all_below_band && some_in_band;

  std::optional<GhzCertificate> cert;
  if (all_degenerate) {
    cert = degenerate_ghz_test(psi, tol);
    out.reason = cert ? "maximally mixed marginals; two orthogonal product vectors found"
                      : "maximally mixed marginals; no antipodal product pair";
  } else if (any_degenerate) {
    out.reason = "degenerate and non-degenerate marginals mixed";
  } else {
    const double ref = out.spectra.front().minor;
    const bool equal = std::all_of(out.spectra.begin(), out.spectra.end(),
                                   [&](const QubitSpectrum& s) { return std::abs(s.minor - ref) <= tol; });
    if (!equal) {
      out.reason = "one-qubit spectra differ";
    } else {
      cert = detail::eigenbasis_support_test(psi, eig, support_tol);
      out.reason = cert ? "antipodal support in the marginal eigenbasis"
                        : "support in the marginal eigenbasis is not antipodal";
    }
  }

  if (near_threshold) {
    std::optional<GhzCertificate> other;
    if (all_degenerate) {
      other = detail::eigenbasis_support_test(psi, eig, support_tol);
    } else {
      try {
        other = degenerate_ghz_test(psi, kBandHigh);
      } catch (const std::domain_error&) {
        other.reset();
      }
    }
    out.ill_conditioned = other.has_value() != cert.has_value();
  }

  if (cert) {
    out.verdict = Verdict::GhzClass;
    out.certificate = std::move(cert);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Siblings and the phase family

/// The state with beta replaced by e^{i phi} beta in the certificate basis.
inline Ket phase_family(const GhzCertificate& cert, double phi) {
  const int n = cert.num_qubits();
  if (n < 1 || std::abs(cert.alpha * cert.beta) == 0.0) {
    throw std::invalid_argument("phase_family: invalid certificate");
  }
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim_of(n)));
  amps(static_cast<Eigen::Index>(cert.support.linear())) = cert.alpha;
  amps(static_cast<Eigen::Index>(cert.partner().linear())) = std::polar(1.0, phi) * cert.beta;
  return apply_locals(detail::adjoint_locals(cert.locals), Ket(n, std::move(amps)));
}

/// psi with its beta amplitude negated in the certificate basis.
inline Ket sibling(const Ket& psi, const GhzCertificate& cert) {
  validate_certificate(psi, cert);
  const Ket rotated = apply_locals(cert.locals, psi);
  CVector amps = rotated.amplitudes();
  amps(static_cast<Eigen::Index>(cert.partner().linear())) *= -1.0;
  return apply_locals(detail::adjoint_locals(cert.locals), Ket(psi.num_qubits(), std::move(amps)));
}

/// The phi for which phase_family(cert, phi) best matches psi.
inline double family_phase_of(const GhzCertificate& cert, const Ket& psi) {
  const Ket rotated = apply_locals(cert.locals, psi);
  const Complex a = std::conj(cert.alpha) * rotated[cert.support];
  const Complex b = std::conj(cert.beta) * rotated[cert.partner()];
  return std::arg(b) - std::arg(a);
}

// ---------------------------------------------------------------------------
// Constructive route from a sibling pair

/// One-qubit unitary L on qubit j with L psi = psi_prime, given equal
/// panels. The returned matrix carries the phase that makes the equality
/// hold as vectors, not just up to phase.
inline SingleQubitUnitary extract_local_unitary(const Ket& psi, const Ket& psi_prime, int j,
                                                double tol = kDefaultTol) {
  const int n = psi.num_qubits();
  if (psi_prime.num_qubits() != n) throw std::invalid_argument("kets differ in qubit count");
  check_label(j, n);
  if (!panels_equal(panel_of_pure(psi), panel_of_pure(psi_prime), tol)) {
    throw std::invalid_argument("extract_local_unitary: panels differ beyond tolerance");
  }
  const SchmidtSplit s = schmidt_split(psi, j);
  const Matrix2c& e = s.one_qubit_vectors;
  Matrix2c l;
  if (!s.degenerate) {
    // L = sum_i c_i |e_i><e_i|, c_i the phase of <e_i ⊗_j r_i | psi'>.
    Vector2c c;
    for (int i = 0; i < 2; ++i) {
      const CVector basis = tensor_insert(e.col(i), s.rest_vectors.col(i), j);
      const Complex overlap = basis.dot(psi_prime.amplitudes());
      c(i) = std::abs(overlap) > 1e-12 ? overlap / std::abs(overlap) : Complex(1.0);
    }
    if (s.weights[1] < 1e-12) c(1) = c(0);
    l = e * c.asDiagonal() * e.adjoint();
  } else {
    // Both bases are only fixed up to U(2): e'_l = sum v_lm e_m and
    // r'_l = sum u_lm r_m; in the e basis L = v^T u.
    const SchmidtSplit sp = schmidt_split(psi_prime, j);
    Matrix2c u;
    Matrix2c v;
    for (int a = 0; a < 2; ++a) {
      for (int m = 0; m < 2; ++m) {
        u(a, m) = s.rest_vectors.col(m).dot(sp.rest_vectors.col(a));
        v(a, m) = e.col(m).dot(sp.one_qubit_vectors.col(a));
      }
    }
    l = e * (v.transpose() * u) * e.adjoint();
  }
  l = nearest_unitary(l);

  CVector moved = psi.amplitudes();
  apply_on_bit(l, moved, bit_of(j, n));
  const Complex overlap = moved.dot(psi_prime.amplitudes());
  if (std::abs(overlap) < 1.0 - tol) {
    throw InconsistentInput("extract_local_unitary: no one-qubit unitary on qubit " +
                            std::to_string(j) + " maps psi to psi'");
  }
  l *= overlap / std::abs(overlap);
  return {l, j};
}

struct LocalDiagonalization {
  Matrix2c basis_change;  // U with U L U^† diagonal
  RelativePhases phases;
};

/// U L U^† = e^{i alpha} diag(e^{i beta}, e^{-i beta}).
inline LocalDiagonalization diagonalize_local(const Matrix2c& l) {
  const Complex root_det = std::sqrt(l.determinant());
  const Matrix2c special = l / root_det;  // in SU(2): cos b I + i sin b (n.sigma)
  const Matrix2c axis = (special - special.adjoint()) / (2.0 * kI);
  Matrix2c v = Matrix2c::Identity();
  if (axis.cwiseAbs().maxCoeff() > 1e-14) v = spectral_decompose(axis, 1e-8).vectors;
  LocalDiagonalization out;
  out.basis_change = v.adjoint();
  const Matrix2c d = out.basis_change * l * out.basis_change.adjoint();
  const double a0 = std::arg(d(0, 0));
  const double a1 = std::arg(d(1, 1));
  out.phases = {0.5 * (a0 + a1), 0.5 * (a0 - a1)};
  return out;
}

/// Multi-indices permitted to carry amplitude by the phase condition
///   c_I = c_I exp{i[alpha_j - alpha_k + (-1)^{i_j} beta_j - (-1)^{i_k} beta_k]}
/// for all j, k. `coefficients` is the state after the diagonalizing basis
/// changes. Throws InconsistentInput if the permitted set is not inside one
/// antipodal pair or if the state has weight outside it.
inline std::vector<MultiIndex> antipodal_support_reduction(const Ket& coefficients,
                                                           const std::vector<RelativePhases>& phases,
                                                           double tol = kDefaultTol) {
  const int n = coefficients.num_qubits();
  if (static_cast<int>(phases.size()) != n) throw std::invalid_argument("need one phase pair per qubit");
  for (const auto& p : phases) {
    if (std::abs(std::sin(p.beta)) <= tol) {
      throw std::invalid_argument("antipodal_support_reduction: a D_j is scalar");
    }
  }
  const double phase_tol = std::max(tol, 1e-8);
  std::vector<MultiIndex> permitted;
  for (std::size_t idx = 0; idx < coefficients.dim(); ++idx) {
    const MultiIndex mi = MultiIndex::from_linear(idx, n);
    bool ok = true;
    for (int j = 1; j <= n && ok; ++j) {
      for (int k = j + 1; k <= n && ok; ++k) {
        const auto& pj = phases[static_cast<std::size_t>(j - 1)];
        const auto& pk = phases[static_cast<std::size_t>(k - 1)];
        const double sj = mi.bit(j) ? -1.0 : 1.0;
        const double sk = mi.bit(k) ? -1.0 : 1.0;
        const double theta = pj.alpha - pk.alpha + sj * pj.beta - sk * pk.beta;
        ok = std::abs(std::polar(1.0, theta) - 1.0) <= phase_tol;
      }
    }
    if (ok) permitted.push_back(mi);
  }
  if (!permitted.empty()) {
    const MultiIndex& j = permitted.front();
    const MultiIndex jbar = j.complement();
    for (const auto& mi : permitted) {
      if (mi != j && mi != jbar) {
        throw InconsistentInput("phase condition admits " + mi.str() + " beside " + j.str());
      }
    }
  }
  const double amp_tol = std::max(tol, kSupportTol);
  for (std::size_t idx = 0; idx < coefficients.dim(); ++idx) {
    if (std::abs(coefficients[idx]) <= amp_tol) continue;
    const MultiIndex mi = MultiIndex::from_linear(idx, n);
    if (std::find(permitted.begin(), permitted.end(), mi) == permitted.end()) {
      throw InconsistentInput("state has weight on " + mi.str() + ", excluded by the phase condition");
    }
  }
  return permitted;
}

/// Runs the whole constructive route: L_j for every qubit, their
/// diagonalization, and the antipodal reduction, ending in a certificate.
inline GhzCertificate certificate_from_sibling(const Ket& psi, const Ket& psi_prime,
                                               double tol = kDefaultTol) {
  if (equal_up_to_phase(psi, psi_prime, tol)) {
    throw std::invalid_argument("certificate_from_sibling: the states coincide up to phase");
  }
  const int n = psi.num_qubits();
  std::vector<SingleQubitUnitary> locals;
  std::vector<RelativePhases> phases;
  for (int j = 1; j <= n; ++j) {
    const SingleQubitUnitary l = extract_local_unitary(psi, psi_prime, j, tol);
    const LocalDiagonalization d = diagonalize_local(l.matrix());
    locals.emplace_back(d.basis_change, j);
    phases.push_back(d.phases);
  }
  const Ket rotated = apply_locals(locals, psi);
  const auto support = antipodal_support_reduction(rotated, phases, tol);
  if (support.empty()) throw InconsistentInput("phase condition admits no multi-index");
  const MultiIndex j = support.front();
  GhzCertificate cert{std::move(locals), rotated[j], rotated[j.complement()], j};
  validate_certificate(psi, cert, std::max(tol, kSupportTol));
  return cert;
}

}  // namespace ghzdet
