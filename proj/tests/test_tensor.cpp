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

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ghzdet {
namespace {

using testing::embed;
using testing::naive_partial_trace;
using testing::outer;

TEST(MultiIndex, LinearRoundTripAndQubitOneIsMostSignificant) {
  const MultiIndex m = MultiIndex::from_string("1011");
  EXPECT_EQ(m.linear(), 0b1011u);
  EXPECT_EQ(m.bit(1), 1);
  EXPECT_EQ(m.bit(2), 0);
  EXPECT_EQ(MultiIndex::from_linear(11, 4), m);
  EXPECT_EQ(m.complement().str(), "0100");
  for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(MultiIndex::from_linear(i, 5).linear(), i);
}

TEST(MultiIndex, RejectsBadInput) {
  EXPECT_THROW(MultiIndex::from_string("012"), std::invalid_argument);
  EXPECT_THROW(MultiIndex::from_linear(8, 3), std::out_of_range);
  EXPECT_THROW(MultiIndex(std::vector<int>{0, 2}), std::invalid_argument);
  EXPECT_THROW(MultiIndex::from_string("01").bit(3), std::out_of_range);
}

TEST(Ket, NormalizesAndValidates) {
  const Ket k(2, (CVector(4) << 3, 0, 0, 4).finished());
  EXPECT_NEAR(k.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_NEAR(k[0].real(), 0.6, 1e-15);
  EXPECT_THROW(Ket(2, CVector::Zero(4)), std::invalid_argument);
  EXPECT_THROW(Ket(2, CVector::Ones(3)), std::invalid_argument);
  EXPECT_THROW(Ket(CVector::Ones(6)), std::invalid_argument);
  EXPECT_THROW(Ket(0, CVector::Ones(1)), std::invalid_argument);
  EXPECT_EQ(Ket::basis("101")[5], Complex(1.0));
  EXPECT_EQ(Ket(CVector::Ones(8)).num_qubits(), 3);
}

TEST(Ket, CanonicalPhaseIsDeterministic) {
  const Ket a = haar_random_ket(3, 1);
  const Ket b(3, std::polar(1.0, 0.77) * a.amplitudes());
  const Ket ca = canonical_phase(a);
  const Ket cb = canonical_phase(b);
  EXPECT_LT((ca.amplitudes() - cb.amplitudes()).norm(), 1e-14);
  EXPECT_NEAR(ca[0].imag(), 0.0, 1e-15);
  EXPECT_GT(ca[0].real(), 0.0);
  EXPECT_TRUE(equal_up_to_phase(a, b));
}

TEST(Ket, FixVectorPhaseMakesLargestComponentRealPositive) {
  Vector2c v(Complex(0.1, 0.2), Complex(-0.5, 0.7));
  fix_vector_phase(v);
  EXPECT_NEAR(v(1).imag(), 0.0, 1e-15);
  EXPECT_GT(v(1).real(), 0.0);
}

TEST(Spectral, DescendingOrderAndRejectsNonHermitian) {
  CMatrix h(2, 2);
  h << 0.25, 0, 0, 0.75;
  const Eigenpairs e = spectral_decompose(h);
  EXPECT_NEAR(e.values(0), 0.75, 1e-15);
  EXPECT_NEAR(e.values(1), 0.25, 1e-15);
  h(0, 1) = 0.1;
  EXPECT_THROW(spectral_decompose(h), std::invalid_argument);
}

TEST(DensityMatrix, ValidatesTracePositivityAndLabels) {
  CMatrix m = CMatrix::Identity(2, 2) * 0.5;
  EXPECT_NO_THROW(DensityMatrix({3}, m));
  EXPECT_THROW(DensityMatrix({1}, m * 2.0), std::invalid_argument);
  CMatrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  EXPECT_THROW(DensityMatrix({1}, neg), std::invalid_argument);
  EXPECT_THROW(DensityMatrix({2, 1}, CMatrix::Identity(4, 4) * 0.25), std::invalid_argument);
  EXPECT_THROW(DensityMatrix({1, 2}, m), std::invalid_argument);
}

TEST(Unitary, SingleQubitUnitaryValidation) {
  EXPECT_NO_THROW(SingleQubitUnitary(hadamard(), 1));
  EXPECT_THROW(SingleQubitUnitary(2.0 * Matrix2c::Identity(), 1), std::invalid_argument);
  EXPECT_THROW(SingleQubitUnitary(pauli_x(), 0), std::out_of_range);
  Matrix2c near = hadamard();
  near(0, 0) += 1e-3;
  EXPECT_LT(unitarity_defect(nearest_unitary(near)), 1e-14);
}

TEST(Kernels, ApplyLocalMatchesExplicitKronecker) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n) {
    const Ket psi = haar_random_ket(n, 10 + static_cast<std::uint64_t>(n));
    for (int j = 1; j <= n; ++j) {
      const Matrix2c u = haar_random_unitary2(rng);
      const Ket fast = apply_local(SingleQubitUnitary(u, j), psi);
      const CVector slow = embed(u, j, n) * psi.amplitudes();
      EXPECT_LT((fast.amplitudes() - slow).norm(), 1e-13) << "n=" << n << " j=" << j;
    }
  }
}

TEST(Kernels, ConjugateOnBitMatchesExplicitKronecker) {
  std::mt19937_64 rng(4);
  const Ket psi = haar_random_ket(4, 99);
  const CMatrix rho = outer(psi);
  for (int j = 1; j <= 4; ++j) {
    const Matrix2c u = haar_random_unitary2(rng);
    const CMatrix e = embed(u, j, 4);
    EXPECT_LT((conjugate_on_bit(u, rho, bit_of(j, 4)) - e * rho * e.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Kernels, TensorInsertAndSplitQubitAreInverse) {
  const Ket psi = haar_random_ket(5, 5);
  for (int j = 1; j <= 5; ++j) {
    const CMatrix a = split_qubit(psi.amplitudes(), j, 5);
    const CVector back = tensor_insert(Vector2c(1, 0), a.row(0).transpose(), j) +
                         tensor_insert(Vector2c(0, 1), a.row(1).transpose(), j);
    EXPECT_LT((back - psi.amplitudes()).norm(), 1e-15);
  }
}

TEST(PartialTrace, MatchesNaiveOracleOnEverySubset) {
  for (int n = 1; n <= 5; ++n) {
    const Ket psi = haar_random_ket(n, 200 + static_cast<std::uint64_t>(n));
    const DensityMatrix rho = DensityMatrix::from_ket(psi);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> traced;
      for (int q = 1; q <= n; ++q) {
        if (mask & (1u << (q - 1))) traced.push_back(q);
      }
      const CMatrix expect = naive_partial_trace(outer(psi), n, traced);
      EXPECT_LT((reduced_density(psi, traced).matrix() - expect).cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_LT((partial_trace(rho, traced).matrix() - expect).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(PartialTrace, RejectsUnknownOrRepeatedLabels) {
  const Ket psi = haar_random_ket(3, 1);
  EXPECT_ANY_THROW(reduced_density(psi, {4}));
  EXPECT_ANY_THROW(reduced_density(psi, {2, 2}));
  EXPECT_ANY_THROW(partial_trace(DensityMatrix::from_ket(psi), {0}));
}

TEST(PartialTrace, PropertiesTraceHermitianPositive) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Ket psi = haar_random_ket(4, 300 + s);
    const DensityMatrix r = reduced_density(psi, {static_cast<int>(s % 4) + 1});
    EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-13);
    EXPECT_LT(hermiticity_defect(r.matrix()), 1e-15);
    EXPECT_GT(spectral_decompose(r.matrix()).values.minCoeff(), -1e-14);
  }
}

TEST(PartialTrace, NestedTracesCompose) {
  const Ket psi = haar_random_ket(5, 17);
  const DensityMatrix a = partial_trace(reduced_density(psi, {2}), {4});
  const DensityMatrix b = reduced_density(psi, {2, 4});
  EXPECT_EQ(a.labels(), b.labels());
  EXPECT_LT((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Schmidt, ReassemblyEveryPivotUpToEightQubits) {
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const Ket psi = haar_random_ket(n, 1000 * static_cast<std::uint64_t>(n) + s);
      for (int j = 1; j <= n; ++j) {
        const SchmidtSplit sp = schmidt_split(psi, j);
        EXPECT_LT((sp.reassemble() - psi.amplitudes()).norm(), 1e-10) << "n=" << n << " j=" << j;
        EXPECT_GE(sp.weights[0], sp.weights[1]);
        EXPECT_NEAR(sp.weights[0] + sp.weights[1], 1.0, 1e-14);
        EXPECT_LT((sp.rest_vectors.adjoint() * sp.rest_vectors - Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(Schmidt, ProductAndGhzEdgeCases) {
  const SchmidtSplit p = schmidt_split(zero_state(3), 2);
  EXPECT_NEAR(p.weights[1], 0.0, 1e-15);
  EXPECT_FALSE(p.degenerate);
  EXPECT_LT((p.reassemble() - zero_state(3).amplitudes()).norm(), 1e-14);
  const SchmidtSplit g = schmidt_split(ghz(4), 3);
  EXPECT_TRUE(g.degenerate);
  EXPECT_LT((g.reassemble() - ghz(4).amplitudes()).norm(), 1e-14);
  EXPECT_THROW(schmidt_split(Ket::basis(1, 0), 1), std::invalid_argument);
  EXPECT_THROW(schmidt_split(ghz(3), 4), std::out_of_range);
}

TEST(Locals, ApplyLocalsNeedsOnePerQubit) {
  std::vector<SingleQubitUnitary> two = {SingleQubitUnitary::identity(1), SingleQubitUnitary::identity(2)};
  EXPECT_THROW(apply_locals(two, ghz(3)), std::invalid_argument);
}

}  // namespace
}  // namespace ghzdet
