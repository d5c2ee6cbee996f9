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

namespace ghzdet {
namespace {

using testing::naive_stabilizer_dimension;

void expect_elements_stabilize(const Ket& psi, const StabilizerBasis& b) {
  for (const auto& e : b.elements) EXPECT_LT(e.defect(psi), 1e-9);
}

TEST(Stabilizer, GhzHasDimensionNMinusOneWithZOnlyElements) {
  for (int n = 3; n <= 8; ++n) {
    const Ket g = ghz(n);
    const StabilizerBasis b = stabilizer_subalgebra(g);
    EXPECT_EQ(b.dimension, n - 1) << n;
    if (n <= 6) EXPECT_EQ(naive_stabilizer_dimension(g), n - 1);
    expect_elements_stabilize(g, b);
    for (const auto& e : b.elements) {
      double sum_z = 0.0;
      for (const auto& c : e.coords) {
        EXPECT_NEAR(c[0], 0.0, 1e-12);
        EXPECT_NEAR(c[1], 0.0, 1e-12);
        sum_z += c[2];
      }
      EXPECT_NEAR(sum_z, 0.0, 1e-12);
      EXPECT_NEAR(e.phase, 0.0, 1e-12);
    }
  }
}

TEST(Stabilizer, GeneralizedGhzAlsoNMinusOne) {
  for (int n = 3; n <= 6; ++n) {
    EXPECT_EQ(stabilizer_subalgebra(generalized_ghz(n, 0.6, Complex(0.0, 0.8))).dimension, n - 1);
  }
}

TEST(Stabilizer, ZeroStateHasDimensionN) {
  for (int n = 1; n <= 8; ++n) {
    const StabilizerBasis b = stabilizer_subalgebra(zero_state(n));
    EXPECT_EQ(b.dimension, n);
    if (n <= 6) EXPECT_EQ(naive_stabilizer_dimension(zero_state(n)), n);
    expect_elements_stabilize(zero_state(n), b);
  }
}

TEST(Stabilizer, HaarStatesHaveDimensionZero) {
  for (int n = 3; n <= 5; ++n) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Ket psi = haar_random_ket(n, 500 + s);
      EXPECT_EQ(stabilizer_subalgebra(psi).dimension, 0);
      EXPECT_EQ(naive_stabilizer_dimension(psi), 0);
    }
  }
}

TEST(Stabilizer, MatchesNaiveNullityOnMixedCorpus) {
  std::vector<Ket> corpus = {w_state(3), w_state(4), chi_state(), cluster4(), kron(ghz(2), ghz(2)),
                             kron(Ket::basis(1, 1), ghz(3)), hybrid_ket(4, 3), hybrid_ket(5, 4)};
  for (const auto& psi : corpus) {
    const StabilizerBasis b = stabilizer_subalgebra(psi);
    EXPECT_EQ(b.dimension, naive_stabilizer_dimension(psi));
    expect_elements_stabilize(psi, b);
  }
  EXPECT_EQ(stabilizer_subalgebra(chi_state()).dimension, 2);
}

TEST(Stabilizer, BasisIsInReducedRowEchelonForm) {
  const StabilizerBasis b = stabilizer_subalgebra(ghz(5));
  int last_lead = -1;
  for (const auto& e : b.elements) {
    const Eigen::VectorXd v = e.flat();
    int lead = 0;
    while (lead < v.size() && std::abs(v(lead)) < 1e-12) ++lead;
    ASSERT_LT(lead, v.size());
    EXPECT_GT(lead, last_lead);
    EXPECT_NEAR(std::abs(v(lead)), 1.0, 1e-12);
    last_lead = lead;
  }
}

TEST(Stabilizer, LuCovarianceOfDimensionAndBasis) {
  for (int n = 2; n <= 5; ++n) {
    std::vector<Ket> states = {haar_random_ket(n, 70), ghz(n), zero_state(n)};
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto locals = random_locals(n, 900 + i);
      const Ket moved = apply_locals(locals, states[i]);
      const StabilizerBasis b = stabilizer_subalgebra(states[i]);
      EXPECT_EQ(stabilizer_subalgebra(moved).dimension, b.dimension);
      for (const auto& e : b.elements) EXPECT_LT(conjugate_element(e, locals).defect(moved), 1e-9);
    }
  }
}

TEST(Stabilizer, AdjointRotationIsOrthogonalAndMatchesConjugation) {
  std::mt19937_64 rng(5);
  const Matrix2c u = haar_random_unitary2(rng);
  const Eigen::Matrix3d r = adjoint_rotation(u);
  EXPECT_LT((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-13);
  const auto s = paulis();
  const Eigen::Vector3d v(0.3, -0.2, 0.9);
  const Matrix2c lhs = u * (v(0) * s[0] + v(1) * s[1] + v(2) * s[2]) * u.adjoint();
  const Eigen::Vector3d w = r * v;
  EXPECT_LT((lhs - (w(0) * s[0] + w(1) * s[1] + w(2) * s[2])).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Stabilizer, VerifyGhzSubalgebraWithCertificateLocals) {
  for (int n = 3; n <= 6; ++n) {
    const Ket psi = random_ghz_orbit(n, 30 + static_cast<std::uint64_t>(n)).state;
    const Classification c = classify(psi);
    ASSERT_TRUE(c.is_ghz());
    EXPECT_TRUE(verify_ghz_subalgebra(stabilizer_subalgebra(psi), c.certificate->locals));
  }
  std::vector<SingleQubitUnitary> ids;
  for (int j = 1; j <= 4; ++j) ids.push_back(SingleQubitUnitary::identity(j));
  EXPECT_FALSE(verify_ghz_subalgebra(stabilizer_subalgebra(chi_state()), ids));
  EXPECT_FALSE(verify_ghz_subalgebra(stabilizer_subalgebra(zero_state(4)), ids));
  EXPECT_TRUE(verify_ghz_subalgebra(stabilizer_subalgebra(ghz(4)), ids));
}

TEST(Stabilizer, DimensionCriterion) {
  EXPECT_EQ(undetermined_by_dimension(ghz(3)), DimensionVerdict::Undetermined);
  EXPECT_EQ(undetermined_by_dimension(ghz(5)), DimensionVerdict::Undetermined);
  EXPECT_EQ(undetermined_by_dimension(haar_random_ket(5, 3)), DimensionVerdict::Determined);
  EXPECT_EQ(undetermined_by_dimension(ghz(4)), DimensionVerdict::Inapplicable);
  EXPECT_EQ(undetermined_by_dimension(ghz(2)), DimensionVerdict::Inapplicable);
  // dimension n - 1 but a product across qubit 1
  const Ket prod = kron(Ket::basis(1, 0), ghz(2));
  EXPECT_EQ(stabilizer_subalgebra(prod).dimension, 4);
  const Ket prod5 = kron(Ket::basis(1, 0), ghz(4));
  EXPECT_EQ(stabilizer_subalgebra(prod5).dimension, 4);
  EXPECT_EQ(undetermined_by_dimension(prod5), DimensionVerdict::Determined);
  EXPECT_STREQ(to_string(DimensionVerdict::Inapplicable), "inapplicable");
}

TEST(Stabilizer, ElementActRejectsWrongSize) {
  AlgebraElement e;
  e.coords.resize(2);
  EXPECT_THROW(e.act(ghz(3)), std::invalid_argument);
}

}  // namespace
}  // namespace ghzdet
