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

TEST(Panel, PureAndMixedConstructionsAgreeWithNaiveTrace) {
  for (int n = 2; n <= 5; ++n) {
    const Ket psi = haar_random_ket(n, 40 + static_cast<std::uint64_t>(n));
    const RdmPanel p = panel_of_pure(psi);
    const RdmPanel q = panel_of_mixed(DensityMatrix::from_ket(psi));
    EXPECT_LT(panel_distance(p, q), 1e-14);
    for (int j = 1; j <= n; ++j) {
      EXPECT_FALSE(p.entry(j).has_label(j));
      EXPECT_LT((p.entry(j).matrix() - testing::naive_partial_trace(testing::outer(psi), n, {j})).cwiseAbs().maxCoeff(),
                1e-14);
    }
  }
}

TEST(Panel, HaarThreeQubitEntriesHaveRankAtMostTwo) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const RdmPanel p = panel_of_pure(haar_random_ket(3, 60 + s));
    for (int j = 1; j <= 3; ++j) {
      const Eigenpairs e = spectral_decompose(p.entry(j).matrix());
      EXPECT_LT(std::abs(e.values(2)), 1e-12);
      EXPECT_LT(std::abs(e.values(3)), 1e-12);
    }
  }
}

TEST(Panel, ConstructorValidatesEntries) {
  const RdmPanel p = panel_of_pure(ghz(3));
  std::vector<DensityMatrix> swapped = {p.entry(2), p.entry(1), p.entry(3)};
  EXPECT_THROW(RdmPanel(3, swapped), std::invalid_argument);
  EXPECT_THROW(RdmPanel(3, {p.entry(1), p.entry(2)}), std::invalid_argument);
  EXPECT_THROW(RdmPanel(1, {}), std::invalid_argument);
  EXPECT_THROW(p.entry(4), std::out_of_range);
  EXPECT_THROW(panel_of_pure(Ket::basis(1, 0)), std::invalid_argument);
  EXPECT_THROW(panel_of_mixed(DensityMatrix({2, 3}, CMatrix::Identity(4, 4) * 0.25)), std::invalid_argument);
}

TEST(Panel, PanelsEqualOnLuOrbitsOnlyForSiblings) {
  const Ket g = generalized_ghz(3, 0.6, 0.8);
  const Ket s = generalized_ghz(3, 0.6, -0.8);
  EXPECT_TRUE(panels_equal(panel_of_pure(g), panel_of_pure(s), 1e-12));
  EXPECT_NEAR(testing::naive_panel_distance(g, s), 0.0, 1e-15);
  const Ket other = generalized_ghz(3, 0.8, 0.6);
  EXPECT_FALSE(panels_equal(panel_of_pure(g), panel_of_pure(other)));
}

TEST(Panel, SubsetsCompareOnlyKeptEntries) {
  const Ket chi = chi_state();
  const Ket z = apply_local(SingleQubitUnitary(pauli_z(), 1), chi);
  EXPECT_TRUE(subset_equal(chi, z, {1, 2, 3}, 1e-10));
  EXPECT_FALSE(subset_equal(chi, z, {4}, 1e-10));
  const PanelSubset a(panel_of_pure(chi), {1, 2, 3});
  const PanelSubset b(panel_of_pure(z), {1, 2, 3});
  EXPECT_TRUE(panels_equal(a, b, 1e-10));
  EXPECT_THROW(panels_equal(a, PanelSubset(panel_of_pure(z), {4})), std::invalid_argument);
  EXPECT_THROW(PanelSubset(panel_of_pure(z), {}), std::invalid_argument);
  EXPECT_THROW(PanelSubset(panel_of_pure(z), {5}), std::out_of_range);
}

TEST(Panel, ConsistencyResidualZeroForRealPanelsPositiveForSpliced) {
  const RdmPanel a = panel_of_pure(haar_random_ket(4, 1));
  const RdmPanel b = panel_of_pure(haar_random_ket(4, 2));
  EXPECT_LT(panel_consistency_residual(a), 1e-14);
  RdmPanel mixed(4, {a.entry(1), b.entry(2), a.entry(3), a.entry(4)});
  EXPECT_GT(panel_consistency_residual(mixed), 1e-3);
}

TEST(Panel, MarginalFromEntryMatchesDirectMarginal) {
  const Ket psi = haar_random_ket(4, 8);
  const RdmPanel p = panel_of_pure(psi);
  for (int j = 1; j <= 4; ++j) {
    for (int m = 1; m <= 4; ++m) {
      if (m == j) continue;
      EXPECT_LT((marginal_from_entry(p, j, m) - one_qubit_rdm(psi, m)).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
  EXPECT_THROW(marginal_from_entry(p, 2, 2), std::out_of_range);
}

}  // namespace
}  // namespace ghzdet
