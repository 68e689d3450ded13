// Copyright 2026 The dualkit Authors
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


#include "dualkit/invariants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "dualkit/constructions.hpp"
#include "dualkit/qubit_exact.hpp"
#include "test_support.hpp"

namespace dualkit {
namespace {

constexpr double kPi = std::numbers::pi;

Gate identity_gate(int q) { return Gate(q, CMat::Identity(q * q, q * q)); }

Gate dcnot() {
  // S·CNOT with the first qubit as control.
  CMat cnot = CMat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 2; ++a) cnot(i * 2 + ((a + i) % 2), i * 2 + a) = 1.0;
  return swap_operator(2) * Gate(2, cnot);
}

TEST(Schmidt, ProductGateHasSingleValue) {
  const CMat u1 = testing::random_unitary(3, 30, "schmidt/u1");
  const CMat u2 = testing::random_unitary(3, 30, "schmidt/u2");
  const SchmidtSpectrum s = schmidt_spectrum(Gate(3, kron(u1, u2)));
  EXPECT_NEAR(s.gamma[0], 9.0, 1e-12);
  for (std::size_t k = 1; k < s.gamma.size(); ++k) EXPECT_NEAR(s.gamma[k], 0.0, 1e-12);
}

TEST(Schmidt, DualGatesHaveFlatSpectrum) {
  for (const Gate& u : {swap_operator(2), cat_map(3), fixture("dual_q3_ep3_4")}) {
    const SchmidtSpectrum s = schmidt_spectrum(u);
    ASSERT_EQ(s.gamma.size(), static_cast<std::size_t>(u.q * u.q));
    for (double g : s.gamma) EXPECT_NEAR(g, 1.0, 1e-10);
  }
}

TEST(Schmidt, SumsToDimensionAndFlagsNonUnitary) {
  const Gate u = testing::random_gate(3, 31, "schmidt/sum");
  const SchmidtSpectrum s = schmidt_spectrum(u);
  double total = 0.0;
  for (double g : s.gamma) total += g;
  EXPECT_NEAR(total, 9.0, 1e-11);
  EXPECT_TRUE(s.input_unitary);
  EXPECT_FALSE(schmidt_spectrum(Gate(3, 2.0 * u.m)).input_unitary);
}

TEST(OperatorEntanglement, SwapAndIdentity) {
  for (int q = 2; q <= 5; ++q) {
    const double es = 1.0 - 1.0 / (q * q);
    EXPECT_NEAR(operator_entanglement(swap_operator(q)), es, 1e-14);
    EXPECT_NEAR(operator_entanglement(identity_gate(q)), 0.0, 1e-14);
    EXPECT_NEAR(operator_entanglement_swapped(identity_gate(q)), es, 1e-14);
  }
  EXPECT_DOUBLE_EQ(operator_entanglement(swap_operator(2)), 0.75);
}

TEST(OperatorEntanglement, TwoUnitaryCatMapSaturatesBoth) {
  const Gate u = cat_map(3);
  EXPECT_NEAR(operator_entanglement(u), 8.0 / 9.0, 1e-13);
  EXPECT_NEAR(operator_entanglement_swapped(u), 8.0 / 9.0, 1e-13);
}

TEST(EntanglingPower, TrivialGates) {
  for (int q = 2; q <= 4; ++q) {
    EXPECT_NEAR(entangling_power(swap_operator(q)), 0.0, 1e-14);
    EXPECT_NEAR(entangling_power(identity_gate(q)), 0.0, 1e-14);
  }
}

TEST(EntanglingPower, CartanFamilyClosedForm) {
  for (int k = 0; k <= 20; ++k) {
    const double J = kPi / 4.0 * k / 20.0;
    const double c = std::cos(2.0 * J);
    EXPECT_NEAR(entangling_power(cartan_gate(J)), 2.0 / 3.0 * c * c, 1e-12) << "J=" << J;
  }
}

TEST(EntanglingPower, CatMaps) {
  EXPECT_NEAR(entangling_power(cat_map(2)), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(entangling_power(cat_map(3)), 1.0, 1e-12);
  EXPECT_NEAR(entangling_power(cat_map(4)), 14.0 / 15.0, 1e-12);
  EXPECT_NEAR(entangling_power(cat_map(5)), 1.0, 1e-12);
}

TEST(EntanglingPower, LocalUnitaryInvariance) {
  for (int q = 2; q <= 4; ++q) {
    const std::string tag = "lui/" + std::to_string(q);
    const Gate u = testing::random_gate(q, 32, tag);
    const Gate v = sandwich_locals(u, testing::random_unitary(q, 32, tag + "/a"),
                                   testing::random_unitary(q, 32, tag + "/b"),
                                   testing::random_unitary(q, 32, tag + "/c"),
                                   testing::random_unitary(q, 32, tag + "/d"));
    EXPECT_NEAR(entangling_power(u), entangling_power(v), 1e-11);
    EXPECT_NEAR(operator_entanglement(u), operator_entanglement(v), 1e-11);
    EXPECT_NEAR(operator_entanglement_swapped(u), operator_entanglement_swapped(v), 1e-11);
  }
}

TEST(Duality, SwapAndIdentity) {
  const DualityClass s = classify_duality(swap_operator(3));
  EXPECT_TRUE(s.is_dual);
  EXPECT_FALSE(s.is_t_dual);
  const DualityClass id = classify_duality(identity_gate(3));
  EXPECT_FALSE(id.is_dual);
  EXPECT_TRUE(id.is_t_dual);
}

TEST(Duality, DcnotIsDual) {
  const DualityClass c = classify_duality(dcnot());
  EXPECT_TRUE(c.is_dual);
  EXPECT_FALSE(c.is_2unitary);
}

TEST(Duality, TwoUnitaryFixtureAndCatMaps) {
  for (const Gate& u : {fixture("two_unitary_q3"), cat_map(3), cat_map(5)}) {
    const DualityClass c = classify_duality(u);
    EXPECT_TRUE(c.is_2unitary);
    EXPECT_TRUE(c.is_dual && c.is_t_dual);
    EXPECT_NEAR(entangling_power(u), 1.0, 1e-12);
  }
  EXPECT_FALSE(classify_duality(cat_map(4)).is_2unitary);
}

TEST(Duality, TDualityEquivalentToDualityOfSwappedProducts) {
  const Gate s = swap_operator(3);
  for (const Gate& u : {identity_gate(3), fixture("D3"), testing::random_gate(3, 33, "tdual")}) {
    const bool t = classify_duality(u).is_t_dual;
    EXPECT_EQ(t, classify_duality(s * u).is_dual);
    EXPECT_EQ(t, classify_duality(u * s).is_dual);
  }
}

TEST(Thresholds, Ladder) {
  EXPECT_NEAR(mixing_thresholds(2)[0], 2.0 / 3.0, 1e-15);
  const auto t3 = mixing_thresholds(3);
  ASSERT_EQ(t3.size(), 8u);
  EXPECT_NEAR(t3[0], 7.0 / 8.0, 1e-15);
  EXPECT_NEAR(t3[7], 0.0, 1e-15);
  EXPECT_NEAR(mixing_thresholds(6)[0], 34.0 / 35.0, 1e-15);
}

TEST(Thresholds, BoundaryFlag) {
  const ThresholdPosition at = locate_threshold(2.0 / 3.0, 2);
  EXPECT_TRUE(at.boundary);
  EXPECT_EQ(at.boundary_k, 1);
  const ThresholdPosition above = locate_threshold(0.9, 3);
  EXPECT_FALSE(above.boundary);
  EXPECT_EQ(above.first_certified_mode, 1);
  EXPECT_EQ(locate_threshold(0.0, 3).first_certified_mode, 9);
}

TEST(Report, CollectsEverything) {
  const InvariantReport r = invariant_report(cat_map(3));
  EXPECT_NEAR(r.e_p, 1.0, 1e-12);
  EXPECT_NEAR(r.E_U, 8.0 / 9.0, 1e-12);
  EXPECT_TRUE(r.duality.is_2unitary);
  EXPECT_EQ(r.schmidt.gamma.size(), 9u);
}

}  // namespace
}  // namespace dualkit
