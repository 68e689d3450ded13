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

#include "dualkit/circuit_sim.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "dualkit/constructions.hpp"
#include "dualkit/invariants.hpp"
#include "dualkit/qubit_exact.hpp"
#include "test_support.hpp"

namespace dualkit {
namespace {

using testing::random_gate;
using testing::random_unitary;

// Generic dual-unitary qubit gate: a Cartan gate dressed by Haar locals.
Gate dressed_dual_qubit(double J, const std::string& label) {
  return sandwich_locals(cartan_gate(J), random_unitary(2, 7, label + "/u1"),
                         random_unitary(2, 7, label + "/u2"), random_unitary(2, 7, label + "/v1"),
                         random_unitary(2, 7, label + "/v2"));
}

TEST(WeylBasis, OrthonormalAndTraceless) {
  for (int q : {2, 3, 4}) {
    const auto a = weyl_basis(q);
    ASSERT_EQ(static_cast<int>(a.size()), q * q);
    EXPECT_LT(max_abs(a[0] - CMat::Identity(q, q)), 1e-15);
    for (int i = 0; i < q * q; ++i) {
      if (i > 0) EXPECT_LT(std::abs(a[i].trace()), 1e-12) << q << " " << i;
      EXPECT_LT(unitarity_defect(a[i]), 1e-12);
      for (int j = 0; j < q * q; ++j) {
        const cplx g = (a[i].adjoint() * a[j]).trace() / static_cast<double>(q);
        EXPECT_LT(std::abs(g - (i == j ? 1.0 : 0.0)), 1e-12) << q << " " << i << " " << j;
      }
    }
  }
}

TEST(WeylBasis, CompleteTwirl) {
  // Σ_j a_j ρ a_j† / q² = tr(ρ) 1/q for any ρ.
  const int q = 3;
  const auto a = weyl_basis(q);
  const CMat rho = testing::random_matrix(q, 11, "twirl");
  CMat acc = CMat::Zero(q, q);
  for (const auto& aj : a) acc += aj * rho * aj.adjoint();
  acc /= static_cast<double>(q * q);
  EXPECT_LT(max_abs(acc - rho.trace() / static_cast<double>(q) * CMat::Identity(q, q)), 1e-13);
}

TEST(SiteLeg, Mapping) {
  EXPECT_EQ(site_leg(0.0, 2), 1);
  EXPECT_EQ(site_leg(0.5, 2), 2);
  EXPECT_EQ(site_leg(1.0, 2), 3);
  EXPECT_EQ(site_leg(1.5, 2), 0);
  EXPECT_EQ(site_leg(-0.5, 2), 0);
  EXPECT_EQ(site_leg(2.0, 2), 1);
  EXPECT_EQ(site_leg(0.5, 1), 0);
  try {
    site_leg(0.25, 2);
    FAIL() << "expected Usage";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
  }
}

TEST(Floquet, SingleCellMatchesHandComposition) {
  // For L = 1 the translation is the swap, so 𝐔 = S U S U.
  const Gate u = random_gate(2, 3, "floquet/L1");
  CircuitConfig cfg;
  cfg.q = 2;
  cfg.L = 1;
  cfg.gate = u;
  const CMat s = swap_operator(2).m;
  EXPECT_LT(max_abs(build_floquet(cfg) - s * u.m * s * u.m), 1e-13);
  EXPECT_LT(max_abs(translation_operator(2, 1) - s), 1e-15);
}

TEST(Floquet, UnitaryAndTwoSiteTranslationInvariant) {
  CircuitConfig cfg;
  cfg.q = 2;
  cfg.L = 4;
  cfg.gate = random_gate(2, 3, "floquet/L4");
  const CMat f = build_floquet(cfg);
  EXPECT_LT(unitarity_defect(f), 1e-11);
  const CMat t = translation_operator(2, 4);
  const CMat t2 = t * t;
  EXPECT_LT(max_abs(f * t2 - t2 * f), 1e-11);
  // A single translation is not a symmetry of a generic brickwork.
  EXPECT_GT(max_abs(f * t - t * f), 1e-3);
  // Translation moves leg k+1 onto leg k.
  const CMat a = weyl_basis(2)[1];
  CircuitSimulator sim(cfg);
  EXPECT_LT(max_abs(t * sim.embed(a, 2) * t.adjoint() - sim.embed(a, 1)), 1e-15);
}

TEST(Circuit, SwapGatesPropagateBallistically) {
  CircuitConfig cfg;
  cfg.q = 2;
  cfg.L = 4;
  cfg.gate = swap_operator(2);
  CircuitSimulator sim(cfg);
  const auto a = weyl_basis(2);
  for (int t = 0; t <= 2; ++t) {
    for (int i = 1; i < 4; ++i) {
      EXPECT_NEAR(std::abs(sim.correlation_single(i, i, t, 0.0, t)), 1.0, 1e-12);
      EXPECT_NEAR(std::abs(sim.correlation_single(i, i, 0.5 - t, 0.5, t)), 1.0, 1e-12);
      if (t > 0) EXPECT_LT(std::abs(sim.correlation_single(i, i, 0.0, 0.0, t)), 1e-12);
    }
  }
}

TEST(Circuit, DualGateCorrelationsLiveOnTheCone) {
  CircuitConfig cfg;
  cfg.q = 2;
  cfg.L = 4;
  cfg.gate = dressed_dual_qubit(0.61, "cone");
  ASSERT_TRUE(classify_duality(cfg.gate).is_dual);
  const LightconeReport rep = lightcone_scan(cfg, 2);
  EXPECT_LT(rep.interior_max, 1e-10);
  EXPECT_LT(rep.exterior_max, 1e-10);
  EXPECT_LT(rep.cone_residual, 1e-10);
  EXPECT_GT(rep.cone_max, 1e-2);
  EXPECT_LT(rep.translation_residual, 1e-11);

  CircuitSimulator sim(cfg);
  const auto a = weyl_basis(2);
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) {
      const cplx plus = sim.correlation_single(i, j, 2.0, 0.0, 2);
      const cplx minus = sim.correlation_single(i, j, -1.5, 0.5, 2);
      EXPECT_LT(std::abs(plus - lightcone_correlation_prediction(cfg.gate, a[i], a[j], 2,
                                                                  Side::Plus)),
                1e-10);
      EXPECT_LT(std::abs(minus - lightcone_correlation_prediction(cfg.gate, a[i], a[j], 2,
                                                                   Side::Minus)),
                1e-10);
      // t = 0 reproduces the orthonormality of the basis.
      EXPECT_NEAR(std::abs(sim.correlation_single(i, j, 0.0, 0.0, 0)), i == j ? 1.0 : 0.0, 1e-12);
    }
}

TEST(Circuit, GenericGateSpreadsInsideTheCone) {
  CircuitConfig cfg;
  cfg.q = 2;
  cfg.L = 4;
  cfg.gate = random_gate(2, 5, "generic");
  const LightconeReport rep = lightcone_scan(cfg, 2);
  EXPECT_GT(rep.interior_max, 1e-3);
  EXPECT_LT(rep.exterior_max, 1e-10);
  EXPECT_LT(rep.translation_residual, 1e-11);
}

TEST(Circuit, TwoUnitaryCorrelationsVanishAfterOneStep) {
  CircuitConfig cfg;
  cfg.q = 3;
  cfg.L = 2;
  cfg.gate = fixture("two_unitary_q3");
  const LightconeReport rep = lightcone_scan(cfg, 1);
  EXPECT_LT(rep.cone_max, 1e-9);
  EXPECT_LT(rep.interior_max, 1e-9);
}

TEST(Circuit, TDualOnlyGateHasNoConeSignal) {
  // D₃ is block diagonal and T-dual, but not dual: correlations must vanish
  // on the cone as well as inside it.
  const Gate d3 = fixture("D3");
  const DualityClass cls = classify_duality(d3);
  ASSERT_TRUE(cls.is_t_dual);
  ASSERT_FALSE(cls.is_dual);
  CircuitConfig cfg;
  cfg.q = 3;
  cfg.L = 2;
  cfg.gate = d3;
  const LightconeReport rep = lightcone_scan(cfg, 1);
  EXPECT_LT(rep.cone_max, 1e-10);
}

TEST(Circuit, WindowIsEnforced) {
  CircuitConfig cfg;
  cfg.q = 2;
  cfg.L = 2;
  cfg.gate = swap_operator(2);
  CircuitSimulator sim(cfg);
  try {
    sim.correlation_single(1, 1, 0.0, 0.0, 2);
    FAIL() << "expected Validation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
  cfg.allow_beyond_window = true;
  CircuitSimulator wide(cfg);
  EXPECT_NO_THROW(wide.correlation_single(1, 1, 0.0, 0.0, 2));
}

TEST(TwoSite, CatMapOnNeighbouringGatesVanishes) {
  // L = 3 so that the two gates touched by the pair do not wrap around the
  // ring onto each other within one step.
  CircuitConfig cfg;
  cfg.q = 3;
  cfg.L = 3;
  cfg.gate = cat_map(3);
  const TwoSiteReport rep = two_site_scan(cfg, 1, 0.5);
  EXPECT_EQ(rep.y1, 0.5);
  EXPECT_FALSE(rep.cells.empty());
  EXPECT_LT(rep.max_abs, 1e-9);
}

TEST(TwoSite, SharedGatePairCanStayCorrelated) {
  // When both operators enter the same gate, a 2-unitary gate can map the
  // product onto a single-site operator that then moves freely.
  CircuitConfig cfg;
  cfg.q = 3;
  cfg.L = 2;
  cfg.gate = cat_map(3);
  const TwoSiteReport rep = two_site_scan(cfg, 1, 0.0);
  EXPECT_NEAR(rep.max_abs, 1.0, 1e-9);
}

TEST(TwoSite, TimeZeroPattern) {
  CircuitConfig cfg;
  cfg.q = 3;
  cfg.L = 2;
  cfg.gate = cat_map(3);
  CircuitSimulator sim(cfg);
  const auto a = weyl_basis(3);
  // ⟨a_k a_l, a_i a_j⟩ on the initial pair: a Kronecker delta in (i,k),(j,l).
  for (int i : {1, 4})
    for (int j : {2, 7})
      for (int k : {1, 4})
        for (int l : {2, 7}) {
          const cplx v = sim.correlation_two_site(i, j, k, l, 0.5, 1.0, 0, 0.5);
          const cplx expect =
              (a[k] * a[i]).trace() * (a[l] * a[j]).trace() / 9.0;
          EXPECT_LT(std::abs(v - expect), 1e-12);
        }
}

TEST(TwoSite, NonTwoUnitaryGateKeepsCorrelations) {
  CircuitConfig cfg;
  cfg.q = 2;
  cfg.L = 2;
  cfg.gate = dressed_dual_qubit(0.4, "two-site");
  const TwoSiteReport rep = two_site_scan(cfg, 1, 0.5);
  EXPECT_GT(rep.max_abs, 1e-2);
}

}  // namespace
}  // namespace dualkit
