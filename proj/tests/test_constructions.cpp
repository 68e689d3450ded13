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


#include "dualkit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dualkit/invariants.hpp"
#include "test_support.hpp"

namespace dualkit {
namespace {

constexpr double kPi = std::numbers::pi;
// Upper 1% point of χ² with 19 degrees of freedom: statistic below it ⇔ p > 0.01.
constexpr double kChi2Crit19 = 36.191;

CMat dft(int q) {
  CMat f(q, q);
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l) f(k, l) = std::polar(1.0 / std::sqrt(q), 2.0 * kPi * k * l / q);
  return f;
}

PermutationSpec worked_dual_example() {
  // 1-indexed K, L of the worked example, shifted to 0-indexed.
  PermutationSpec s;
  s.q = 3;
  s.K = {{0, 1, 2}, {2, 1, 0}, {2, 0, 1}};
  s.L = {{0, 2, 0}, {1, 0, 2}, {2, 1, 1}};
  return s;
}

PermutationSpec worked_two_unitary_example() {
  PermutationSpec s;
  s.q = 3;
  s.K = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  s.L = {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  return s;
}

// ------------------------------------------------------------------ blocks --

TEST(Blocks, IdentityBlocksGiveSwap) {
  for (int q = 2; q <= 4; ++q) {
    BlockSpec spec{q, std::vector<CMat>(q, CMat::Identity(q, q)), BlockSide::DS};
    const Gate u = block_diagonal_gate(spec);
    EXPECT_EQ(u.m, swap_operator(q).m);
    EXPECT_NEAR(entangling_power(u), 0.0, 1e-14);
  }
}

TEST(Blocks, AlwaysDualAndUniformBound) {
  for (int q = 2; q <= 4; ++q) {
    double worst = 0.0;
    for (int n = 0; n < 300; ++n) {
      const BlockSpec spec = random_block_spec(q, std::vector<int>(q, 1),
                                               Stream(80, "blocks/uniform/" + std::to_string(q)).at(n));
      const Gate u = block_diagonal_gate(spec);
      EXPECT_TRUE(classify_duality(u).is_dual);
      worst = std::max(worst, entangling_power(u));
    }
    EXPECT_LE(worst, q / (q + 1.0) + 1e-12) << "q=" << q;
  }
}

TEST(Blocks, TwoBlockQutritBoundNotAttained) {
  double worst = 0.0;
  const Stream s(81, "blocks/k2");
  for (int n = 0; n < 10000; ++n)
    worst = std::max(worst, entangling_power(block_diagonal_gate(random_block_spec(3, {1, 2}, s.at(n)))));
  EXPECT_LT(worst, 7.0 / 8.0);
  // General-K bound (q² − K)/(q² − 1).
  EXPECT_LE(worst, 7.0 / 8.0 + 1e-12);
}

TEST(Blocks, NonUniformBlocksAreDual) {
  const Stream s(87, "blocks/k2/dual");
  for (int n = 0; n < 20; ++n) {
    EXPECT_TRUE(classify_duality(block_diagonal_gate(random_block_spec(3, {1, 2}, s.at(n)))).is_dual);
    EXPECT_TRUE(classify_duality(
                    block_diagonal_gate(random_block_spec(4, {2, 2}, s.at(n), BlockSide::SD)))
                    .is_dual);
  }
}

TEST(Blocks, RejectsBlockThatIsNotTDual) {
  // A generic 6 × 6 unitary is not unitary after the partial transpose.
  BlockSpec spec{3, {sample_haar(3, Stream(88, "a")), sample_haar(6, Stream(88, "b"))},
                 BlockSide::DS};
  try {
    block_diagonal_gate(spec);
    FAIL() << "expected Validation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
}

TEST(Blocks, RejectsBadSizes) {
  BlockSpec spec{3, {CMat::Identity(4, 4), CMat::Identity(5, 5)}, BlockSide::DS};
  EXPECT_THROW(block_diagonal_gate(spec), Error);
  BlockSpec short_spec{3, {CMat::Identity(3, 3)}, BlockSide::DS};
  EXPECT_THROW(block_diagonal_gate(short_spec), Error);
}

TEST(Blocks, OrthonormalBlocksGiveUnitAndZeroModes) {
  const int q = 3;
  std::vector<CMat> blocks;
  for (int k = 0; k < q; ++k) {
    CMat z = CMat::Zero(q, q);
    for (int j = 0; j < q; ++j) z(j, j) = std::polar(1.0, 2.0 * kPi * j * k / q);
    blocks.push_back(z);
  }
  const BlockChannelReport r = block_channel_forms({q, blocks, BlockSide::DS});
  ASSERT_TRUE(r.uniform);
  int ones = 0, zeros = 0;
  for (const auto& l : r.uniform_eigenvalues) {
    ones += std::abs(l - 1.0) < 1e-12;
    zeros += std::abs(l) < 1e-12;
  }
  EXPECT_EQ(ones, q);
  EXPECT_EQ(zeros, q * q - q);
  EXPECT_LT(r.ds_spectrum_residual, 1e-9);
}

TEST(Blocks, UniformClosedFormsAgreeWithChannel) {
  for (int q = 2; q <= 3; ++q) {
    const BlockSpec spec = random_block_spec(q, std::vector<int>(q, 1), Stream(82, "blocks/forms"));
    const BlockChannelReport r = block_channel_forms(spec);
    EXPECT_LT(r.ds_offdiagonal, 1e-12);
    EXPECT_LT(r.ds_spectrum_residual, 1e-9);
    EXPECT_LT(r.sd_residual, 1e-12);
    EXPECT_LT(r.side_exchange_residual, 1e-12);
    int ones = 0;
    for (int k = 0; k < q; ++k) ones += std::abs(r.uniform_eigenvalues[k * q + k] - 1.0) < 1e-12;
    EXPECT_EQ(ones, q);
  }
}

TEST(Blocks, NonUniformSideExchange) {
  const BlockSpec spec = random_block_spec(3, {1, 2}, Stream(83, "blocks/k2/side"));
  EXPECT_LT(block_channel_forms(spec).side_exchange_residual, 1e-12);
}

// ---------------------------------------------------------------- diagonal --

TEST(Diagonal, QubitMeanEntanglingPower) {
  const Stream s(84, "diag/mean");
  std::vector<double> v;
  for (int n = 0; n < 20000; ++n) v.push_back(entangling_power(diagonal_dual_sample(2, 1.0, s.at(n))));
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double se = std::sqrt(var / (v.size() - 1) / v.size());
  EXPECT_LT(std::abs(mean - 1.0 / 3.0), 3.0 * se);
}

TEST(Diagonal, QubitArcsinLaw) {
  // F(x) = (2/π) arcsin √(3x/2) on [0, 2/3].
  const int bins = 20, n = 20000;
  std::vector<int> count(bins, 0);
  const Stream s(85, "diag/arcsin");
  for (int k = 0; k < n; ++k) {
    const double e = entangling_power(diagonal_dual_sample(2, 1.0, s.at(k)));
    count[std::clamp(static_cast<int>(e / (2.0 / 3.0) * bins), 0, bins - 1)]++;
  }
  auto cdf = [](double x) { return 2.0 / kPi * std::asin(std::sqrt(std::clamp(1.5 * x, 0.0, 1.0))); };
  double chi2 = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double lo = 2.0 / 3.0 * b / bins, hi = 2.0 / 3.0 * (b + 1) / bins;
    const double expect = n * (cdf(hi) - cdf(lo));
    chi2 += (count[b] - expect) * (count[b] - expect) / expect;
  }
  EXPECT_LT(chi2, kChi2Crit19);
}

TEST(Diagonal, SmallEpsilonApproachesSwap) {
  const Stream s(86, "diag/eps");
  EXPECT_LT(entangling_power(diagonal_dual_sample(3, 1e-4, s)), 1e-6);
  EXPECT_THROW(diagonal_dual_sample(3, 0.0, s), Error);
}

// --------------------------------------------------------------------- MR --

TEST(MR, DualGateIsFixedPointOfTwoSteps) {
  for (const Gate& u : {fixture("dual_q3_ep3_4"), cat_map(4), fixture("D3S")}) {
    EXPECT_LT(max_abs(mr_step(mr_step(u)).m - u.m), 1e-12);
  }
}

TEST(MR, ConvergesFromHaarSeedsWithMonotoneTsallis) {
  int converged = 0;
  for (int k = 0; k < 10; ++k) {
    const Gate u0 = Gate(3, sample_haar(9, Stream(87, "mr/seeds").at(k)));
    const MRResult r = mr_iterate(u0, 1000, 1e-6, MRStop::DualDefect);
    converged += r.trace.converged;
    for (std::size_t n = 1; n < r.trace.tsallis_half.size(); ++n)
      EXPECT_GE(r.trace.tsallis_half[n], r.trace.tsallis_half[n - 1] - 1e-10);
    if (r.trace.converged) {
      EXPECT_LT(r.trace.final_dual_defect, 1e-6);
      EXPECT_TRUE(classify_duality(r.gate, 1e-6).is_dual);
    }
  }
  EXPECT_GE(converged, 6);
}

TEST(MR, PermutationSeedReachesTwoUnitary) {
  const Gate u0 = permutation_gate(permutation_spec_from_map(3, mrt_permutation_seed()));
  // The entanglement gap closes quadratically in the duality defect, so
  // both stopping rules are exercised.
  const MRResult gap = mrt_iterate(u0, 1000);
  ASSERT_TRUE(gap.trace.converged);
  EXPECT_NEAR(entangling_power(gap.gate), 1.0, 1e-6);
  const MRResult r = mrt_iterate(u0, 1000, 1e-10, MRStop::DualDefect);
  ASSERT_TRUE(r.trace.converged);
  EXPECT_NEAR(entangling_power(r.gate), 1.0, 1e-12);
  EXPECT_TRUE(classify_duality(r.gate).is_2unitary);
}

// ----------------------------------------------------------- permutations --

TEST(Permutation, WorkedDualExample) {
  const PermutationSpec s = worked_dual_example();
  ASSERT_TRUE(s.is_bijection());
  const PermutationClass c = classify_permutation(s);
  EXPECT_TRUE(c.is_dual);
  EXPECT_FALSE(c.is_t_dual);
  const DualityClass d = classify_duality(permutation_gate(s));
  EXPECT_TRUE(d.is_dual);
  EXPECT_FALSE(d.is_t_dual);
}

TEST(Permutation, OrthogonalLatinSquaresAreTwoUnitary) {
  for (const PermutationSpec& s : {worked_two_unitary_example(), orthogonal_latin_square_spec(3),
                                   orthogonal_latin_square_spec(4), orthogonal_latin_square_spec(5)}) {
    EXPECT_TRUE(classify_permutation(s).is_2unitary);
    const Gate p = permutation_gate(s);
    EXPECT_TRUE(classify_duality(p).is_2unitary);
    EXPECT_NEAR(entangling_power(p), 1.0, 1e-12);
  }
}

TEST(Permutation, IdentityIsTDualWithZeroPower) {
  std::vector<int> id(9);
  std::iota(id.begin(), id.end(), 0);
  const PermutationSpec s = permutation_spec_from_map(3, id);
  EXPECT_TRUE(classify_permutation(s).is_t_dual);
  EXPECT_FALSE(classify_permutation(s).is_dual);
  EXPECT_NEAR(entangling_power(permutation_gate(s)), 0.0, 1e-14);
}

TEST(Permutation, QubitsHaveNoTwoUnitary) {
  std::vector<int> m = {0, 1, 2, 3};
  int total = 0, dual = 0, two = 0;
  do {
    const PermutationSpec s = permutation_spec_from_map(2, m);
    const PermutationClass c = classify_permutation(s);
    const DualityClass d = classify_duality(permutation_gate(s));
    EXPECT_EQ(c.is_dual, d.is_dual);
    EXPECT_EQ(c.is_t_dual, d.is_t_dual);
    ++total;
    dual += c.is_dual;
    two += c.is_2unitary;
  } while (std::next_permutation(m.begin(), m.end()));
  EXPECT_EQ(total, 24);
  EXPECT_GT(dual, 0);
  EXPECT_EQ(two, 0);
}

TEST(Permutation, CombinatorialAgreesWithMatrixPath) {
  std::vector<int> m(9);
  std::iota(m.begin(), m.end(), 0);
  auto eng = Stream(88, "perm/agree").engine();
  for (int n = 0; n < 500; ++n) {
    std::shuffle(m.begin(), m.end(), eng);
    const PermutationSpec s = permutation_spec_from_map(3, m);
    const PermutationClass c = classify_permutation(s);
    const DualityClass d = classify_duality(permutation_gate(s));
    EXPECT_EQ(c.is_dual, d.is_dual);
    EXPECT_EQ(c.is_t_dual, d.is_t_dual);
    EXPECT_EQ(c.is_2unitary, d.is_2unitary);
  }
}

TEST(Permutation, EnphasingPreservesClass) {
  auto eng = Stream(89, "perm/enphase").engine();
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  std::vector<std::vector<double>> theta(3, std::vector<double>(3));
  for (auto& row : theta)
    for (auto& t : row) t = ph(eng);
  const Gate p = permutation_gate(enphase(orthogonal_latin_square_spec(3), theta));
  EXPECT_NEAR(entangling_power(p), 1.0, 1e-12);
  const Gate d = permutation_gate(enphase(worked_dual_example(), theta));
  EXPECT_TRUE(classify_duality(d).is_dual);
}

TEST(Permutation, RejectsNonBijection) {
  PermutationSpec s = worked_dual_example();
  s.L[0][0] = 2;  // (K, L) = (0, 2) now appears twice
  EXPECT_FALSE(s.is_bijection());
  EXPECT_THROW(permutation_gate(s), Error);
}

TEST(Enumeration, QubitsContainSwap) {
  bool saw_swap = false;
  const EnumerationSummary sum = enumerate_dual_permutations(2, [&](const EnumeratedPermutation& p) {
    EXPECT_TRUE(p.cls.is_dual);
    if (p.map == std::vector<int>{0, 2, 1, 3}) {
      saw_swap = true;
      EXPECT_NEAR(p.e_p, 0.0, 1e-14);
    }
  });
  EXPECT_EQ(sum.scanned, 24u);
  EXPECT_TRUE(saw_swap);
  EXPECT_EQ(sum.two_unitary, 0u);
}

TEST(Enumeration, QutritRegressionAndMixingModes) {
  const double e2 = mixing_thresholds(3)[1];
  const EnumerationSummary sum = enumerate_dual_permutations(3, [&](const EnumeratedPermutation& p) {
    if (p.cls.is_2unitary) EXPECT_LE(p.lambda1_mod, 1e-12);
    // Strict exceedance beyond the boundary band: at e_p = e*_{p,2} exactly
    // the bound is attained (|λ₂| = 1 occurs).
    if (p.e_p > 7.0 / 8.0 + kBoundaryTol) EXPECT_LT(p.lambda1_mod, 1.0 - 1e-9);
    if (p.e_p > e2 + kBoundaryTol) EXPECT_LT(p.lambda2_mod, 1.0 - 1e-9);
  });
  EXPECT_EQ(sum.scanned, 362880u);
  EXPECT_EQ(sum.dual, 8784u);
  EXPECT_EQ(sum.t_dual, 8784u);
  EXPECT_EQ(sum.two_unitary, 72u);
}

// --------------------------------------------------------------- cat maps --

TEST(Cat, DualForAllQTwoUnitaryForOdd) {
  for (int q = 2; q <= 7; ++q) {
    const Gate u = cat_map(q);
    EXPECT_LT(unitarity_defect(u.m), 1e-13);
    EXPECT_LT(unitarity_defect(realign_r1(u).m), 1e-13);
    const bool t1_unitary = unitarity_defect(partial_transpose_t1(u).m) < 1e-10;
    EXPECT_EQ(t1_unitary, q % 2 == 1) << "q=" << q;
    const Gate s = swap_operator(q);
    EXPECT_LT(max_abs(u.m * s.m - s.m * u.m), 1e-13);
  }
}

TEST(Cat, EvenChannelTwoTermForm) {
  for (int q : {2, 4}) {
    const CVec p = phi_plus(q), psi = cat_psi(q), bar = cat_psi_bar(q);
    const CMat want = p * p.adjoint() + psi * bar.adjoint();
    EXPECT_LT(max_abs(build_m_plus(cat_map(q)).m - want), 1e-12) << "q=" << q;
    EXPECT_NEAR(entangling_power(cat_map(q)), (q * q - 2.0) / (q * q - 1.0), 1e-12);
  }
}

TEST(Cat, FamilyAtUnitParameter) {
  for (int q = 2; q <= 5; ++q) {
    const Gate u = cat_family(q, 1.0);
    EXPECT_TRUE(classify_duality(u).is_dual);
    EXPECT_NEAR(entangling_power(u), q / (q + 1.0), 1e-12) << "q=" << q;
    // Same invariants as (F⊗F)·S·D for the uniform blocks D = ⊕ F†-conjugated phases.
    const CMat f = dft(q);
    const Gate w = sandwich_locals(u, f.adjoint(), f.adjoint(), CMat::Identity(q, q),
                                   CMat::Identity(q, q));
    EXPECT_NEAR(entangling_power(w), q / (q + 1.0), 1e-12);
  }
}

TEST(Cat, FourierLocalLambda) {
  struct Case { double phi2, expected; };
  for (const Case c : {Case{0.0, 1.0}, Case{0.5, 0.0}, Case{0.25, std::cos(kPi / 4)}}) {
    const CatFourierLambda l = cat_fourier_local_lambda1(2, 0.3, c.phi2);
    // λ = 0 is a defective eigenvalue here, so the eigensolve only resolves it
    // to about √ε.
    EXPECT_NEAR(std::abs(l.eigensolve), c.expected, 1e-7);
    EXPECT_NEAR(std::abs(l.closed_form), c.expected, 1e-12);
    EXPECT_NEAR(l.expected, c.expected, 1e-15);
  }
}

// --------------------------------------------------------------- fixtures --

TEST(Fixtures, EntanglingPowers) {
  EXPECT_NEAR(entangling_power(fixture("dual_q3_ep8_9")), 8.0 / 9.0, 1e-12);
  EXPECT_NEAR(entangling_power(fixture("two_unitary_q3")), 1.0, 1e-12);
  EXPECT_NEAR(entangling_power(fixture("dual_q3_ep3_4")), 0.75, 1e-12);
  EXPECT_NEAR(entangling_power(fixture("D3S")), 0.75, 1e-12);
  EXPECT_NEAR(entangling_power(fixture("D2S")), 0.75, 1e-12);
  EXPECT_NEAR(entangling_power(fixture("D4S")), 0.8, 1e-12);
  EXPECT_NEAR(entangling_power(fixture("U2_q4")), 0.8, 1e-12);
  EXPECT_NEAR(d2_rotation_angle(), 0.315167, 1e-6);
  EXPECT_THROW(fixture("nope"), Error);
}

TEST(Fixtures, AdvertisedClasses) {
  EXPECT_TRUE(classify_duality(fixture("dual_q3_ep8_9")).is_dual);
  EXPECT_TRUE(classify_duality(fixture("two_unitary_q3")).is_2unitary);
  for (const char* n : {"D3S", "D2S", "D4S", "U2_q4", "dual_q3_ep3_4"})
    EXPECT_TRUE(classify_duality(fixture(n)).is_dual) << n;
  for (const auto& [name, g] : fixtures()) EXPECT_LT(unitarity_defect(g.m), 1e-12) << name;
}

TEST(Fixtures, EqualPowerButDifferentDressedSpectra) {
  const CMat u = testing::random_unitary(3, 90, "fixtures/local");
  const auto a = dressed_spectrum(deflate_trivial(build_m_plus(fixture("D3S"))), u);
  const auto b = dressed_spectrum(deflate_trivial(build_m_plus(fixture("D2S"))), u);
  EXPECT_GT(multiset_distance(a.eigenvalues, b.eigenvalues), 1e-3);
}

// ----------------------------------------------------------- unistochastic --

TEST(Unistochastic, IdentityLocal) {
  const UnistochasticReport r = unistochastic_reduction(CMat::Identity(3, 3));
  EXPECT_LT(max_abs(r.bistochastic - CMat::Identity(3, 3)), 1e-15);
  for (const auto& l : r.b_spectrum) EXPECT_NEAR(std::abs(l - 1.0), 0.0, 1e-12);
  EXPECT_LT(r.reduced_residual, 1e-10);
}

TEST(Unistochastic, FourierLocalIsFlat) {
  const UnistochasticReport r = unistochastic_reduction(dft(3));
  EXPECT_LT(max_abs(r.bistochastic - CMat::Constant(3, 3, 1.0 / 3.0)), 1e-15);
  EXPECT_NEAR(std::abs(r.b_spectrum[0] - 1.0), 0.0, 1e-12);
  EXPECT_LT(std::abs(r.b_spectrum[1]), 1e-12);
  EXPECT_LT(std::abs(r.b_spectrum[2]), 1e-12);
}

TEST(Unistochastic, RandomLocalsMatchAndStayInDeltoid) {
  const Stream s(91, "unistochastic");
  for (int n = 0; n < 200; ++n) {
    const UnistochasticReport r = unistochastic_reduction(sample_haar(3, s.at(n)));
    EXPECT_LT(r.reduced_residual, 1e-10);
    EXPECT_LT(r.full_residual, 1e-9);
    EXPECT_TRUE(r.inside_deltoid);
  }
  // A transposition is unistochastic with the real eigenvalue −1.
  CMat t = CMat::Zero(3, 3);
  t(0, 1) = t(1, 0) = t(2, 2) = 1.0;
  EXPECT_TRUE(unistochastic_reduction(t).inside_deltoid);
  EXPECT_TRUE(inside_deltoid(0.0));
  EXPECT_FALSE(inside_deltoid(cplx(0.0, 0.9)));
}

}  // namespace
}  // namespace dualkit
