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

#pragma once

// Gate factories: block-diagonal ⊕ swap families, diagonal ensembles, the
// iterative realign-then-polar maps (MR, MRT), permutation gates with their
// Latin-square combinatorics, quantum cat maps, and hard-coded fixtures.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dualkit/channels.hpp"
#include "dualkit/rng.hpp"

namespace dualkit {

// ---------------------------------------------------------------- blocks --

enum class BlockSide { DS, SD };

struct BlockSpec {
  int q = 0;
  std::vector<CMat> blocks;  // sizes m_j·q with Σ m_j = q
  BlockSide side = BlockSide::DS;
};

CMat block_diagonal(const std::vector<CMat>& blocks);

// U = D·S or S·D. Throws Validation when block sizes are not multiples of
// q, do not sum to q², or a block is not unitary. Blocks of size m·q with
// m > 1 must also be unitary under partial transpose of the q factor
// (T-dual on C^m ⊗ C^q); otherwise U would not be dual.
Gate block_diagonal_gate(const BlockSpec& spec);

// Haar q × q blocks for m_j = 1 and Haar products u_{m_j} ⊗ v_q otherwise.
BlockSpec random_block_spec(int q, const std::vector<int>& multiplicities, const Stream& stream,
                            BlockSide side = BlockSide::DS);

// D₁S with D = diag(e^{iεφ}), φ uniform on [−π, π).
Gate diagonal_dual_sample(int q, double epsilon, const Stream& stream);

struct BlockChannelReport {
  bool uniform = false;
  // Uniform DS: |M₊ − diag| and the multiset distance between the spectrum
  // of M₊ and {tr(U_k U_l†)/q}.
  double ds_offdiagonal = 0.0;
  double ds_spectrum_residual = 0.0;
  // Uniform SD: |M₊ − Σ_j U_j† ⊗ U_j^T/q|.
  double sd_residual = 0.0;
  // Any K: |M₊[SD] − M₋[DS]|.
  double side_exchange_residual = 0.0;
  std::vector<cplx> uniform_eigenvalues;  // λ_kl
};

BlockChannelReport block_channel_forms(const BlockSpec& spec);

// ------------------------------------------------------------ MR and MRT --

struct MRTrace {
  int iterations = 0;
  std::vector<double> entanglement;        // E(U_n), n = 0 … iterations
  std::vector<double> entanglement_swapped;
  std::vector<double> tsallis_half;        // S_{1/2}(U_n)
  double final_unitarity_defect = 0.0;
  double final_dual_defect = 0.0;
  double final_t_dual_defect = 0.0;
  int rank_deficient_steps = 0;
  bool converged = false;
};

enum class MRStop {
  EntanglementGap,  // E(S) − E(U) < tol (and E(S) − E(US) < tol for MRT)
  DualDefect,       // max-entry defect of U^{R1} (and U^{T2} for MRT) < tol
};

struct MRResult {
  Gate gate;
  MRTrace trace;
};

Gate mr_step(const Gate& u);
MRResult mr_iterate(const Gate& u0, int max_iter = 10000, double tol = 1e-10,
                    MRStop stop = MRStop::EntanglementGap);
MRResult mrt_iterate(const Gate& u0, int max_iter = 10000, double tol = 1e-10,
                     MRStop stop = MRStop::EntanglementGap);

// A q = 3 permutation seed (0-indexed map of the nine basis states) from
// which mrt_iterate reaches a 2-unitary gate.
std::vector<int> mrt_permutation_seed();

// ---------------------------------------------------------- permutations --

struct PermutationSpec {
  int q = 0;
  std::vector<std::vector<int>> K, L;                   // 0-indexed entries in [q]
  std::optional<std::vector<std::vector<double>>> theta;  // phases θ_ij

  // (i, j) ↦ (K_ij, L_ij) is a bijection on [q] × [q].
  bool is_bijection() const;
};

// P|i j⟩ = e^{iθ_ij} |K_ij L_ij⟩. Throws Validation if not a bijection.
Gate permutation_gate(const PermutationSpec& spec);

struct PermutationClass {
  bool is_dual = false;    // every row of K and every column of L distinct
  bool is_t_dual = false;  // every column of K and every row of L distinct
  bool is_2unitary = false;
};

PermutationClass classify_permutation(const PermutationSpec& spec);

// Spec of the permutation matrix P with P|x⟩ = |perm[x]⟩, x = i·q + j.
PermutationSpec permutation_spec_from_map(int q, const std::vector<int>& perm);

// Pair of orthogonal Latin squares (K_ij = i + j, L_ij = 2i + j over GF(q))
// for q ∈ {3, 4, 5, 7}; the resulting permutation is 2-unitary.
PermutationSpec orthogonal_latin_square_spec(int q);

PermutationSpec enphase(PermutationSpec spec, const std::vector<std::vector<double>>& theta);

struct EnumeratedPermutation {
  std::uint64_t id = 0;  // rank of the map in lexicographic order
  std::vector<int> map;
  PermutationClass cls;
  double e_p = 0.0;
  double lambda1_mod = 0.0;  // bare M₊
  double lambda2_mod = 0.0;
};

struct EnumerationSummary {
  std::uint64_t scanned = 0;
  std::uint64_t dual = 0;
  std::uint64_t t_dual = 0;
  std::uint64_t two_unitary = 0;
};

// Streams every dual permutation of [q]×[q] (q ≤ 3) to the sink.
EnumerationSummary enumerate_dual_permutations(
    int q, const std::function<void(const EnumeratedPermutation&)>& sink);

// ------------------------------------------------------------- cat maps --

// ⟨k α|U_C|j β⟩ = exp(−2πi[kα + 2jβ − (kβ + jα)]/q)/q.
Gate cat_map(int q);
// ⟨k α|U_C(b)|j β⟩ = exp(2πi[b jβ + kβ + jα]/q)/q.
Gate cat_family(int q, double b);

// |Ψ⟩ = Σ_k |k, k + q/2⟩/√q and |Ψ̄⟩ = Σ_k (−1)^k |k k⟩/√q (q even).
CVec cat_psi(int q);
CVec cat_psi_bar(int q);

// u_kl = exp(2πi(l + φ₁)(k + φ₂)/q)/√q.
CMat shifted_dft(int q, double phi1, double phi2);

struct CatFourierLambda {
  cplx closed_form;  // ⟨Ψ̄|(u ⊗ u*)|Ψ⟩
  cplx eigensolve;   // λ₁ of (u ⊗ u*) M̃₊[U_C]
  double expected;   // cos(πφ₂)
};

CatFourierLambda cat_fourier_local_lambda1(int q, double phi1, double phi2);

// ------------------------------------------------------------- fixtures --

// Rotation angle (in units of π) of the D₂ fixture, solved so that
// e_p(D₂S) = 3/4 exactly; ≈ 0.315167.
double d2_rotation_angle();

// Named matrices: "dual_q3_ep8_9", "two_unitary_q3", "dual_q3_ep3_4",
// "D3", "D2", "D3S", "D2S", "D4", "D4S", "U2_q4".
std::map<std::string, Gate> fixtures();
Gate fixture(const std::string& name);

struct UnistochasticReport {
  CMat bistochastic;                 // B_ij = |u_ij|²
  std::vector<cplx> reduced;         // spectrum of (u⊗u*)M₊[D₃S] on span{|ii⟩}
  std::vector<cplx> b_spectrum;      // spectrum of B
  double reduced_residual = 0.0;     // multiset distance reduced vs B
  double full_residual = 0.0;        // full spectrum vs spec(B) ∪ {0}^{q²−q}
  bool inside_deltoid = true;        // complex eigenvalues of B inside the 3-hypocycloid
};

UnistochasticReport unistochastic_reduction(const CMat& u);

// Whether z lies in the closed region bounded by the deltoid
// z(t) = (2e^{it} + e^{−2it})/3.
bool inside_deltoid(cplx z, double slack = 1e-9);

}  // namespace dualkit
