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

// Bipartite operators on C^q ⊗ C^q and their index reshuffles.
//
// Composite index convention: |i α⟩ ↦ i·q + α, the first tensor factor being
// the slow index. Every reshuffle below is a pure index permutation.
//
//   realignment R1:       ⟨β α|X^{R1}|j i⟩ = ⟨i α|X|j β⟩
//   realignment R2:       ⟨i j|X^{R2}|α β⟩ = ⟨i α|X|j β⟩
//   partial transpose T1: ⟨j α|X^{T1}|i β⟩ = ⟨i α|X|j β⟩
//   partial transpose T2: ⟨i β|X^{T2}|j α⟩ = ⟨i α|X|j β⟩
//
// Operators on one site are vectorized row-wise, ⟨j l|ρ⟩ = ⟨j|ρ|l⟩, so that
// |A B C⟩ = (A ⊗ C^T)|B⟩.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "dualkit/linalg.hpp"

namespace dualkit {

struct Gate {
  int q = 0;
  CMat m;

  Gate() = default;
  // Throws Validation unless m is square with side q² and q ≥ 2.
  Gate(int q, CMat m);

  Gate operator*(const Gate& other) const;
  Gate adjoint() const { return Gate(q, m.adjoint()); }
  Gate transpose() const { return Gate(q, m.transpose()); }
};

Gate realign_r1(const Gate& x);
Gate realign_r2(const Gate& x);
Gate partial_transpose_t1(const Gate& x);
Gate partial_transpose_t2(const Gate& x);

// Inverse index maps (the partial transposes are involutions).
Gate realign_r1_inverse(const Gate& y);
Gate realign_r2_inverse(const Gate& y);

// S|a b⟩ = |b a⟩.
Gate swap_operator(int q);

// (u1 ⊗ u2) U (v1 ⊗ v2).
Gate sandwich_locals(const Gate& u, const CMat& u1, const CMat& u2, const CMat& v1,
                     const CMat& v2);

CVec vectorize(const CMat& rho);
CMat devectorize(const CVec& v, int q);

// |Φ⁺⟩ = Σ_j |j j⟩/√q.
CVec phi_plus(int q);

struct IdentityResidual {
  std::string name;
  double residual;
};

struct IdentityReport {
  std::vector<IdentityResidual> items;
  double max_residual() const;
};

// Checks the reshuffle identities relating R1, R2, T1, T2, S and the full
// transpose, plus the four local-operator covariances for the sandwich
// (l[0] ⊗ l[1]) X (l[2] ⊗ l[3]). The locals need not be unitary.
IdentityReport verify_reshuffle_identities(const Gate& x, const std::array<CMat, 4>& l);

}  // namespace dualkit
