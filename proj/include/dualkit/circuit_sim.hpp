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

// Brute-force brickwork circuits on 2L sites with periodic boundaries.
//
// The Floquet operator is 𝐔 = T U^{⊗L} T† U^{⊗L} with the translation
// T|k₁ k₂ … k_{2L}⟩ = |k₂ … k_{2L} k₁⟩. Tensor legs are numbered 0 … 2L−1
// (leg 0 is the slowest index). The first layer U^{⊗L} couples legs
// (0,1), (2,3), …; the conjugated layer T U^{⊗L} T† couples (1,2), …,
// (2L−1, 0), and it is the layer adjacent to the operator in the Heisenberg
// picture 𝐔^{−t} a 𝐔^{t}.
//
// Site labels are integers and half-integers. Site x is placed on leg
// (2x + 1) mod 2L, so site 0 is the left leg and site ½ the right leg of the
// same gate of the conjugated layer. With this placement, operators at
// y = 0 travel right under M₊ and operators at y = ½ travel left under
// M₋, so the lightcone values are
//
//   C₊(t, t)  = D(t, 0, t)     = tr[M₊^{2t}(a_i) a_j]/q,
//   C₋(−t, t) = D(½ − t, ½, t) = tr[M₋^{2t}(a_i) a_j]/q.
//
// All of the site bookkeeping lives in site_leg().

#include <vector>

#include "dualkit/channels.hpp"

namespace dualkit {

struct CircuitConfig {
  int q = 2;
  int L = 2;                       // half-length: 2L sites
  Gate gate;                       // homogeneous gate
  std::vector<Gate> bond_gates;    // optional: 2L gates, first layer then second
  bool allow_beyond_window = false;
};

inline constexpr long kMaxCircuitDimension = 1L << 16;

// Tensor leg holding site x (x integer or half-integer). Throws Usage if 2x
// is not an integer.
int site_leg(double x, int L);

// a_0 = 1, a_{m·q+n} = X^m Z^n with X|k⟩ = |k+1⟩, Z|k⟩ = ω^k|k⟩.
std::vector<CMat> weyl_basis(int q);

using Translation = Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int>;

// T as a permutation (cheap to apply) and as a dense matrix.
Translation translation_permutation(int q, int L);
CMat translation_operator(int q, int L);
CMat build_floquet(const CircuitConfig& cfg);

class CircuitSimulator {
 public:
  explicit CircuitSimulator(const CircuitConfig& cfg);

  int q() const { return cfg_.q; }
  int L() const { return cfg_.L; }
  long dimension() const { return dim_; }
  const CMat& floquet() const { return floquet_; }

  // 𝐔^{−t} A 𝐔^{t} for a full-space operator A.
  CMat heisenberg(const CMat& a, int t) const;
  // Operator a on one leg, identity elsewhere.
  CMat embed(const CMat& a, int leg) const;
  // Reduced operator on the given legs: partial trace over all others.
  CMat reduce(const CMat& op, const std::vector<int>& legs) const;

  // D^{ij}(x, y, t) = tr[a_j^x 𝐔^{−t} a_i^y 𝐔^t]/q^{2L}.
  cplx correlation_single(int i, int j, double x, double y, int t) const;
  // C^{ijkl}(x₁, x₂, t) = tr[a_k^{x₁} a_l^{x₂} 𝐔^{−t} a_i^{y₁} a_j^{y₁+½} 𝐔^t]/q^{2L}.
  cplx correlation_two_site(int i, int j, int k, int l, double x1, double x2, int t,
                            double y1 = 0.0) const;

  void check_window(int t) const;

 private:
  CircuitConfig cfg_;
  long dim_ = 0;
  CMat floquet_;
  std::vector<CMat> basis_;
  mutable std::vector<CMat> powers_;  // 𝐔^t cache
  const CMat& power(int t) const;
};

struct LightconeCell {
  int t = 0;
  double x = 0.0;
  double y = 0.0;
  int i = 0, j = 0;
  cplx value;
};

struct LightconeReport {
  std::vector<LightconeCell> cells;  // every (y, x, t, i, j)
  double interior_max = 0.0;         // |x − y| < t, off the cone point
  double exterior_max = 0.0;         // |x − y| > t
  double cone_max = 0.0;             // largest |value| on the cone, t ≥ 1
  double cone_residual = 0.0;        // max |cone value − channel prediction|
  double translation_residual = 0.0; // shift by one unit cell
};

LightconeReport lightcone_scan(const CircuitConfig& cfg, int t_max);

struct TwoSiteCell {
  int t = 0;
  double x1 = 0.0, x2 = 0.0;  // sites, x₁ ≤ x₂ (x₁ = x₂ probes products a_k a_l)
  double max_abs = 0.0;       // over (i,j) ≠ (0,0) and all k, l
};

struct TwoSiteReport {
  double y1 = 0.0;  // initial pair sits on sites (y₁, y₁ + ½)
  std::vector<TwoSiteCell> cells;
  double max_abs = 0.0;
};

// Two-site correlations C^{ijkl}(x₁, x₂, t) for 1 ≤ t ≤ t_max with the
// initial operators on (y₁, y₁ + ½). With y₁ = 0 both sit on one gate of
// the first Heisenberg layer; with y₁ = ½ they sit on neighbouring gates.
TwoSiteReport two_site_scan(const CircuitConfig& cfg, int t_max, double y1 = 0.0);

}  // namespace dualkit
