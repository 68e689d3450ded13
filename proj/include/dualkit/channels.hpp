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

// Single-site correlation channels of a dual-unitary brickwork circuit.
//
//   M₊[U] = (U^{T2} U^{T2†})^{R1}/q,   M₊(a) = tr₁[U†(a ⊗ 1)U]/q
//   M₋[U] = (U^{T2†} U^{T2})^{R2}/q,   M₋(a) = tr₂[U†(1 ⊗ a)U]/q
//
// Both are unital and trace preserving, so |Φ⁺⟩ is a left and right
// eigenvector with eigenvalue 1 (the trivial mode). Spectra are always
// taken after deflating that mode, M̃ = M − |Φ⁺⟩⟨Φ⁺|.

#include <limits>
#include <string>
#include <vector>

#include "dualkit/tensor_ops.hpp"

namespace dualkit {

enum class Side { Plus, Minus };

struct ChannelMatrix {
  int q = 0;
  CMat m;
  Side side = Side::Plus;
  bool deflated = false;
};

// Reject inputs whose unitarity defect exceeds this value (loose enough for
// iteratively generated gates).
inline constexpr double kChannelUnitarityTol = 1e-6;

ChannelMatrix build_m_plus(const Gate& u);
ChannelMatrix build_m_minus(const Gate& u);
ChannelMatrix build_channel(const Gate& u, Side side);

// Map forms, used as an independent path to the matrices above.
CMat apply_map_plus(const Gate& u, const CMat& a);
CMat apply_map_minus(const Gate& u, const CMat& a);

// Partial traces over the first / second factor of a q² × q² operator.
CMat partial_trace_first(const CMat& x, int q);
CMat partial_trace_second(const CMat& x, int q);

// Max of |M|Φ⁺⟩ − |Φ⁺⟩| and |⟨Φ⁺|M − ⟨Φ⁺||.
double unitality_residual(const ChannelMatrix& m);

// Throws Validation when the trivial-mode residual exceeds 1e-9.
ChannelMatrix deflate_trivial(const ChannelMatrix& m);

struct SpectrumOptions {
  double zero_tol = 1e-9;  // |λ| below this: zero mode, infinite rate
  double unit_tol = 1e-9;  // |λ| above 1 − unit_tol: unit-modulus mode
};

struct ChannelSpectrum {
  int q = 0;
  Side side = Side::Plus;
  // λ_1 … λ_{q²−1}: nontrivial eigenvalues, canonical order.
  std::vector<cplx> eigenvalues;
  // μ_k = −ln|λ_k|; +infinity for zero modes.
  std::vector<double> rates;
  SpectrumOptions options;

  double spectral_radius() const { return eigenvalues.empty() ? 0.0 : std::abs(eigenvalues[0]); }
};

// Eigenvalues of the deflated channel. The zero contributed by deflation is
// dropped so exactly q² − 1 nontrivial eigenvalues remain.
ChannelSpectrum channel_spectrum(const ChannelMatrix& m, const SpectrumOptions& opt = {});

// Same, for (u ⊗ u*) M̃₊[U], the single-local form entering Haar averages.
ChannelSpectrum dressed_spectrum(const ChannelMatrix& deflated, const CMat& u,
                                 const SpectrumOptions& opt = {});

enum class ErgodicClass { NonInteracting, NonErgodic, ErgodicNonMixing, ErgodicMixing, Bernoulli };

std::string to_string(ErgodicClass c);

struct ErgodicReport {
  ErgodicClass cls = ErgodicClass::ErgodicMixing;
  int unit_eigenvalue_count = 0;  // λ = 1 within unit_tol
  int unit_modulus_count = 0;     // |λ| = 1 within unit_tol
  int zero_count = 0;             // |λ| < zero_tol
  bool boundary = false;          // some |λ| or λ lies just outside a tolerance band
};

ErgodicReport classify_ergodicity(const ChannelSpectrum& plus, const ChannelSpectrum& minus);

struct BoundsReport {
  double e_p = 0.0;
  double norm_squared = 0.0;      // ‖M̃₊‖²_F
  double norm_prediction = 0.0;   // (q² − 1)(1 − e_p)
  double norm_residual = 0.0;
  double smallest_slack = 0.0;    // √(1 − e_p) − |λ_{q²−1}|
  std::vector<double> ladder_slack;  // √(1−e_p)√((q²−1)/k) − |λ_k|, k = 1 …
  double min_slack() const;
};

// Requires a dual-unitary U (defect ≤ dual_tol), else throws Validation.
BoundsReport check_norm_and_bounds(const Gate& u, double dual_tol = 1e-8);

// tr[M^{2t}(a_i) a_j]/q with M = M₊ (Plus) or M₋ (Minus).
cplx lightcone_correlation_prediction(const Gate& u, const CMat& a_i, const CMat& a_j, int t,
                                      Side side = Side::Plus);

struct InhomogeneousBound {
  double bound = 0.0;  // (q² − 1) Π_k (1 − e_p(U_k))
  // −ln(1 − e_p)² when all gates share one e_p, else NaN.
  double homogeneous_rate = std::numeric_limits<double>::quiet_NaN();
};

InhomogeneousBound inhomogeneous_bound(const std::vector<Gate>& gates);

}  // namespace dualkit
