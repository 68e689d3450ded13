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

// Local-unitary invariants of a two-particle gate: the operator Schmidt
// spectrum, the operator entanglements E(U) and E(US), the normalized
// entangling power e_p, and the dual / T-dual / 2-unitary predicates.

#include <vector>

#include "dualkit/tensor_ops.hpp"

namespace dualkit {

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kDualityTol = 1e-8;
inline constexpr double kBoundaryTol = 1e-12;

struct SchmidtSpectrum {
  int q = 0;
  std::vector<double> gamma;  // descending, clipped at 0, Σγ = q² for unitary U
  bool input_unitary = true;
};

// Eigenvalues of U^{R1} U^{R1†} via a Hermitian (tridiagonal) eigensolve.
SchmidtSpectrum schmidt_spectrum(const Gate& u);

// E(U) = 1 − tr[(U^{R1}U^{R1†})²]/q⁴.
double operator_entanglement(const Gate& u);
// E(US) = 1 − tr[(U^{T2}U^{T2†})²]/q⁴.
double operator_entanglement_swapped(const Gate& u);
// e_p = [E(U) + E(US) − E(S)]/E(S), clipped to [0, 1].
double entangling_power(const Gate& u);

// Tsallis entropy of order 1/2 of p_j = γ_j/q²: S_{1/2} = 2(Σ√p_j − 1).
double tsallis_half(const Gate& u);

struct DualityClass {
  bool is_dual = false;
  bool is_t_dual = false;
  bool is_2unitary = false;
  double unitarity_residual = 0.0;  // |U U† − 1|_max
  double dual_residual = 0.0;       // |U^{R1} U^{R1†} − 1|_max
  double t_dual_residual = 0.0;     // |U^{T2} U^{T2†} − 1|_max
};

DualityClass classify_duality(const Gate& u, double tol = kDualityTol);

// e*_{p,k} = 1 − k/(q² − 1) for k = 1 … q² − 1 (element k−1 of the result).
std::vector<double> mixing_thresholds(int q);

struct ThresholdPosition {
  // Smallest k with e_p > e*_{p,k} (modes λ_k … λ_{q²−1} certified mixing
  // for dual gates); q² when no threshold is exceeded.
  int first_certified_mode = 0;
  // e_p lies within kBoundaryTol of some threshold.
  bool boundary = false;
  int boundary_k = 0;
};

ThresholdPosition locate_threshold(double e_p, int q);

struct InvariantReport {
  double e_p = 0.0;
  double E_U = 0.0;
  double E_US = 0.0;
  SchmidtSpectrum schmidt;
  DualityClass duality;
  ThresholdPosition threshold;
};

InvariantReport invariant_report(const Gate& u);

}  // namespace dualkit
