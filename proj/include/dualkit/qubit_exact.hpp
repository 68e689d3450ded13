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

// Closed-form qubit (q = 2) analytics for the dual-unitary Cartan family
//
//   U(J) = exp[i(π/4 σx⊗σx + π/4 σy⊗σy + J σz⊗σz)],  0 ≤ J ≤ π/4,
//
// whose bare channel is M₊ = diag(1, sin2J, sin2J, 1). Single-qubit locals
// are parametrized as
//
//   u(θ, φ, ψ) = [[cos(θ/2)e^{iφ/2}, −e^{iψ/2}sin(θ/2)],
//                 [e^{−iψ/2}sin(θ/2), cos(θ/2)e^{−iφ/2}]],
//
// with the w family at φ = 0 and the v family at θ = π/2. Spectra below are
// those of (u ⊗ u*) M̃₊[U(J)]; s denotes sin 2J throughout.

#include <array>
#include <cstdint>
#include <vector>

#include "dualkit/channels.hpp"

namespace dualkit {

Gate cartan_gate(double J);
CMat qubit_local(double theta, double phi, double psi);

// Nontrivial eigenvalues of (u ⊗ u*) M̃₊[U(J)] by direct eigensolve.
std::vector<cplx> qubit_dressed_spectrum(double J, const CMat& u);

// λ′₁,₂ = ½[(1+s)cosθ ± √((1+s)²cos²θ − 4s)], λ′₃ = s.
std::array<cplx, 3> restricted_w_spectrum(double J, double theta);

// θ_c = arccos[2√s/(1+s)], where the pair λ′₁,₂ turns complex.
double critical_angle(double J);

// Closed-form rates: ν′₊ = −¼ ln(1 − e_p/e_p^max), μ′₊ = (1 − s)/(1 + s),
// ν₊ = −⅓ ln(1 − e_p/e_p^max), with e_p^max = 2/3 and e_p = (2/3)cos²2J.
// J = 0 (e_p = e_p^max) gives +∞ for the two ν's.
double nu_prime(double J);
double mu_prime(double J);
double nu_plus_exact(double J);

// Monic cubic roots by Cardano, falling back to a companion-matrix
// eigensolve when the discriminant is within 1e-12 of zero. Each root is
// polished by Newton steps. Coefficients {c2, c1, c0} of λ³ + c2λ² + c1λ + c0.
std::array<cplx, 3> cubic_roots(cplx c2, cplx c1, cplx c0);

// λ³ − s cosφ (λ² − λ) − s² = 0 (v family).
std::array<cplx, 3> restricted_v_cubic(double J, double phi);

// λ³ + [1 − 2c(s cosφ + 1)]λ² + s[2c(s + cosφ) − s]λ − s² = 0, c = cos²(θ/2).
std::array<cplx, 3> general_su2_cubic(double J, double theta, double phi);

// max_k |root_k|.
double max_modulus(const std::array<cplx, 3>& roots);

// Sampled ν′₊: max over a θ grid (n points on [0, π]) of −ln|λ₁| from the
// channel eigensolve, refined by golden-section search around the best node.
double sampled_nu_w(double J, int grid = 721);

// Sampled μ′₊: mean of −ln|λ₁| with cosθ uniform on [−1, 1] and ψ uniform
// on [0, 4π), from the channel eigensolve.
struct QubitMCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};
QubitMCEstimate sampled_mu_w(double J, std::size_t n, std::uint64_t seed);

// Deterministic θ-average of −ln|λ′₁| over cosθ uniform (trapezoid rule on
// `nodes` equispaced values of cosθ) from the closed form.
double trapezoid_mu_w(double J, int nodes = 10000);

// Minimum of max|root| of the general cubic over a (θ, φ) grid.
double general_cubic_min_radius(double J, int n_theta = 361, int n_phi = 721);

}  // namespace dualkit
