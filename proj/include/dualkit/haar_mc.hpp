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

// Haar sampling of local unitaries and Monte-Carlo estimates of local-unitary
// averaged channel quantities.
//
// By invariance of the Haar measure the average over the four locals of
// (u₁⊗u₂)U(v₁⊗v₂) reduces to one local: the spectrum of M₊ of the dressed
// gate equals that of (u ⊗ u*) M̃₊[U] with u = u₁†v₂†, itself Haar
// distributed. That single-local form is the default; the four-local form
// is kept for validating the reduction.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dualkit/channels.hpp"
#include "dualkit/rng.hpp"

namespace dualkit {

// QR of a complex Ginibre matrix with R's diagonal phases moved into Q.
CMat sample_haar(int d, std::mt19937_64& engine);
CMat sample_haar(int d, const Stream& stream);

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;       // sample standard deviation / √n
  std::size_t n = 0;          // samples entering the mean
  std::size_t excluded = 0;   // samples left out (infinite rates)
  std::uint64_t seed = 0;
};

// Welford accumulation in index order (bit-identical for a fixed input).
MCEstimate summarize(const std::vector<double>& values, std::uint64_t seed);

struct SamplingOptions {
  int workers = 1;
  bool four_local = false;
  SpectrumOptions spectrum{};
};

// |λ₁| of the dressed channel for samples 0 … n−1 of the labelled stream.
std::vector<double> sample_lambda1(const Gate& u, std::size_t n, std::uint64_t seed,
                                   const SamplingOptions& opt = {});

MCEstimate avg_spectral_radius(const Gate& u, std::size_t n, std::uint64_t seed,
                               const SamplingOptions& opt = {});

// 𝔼|λ₁|² (the quantity with the closed form 1/(q²−1) for even-q cat maps).
MCEstimate avg_spectral_radius_squared(const Gate& u, std::size_t n, std::uint64_t seed,
                                       const SamplingOptions& opt = {});

// μ₊ = 𝔼[−ln|λ₁|]; zero modes are excluded from the mean and counted.
MCEstimate avg_mixing_rate(const Gate& u, std::size_t n, std::uint64_t seed,
                           const SamplingOptions& opt = {});

struct MaxRateResult {
  double value = 0.0;       // sampled lower bound on ν₊ (may be +inf)
  double best_lambda1 = 1.0;
  std::string method;       // how the maximum was obtained
};

// ν₊ = max over sampled locals of −ln|λ₁|, followed by a stochastic
// hill-climb u ← u·exp(iεH) for refine_steps steps with shrinking ε.
MaxRateResult max_mixing_rate(const Gate& u, std::size_t n, int refine_steps, std::uint64_t seed);

// 𝔼‖[(u ⊗ u*) M̃₊]^k‖²_F.
MCEstimate avg_norm_power(const Gate& u, int k, std::size_t n, std::uint64_t seed,
                          int workers = 1);

// (q²−1)(1−e_p)^k: exact for k = 2, an approximation for k > 2.
double norm_power_prediction(const Gate& u, int k);

// ∫du tr[X (u⊗u*) Y (u†⊗u^T)] in closed form.
cplx haar_monomial_closed_form(const Gate& x, const Gate& y);

struct HaarIdentityReport {
  cplx closed_form;
  MCEstimate re, im;
  // |MC − closed form| in units of the standard error (max over re, im).
  double sigmas = 0.0;
};

HaarIdentityReport haar_monomial_oracle(const Gate& x, const Gate& y, std::size_t n,
                                        std::uint64_t seed);

}  // namespace dualkit
