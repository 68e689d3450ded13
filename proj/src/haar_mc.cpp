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

#include "dualkit/haar_mc.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "dualkit/invariants.hpp"
#include "dualkit/parallel.hpp"

namespace dualkit {

CMat sample_haar(int d, std::mt19937_64& engine) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMat z(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) z(i, j) = cplx(normal(engine), normal(engine));
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const cplx diag = r(k, k);
    const double mod = std::abs(diag);
    q.col(k) *= mod > 0.0 ? diag / mod : cplx(1.0);
  }
  return q;
}

CMat sample_haar(int d, const Stream& stream) {
  auto engine = stream.engine();
  return sample_haar(d, engine);
}

MCEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
  MCEstimate e;
  e.seed = seed;
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double v : values) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  e.n = n;
  e.mean = mean;
  e.stderr_ = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  return e;
}

std::vector<double> sample_lambda1(const Gate& u, std::size_t n, std::uint64_t seed,
                                   const SamplingOptions& opt) {
  const int q = u.q;
  const ChannelMatrix deflated = deflate_trivial(build_m_plus(u));
  const Stream stream(seed, opt.four_local ? "lambda1/four-local" : "lambda1/single-local");
  std::vector<double> out(n);
  parallel_for(n, opt.workers, [&](std::size_t i) {
    auto engine = stream.at(i).engine();
    if (opt.four_local) {
      const CMat u1 = sample_haar(q, engine), u2 = sample_haar(q, engine);
      const CMat v1 = sample_haar(q, engine), v2 = sample_haar(q, engine);
      const Gate dressed = sandwich_locals(u, u1, u2, v1, v2);
      out[i] = channel_spectrum(build_m_plus(dressed), opt.spectrum).spectral_radius();
    } else {
      const CMat loc = sample_haar(q, engine);
      out[i] = dressed_spectrum(deflated, loc, opt.spectrum).spectral_radius();
    }
  });
  return out;
}

MCEstimate avg_spectral_radius(const Gate& u, std::size_t n, std::uint64_t seed,
                               const SamplingOptions& opt) {
  return summarize(sample_lambda1(u, n, seed, opt), seed);
}

MCEstimate avg_spectral_radius_squared(const Gate& u, std::size_t n, std::uint64_t seed,
                                       const SamplingOptions& opt) {
  auto v = sample_lambda1(u, n, seed, opt);
  for (auto& x : v) x *= x;
  return summarize(v, seed);
}

MCEstimate avg_mixing_rate(const Gate& u, std::size_t n, std::uint64_t seed,
                           const SamplingOptions& opt) {
  const auto lam = sample_lambda1(u, n, seed, opt);
  std::vector<double> rates;
  rates.reserve(lam.size());
  std::size_t excluded = 0;
  for (double l : lam) {
    if (l < opt.spectrum.zero_tol)
      ++excluded;
    else
      rates.push_back(-std::log(l));
  }
  auto e = summarize(rates, seed);
  e.excluded = excluded;
  return e;
}

namespace {

// u·exp(iεH) for a random Hermitian H with unit-variance entries.
CMat perturb_unitary(const CMat& u, double eps, std::mt19937_64& engine) {
  const int d = static_cast<int>(u.rows());
  std::normal_distribution<double> normal(0.0, 1.0);
  CMat h(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = normal(engine);
    for (int j = i + 1; j < d; ++j) {
      h(i, j) = cplx(normal(engine), normal(engine)) / std::sqrt(2.0);
      h(j, i) = std::conj(h(i, j));
    }
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  CVec phases(d);
  for (int k = 0; k < d; ++k) phases(k) = std::exp(cplx(0.0, eps * es.eigenvalues()(k)));
  return u * (es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

}  // namespace

MaxRateResult max_mixing_rate(const Gate& u, std::size_t n, int refine_steps, std::uint64_t seed) {
  const int q = u.q;
  const ChannelMatrix deflated = deflate_trivial(build_m_plus(u));
  const Stream stream(seed, "max-rate");
  MaxRateResult r;
  CMat best;
  for (std::size_t i = 0; i < n; ++i) {
    const CMat loc = sample_haar(q, stream.at(i));
    const double l1 = dressed_spectrum(deflated, loc).spectral_radius();
    if (i == 0 || l1 < r.best_lambda1) r.best_lambda1 = l1, best = loc;
  }
  r.method = "haar-sampling(n=" + std::to_string(n) + ")";
  if (refine_steps > 0 && n > 0) {
    auto engine = stream.child("refine").engine();
    double eps = 0.3;
    int rejected = 0;
    for (int s = 0; s < refine_steps; ++s) {
      const CMat cand = perturb_unitary(best, eps, engine);
      const double l1 = dressed_spectrum(deflated, cand).spectral_radius();
      if (l1 < r.best_lambda1) {
        r.best_lambda1 = l1, best = cand, rejected = 0;
      } else if (++rejected >= 20) {
        eps *= 0.5, rejected = 0;
      }
    }
    r.method += "+hill-climb(steps=" + std::to_string(refine_steps) + ")";
  }
  r.value = r.best_lambda1 < 1e-9 ? std::numeric_limits<double>::infinity() : -std::log(r.best_lambda1);
  return r;
}

MCEstimate avg_norm_power(const Gate& u, int k, std::size_t n, std::uint64_t seed, int workers) {
  if (k < 1) throw Error(ErrorKind::Usage, "power must be positive");
  const int q = u.q;
  const ChannelMatrix deflated = deflate_trivial(build_m_plus(u));
  const Stream stream(seed, "norm-power");
  std::vector<double> out(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const CMat loc = sample_haar(q, stream.at(i));
    const CMat dressed = kron(loc, loc.conjugate()) * deflated.m;
    CMat p = dressed;
    for (int s = 1; s < k; ++s) p = dressed * p;
    out[i] = p.squaredNorm();
  });
  return summarize(out, seed);
}

double norm_power_prediction(const Gate& u, int k) {
  const double q2 = static_cast<double>(u.q) * u.q;
  return (q2 - 1.0) * std::pow(1.0 - entangling_power(u), k);
}

cplx haar_monomial_closed_form(const Gate& x, const Gate& y) {
  const double q = x.q, q2 = q * q;
  const cplx tx = x.m.trace(), ty = y.m.trace();
  const cplx rx = realign_r2(x).m.trace(), ry = realign_r2(y).m.trace();
  return (rx * ry + tx * ty) / (q2 - 1.0) - (rx * ty + tx * ry) / (q * (q2 - 1.0));
}

HaarIdentityReport haar_monomial_oracle(const Gate& x, const Gate& y, std::size_t n,
                                        std::uint64_t seed) {
  const int q = x.q;
  const Stream stream(seed, "haar-monomial");
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CMat loc = sample_haar(q, stream.at(i));
    const CMat w = kron(loc, loc.conjugate());
    const cplx v = (x.m * w * y.m * w.adjoint()).trace();
    re[i] = v.real(), im[i] = v.imag();
  }
  HaarIdentityReport r;
  r.closed_form = haar_monomial_closed_form(x, y);
  r.re = summarize(re, seed);
  r.im = summarize(im, seed);
  auto sig = [](double d, double se) {
    return se > 0.0 ? std::abs(d) / se : (std::abs(d) < 1e-12 ? 0.0 : 1e300);
  };
  r.sigmas = std::max(sig(r.re.mean - r.closed_form.real(), r.re.stderr_),
                      sig(r.im.mean - r.closed_form.imag(), r.im.stderr_));
  return r;
}

}  // namespace dualkit
