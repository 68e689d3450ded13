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

#include "dualkit/channels.hpp"

#include <algorithm>
#include <cmath>

#include "dualkit/invariants.hpp"

namespace dualkit {

namespace {

void require_unitary(const Gate& u) {
  if (unitarity_defect(u.m) > kChannelUnitarityTol)
    throw Error(ErrorKind::Validation, "channel requires a unitary gate");
}

}  // namespace

ChannelMatrix build_m_plus(const Gate& u) {
  require_unitary(u);
  const Gate t = partial_transpose_t2(u);
  ChannelMatrix c;
  c.q = u.q;
  c.side = Side::Plus;
  c.m = realign_r1(Gate(u.q, t.m * t.m.adjoint())).m / static_cast<double>(u.q);
  return c;
}

ChannelMatrix build_m_minus(const Gate& u) {
  require_unitary(u);
  const Gate t = partial_transpose_t2(u);
  ChannelMatrix c;
  c.q = u.q;
  c.side = Side::Minus;
  c.m = realign_r2(Gate(u.q, t.m.adjoint() * t.m)).m / static_cast<double>(u.q);
  return c;
}

ChannelMatrix build_channel(const Gate& u, Side side) {
  return side == Side::Plus ? build_m_plus(u) : build_m_minus(u);
}

CMat partial_trace_first(const CMat& x, int q) {
  CMat r = CMat::Zero(q, q);
  for (int i = 0; i < q; ++i)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) r(a, b) += x(i * q + a, i * q + b);
  return r;
}

CMat partial_trace_second(const CMat& x, int q) {
  CMat r = CMat::Zero(q, q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int i = 0; i < q; ++i) r(a, b) += x(a * q + i, b * q + i);
  return r;
}

CMat apply_map_plus(const Gate& u, const CMat& a) {
  const CMat id = CMat::Identity(u.q, u.q);
  return partial_trace_first(u.m.adjoint() * kron(a, id) * u.m, u.q) / static_cast<double>(u.q);
}

CMat apply_map_minus(const Gate& u, const CMat& a) {
  const CMat id = CMat::Identity(u.q, u.q);
  return partial_trace_second(u.m.adjoint() * kron(id, a) * u.m, u.q) / static_cast<double>(u.q);
}

double unitality_residual(const ChannelMatrix& m) {
  const CVec phi = phi_plus(m.q);
  const double right = (m.m * phi - phi).cwiseAbs().maxCoeff();
  const double left = (phi.adjoint() * m.m - phi.adjoint()).cwiseAbs().maxCoeff();
  return std::max(right, left);
}

ChannelMatrix deflate_trivial(const ChannelMatrix& m) {
  if (m.deflated) return m;
  if (unitality_residual(m) > 1e-9)
    throw Error(ErrorKind::Validation, "channel is not unital; cannot deflate trivial mode");
  const CVec phi = phi_plus(m.q);
  ChannelMatrix d = m;
  d.m = m.m - phi * phi.adjoint();
  d.deflated = true;
  return d;
}

namespace {

ChannelSpectrum spectrum_from_matrix(const CMat& deflated, int q, Side side,
                                     const SpectrumOptions& opt) {
  ChannelSpectrum s;
  s.q = q;
  s.side = side;
  s.options = opt;
  s.eigenvalues = eigenvalues(deflated);
  // Deflation replaced the trivial eigenvalue by zero, which sorts last.
  s.eigenvalues.pop_back();
  for (const auto& l : s.eigenvalues) {
    const double r = std::abs(l);
    s.rates.push_back(r < opt.zero_tol ? std::numeric_limits<double>::infinity() : -std::log(r));
  }
  return s;
}

}  // namespace

ChannelSpectrum channel_spectrum(const ChannelMatrix& m, const SpectrumOptions& opt) {
  const ChannelMatrix d = deflate_trivial(m);
  return spectrum_from_matrix(d.m, d.q, d.side, opt);
}

ChannelSpectrum dressed_spectrum(const ChannelMatrix& deflated, const CMat& u,
                                 const SpectrumOptions& opt) {
  const ChannelMatrix d = deflate_trivial(deflated);
  return spectrum_from_matrix(kron(u, u.conjugate()) * d.m, d.q, d.side, opt);
}

std::string to_string(ErgodicClass c) {
  switch (c) {
    case ErgodicClass::NonInteracting: return "NonInteracting";
    case ErgodicClass::NonErgodic: return "NonErgodic";
    case ErgodicClass::ErgodicNonMixing: return "ErgodicNonMixing";
    case ErgodicClass::ErgodicMixing: return "ErgodicMixing";
    case ErgodicClass::Bernoulli: return "Bernoulli";
  }
  return "unknown";
}

ErgodicReport classify_ergodicity(const ChannelSpectrum& plus, const ChannelSpectrum& minus) {
  ErgodicReport r;
  const double zt = plus.options.zero_tol, ut = plus.options.unit_tol;
  // Values within a factor 10³ of a tolerance are flagged as boundary cases.
  constexpr double band = 1e3;
  int total = 0;
  for (const ChannelSpectrum* s : {&plus, &minus}) {
    for (const auto& l : s->eigenvalues) {
      ++total;
      const double mod = std::abs(l), dist1 = std::abs(l - 1.0);
      if (dist1 < ut) ++r.unit_eigenvalue_count;
      if (mod > 1.0 - ut) ++r.unit_modulus_count;
      if (mod < zt) ++r.zero_count;
      if ((dist1 >= ut && dist1 < band * ut) || (mod <= 1.0 - ut && mod > 1.0 - band * ut) ||
          (mod >= zt && mod < band * zt))
        r.boundary = true;
    }
  }
  if (r.zero_count == total)
    r.cls = ErgodicClass::Bernoulli;
  else if (r.unit_eigenvalue_count == total)
    r.cls = ErgodicClass::NonInteracting;
  else if (r.unit_eigenvalue_count > 0)
    r.cls = ErgodicClass::NonErgodic;
  else if (r.unit_modulus_count > 0)
    r.cls = ErgodicClass::ErgodicNonMixing;
  else
    r.cls = ErgodicClass::ErgodicMixing;
  return r;
}

double BoundsReport::min_slack() const {
  double m = smallest_slack;
  for (double s : ladder_slack) m = std::min(m, s);
  return m;
}

BoundsReport check_norm_and_bounds(const Gate& u, double dual_tol) {
  if (unitarity_defect(realign_r1(u).m) > dual_tol)
    throw Error(ErrorKind::Validation, "norm and bound relations require a dual-unitary gate");
  const int n = u.q * u.q - 1;
  BoundsReport r;
  r.e_p = entangling_power(u);
  const ChannelMatrix d = deflate_trivial(build_m_plus(u));
  r.norm_squared = d.m.squaredNorm();
  r.norm_prediction = n * (1.0 - r.e_p);
  r.norm_residual = std::abs(r.norm_squared - r.norm_prediction);
  const auto spec = channel_spectrum(d);
  const double root = std::sqrt(std::max(0.0, 1.0 - r.e_p));
  r.smallest_slack = root - std::abs(spec.eigenvalues.back());
  for (int k = 1; k <= n; ++k)
    r.ladder_slack.push_back(root * std::sqrt(static_cast<double>(n) / k) -
                             std::abs(spec.eigenvalues[k - 1]));
  return r;
}

cplx lightcone_correlation_prediction(const Gate& u, const CMat& a_i, const CMat& a_j, int t,
                                      Side side) {
  const ChannelMatrix m = build_channel(u, side);
  CVec v = vectorize(a_i);
  for (int s = 0; s < 2 * t; ++s) v = m.m * v;
  return (devectorize(v, u.q) * a_j).trace() / static_cast<double>(u.q);
}

InhomogeneousBound inhomogeneous_bound(const std::vector<Gate>& gates) {
  InhomogeneousBound b;
  if (gates.empty()) return b;
  const int q = gates.front().q;
  double prod = q * q - 1.0;
  std::vector<double> eps;
  for (const auto& g : gates) {
    eps.push_back(entangling_power(g));
    prod *= 1.0 - eps.back();
  }
  b.bound = prod;
  const bool uniform = std::all_of(eps.begin(), eps.end(),
                                   [&](double e) { return std::abs(e - eps.front()) < 1e-12; });
  if (uniform) {
    const double one_minus = 1.0 - eps.front();
    b.homogeneous_rate = one_minus > 0.0 ? -std::log(one_minus * one_minus)
                                         : std::numeric_limits<double>::infinity();
  }
  return b;
}

}  // namespace dualkit
