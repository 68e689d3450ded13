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

#include "dualkit/circuit_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include <Eigen/SparseCore>

namespace dualkit {

namespace {

long ipow(long b, int e) {
  long r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

CMat kron_all(const std::vector<CMat>& factors) {
  CMat out = CMat::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

// Displacement x − y reduced to (−L/2, L/2] on a ring of L unit cells.
double ring_displacement(double d, int L) {
  d = std::fmod(d, static_cast<double>(L));
  if (d > 0.5 * L) d -= L;
  if (d <= -0.5 * L) d += L;
  return d;
}

bool same_mod(double a, double b, int L) {
  return std::abs(ring_displacement(a - b, L)) < 1e-9;
}

}  // namespace

int site_leg(double x, int L) {
  const double h = 2.0 * x;
  if (std::abs(h - std::round(h)) > 1e-9)
    throw Error(ErrorKind::Usage, "site labels must be integers or half-integers");
  const long legs = 2L * L;
  long leg = (static_cast<long>(std::llround(h)) + 1) % legs;
  if (leg < 0) leg += legs;
  return static_cast<int>(leg);
}

std::vector<CMat> weyl_basis(int q) {
  const double pi = std::numbers::pi;
  CMat x = CMat::Zero(q, q), z = CMat::Zero(q, q);
  for (int k = 0; k < q; ++k) {
    x((k + 1) % q, k) = 1.0;
    z(k, k) = std::polar(1.0, 2.0 * pi * k / q);
  }
  std::vector<CMat> basis;
  CMat xm = CMat::Identity(q, q);
  for (int m = 0; m < q; ++m) {
    CMat zn = CMat::Identity(q, q);
    for (int n = 0; n < q; ++n) {
      basis.push_back(xm * zn);
      zn = zn * z;
    }
    xm = xm * x;
  }
  return basis;
}

Translation translation_permutation(int q, int L) {
  const long n = ipow(q, 2 * L);
  const long top = n / q;
  Translation t(n);
  for (long r = 0; r < n; ++r) t.indices()[r] = static_cast<int>((r % top) * q + r / top);
  return t;
}

CMat translation_operator(int q, int L) {
  return translation_permutation(q, L).toDenseMatrix().cast<cplx>();
}

CMat build_floquet(const CircuitConfig& cfg) {
  if (cfg.q < 2 || cfg.L < 1) throw Error(ErrorKind::Usage, "circuit needs q >= 2 and L >= 1");
  const long n = ipow(cfg.q, 2 * cfg.L);
  if (n > kMaxCircuitDimension)
    throw Error(ErrorKind::Usage, "q^(2L) exceeds the dense-simulation limit of 65536");
  std::vector<CMat> first, second;
  if (!cfg.bond_gates.empty()) {
    if (cfg.bond_gates.size() != static_cast<std::size_t>(2 * cfg.L))
      throw Error(ErrorKind::Usage, "bond_gates must hold 2L gates");
    for (int k = 0; k < cfg.L; ++k) {
      first.push_back(cfg.bond_gates[k].m);
      second.push_back(cfg.bond_gates[cfg.L + k].m);
    }
  } else {
    first.assign(cfg.L, cfg.gate.m);
    second.assign(cfg.L, cfg.gate.m);
  }
  for (const auto* layer : {&first, &second})
    for (const auto& g : *layer)
      if (g.rows() != cfg.q * cfg.q) throw Error(ErrorKind::Usage, "gate dimension does not match q");
  const Translation t = translation_permutation(cfg.q, cfg.L);
  const CMat shifted = t * kron_all(second) * t.transpose();
  return shifted * kron_all(first);
}

CircuitSimulator::CircuitSimulator(const CircuitConfig& cfg)
    : cfg_(cfg), floquet_(build_floquet(cfg)), basis_(weyl_basis(cfg.q)) {
  dim_ = floquet_.rows();
  powers_.push_back(CMat::Identity(dim_, dim_));
}

const CMat& CircuitSimulator::power(int t) const {
  while (static_cast<int>(powers_.size()) <= t) powers_.push_back(powers_.back() * floquet_);
  return powers_[t];
}

void CircuitSimulator::check_window(int t) const {
  if (t < 0) throw Error(ErrorKind::Usage, "time must be non-negative");
  if (2 * t > cfg_.L && !cfg_.allow_beyond_window)
    throw Error(ErrorKind::Validation,
                "t exceeds L/2: periodic images interfere with the lightcone");
}

CMat CircuitSimulator::heisenberg(const CMat& a, int t) const {
  if (t == 0) return a;
  const CMat& p = power(t);
  // Embedded local operators are very sparse; only the outer product with
  // 𝐔^{−t} needs a dense multiply.
  const Eigen::SparseMatrix<cplx> sa = a.sparseView();
  const CMat ap = sa * p;
  return p.adjoint() * ap;
}

CMat CircuitSimulator::embed(const CMat& a, int leg) const {
  const int legs = 2 * cfg_.L;
  return kron(kron(CMat::Identity(ipow(cfg_.q, leg), ipow(cfg_.q, leg)), a),
              CMat::Identity(ipow(cfg_.q, legs - 1 - leg), ipow(cfg_.q, legs - 1 - leg)));
}

CMat CircuitSimulator::reduce(const CMat& op, const std::vector<int>& legs) const {
  const int q = cfg_.q, nlegs = 2 * cfg_.L;
  const int k = static_cast<int>(legs.size());
  const long sub = ipow(q, k);
  // Offset of each sub-index inside the full index, and the digit weights.
  std::vector<long> weight(k);
  for (int a = 0; a < k; ++a) weight[a] = ipow(q, nlegs - 1 - legs[a]);
  std::vector<long> place(sub, 0);
  for (long s = 0; s < sub; ++s) {
    long rem = s;
    for (int a = k - 1; a >= 0; --a) {
      place[s] += (rem % q) * weight[a];
      rem /= q;
    }
  }
  CMat out = CMat::Zero(sub, sub);
  for (long r = 0; r < dim_; ++r) {
    long rest = r, sr = 0;
    for (int a = 0; a < k; ++a) {
      const long d = (r / weight[a]) % q;
      rest -= d * weight[a];
      sr = sr * q + d;
    }
    for (long sc = 0; sc < sub; ++sc) out(sr, sc) += op(r, rest + place[sc]);
  }
  return out;
}

cplx CircuitSimulator::correlation_single(int i, int j, double x, double y, int t) const {
  check_window(t);
  const CMat o = heisenberg(embed(basis_.at(i), site_leg(y, cfg_.L)), t);
  const CMat rho = reduce(o, {site_leg(x, cfg_.L)});
  return (basis_.at(j) * rho).trace() / static_cast<double>(dim_);
}

cplx CircuitSimulator::correlation_two_site(int i, int j, int k, int l, double x1, double x2,
                                            int t, double y1) const {
  check_window(t);
  const CMat a = embed(basis_.at(i), site_leg(y1, cfg_.L)) *
                 embed(basis_.at(j), site_leg(y1 + 0.5, cfg_.L));
  const CMat o = heisenberg(a, t);
  const int l1 = site_leg(x1, cfg_.L), l2 = site_leg(x2, cfg_.L);
  if (l1 == l2) {
    const CMat rho = reduce(o, {l1});
    return (basis_.at(k) * basis_.at(l) * rho).trace() / static_cast<double>(dim_);
  }
  const CMat rho = reduce(o, {l1, l2});
  return (kron(basis_.at(k), basis_.at(l)) * rho).trace() / static_cast<double>(dim_);
}

LightconeReport lightcone_scan(const CircuitConfig& cfg, int t_max) {
  CircuitSimulator sim(cfg);
  sim.check_window(t_max);
  const int q = cfg.q, L = cfg.L, d = q * q;
  const auto basis = weyl_basis(q);
  LightconeReport rep;
  {
    const Translation shift = translation_permutation(q, L);
    const Translation shift2 = shift * shift;
    rep.translation_residual = max_abs(sim.floquet() * shift2 - shift2 * sim.floquet());
  }
  const bool homogeneous = cfg.bond_gates.empty();
  for (double y : {0.0, 0.5}) {
    const Side side = y == 0.0 ? Side::Plus : Side::Minus;
    std::vector<CMat> chan_pows;
    if (homogeneous) {
      const ChannelMatrix m = build_channel(cfg.gate, side);
      CMat p = CMat::Identity(d, d);
      for (int t = 0; t <= t_max; ++t) {
        chan_pows.push_back(p);
        p = m.m * m.m * p;
      }
    }
    for (int t = 0; t <= t_max; ++t) {
      const double cone_x = y == 0.0 ? y + t : y - t;
      for (int i = 1; i < d; ++i) {
        const CMat o = sim.heisenberg(sim.embed(basis[i], site_leg(y, L)), t);
        CVec pred;
        if (homogeneous) pred = chan_pows[t] * vectorize(basis[i]);
        for (int h = 0; h < 2 * L; ++h) {
          const double x = 0.5 * h;
          const CMat rho = sim.reduce(o, {site_leg(x, L)});
          const double disp = std::abs(ring_displacement(x - y, L));
          const bool on_cone = same_mod(x, cone_x, L);
          for (int j = 0; j < d; ++j) {
            const cplx v = (basis[j] * rho).trace() / static_cast<double>(sim.dimension());
            rep.cells.push_back({t, x, y, i, j, v});
            const double a = std::abs(v);
            if (on_cone) {
              if (t >= 1) rep.cone_max = std::max(rep.cone_max, a);
              if (homogeneous) {
                const cplx p = (devectorize(pred, q) * basis[j]).trace() / static_cast<double>(q);
                rep.cone_residual = std::max(rep.cone_residual, std::abs(v - p));
              }
            } else if (disp > t + 1e-9) {
              rep.exterior_max = std::max(rep.exterior_max, a);
            } else {
              rep.interior_max = std::max(rep.interior_max, a);
            }
          }
        }
      }
    }
  }
  return rep;
}

TwoSiteReport two_site_scan(const CircuitConfig& cfg, int t_max, double y1) {
  CircuitSimulator sim(cfg);
  sim.check_window(t_max);
  const int q = cfg.q, L = cfg.L, d = q * q;
  const auto basis = weyl_basis(q);
  const double n = static_cast<double>(sim.dimension());
  TwoSiteReport rep;
  rep.y1 = y1;
  const int la = site_leg(y1, L), lb = site_leg(y1 + 0.5, L);
  std::map<std::tuple<int, int, int>, double> cell_max;
  for (int t = 1; t <= t_max; ++t) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i == 0 && j == 0) continue;
        const CMat o = sim.heisenberg(sim.embed(basis[i], la) * sim.embed(basis[j], lb), t);
        for (int h1 = 0; h1 < 2 * L; ++h1) {
          for (int h2 = h1; h2 < 2 * L; ++h2) {
            const int a1 = site_leg(0.5 * h1, L), a2 = site_leg(0.5 * h2, L);
            const CMat rho = h1 == h2 ? sim.reduce(o, {a1}) : sim.reduce(o, {a1, a2});
            double worst = 0.0;
            for (int k = 0; k < d; ++k)
              for (int l = 0; l < d; ++l) {
                const CMat probe = h1 == h2 ? CMat(basis[k] * basis[l]) : kron(basis[k], basis[l]);
                worst = std::max(worst, std::abs((probe * rho).trace()) / n);
              }
            double& cell = cell_max[{t, h1, h2}];
            cell = std::max(cell, worst);
          }
        }
      }
    }
  }
  for (const auto& [key, v] : cell_max) {
    const auto [t, h1, h2] = key;
    rep.cells.push_back({t, 0.5 * h1, 0.5 * h2, v});
    rep.max_abs = std::max(rep.max_abs, v);
  }
  return rep;
}

}  // namespace dualkit
