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

#include "dualkit/qubit_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dualkit/haar_mc.hpp"
#include "dualkit/rng.hpp"

namespace dualkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

Gate cartan_gate(double J) {
  const cplx a = std::exp(cplx(0.0, -J));
  const cplx b = cplx(0.0, -1.0) * std::exp(cplx(0.0, J));
  CMat u = CMat::Zero(4, 4);
  u(0, 0) = a;
  u(1, 2) = b;
  u(2, 1) = b;
  u(3, 3) = a;
  return Gate(2, u);
}

CMat qubit_local(double theta, double phi, double psi) {
  CMat u(2, 2);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  u(0, 0) = c * std::exp(cplx(0.0, phi / 2.0));
  u(0, 1) = -std::exp(cplx(0.0, psi / 2.0)) * s;
  u(1, 0) = std::exp(cplx(0.0, -psi / 2.0)) * s;
  u(1, 1) = c * std::exp(cplx(0.0, -phi / 2.0));
  return u;
}

std::vector<cplx> qubit_dressed_spectrum(double J, const CMat& u) {
  const auto d = deflate_trivial(build_m_plus(cartan_gate(J)));
  return dressed_spectrum(d, u).eigenvalues;
}

std::array<cplx, 3> restricted_w_spectrum(double J, double theta) {
  const double s = std::sin(2.0 * J);
  const double b = (1.0 + s) * std::cos(theta);
  const cplx disc = std::sqrt(cplx(b * b - 4.0 * s, 0.0));
  return {0.5 * (b + disc), 0.5 * (b - disc), cplx(s, 0.0)};
}

double critical_angle(double J) {
  const double s = std::sin(2.0 * J);
  return std::acos(2.0 * std::sqrt(s) / (1.0 + s));
}

namespace {

double ep_ratio_complement(double J) {
  // 1 − e_p/(2/3) = 1 − cos²2J = sin²2J.
  const double s = std::sin(2.0 * J);
  return s * s;
}

}  // namespace

double nu_prime(double J) {
  const double x = ep_ratio_complement(J);
  return x > 0.0 ? -0.25 * std::log(x) : std::numeric_limits<double>::infinity();
}

double mu_prime(double J) {
  const double s = std::sin(2.0 * J);
  return (1.0 - s) / (1.0 + s);
}

double nu_plus_exact(double J) {
  const double x = ep_ratio_complement(J);
  return x > 0.0 ? -std::log(x) / 3.0 : std::numeric_limits<double>::infinity();
}

std::array<cplx, 3> cubic_roots(cplx c2, cplx c1, cplx c0) {
  auto poly = [&](cplx x) { return ((x + c2) * x + c1) * x + c0; };
  auto dpoly = [&](cplx x) { return (3.0 * x + 2.0 * c2) * x + c1; };
  const cplx p = c1 - c2 * c2 / 3.0;
  const cplx q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  const cplx disc = q * q / 4.0 + p * p * p / 27.0;
  std::array<cplx, 3> roots;
  if (std::abs(disc) < 1e-12) {
    CMat comp = CMat::Zero(3, 3);
    comp(0, 0) = -c2;
    comp(0, 1) = -c1;
    comp(0, 2) = -c0;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    const auto ev = eigenvalues(comp);
    std::copy(ev.begin(), ev.end(), roots.begin());
  } else {
    const cplx sq = std::sqrt(disc);
    // Choose the branch with the larger modulus to avoid cancellation.
    cplx w = -q / 2.0 + sq;
    if (std::abs(-q / 2.0 - sq) > std::abs(w)) w = -q / 2.0 - sq;
    const cplx u = std::pow(w, 1.0 / 3.0);
    const cplx omega = std::exp(cplx(0.0, 2.0 * kPi / 3.0));
    cplx uk = u;
    for (int k = 0; k < 3; ++k) {
      const cplx v = std::abs(uk) > 0.0 ? -p / (3.0 * uk) : cplx(0.0);
      roots[k] = uk + v - c2 / 3.0;
      uk *= omega;
    }
  }
  for (auto& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx d = dpoly(r);
      if (std::abs(d) < 1e-10) break;
      const cplx step = poly(r) / d;
      r -= step;
      if (std::abs(step) < 1e-17) break;
    }
  }
  std::vector<cplx> sorted(roots.begin(), roots.end());
  sort_eigenvalues(sorted);
  std::copy(sorted.begin(), sorted.end(), roots.begin());
  return roots;
}

std::array<cplx, 3> restricted_v_cubic(double J, double phi) {
  const double s = std::sin(2.0 * J), c = std::cos(phi);
  return cubic_roots(-s * c, s * c, -s * s);
}

std::array<cplx, 3> general_su2_cubic(double J, double theta, double phi) {
  const double s = std::sin(2.0 * J), cp = std::cos(phi);
  const double c = std::cos(theta / 2.0) * std::cos(theta / 2.0);
  return cubic_roots(1.0 - 2.0 * c * (s * cp + 1.0), s * (2.0 * c * (s + cp) - s), -s * s);
}

double max_modulus(const std::array<cplx, 3>& roots) {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, std::abs(r));
  return m;
}

double sampled_nu_w(double J, int grid) {
  const auto d = deflate_trivial(build_m_plus(cartan_gate(J)));
  auto radius = [&](double theta) {
    return dressed_spectrum(d, qubit_local(theta, 0.0, 0.0)).spectral_radius();
  };
  int best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const double r = radius(kPi * k / (grid - 1));
    if (r < best_r) best_r = r, best = k;
  }
  // Golden-section refinement on the bracketing interval.
  double lo = kPi * std::max(0, best - 1) / (grid - 1);
  double hi = kPi * std::min(grid - 1, best + 1) / (grid - 1);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    const double ra = radius(a), rb = radius(b);
    best_r = std::min({best_r, ra, rb});
    (ra < rb ? hi : lo) = ra < rb ? b : a;
  }
  return best_r > 0.0 ? -std::log(best_r) : std::numeric_limits<double>::infinity();
}

QubitMCEstimate sampled_mu_w(double J, std::size_t n, std::uint64_t seed) {
  const auto d = deflate_trivial(build_m_plus(cartan_gate(J)));
  const Stream stream(seed, "qubit/mu-w");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto engine = stream.at(i).engine();
    std::uniform_real_distribution<double> cos_theta(-1.0, 1.0), psi(0.0, 4.0 * kPi);
    const double theta = std::acos(cos_theta(engine));
    const double r = dressed_spectrum(d, qubit_local(theta, 0.0, psi(engine))).spectral_radius();
    v[i] = -std::log(r);
  }
  const auto e = summarize(v, seed);
  return {e.mean, e.stderr_, e.n};
}

double trapezoid_mu_w(double J, int nodes) {
  double acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double c = -1.0 + 2.0 * k / (nodes - 1);
    const double f = -std::log(max_modulus(restricted_w_spectrum(J, std::acos(c))));
    acc += (k == 0 || k == nodes - 1) ? 0.5 * f : f;
  }
  // ½∫_{−1}^{1} f d(cosθ) with spacing 2/(nodes − 1).
  return 0.5 * acc * 2.0 / (nodes - 1);
}

double general_cubic_min_radius(double J, int n_theta, int n_phi) {
  double m = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n_theta; ++a)
    for (int b = 0; b < n_phi; ++b) {
      const double theta = kPi * a / (n_theta - 1), phi = 2.0 * kPi * b / (n_phi - 1);
      m = std::min(m, max_modulus(general_su2_cubic(J, theta, phi)));
    }
  return m;
}

}  // namespace dualkit
