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

#include "dualkit/invariants.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace dualkit {

namespace {

double linear_entropy_of(const CMat& r, int q) {
  const CMat g = r * r.adjoint();
  const double purity = (g * g).trace().real();
  return 1.0 - purity / std::pow(static_cast<double>(q), 4);
}

}  // namespace

SchmidtSpectrum schmidt_spectrum(const Gate& u) {
  const CMat r = realign_r1(u).m;
  Eigen::SelfAdjointEigenSolver<CMat> solver(r * r.adjoint(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NonConvergence, "Hermitian eigensolve did not converge");
  SchmidtSpectrum s;
  s.q = u.q;
  s.input_unitary = unitarity_defect(u.m) <= kUnitarityTol;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    s.gamma.push_back(std::max(0.0, solver.eigenvalues()(k)));
  std::sort(s.gamma.begin(), s.gamma.end(), std::greater<>());
  return s;
}

double operator_entanglement(const Gate& u) { return linear_entropy_of(realign_r1(u).m, u.q); }

double operator_entanglement_swapped(const Gate& u) {
  return linear_entropy_of(partial_transpose_t2(u).m, u.q);
}

double entangling_power(const Gate& u) {
  const double q2 = static_cast<double>(u.q) * u.q;
  const double es = 1.0 - 1.0 / q2;
  const double ep = (operator_entanglement(u) + operator_entanglement_swapped(u) - es) / es;
  return std::clamp(ep, 0.0, 1.0);
}

double tsallis_half(const Gate& u) {
  const auto s = schmidt_spectrum(u);
  const double q2 = static_cast<double>(u.q) * u.q;
  double acc = 0.0;
  for (double g : s.gamma) acc += std::sqrt(g / q2);
  return 2.0 * (acc - 1.0);
}

DualityClass classify_duality(const Gate& u, double tol) {
  DualityClass c;
  c.unitarity_residual = unitarity_defect(u.m);
  c.dual_residual = unitarity_defect(realign_r1(u).m);
  c.t_dual_residual = unitarity_defect(partial_transpose_t2(u).m);
  const bool unitary = c.unitarity_residual <= tol;
  c.is_dual = unitary && c.dual_residual <= tol;
  c.is_t_dual = unitary && c.t_dual_residual <= tol;
  c.is_2unitary = c.is_dual && c.is_t_dual;
  return c;
}

std::vector<double> mixing_thresholds(int q) {
  const int n = q * q - 1;
  std::vector<double> t;
  for (int k = 1; k <= n; ++k) t.push_back(1.0 - static_cast<double>(k) / n);
  return t;
}

ThresholdPosition locate_threshold(double e_p, int q) {
  const auto t = mixing_thresholds(q);
  ThresholdPosition pos;
  pos.first_certified_mode = q * q;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (std::abs(e_p - t[k]) <= kBoundaryTol) {
      pos.boundary = true;
      pos.boundary_k = static_cast<int>(k) + 1;
    }
  }
  // Thresholds decrease with k; the first strictly exceeded one (beyond
  // the boundary band) certifies that mode and all later ones.
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (e_p > t[k] + kBoundaryTol) {
      pos.first_certified_mode = static_cast<int>(k) + 1;
      break;
    }
  }
  return pos;
}

InvariantReport invariant_report(const Gate& u) {
  InvariantReport r;
  r.E_U = operator_entanglement(u);
  r.E_US = operator_entanglement_swapped(u);
  r.e_p = entangling_power(u);
  r.schmidt = schmidt_spectrum(u);
  r.duality = classify_duality(u);
  r.threshold = locate_threshold(r.e_p, u.q);
  return r;
}

}  // namespace dualkit
