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

#include "dualkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace dualkit {

double max_abs(const CMat& a) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double unitarity_defect(const CMat& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(a * a.adjoint() - CMat::Identity(a.rows(), a.cols()));
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

PolarResult polar_unitary(const CMat& x) {
  Eigen::JacobiSVD<CMat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success)
    throw Error(ErrorKind::NonConvergence, "SVD did not converge in polar step");
  PolarResult r;
  r.unitary = svd.matrixU() * svd.matrixV().adjoint();
  r.sigma_min = svd.singularValues().size() ? svd.singularValues().minCoeff() : 0.0;
  r.rank_deficient = r.sigma_min < 1e-13;
  return r;
}

void sort_eigenvalues(std::vector<cplx>& ev) {
  // Snap moduli onto a coarse grid first so the comparator is a strict weak
  // ordering even when numerically equal moduli differ in the last ulps.
  auto key = [](const cplx& z) { return std::round(std::abs(z) * 1e12); };
  std::stable_sort(ev.begin(), ev.end(), [&](const cplx& a, const cplx& b) {
    const double ka = key(a), kb = key(b);
    if (ka != kb) return ka > kb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

CMat balance(const CMat& a) {
  // Parlett–Reinsch diagonal similarity with power-of-two scalings, so the
  // balanced matrix has exactly the same eigenvalues.
  CMat b = a;
  const Eigen::Index n = b.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(b(j, i));
        r += std::abs(b(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) c *= 2.0, r /= 2.0, f *= 2.0;
      while (c >= r * 2.0) c /= 2.0, r *= 2.0, f /= 2.0;
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        b.row(i) /= f;
        b.col(i) *= f;
      }
    }
  }
  return b;
}

namespace {

// Fixed unitary used to break exact symmetries (e.g. cyclic permutation
// structure) on which the shifted QR iteration can stall.
CMat scrambling_unitary(Eigen::Index n, int variant) {
  CMat z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      z(i, j) = cplx(std::sin(1.0 + 0.7 * i + 1.3 * j * (variant + 1) + 0.1 * i * j),
                     std::cos(2.0 + 1.1 * i * (variant + 2) - 0.3 * j + 0.05 * i * j));
  Eigen::HouseholderQR<CMat> qr(z);
  return qr.householderQ() * CMat::Identity(n, n);
}

bool schur_eigenvalues(const CMat& a, CVec& out) {
  Eigen::ComplexEigenSolver<CMat> solver;
  solver.setMaxIterations(100 * std::max<Eigen::Index>(a.rows(), 1));
  solver.compute(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) return false;
  out = solver.eigenvalues();
  return true;
}

}  // namespace

std::vector<cplx> eigenvalues(const CMat& a) {
  const CMat b = balance(a);
  CVec ev;
  bool ok = schur_eigenvalues(b, ev);
  for (int variant = 0; !ok && variant < 3; ++variant) {
    const CMat q = scrambling_unitary(b.rows(), variant);
    ok = schur_eigenvalues(q.adjoint() * b * q, ev);
  }
  if (!ok) throw Error(ErrorKind::NonConvergence, "complex Schur iteration did not converge");
  std::vector<cplx> out(ev.data(), ev.data() + ev.size());
  sort_eigenvalues(out);
  return out;
}

std::vector<cplx> charpoly_coefficients(const CMat& a) {
  // p(λ) = λ^n + c_{n-1} λ^{n-1} + … + c_0, returned as {1, c_{n-1}, …, c_0}.
  const Eigen::Index n = a.rows();
  std::vector<cplx> c(n + 1);
  c[0] = 1.0;
  CMat m = CMat::Zero(n, n);
  const CMat id = CMat::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[k - 1] * id;
    c[k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<cplx> charpoly_eigenvalues(const CMat& a) {
  const auto c = charpoly_coefficients(a);
  const Eigen::Index n = a.rows();
  CMat comp = CMat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) comp(0, j) = -c[j + 1];
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  return eigenvalues(comp);
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  sort_eigenvalues(a);
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const auto& z : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(z - b[k]);
      if (d < best) best = d, arg = k;
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace dualkit
