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

#include "dualkit/tensor_ops.hpp"

#include <algorithm>
#include <cmath>

namespace dualkit {

Gate::Gate(int q_, CMat m_) : q(q_), m(std::move(m_)) {
  if (q < 2) throw Error(ErrorKind::Validation, "local dimension must be at least 2");
  if (m.rows() != q * q || m.cols() != q * q)
    throw Error(ErrorKind::Validation, "gate matrix must be q^2 x q^2");
}

Gate Gate::operator*(const Gate& other) const {
  if (other.q != q) throw Error(ErrorKind::Validation, "local dimension mismatch");
  return Gate(q, m * other.m);
}

namespace {

// Applies out(row(i,α,j,β), col(i,α,j,β)) = in(iα, jβ).
template <class RowF, class ColF>
Gate permute(const Gate& x, RowF row, ColF col) {
  const int q = x.q;
  CMat out(q * q, q * q);
  for (int i = 0; i < q; ++i)
    for (int a = 0; a < q; ++a)
      for (int j = 0; j < q; ++j)
        for (int b = 0; b < q; ++b)
          out(row(i, a, j, b), col(i, a, j, b)) = x.m(i * q + a, j * q + b);
  return Gate(q, std::move(out));
}

// Gathers out(iα, jβ) = in(row(i,α,j,β), col(i,α,j,β)).
template <class RowF, class ColF>
Gate gather(const Gate& y, RowF row, ColF col) {
  const int q = y.q;
  CMat out(q * q, q * q);
  for (int i = 0; i < q; ++i)
    for (int a = 0; a < q; ++a)
      for (int j = 0; j < q; ++j)
        for (int b = 0; b < q; ++b)
          out(i * q + a, j * q + b) = y.m(row(i, a, j, b), col(i, a, j, b));
  return Gate(q, std::move(out));
}

}  // namespace

Gate realign_r1(const Gate& x) {
  const int q = x.q;
  return permute(
      x, [q](int, int a, int, int b) { return b * q + a; },
      [q](int i, int, int j, int) { return j * q + i; });
}

Gate realign_r2(const Gate& x) {
  const int q = x.q;
  return permute(
      x, [q](int i, int, int j, int) { return i * q + j; },
      [q](int, int a, int, int b) { return a * q + b; });
}

Gate partial_transpose_t1(const Gate& x) {
  const int q = x.q;
  return permute(
      x, [q](int, int a, int j, int) { return j * q + a; },
      [q](int i, int, int, int b) { return i * q + b; });
}

Gate partial_transpose_t2(const Gate& x) {
  const int q = x.q;
  return permute(
      x, [q](int i, int, int, int b) { return i * q + b; },
      [q](int, int a, int j, int) { return j * q + a; });
}

Gate realign_r1_inverse(const Gate& y) {
  const int q = y.q;
  return gather(
      y, [q](int, int a, int, int b) { return b * q + a; },
      [q](int i, int, int j, int) { return j * q + i; });
}

Gate realign_r2_inverse(const Gate& y) {
  const int q = y.q;
  return gather(
      y, [q](int i, int, int j, int) { return i * q + j; },
      [q](int, int a, int, int b) { return a * q + b; });
}

Gate swap_operator(int q) {
  CMat s = CMat::Zero(q * q, q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) s(b * q + a, a * q + b) = 1.0;
  return Gate(q, std::move(s));
}

Gate sandwich_locals(const Gate& u, const CMat& u1, const CMat& u2, const CMat& v1,
                     const CMat& v2) {
  for (const CMat* l : {&u1, &u2, &v1, &v2})
    if (l->rows() != u.q || l->cols() != u.q)
      throw Error(ErrorKind::Validation, "local operator must be q x q");
  return Gate(u.q, kron(u1, u2) * u.m * kron(v1, v2));
}

CVec vectorize(const CMat& rho) {
  CVec v(rho.rows() * rho.cols());
  for (Eigen::Index j = 0; j < rho.rows(); ++j)
    for (Eigen::Index l = 0; l < rho.cols(); ++l) v(j * rho.cols() + l) = rho(j, l);
  return v;
}

CMat devectorize(const CVec& v, int q) {
  if (v.size() != q * q) throw Error(ErrorKind::Validation, "vector length must be q^2");
  CMat rho(q, q);
  for (int j = 0; j < q; ++j)
    for (int l = 0; l < q; ++l) rho(j, l) = v(j * q + l);
  return rho;
}

CVec phi_plus(int q) {
  CVec v = CVec::Zero(q * q);
  for (int j = 0; j < q; ++j) v(j * q + j) = 1.0 / std::sqrt(static_cast<double>(q));
  return v;
}

double IdentityReport::max_residual() const {
  double m = 0.0;
  for (const auto& it : items) m = std::max(m, it.residual);
  return m;
}

IdentityReport verify_reshuffle_identities(const Gate& x, const std::array<CMat, 4>& l) {
  const int q = x.q;
  const Gate s = swap_operator(q);
  const CMat& a = x.m;
  const Gate sa = s * x, as = x * s;
  IdentityReport rep;
  auto add = [&rep](const char* name, const CMat& lhs, const CMat& rhs) {
    rep.items.push_back({name, max_abs(lhs - rhs)});
  };
  add("(A^T1)^T2 = A^T", partial_transpose_t2(partial_transpose_t1(x)).m, a.transpose());
  add("(A^T2)^T1 = A^T", partial_transpose_t1(partial_transpose_t2(x)).m, a.transpose());
  add("(A^R1)^R2 = S A^T S", realign_r2(realign_r1(x)).m, s.m * a.transpose() * s.m);
  add("(A^R2)^R1 = S A^T S", realign_r1(realign_r2(x)).m, s.m * a.transpose() * s.m);
  add("A^R1 = (S A^R2 S)^T", realign_r1(x).m, (s.m * realign_r2(x).m * s.m).transpose());
  add("(SA)^R2 = S A^T1", realign_r2(sa).m, s.m * partial_transpose_t1(x).m);
  add("(AS)^R1 = A^T1 S", realign_r1(as).m, partial_transpose_t1(x).m * s.m);
  add("(SA)^T2 = S A^R1", partial_transpose_t2(sa).m, s.m * realign_r1(x).m);
  add("(AS)^T1 = A^R1 S", partial_transpose_t1(as).m, realign_r1(x).m * s.m);
  add("(AS)^T2 = A^R2 S", partial_transpose_t2(as).m, realign_r2(x).m * s.m);
  add("(SA)^T1 = S A^R2", partial_transpose_t1(sa).m, s.m * realign_r2(x).m);

  const Gate b = sandwich_locals(x, l[0], l[1], l[2], l[3]);
  add("local covariance R1", realign_r1(b).m,
      kron(l[3].transpose(), l[1]) * realign_r1(x).m * kron(l[2], l[0].transpose()));
  add("local covariance R2", realign_r2(b).m,
      kron(l[0], l[2].transpose()) * realign_r2(x).m * kron(l[1].transpose(), l[3]));
  add("local covariance T1", partial_transpose_t1(b).m,
      kron(l[2].transpose(), l[1]) * partial_transpose_t1(x).m * kron(l[0].transpose(), l[3]));
  add("local covariance T2", partial_transpose_t2(b).m,
      kron(l[0], l[3].transpose()) * partial_transpose_t2(x).m * kron(l[2], l[1].transpose()));
  return rep;
}

}  // namespace dualkit
