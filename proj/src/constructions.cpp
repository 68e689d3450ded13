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

#include "dualkit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dualkit/haar_mc.hpp"
#include "dualkit/invariants.hpp"

namespace dualkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

// ---------------------------------------------------------------- blocks --

namespace {

// Partial transpose on the q factor of an (m·q)-dimensional block viewed on
// C^m ⊗ C^q: ⟨i β|X^{T2}|j α⟩ = ⟨i α|X|j β⟩.
CMat partial_transpose_q(const CMat& x, int q) {
  const Eigen::Index m = x.rows() / q;
  CMat y(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      y.block(i * q, j * q, q, q) = x.block(i * q, j * q, q, q).transpose();
  return y;
}

}  // namespace

CMat block_diagonal(const std::vector<CMat>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  CMat d = CMat::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    d.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return d;
}

Gate block_diagonal_gate(const BlockSpec& spec) {
  const int q = spec.q;
  Eigen::Index total = 0;
  for (const auto& b : spec.blocks) {
    if (b.rows() != b.cols() || b.rows() % q != 0 || b.rows() == 0)
      throw Error(ErrorKind::Validation, "block sizes must be positive multiples of q");
    if (unitarity_defect(b) > kUnitarityTol)
      throw Error(ErrorKind::Validation, "blocks must be unitary");
    if (b.rows() > q && unitarity_defect(partial_transpose_q(b, q)) > kUnitarityTol)
      throw Error(ErrorKind::Validation,
                  "blocks larger than q must stay unitary under partial transpose of the q factor");
    total += b.rows();
  }
  if (total != static_cast<Eigen::Index>(q) * q)
    throw Error(ErrorKind::Validation, "block sizes must sum to q^2");
  const Gate d(q, block_diagonal(spec.blocks));
  const Gate s = swap_operator(q);
  return spec.side == BlockSide::DS ? d * s : s * d;
}

BlockSpec random_block_spec(int q, const std::vector<int>& multiplicities, const Stream& stream,
                            BlockSide side) {
  BlockSpec spec;
  spec.q = q;
  spec.side = side;
  for (std::size_t k = 0; k < multiplicities.size(); ++k) {
    const int m = multiplicities[k];
    const Stream sk = stream.at(k);
    // Products u_m ⊗ v_q are the simplest blocks that survive the partial
    // transpose; for m = 1 this is a Haar q × q block.
    spec.blocks.push_back(m == 1 ? sample_haar(q, sk)
                                 : CMat(kron(sample_haar(m, sk.child("m")), sample_haar(q, sk.child("q")))));
  }
  return spec;
}

Gate diagonal_dual_sample(int q, double epsilon, const Stream& stream) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw Error(ErrorKind::Usage, "epsilon must lie in (0, 1]");
  auto engine = stream.engine();
  std::uniform_real_distribution<double> phi(-kPi, kPi);
  CMat d = CMat::Zero(q * q, q * q);
  for (int k = 0; k < q * q; ++k) d(k, k) = std::exp(cplx(0.0, epsilon * phi(engine)));
  return Gate(q, d) * swap_operator(q);
}

BlockChannelReport block_channel_forms(const BlockSpec& spec) {
  const int q = spec.q;
  BlockChannelReport r;
  BlockSpec ds = spec, sd = spec;
  ds.side = BlockSide::DS;
  sd.side = BlockSide::SD;
  const Gate g_ds = block_diagonal_gate(ds), g_sd = block_diagonal_gate(sd);
  const CMat m_ds = build_m_plus(g_ds).m;
  const CMat m_sd = build_m_plus(g_sd).m;
  r.side_exchange_residual = max_abs(m_sd - build_m_minus(g_ds).m);
  r.uniform = std::all_of(spec.blocks.begin(), spec.blocks.end(),
                          [q](const CMat& b) { return b.rows() == q; });
  if (!r.uniform) return r;

  CMat off = m_ds;
  off.diagonal().setZero();
  r.ds_offdiagonal = max_abs(off);
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l)
      r.uniform_eigenvalues.push_back((spec.blocks[k] * spec.blocks[l].adjoint()).trace() /
                                      static_cast<double>(q));
  r.ds_spectrum_residual = multiset_distance(eigenvalues(m_ds), r.uniform_eigenvalues);

  CMat closed = CMat::Zero(q * q, q * q);
  for (const auto& b : spec.blocks) closed += kron(b.adjoint(), b.transpose());
  closed /= static_cast<double>(q);
  r.sd_residual = max_abs(m_sd - closed);
  return r;
}

// ------------------------------------------------------------ MR and MRT --

namespace {

struct PolarStep {
  Gate gate;
  bool rank_deficient;
};

PolarStep polar_of(const Gate& x) {
  const auto p = polar_unitary(x.m);
  return {Gate(x.q, p.unitary), p.rank_deficient};
}

void record(MRTrace& t, const Gate& u) {
  t.entanglement.push_back(operator_entanglement(u));
  t.entanglement_swapped.push_back(operator_entanglement_swapped(u));
  t.tsallis_half.push_back(tsallis_half(u));
}

bool converged(const Gate& u, const MRTrace& t, double tol, MRStop stop, bool two_unitary) {
  const double q2 = static_cast<double>(u.q) * u.q;
  const double es = 1.0 - 1.0 / q2;
  if (stop == MRStop::EntanglementGap) {
    const bool dual = es - t.entanglement.back() < tol;
    return two_unitary ? dual && es - t.entanglement_swapped.back() < tol : dual;
  }
  const bool dual = unitarity_defect(realign_r1(u).m) < tol;
  return two_unitary ? dual && unitarity_defect(partial_transpose_t2(u).m) < tol : dual;
}

MRResult iterate(const Gate& u0, int max_iter, double tol, MRStop stop, bool with_t2) {
  if (unitarity_defect(u0.m) > kChannelUnitarityTol)
    throw Error(ErrorKind::Validation, "MR seed must be unitary");
  MRResult res{u0, {}};
  record(res.trace, u0);
  while (!(res.trace.converged = converged(res.gate, res.trace, tol, stop, with_t2)) &&
         res.trace.iterations < max_iter) {
    auto s = polar_of(realign_r2(res.gate));
    res.trace.rank_deficient_steps += s.rank_deficient;
    if (with_t2) {
      auto t = polar_of(partial_transpose_t2(s.gate));
      res.trace.rank_deficient_steps += t.rank_deficient;
      s.gate = t.gate;
    }
    res.gate = s.gate;
    ++res.trace.iterations;
    record(res.trace, res.gate);
  }
  res.trace.final_unitarity_defect = unitarity_defect(res.gate.m);
  res.trace.final_dual_defect = unitarity_defect(realign_r1(res.gate).m);
  res.trace.final_t_dual_defect = unitarity_defect(partial_transpose_t2(res.gate).m);
  return res;
}

}  // namespace

Gate mr_step(const Gate& u) { return polar_of(realign_r2(u)).gate; }

MRResult mr_iterate(const Gate& u0, int max_iter, double tol, MRStop stop) {
  return iterate(u0, max_iter, tol, stop, false);
}

MRResult mrt_iterate(const Gate& u0, int max_iter, double tol, MRStop stop) {
  return iterate(u0, max_iter, tol, stop, true);
}

std::vector<int> mrt_permutation_seed() { return {0, 7, 5, 2, 3, 4, 6, 1, 8}; }

// ---------------------------------------------------------- permutations --

bool PermutationSpec::is_bijection() const {
  if (static_cast<int>(K.size()) != q || static_cast<int>(L.size()) != q) return false;
  std::vector<bool> seen(q * q, false);
  for (int i = 0; i < q; ++i) {
    if (static_cast<int>(K[i].size()) != q || static_cast<int>(L[i].size()) != q) return false;
    for (int j = 0; j < q; ++j) {
      const int k = K[i][j], l = L[i][j];
      if (k < 0 || k >= q || l < 0 || l >= q || seen[k * q + l]) return false;
      seen[k * q + l] = true;
    }
  }
  return true;
}

Gate permutation_gate(const PermutationSpec& spec) {
  if (!spec.is_bijection())
    throw Error(ErrorKind::Validation, "(K, L) does not define a bijection of [q]x[q]");
  const int q = spec.q;
  CMat p = CMat::Zero(q * q, q * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const double th = spec.theta ? (*spec.theta)[i][j] : 0.0;
      p(spec.K[i][j] * q + spec.L[i][j], i * q + j) = std::exp(cplx(0.0, th));
    }
  return Gate(q, p);
}

namespace {

bool rows_distinct(const std::vector<std::vector<int>>& m, int q) {
  for (int i = 0; i < q; ++i) {
    std::vector<bool> seen(q, false);
    for (int j = 0; j < q; ++j) {
      if (seen[m[i][j]]) return false;
      seen[m[i][j]] = true;
    }
  }
  return true;
}

bool cols_distinct(const std::vector<std::vector<int>>& m, int q) {
  for (int j = 0; j < q; ++j) {
    std::vector<bool> seen(q, false);
    for (int i = 0; i < q; ++i) {
      if (seen[m[i][j]]) return false;
      seen[m[i][j]] = true;
    }
  }
  return true;
}

}  // namespace

PermutationClass classify_permutation(const PermutationSpec& spec) {
  PermutationClass c;
  c.is_dual = rows_distinct(spec.K, spec.q) && cols_distinct(spec.L, spec.q);
  c.is_t_dual = cols_distinct(spec.K, spec.q) && rows_distinct(spec.L, spec.q);
  c.is_2unitary = c.is_dual && c.is_t_dual;
  return c;
}

PermutationSpec permutation_spec_from_map(int q, const std::vector<int>& perm) {
  PermutationSpec s;
  s.q = q;
  s.K.assign(q, std::vector<int>(q));
  s.L.assign(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      s.K[i][j] = perm[i * q + j] / q;
      s.L[i][j] = perm[i * q + j] % q;
    }
  return s;
}

PermutationSpec orthogonal_latin_square_spec(int q) {
  // GF(4) = GF(2)[x]/(x² + x + 1) with elements 0, 1, x, x + 1 ↦ 0 … 3.
  static constexpr int gf4_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  if (q != 3 && q != 4 && q != 5 && q != 7)
    throw Error(ErrorKind::Usage, "orthogonal Latin squares provided for q in {3, 4, 5, 7}");
  PermutationSpec s;
  s.q = q;
  s.K.assign(q, std::vector<int>(q));
  s.L.assign(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      if (q == 4) {
        s.K[i][j] = i ^ j;
        s.L[i][j] = gf4_mul[2][i] ^ j;
      } else {
        s.K[i][j] = (i + j) % q;
        s.L[i][j] = (2 * i + j) % q;
      }
    }
  return s;
}

PermutationSpec enphase(PermutationSpec spec, const std::vector<std::vector<double>>& theta) {
  spec.theta = theta;
  return spec;
}

EnumerationSummary enumerate_dual_permutations(
    int q, const std::function<void(const EnumeratedPermutation&)>& sink) {
  if (q < 2 || q > 3) throw Error(ErrorKind::Usage, "permutation enumeration supports q = 2, 3");
  std::vector<int> perm(q * q);
  std::iota(perm.begin(), perm.end(), 0);
  EnumerationSummary sum;
  do {
    const PermutationSpec spec = permutation_spec_from_map(q, perm);
    const PermutationClass cls = classify_permutation(spec);
    sum.t_dual += cls.is_t_dual;
    if (cls.is_dual) {
      ++sum.dual;
      sum.two_unitary += cls.is_2unitary;
      EnumeratedPermutation e;
      e.id = sum.scanned;
      e.map = perm;
      e.cls = cls;
      const Gate g = permutation_gate(spec);
      e.e_p = entangling_power(g);
      const auto spec_plus = channel_spectrum(build_m_plus(g));
      e.lambda1_mod = std::abs(spec_plus.eigenvalues[0]);
      e.lambda2_mod = std::abs(spec_plus.eigenvalues[1]);
      sink(e);
    }
    ++sum.scanned;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

// ------------------------------------------------------------- cat maps --

namespace {

cplx root_of_unity(long long n, int q) {
  const long long r = ((n % q) + q) % q;
  return std::exp(cplx(0.0, 2.0 * kPi * static_cast<double>(r) / q));
}

}  // namespace

Gate cat_map(int q) {
  CMat u(q * q, q * q);
  for (int k = 0; k < q; ++k)
    for (int a = 0; a < q; ++a)
      for (int j = 0; j < q; ++j)
        for (int b = 0; b < q; ++b) {
          const long long n = static_cast<long long>(k) * a + 2LL * j * b - (k * b + j * a);
          u(k * q + a, j * q + b) = root_of_unity(-n, q) / static_cast<double>(q);
        }
  return Gate(q, u);
}

Gate cat_family(int q, double b) {
  CMat u(q * q, q * q);
  for (int k = 0; k < q; ++k)
    for (int a = 0; a < q; ++a)
      for (int j = 0; j < q; ++j)
        for (int be = 0; be < q; ++be) {
          const int n = (k * be + j * a) % q;
          const double x = std::fmod(b * j * be + n, static_cast<double>(q));
          u(k * q + a, j * q + be) = std::exp(cplx(0.0, 2.0 * kPi * x / q)) / static_cast<double>(q);
        }
  return Gate(q, u);
}

CVec cat_psi(int q) {
  CVec v = CVec::Zero(q * q);
  for (int k = 0; k < q; ++k) v(k * q + (k + q / 2) % q) = 1.0 / std::sqrt(static_cast<double>(q));
  return v;
}

CVec cat_psi_bar(int q) {
  CVec v = CVec::Zero(q * q);
  for (int k = 0; k < q; ++k) v(k * q + k) = (k % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(q));
  return v;
}

CMat shifted_dft(int q, double phi1, double phi2) {
  CMat u(q, q);
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l)
      u(k, l) = std::exp(cplx(0.0, 2.0 * kPi * (l + phi1) * (k + phi2) / q)) /
                std::sqrt(static_cast<double>(q));
  return u;
}

CatFourierLambda cat_fourier_local_lambda1(int q, double phi1, double phi2) {
  if (q % 2 != 0) throw Error(ErrorKind::Usage, "Fourier-local cat eigenvalue needs even q");
  const CMat u = shifted_dft(q, phi1, phi2);
  const CMat w = kron(u, u.conjugate());
  CatFourierLambda r;
  r.closed_form = cat_psi_bar(q).dot(w * cat_psi(q));  // dot conjugates the left argument
  const auto d = deflate_trivial(build_m_plus(cat_map(q)));
  r.eigensolve = dressed_spectrum(d, u).eigenvalues[0];
  r.expected = std::cos(kPi * phi2);
  return r;
}

// ------------------------------------------------------------- fixtures --

namespace {

CMat from_rows(const std::vector<std::vector<double>>& rows, double scale = 1.0) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  CMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = scale * rows[i][j];
  return m;
}

CMat perm_rows(int n, const std::vector<int>& col_of_row) {
  CMat p = CMat::Zero(n, n);
  for (int r = 0; r < n; ++r) p(r, col_of_row[r]) = 1.0;
  return p;
}

CMat d2_matrix(double a) {
  CMat d = CMat::Zero(9, 9);
  d(0, 0) = d(1, 1) = 1.0;
  d(2, 5) = d(3, 4) = d(4, 3) = d(5, 2) = 1.0;
  d(6, 6) = 1.0;
  d(7, 7) = std::cos(a * kPi);
  d(7, 8) = std::sin(a * kPi);
  d(8, 7) = -std::sin(a * kPi);
  d(8, 8) = std::cos(a * kPi);
  return d;
}

}  // namespace

double d2_rotation_angle() {
  static const double angle = [] {
    const Gate s = swap_operator(3);
    auto f = [&](double a) { return entangling_power(Gate(3, d2_matrix(a)) * s) - 0.75; };
    double lo = 0.30, hi = 0.33;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return angle;
}

std::map<std::string, Gate> fixtures() {
  const double r3 = std::sqrt(3.0), h = 0.5, s = 1.0 / std::sqrt(2.0);
  std::map<std::string, Gate> f;
  f.emplace("dual_q3_ep8_9", Gate(3, from_rows({{r3, 0, -1, 0, 0, 0, 0, 0, 0},
                                                {0, 0, 0, 0, 2, 0, 0, 0, 0},
                                                {0, 0, 0, 0, 0, 0, -r3, 0, 1},
                                                {0, 0, 0, 1, 0, r3, 0, 0, 0},
                                                {0, 0, 0, 0, 0, 0, 1, 0, r3},
                                                {0, 2, 0, 0, 0, 0, 0, 0, 0},
                                                {0, 0, 0, 0, 0, 0, 0, 2, 0},
                                                {0, 0, 0, r3, 0, -1, 0, 0, 0},
                                                {1, 0, r3, 0, 0, 0, 0, 0, 0}},
                                               0.5)));
  f.emplace("two_unitary_q3", Gate(3, from_rows({{r3, 0, 0, 0, 0, 0, 0, 0, -1},
                                                 {0, 0, 0, 0, 2, 0, 0, 0, 0},
                                                 {1, 0, 0, 0, 0, 0, 0, 0, r3},
                                                 {0, -1, 0, 0, 0, r3, 0, 0, 0},
                                                 {0, 0, 0, 0, 0, 0, 2, 0, 0},
                                                 {0, r3, 0, 0, 0, 1, 0, 0, 0},
                                                 {0, 0, 0, 1, 0, 0, 0, r3, 0},
                                                 {0, 0, 2, 0, 0, 0, 0, 0, 0},
                                                 {0, 0, 0, -r3, 0, 0, 0, 1, 0}},
                                                0.5)));
  f.emplace("dual_q3_ep3_4", Gate(3, from_rows({{0, 0, 0, 0, 1, 0, 0, 0, 0},
                                                {0, 1, 0, 0, 0, 0, 0, 0, 0},
                                                {0, 0, 0, 0, 0, 0, 0, 1, 0},
                                                {0, 0, 0, 0, 0, 0, 0, 0, 1},
                                                {-h, 0, h, h, 0, -h, 0, 0, 0},
                                                {-h, 0, h, -h, 0, h, 0, 0, 0},
                                                {0, 0, 0, 0, 0, 0, 1, 0, 0},
                                                {-h, 0, -h, -h, 0, -h, 0, 0, 0},
                                                {-h, 0, -h, h, 0, h, 0, 0, 0}})));
  const Gate s3 = swap_operator(3), s4 = swap_operator(4);
  const Gate d3(3, block_diagonal({CMat::Identity(3, 3), perm_rows(3, {2, 0, 1}),
                                   perm_rows(3, {1, 2, 0})}));
  const Gate d2(3, d2_matrix(d2_rotation_angle()));
  const Gate d4(4, block_diagonal({CMat::Identity(4, 4), perm_rows(4, {3, 0, 1, 2}),
                                   perm_rows(4, {2, 3, 0, 1}), perm_rows(4, {1, 2, 3, 0})}));
  f.emplace("D3", d3);
  f.emplace("D3S", d3 * s3);
  f.emplace("D2", d2);
  f.emplace("D2S", d2 * s3);
  f.emplace("D4", d4);
  f.emplace("D4S", d4 * s4);

  CMat u2 = CMat::Zero(16, 16);
  const std::vector<std::vector<std::pair<int, double>>> rows = {
      {{0, 1}},          {{4, 1}},          {{8, 1}},          {{12, 1}},
      {{9, s}, {13, s}}, {{1, 1}},          {{5, 1}},          {{10, -s}, {14, s}},
      {{6, s}, {7, s}},  {{2, s}, {3, s}},  {{10, s}, {14, s}}, {{9, s}, {13, -s}},
      {{2, -s}, {3, s}}, {{6, s}, {7, -s}}, {{11, 1}},         {{15, 1}}};
  for (int r = 0; r < 16; ++r)
    for (const auto& [c, v] : rows[r]) u2(r, c) = v;
  f.emplace("U2_q4", Gate(4, u2));
  return f;
}

Gate fixture(const std::string& name) {
  const auto all = fixtures();
  const auto it = all.find(name);
  if (it == all.end()) throw Error(ErrorKind::Usage, "unknown fixture: " + name);
  return it->second;
}

bool inside_deltoid(cplx z, double slack) {
  // The deltoid is star-shaped about the origin; compare |z| with the
  // boundary radius in the direction of z, located by bisection on the
  // boundary parameter within the sector t ∈ [0, 2π/3] (threefold symmetry).
  const double r = std::abs(z);
  if (r <= 1.0 / 3.0) return true;  // inscribed circle
  if (r > 1.0 + slack) return false;
  double theta = std::arg(z);
  const double sector = 2.0 * kPi / 3.0;
  theta = std::fmod(std::fmod(theta, sector) + sector, sector);
  auto boundary = [](double t) {
    return (2.0 * std::exp(cplx(0.0, t)) + std::exp(cplx(0.0, -2.0 * t))) / 3.0;
  };
  // arg z(t) increases monotonically from 0 to 2π/3 on t ∈ [0, 2π/3].
  double lo = 0.0, hi = sector;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    double a = std::arg(boundary(mid));
    if (a < 0.0) a += 2.0 * kPi;
    (a < theta ? lo : hi) = mid;
  }
  return r <= std::abs(boundary(0.5 * (lo + hi))) + slack;
}

UnistochasticReport unistochastic_reduction(const CMat& u) {
  const int q = 3;
  if (u.rows() != q || u.cols() != q) throw Error(ErrorKind::Validation, "local must be 3x3");
  UnistochasticReport r;
  r.bistochastic = u.cwiseAbs2().cast<cplx>();
  const CMat dressed = kron(u, u.conjugate()) * build_m_plus(fixture("D3S")).m;
  CMat reduced(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) reduced(i, j) = dressed(i * q + i, j * q + j);
  r.reduced = eigenvalues(reduced);
  r.b_spectrum = eigenvalues(r.bistochastic);
  r.reduced_residual = multiset_distance(r.reduced, r.b_spectrum);
  std::vector<cplx> padded = r.b_spectrum;
  padded.resize(q * q, cplx(0.0));
  r.full_residual = multiset_distance(eigenvalues(dressed), padded);
  // Only complex eigenvalues are bounded by the deltoid; real ones may sit
  // anywhere in [−1, 1] (a transposition gives −1).
  for (std::size_t k = 1; k < r.b_spectrum.size(); ++k)
    if (std::abs(r.b_spectrum[k].imag()) > 1e-9)
      r.inside_deltoid = r.inside_deltoid && inside_deltoid(r.b_spectrum[k]);
  return r;
}

}  // namespace dualkit
