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

// Dense complex linear-algebra helpers shared by every module. All heavy
// lifting (Schur, SVD, QR, Hermitian eigensolves) is delegated to Eigen.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dualkit {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind { Usage = 2, Validation = 3, NonConvergence = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Largest entry modulus of a matrix.
double max_abs(const CMat& a);

// Max-entry modulus of a·a† − 1.
double unitarity_defect(const CMat& a);

// Kronecker product a ⊗ b with a the slow index.
CMat kron(const CMat& a, const CMat& b);

struct PolarResult {
  CMat unitary;         // nearest unitary V in X = V·sqrt(X†X)
  double sigma_min;     // smallest singular value of X
  bool rank_deficient;  // sigma_min below 1e-13: V not unique
};

// Nearest unitary by SVD, X = P Σ Q† ↦ P Q†. For rank-deficient X the
// completion is whatever the (deterministic) Jacobi SVD returns.
PolarResult polar_unitary(const CMat& x);

// Canonical eigenvalue ordering: descending modulus, then descending real
// part, then descending imaginary part. Moduli within 1e-12 of each other
// are treated as ties so that conjugate pairs order deterministically.
void sort_eigenvalues(std::vector<cplx>& ev);

// Diagonal similarity (powers of two) equalising row and column norms.
CMat balance(const CMat& a);

// Non-Hermitian eigenvalues of the balanced matrix through the complex
// Schur form, sorted canonically. If the QR iteration stalls, the solve is
// retried after a fixed unitary similarity; NonConvergence is thrown only
// if every attempt fails.
std::vector<cplx> eigenvalues(const CMat& a);

// Independent oracle path: characteristic polynomial via the
// Faddeev–LeVerrier recursion, roots via the companion matrix. Intended
// for small matrices (side ≤ 9) with well-separated spectra.
std::vector<cplx> charpoly_coefficients(const CMat& a);
std::vector<cplx> charpoly_eigenvalues(const CMat& a);

// Largest distance between two equally sized multisets of complex numbers
// under a greedy nearest-neighbour matching (exact for separated spectra).
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace dualkit
