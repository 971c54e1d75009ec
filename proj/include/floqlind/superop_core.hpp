// Copyright 2026 The floqlind Authors
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

// Dense complex linear algebra and the normalized Pauli-string operator basis.
//
// Conventions used throughout the library:
//   * Operators are dense Eigen matrices.
//   * Vectorization is row-major: vec(rho)[i * d + j] = rho(i, j), so that the
//     action A rho B becomes the matrix kron(A, B^T) on vec(rho).
//   * A Pauli string over L sites is the Kronecker product
//     sigma^{j_0} (x) sigma^{j_1} (x) ... (x) sigma^{j_{L-1}} scaled by
//     1/sqrt(2^L); site 0 is the most significant tensor factor.

#ifndef FLOQLIND_SUPEROP_CORE_HPP
#define FLOQLIND_SUPEROP_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "floqlind/errors.hpp"

namespace floqlind {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr int kLocalDim = 2;

/// Site-resolved Pauli label j = (j_0, ..., j_{L-1}) with entries in {0,1,2,3}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> sites);

  /// Decodes a base-4 code (site 0 most significant).
  static MultiIndex from_code(std::uint64_t code, int num_sites);
  /// Single nontrivial factor `label` on `site`.
  static MultiIndex single(int num_sites, int site, int label);

  int num_sites() const noexcept { return static_cast<int>(sites_.size()); }
  int operator[](int site) const { return sites_[static_cast<std::size_t>(site)]; }
  int weight() const noexcept { return weight_; }
  bool is_identity() const noexcept { return weight_ == 0; }
  std::uint64_t code() const noexcept;
  /// Sites with a nonzero label, ascending.
  std::vector<int> support() const;
  /// Pauli-letter rendering, e.g. "IXZ".
  std::string to_string() const;
  /// Cyclic shift by `offset` sites (periodic chains).
  MultiIndex translated(int offset) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.code() <=> b.code();
  }

 private:
  std::vector<std::uint8_t> sites_;
  int weight_ = 0;
};

/// Parses a Pauli-letter string ("IXYZ", case-insensitive) into a MultiIndex.
MultiIndex parse_pauli_label(const std::string& letters);

/// Sparse view of a normalized Pauli string: exactly one nonzero per row,
/// located at column `row ^ flip_mask` with value `values[row]`.
struct PauliMonomial {
  std::uint64_t flip_mask = 0;
  std::vector<Complex> values;
};

PauliMonomial pauli_monomial(const MultiIndex& index);

/// Normalized Pauli string F_j of dimension 2^L. Throws kDimensionMismatch if
/// the index does not cover `num_sites` sites.
ComplexMatrix pauli_string(const MultiIndex& index, int num_sites);

/// Unnormalized single-site Pauli matrix sigma^label.
ComplexMatrix pauli_matrix(int label);

/// Operator `local` placed on `site` of an L-site chain (identity elsewhere).
ComplexMatrix embed_site_operator(const ComplexMatrix& local, int site, int num_sites);

/// Orthonormal Pauli-string basis of M_{2^L}.
class FrobeniusBasis {
 public:
  explicit FrobeniusBasis(int num_sites);

  int num_sites() const noexcept { return num_sites_; }
  int dim() const noexcept { return 1 << num_sites_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << (2 * num_sites_); }
  double normalization() const;

  ComplexMatrix element(const MultiIndex& index) const;
  /// All indices with min_weight <= weight <= max_weight, in code order.
  std::vector<MultiIndex> indices(int min_weight, int max_weight) const;
  /// Coefficients <F_j, M>_F for every j (code order), including the identity.
  ComplexVector expand(const ComplexMatrix& m) const;

 private:
  int num_sites_;
};

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix devectorize(const ComplexVector& v);

double max_abs(const ComplexMatrix& m);
/// ||M - M^dagger||_max <= rel_tol * max(||M||_max, tiny).
bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-10);

/// A*B, switching to a sparse product when both factors are mostly zero.
/// Superoperators of local spin models are extremely sparse.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // column i pairs with values[i]
};

/// Spectral decomposition of a Hermitian matrix. The input is symmetrized as
/// (M + M^dagger)/2 after checking ||M - M^dagger||_max <= rel_tol * ||M||_max.
HermitianEigen herm_eigs(const ComplexMatrix& m, double rel_tol = 1e-10);
RealVector herm_eigvals(const ComplexMatrix& m, double rel_tol = 1e-10);

/// Matrix exponential by scaling and squaring with a degree-13 Pade kernel.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

struct LogOptions {
  double branch_cut_angle = 1e-6;
  double max_condition = 1e10;
};

/// Principal logarithm through an eigendecomposition. Throws
/// kBranchAmbiguity when an eigenvalue sits on (or within branch_cut_angle of)
/// the closed negative real axis and kConditioning when the eigenvector
/// matrix is too ill-conditioned.
ComplexMatrix matrix_log_principal(const ComplexMatrix& m, const LogOptions& options = {});

}  // namespace floqlind

#endif  // FLOQLIND_SUPEROP_CORE_HPP
