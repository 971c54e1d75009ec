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

#include "floqlind/superop_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/Sparse>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace floqlind {

namespace {

constexpr const char* kModule = "superop_core";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::kDimensionMismatch, std::string(what) + " must be square");
  }
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidIndex: return "invalid-index";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kContractViolation: return "contract-violation";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kBranchAmbiguity: return "branch-ambiguity";
    case ErrorCode::kConditioning: return "conditioning";
    case ErrorCode::kUnsupportedOrder: return "unsupported-order";
    case ErrorCode::kNotCandidate: return "not-a-candidate-lindbladian";
    case ErrorCode::kDecompositionInconsistency: return "decomposition-inconsistency";
    case ErrorCode::kStructureViolation: return "structure-violation";
    case ErrorCode::kNoReference: return "no-reference";
    case ErrorCode::kCannotCompute: return "cannot-compute";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> sites) {
  sites_.reserve(sites.size());
  for (int s : sites) {
    if (s < 0 || s > 3) {
      fail(ErrorCode::kInvalidIndex, "Pauli label " + std::to_string(s) + " outside {0,1,2,3}");
    }
    sites_.push_back(static_cast<std::uint8_t>(s));
    if (s != 0) ++weight_;
  }
}

MultiIndex MultiIndex::from_code(std::uint64_t code, int num_sites) {
  std::vector<int> sites(static_cast<std::size_t>(num_sites));
  for (int l = num_sites - 1; l >= 0; --l) {
    sites[static_cast<std::size_t>(l)] = static_cast<int>(code & 3u);
    code >>= 2;
  }
  if (code != 0) fail(ErrorCode::kInvalidIndex, "code does not fit the site count");
  return MultiIndex(std::move(sites));
}

MultiIndex MultiIndex::single(int num_sites, int site, int label) {
  std::vector<int> sites(static_cast<std::size_t>(num_sites), 0);
  if (site < 0 || site >= num_sites) fail(ErrorCode::kInvalidIndex, "site out of range");
  sites[static_cast<std::size_t>(site)] = label;
  return MultiIndex(std::move(sites));
}

std::uint64_t MultiIndex::code() const noexcept {
  std::uint64_t c = 0;
  for (auto s : sites_) c = (c << 2) | s;
  return c;
}

std::vector<int> MultiIndex::support() const {
  std::vector<int> out;
  for (int l = 0; l < num_sites(); ++l) {
    if (sites_[static_cast<std::size_t>(l)] != 0) out.push_back(l);
  }
  return out;
}

std::string MultiIndex::to_string() const {
  static constexpr std::array<char, 4> kLetters{'I', 'X', 'Y', 'Z'};
  std::string out;
  for (auto s : sites_) out.push_back(kLetters[s]);
  return out;
}

MultiIndex MultiIndex::translated(int offset) const {
  const int n = num_sites();
  std::vector<int> sites(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    const int target = ((l + offset) % n + n) % n;
    sites[static_cast<std::size_t>(target)] = sites_[static_cast<std::size_t>(l)];
  }
  return MultiIndex(std::move(sites));
}

MultiIndex parse_pauli_label(const std::string& letters) {
  std::vector<int> sites;
  for (char c : letters) {
    switch (c) {
      case 'I': case 'i': case '0': sites.push_back(0); break;
      case 'X': case 'x': case '1': sites.push_back(1); break;
      case 'Y': case 'y': case '2': sites.push_back(2); break;
      case 'Z': case 'z': case '3': sites.push_back(3); break;
      default:
        fail(ErrorCode::kInvalidIndex, std::string("unknown Pauli letter '") + c + "'");
    }
  }
  return MultiIndex(std::move(sites));
}

// ---------------------------------------------------------------------------
// Pauli strings

PauliMonomial pauli_monomial(const MultiIndex& index) {
  const int n = index.num_sites();
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  PauliMonomial out;
  for (int l = 0; l < n; ++l) {
    const int label = index[l];
    if (label == 1 || label == 2) out.flip_mask |= std::uint64_t{1} << (n - 1 - l);
  }
  out.values.assign(dim, Complex(norm, 0.0));
  for (std::uint64_t r = 0; r < dim; ++r) {
    Complex v(norm, 0.0);
    for (int l = 0; l < n; ++l) {
      const bool bit = (r >> (n - 1 - l)) & 1u;
      switch (index[l]) {
        case 2: v *= bit ? Complex(0, 1) : Complex(0, -1); break;
        case 3: if (bit) v = -v; break;
        default: break;
      }
    }
    out.values[r] = v;
  }
  return out;
}

ComplexMatrix pauli_string(const MultiIndex& index, int num_sites) {
  if (index.num_sites() != num_sites) {
    fail(ErrorCode::kDimensionMismatch, "multi-index length differs from the site count");
  }
  const auto mono = pauli_monomial(index);
  const Eigen::Index dim = Eigen::Index{1} << num_sites;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    m(r, static_cast<Eigen::Index>(static_cast<std::uint64_t>(r) ^ mono.flip_mask)) =
        mono.values[static_cast<std::size_t>(r)];
  }
  return m;
}

ComplexMatrix pauli_matrix(int label) {
  ComplexMatrix m(2, 2);
  switch (label) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: fail(ErrorCode::kInvalidIndex, "Pauli label outside {0,1,2,3}");
  }
  return m;
}

ComplexMatrix embed_site_operator(const ComplexMatrix& local, int site, int num_sites) {
  if (local.rows() != kLocalDim || local.cols() != kLocalDim) {
    fail(ErrorCode::kDimensionMismatch, "site operator must be 2x2");
  }
  if (site < 0 || site >= num_sites) fail(ErrorCode::kInvalidIndex, "site out of range");
  const Eigen::Index left = Eigen::Index{1} << site;
  const Eigen::Index right = Eigen::Index{1} << (num_sites - 1 - site);
  return kron(kron(ComplexMatrix::Identity(left, left), local),
              ComplexMatrix::Identity(right, right));
}

// ---------------------------------------------------------------------------
// FrobeniusBasis

FrobeniusBasis::FrobeniusBasis(int num_sites) : num_sites_(num_sites) {
  if (num_sites < 1 || num_sites > 8) {
    fail(ErrorCode::kInvalidArgument, "site count must lie in [1, 8]");
  }
}

double FrobeniusBasis::normalization() const {
  return 1.0 / std::sqrt(static_cast<double>(dim()));
}

ComplexMatrix FrobeniusBasis::element(const MultiIndex& index) const {
  return pauli_string(index, num_sites_);
}

std::vector<MultiIndex> FrobeniusBasis::indices(int min_weight, int max_weight) const {
  std::vector<MultiIndex> out;
  for (std::uint64_t c = 0; c < size(); ++c) {
    auto idx = MultiIndex::from_code(c, num_sites_);
    if (idx.weight() >= min_weight && idx.weight() <= max_weight) out.push_back(std::move(idx));
  }
  return out;
}

ComplexVector FrobeniusBasis::expand(const ComplexMatrix& m) const {
  if (m.rows() != dim() || m.cols() != dim()) {
    fail(ErrorCode::kDimensionMismatch, "operator dimension differs from the basis");
  }
  ComplexVector coeffs(static_cast<Eigen::Index>(size()));
  for (std::uint64_t c = 0; c < size(); ++c) {
    const auto mono = pauli_monomial(MultiIndex::from_code(c, num_sites_));
    Complex acc = 0.0;
    for (int r = 0; r < dim(); ++r) {
      const auto col = static_cast<Eigen::Index>(static_cast<std::uint64_t>(r) ^ mono.flip_mask);
      acc += std::conj(mono.values[static_cast<std::size_t>(r)]) * m(r, col);
    }
    coeffs(static_cast<Eigen::Index>(c)) = acc;
  }
  return coeffs;
}

// ---------------------------------------------------------------------------
// Elementary operations

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::kDimensionMismatch, "Frobenius inner product of differently shaped matrices");
  }
  require_square(a, "Frobenius operand");
  return (a.conjugate().cwiseProduct(b)).sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector vectorize(const ComplexMatrix& rho) {
  require_square(rho, "vectorized operator");
  const Eigen::Index d = rho.rows();
  ComplexVector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  }
  return v;
}

ComplexMatrix devectorize(const ComplexVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size() || d == 0) {
    fail(ErrorCode::kDimensionMismatch, "vector length is not a nonzero perfect square");
  }
  ComplexMatrix rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  }
  return rho;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return true;
  return max_abs(m - m.adjoint()) <= rel_tol * scale;
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

double density(const ComplexMatrix& m) {
  const auto nnz = (m.array() != Complex(0.0, 0.0)).count();
  return static_cast<double>(nnz) / static_cast<double>(std::max<Eigen::Index>(1, m.size()));
}

SparseMatrix to_sparse(const ComplexMatrix& m) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex(0.0, 0.0)) triplets.emplace_back(i, j, m(i, j));
    }
  }
  SparseMatrix s(m.rows(), m.cols());
  s.setFromTriplets(triplets.begin(), triplets.end());
  return s;
}

}  // namespace

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::kDimensionMismatch, "product of incompatible matrices");
  constexpr Eigen::Index kSparseMinDim = 128;
  constexpr double kSparseMaxDensity = 0.05;
  if (a.rows() >= kSparseMinDim && density(a) < kSparseMaxDensity &&
      density(b) < kSparseMaxDensity) {
    const SparseMatrix sa = to_sparse(a);
    const SparseMatrix sb = to_sparse(b);
    const SparseMatrix prod = sa * sb;
    return ComplexMatrix(prod);
  }
  return a * b;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply(a, b) - multiply(b, a);
}

// ---------------------------------------------------------------------------
// Hermitian spectra

HermitianEigen herm_eigs(const ComplexMatrix& m, double rel_tol) {
  require_square(m, "Hermitian eigenproblem input");
  if (!is_hermitian(m, rel_tol)) {
    fail(ErrorCode::kContractViolation, "matrix is not Hermitian within tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kContractViolation, "Hermitian eigensolver did not converge");
  }
  const auto n = sym.rows();
  const RealVector& vals = solver.eigenvalues();
  const ComplexMatrix& vecs = solver.eigenvectors();

  auto first_nonzero_imag = [&](Eigen::Index col) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(vecs(r, col)) > 1e-12) return vecs(r, col).imag();
    }
    return 0.0;
  };
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (vals(a) != vals(b)) return vals(a) < vals(b);
    return first_nonzero_imag(a) < first_nonzero_imag(b);
  });

  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = vals(order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = vecs.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

RealVector herm_eigvals(const ComplexMatrix& m, double rel_tol) {
  require_square(m, "Hermitian eigenproblem input");
  if (!is_hermitian(m, rel_tol)) {
    fail(ErrorCode::kContractViolation, "matrix is not Hermitian within tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kContractViolation, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

// ---------------------------------------------------------------------------
// exp / log

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  require_square(m, "exponent");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  static constexpr std::array<double, 14> b{
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  constexpr double kTheta13 = 5.371920351148152;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const ComplexMatrix a = m / std::ldexp(1.0, squarings);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = multiply(a, a);
  const ComplexMatrix a4 = multiply(a2, a2);
  const ComplexMatrix a6 = multiply(a4, a2);

  const ComplexMatrix u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const ComplexMatrix u_sum =
      multiply(a6, u_inner) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const ComplexMatrix u = multiply(a, u_sum);
  const ComplexMatrix v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const ComplexMatrix v = multiply(a6, v_inner) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

ComplexMatrix matrix_log_principal(const ComplexMatrix& m, const LogOptions& options) {
  require_square(m, "logarithm argument");
  const Eigen::Index n = m.rows();
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kConditioning, "eigendecomposition did not converge");
  }
  const ComplexVector& lambda = solver.eigenvalues();
  const ComplexMatrix& vecs = solver.eigenvectors();

  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex l = lambda(i);
    if (std::abs(l) <= 1e-14 * scale) {
      fail(ErrorCode::kBranchAmbiguity, "zero eigenvalue has no logarithm");
    }
    const double distance_to_cut = std::numbers::pi - std::abs(std::arg(l));
    if (distance_to_cut <= options.branch_cut_angle) {
      fail(ErrorCode::kBranchAmbiguity, "eigenvalue on or near the negative real axis");
    }
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(vecs);
  const RealVector& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                              : std::numeric_limits<double>::infinity();
  if (!(cond <= options.max_condition)) {
    fail(ErrorCode::kConditioning, "eigenvector matrix condition number exceeds threshold");
  }

  ComplexVector log_lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) log_lambda(i) = std::log(lambda(i));
  const ComplexMatrix scaled = vecs * log_lambda.asDiagonal();
  // log(M) = V diag(log lambda) V^{-1}, computed as a solve against V^T.
  return vecs.transpose().partialPivLu().solve(scaled.transpose()).transpose();
}

}  // namespace floqlind
