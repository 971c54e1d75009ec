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

#include "floqlind/liouvillianity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace floqlind {

namespace {

constexpr const char* kModule = "liouvillianity";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

int sites_of(const Superoperator& s) {
  const auto d = static_cast<unsigned>(s.system_dim());
  if (!std::has_single_bit(d) || d < 2) {
    fail(ErrorCode::kDimensionMismatch, "system dimension must be 2^L");
  }
  return std::countr_zero(d);
}

void require_candidate(const Superoperator& s) {
  const double tp = trace_preservation_residual(s);
  const double hp = hermiticity_preservation_residual(s);
  if (tp > kCandidateTolerance || hp > kCandidateTolerance) {
    fail(ErrorCode::kNotCandidate,
         "superoperator is not trace- and hermiticity-preserving (residuals " +
             std::to_string(tp) + ", " + std::to_string(hp) + ")");
  }
}

// Single-site block of the Pauli transform: P[(r c), j] = sigma^j(r, c) / sqrt(2).
Eigen::Matrix4cd site_transform() {
  Eigen::Matrix4cd p;
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < 4; ++j) {
    const ComplexMatrix sigma = pauli_matrix(j);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) p(2 * r + c, j) = sigma(r, c) * s;
    }
  }
  return p;
}

// Applies (op (x) op (x) ... (x) op) to the rows of x, whose row index is a
// base-4 number with site 0 most significant.
void apply_sitewise_rows(ComplexMatrix& x, const Eigen::Matrix4cd& op, int num_sites) {
  const Eigen::Index n = x.rows();
  for (int site = 0; site < num_sites; ++site) {
    const Eigen::Index stride = Eigen::Index{1} << (2 * (num_sites - 1 - site));
    for (Eigen::Index col = 0; col < x.cols(); ++col) {
      Complex* column = x.col(col).data();
      for (Eigen::Index base = 0; base < n; base += 4 * stride) {
        for (Eigen::Index off = 0; off < stride; ++off) {
          Complex* p = column + base + off;
          const Eigen::Vector4cd v(p[0], p[stride], p[2 * stride], p[3 * stride]);
          const Eigen::Vector4cd w = op * v;
          for (int q = 0; q < 4; ++q) p[q * stride] = w(q);
        }
      }
    }
  }
}

// Full extraction: a = P^dagger R P with R the reshuffled superoperator in
// site-interleaved (r_l, c_l) ordering and P the tensor power of the site
// transform.
ComplexMatrix full_coefficients(const Superoperator& s, int num_sites) {
  const Eigen::Index d = s.system_dim();
  const Eigen::Index n = d * d;
  std::vector<Eigen::Index> interleave(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      Eigen::Index code = 0;
      for (int site = 0; site < num_sites; ++site) {
        const int bit = num_sites - 1 - site;
        code = code * 4 + 2 * ((r >> bit) & 1) + ((c >> bit) & 1);
      }
      interleave[static_cast<std::size_t>(r * d + c)] = code;
    }
  }
  const auto& m = s.matrix();
  ComplexMatrix rr(n, n);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const Eigen::Index row = interleave[static_cast<std::size_t>(r * d + c)];
      for (Eigen::Index rp = 0; rp < d; ++rp) {
        for (Eigen::Index cp = 0; cp < d; ++cp) {
          rr(row, interleave[static_cast<std::size_t>(rp * d + cp)]) = m(r * d + rp, c * d + cp);
        }
      }
    }
  }
  const Eigen::Matrix4cd p_adj = site_transform().adjoint();
  apply_sitewise_rows(rr, p_adj, num_sites);  // P^dagger R
  rr.adjointInPlace();                         // R^dagger P
  apply_sitewise_rows(rr, p_adj, num_sites);  // P^dagger R^dagger P
  rr.adjointInPlace();                         // P^dagger R P
  return rr;
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Tr[F_j X] through the monomial structure of F_j.
Complex trace_with(const PauliMonomial& f, const ComplexMatrix& x) {
  Complex acc = 0.0;
  for (std::uint64_t r = 0; r < f.values.size(); ++r) {
    acc += f.values[r] * x(static_cast<Eigen::Index>(r ^ f.flip_mask), static_cast<Eigen::Index>(r));
  }
  return acc;
}

}  // namespace

DissipatorMatrix extract_dissipator(const Superoperator& s, std::optional<int> weight_limit) {
  const int num_sites = sites_of(s);
  require_candidate(s);
  FrobeniusBasis basis(num_sites);

  if (!weight_limit || *weight_limit >= 2 * num_sites) {
    const ComplexMatrix a = full_coefficients(s, num_sites);
    const Eigen::Index n = a.rows() - 1;
    return DissipatorMatrix(num_sites, basis.indices(1, num_sites),
                            hermitize(a.bottomRightCorner(n, n)));
  }
  if (*weight_limit < 2) {
    fail(ErrorCode::kInvalidArgument, "weight limit must be at least 2");
  }

  const int limit = *weight_limit;
  auto idx = basis.indices(1, std::min(num_sites, limit - 1));
  std::vector<PauliMonomial> monos;
  monos.reserve(idx.size());
  for (const auto& j : idx) monos.push_back(pauli_monomial(j));

  const auto n = static_cast<Eigen::Index>(idx.size());
  const auto d = static_cast<std::uint64_t>(s.system_dim());
  const auto& m = s.matrix();
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& fj = monos[static_cast<std::size_t>(j)];
    for (Eigen::Index k = j; k < n; ++k) {
      if (idx[static_cast<std::size_t>(j)].weight() + idx[static_cast<std::size_t>(k)].weight() >
          limit) {
        continue;
      }
      const auto& fk = monos[static_cast<std::size_t>(k)];
      Complex acc = 0.0;
      for (std::uint64_t r = 0; r < d; ++r) {
        const Complex left = std::conj(fj.values[r]);
        const auto row = static_cast<Eigen::Index>(r * d);
        const auto col = static_cast<Eigen::Index>((r ^ fj.flip_mask) * d);
        for (std::uint64_t rp = 0; rp < d; ++rp) {
          acc += left * fk.values[rp] *
                 m(row + static_cast<Eigen::Index>(rp),
                   col + static_cast<Eigen::Index>(rp ^ fk.flip_mask));
        }
      }
      a(j, k) = acc;
      if (k != j) a(k, j) = std::conj(acc);
    }
    a(j, j) = a(j, j).real();
  }
  return DissipatorMatrix(num_sites, std::move(idx), std::move(a));
}

double HamiltonianCoefficients::at(const MultiIndex& j) const {
  auto it = h.find(j);
  return it == h.end() ? 0.0 : it->second;
}

ComplexMatrix HamiltonianCoefficients::matrix() const {
  const Eigen::Index d = Eigen::Index{1} << num_sites;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& [j, v] : h) {
    if (v == 0.0) continue;
    const PauliMonomial f = pauli_monomial(j);
    for (std::uint64_t r = 0; r < f.values.size(); ++r) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ f.flip_mask)) +=
          v * f.values[r];
    }
  }
  return out;
}

HamiltonianCoefficients extract_hamiltonian(const Superoperator& s, const DissipatorMatrix& a) {
  const int num_sites = sites_of(s);
  if (a.num_sites() != num_sites) {
    fail(ErrorCode::kDimensionMismatch, "dissipator and superoperator disagree on the site count");
  }
  const Eigen::Index d = s.system_dim();
  const auto& m = s.matrix();

  // Partial trace over the second tensor factor: Q[r, c] = sum_r' S[(r r'), (c r')].
  ComplexMatrix q = ComplexMatrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      Complex acc = 0.0;
      for (Eigen::Index rp = 0; rp < d; ++rp) acc += m(r * d + rp, c * d + rp);
      q(r, c) = acc;
    }
  }

  // G = sum_jk a_jk F_k^dagger F_j.
  std::vector<PauliMonomial> monos;
  monos.reserve(a.size());
  for (const auto& idx : a.index_set()) monos.push_back(pauli_monomial(idx));
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  const auto n = static_cast<Eigen::Index>(a.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& fj = monos[static_cast<std::size_t>(j)];
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex ajk = a.entries()(j, k);
      if (ajk == Complex(0.0, 0.0)) continue;
      const auto& fk = monos[static_cast<std::size_t>(k)];
      for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(d); ++r) {
        const std::uint64_t t = r ^ fk.flip_mask;
        g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t ^ fj.flip_mask)) +=
            ajk * std::conj(fk.values[t]) * fj.values[t];
      }
    }
  }

  const double scale = std::max(1.0, max_abs(m));
  const Complex i_unit(0.0, 1.0);
  HamiltonianCoefficients out;
  out.num_sites = num_sites;
  FrobeniusBasis basis(num_sites);
  for (const auto& j : basis.indices(1, num_sites)) {
    const PauliMonomial f = pauli_monomial(j);
    const Complex hj = (i_unit / static_cast<double>(d)) * trace_with(f, q) +
                       (0.5 * i_unit) * trace_with(f, g);
    if (std::abs(hj.imag()) > 1e-8 * scale) {
      throw Error(ErrorCode::kDecompositionInconsistency, kModule,
                  "Hamiltonian coefficient of " + j.to_string() + " has imaginary part " +
                      std::to_string(hj.imag()));
    }
    out.h.emplace(j, hj.real());
  }
  return out;
}

double default_tol_psd(const DissipatorMatrix& a) {
  return 1e-9 * std::max(1.0, max_abs(a.entries()));
}

LiouvillianityReport psd_report(const DissipatorMatrix& a, std::optional<double> tol_psd) {
  LiouvillianityReport rep;
  rep.tol_psd = tol_psd.value_or(default_tol_psd(a));
  if (a.size() == 0) {
    rep.witness = ComplexVector();
    rep.spectrum = RealVector();
    return rep;
  }
  const HermitianEigen eig = herm_eigs(a.entries());
  rep.spectrum = eig.values;
  rep.min_eigenvalue = eig.values(0);
  rep.witness = eig.vectors.col(0);
  rep.is_liouvillian = rep.min_eigenvalue >= -rep.tol_psd;
  rep.breaking_degree = rep.is_liouvillian ? 0.0 : -rep.min_eigenvalue;
  return rep;
}

Superoperator SignedLindbladForm::to_superop() const {
  const Eigen::Index d = hamiltonian.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix m = Complex(0.0, -1.0) * (kron(hamiltonian, id) - kron(id, hamiltonian.transpose()));
  for (const auto& ch : channels) {
    const ComplexMatrix ldl = ch.op.adjoint() * ch.op;
    m += static_cast<double>(ch.sign) *
         (kron(ch.op, ch.op.conjugate()) - 0.5 * (kron(ldl, id) + kron(id, ldl.transpose())));
  }
  return Superoperator(std::move(m), static_cast<int>(d));
}

std::size_t SignedLindbladForm::negative_count() const {
  return static_cast<std::size_t>(
      std::count_if(channels.begin(), channels.end(), [](const SignedChannel& c) { return c.sign < 0; }));
}

SignedLindbladForm canonical_decomposition(const DissipatorMatrix& a, const FrobeniusBasis& basis,
                                           const ComplexMatrix& hamiltonian) {
  if (a.num_sites() != basis.num_sites()) {
    fail(ErrorCode::kDimensionMismatch, "dissipator and basis disagree on the site count");
  }
  if (hamiltonian.rows() != basis.dim() || hamiltonian.cols() != basis.dim()) {
    fail(ErrorCode::kDimensionMismatch, "Hamiltonian dimension differs from the basis");
  }
  SignedLindbladForm form;
  form.hamiltonian = hamiltonian;
  if (a.size() == 0) return form;

  const HermitianEigen eig = herm_eigs(a.entries());
  std::vector<PauliMonomial> monos;
  monos.reserve(a.size());
  for (const auto& idx : a.index_set()) monos.push_back(pauli_monomial(idx));

  const Eigen::Index d = basis.dim();
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double x = eig.values(i);
    if (std::abs(x) <= kChannelDropThreshold) continue;
    SignedChannel ch;
    ch.sign = x > 0.0 ? 1 : -1;
    ch.weight = std::abs(x);
    ch.op = ComplexMatrix::Zero(d, d);
    const double amp = std::sqrt(std::abs(x));
    for (Eigen::Index j = 0; j < eig.vectors.rows(); ++j) {
      const Complex coef = amp * eig.vectors(j, i);
      if (coef == Complex(0.0, 0.0)) continue;
      const auto& f = monos[static_cast<std::size_t>(j)];
      for (std::uint64_t r = 0; r < f.values.size(); ++r) {
        ch.op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ f.flip_mask)) +=
            coef * f.values[r];
      }
    }
    form.channels.push_back(std::move(ch));
  }
  return form;
}

SignedLindbladForm canonical_decomposition(const DissipatorMatrix& a, const FrobeniusBasis& basis) {
  return canonical_decomposition(a, basis, ComplexMatrix::Zero(basis.dim(), basis.dim()));
}

std::vector<OrderCheck> per_order_checks(const FMExpansion& terms, std::optional<int> locality) {
  std::vector<OrderCheck> out;
  double scale = 1.0;
  for (std::size_t i = 0; i < terms.order_terms.size(); ++i) {
    const int order = static_cast<int>(i);
    std::optional<int> limit;
    if (locality) limit = (order + 1) * *locality - order;
    const DissipatorMatrix a = extract_dissipator(terms.order_terms[i], limit);
    if (i == 0) scale = std::max(1.0, max_abs(a.entries()));

    OrderCheck c;
    c.order = order;
    c.trace = a.entries().trace().real();
    c.is_zero = max_abs(a.entries()) <= 1e-10 * scale;
    if (!c.is_zero) {
      c.min_eigenvalue = herm_eigvals(a.entries())(0);
    }
    c.psd = c.min_eigenvalue >= -1e-9 * scale;
    c.has_negative = !c.psd;
    c.trace_vanishes = order == 0 || std::abs(c.trace) <= 1e-9 * scale;
    out.push_back(c);
  }
  return out;
}

double roundtrip_residual(const Superoperator& s) {
  const double norm = s.matrix().norm();
  if (norm == 0.0) return 0.0;
  const DissipatorMatrix a = extract_dissipator(s);
  const HamiltonianCoefficients h = extract_hamiltonian(s, a);
  const Superoperator rebuilt =
      lindblad_form_superop(h.matrix(), a, FrobeniusBasis(a.num_sites()));
  return (s.matrix() - rebuilt.matrix()).norm() / norm;
}

}  // namespace floqlind
