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

#include "floqlind/lindblad.hpp"

#include <algorithm>
#include <cmath>

namespace floqlind {

namespace {

constexpr const char* kModule = "lindblad";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

}  // namespace

// ---------------------------------------------------------------------------
// DissipatorMatrix

DissipatorMatrix::DissipatorMatrix(int num_sites, std::vector<MultiIndex> index_set,
                                   ComplexMatrix entries)
    : num_sites_(num_sites), index_set_(std::move(index_set)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(index_set_.size());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "liouvillianity",
                "dissipator entries do not match the index set");
  }
  for (std::size_t i = 0; i < index_set_.size(); ++i) {
    const auto& idx = index_set_[i];
    if (idx.num_sites() != num_sites_ || idx.is_identity()) {
      throw Error(ErrorCode::kInvalidIndex, "liouvillianity",
                  "dissipator indices must be traceless strings on the declared sites");
    }
    if (!lookup_.emplace(idx.code(), i).second) {
      throw Error(ErrorCode::kInvalidIndex, "liouvillianity", "duplicate dissipator index");
    }
  }
}

DissipatorMatrix DissipatorMatrix::zero(int num_sites) {
  FrobeniusBasis basis(num_sites);
  auto idx = basis.indices(1, num_sites);
  const auto n = static_cast<Eigen::Index>(idx.size());
  return DissipatorMatrix(num_sites, std::move(idx), ComplexMatrix::Zero(n, n));
}

std::optional<std::size_t> DissipatorMatrix::position(const MultiIndex& index) const {
  auto it = lookup_.find(index.code());
  if (it == lookup_.end() || index.num_sites() != num_sites_) return std::nullopt;
  return it->second;
}

Complex DissipatorMatrix::at(const MultiIndex& j, const MultiIndex& k) const {
  const auto pj = position(j);
  const auto pk = position(k);
  if (!pj || !pk) return {0.0, 0.0};
  return entries_(static_cast<Eigen::Index>(*pj), static_cast<Eigen::Index>(*pk));
}

ComplexMatrix DissipatorMatrix::submatrix(const std::vector<MultiIndex>& indices) const {
  std::vector<Eigen::Index> pos;
  for (const auto& idx : indices) {
    const auto p = position(idx);
    if (!p) {
      throw Error(ErrorCode::kInvalidIndex, "liouvillianity",
                  "index " + idx.to_string() + " not in dissipator index set");
    }
    pos.push_back(static_cast<Eigen::Index>(*p));
  }
  const auto n = static_cast<Eigen::Index>(pos.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) out(i, k) = entries_(pos[i], pos[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Superoperator

Superoperator::Superoperator(ComplexMatrix matrix, int system_dim)
    : matrix_(std::move(matrix)), system_dim_(system_dim) {
  const auto d2 = static_cast<Eigen::Index>(system_dim) * system_dim;
  if (system_dim < 1 || matrix_.rows() != d2 || matrix_.cols() != d2) {
    fail(ErrorCode::kDimensionMismatch, "superoperator must be d^2 x d^2");
  }
}

Superoperator Superoperator::zero(int system_dim) {
  const auto d2 = static_cast<Eigen::Index>(system_dim) * system_dim;
  return Superoperator(ComplexMatrix::Zero(d2, d2), system_dim);
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  if (other.system_dim_ != system_dim_) fail(ErrorCode::kDimensionMismatch, "superoperator sum");
  matrix_ += other.matrix_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& other) {
  if (other.system_dim_ != system_dim_) {
    fail(ErrorCode::kDimensionMismatch, "superoperator difference");
  }
  matrix_ -= other.matrix_;
  return *this;
}

Superoperator& Superoperator::operator*=(Complex s) {
  matrix_ *= s;
  return *this;
}

Superoperator commutator(const Superoperator& a, const Superoperator& b) {
  if (a.system_dim() != b.system_dim()) {
    fail(ErrorCode::kDimensionMismatch, "commutator of superoperators on different systems");
  }
  return Superoperator(commutator(a.matrix(), b.matrix()), a.system_dim());
}

double trace_preservation_residual(const Superoperator& s) {
  const int d = s.system_dim();
  const auto& m = s.matrix();
  double worst = 0.0;
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Complex acc = 0.0;
    for (int i = 0; i < d; ++i) acc += m(static_cast<Eigen::Index>(i) * d + i, col);
    worst = std::max(worst, std::abs(acc));
  }
  return worst / std::max(1.0, max_abs(m));
}

double hermiticity_preservation_residual(const Superoperator& s) {
  const Eigen::Index d = s.system_dim();
  const auto& m = s.matrix();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
          const Complex lhs = m(i * d + j, k * d + l);
          const Complex rhs = std::conj(m(j * d + i, l * d + k));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
  }
  return worst / std::max(1.0, max_abs(m));
}

// ---------------------------------------------------------------------------
// Segments and drives

LindbladSegment::LindbladSegment(double duration, ComplexMatrix hamiltonian,
                                 std::vector<Jump> jumps)
    : duration_(duration),
      dim_(static_cast<int>(hamiltonian.rows())),
      jumps_(std::move(jumps)),
      hamiltonian_(hamiltonian) {
  terms_.push_back(HamiltonianTerm{std::move(hamiltonian), {}});
  validate();
}

LindbladSegment::LindbladSegment(double duration, int dim, std::vector<HamiltonianTerm> terms,
                                 std::vector<Jump> jumps)
    : duration_(duration), dim_(dim), terms_(std::move(terms)), jumps_(std::move(jumps)) {
  hamiltonian_ = ComplexMatrix::Zero(dim, dim);
  for (const auto& t : terms_) {
    if (t.op.rows() != dim || t.op.cols() != dim) {
      fail(ErrorCode::kDimensionMismatch, "Hamiltonian term dimension differs from segment");
    }
    hamiltonian_ += t.op;
  }
  validate();
}

void LindbladSegment::validate() const {
  if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
    fail(ErrorCode::kInvalidArgument, "segment duration must be positive");
  }
  if (hamiltonian_.rows() != dim_ || hamiltonian_.cols() != dim_) {
    fail(ErrorCode::kDimensionMismatch, "Hamiltonian must be square");
  }
  if (!is_hermitian(hamiltonian_)) {
    fail(ErrorCode::kContractViolation, "segment Hamiltonian is not Hermitian");
  }
  for (const auto& j : jumps_) {
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) {
      fail(ErrorCode::kInvalidArgument, "jump rates must be nonnegative");
    }
    if (j.op.rows() != dim_ || j.op.cols() != dim_) {
      fail(ErrorCode::kDimensionMismatch, "jump operator dimension differs from segment");
    }
  }
}

bool LindbladSegment::supports_declared() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const HamiltonianTerm& t) { return !t.support.empty(); }) &&
         std::all_of(jumps_.begin(), jumps_.end(),
                     [](const Jump& j) { return !j.support.empty(); });
}

LindbladSegment LindbladSegment::with_duration(double duration) const {
  return LindbladSegment(duration, dim_, terms_, jumps_);
}

PiecewiseLiouvillian::PiecewiseLiouvillian(int num_sites, std::vector<LindbladSegment> segments)
    : num_sites_(num_sites), segments_(std::move(segments)) {
  if (num_sites < 1 || num_sites > 8) fail(ErrorCode::kInvalidArgument, "site count out of range");
  if (segments_.empty()) fail(ErrorCode::kInvalidArgument, "drive needs at least one segment");
  for (const auto& seg : segments_) {
    if (seg.dim() != dim()) {
      fail(ErrorCode::kDimensionMismatch, "segment dimension differs from 2^L");
    }
    period_ += seg.duration();
    generators_.push_back(segment_superop(seg));
  }
}

double PiecewiseLiouvillian::segment_start(std::size_t i) const {
  double t = 0.0;
  for (std::size_t s = 0; s < i && s < segments_.size(); ++s) t += segments_[s].duration();
  return t;
}

PiecewiseLiouvillian PiecewiseLiouvillian::rescaled_time(double factor) const {
  std::vector<LindbladSegment> segs;
  segs.reserve(segments_.size());
  for (const auto& s : segments_) segs.push_back(s.with_duration(s.duration() * factor));
  return PiecewiseLiouvillian(num_sites_, std::move(segs));
}

// ---------------------------------------------------------------------------
// Builders

Superoperator liouvillian_superop(const ComplexMatrix& hamiltonian, std::span<const Jump> jumps) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    fail(ErrorCode::kDimensionMismatch, "Hamiltonian must be square");
  }
  if (!is_hermitian(hamiltonian)) {
    fail(ErrorCode::kContractViolation, "Hamiltonian is not Hermitian");
  }
  const Eigen::Index d = hamiltonian.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const Complex minus_i(0.0, -1.0);
  ComplexMatrix m = minus_i * (kron(hamiltonian, id) - kron(id, hamiltonian.transpose()));
  for (const auto& j : jumps) {
    if (!(j.rate >= 0.0)) fail(ErrorCode::kInvalidArgument, "negative jump rate");
    if (j.op.rows() != d || j.op.cols() != d) {
      fail(ErrorCode::kDimensionMismatch, "jump operator dimension differs from Hamiltonian");
    }
    if (j.rate == 0.0) continue;
    const ComplexMatrix ldl = j.op.adjoint() * j.op;
    m += j.rate * (kron(j.op, j.op.conjugate()) -
                   0.5 * (kron(ldl, id) + kron(id, ldl.transpose())));
  }
  return Superoperator(std::move(m), static_cast<int>(d));
}

Superoperator segment_superop(const LindbladSegment& segment) {
  return liouvillian_superop(segment.hamiltonian(), segment.jumps());
}

Superoperator lindblad_form_superop(const ComplexMatrix& hamiltonian, const DissipatorMatrix& a,
                                    const FrobeniusBasis& basis) {
  if (a.num_sites() != basis.num_sites()) {
    fail(ErrorCode::kDimensionMismatch, "dissipator and basis disagree on the site count");
  }
  const Eigen::Index d = basis.dim();
  if (hamiltonian.rows() != d || hamiltonian.cols() != d) {
    fail(ErrorCode::kDimensionMismatch, "Hamiltonian dimension differs from the basis");
  }
  if (!is_hermitian(a.entries())) {
    fail(ErrorCode::kContractViolation, "dissipator matrix is not Hermitian");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix m = Complex(0.0, -1.0) * (kron(hamiltonian, id) - kron(id, hamiltonian.transpose()));

  std::vector<PauliMonomial> monos;
  monos.reserve(a.size());
  for (const auto& idx : a.index_set()) monos.push_back(pauli_monomial(idx));

  // sum_jk a_jk F_k^dag F_j, accumulated alongside the jump terms.
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  const auto n = static_cast<Eigen::Index>(a.size());
  const auto ud = static_cast<std::uint64_t>(d);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& fj = monos[static_cast<std::size_t>(j)];
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex ajk = a.entries()(j, k);
      if (ajk == Complex(0.0, 0.0)) continue;
      const auto& fk = monos[static_cast<std::size_t>(k)];
      for (std::uint64_t r = 0; r < ud; ++r) {
        const std::uint64_t c = r ^ fj.flip_mask;
        const Complex left = ajk * fj.values[r];
        for (std::uint64_t rp = 0; rp < ud; ++rp) {
          const std::uint64_t cp = rp ^ fk.flip_mask;
          m(static_cast<Eigen::Index>(r * ud + rp), static_cast<Eigen::Index>(c * ud + cp)) +=
              left * std::conj(fk.values[rp]);
        }
        // (F_k^dag F_j)[r, r ^ mk ^ mj] = conj(F_k[r ^ mk, r]) F_j[r ^ mk, r ^ mk ^ mj]
        const std::uint64_t s = r ^ fk.flip_mask;
        g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s ^ fj.flip_mask)) +=
            ajk * std::conj(fk.values[s]) * fj.values[s];
      }
    }
  }
  m -= 0.5 * (kron(g, id) + kron(id, g.transpose()));
  return Superoperator(std::move(m), static_cast<int>(d));
}

ComplexMatrix apply_superop(const Superoperator& s, const ComplexMatrix& rho) {
  if (rho.rows() != s.system_dim() || rho.cols() != s.system_dim()) {
    fail(ErrorCode::kDimensionMismatch, "state dimension differs from superoperator");
  }
  return devectorize(s.matrix() * vectorize(rho));
}

}  // namespace floqlind
