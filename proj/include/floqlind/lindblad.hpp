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

#ifndef FLOQLIND_LINDBLAD_HPP
#define FLOQLIND_LINDBLAD_HPP

#include <span>
#include <vector>

#include "floqlind/dissipator.hpp"
#include "floqlind/superop_core.hpp"

namespace floqlind {

/// Dense d^2 x d^2 generator acting on row-major vectorized d x d operators.
class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(ComplexMatrix matrix, int system_dim);

  static Superoperator zero(int system_dim);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  int system_dim() const noexcept { return system_dim_; }

  Superoperator& operator+=(const Superoperator& other);
  Superoperator& operator-=(const Superoperator& other);
  Superoperator& operator*=(Complex s);
  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
  friend Superoperator operator*(Complex s, Superoperator a) { return a *= s; }
  friend Superoperator operator*(double s, Superoperator a) { return a *= Complex(s, 0.0); }

 private:
  ComplexMatrix matrix_;
  int system_dim_ = 0;
};

Superoperator commutator(const Superoperator& a, const Superoperator& b);

/// ||vec(I)^dagger S||_max / max(1, ||S||_max). Zero for trace-preserving S.
double trace_preservation_residual(const Superoperator& s);
/// max |S[(ij),(kl)] - conj(S[(ji),(lk)])| / max(1, ||S||_max). Zero exactly
/// when S[rho]^dagger = S[rho^dagger] for every rho.
double hermiticity_preservation_residual(const Superoperator& s);

struct HamiltonianTerm {
  ComplexMatrix op;          // full-space Hermitian operator, coefficient included
  std::vector<int> support;  // sites acted on; empty when undeclared
};

struct Jump {
  double rate = 0.0;
  ComplexMatrix op;          // full-space jump operator
  std::vector<int> support;  // sites acted on; empty when undeclared
};

/// One constant piece [t_start, t_start + duration) of a periodic drive.
class LindbladSegment {
 public:
  LindbladSegment(double duration, ComplexMatrix hamiltonian, std::vector<Jump> jumps = {});
  LindbladSegment(double duration, int dim, std::vector<HamiltonianTerm> terms,
                  std::vector<Jump> jumps);

  double duration() const noexcept { return duration_; }
  int dim() const noexcept { return dim_; }
  const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<HamiltonianTerm>& hamiltonian_terms() const noexcept { return terms_; }
  const std::vector<Jump>& jumps() const noexcept { return jumps_; }
  /// True when every Hamiltonian term and jump carries a support.
  bool supports_declared() const;

  LindbladSegment with_duration(double duration) const;

 private:
  void validate() const;

  double duration_;
  int dim_;
  std::vector<HamiltonianTerm> terms_;
  std::vector<Jump> jumps_;
  ComplexMatrix hamiltonian_;
};

/// Time-periodic Liouvillian made of constant segments covering one period.
class PiecewiseLiouvillian {
 public:
  PiecewiseLiouvillian(int num_sites, std::vector<LindbladSegment> segments);

  int num_sites() const noexcept { return num_sites_; }
  int dim() const noexcept { return 1 << num_sites_; }
  double period() const noexcept { return period_; }
  const std::vector<LindbladSegment>& segments() const noexcept { return segments_; }
  /// Generator of segment i (cached at construction).
  const Superoperator& generator(std::size_t i) const { return generators_.at(i); }
  std::size_t num_segments() const noexcept { return segments_.size(); }
  /// Start time of segment i within the period.
  double segment_start(std::size_t i) const;

  /// Same drive with every duration multiplied by `factor`.
  PiecewiseLiouvillian rescaled_time(double factor) const;

 private:
  int num_sites_;
  std::vector<LindbladSegment> segments_;
  std::vector<Superoperator> generators_;
  double period_ = 0.0;
};

/// -i(H (x) I - I (x) H^T) + sum rate [L (x) L* - (L^dag L (x) I + I (x) L^T L*)/2].
Superoperator liouvillian_superop(const ComplexMatrix& hamiltonian, std::span<const Jump> jumps);
Superoperator segment_superop(const LindbladSegment& segment);

/// GKLS form over the Pauli basis with an arbitrary Hermitian coefficient
/// matrix (positivity is not required).
Superoperator lindblad_form_superop(const ComplexMatrix& hamiltonian, const DissipatorMatrix& a,
                                    const FrobeniusBasis& basis);

ComplexMatrix apply_superop(const Superoperator& s, const ComplexMatrix& rho);

}  // namespace floqlind

#endif  // FLOQLIND_LINDBLAD_HPP
