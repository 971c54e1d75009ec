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

// Canonical (H, [a_jk]) decomposition of hermiticity- and trace-preserving
// generators, and the positive-semidefiniteness test deciding whether such a
// generator is a genuine Lindbladian.

#ifndef FLOQLIND_LIOUVILLIANITY_HPP
#define FLOQLIND_LIOUVILLIANITY_HPP

#include <map>
#include <optional>
#include <vector>

#include "floqlind/dissipator.hpp"
#include "floqlind/lindblad.hpp"
#include "floqlind/magnus.hpp"

namespace floqlind {

/// Tolerance on the trace/hermiticity-preservation residuals accepted by
/// extraction.
inline constexpr double kCandidateTolerance = 1e-8;

/// a_jk = <F_j (x) F_k^*, S>_F over traceless indices. Without a weight limit
/// every traceless index is kept; with one, only indices of weight below the
/// limit are kept and entries with weight(j) + weight(k) above it are left 0.
DissipatorMatrix extract_dissipator(const Superoperator& s,
                                    std::optional<int> weight_limit = std::nullopt);

struct HamiltonianCoefficients {
  int num_sites = 0;
  std::map<MultiIndex, double> h;  // coefficient of F_j in H, every traceless j

  double at(const MultiIndex& j) const;
  ComplexMatrix matrix() const;
};

HamiltonianCoefficients extract_hamiltonian(const Superoperator& s, const DissipatorMatrix& a);

struct LiouvillianityReport {
  double min_eigenvalue = 0.0;
  bool is_liouvillian = true;
  double breaking_degree = 0.0;
  ComplexVector witness;  // eigenvector of min_eigenvalue over a.index_set()
  double tol_psd = 0.0;
  RealVector spectrum;  // ascending
};

/// 1e-9 * max(1, ||a||_max).
double default_tol_psd(const DissipatorMatrix& a);

LiouvillianityReport psd_report(const DissipatorMatrix& a,
                                std::optional<double> tol_psd = std::nullopt);

struct SignedChannel {
  int sign = 1;          // sgn of the eigenvalue of [a]
  double weight = 0.0;   // |eigenvalue|
  ComplexMatrix op;      // sqrt(|x|) sum_j V_ji F_j
};

struct SignedLindbladForm {
  ComplexMatrix hamiltonian;
  std::vector<SignedChannel> channels;

  Superoperator to_superop() const;
  std::size_t negative_count() const;
};

inline constexpr double kChannelDropThreshold = 1e-12;

/// Spectral decomposition of [a] into signed channels; eigenvalues with
/// |x| <= kChannelDropThreshold are dropped.
SignedLindbladForm canonical_decomposition(const DissipatorMatrix& a, const FrobeniusBasis& basis,
                                           const ComplexMatrix& hamiltonian);
SignedLindbladForm canonical_decomposition(const DissipatorMatrix& a, const FrobeniusBasis& basis);

struct OrderCheck {
  int order = 0;
  double trace = 0.0;         // Tr [a^(i)]
  bool trace_vanishes = true; // |Tr| <= 1e-9 (orders >= 1)
  bool is_zero = true;        // [a^(i)] = 0, so the order alone is a Lindbladian
  bool has_negative = false;
  double min_eigenvalue = 0.0;
  bool psd = true;
};

/// Structural checks on each order term of an expansion: order 0 must be PSD,
/// higher orders traceless and either zero or indefinite. With a drive
/// locality k, order i is extracted with weight limit (i+1)k - i.
std::vector<OrderCheck> per_order_checks(const FMExpansion& terms,
                                         std::optional<int> locality = std::nullopt);

/// ||S - rebuild(extract(S))||_F / ||S||_F (0 for S = 0).
double roundtrip_residual(const Superoperator& s);

}  // namespace floqlind

#endif  // FLOQLIND_LIOUVILLIANITY_HPP
