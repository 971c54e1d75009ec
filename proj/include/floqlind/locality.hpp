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

// Locality structure of dissipator matrices of k-local drives.

#ifndef FLOQLIND_LOCALITY_HPP
#define FLOQLIND_LOCALITY_HPP

#include <optional>
#include <vector>

#include "floqlind/dissipator.hpp"
#include "floqlind/lindblad.hpp"
#include "floqlind/magnus.hpp"

namespace floqlind {

struct LocalityProfile {
  int k = 2;            // max bodies of Hamiltonian terms (jumps: k/2)
  double J = 0.0;       // extensiveness bound
  double period = 0.0;  // T
  int num_sites = 1;
};

/// Largest n_j + n_k allowed at order n: (n+1)k - n.
int max_weight_bound(int order, int k);

/// ceil(((n+1)k - n) / 2): default weight split of the triangular form.
int default_split_threshold(int order, int k);

/// C(L, m) 4^m with m = min((n+1)k - n, L): bound on the nontrivial size d_n.
double nontrivial_size_bound(int num_sites, int order, int k);

struct SparsityViolation {
  MultiIndex j;
  MultiIndex k;
  double magnitude = 0.0;
};

std::vector<SparsityViolation> sparsity_check(const DissipatorMatrix& a, int order,
                                              const LocalityProfile& profile, double tol);

struct Block {
  std::vector<MultiIndex> indices;  // in index_set order
  ComplexMatrix matrix;
  RealVector spectrum;
};

struct BlockStructure {
  std::vector<Block> blocks;  // ordered by first index position
  std::size_t d_n = 0;        // indices touching a nonzero entry
};

/// Connected components of the graph with an edge wherever |a_jk| > tol.
/// Indices whose row is entirely below tol are left out.
BlockStructure block_partition(const DissipatorMatrix& a, double tol);

struct TriangularSplit {
  ComplexMatrix a_tilde;  // upper-left e_n x e_n block
  ComplexMatrix b_tilde;  // upper-right block
  int e_n = 0;
  int rank_b = 0;
  int negative_count = 0;  // eigenvalues of the assembled matrix below zero
  RealVector spectrum;
  bool bound_holds = true;  // negative_count >= rank_b
};

/// Split of an already ordered matrix [[A, B], [B^dagger, C]] with the given
/// upper size. Throws kStructureViolation when ||C||_max > tol.
TriangularSplit triangular_split(const ComplexMatrix& m, int upper_size, double tol);

/// Orders the indices touching nonzero entries by weight (<= threshold first)
/// and applies the split above.
TriangularSplit triangular_split(const DissipatorMatrix& a, int weight_threshold, double tol);

struct OrderBound {
  int order = 0;
  double max_entry = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct CoefficientBoundReport {
  std::vector<OrderBound> orders;
  double max_ratio = 0.0;
  bool holds = true;
};

/// (2kJT)^i / (i+1) * J * i! * 2^L.
double coefficient_bound(int order, const LocalityProfile& profile);

/// Checks every order term; with `locality_limited` the extraction of order i
/// is restricted to weights <= (i+1)k - i.
CoefficientBoundReport coefficient_bound_check(const FMExpansion& terms,
                                               const LocalityProfile& profile,
                                               bool locality_limited = false);

/// Locality k read off the declared supports: max(Hamiltonian support size,
/// 2 x jump support size). Throws kCannotCompute without supports.
int drive_locality(const PiecewiseLiouvillian& drive);

/// max over sites of the summed doubled-space operator norms of all local
/// terms (every segment) whose support contains the site.
double extensiveness(const PiecewiseLiouvillian& drive);

}  // namespace floqlind

#endif  // FLOQLIND_LOCALITY_HPP
