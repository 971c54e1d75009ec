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

#ifndef FLOQLIND_DISSIPATOR_HPP
#define FLOQLIND_DISSIPATOR_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "floqlind/superop_core.hpp"

namespace floqlind {

/// Hermitian coefficient matrix [a_jk] over traceless Pauli strings: the
/// jump part of a GKLS-form generator is sum_jk a_jk F_j rho F_k^dagger.
class DissipatorMatrix {
 public:
  DissipatorMatrix(int num_sites, std::vector<MultiIndex> index_set, ComplexMatrix entries);

  /// Zero matrix over all 4^L - 1 traceless indices.
  static DissipatorMatrix zero(int num_sites);

  int num_sites() const noexcept { return num_sites_; }
  std::size_t size() const noexcept { return index_set_.size(); }
  const std::vector<MultiIndex>& index_set() const noexcept { return index_set_; }
  const ComplexMatrix& entries() const noexcept { return entries_; }

  std::optional<std::size_t> position(const MultiIndex& index) const;
  /// a_jk for arbitrary traceless indices; indices outside the set read as 0.
  Complex at(const MultiIndex& j, const MultiIndex& k) const;
  /// Principal submatrix over the given indices (all must be present).
  ComplexMatrix submatrix(const std::vector<MultiIndex>& indices) const;

 private:
  int num_sites_;
  std::vector<MultiIndex> index_set_;
  ComplexMatrix entries_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

}  // namespace floqlind

#endif  // FLOQLIND_DISSIPATOR_HPP
