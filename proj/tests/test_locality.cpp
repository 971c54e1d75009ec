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

#include <doctest.h>

#include <cmath>

#include "floqlind/liouvillianity.hpp"
#include "floqlind/locality.hpp"
#include "floqlind/magnus.hpp"
#include "floqlind/models.hpp"
#include "support.hpp"

using namespace floqlind;
using namespace floqlind::testing;

TEST_CASE("weight bounds") {
  CHECK(max_weight_bound(0, 2) == 2);
  CHECK(max_weight_bound(1, 2) == 3);
  CHECK(max_weight_bound(2, 2) == 4);
  CHECK(default_split_threshold(1, 2) == 2);
  CHECK(default_split_threshold(2, 2) == 2);
  CHECK_THROWS_AS(max_weight_bound(-1, 2), Error);
}

TEST_CASE("sparsity of interacting models under full extraction") {
  for (const ModelParams& p : {model_c(3, 1.0, 0.7, 0.1), model_d(3, 1.0, 0.7, 0.1), model_c(4, 0.8, 0.5, 0.1)}) {
    const PiecewiseLiouvillian d = build_model(p);
    const FMExpansion fm = bch_orders(d, 2);
    const LocalityProfile prof{2, extensiveness(d), d.period(), d.num_sites()};
    for (int n = 0; n <= 2; ++n) {
      const DissipatorMatrix a = extract_dissipator(fm.cumulative[static_cast<std::size_t>(n)]);
      CHECK(sparsity_check(a, n, prof, 1e-12).empty());
    }
  }
  // Single site: everything is single-site.
  const DissipatorMatrix a = extract_dissipator(bch_orders(build_model(model_a(1, 1, 0.1)), 2).cumulative[2]);
  for (const auto& j : a.index_set()) CHECK(j.weight() == 1);
}

TEST_CASE("block partition") {
  SUBCASE("model C order 2, L = 4") {
    const ModelParams p = model_c(4, 1.0, 1e-3, 0.1);
    const DissipatorMatrix a = extract_dissipator(bch_orders(build_model(p), 2).cumulative[2], 4);
    const BlockStructure bs = block_partition(a, 1e-10 * max_abs(a.entries()));
    const AnalyticReference ref = analytic_reference(p, 2);
    int matched = 0;
    for (const auto& b : bs.blocks) {
      if (b.indices.size() != 4) continue;
      bool found = false;
      for (int s = 0; s < 4 && !found; ++s) {
        std::vector<MultiIndex> basis;
        for (const auto& j : ref.basis) basis.push_back(j.translated(s));
        std::vector<MultiIndex> sorted = basis;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != b.indices) continue;
        found = max_abs(a.submatrix(basis) - ref.matrix) < 1e-10;
      }
      matched += found;
    }
    CHECK(matched == 4);
    std::size_t total = 0;
    for (const auto& b : bs.blocks) total += b.indices.size();
    CHECK(total == bs.d_n);
    CHECK(static_cast<double>(bs.d_n) <= nontrivial_size_bound(4, 2, 2));
  }
  SUBCASE("diagonal matrices give singletons") {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m.diagonal() << 1.0, 2.0, 0.0;
    const BlockStructure bs = block_partition(DissipatorMatrix(1, FrobeniusBasis(1).indices(1, 1), m), 1e-12);
    CHECK(bs.blocks.size() == 2);
    CHECK(bs.d_n == 2);
  }
}

TEST_CASE("d_n bound and linear growth") {
  for (const ModelName name : {ModelName::kC, ModelName::kD}) {
    for (int n = 0; n <= 2; ++n) {
      std::vector<std::size_t> sizes;
      for (int L = 3; L <= 5; ++L) {
        ModelParams p = name == ModelName::kC ? model_c(L, 1.0, 0.5, 0.1) : model_d(L, 1.0, 0.5, 0.1);
        const DissipatorMatrix a =
            extract_dissipator(bch_orders(build_model(p), n).cumulative[static_cast<std::size_t>(n)],
                               L >= 4 ? std::optional<int>(max_weight_bound(n, 2)) : std::nullopt);
        const BlockStructure bs = block_partition(a, 1e-10 * std::max(1.0, max_abs(a.entries())));
        if (L <= 4) CHECK(static_cast<double>(bs.d_n) <= nontrivial_size_bound(L, n, 2));
        sizes.push_back(bs.d_n);
      }
      // Neighbouring interactions: d_n proportional to L.
      CHECK(sizes[0] * 4 == sizes[1] * 3);
      CHECK(sizes[1] * 5 == sizes[2] * 4);
    }
  }
}

TEST_CASE("translation invariance of model blocks") {
  const ModelParams p = model_d(4, 0.9, 0.6, 0.12);
  const DissipatorMatrix a = extract_dissipator(bch_orders(build_model(p), 1).cumulative[1], 3);
  const ComplexMatrix b0 = a.submatrix(model_d_block_basis(4, 0));
  for (int s = 1; s < 4; ++s) CHECK(max_abs(a.submatrix(model_d_block_basis(4, s)) - b0) < 1e-10);
}

TEST_CASE("triangular split") {
  SUBCASE("model C order 1 block") {
    const ModelParams p = model_c(4, 1.0, 1.0, 0.1);
    // Limit 4 keeps the weight-3 member of the block; entries at order 1 are
    // exact on every retained pair.
    const DissipatorMatrix a = extract_dissipator(bch_orders(build_model(p), 1).cumulative[1], 4);
    const ComplexMatrix blk = a.submatrix(model_c_block_basis(4, 0));
    const TriangularSplit ts = triangular_split(blk, 1, 1e-12);
    CHECK(ts.rank_b == 1);
    CHECK(ts.negative_count >= 1);
    CHECK(ts.bound_holds);
    const TriangularSplit full = triangular_split(a, default_split_threshold(1, 2), 1e-12);
    CHECK(full.bound_holds);
    CHECK(full.negative_count >= full.rank_b);
  }
  SUBCASE("zero off-diagonal block makes no claim") {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 1.0;
    const TriangularSplit ts = triangular_split(m, 1, 1e-12);
    CHECK(ts.rank_b == 0);
    CHECK(ts.negative_count == 0);
    CHECK(ts.bound_holds);
  }
  SUBCASE("nonzero lower block is a structure violation") {
    try {
      triangular_split(ComplexMatrix::Identity(3, 3), 1, 1e-12);
      FAIL("expected structure violation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kStructureViolation);
    }
  }
  SUBCASE("randomized Schur-complement negativity") {
    std::uniform_int_distribution<int> size(1, 5);
    for (int t = 0; t < 100; ++t) {
      const int e = size(rng()), r = size(rng());
      ComplexMatrix m = ComplexMatrix::Zero(e + r, e + r);
      m.topLeftCorner(e, e) = random_hermitian(e);
      const ComplexMatrix b = random_matrix(e, r);
      m.topRightCorner(e, r) = b;
      m.bottomLeftCorner(r, e) = b.adjoint();
      const TriangularSplit ts = triangular_split(m, e, 1e-12);
      const RealVector ev = herm_eigvals(m);
      // For r > e there are r - e exact zero modes; keep round-off out of the count.
      const double cut = -1e-10 * max_abs(m);
      int neg = 0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) neg += ev(i) < cut;
      CHECK(ts.negative_count == neg);
      CHECK(neg >= ts.rank_b);
      // Full-rank B with r >= e: inertia is (e, r - e, e).
      if (r >= e) CHECK(neg == e);
      CHECK(ts.rank_b == std::min(e, r));
    }
  }
}

TEST_CASE("coefficient bound") {
  const LocalityProfile prof{2, 3.0, 0.2, 4};
  CHECK(coefficient_bound(0, prof) == doctest::Approx(3.0 * 16.0));
  CHECK(coefficient_bound(2, prof) == doctest::Approx(std::pow(2 * 2 * 3.0 * 0.2, 2) / 3 * 3.0 * 2 * 16));
  for (const ModelParams& p : {model_c(4, 1.0, 0.5, 0.1), model_d(4, 1.0, 0.5, 0.1)}) {
    const PiecewiseLiouvillian d = build_model(p);
    const LocalityProfile lp{2, extensiveness(d), d.period(), 4};
    const CoefficientBoundReport r = coefficient_bound_check(bch_orders(d, 2), lp, true);
    CHECK(r.holds);
    CHECK(r.max_ratio < 1.0);
  }
}

TEST_CASE("extensiveness and locality") {
  const PiecewiseLiouvillian c = build_model(model_c(4, 1.3, 0.4, 0.1));
  CHECK(extensiveness(c) == doctest::Approx(4 * 1.3 + 2 * 0.4));
  CHECK(drive_locality(c) == 2);
  ModelParams doubled = model_c(4, 2.6, 0.8, 0.1);
  CHECK(extensiveness(build_model(doubled)) == doctest::Approx(2 * extensiveness(c)));

  const ComplexMatrix h = 0.7 * pauli_matrix(1);
  const PiecewiseLiouvillian single(1, {LindbladSegment(0.1, 2, {HamiltonianTerm{h, {0}}}, {})});
  CHECK(extensiveness(single) == doctest::Approx(
                                     Eigen::JacobiSVD<ComplexMatrix>(single.generator(0).matrix()).singularValues()(0)));
  const PiecewiseLiouvillian bare(1, {LindbladSegment(0.1, h)});
  CHECK_THROWS_AS(extensiveness(bare), Error);
  CHECK_THROWS_AS(drive_locality(bare), Error);
}
