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
#include "floqlind/magnus.hpp"
#include "floqlind/models.hpp"
#include "support.hpp"

using namespace floqlind;
using namespace floqlind::testing;

namespace {

const Complex I1(0.0, 1.0);

// Brute-force a_jk = <F_j (x) F_k^*, S>_F, the defining formula.
ComplexMatrix brute_force_a(const Superoperator& s, const std::vector<MultiIndex>& idx) {
  const int L = idx.front().num_sites();
  const auto n = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const ComplexMatrix fj = pauli_string(idx[static_cast<std::size_t>(j)], L);
      const ComplexMatrix fk = pauli_string(idx[static_cast<std::size_t>(k)], L);
      a(j, k) = frobenius_inner(kron(fj, fk.conjugate()), s.matrix());
    }
  }
  return a;
}

}  // namespace

TEST_CASE("extraction agrees with the defining inner product") {
  for (int L : {1, 2}) {
    const Superoperator s = random_liouvillian(Eigen::Index{1} << L, 3);
    const DissipatorMatrix a = extract_dissipator(s);
    CHECK(max_abs(a.entries() - brute_force_a(s, a.index_set())) < 1e-12);
  }
  // Weight-limited extraction keeps the same entries on the retained pairs.
  const Superoperator s = segment_superop(build_model(model_c(4, 1.0, 0.5, 0.1)).segments()[1]);
  const FMExpansion fm = bch_orders(build_model(model_c(4, 1.0, 0.5, 0.1)), 2);
  const DissipatorMatrix full = extract_dissipator(fm.cumulative[2]);
  const DissipatorMatrix lim = extract_dissipator(fm.cumulative[2], 4);
  for (std::size_t j = 0; j < lim.size(); ++j) {
    for (std::size_t k = 0; k < lim.size(); ++k) {
      const auto& ij = lim.index_set()[j];
      const auto& ik = lim.index_set()[k];
      if (ij.weight() + ik.weight() > 4) continue;
      CHECK(std::abs(lim.at(ij, ik) - full.at(ij, ik)) < 1e-12);
    }
  }
  CHECK(extract_dissipator(s).size() == 255);
  CHECK_THROWS_AS(extract_dissipator(s, 1), Error);
}

TEST_CASE("pure Hamiltonian generators have no dissipator") {
  const Superoperator s = liouvillian_superop(random_hermitian(4), {});
  CHECK(max_abs(extract_dissipator(s).entries()) < 1e-12);
}

TEST_CASE("extraction rejects non-candidates") {
  ComplexMatrix m = random_matrix(4, 4);
  try {
    extract_dissipator(Superoperator(m, 2));
    FAIL("expected not-candidate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotCandidate);
  }
}

TEST_CASE("model A references") {
  const double h = 1.0, g = 1.0, tau = 0.1;
  const FMExpansion fm = bch_orders(build_model(model_a(h, g, tau)), 2);
  for (int n = 0; n <= 2; ++n) {
    const DissipatorMatrix a = extract_dissipator(fm.cumulative[static_cast<std::size_t>(n)]);
    const AnalyticReference ref = analytic_reference(model_a(h, g, tau), n);
    CHECK(max_abs(a.submatrix(ref.basis) - ref.matrix) < 1e-12);
  }
  const LiouvillianityReport r1 = psd_report(extract_dissipator(fm.cumulative[1]));
  CHECK(r1.min_eigenvalue == doctest::Approx(-9.901951359278449e-3).epsilon(1e-10));
  CHECK_FALSE(r1.is_liouvillian);
  CHECK(r1.breaking_degree == doctest::Approx(-r1.min_eigenvalue));
  CHECK(psd_report(extract_dissipator(fm.cumulative[0])).is_liouvillian);
}

TEST_CASE("zeroth-order Hamiltonian of model A") {
  const double h = 0.8;
  const FMExpansion fm = bch_orders(build_model(model_a(h, 0.4, 0.1)), 0);
  const DissipatorMatrix a = extract_dissipator(fm.cumulative[0]);
  const HamiltonianCoefficients hc = extract_hamiltonian(fm.cumulative[0], a);
  // H^0 = (h/2) sigma^3 = (h/sqrt(2)) F_3.
  CHECK(hc.at(MultiIndex({3})) == doctest::Approx(h / std::sqrt(2.0)));
  CHECK(hc.at(MultiIndex({1})) == doctest::Approx(0.0));
  CHECK(max_abs(hc.matrix() - 0.5 * h * pauli_matrix(3)) < 1e-14);
  // Pure dephasing: no Hamiltonian.
  const Jump j{0.5, pauli_matrix(3), {}};
  const Superoperator deph = liouvillian_superop(ComplexMatrix::Zero(2, 2), std::span<const Jump>(&j, 1));
  const HamiltonianCoefficients z = extract_hamiltonian(deph, extract_dissipator(deph));
  for (const auto& [k, v] : z.h) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("hamiltonian extraction validates realness") {
  // i * identity superoperator shifted into a traceless candidate is not
  // Hermitian-generating; build a skew perturbation of the field term.
  const Superoperator s = liouvillian_superop(pauli_matrix(3), {});
  const DissipatorMatrix a = extract_dissipator(s);
  const Superoperator bad(s.matrix() * Complex(1.0, 0.5), 2);
  CHECK_THROWS_AS(extract_hamiltonian(bad, a), Error);
}

TEST_CASE("round trip of random and model generators") {
  for (int L : {1, 2}) {
    for (int t = 0; t < 5; ++t) CHECK(roundtrip_residual(random_liouvillian(Eigen::Index{1} << L)) < 1e-10);
  }
  CHECK(roundtrip_residual(Superoperator::zero(2)) == 0.0);
  for (const ModelParams& p : {model_a(1.0, 0.6, 0.2), model_b(0.6, 1.1, 0.2), model_c(3, 1.0, 0.5, 0.1),
                               model_d(3, 1.0, 0.5, 0.1)}) {
    const FMExpansion fm = bch_orders(build_model(p), 2);
    for (int n = 0; n <= 2; ++n) {
      CHECK(roundtrip_residual(fm.cumulative[static_cast<std::size_t>(n)]) < 1e-10);
      CHECK(roundtrip_residual(fm.order_terms[static_cast<std::size_t>(n)]) < 1e-10);
    }
  }
}

TEST_CASE("psd report tolerance") {
  const FMExpansion fm = bch_orders(build_model(model_a(1.0, 1.0, 0.1)), 1);
  const DissipatorMatrix a = extract_dissipator(fm.cumulative[1]);
  CHECK(default_tol_psd(a) == doctest::Approx(1e-9 * std::max(1.0, max_abs(a.entries()))));
  CHECK_FALSE(psd_report(a).is_liouvillian);
  CHECK(psd_report(a, 1.0).is_liouvillian);
  // Raising the tolerance never flips a true verdict.
  const DissipatorMatrix a0 = extract_dissipator(fm.cumulative[0]);
  double prev_tol = 0.0;
  for (double tol : {1e-12, 1e-9, 1e-6, 1e-3}) {
    CHECK(tol > prev_tol);
    CHECK(psd_report(a0, tol).is_liouvillian);
    prev_tol = tol;
  }
  const LiouvillianityReport r = psd_report(a);
  const ComplexVector av = a.entries() * r.witness;
  CHECK((av - r.min_eigenvalue * r.witness).norm() < 1e-12);
}

TEST_CASE("model B boundary") {
  const double tm = model_b_tau_max(1.0, 1.0);
  CHECK(tm == doctest::Approx(std::sqrt(3 * (std::sqrt(2.0) - 1))).epsilon(1e-12));
  const FMExpansion fm = bch_orders(build_model(model_b(1.0, 1.0, tm)), 2);
  const LiouvillianityReport r = psd_report(extract_dissipator(fm.cumulative[2]));
  CHECK(std::abs(r.min_eigenvalue) < 1e-8);
  CHECK(r.is_liouvillian);
  const FMExpansion half = bch_orders(build_model(model_b(1.0, 1.0, 0.5 * tm)), 2);
  CHECK(psd_report(extract_dissipator(half.cumulative[2])).is_liouvillian);
}

TEST_CASE("signed canonical decomposition") {
  const FrobeniusBasis basis(1);
  const FMExpansion fm = bch_orders(build_model(model_a(3.0, 3.0, 0.1)), 2);
  const Superoperator& s = fm.cumulative[2];
  const DissipatorMatrix a = extract_dissipator(s);
  const HamiltonianCoefficients h = extract_hamiltonian(s, a);
  const SignedLindbladForm form = canonical_decomposition(a, basis, h.matrix());
  CHECK(form.negative_count() == 1);
  CHECK(max_abs(form.to_superop().matrix() - s.matrix()) < 1e-10 * max_abs(s.matrix()));

  const RealVector ev = herm_eigvals(a.entries());
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) rank += std::abs(ev(i)) > kChannelDropThreshold;
  CHECK(form.channels.size() == rank);

  const SignedLindbladForm pos = canonical_decomposition(extract_dissipator(fm.cumulative[0]), basis);
  for (const auto& c : pos.channels) CHECK(c.sign == 1);
}

TEST_CASE("per-order structural checks") {
  for (const ModelParams& p : {model_a(1.0, 0.6, 0.2), model_b(0.6, 1.1, 0.2), model_c(3, 1.0, 0.5, 0.1),
                               model_d(3, 1.0, 0.5, 0.1)}) {
    const auto checks = per_order_checks(bch_orders(build_model(p), 3));
    REQUIRE(checks.size() == 4);
    CHECK(checks[0].psd);
    for (int i = 1; i <= 3; ++i) {
      CHECK(checks[static_cast<std::size_t>(i)].trace_vanishes);
      CHECK(std::abs(checks[static_cast<std::size_t>(i)].trace) < 1e-9);
    }
  }
  const Jump j{0.3, pauli_matrix(3), {}};
  const PiecewiseLiouvillian d = binary_drive(1, LindbladSegment(0.1, pauli_matrix(3), {j}),
                                              LindbladSegment(0.1, -pauli_matrix(3), {j}));
  for (const auto& c : per_order_checks(bch_orders(d, 2))) {
    if (c.order > 0) CHECK(c.is_zero);
  }
  const auto c = per_order_checks(bch_orders(build_model(model_c(3, 1.0, 0.5, 0.1)), 1));
  CHECK_FALSE(c[1].is_zero);
  CHECK(c[1].has_negative);
  CHECK(c[1].min_eigenvalue < 0.0);
}
