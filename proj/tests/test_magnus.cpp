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
#include <numbers>

#include "floqlind/liouvillianity.hpp"
#include "floqlind/magnus.hpp"
#include "support.hpp"

using namespace floqlind;
using namespace floqlind::testing;

namespace {

const Complex I1(0.0, 1.0);

LindbladSegment dephasing_segment(double duration, double field, double rate, int label) {
  return LindbladSegment(duration, field * pauli_matrix(3), {Jump{rate, pauli_matrix(label), {}}});
}

double rel(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a - b) / std::max(1e-300, std::max(max_abs(a), max_abs(b)));
}

}  // namespace

TEST_CASE("BCH closed forms") {
  const PiecewiseLiouvillian d = build_model(model_a(1.0, 0.8, 0.2));
  const FMExpansion fm = bch_orders(d, 3);
  const Superoperator& l1 = d.generator(0);
  const Superoperator& l2 = d.generator(1);
  const double t = 0.2;
  CHECK(rel(fm.order_terms[0].matrix(), 0.5 * (l1.matrix() + l2.matrix())) < 1e-14);
  CHECK(rel(fm.order_terms[1].matrix(), (t / 4) * commutator(l2, l1).matrix()) < 1e-14);
  CHECK(rel(fm.order_terms[2].matrix(), (t * t / 24) * commutator(l2 - l1, commutator(l2, l1)).matrix()) < 1e-14);
  CHECK(rel(fm.order_terms[3].matrix(),
            (t * t * t / 48) * commutator(l1, commutator(l2, commutator(l1, l2))).matrix()) < 1e-14);
  for (int i = 0; i <= 3; ++i) {
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (int k = 0; k <= i; ++k) sum += fm.order_terms[static_cast<std::size_t>(k)].matrix();
    CHECK(max_abs(sum - fm.cumulative[static_cast<std::size_t>(i)].matrix()) < 1e-12);
    CHECK(trace_preservation_residual(fm.order_terms[static_cast<std::size_t>(i)]) < 1e-10);
    CHECK(hermiticity_preservation_residual(fm.order_terms[static_cast<std::size_t>(i)]) < 1e-10);
  }
  CHECK_THROWS_AS(bch_orders(d, 4), Error);
  const PiecewiseLiouvillian uneven(1, {dephasing_segment(0.1, 1, 1, 1), dephasing_segment(0.2, 0, 1, 3)});
  CHECK_THROWS_AS(bch_orders(uneven, 1), Error);
}

TEST_CASE("commuting segments have no higher orders") {
  const PiecewiseLiouvillian d = binary_drive(1, dephasing_segment(0.3, 1.0, 0.5, 3), dephasing_segment(0.3, -2.0, 0.2, 3));
  const FMExpansion fm = bch_orders(d, 3);
  for (int i = 1; i <= 3; ++i) CHECK(max_abs(fm.order_terms[static_cast<std::size_t>(i)].matrix()) < 1e-14);
  CHECK(max_abs(exact_effective(d).matrix() - fm.order_terms[0].matrix()) < 1e-10);
  const FMExpansion vv = van_vleck_orders(d, 50);
  CHECK(max_abs(vv.order_terms[1].matrix()) < 1e-14);
}

TEST_CASE("homogeneity of BCH orders in the generators") {
  const ModelParams p = model_a(1.0, 0.8, 0.2);
  ModelParams q = p;
  const double s = 1.7;
  q.h *= s;
  q.gamma1 *= s;
  const FMExpansion a = bch_orders(build_model(p), 3);
  const FMExpansion b = bch_orders(build_model(q), 3);
  for (int i = 0; i <= 3; ++i) {
    CHECK(rel(b.order_terms[static_cast<std::size_t>(i)].matrix(),
              std::pow(s, i + 1) * a.order_terms[static_cast<std::size_t>(i)].matrix()) < 1e-12);
  }
}

TEST_CASE("general first-order formula") {
  SUBCASE("single segment") {
    const PiecewiseLiouvillian d(1, {dephasing_segment(0.4, 1.0, 0.3, 1)});
    const FMExpansion fm = fm_general(d, 1);
    CHECK(max_abs(fm.order_terms[1].matrix()) == 0.0);
    CHECK(max_abs(fm.order_terms[0].matrix() - d.generator(0).matrix()) < 1e-15);
  }
  SUBCASE("agrees with BCH on every binary model") {
    for (const ModelParams& p : {model_a(1.0, 0.5, 0.2), model_b(0.5, 1.2, 0.3), model_c(3, 1.0, 0.4, 0.1),
                                 model_d(3, 0.7, 0.6, 0.15)}) {
      const PiecewiseLiouvillian d = build_model(p);
      const FMExpansion g = fm_general(d, 1), b = bch_orders(d, 1);
      for (int i = 0; i <= 1; ++i) {
        CHECK(max_abs(g.order_terms[static_cast<std::size_t>(i)].matrix() -
                      b.order_terms[static_cast<std::size_t>(i)].matrix()) < 1e-12);
      }
    }
  }
  SUBCASE("three equal segments") {
    const double t = 0.1;
    const PiecewiseLiouvillian d(1, {dephasing_segment(t, 1.0, 0.3, 1), dephasing_segment(t, -0.5, 0.2, 2),
                                     dephasing_segment(t, 0.2, 0.7, 3)});
    const FMExpansion fm = fm_general(d, 1);
    const Superoperator &l1 = d.generator(0), &l2 = d.generator(1), &l3 = d.generator(2);
    const ComplexMatrix want =
        (t * t / (2 * 3 * t)) * (commutator(l2, l1) + commutator(l3, l1) + commutator(l3, l2)).matrix();
    CHECK(max_abs(fm.order_terms[1].matrix() - want) < 1e-14);
    CHECK_THROWS_AS(fm_general(d, 2), Error);
    CHECK_THROWS_AS(fm_expansion(d, 2), Error);
  }
}

TEST_CASE("fourier components") {
  const double t = 0.25;
  const PiecewiseLiouvillian d = binary_drive(1, dephasing_segment(t, 1.0, 0.3, 1), dephasing_segment(t, -0.5, 0.8, 2));
  CHECK(max_abs(fourier_component(d, 0).matrix() - fm_general(d, 0).order_terms[0].matrix()) < 1e-15);
  const ComplexMatrix diff = d.generator(0).matrix() - d.generator(1).matrix();
  for (int m : {1, 3, -3, 5}) {
    const ComplexMatrix want = diff * (-I1 / (std::numbers::pi * m));
    CHECK(max_abs(fourier_component(d, m).matrix() - want) < 1e-14);
  }
  for (int m : {2, -4}) CHECK(max_abs(fourier_component(d, m).matrix()) < 1e-14);

  // Midpoint quadrature of the defining integral.
  const int n = 20000;
  const double period = 2 * t;
  for (int m : {1, 2, 3}) {
    ComplexMatrix q = ComplexMatrix::Zero(4, 4);
    for (int s = 0; s < n; ++s) {
      const double time = (s + 0.5) * period / n;
      const ComplexMatrix& g = time < t ? d.generator(0).matrix() : d.generator(1).matrix();
      q += g * std::exp(-I1 * (2 * std::numbers::pi * m * time / period)) / static_cast<double>(n);
    }
    CHECK(max_abs(q - fourier_component(d, m).matrix()) < 1e-6);
  }
  const PiecewiseLiouvillian constant(1, {dephasing_segment(0.3, 1.0, 0.3, 1)});
  CHECK(max_abs(fourier_component(constant, 2).matrix()) < 1e-15);
}

TEST_CASE("van Vleck expansion") {
  SUBCASE("time-independent dissipation leaves no first-order dissipator") {
    const Jump j{0.5, pauli_matrix(1), {}};
    const PiecewiseLiouvillian d(1, {LindbladSegment(0.2, pauli_matrix(1), {j}), LindbladSegment(0.1, pauli_matrix(3), {j}),
                                     LindbladSegment(0.15, -0.5 * pauli_matrix(2), {j})});
    const FMExpansion vv = van_vleck_orders(d);
    CHECK(max_abs(vv.order_terms[1].matrix()) > 1e-3);
    CHECK(max_abs(extract_dissipator(vv.order_terms[1]).entries()) < 1e-8);
    // Floquet-Magnus does produce one here.
    CHECK(max_abs(extract_dissipator(fm_general(d, 1).order_terms[1]).entries()) > 1e-3);
  }
  SUBCASE("binary drives have a vanishing first order") {
    // Every harmonic of a two-level square wave is proportional to L1 - L2.
    const PiecewiseLiouvillian d = build_model(model_a(1.0, 1.0, 0.1));
    const FMExpansion vv = van_vleck_orders(d, 100);
    CHECK(max_abs(vv.order_terms[1].matrix()) < 1e-13 * max_abs(d.generator(0).matrix()));
  }
  SUBCASE("cutoff convergence") {
    const PiecewiseLiouvillian d(1, {dephasing_segment(0.1, 1.0, 1.0, 1), dephasing_segment(0.1, -1.0, 0.5, 3),
                                     dephasing_segment(0.1, 0.3, 0.8, 2)});
    const ComplexMatrix a = van_vleck_orders(d, 50).order_terms[1].matrix();
    const FMExpansion vv = van_vleck_orders(d, 100);
    const ComplexMatrix b = vv.order_terms[1].matrix();
    CHECK(max_abs(a - b) / max_abs(b) < 1e-4);
    CHECK(vv.tail_estimate > 0.0);
    CHECK(vv.harmonic_cutoff == 100);
    // The reported tail bounds the distance to a far larger cutoff, and is
    // not fooled by harmonics that vanish at the cutoff itself.
    const ComplexMatrix c = van_vleck_orders(d, 20000).order_terms[1].matrix();
    CHECK((c - b).norm() <= vv.tail_estimate);
    CHECK(van_vleck_orders(d, 99).tail_estimate > 0.0);
    CHECK(trace_preservation_residual(vv.order_terms[1]) < 1e-10);
    CHECK(hermiticity_preservation_residual(vv.order_terms[1]) < 1e-10);
  }
  SUBCASE("first order agrees with Floquet-Magnus up to a gauge") {
    // The kick similarity changes order 1 by [K, L^0], which is orthogonal to L^0.
    const PiecewiseLiouvillian d(1, {LindbladSegment(0.1, pauli_matrix(1), {Jump{1.0, pauli_matrix(1), {}}}),
                                     LindbladSegment(0.2, -1.0 * pauli_matrix(3), {Jump{0.5, pauli_matrix(3), {}}}),
                                     LindbladSegment(0.1, 0.3 * pauli_matrix(2), {Jump{0.8, pauli_matrix(2), {}}})});
    const ComplexMatrix l0 = fourier_component(d, 0).matrix();
    const Complex vv = (l0 * van_vleck_orders(d, 20000).order_terms[1].matrix()).trace();
    const Complex fm = (l0 * fm_general(d, 1).order_terms[1].matrix()).trace();
    CHECK(std::abs(vv - fm) < 1e-4 * std::abs(fm));
    CHECK(std::abs(fm) > 1e-3);
  }
  CHECK_THROWS_AS(van_vleck_orders(build_model(model_a(1.0, 1.0, 0.1)), 0), Error);
}

TEST_CASE("floquet propagator and exact effective generator") {
  const PiecewiseLiouvillian one(1, {dephasing_segment(0.3, 1.0, 0.4, 1)});
  CHECK(max_abs(floquet_propagator(one).matrix() - matrix_exp(0.3 * one.generator(0).matrix())) < 1e-14);
  CHECK(max_abs(exact_effective(one).matrix() - one.generator(0).matrix()) < 1e-10);

  const PiecewiseLiouvillian d = build_model(model_a(1.0, 1.0, 0.3));
  const ComplexMatrix u = floquet_propagator(d).matrix();
  CHECK(max_abs(u - matrix_exp(0.3 * d.generator(1).matrix()) * matrix_exp(0.3 * d.generator(0).matrix())) < 1e-14);
  const ComplexVector w = vectorize(ComplexMatrix::Identity(2, 2));
  CHECK(max_abs(w.adjoint() * u - w.adjoint()) < 1e-10);

  const Superoperator eff = exact_effective(d);
  CHECK((matrix_exp(eff.matrix() * d.period()) - u).norm() <= 1e-8 * u.norm());

  const PiecewiseLiouvillian small = build_model(model_a(1.0, 1.0, 0.05));
  const ComplexMatrix e = exact_effective(small).matrix();
  CHECK((e - bch_orders(small, 2).cumulative[2].matrix()).norm() / e.norm() < 1e-3);

  // Round trip of a single segment through log.
  const Superoperator l1 = d.generator(0);
  CHECK(max_abs(matrix_log_principal(matrix_exp(0.01 * l1.matrix())) / 0.01 - l1.matrix()) < 1e-8);
}

TEST_CASE("exp/log round trip for every model") {
  for (const ModelParams& p : {model_a(1.0, 1.0, 0.25), model_b(1.0, 1.0, 0.25), model_c(3, 1.0, 1.0, 0.08),
                               model_d(3, 1.0, 1.0, 0.08)}) {
    const PiecewiseLiouvillian d = build_model(p);
    const ComplexMatrix u = floquet_propagator(d).matrix();
    CHECK((matrix_exp(matrix_log_principal(u)) - u).norm() <= 1e-8 * u.norm());
  }
}

TEST_CASE("order of accuracy on model C") {
  // ||L_eff - L_f^n|| ~ tau^(n+1) across one decade.
  for (int n = 0; n <= 2; ++n) {
    const auto residual = [&](double tau) {
      const PiecewiseLiouvillian d = build_model(model_c(3, 1.0, 0.7, tau));
      return (exact_effective(d).matrix() - bch_orders(d, n).cumulative[static_cast<std::size_t>(n)].matrix()).norm();
    };
    const double lo = 0.02, hi = 0.2;
    const double slope = std::log(residual(hi) / residual(lo)) / std::log(hi / lo);
    CHECK(std::abs(slope - (n + 1)) < 0.3);
  }
}
