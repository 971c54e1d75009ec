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

// Shared fixtures for the unit tests: seeded random matrices, states and
// generators.

#ifndef FLOQLIND_TESTS_SUPPORT_HPP
#define FLOQLIND_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "floqlind/lindblad.hpp"
#include "floqlind/models.hpp"

namespace floqlind::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260101);
  return gen;
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng()), n(rng()));
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index d, double scale = 1.0) {
  const ComplexMatrix m = random_matrix(d, d, scale);
  return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix random_density(Eigen::Index d) {
  const ComplexMatrix g = random_matrix(d, d);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

// H plus `count` random jumps with positive rates.
inline Superoperator random_liouvillian(Eigen::Index d, int count = 2) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<Jump> jumps;
  for (int i = 0; i < count; ++i) jumps.push_back({u(rng()), random_matrix(d, d, 0.5), {}});
  return liouvillian_superop(random_hermitian(d), jumps);
}

inline ModelParams model_a(double h, double gamma1, double tau) {
  ModelParams p;
  p.name = ModelName::kA;
  p.h = h;
  p.gamma1 = gamma1;
  p.tau = tau;
  return p;
}

inline ModelParams model_b(double gamma1, double gamma2, double tau) {
  ModelParams p;
  p.name = ModelName::kB;
  p.gamma1 = gamma1;
  p.gamma2 = gamma2;
  p.tau = tau;
  return p;
}

inline ModelParams model_c(int num_sites, double jz, double gamma, double tau) {
  ModelParams p;
  p.name = ModelName::kC;
  p.num_sites = num_sites;
  p.jz = jz;
  p.gamma = gamma;
  p.tau = tau;
  return p;
}

inline ModelParams model_d(int num_sites, double jx, double gamma, double tau) {
  ModelParams p;
  p.name = ModelName::kD;
  p.num_sites = num_sites;
  p.jx = jx;
  p.gamma = gamma;
  p.tau = tau;
  return p;
}

// Binary drive from two explicit segments on one site.
inline PiecewiseLiouvillian binary_drive(int num_sites, LindbladSegment a, LindbladSegment b) {
  return PiecewiseLiouvillian(num_sites, {std::move(a), std::move(b)});
}

}  // namespace floqlind::testing

#endif  // FLOQLIND_TESTS_SUPPORT_HPP
