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

// Binary drives used throughout the analysis:
//   A, B  single spin; field + tilted dephasing, then x dephasing
//   C     Ising zz ring, then x dephasing on every site
//   D     Ising xx ring, then amplitude damping on every site

#ifndef FLOQLIND_MODELS_HPP
#define FLOQLIND_MODELS_HPP

#include <optional>
#include <string>
#include <vector>

#include "floqlind/lindblad.hpp"

namespace floqlind {

enum class ModelName { kA, kB, kC, kD };

std::string to_string(ModelName name);
ModelName parse_model_name(const std::string& text);

struct ModelParams {
  ModelName name = ModelName::kA;
  double h = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma = 0.0;
  double jz = 0.0;
  double jx = 0.0;
  double tau = 0.1;
  int num_sites = 1;  // forced to 1 for A and B
};

/// Throws kInvalidArgument on parameter combinations outside the model family.
void validate(const ModelParams& params);

PiecewiseLiouvillian build_model(const ModelParams& params);

/// Locality k of the drive (all four models: 2).
int model_locality(ModelName name);

/// (sigma^1 + sigma^3) / sqrt(2)
ComplexMatrix tilted_pauli();
/// (sigma^1 - i sigma^2) / 2
ComplexMatrix sigma_minus();

/// Block bases of the interacting models around `site` on an L-site ring.
std::vector<MultiIndex> model_c_block_basis(int num_sites, int site);
std::vector<MultiIndex> model_d_block_basis(int num_sites, int site);

struct AnalyticReference {
  // Reference dissipator matrix over `basis`. For C and D this is one of the L
  // translated blocks (site 0); for A and B the full 3x3 matrix.
  ComplexMatrix matrix;
  std::vector<MultiIndex> basis;
  bool per_site_block = false;
  std::optional<double> min_eigenvalue;  // closed form, where one is known
  std::optional<double> tau_max;         // model B PSD boundary
};

/// Reference matrices and eigenvalue formulas; throws kNoReference for
/// (model, order) pairs without one (A, B, C: orders 0..2; D: orders 0..1).
AnalyticReference analytic_reference(const ModelParams& params, int order);

/// Largest tau for which the model-B order-2 dissipator stays PSD.
double model_b_tau_max(double gamma1, double gamma2);

}  // namespace floqlind

#endif  // FLOQLIND_MODELS_HPP
