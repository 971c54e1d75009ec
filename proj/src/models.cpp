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

#include "floqlind/models.hpp"

#include <cctype>
#include <cmath>

namespace floqlind {

namespace {

constexpr const char* kModule = "models";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

int wrap(int site, int num_sites) { return ((site % num_sites) + num_sites) % num_sites; }

MultiIndex with_labels(int num_sites, std::initializer_list<std::pair<int, int>> site_labels) {
  std::vector<int> v(static_cast<std::size_t>(num_sites), 0);
  for (const auto& [site, label] : site_labels) {
    v[static_cast<std::size_t>(wrap(site, num_sites))] = label;
  }
  return MultiIndex(std::move(v));
}

// Sum over bonds (l, l+1 mod L) of coupling * sigma^a_l sigma^a_{l+1}.
std::vector<HamiltonianTerm> ising_ring(int num_sites, int label, double coupling) {
  std::vector<HamiltonianTerm> terms;
  const ComplexMatrix s = pauli_matrix(label);
  for (int l = 0; l < num_sites; ++l) {
    const int r = wrap(l + 1, num_sites);
    terms.push_back({coupling * embed_site_operator(s, l, num_sites) *
                         embed_site_operator(s, r, num_sites),
                     {std::min(l, r), std::max(l, r)}});
  }
  return terms;
}

std::vector<Jump> on_every_site(int num_sites, const ComplexMatrix& local, double rate) {
  std::vector<Jump> jumps;
  for (int l = 0; l < num_sites; ++l) {
    jumps.push_back({rate, embed_site_operator(local, l, num_sites), {l}});
  }
  return jumps;
}

}  // namespace

std::string to_string(ModelName name) {
  switch (name) {
    case ModelName::kA: return "A";
    case ModelName::kB: return "B";
    case ModelName::kC: return "C";
    case ModelName::kD: return "D";
  }
  return "?";
}

ModelName parse_model_name(const std::string& text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
      case 'A': return ModelName::kA;
      case 'B': return ModelName::kB;
      case 'C': return ModelName::kC;
      case 'D': return ModelName::kD;
      default: break;
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown model '" + text + "' (expected A, B, C or D)");
}

void validate(const ModelParams& p) {
  auto nonneg = [](double x) { return x >= 0.0 && std::isfinite(x); };
  if (!(p.tau > 0.0) || !std::isfinite(p.tau)) fail(ErrorCode::kInvalidArgument, "tau must be > 0");
  if (!nonneg(p.gamma1) || !nonneg(p.gamma2) || !nonneg(p.gamma) || !nonneg(p.jz) ||
      !nonneg(p.jx) || !std::isfinite(p.h)) {
    fail(ErrorCode::kInvalidArgument, "rates and couplings must be finite and nonnegative");
  }
  switch (p.name) {
    case ModelName::kA:
      if (p.h == 0.0 || p.gamma2 != 0.0) {
        fail(ErrorCode::kInvalidArgument, "model A needs h != 0 and gamma2 = 0");
      }
      if (!(p.gamma1 > 0.0)) fail(ErrorCode::kInvalidArgument, "model A needs gamma1 > 0");
      break;
    case ModelName::kB:
      if (p.h != 0.0 || !(p.gamma2 > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "model B needs h = 0 and gamma2 > 0");
      }
      if (!(p.gamma1 > 0.0)) fail(ErrorCode::kInvalidArgument, "model B needs gamma1 > 0");
      break;
    case ModelName::kC:
    case ModelName::kD:
      if (p.num_sites < 3 || p.num_sites > 8) {
        fail(ErrorCode::kInvalidArgument, "interacting models need 3 <= L <= 8");
      }
      break;
  }
}

PiecewiseLiouvillian build_model(const ModelParams& p) {
  validate(p);
  switch (p.name) {
    case ModelName::kA:
    case ModelName::kB: {
      std::vector<HamiltonianTerm> field;
      field.push_back({p.h * pauli_matrix(3), {0}});
      std::vector<Jump> tilted;
      if (p.gamma2 > 0.0) tilted.push_back({p.gamma2, tilted_pauli(), {0}});
      std::vector<Jump> flip{{p.gamma1, pauli_matrix(1), {0}}};
      std::vector<LindbladSegment> segs;
      segs.emplace_back(p.tau, 2, std::move(field), std::move(tilted));
      segs.emplace_back(p.tau, 2, std::vector<HamiltonianTerm>{}, std::move(flip));
      return PiecewiseLiouvillian(1, std::move(segs));
    }
    case ModelName::kC: {
      const int L = p.num_sites;
      const int d = 1 << L;
      std::vector<LindbladSegment> segs;
      segs.emplace_back(p.tau, d, ising_ring(L, 3, p.jz), std::vector<Jump>{});
      segs.emplace_back(p.tau, d, std::vector<HamiltonianTerm>{},
                        on_every_site(L, pauli_matrix(1), p.gamma));
      return PiecewiseLiouvillian(L, std::move(segs));
    }
    case ModelName::kD: {
      const int L = p.num_sites;
      const int d = 1 << L;
      std::vector<LindbladSegment> segs;
      segs.emplace_back(p.tau, d, ising_ring(L, 1, p.jx), std::vector<Jump>{});
      segs.emplace_back(p.tau, d, std::vector<HamiltonianTerm>{},
                        on_every_site(L, sigma_minus(), p.gamma));
      return PiecewiseLiouvillian(L, std::move(segs));
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown model");
}

int model_locality(ModelName) { return 2; }

ComplexMatrix tilted_pauli() { return (pauli_matrix(1) + pauli_matrix(3)) / std::sqrt(2.0); }

ComplexMatrix sigma_minus() {
  return 0.5 * (pauli_matrix(1) - Complex(0.0, 1.0) * pauli_matrix(2));
}

std::vector<MultiIndex> model_c_block_basis(int num_sites, int site) {
  const int l = site;
  return {with_labels(num_sites, {{l, 1}}),
          with_labels(num_sites, {{l - 1, 3}, {l, 2}}),
          with_labels(num_sites, {{l, 2}, {l + 1, 3}}),
          with_labels(num_sites, {{l - 1, 3}, {l, 1}, {l + 1, 3}})};
}

std::vector<MultiIndex> model_d_block_basis(int num_sites, int site) {
  const int l = site;
  return {with_labels(num_sites, {{l, 1}}),
          with_labels(num_sites, {{l, 2}}),
          with_labels(num_sites, {{l - 1, 1}, {l, 3}}),
          with_labels(num_sites, {{l, 3}, {l + 1, 1}})};
}

double model_b_tau_max(double g1, double g2) {
  if (!(g1 > 0.0) || !(g2 > 0.0)) fail(ErrorCode::kInvalidArgument, "tau_max needs positive rates");
  const double s2 = g1 * g1 + g2 * g2;
  return std::sqrt(6.0 * (std::sqrt(1.0 + s2 / (2.0 * g1 * g2)) - 1.0) / s2);
}

AnalyticReference analytic_reference(const ModelParams& p, int order) {
  validate(p);
  if (order < 0) fail(ErrorCode::kNoReference, "negative order");
  const Complex i_unit(0.0, 1.0);
  AnalyticReference ref;
  switch (p.name) {
    case ModelName::kA: {
      if (order > 2) break;
      const double ht = p.h * p.tau;
      const double a1 = order >= 1 ? -ht : 0.0;
      const double a2 = order >= 2 ? 2.0 * ht * ht / 3.0 : 0.0;
      ref.matrix = ComplexMatrix::Zero(3, 3);
      ref.matrix(0, 0) = 1.0 - a2;
      ref.matrix(0, 1) = a1;
      ref.matrix(1, 0) = a1;
      ref.matrix(1, 1) = a2;
      ref.matrix *= p.gamma1;
      ref.basis = FrobeniusBasis(1).indices(1, 1);
      if (order == 1) {
        ref.min_eigenvalue = (1.0 - std::sqrt(1.0 + 4.0 * ht * ht)) * p.gamma1 / 2.0;
      } else if (order == 2) {
        ref.min_eigenvalue =
            (1.0 - std::sqrt(1.0 + 4.0 * ht * ht / 3.0 + 16.0 * std::pow(ht, 4) / 9.0)) *
            p.gamma1 / 2.0;
      }
      return ref;
    }
    case ModelName::kB: {
      if (order > 2) break;
      const double g1 = p.gamma1;
      const double g2 = p.gamma2;
      const double ab = order >= 2 ? (g1 * p.tau) * (g2 * p.tau) / 6.0 : 0.0;
      ref.matrix = ComplexMatrix::Zero(3, 3);
      ref.matrix(0, 0) = g2 / 2.0 + g1 + ab * g2;
      ref.matrix(0, 2) = g2 / 2.0 + ab * g1;
      ref.matrix(2, 0) = ref.matrix(0, 2);
      ref.matrix(2, 2) = g2 / 2.0 - ab * g2;
      ref.basis = FrobeniusBasis(1).indices(1, 1);
      if (order == 2) {
        const double t2 = p.tau * p.tau;
        const double root = std::sqrt(g1 * g1 * g2 * g2 * t2 * (g1 * g1 * t2 + g2 * g2 * t2 + 12.0) +
                                      9.0 * (g1 * g1 + g2 * g2));
        ref.min_eigenvalue = std::min(0.0, (g1 + g2) / 2.0 - root / 6.0);
        ref.tau_max = model_b_tau_max(g1, g2);
      }
      return ref;
    }
    case ModelName::kC: {
      if (order > 2) break;
      const double x = p.jz * p.tau;
      const double a1 = order >= 1 ? -x : 0.0;
      const double a2 = order >= 2 ? 2.0 * x * x / 3.0 : 0.0;
      ref.matrix.resize(4, 4);
      ref.matrix << 1.0 - 2.0 * a2, a1, a1, -a2,
                    a1, a2, a2, 0.0,
                    a1, a2, a2, 0.0,
                    -a2, 0.0, 0.0, 0.0;
      ref.matrix *= std::ldexp(p.gamma, p.num_sites - 1);
      ref.basis = model_c_block_basis(p.num_sites, 0);
      ref.per_site_block = true;
      if (order == 1) {
        ref.min_eigenvalue =
            std::ldexp(p.gamma, p.num_sites - 2) * (1.0 - std::sqrt(1.0 + 8.0 * x * x));
      }
      return ref;
    }
    case ModelName::kD: {
      if (order > 1) break;
      const double x = order >= 1 ? p.jx * p.tau : 0.0;
      ref.matrix.resize(4, 4);
      ref.matrix << 2.0, 2.0 * i_unit, -i_unit * x, -i_unit * x,
                    -2.0 * i_unit, 2.0, -x, -x,
                    i_unit * x, -x, 0.0, 0.0,
                    i_unit * x, -x, 0.0, 0.0;
      ref.matrix *= std::ldexp(p.gamma, p.num_sites - 3);
      ref.basis = model_d_block_basis(p.num_sites, 0);
      ref.per_site_block = true;
      if (order == 1) {
        ref.min_eigenvalue =
            std::ldexp(p.gamma, p.num_sites - 2) * (1.0 - std::sqrt(1.0 + x * x));
      }
      return ref;
    }
  }
  fail(ErrorCode::kNoReference,
       "no reference for model " + to_string(p.name) + " at order " + std::to_string(order));
}

}  // namespace floqlind
