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

#include "floqlind/locality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "floqlind/liouvillianity.hpp"

namespace floqlind {

namespace {

constexpr const char* kModule = "locality";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

// Positions (in index_set order) of indices with a row entry above tol.
std::vector<Eigen::Index> touching(const ComplexMatrix& m, double tol) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (m.row(r).cwiseAbs().maxCoeff() > tol) out.push_back(r);
  }
  return out;
}

ComplexMatrix principal(const ComplexMatrix& m, const std::vector<Eigen::Index>& pos) {
  const auto n = static_cast<Eigen::Index>(pos.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = m(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

// Local factor of an operator acting as identity outside `support`:
// Tr_rest(op) / 2^(L - |support|), expressed on the support sites in order.
ComplexMatrix restrict_to_support(const ComplexMatrix& op, const std::vector<int>& support,
                                  int num_sites) {
  const int ns = static_cast<int>(support.size());
  const Eigen::Index dl = Eigen::Index{1} << ns;
  const Eigen::Index d = op.rows();
  auto local_of = [&](Eigen::Index full) {
    Eigen::Index v = 0;
    for (int s : support) v = 2 * v + ((full >> (num_sites - 1 - s)) & 1);
    return v;
  };
  Eigen::Index support_mask = 0;
  for (int s : support) support_mask |= Eigen::Index{1} << (num_sites - 1 - s);

  ComplexMatrix out = ComplexMatrix::Zero(dl, dl);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      if ((r & ~support_mask) != (c & ~support_mask)) continue;
      out(local_of(r), local_of(c)) += op(r, c);
    }
  }
  return out / static_cast<double>(d / dl);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

int max_weight_bound(int order, int k) {
  if (order < 0 || k < 1) fail(ErrorCode::kInvalidArgument, "need order >= 0 and k >= 1");
  return (order + 1) * k - order;
}

int default_split_threshold(int order, int k) {
  const int w = max_weight_bound(order, k);
  return (w + 1) / 2;
}

double nontrivial_size_bound(int num_sites, int order, int k) {
  const int m = std::min(max_weight_bound(order, k), num_sites);
  return binomial(num_sites, m) * std::pow(4.0, m);
}

std::vector<SparsityViolation> sparsity_check(const DissipatorMatrix& a, int order,
                                              const LocalityProfile& profile, double tol) {
  const int bound = max_weight_bound(order, profile.k);
  std::vector<SparsityViolation> out;
  const auto& idx = a.index_set();
  for (std::size_t j = 0; j < idx.size(); ++j) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[j].weight() + idx[k].weight() <= bound) continue;
      const double mag =
          std::abs(a.entries()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)));
      if (mag > tol) out.push_back({idx[j], idx[k], mag});
    }
  }
  return out;
}

BlockStructure block_partition(const DissipatorMatrix& a, double tol) {
  const auto& m = a.entries();
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto active = touching(m, tol);
  for (auto r : active) {
    for (auto c : active) {
      if (c <= r || std::abs(m(r, c)) <= tol) continue;
      const auto pr = find(static_cast<std::size_t>(r));
      const auto pc = find(static_cast<std::size_t>(c));
      if (pr != pc) parent[std::max(pr, pc)] = std::min(pr, pc);
    }
  }

  BlockStructure out;
  out.d_n = active.size();
  std::vector<std::vector<Eigen::Index>> members;
  std::vector<std::size_t> root_of_block;
  for (auto r : active) {
    const auto root = find(static_cast<std::size_t>(r));
    auto it = std::find(root_of_block.begin(), root_of_block.end(), root);
    if (it == root_of_block.end()) {
      root_of_block.push_back(root);
      members.push_back({r});
    } else {
      members[static_cast<std::size_t>(it - root_of_block.begin())].push_back(r);
    }
  }
  for (const auto& pos : members) {
    Block b;
    for (auto p : pos) b.indices.push_back(a.index_set()[static_cast<std::size_t>(p)]);
    b.matrix = principal(m, pos);
    b.spectrum = herm_eigvals(0.5 * (b.matrix + b.matrix.adjoint()));
    out.blocks.push_back(std::move(b));
  }
  return out;
}

TriangularSplit triangular_split(const ComplexMatrix& m, int upper_size, double tol) {
  if (m.rows() != m.cols()) fail(ErrorCode::kDimensionMismatch, "split of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (upper_size < 0 || upper_size > n) fail(ErrorCode::kInvalidArgument, "bad upper block size");
  const Eigen::Index e = upper_size;
  const Eigen::Index rest = n - e;
  if (rest > 0 && max_abs(m.bottomRightCorner(rest, rest)) > tol) {
    fail(ErrorCode::kStructureViolation,
         "lower-right block is nonzero (" + std::to_string(max_abs(m.bottomRightCorner(rest, rest))) +
             "); the weight split does not match the drive's locality");
  }
  TriangularSplit out;
  out.e_n = static_cast<int>(e);
  out.a_tilde = m.topLeftCorner(e, e);
  out.b_tilde = m.topRightCorner(e, rest);
  if (out.b_tilde.size() > 0) {
    Eigen::JacobiSVD<ComplexMatrix> svd(out.b_tilde);
    const auto& sv = svd.singularValues();
    const double cut = 1e-10 * sv(0);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cut && sv(i) > 0.0) ++out.rank_b;
    }
  }
  if (n > 0) {
    ComplexMatrix assembled = m;
    assembled.bottomRightCorner(rest, rest).setZero();
    out.spectrum = herm_eigvals(0.5 * (assembled + assembled.adjoint()));
    const double neg_cut = -1e-13 * std::max(max_abs(m), 1e-300);
    for (Eigen::Index i = 0; i < out.spectrum.size(); ++i) {
      if (out.spectrum(i) < neg_cut) ++out.negative_count;
    }
  }
  out.bound_holds = out.negative_count >= out.rank_b;
  return out;
}

TriangularSplit triangular_split(const DissipatorMatrix& a, int weight_threshold, double tol) {
  const auto active = touching(a.entries(), tol);
  std::vector<Eigen::Index> upper, lower;
  for (auto p : active) {
    if (a.index_set()[static_cast<std::size_t>(p)].weight() <= weight_threshold) {
      upper.push_back(p);
    } else {
      lower.push_back(p);
    }
  }
  std::vector<Eigen::Index> order = upper;
  order.insert(order.end(), lower.begin(), lower.end());
  return triangular_split(principal(a.entries(), order), static_cast<int>(upper.size()), tol);
}

double coefficient_bound(int order, const LocalityProfile& p) {
  const double x = 2.0 * p.k * p.J * p.period;
  return std::pow(x, order) / (order + 1) * p.J * std::tgamma(order + 1.0) *
         std::ldexp(1.0, p.num_sites);
}

CoefficientBoundReport coefficient_bound_check(const FMExpansion& terms,
                                               const LocalityProfile& profile,
                                               bool locality_limited) {
  CoefficientBoundReport rep;
  for (std::size_t i = 0; i < terms.order_terms.size(); ++i) {
    const int order = static_cast<int>(i);
    std::optional<int> limit;
    if (locality_limited) limit = max_weight_bound(order, profile.k);
    const DissipatorMatrix a = extract_dissipator(terms.order_terms[i], limit);
    OrderBound ob;
    ob.order = order;
    ob.max_entry = max_abs(a.entries());
    ob.bound = coefficient_bound(order, profile);
    ob.ratio = ob.bound > 0.0 ? ob.max_entry / ob.bound : 0.0;
    rep.max_ratio = std::max(rep.max_ratio, ob.ratio);
    rep.holds = rep.holds && ob.max_entry <= ob.bound;
    rep.orders.push_back(ob);
  }
  return rep;
}

int drive_locality(const PiecewiseLiouvillian& drive) {
  int k = 1;
  for (const auto& seg : drive.segments()) {
    if (!seg.supports_declared()) {
      fail(ErrorCode::kCannotCompute, "locality needs every term tagged with its support");
    }
    for (const auto& t : seg.hamiltonian_terms()) k = std::max(k, static_cast<int>(t.support.size()));
    for (const auto& j : seg.jumps()) k = std::max(k, 2 * static_cast<int>(j.support.size()));
  }
  return k;
}

double extensiveness(const PiecewiseLiouvillian& drive) {
  const int num_sites = drive.num_sites();
  std::vector<double> per_site(static_cast<std::size_t>(num_sites), 0.0);
  for (const auto& seg : drive.segments()) {
    if (!seg.supports_declared()) {
      fail(ErrorCode::kCannotCompute, "extensiveness needs every term tagged with its support");
    }
    auto add = [&](const std::vector<int>& support, double norm) {
      for (int s : support) per_site[static_cast<std::size_t>(s)] += norm;
    };
    for (const auto& t : seg.hamiltonian_terms()) {
      const ComplexMatrix local = restrict_to_support(t.op, t.support, num_sites);
      add(t.support, spectral_norm(liouvillian_superop(local, {}).matrix()));
    }
    for (const auto& j : seg.jumps()) {
      const ComplexMatrix local = restrict_to_support(j.op, j.support, num_sites);
      const ComplexMatrix zero = ComplexMatrix::Zero(local.rows(), local.cols());
      const Jump lj{j.rate, local, {}};
      add(j.support, spectral_norm(liouvillian_superop(zero, std::span<const Jump>(&lj, 1)).matrix()));
    }
  }
  return *std::max_element(per_site.begin(), per_site.end());
}

}  // namespace floqlind
