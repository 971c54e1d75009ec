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

#include "floqlind/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace floqlind {

namespace {

constexpr const char* kModule = "dynamics";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

void require_state(const ComplexMatrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    fail(ErrorCode::kDimensionMismatch, "initial state has the wrong dimension");
  }
  if (!is_hermitian(rho, 1e-10) || std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10) {
    fail(ErrorCode::kInvalidArgument, "initial state must be Hermitian with unit trace");
  }
  if (herm_eigvals(rho)(0) < -1e-10) {
    fail(ErrorCode::kInvalidArgument, "initial state must be positive semidefinite");
  }
}

}  // namespace

double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    fail(ErrorCode::kDimensionMismatch, "trace distance of differently sized matrices");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(rho1 - rho2);
  return 0.5 * svd.singularValues().sum();
}

double StroboscopicSeries::max_error() const {
  return errors.empty() ? 0.0 : *std::max_element(errors.begin(), errors.end());
}

StroboscopicSeries stroboscopic_compare(const PiecewiseLiouvillian& drive, int order,
                                        const ComplexMatrix& rho0, int m_max) {
  require_state(rho0, drive.dim());
  if (m_max < 0) fail(ErrorCode::kInvalidArgument, "m_max must be >= 0");
  const FMExpansion fm = fm_expansion(drive, order);
  const ComplexMatrix u = floquet_propagator(drive).matrix();
  const ComplexMatrix v = matrix_exp(drive.period() * fm.cumulative.back().matrix());

  StroboscopicSeries out;
  out.order = order;
  ComplexVector exact = vectorize(rho0);
  ComplexVector approx = exact;
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0) {
      exact = u * exact;
      approx = v * approx;
    }
    out.times.push_back(m * drive.period());
    out.errors.push_back(trace_distance(devectorize(exact), devectorize(approx)));
  }
  return out;
}

ComplexMatrix choi_matrix(const ComplexMatrix& map, int system_dim) {
  const Eigen::Index d = system_dim;
  if (map.rows() != d * d || map.cols() != d * d) {
    fail(ErrorCode::kDimensionMismatch, "map must be d^2 x d^2");
  }
  // Phi(|i><j|)[a, b] = map[(a b), (i j)] sits at Choi[(i a), (j b)].
  ComplexMatrix choi(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) choi(i * d + a, j * d + b) = map(a * d + b, i * d + j);
      }
    }
  }
  return choi;
}

double choi_min_eig(const ComplexMatrix& map, int system_dim) {
  return herm_eigvals(choi_matrix(map, system_dim), 1e-8)(0);
}

CPScan cp_scan(const Superoperator& generator, double span, int points) {
  if (points < 1 || !(span > 0.0)) fail(ErrorCode::kInvalidArgument, "empty time grid");
  CPScan out;
  out.worst = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= points; ++i) {
    const double t = span * i / points;
    const double e = choi_min_eig(matrix_exp(t * generator.matrix()), generator.system_dim());
    out.times.push_back(t);
    out.min_eigs.push_back(e);
    if (e < out.worst) {
      out.worst = e;
      out.worst_time = t;
    }
  }
  return out;
}

NESSReport ness_report(const Superoperator& s) {
  const ComplexMatrix& m = s.matrix();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) fail(ErrorCode::kConditioning, "eigensolver failed");
  const double scale = std::max(m.norm(), 1e-300);
  const double zero_tol = 1e-8 * scale;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return ev(a).real() > ev(b).real(); });

  NESSReport rep;
  rep.spectrum.resize(m.rows());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Eigen::Index k = order[i];
    const Complex lambda = ev(k);
    rep.spectrum(static_cast<Eigen::Index>(i)) = lambda;
    if (lambda.real() > zero_tol) rep.all_real_parts_nonpositive = false;
    if (std::abs(lambda) > zero_tol) continue;
    ComplexMatrix rho = devectorize(es.eigenvectors().col(k));
    const Complex tr = rho.trace();
    if (std::abs(tr) > 1e-12) rho *= std::conj(tr) / std::abs(tr);
    rho = 0.5 * (rho + rho.adjoint());
    const double rt = rho.trace().real();
    if (std::abs(rt) > 1e-12) rho /= rt;
    rep.zero_modes.push_back(std::move(rho));
  }
  rep.ness_exists = !rep.zero_modes.empty() && rep.all_real_parts_nonpositive;
  return rep;
}

TrajectoryFeasibility trajectory_feasibility(const SignedLindbladForm& form) {
  TrajectoryFeasibility out;
  out.h_eff = form.hamiltonian;
  const Complex half_i(0.0, 0.5);
  for (std::size_t i = 0; i < form.channels.size(); ++i) {
    const auto& ch = form.channels[i];
    out.h_eff -= static_cast<double>(ch.sign) * half_i * (ch.op.adjoint() * ch.op);
    if (ch.sign < 0 && ch.op.norm() > 1e-8) out.offending.push_back(i);
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> es(out.h_eff);
  out.eigenvalues = es.eigenvalues();
  out.max_imag = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    out.max_imag = std::max(out.max_imag, out.eigenvalues(i).imag());
  }
  out.lossy = out.max_imag <= 1e-9;
  out.feasible = out.lossy && out.offending.empty();

  std::ostringstream msg;
  if (out.offending.empty()) {
    msg << "all channels carry positive sign";
  } else {
    msg << out.offending.size() << " channel(s) with negative sign: jump probabilities "
        << "p_i = <psi|L_i^dagger L_i|psi> enter with weight -1";
  }
  if (!out.lossy) msg << "; H_eff has gain (max Im eigenvalue " << out.max_imag << ")";
  out.description = msg.str();
  return out;
}

}  // namespace floqlind
