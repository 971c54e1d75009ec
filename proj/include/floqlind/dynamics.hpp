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

// Physical consequences of (broken) Liouvillianity: stroboscopic accuracy,
// complete positivity in continuous time, steady states and trajectories.

#ifndef FLOQLIND_DYNAMICS_HPP
#define FLOQLIND_DYNAMICS_HPP

#include <string>
#include <vector>

#include "floqlind/liouvillianity.hpp"
#include "floqlind/magnus.hpp"

namespace floqlind {

double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

struct StroboscopicSeries {
  int order = 0;
  std::vector<double> times;   // m T, m = 0..m_max
  std::vector<double> errors;  // trace distance exact vs truncated
  double max_error() const;
};

/// Exact stroboscopic states versus exp(L_f^n m T) rho0.
StroboscopicSeries stroboscopic_compare(const PiecewiseLiouvillian& drive, int order,
                                        const ComplexMatrix& rho0, int m_max);

/// Choi matrix sum_ij |i><j| (x) Phi(|i><j|) of the map whose row-major
/// superoperator matrix is `map`.
ComplexMatrix choi_matrix(const ComplexMatrix& map, int system_dim);
double choi_min_eig(const ComplexMatrix& map, int system_dim);

struct CPScan {
  std::vector<double> times;
  std::vector<double> min_eigs;
  double worst = 0.0;
  double worst_time = 0.0;
};

inline constexpr int kCPScanPoints = 200;

/// Choi minimum of exp(S t) on t_i = i * span / points, i = 1..points.
CPScan cp_scan(const Superoperator& generator, double span, int points = kCPScanPoints);

struct NESSReport {
  ComplexVector spectrum;  // sorted by descending real part
  std::vector<ComplexMatrix> zero_modes;
  bool all_real_parts_nonpositive = true;
  bool ness_exists = false;
};

NESSReport ness_report(const Superoperator& s);

struct TrajectoryFeasibility {
  ComplexMatrix h_eff;              // H - (i/2) sum s_i L_i^dagger L_i
  ComplexVector eigenvalues;
  double max_imag = 0.0;
  bool lossy = true;                // every Im eigenvalue <= 1e-9
  std::vector<std::size_t> offending;  // negative-sign channels with ||L|| > 1e-8
  bool feasible = true;             // lossy and no offending channel
  std::string description;
};

TrajectoryFeasibility trajectory_feasibility(const SignedLindbladForm& form);

}  // namespace floqlind

#endif  // FLOQLIND_DYNAMICS_HPP
