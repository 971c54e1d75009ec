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

// High-frequency expansions of a piecewise-constant periodic generator.

#ifndef FLOQLIND_MAGNUS_HPP
#define FLOQLIND_MAGNUS_HPP

#include <string_view>
#include <vector>

#include "floqlind/lindblad.hpp"

namespace floqlind {

enum class ExpansionFlavor { kFloquetMagnus, kVanVleck };

std::string_view to_string(ExpansionFlavor flavor);

struct FMExpansion {
  std::vector<Superoperator> order_terms;  // L^(0), ..., L^(n)
  std::vector<Superoperator> cumulative;   // L^0, ..., L^n
  ExpansionFlavor flavor = ExpansionFlavor::kFloquetMagnus;
  int max_order = 0;
  // van Vleck only: harmonic cutoff and estimated truncation error of order 1
  // (Frobenius norm).
  int harmonic_cutoff = 0;
  double tail_estimate = 0.0;
};

/// Closed-form BCH terms for a two-segment drive with equal durations tau:
///   L^(0) = (L1 + L2)/2
///   L^(1) = (tau/4)   [L2, L1]
///   L^(2) = (tau^2/24)[L2 - L1, [L2, L1]]
///   L^(3) = (tau^3/48)[L1, [L2, [L1, L2]]]
FMExpansion bch_orders(const PiecewiseLiouvillian& drive, int max_order);

/// Integral formulas for any number of segments, orders 0 and 1.
FMExpansion fm_general(const PiecewiseLiouvillian& drive, int max_order);

/// bch_orders for binary equal-duration drives, fm_general otherwise.
FMExpansion fm_expansion(const PiecewiseLiouvillian& drive, int max_order);

/// (1/T) int_0^T L(t) exp(-i 2 pi m t / T) dt.
Superoperator fourier_component(const PiecewiseLiouvillian& drive, int m);

inline constexpr int kDefaultHarmonicCutoff = 200;

/// Orders 0 and 1 of the van Vleck expansion,
///   L_vV^(1) = -i sum_{m=1}^{M} [L_{-m}, L_m] / (m omega).
FMExpansion van_vleck_orders(const PiecewiseLiouvillian& drive,
                             int harmonic_cutoff = kDefaultHarmonicCutoff);

/// exp(L_n tau_n) ... exp(L_1 tau_1).
Superoperator floquet_propagator(const PiecewiseLiouvillian& drive);

/// log(floquet_propagator) / T on the principal branch.
Superoperator exact_effective(const PiecewiseLiouvillian& drive, const LogOptions& options = {});

}  // namespace floqlind

#endif  // FLOQLIND_MAGNUS_HPP
