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

#include "floqlind/magnus.hpp"

#include <cmath>
#include <numbers>

namespace floqlind {

namespace {

constexpr const char* kModule = "magnus";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

FMExpansion finish(std::vector<Superoperator> terms, ExpansionFlavor flavor) {
  FMExpansion out;
  out.flavor = flavor;
  out.max_order = static_cast<int>(terms.size()) - 1;
  Superoperator acc = Superoperator::zero(terms.front().system_dim());
  for (const auto& t : terms) {
    acc += t;
    out.cumulative.push_back(acc);
  }
  out.order_terms = std::move(terms);
  return out;
}

bool is_binary_equal(const PiecewiseLiouvillian& drive) {
  if (drive.num_segments() != 2) return false;
  const double t1 = drive.segments()[0].duration();
  const double t2 = drive.segments()[1].duration();
  return std::abs(t1 - t2) <= 1e-12 * std::max(t1, t2);
}

Superoperator time_average(const PiecewiseLiouvillian& drive) {
  Superoperator avg = Superoperator::zero(drive.dim());
  for (std::size_t s = 0; s < drive.num_segments(); ++s) {
    avg += (drive.segments()[s].duration() / drive.period()) * drive.generator(s);
  }
  return avg;
}

// e^{-i 2 pi m t_end/T} - e^{-i 2 pi m t_start/T} scaled by i/(2 pi m).
Complex fourier_weight(const PiecewiseLiouvillian& drive, std::size_t s, int m) {
  const double period = drive.period();
  const double start = drive.segment_start(s);
  const double end = start + drive.segments()[s].duration();
  const double k = 2.0 * std::numbers::pi * m / period;
  const Complex e_end = std::polar(1.0, -k * end);
  const Complex e_start = std::polar(1.0, -k * start);
  return Complex(0.0, 1.0 / (2.0 * std::numbers::pi * m)) * (e_end - e_start);
}

}  // namespace

std::string_view to_string(ExpansionFlavor flavor) {
  return flavor == ExpansionFlavor::kVanVleck ? "vanvleck" : "fm";
}

FMExpansion bch_orders(const PiecewiseLiouvillian& drive, int max_order) {
  if (!is_binary_equal(drive)) {
    fail(ErrorCode::kInvalidArgument, "BCH closed forms need two segments of equal duration");
  }
  if (max_order < 0 || max_order > 3) {
    fail(ErrorCode::kUnsupportedOrder, "BCH closed forms are available for orders 0..3");
  }
  const double tau = drive.segments()[0].duration();
  const Superoperator& l1 = drive.generator(0);
  const Superoperator& l2 = drive.generator(1);

  std::vector<Superoperator> terms;
  terms.push_back(0.5 * (l1 + l2));
  if (max_order >= 1) {
    const Superoperator c21 = commutator(l2, l1);
    terms.push_back((tau / 4.0) * c21);
    if (max_order >= 2) {
      terms.push_back((tau * tau / 24.0) * commutator(l2 - l1, c21));
    }
    if (max_order >= 3) {
      // [L1, L2] = -c21
      const Superoperator inner = commutator(l2, -1.0 * c21);
      terms.push_back((tau * tau * tau / 48.0) * commutator(l1, inner));
    }
  }
  return finish(std::move(terms), ExpansionFlavor::kFloquetMagnus);
}

FMExpansion fm_general(const PiecewiseLiouvillian& drive, int max_order) {
  if (max_order < 0 || max_order > 1) {
    fail(ErrorCode::kUnsupportedOrder, "general piecewise drives support orders 0 and 1");
  }
  std::vector<Superoperator> terms;
  terms.push_back(time_average(drive));
  if (max_order == 1) {
    Superoperator first = Superoperator::zero(drive.dim());
    for (std::size_t a = 1; a < drive.num_segments(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        const double w = drive.segments()[a].duration() * drive.segments()[b].duration();
        first += w * commutator(drive.generator(a), drive.generator(b));
      }
    }
    terms.push_back((0.5 / drive.period()) * first);
  }
  return finish(std::move(terms), ExpansionFlavor::kFloquetMagnus);
}

FMExpansion fm_expansion(const PiecewiseLiouvillian& drive, int max_order) {
  if (is_binary_equal(drive)) return bch_orders(drive, max_order);
  return fm_general(drive, max_order);
}

Superoperator fourier_component(const PiecewiseLiouvillian& drive, int m) {
  if (m == 0) return time_average(drive);
  Superoperator out = Superoperator::zero(drive.dim());
  for (std::size_t s = 0; s < drive.num_segments(); ++s) {
    out += fourier_weight(drive, s, m) * drive.generator(s);
  }
  return out;
}

FMExpansion van_vleck_orders(const PiecewiseLiouvillian& drive, int harmonic_cutoff) {
  if (harmonic_cutoff < 1) fail(ErrorCode::kInvalidArgument, "harmonic cutoff must be >= 1");
  const std::size_t n = drive.num_segments();
  const double omega = 2.0 * std::numbers::pi / drive.period();

  // [L_{-m}, L_m] = sum_{s<t} (c_s(-m) c_t(m) - c_t(-m) c_s(m)) [L_s, L_t], so
  // only the scalar weights depend on m. The weights are purely imaginary; the
  // factor -i makes the term hermiticity-preserving (H = iL in the Hamiltonian
  // van Vleck series) and the 1/(m omega) normalization is the sum over +-m.
  struct Pair {
    Superoperator comm;
    Complex total{0.0, 0.0};
  };
  std::vector<Pair> pairs;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      pairs.push_back({commutator(drive.generator(s), drive.generator(t)), {}});
    }
  }
  for (int m = 1; m <= harmonic_cutoff; ++m) {
    std::size_t p = 0;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = s + 1; t < n; ++t, ++p) {
        const Complex w = Complex(0.0, -1.0) *
                          (fourier_weight(drive, s, -m) * fourier_weight(drive, t, m) -
                           fourier_weight(drive, t, -m) * fourier_weight(drive, s, m)) /
                          (m * omega);
        pairs[p].total += w;
      }
    }
  }

  // |c_s(m)| <= 1/(pi m) bounds every pair weight by 2/(pi^2 omega m^3), and
  // sum_{m>M} m^-3 <= 1/(2 M^2).
  Superoperator first = Superoperator::zero(drive.dim());
  double tail = 0.0;
  for (const auto& pr : pairs) {
    first += pr.total * pr.comm;
    tail += pr.comm.matrix().norm();
  }
  const double mc = harmonic_cutoff;
  tail /= std::numbers::pi * std::numbers::pi * omega * mc * mc;
  std::vector<Superoperator> terms{time_average(drive), std::move(first)};
  FMExpansion out = finish(std::move(terms), ExpansionFlavor::kVanVleck);
  out.harmonic_cutoff = harmonic_cutoff;
  out.tail_estimate = tail;
  return out;
}

Superoperator floquet_propagator(const PiecewiseLiouvillian& drive) {
  const auto d2 = static_cast<Eigen::Index>(drive.dim()) * drive.dim();
  ComplexMatrix u = ComplexMatrix::Identity(d2, d2);
  for (std::size_t s = 0; s < drive.num_segments(); ++s) {
    const ComplexMatrix step =
        matrix_exp(drive.segments()[s].duration() * drive.generator(s).matrix());
    u = step * u;
  }
  return Superoperator(std::move(u), drive.dim());
}

Superoperator exact_effective(const PiecewiseLiouvillian& drive, const LogOptions& options) {
  const Superoperator u = floquet_propagator(drive);
  return Superoperator(matrix_log_principal(u.matrix(), options) / drive.period(), drive.dim());
}

}  // namespace floqlind
