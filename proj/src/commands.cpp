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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "floqlind/cli.hpp"
#include "floqlind/dynamics.hpp"
#include "floqlind/liouvillianity.hpp"
#include "floqlind/locality.hpp"

namespace floqlind::cli {

using nlohmann::json;

namespace {

// Published cubic for the normalized model-C order-2 minimum eigenvalue.
constexpr double kModelCFit[4] = {-0.667, 0.0197, -3.08, 2.84};
constexpr double kModelCFitRmse = 3.25e-4;

// Runs fn(i) for i in [0, n) on a small worker pool. Results are written by
// index, so output order never depends on scheduling; the first failure in
// index order is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(n, hw);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

int max_order(const AnalysisConfig& c) { return c.orders.back(); }

FMExpansion expansion(const AnalysisConfig& c, const PiecewiseLiouvillian& drive, int order) {
  if (c.flavor == ExpansionFlavor::kVanVleck) return van_vleck_orders(drive, c.harmonic_cutoff);
  return fm_expansion(drive, order);
}

std::optional<int> locality_of(const PiecewiseLiouvillian& drive) {
  try {
    return drive_locality(drive);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<int> weight_limit(const AnalysisConfig& c, const PiecewiseLiouvillian& drive,
                                int order) {
  if (c.force_full) return std::nullopt;
  if (c.weight_limit) return c.weight_limit;
  if (drive.num_sites() < 4) return std::nullopt;
  const auto k = locality_of(drive);
  if (!k) return std::nullopt;
  return max_weight_bound(order, *k);
}

std::string extraction_label(const std::optional<int>& limit) {
  return limit ? "weight_limit=" + std::to_string(*limit) : "full";
}

json labels(const std::vector<MultiIndex>& idx) {
  json out = json::array();
  for (const auto& i : idx) out.push_back(i.to_string());
  return out;
}

json vector_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

ComplexMatrix initial_state(const std::string& name, int num_sites) {
  const Eigen::Index d = Eigen::Index{1} << num_sites;
  if (name == "mixed") return ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  ComplexVector psi = ComplexVector::Zero(d);
  if (name == "up") {
    psi(0) = 1.0;
  } else if (name == "down") {
    psi(d - 1) = 1.0;
  } else {
    psi.setConstant(1.0 / std::sqrt(static_cast<double>(d)));
  }
  return psi * psi.adjoint();
}

// Max entrywise deviation of the extraction from a reference; per-site
// references are compared against every ring translation.
double reference_deviation(const DissipatorMatrix& a, const AnalyticReference& ref) {
  const int shifts = ref.per_site_block ? a.num_sites() : 1;
  double worst = 0.0;
  for (int s = 0; s < shifts; ++s) {
    std::vector<MultiIndex> basis;
    for (const auto& idx : ref.basis) basis.push_back(idx.translated(s));
    ComplexMatrix sub(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a.at(basis[i], basis[j]);
      }
    }
    worst = std::max(worst, max_abs(sub - ref.matrix));
  }
  return worst;
}

// Least-squares polynomial fit of the given degree.
Eigen::VectorXd polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd v(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k <= degree; ++k, p *= x[static_cast<std::size_t>(i)]) v(i, k) = p;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  if (qr.rank() < degree + 1) {
    throw Error(ErrorCode::kCannotCompute, "cli", "fit is underdetermined");
  }
  return qr.solve(rhs);
}

double polyval(const double* c, int degree, double x) {
  double acc = 0.0;
  for (int k = degree; k >= 0; --k) acc = acc * x + c[k];
  return acc;
}

}  // namespace

json model_to_json(const ModelParams& p) {
  return json{{"name", to_string(p.name)}, {"h", p.h},   {"gamma1", p.gamma1},
              {"gamma2", p.gamma2},        {"gamma", p.gamma}, {"jz", p.jz},
              {"jx", p.jx},                {"tau", p.tau}, {"L", p.num_sites}};
}

json metadata(const AnalysisConfig& c) {
  json m;
  m["tol_psd"] = c.tol_psd ? json(*c.tol_psd) : json("1e-9*max(1,max|a|)");
  m["tol_herm"] = c.tol_herm;
  m["tol_block"] = c.tol_block;
  m["tol_candidate"] = kCandidateTolerance;
  m["channel_drop"] = kChannelDropThreshold;
  m["flavor"] = std::string(to_string(c.flavor));
  if (c.flavor == ExpansionFlavor::kVanVleck) m["harmonic_cutoff"] = c.harmonic_cutoff;
  m["weight_limit"] = c.force_full ? json("full")
                                   : (c.weight_limit ? json(*c.weight_limit) : json("auto"));
  return m;
}

json cmd_analyze(const AnalysisConfig& c) {
  const PiecewiseLiouvillian drive = build_drive(c);
  const FMExpansion fm = expansion(c, drive, max_order(c));
  const auto k = locality_of(drive);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "analyze";
  doc["metadata"] = metadata(c);
  if (c.model) doc["model"] = model_to_json(*c.model);
  doc["num_sites"] = drive.num_sites();
  doc["period"] = drive.period();
  if (fm.flavor == ExpansionFlavor::kVanVleck) doc["vanvleck_tail_estimate"] = fm.tail_estimate;

  std::optional<LocalityProfile> profile;
  if (k) {
    profile = LocalityProfile{*k, extensiveness(drive), drive.period(), drive.num_sites()};
    doc["locality_k"] = *k;
    doc["extensiveness_J"] = profile->J;
  } else {
    doc["locality_k"] = nullptr;
    doc["extensiveness_J"] = nullptr;
  }

  json orders = json::array();
  double order0_scale = 1.0;
  for (int n : c.orders) {
    const auto limit = weight_limit(c, drive, n);
    const DissipatorMatrix a = extract_dissipator(fm.cumulative[static_cast<std::size_t>(n)], limit);
    const LiouvillianityReport rep = psd_report(a, c.tol_psd);
    json o;
    o["order"] = n;
    o["extraction"] = extraction_label(limit);
    o["min_eigenvalue"] = rep.min_eigenvalue;
    o["is_liouvillian"] = rep.is_liouvillian;
    o["breaking_degree"] = rep.breaking_degree;
    o["tol_psd"] = rep.tol_psd;
    o["spectrum"] = vector_json(rep.spectrum);
    json witness = json::array();
    for (Eigen::Index i = 0; i < rep.witness.size(); ++i) {
      if (std::abs(rep.witness(i)) > 1e-6) {
        witness.push_back({{"index", a.index_set()[static_cast<std::size_t>(i)].to_string()},
                           {"re", rep.witness(i).real()},
                           {"im", rep.witness(i).imag()}});
      }
    }
    o["witness"] = witness;

    // Order-term structure.
    const auto term_limit = weight_limit(c, drive, n);
    const DissipatorMatrix term = extract_dissipator(fm.order_terms[static_cast<std::size_t>(n)], term_limit);
    if (n == 0) order0_scale = std::max(1.0, max_abs(term.entries()));
    const double term_max = max_abs(term.entries());
    const double trace = term.entries().trace().real();
    json t;
    t["trace"] = trace;
    t["trace_vanishes"] = n == 0 || std::abs(trace) <= 1e-9 * order0_scale;
    t["is_zero"] = term_max <= 1e-10 * order0_scale;
    t["max_abs"] = term_max;
    if (profile && fm.flavor == ExpansionFlavor::kFloquetMagnus) {
      const double bound = coefficient_bound(n, *profile);
      t["coefficient_bound"] = bound;
      t["bound_ratio"] = term_max / bound;
    }
    o["order_term"] = t;

    const double tol_b = c.tol_block * std::max(1.0, max_abs(a.entries()));
    const BlockStructure bs = block_partition(a, tol_b);
    json blocks = json::array();
    for (const auto& b : bs.blocks) {
      blocks.push_back({{"indices", labels(b.indices)}, {"min_eigenvalue", b.spectrum(0)}});
    }
    json bj;
    bj["d_n"] = bs.d_n;
    if (k) bj["d_n_bound"] = nontrivial_size_bound(drive.num_sites(), n, *k);
    bj["count"] = bs.blocks.size();
    bj["blocks"] = blocks;
    o["blocks"] = bj;

    o["roundtrip_residual"] = drive.num_sites() <= 5
                                  ? json(roundtrip_residual(fm.cumulative[static_cast<std::size_t>(n)]))
                                  : json(nullptr);

    if (c.model && fm.flavor == ExpansionFlavor::kFloquetMagnus) {
      try {
        const AnalyticReference ref = analytic_reference(*c.model, n);
        json r;
        r["basis"] = labels(ref.basis);
        r["per_site_block"] = ref.per_site_block;
        r["max_deviation"] = reference_deviation(a, ref);
        if (ref.min_eigenvalue) r["min_eigenvalue"] = *ref.min_eigenvalue;
        if (ref.tau_max) r["tau_max"] = *ref.tau_max;
        o["reference"] = r;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoReference) throw;
        o["reference"] = nullptr;
      }
    }
    orders.push_back(o);
  }
  doc["orders"] = orders;
  return doc;
}

std::string cmd_scan(const AnalysisConfig& c) {
  if (!c.scan || c.scan->values.empty()) {
    throw Error(ErrorCode::kConfig, "config", "scan: a non-empty grid is required");
  }
  const GridSpec& grid = *c.scan;
  // Validate every grid point before spending time on any of them.
  for (double v : grid.values) (void)with_param(c, grid.param, v);

  using Rows = std::vector<std::string>;
  const auto rows = parallel_map<Rows>(grid.values.size(), [&](std::size_t i) {
    const AnalysisConfig pc = with_param(c, grid.param, grid.values[i]);
    const PiecewiseLiouvillian drive = build_drive(pc);
    const FMExpansion fm = expansion(pc, drive, max_order(pc));
    Rows out;
    for (int n : pc.orders) {
      const DissipatorMatrix a =
          extract_dissipator(fm.cumulative[static_cast<std::size_t>(n)], weight_limit(pc, drive, n));
      const LiouvillianityReport rep = psd_report(a, pc.tol_psd);
      out.push_back(format_double(grid.values[i]) + "," + std::to_string(n) + "," +
                    format_double(rep.min_eigenvalue) + "," +
                    (rep.is_liouvillian ? "true" : "false") + "," +
                    format_double(rep.breaking_degree));
    }
    return out;
  });
  std::string csv = "param,order,min_eig,verdict,breaking_degree\n";
  for (const auto& r : rows) {
    for (const auto& line : r) csv += line + "\n";
  }
  return csv;
}

json cmd_fit_modelc(const AnalysisConfig& c) {
  if (!c.model || c.model->name != ModelName::kC) {
    throw Error(ErrorCode::kConfig, "config", "fit-modelc needs a model C configuration");
  }
  GridSpec grid;
  if (c.fit) {
    grid = *c.fit;
  } else {
    for (int i = 1; i <= 9; ++i) grid.values.push_back(0.05 * i);
  }
  const ModelParams& base = c.model.value();

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "fit-modelc";
  doc["metadata"] = metadata(c);
  doc["model"] = model_to_json(base);
  json warnings = json::array();
  for (double x : grid.values) {
    if (!(x > 0.0 && x < 0.5)) {
      warnings.push_back("jz_tau = " + format_double(x) + " lies outside the fit window (0, 0.5)");
    }
  }
  doc["grid"] = grid.values;
  doc["reference"] = {{"coefficients", kModelCFit}, {"rmse", kModelCFitRmse}};

  const int L = base.num_sites;
  const double norm0 = std::ldexp(base.gamma, L - 1);
  if (!(norm0 > 0.0) || base.jz == 0.0) {
    warnings.push_back("degenerate input: gamma and jz must be nonzero for the normalization");
    doc["warnings"] = warnings;
    doc["fit"] = nullptr;
    doc["error"] = "degenerate input";
    return doc;
  }

  struct Point {
    double global = 0.0;
    double block = 0.0;
  };
  const auto points = parallel_map<Point>(grid.values.size(), [&](std::size_t i) {
    const double x = grid.values[i];
    AnalysisConfig pc = with_param(c, "jz_tau", x);
    const PiecewiseLiouvillian drive = build_drive(pc);
    const FMExpansion fm = bch_orders(drive, 2);
    const DissipatorMatrix a = extract_dissipator(fm.cumulative[2], weight_limit(pc, drive, 2));
    Point p;
    p.global = psd_report(a, pc.tol_psd).min_eigenvalue;
    p.block = std::numeric_limits<double>::infinity();
    for (int s = 0; s < L; ++s) {
      const ComplexMatrix blk = a.submatrix(model_c_block_basis(L, s));
      p.block = std::min(p.block, herm_eigvals(blk)(0));
    }
    const double scale = norm0 * x * x;
    p.global /= scale;
    p.block /= scale;
    return p;
  });

  std::vector<double> g, b, dev;
  for (std::size_t i = 0; i < points.size(); ++i) {
    g.push_back(points[i].global);
    b.push_back(points[i].block);
    dev.push_back(std::abs(points[i].global - polyval(kModelCFit, 3, grid.values[i])));
  }
  doc["normalized_min_eig"] = g;
  doc["normalized_block_min_eig"] = b;
  doc["deviation_from_reference"] = dev;
  doc["max_deviation_from_reference"] = *std::max_element(dev.begin(), dev.end());

  auto fit_json = [&](const std::vector<double>& y) -> json {
    try {
      const Eigen::VectorXd coef = polyfit(grid.values, y, 3);
      double sse = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - polyval(coef.data(), 3, grid.values[i]);
        sse += r * r;
      }
      return json{{"coefficients", std::vector<double>(coef.data(), coef.data() + 4)},
                  {"rmse", std::sqrt(sse / static_cast<double>(y.size()))}};
    } catch (const Error& e) {
      return json{{"error", e.what()}};
    }
  };
  doc["fit"] = fit_json(g);
  doc["fit_block"] = fit_json(b);
  doc["warnings"] = warnings;
  return doc;
}

json cmd_compare_exact(const AnalysisConfig& c, int* exit_code) {
  if (exit_code) *exit_code = kExitOk;
  if (!c.compare) {
    throw Error(ErrorCode::kConfig, "config", "compare-exact needs a 'compare' section");
  }
  const CompareSpec& spec = *c.compare;
  const std::string param = c.drive ? "time_scale" : "tau";
  for (double v : spec.tau.values) (void)with_param(c, param, v);

  struct Point {
    bool ok = false;
    std::string error;
    std::vector<double> residuals;
  };
  const auto points = parallel_map<Point>(spec.tau.values.size(), [&](std::size_t i) {
    const AnalysisConfig pc = with_param(c, param, spec.tau.values[i]);
    const PiecewiseLiouvillian drive = build_drive(pc);
    Point p;
    Superoperator exact;
    try {
      exact = exact_effective(drive);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBranchAmbiguity && e.code() != ErrorCode::kConditioning) throw;
      p.error = e.what();
      return p;
    }
    const FMExpansion fm = expansion(pc, drive, max_order(pc));
    for (int n : pc.orders) {
      p.residuals.push_back((exact.matrix() - fm.cumulative[static_cast<std::size_t>(n)].matrix()).norm());
    }
    p.ok = true;
    return p;
  });

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "compare-exact";
  doc["metadata"] = metadata(c);
  if (c.model) doc["model"] = model_to_json(*c.model);
  doc["grid_param"] = param;
  doc["grid"] = spec.tau.values;

  json table = json::array();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    json row{{"tau", spec.tau.values[i]}, {"ok", points[i].ok}};
    if (points[i].ok) {
      row["residuals"] = points[i].residuals;
    } else {
      row["error"] = points[i].error;
      ++failures;
    }
    table.push_back(row);
  }
  doc["table"] = table;

  json slopes = json::object();
  for (std::size_t o = 0; o < c.orders.size(); ++o) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!points[i].ok) continue;
      const double r = points[i].residuals[o];
      if (!(r > 1e-13) || !std::isfinite(r)) continue;
      lx.push_back(std::log(spec.tau.values[i]));
      ly.push_back(std::log(r));
    }
    const std::string key = std::to_string(c.orders[o]);
    if (lx.size() < 2) {
      slopes[key] = nullptr;
    } else {
      slopes[key] = polyfit(lx, ly, 1)(1);
    }
  }
  doc["slopes"] = slopes;

  // Stroboscopic series at the configured (unscaled) drive.
  const PiecewiseLiouvillian drive = build_drive(c);
  const ComplexMatrix rho0 = initial_state(spec.initial_state, drive.num_sites());
  json strobe = json::array();
  for (int n : c.orders) {
    if (c.flavor == ExpansionFlavor::kVanVleck) break;
    const StroboscopicSeries s = stroboscopic_compare(drive, n, rho0, spec.m_max);
    strobe.push_back({{"order", n}, {"errors", s.errors}, {"max_error", s.max_error()}});
  }
  doc["stroboscopic"] = {{"initial_state", spec.initial_state},
                         {"m_max", spec.m_max},
                         {"series", strobe}};
  doc["branch_failures"] = failures;
  if (exit_code && failures == points.size()) *exit_code = kExitAllBranchFailures;
  return doc;
}

}  // namespace floqlind::cli
