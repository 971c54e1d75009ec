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

// floqlind: Liouvillianity of Floquet-Magnus and van Vleck expansions.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "floqlind/cli.hpp"
#include "floqlind/errors.hpp"

namespace {

using namespace floqlind;
using namespace floqlind::cli;

struct Flags {
  std::string config;
  std::string out;
  std::optional<double> tol_psd;
  std::optional<int> order;
  std::optional<std::string> flavor;
};

AnalysisConfig load(const Flags& f) {
  AnalysisConfig c = load_config(f.config);
  if (f.tol_psd) {
    if (!(*f.tol_psd >= 0.0)) throw Error(ErrorCode::kConfig, "cli", "--tol-psd must be >= 0");
    c.tol_psd = f.tol_psd;
  }
  if (f.order) {
    if (*f.order < 0 || *f.order > 3) throw Error(ErrorCode::kConfig, "cli", "--order must be in 0..3");
    c.orders.clear();
    for (int n = 0; n <= *f.order; ++n) c.orders.push_back(n);
  }
  if (f.flavor) c.flavor = *f.flavor == "vanvleck" ? ExpansionFlavor::kVanVleck : ExpansionFlavor::kFloquetMagnus;
  if (c.flavor == ExpansionFlavor::kVanVleck && c.orders.back() > 1) {
    throw Error(ErrorCode::kConfig, "cli", "the van Vleck expansion is available up to order 1");
  }
  return c;
}

void emit(const Flags& f, const AnalysisConfig& c, const std::string& text) {
  const std::string path = !f.out.empty() ? f.out : c.output;
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kConfig, "cli", "cannot write " + path);
  os << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liouvillianity of high-frequency expansions of periodically driven Lindbladians"};
  app.require_subcommand(1);
  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Configuration file (JSON)")->required();
    sub->add_option("--out", flags.out, "Output path (default: config 'output' or stdout)");
    sub->add_option("--tol-psd", flags.tol_psd, "Absolute PSD tolerance for the dissipator matrix");
    sub->add_option("--order", flags.order, "Compute orders 0..N");
    sub->add_option("--flavor", flags.flavor, "Expansion flavor")->check(CLI::IsMember({"fm", "vanvleck"}));
  };
  auto* analyze = app.add_subcommand("analyze", "Per-order Liouvillianity report (JSON)");
  auto* scan = app.add_subcommand("scan", "Parameter scan (CSV)");
  auto* fit = app.add_subcommand("fit-modelc", "Cubic fit of the model C breaking degree (JSON)");
  auto* compare = app.add_subcommand("compare-exact", "Exact effective generator vs truncations (JSON)");
  for (auto* s : {analyze, scan, fit, compare}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const AnalysisConfig c = load(flags);
    int rc = kExitOk;
    if (analyze->parsed()) {
      emit(flags, c, dump(cmd_analyze(c)));
    } else if (scan->parsed()) {
      emit(flags, c, cmd_scan(c));
    } else if (fit->parsed()) {
      emit(flags, c, dump(cmd_fit_modelc(c)));
    } else {
      emit(flags, c, dump(cmd_compare_exact(c, &rc)));
      if (rc != kExitOk) std::cerr << "floqlind: principal logarithm failed at every grid point\n";
    }
    return rc;
  } catch (const Error& e) {
    std::cerr << "floqlind: " << e.what() << " [" << to_string(e.code()) << "]\n";
    return e.code() == ErrorCode::kConfig ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "floqlind: " << e.what() << "\n";
    return kExitNumerical;
  }
}
