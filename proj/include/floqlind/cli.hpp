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

// Configuration and command implementations behind the `floqlind` tool. The
// executable in tools/ only parses flags and dispatches here.

#ifndef FLOQLIND_CLI_HPP
#define FLOQLIND_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floqlind/magnus.hpp"
#include "floqlind/models.hpp"

namespace floqlind::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitAllBranchFailures = 4,
};

struct GridSpec {
  std::string param;
  std::vector<double> values;  // strictly increasing, non-empty
};

struct PauliTerm {
  std::string pauli;
  Complex coeff{1.0, 0.0};
};

struct CustomJump {
  double rate = 0.0;
  std::vector<PauliTerm> op;
};

struct CustomSegment {
  double duration = 0.0;
  std::vector<PauliTerm> hamiltonian;  // real coefficients
  std::vector<CustomJump> jumps;
};

struct CustomDrive {
  int num_sites = 1;
  std::vector<CustomSegment> segments;
};

struct CompareSpec {
  GridSpec tau;  // model tau, or duration scale factor for custom drives
  std::string initial_state = "up";
  int m_max = 20;
};

struct AnalysisConfig {
  std::optional<ModelParams> model;
  std::optional<CustomDrive> drive;
  std::vector<int> orders{0, 1, 2};
  ExpansionFlavor flavor = ExpansionFlavor::kFloquetMagnus;
  int harmonic_cutoff = kDefaultHarmonicCutoff;
  std::optional<double> tol_psd;  // default: 1e-9 * max(1, ||a||_max)
  double tol_herm = 1e-10;
  double tol_block = 1e-10;  // relative to max(1, ||a||_max)
  // nullopt = auto: locality bound for L >= 4, full extraction below.
  std::optional<int> weight_limit;
  bool force_full = false;
  std::optional<GridSpec> scan;
  std::optional<GridSpec> fit;
  std::optional<CompareSpec> compare;
  std::string output;
};

/// Parses and validates a config document. Throws Error(kConfig) with the
/// offending field path in the message.
AnalysisConfig parse_config(const nlohmann::json& doc);
AnalysisConfig load_config(const std::string& path);

PiecewiseLiouvillian build_drive(const AnalysisConfig& config);

/// Copy of the config with one drive parameter replaced (model fields, the
/// derived jz_tau / jx_tau / h_tau / tau_over_tau_max, or time_scale for
/// custom drives).
AnalysisConfig with_param(const AnalysisConfig& config, const std::string& param, double value);

nlohmann::json model_to_json(const ModelParams& params);
nlohmann::json metadata(const AnalysisConfig& config);

nlohmann::json cmd_analyze(const AnalysisConfig& config);
std::string cmd_scan(const AnalysisConfig& config);
nlohmann::json cmd_fit_modelc(const AnalysisConfig& config);
/// Fills `exit_code` with kExitAllBranchFailures when no grid point admits a
/// principal logarithm.
nlohmann::json cmd_compare_exact(const AnalysisConfig& config, int* exit_code = nullptr);

/// printf("%.17g"): 17 significant digits, round-trip exact.
std::string format_double(double value);

}  // namespace floqlind::cli

#endif  // FLOQLIND_CLI_HPP
