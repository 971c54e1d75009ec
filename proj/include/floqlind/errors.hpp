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

#ifndef FLOQLIND_ERRORS_HPP
#define FLOQLIND_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace floqlind {

enum class ErrorCode {
  kInvalidIndex,
  kDimensionMismatch,
  kContractViolation,
  kInvalidArgument,
  kBranchAmbiguity,
  kConditioning,
  kUnsupportedOrder,
  kNotCandidate,
  kDecompositionInconsistency,
  kStructureViolation,
  kNoReference,
  kCannotCompute,
  kConfig,
};

std::string_view to_string(ErrorCode code);

/// Library error. Carries a machine-readable code and the module that raised
/// it so the CLI can map failures onto exit codes with provenance.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message),
        code_(code),
        module_(std::move(module)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace floqlind

#endif  // FLOQLIND_ERRORS_HPP
