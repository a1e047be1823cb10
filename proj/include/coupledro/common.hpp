// Copyright 2026 The coupledro Authors
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

#ifndef COUPLEDRO_COMMON_HPP_
#define COUPLEDRO_COMMON_HPP_

#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace coupledro {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Error categories. Every failure raised by the library is an Error carrying
// one of these codes; the CLI maps them onto exit codes.
enum class ErrorCode {
  kMalformedProgram,
  kEmptyCoupledSet,
  kProjectionBlowup,
  kNotDownClosedInput,
  kDimensionCapExceeded,
  kInvalidNormParameters,
  kNotNested,
  kOriginNotContained,
  kUnbounded,
  kInfeasible,
  kNonPolyhedralAtomInRC,
  kVertexCapExceeded,
  kUnsupported,
  kSolverFailure,
  kParseError,
  kAssumptionViolated,
  kIterationLimit,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedProgram: return "MalformedProgram";
    case ErrorCode::kEmptyCoupledSet: return "EmptyCoupledSet";
    case ErrorCode::kProjectionBlowup: return "ProjectionBlowup";
    case ErrorCode::kNotDownClosedInput: return "NotDownClosedInput";
    case ErrorCode::kDimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorCode::kInvalidNormParameters: return "InvalidNormParameters";
    case ErrorCode::kNotNested: return "NotNested";
    case ErrorCode::kOriginNotContained: return "OriginNotContained";
    case ErrorCode::kUnbounded: return "Unbounded";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kNonPolyhedralAtomInRC: return "NonPolyhedralAtomInRC";
    case ErrorCode::kVertexCapExceeded: return "VertexCapExceeded";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kAssumptionViolated: return "AssumptionViolated";
    case ErrorCode::kIterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace coupledro

#endif  // COUPLEDRO_COMMON_HPP_
