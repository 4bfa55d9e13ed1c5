// Copyright 2026 The certun Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CERTUN_STATUS_H_
#define CERTUN_STATUS_H_

#include <optional>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace certun {

// Domain-specific failure kinds. Each is carried on an absl::Status as a
// payload so callers can branch on the kind without string matching.
enum class ErrorKind {
  // The LSI cap 6(4(R+ηM)²+ξ)exp(4(R+ηM)²/ξ) does not fit in a double.
  kCapOverflow,
  // No unlearning step count up to the search limit meets the target.
  kBudgetUnreachable,
  // The upper end of the noise search range does not meet the step budget.
  kNoFeasibleSigma,
  // A baseline calibration has no valid solution at the given budget.
  kInfeasibleBudget,
  kParse,
  kIo,
  kInvalidConfig,
};

absl::string_view ErrorKindName(ErrorKind kind);

absl::Status CapOverflowError(double exponent, absl::string_view context);
absl::Status BudgetUnreachableError(absl::string_view message);
absl::Status NoFeasibleSigmaError(absl::string_view message);
absl::Status InfeasibleBudgetError(absl::string_view message);
absl::Status ParseError(absl::string_view message);
absl::Status IoError(absl::string_view message);
absl::Status InvalidConfigError(absl::string_view message);

std::optional<ErrorKind> GetErrorKind(const absl::Status& status);
bool HasErrorKind(const absl::Status& status, ErrorKind kind);

// The exponent 4(R+ηM)²/ξ recorded on a kCapOverflow status.
std::optional<double> CapOverflowExponent(const absl::Status& status);

}  // namespace certun

#define CERTUN_STATUS_CONCAT_INNER_(x, y) x##y
#define CERTUN_STATUS_CONCAT_(x, y) CERTUN_STATUS_CONCAT_INNER_(x, y)

#define CERTUN_RETURN_IF_ERROR(expr)            \
  do {                                          \
    ::absl::Status certun_status_ = (expr);     \
    if (!certun_status_.ok()) return certun_status_; \
  } while (0)

#define CERTUN_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                  \
  if (!statusor.ok()) return statusor.status();             \
  lhs = std::move(statusor).value()

#define CERTUN_ASSIGN_OR_RETURN(lhs, rexpr) \
  CERTUN_ASSIGN_OR_RETURN_IMPL_(            \
      CERTUN_STATUS_CONCAT_(certun_statusor_, __LINE__), lhs, rexpr)

#endif  // CERTUN_STATUS_H_
