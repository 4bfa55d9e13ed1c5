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

#include "certun/status.h"

#include <array>
#include <charconv>
#include <string>

#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace certun {
namespace {

constexpr char kKindUrl[] = "certun/error-kind";
constexpr char kExponentUrl[] = "certun/cap-exponent";

constexpr std::array<std::pair<ErrorKind, absl::string_view>, 7> kKindNames = {{
    {ErrorKind::kCapOverflow, "CapOverflow"},
    {ErrorKind::kBudgetUnreachable, "BudgetUnreachable"},
    {ErrorKind::kNoFeasibleSigma, "NoFeasibleSigma"},
    {ErrorKind::kInfeasibleBudget, "InfeasibleBudget"},
    {ErrorKind::kParse, "Parse"},
    {ErrorKind::kIo, "Io"},
    {ErrorKind::kInvalidConfig, "InvalidConfig"},
}};

absl::Status Tag(absl::Status status, ErrorKind kind) {
  status.SetPayload(kKindUrl, absl::Cord(ErrorKindName(kind)));
  return status;
}

}  // namespace

absl::string_view ErrorKindName(ErrorKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "Unknown";
}

absl::Status CapOverflowError(double exponent, absl::string_view context) {
  absl::Status status = Tag(
      absl::OutOfRangeError(absl::StrCat(
          "LSI cap overflows double precision (exponent ", exponent,
          "); bound vacuous at these constants: ", context)),
      ErrorKind::kCapOverflow);
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), exponent);
  status.SetPayload(kExponentUrl, absl::Cord(absl::string_view(buf, res.ptr - buf)));
  return status;
}

absl::Status BudgetUnreachableError(absl::string_view message) {
  return Tag(absl::ResourceExhaustedError(message),
             ErrorKind::kBudgetUnreachable);
}

absl::Status NoFeasibleSigmaError(absl::string_view message) {
  return Tag(absl::FailedPreconditionError(message),
             ErrorKind::kNoFeasibleSigma);
}

absl::Status InfeasibleBudgetError(absl::string_view message) {
  return Tag(absl::FailedPreconditionError(message),
             ErrorKind::kInfeasibleBudget);
}

absl::Status ParseError(absl::string_view message) {
  return Tag(absl::DataLossError(message), ErrorKind::kParse);
}

absl::Status IoError(absl::string_view message) {
  return Tag(absl::UnavailableError(message), ErrorKind::kIo);
}

absl::Status InvalidConfigError(absl::string_view message) {
  return Tag(absl::InvalidArgumentError(message), ErrorKind::kInvalidConfig);
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  auto payload = status.GetPayload(kKindUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& [k, kind_name] : kKindNames) {
    if (kind_name == name) return k;
  }
  return std::nullopt;
}

bool HasErrorKind(const absl::Status& status, ErrorKind kind) {
  return GetErrorKind(status) == kind;
}

std::optional<double> CapOverflowExponent(const absl::Status& status) {
  auto payload = status.GetPayload(kExponentUrl);
  if (!payload.has_value()) return std::nullopt;
  double value = 0.0;
  if (!absl::SimpleAtod(std::string(*payload), &value)) return std::nullopt;
  return value;
}

}  // namespace certun
