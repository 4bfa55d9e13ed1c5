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

#include "certun/harness/config.h"

#include <array>
#include <cmath>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "certun/status.h"

namespace certun {
namespace {

struct CommandEntry {
  Command command;
  absl::string_view name;
};
constexpr std::array<CommandEntry, 6> kCommands = {{
    {Command::kCalibrateSigma, "calibrate-sigma"},
    {Command::kUnlearnOne, "unlearn-one"},
    {Command::kSequential, "sequential"},
    {Command::kSweep, "sweep"},
    {Command::kD2D, "d2d"},
    {Command::kEvaluate, "evaluate"},
}};

struct MethodEntry {
  Method method;
  absl::string_view name;
};
constexpr std::array<MethodEntry, 4> kMethods = {{
    {Method::kLangevin, "langevin"},
    {Method::kD2DThm9, "d2d_thm9"},
    {Method::kD2DThm28, "d2d_thm28"},
    {Method::kRetrain, "retrain"},
}};

}  // namespace

absl::string_view CommandName(Command command) {
  for (const auto& e : kCommands) {
    if (e.command == command) return e.name;
  }
  return "unknown";
}

absl::StatusOr<Command> ParseCommand(absl::string_view name) {
  for (const auto& e : kCommands) {
    if (e.name == name) return e.command;
  }
  return InvalidConfigError(absl::StrCat("unknown command '", name, "'"));
}

absl::string_view MethodName(Method method) {
  for (const auto& e : kMethods) {
    if (e.method == method) return e.name;
  }
  return "unknown";
}

absl::StatusOr<Method> ParseMethod(absl::string_view name) {
  for (const auto& e : kMethods) {
    if (e.name == name) return e.method;
  }
  return InvalidConfigError(absl::StrCat(
      "unknown method '", name,
      "' (expected langevin, d2d_thm9, d2d_thm28 or retrain)"));
}

absl::StatusOr<Preset> LookupPreset(absl::string_view name) {
  // Image presets: MNIST 3-vs-8 pixels, CIFAR-10 ResNet18 embeddings.
  if (name == "mnist38") {
    return Preset{"mnist38", 11982, 784, 2, 0.0119, 8.3458e-5, false};
  }
  if (name == "cifar10-binary") {
    return Preset{"cifar10-binary", 10000, 512, 2, 0.01, 1e-4, false};
  }
  if (name == "cifar10-multi") {
    return Preset{"cifar10-multi", 50000, 512, 10, 0.0499, 2e-5, false};
  }
  if (name == "synthetic") {
    return Preset{"synthetic", 2000, 20, 2, 1e-6 * 2000, 1.0 / 2000, true};
  }
  return InvalidConfigError(absl::StrCat(
      "unknown preset '", name,
      "' (expected mnist38, cifar10-binary, cifar10-multi or synthetic)"));
}

absl::StatusOr<std::vector<double>> ParseNumberList(absl::string_view text) {
  std::vector<double> out;
  for (absl::string_view piece : absl::StrSplit(text, ',')) {
    piece = absl::StripAsciiWhitespace(piece);
    if (piece.empty()) continue;
    double v = 0.0;
    if (!absl::SimpleAtod(piece, &v) || !std::isfinite(v)) {
      return InvalidConfigError(absl::StrCat("bad number '", piece, "'"));
    }
    out.push_back(v);
  }
  if (out.empty()) return InvalidConfigError("empty number list");
  return out;
}

absl::Status ValidateConfig(const ExperimentConfig& c) {
  absl::StatusOr<Preset> preset = LookupPreset(c.preset);
  if (!preset.ok()) return preset.status();
  for (double e : c.eps_targets) {
    if (!(e > 0.0)) return InvalidConfigError("--eps values must be > 0");
  }
  if (c.eps_targets.empty()) return InvalidConfigError("--eps is empty");
  for (double s : c.sigmas) {
    if (!(s > 0.0)) return InvalidConfigError("--sigma values must be > 0");
  }
  if (c.delta && !(*c.delta > 0.0 && *c.delta < 1.0)) {
    return InvalidConfigError("--delta must lie in (0, 1)");
  }
  if (c.k_budget < 0) return InvalidConfigError("--k-budget must be >= 0");
  if (c.batch < 1) return InvalidConfigError("--batch must be >= 1");
  if (c.total_removals < 1) {
    return InvalidConfigError("--total-removals must be >= 1");
  }
  if (c.trials < 1) return InvalidConfigError("--trials must be >= 1");
  if (c.learn_iters < 0) return InvalidConfigError("--iters must be >= 0");
  if (!(c.radius > 0.0)) return InvalidConfigError("--radius must be > 0");
  if (c.lambda && !(*c.lambda >= 0.0)) {
    return InvalidConfigError("--lambda must be >= 0");
  }

  const bool trains = c.command == Command::kUnlearnOne ||
                      c.command == Command::kSequential ||
                      c.command == Command::kSweep ||
                      c.command == Command::kEvaluate;
  if (trains && !preset->synthetic && c.data_path.empty()) {
    return InvalidConfigError(absl::StrCat(
        "preset '", c.preset, "' has no bundled samples; pass --data"));
  }
  const bool needs_one_sigma =
      c.command == Command::kEvaluate ||
      (c.command == Command::kSequential &&
       (c.method == Method::kLangevin || c.method == Method::kRetrain));
  if (needs_one_sigma && c.sigmas.size() != 1) {
    return InvalidConfigError(absl::StrCat(CommandName(c.command),
                                           " needs exactly one --sigma"));
  }
  if (c.command == Command::kD2D && c.method != Method::kD2DThm9 &&
      c.method != Method::kD2DThm28) {
    return InvalidConfigError("d2d needs --method d2d_thm9 or d2d_thm28");
  }
  if (c.method == Method::kD2DThm9 || c.method == Method::kD2DThm28) {
    if (c.regime != Regime::kStronglyConvex) {
      return InvalidConfigError("D2D needs the strongly convex regime");
    }
  }
  return absl::OkStatus();
}

}  // namespace certun
