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

#ifndef CERTUN_HARNESS_CONFIG_H_
#define CERTUN_HARNESS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "certun/privacy/problem_constants.h"

namespace certun {

enum class Command {
  kCalibrateSigma,
  kUnlearnOne,
  kSequential,
  kSweep,
  kD2D,
  kEvaluate,
};

enum class Method { kLangevin, kD2DThm9, kD2DThm28, kRetrain };

absl::string_view CommandName(Command command);
absl::StatusOr<Command> ParseCommand(absl::string_view name);
absl::string_view MethodName(Method method);
absl::StatusOr<Method> ParseMethod(absl::string_view name);

// Named problem settings. Image presets carry the constants only; their
// samples come from a user-supplied CSV.
struct Preset {
  std::string name;
  int64_t n = 0;
  int64_t dim = 0;
  int num_classes = 2;
  double reg = 0.0;
  double delta = 0.0;
  bool synthetic = false;
};

absl::StatusOr<Preset> LookupPreset(absl::string_view name);

struct ExperimentConfig {
  Command command = Command::kCalibrateSigma;
  std::string preset = "synthetic";
  Method method = Method::kLangevin;
  Regime regime = Regime::kStronglyConvex;

  // Noise levels: the single σ of sequential and evaluate, or the sweep
  // grid (a default grid when empty). calibrate-sigma and unlearn-one
  // search for σ instead.
  std::vector<double> sigmas;
  std::vector<double> eps_targets = {0.05, 0.1, 0.5, 1.0, 2.0, 5.0};
  std::optional<double> delta;  // 1/n when unset
  int64_t k_budget = 1;
  int64_t batch = 1;
  int64_t total_removals = 1;
  int64_t trials = 100;
  uint64_t seed = 0;

  int64_t learn_iters = 10000;
  double radius = 100.0;
  double init_mean = 1000.0;
  std::optional<double> lambda;  // preset value when unset
  bool renormalize_replacements = true;

  std::string data_path;
  std::string test_data_path;
  std::string out_path;
  std::string plot_path;
  bool wall_clock = false;

  // Synthetic generator knobs.
  int64_t synthetic_test_n = 1000;
  double synthetic_separation = 3.0;
};

// Checks ranges and per-command requirements. Failures carry
// ErrorKind::kInvalidConfig.
absl::Status ValidateConfig(const ExperimentConfig& config);

// Splits "0.1,0.5, 1" into numbers.
absl::StatusOr<std::vector<double>> ParseNumberList(absl::string_view text);

}  // namespace certun

#endif  // CERTUN_HARNESS_CONFIG_H_
