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

#ifndef CERTUN_HARNESS_EXPERIMENTS_H_
#define CERTUN_HARNESS_EXPERIMENTS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "certun/erm/dataset.h"
#include "certun/erm/objectives.h"
#include "certun/harness/config.h"
#include "certun/harness/results.h"
#include "certun/pngd/pngd.h"
#include "certun/privacy/calibration.h"

namespace certun {

// Everything a command needs once the config is resolved.
struct ExperimentSetup {
  Preset preset;
  // Constants handed to the accountant. In the convex regime m is zeroed.
  ProblemConstants constants;
  double delta = 0.0;
  double step = 0.0;  // 1/L
  std::optional<Dataset> train;
  std::optional<Dataset> test;
  std::unique_ptr<Objective> objective;
};

// Loads or generates the data when `with_data`, then derives n, λ, the
// constants and δ.
absl::StatusOr<ExperimentSetup> PrepareSetup(const ExperimentConfig& config,
                                             bool with_data);

// Accountant inputs at noise level σ. Strongly convex learning uses the
// T-uniform bound; the other regimes use the configured T.
AccountingContext MakeContext(const ExperimentConfig& config,
                              const ExperimentSetup& setup, double sigma);

// Removal stream of one trial: `total` distinct indices split into batches.
std::vector<std::vector<int64_t>> TrialRemovals(const ExperimentConfig& config,
                                                int64_t n, int64_t total,
                                                int64_t batch, int64_t trial);

// Test accuracy after training at σ, applying the removal batches and
// unlearning batch i for steps[i] PNGD steps.
absl::StatusOr<double> RunLangevinTrial(const ExperimentConfig& config,
                                        const ExperimentSetup& setup,
                                        double sigma,
                                        const std::vector<int64_t>& steps,
                                        int64_t total, int64_t batch,
                                        int64_t trial);

// Test accuracy of a model trained from scratch at σ on the data left after
// all removals of the trial.
absl::StatusOr<double> RunRetrainTrial(const ExperimentConfig& config,
                                       const ExperimentSetup& setup,
                                       double sigma, int64_t total,
                                       int64_t batch, int64_t trial);

absl::StatusOr<ResultTable> RunCalibrateSigma(const ExperimentConfig& config);
absl::StatusOr<ResultTable> RunUnlearnOne(const ExperimentConfig& config);
absl::StatusOr<ResultTable> RunSequential(const ExperimentConfig& config);
absl::StatusOr<ResultTable> RunSweep(const ExperimentConfig& config);
absl::StatusOr<ResultTable> RunD2DReport(const ExperimentConfig& config);
absl::StatusOr<ResultTable> RunEvaluate(const ExperimentConfig& config);

// Validates the config and dispatches on its command.
absl::StatusOr<ResultTable> RunExperiment(const ExperimentConfig& config);

// 0 success, 2 calibration infeasible, 3 I/O, 4 invalid config, 1 other.
int ExitCodeFor(const absl::Status& status);

// Sets the stderr log level from UNLEARN_LOG (error, info or debug;
// default error).
void ConfigureLogging();

}  // namespace certun

#endif  // CERTUN_HARNESS_EXPERIMENTS_H_
