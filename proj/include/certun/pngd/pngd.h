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

#ifndef CERTUN_PNGD_PNGD_H_
#define CERTUN_PNGD_PNGD_H_

#include <cstdint>
#include <functional>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "certun/erm/dataset.h"
#include "certun/erm/objectives.h"
#include "certun/privacy/problem_constants.h"
#include "certun/random.h"

namespace certun {

// Weights of shape dim × outputs; a column vector for binary models.
struct ModelParams {
  Eigen::MatrixXd weights;
};

// Orthogonal projection onto the radius-R ball (Frobenius norm).
Eigen::MatrixXd ProjectBall(const Eigen::MatrixXd& v, double radius);
// v scaled to norm ≤ M; identity when already inside.
Eigen::MatrixXd ClipToNorm(const Eigen::MatrixXd& g, double clip_norm);

using GradientFn = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

// x ← Π_R(x − η∇f(x) + √(2ησ²)·W), W standard normal. Draws exactly
// rows·cols normals from `rng`, column by column.
ModelParams PngdStep(const ModelParams& params, const GradientFn& gradient,
                     double step, double noise_std, double radius, Rng& rng);

// Random initialization N(mean·1, variance·I) projected onto the ball.
struct InitSpec {
  double mean = 1000.0;
  double variance = 1.0;
};

ModelParams DrawInit(const InitSpec& spec, int64_t rows, int64_t cols,
                     double radius, Rng& rng);

// T = schedule.learn_iters steps on `data` from `init`. The horizon must be
// finite.
absl::StatusOr<ModelParams> Train(const Dataset& data,
                                  const Objective& objective,
                                  const NoiseSchedule& schedule, double radius,
                                  const ModelParams& init, Rng& rng);

// As above, drawing the initialization from `rng` first.
absl::StatusOr<ModelParams> Train(const Dataset& data,
                                  const Objective& objective,
                                  const NoiseSchedule& schedule, double radius,
                                  const InitSpec& init, Rng& rng);

// `steps` PNGD steps on the updated dataset, starting from the current
// model.
ModelParams Unlearn(const ModelParams& params, const Dataset& new_data,
                    const Objective& objective, int64_t steps, double step,
                    double noise_std, double radius, Rng& rng);

}  // namespace certun

#endif  // CERTUN_PNGD_PNGD_H_
