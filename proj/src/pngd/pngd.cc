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

#include "certun/pngd/pngd.h"

#include <cmath>

namespace certun {

Eigen::MatrixXd ProjectBall(const Eigen::MatrixXd& v, double radius) {
  const double norm = v.norm();
  if (norm <= radius) return v;
  return v * (radius / norm);
}

Eigen::MatrixXd ClipToNorm(const Eigen::MatrixXd& g, double clip_norm) {
  return ProjectBall(g, clip_norm);
}

ModelParams PngdStep(const ModelParams& params, const GradientFn& gradient,
                     double step, double noise_std, double radius, Rng& rng) {
  const double scale = std::sqrt(2.0 * step * noise_std * noise_std);
  Eigen::MatrixXd next = params.weights - step * gradient(params.weights);
  for (Eigen::Index c = 0; c < next.cols(); ++c) {
    for (Eigen::Index r = 0; r < next.rows(); ++r) {
      next(r, c) += scale * rng.Normal();
    }
  }
  return ModelParams{ProjectBall(next, radius)};
}

ModelParams DrawInit(const InitSpec& spec, int64_t rows, int64_t cols,
                     double radius, Rng& rng) {
  const double sd = std::sqrt(spec.variance);
  Eigen::MatrixXd w(rows, cols);
  for (Eigen::Index c = 0; c < w.cols(); ++c) {
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      w(r, c) = spec.mean + sd * rng.Normal();
    }
  }
  return ModelParams{ProjectBall(w, radius)};
}

absl::StatusOr<ModelParams> Train(const Dataset& data,
                                  const Objective& objective,
                                  const NoiseSchedule& schedule, double radius,
                                  const ModelParams& init, Rng& rng) {
  if (schedule.learn_iters.infinite()) {
    return absl::InvalidArgumentError("training needs a finite horizon");
  }
  if (init.weights.rows() != objective.dim() ||
      init.weights.cols() != objective.outputs()) {
    return absl::InvalidArgumentError("initial weights have the wrong shape");
  }
  if (!(radius > 0.0)) return absl::InvalidArgumentError("radius must be > 0");
  const GradientFn grad = [&](const Eigen::MatrixXd& w) {
    return objective.Gradient(w, data);
  };
  ModelParams params = init;
  for (int64_t t = 0; t < schedule.learn_iters.steps(); ++t) {
    params = PngdStep(params, grad, schedule.step, schedule.noise_std, radius,
                      rng);
  }
  return params;
}

absl::StatusOr<ModelParams> Train(const Dataset& data,
                                  const Objective& objective,
                                  const NoiseSchedule& schedule, double radius,
                                  const InitSpec& init, Rng& rng) {
  if (!(init.variance >= 0.0)) {
    return absl::InvalidArgumentError("init variance must be >= 0");
  }
  const ModelParams start =
      DrawInit(init, objective.dim(), objective.outputs(), radius, rng);
  return Train(data, objective, schedule, radius, start, rng);
}

ModelParams Unlearn(const ModelParams& params, const Dataset& new_data,
                    const Objective& objective, int64_t steps, double step,
                    double noise_std, double radius, Rng& rng) {
  const GradientFn grad = [&](const Eigen::MatrixXd& w) {
    return objective.Gradient(w, new_data);
  };
  ModelParams out = params;
  for (int64_t k = 0; k < steps; ++k) {
    out = PngdStep(out, grad, step, noise_std, radius, rng);
  }
  return out;
}

}  // namespace certun
