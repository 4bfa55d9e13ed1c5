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

#ifndef CERTUN_D2D_D2D_H_
#define CERTUN_D2D_D2D_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "certun/erm/dataset.h"
#include "certun/erm/objectives.h"
#include "certun/pngd/pngd.h"
#include "certun/privacy/problem_constants.h"
#include "certun/random.h"

namespace certun {

// Delete-to-Descent baseline: noiseless projected gradient descent at step
// 2/(L+m), and unlearning by I descent steps followed by a single Gaussian
// perturbation of the output. Strongly convex objectives only.

// γ = (L−m)/(L+m).
double D2DContraction(double smoothness, double strong_convexity);
// 2/(L+m).
double D2DStepSize(double smoothness, double strong_convexity);

// Noise for a single request when the pre-noise iterate is kept between
// requests:
//   σ = 4√2·M·γ^I / (m·n·(1−γ^I)·(√(log(1/δ)+ε) − √log(1/δ))).
absl::StatusOr<double> D2DSigmaThm9(double epsilon, double delta,
                                    int64_t iters, double lipschitz,
                                    double strong_convexity, int64_t n,
                                    double smoothness);

struct D2DThm28 {
  double sigma = 0.0;
  // Real-valued lower bound on the first request's descent steps.
  double min_iters = 0.0;
  // max(1, ⌈min_iters⌉); σ is evaluated here.
  int64_t iters = 0;
};

// Calibration when only the published (noisy) model is kept:
//   I ≥ log(√(2d)/(1−γ) / (√(2log(2/δ)+ε) − √(2log(2/δ)))) / log(1/γ)
//   σ = 8Mγ^I / (m·n·(1−γ^I)·(√(2log(2/δ)+3ε) − √(2log(2/δ)+2ε))).
// Fails with ErrorKind::kInfeasibleBudget when the bound is not finite.
absl::StatusOr<D2DThm28> D2DSigmaThm28(double epsilon, double delta,
                                       double lipschitz,
                                       double strong_convexity, int64_t n,
                                       double smoothness, int64_t dim);

// Descent steps for the i-th request (i ≥ 1):
//   I + ⌈log(log(4·d·i/δ)) / log(1/γ)⌉.
int64_t D2DRequestIters(const D2DThm28& calibration, int64_t request,
                        double delta, int64_t dim, double smoothness,
                        double strong_convexity);

// Projected gradient descent from `init`.
ModelParams D2DTrain(const Dataset& data, const Objective& objective,
                     int64_t iters, double step, double radius,
                     const ModelParams& init);

struct D2DState {
  // The perturbed model; the only thing visible to the outside.
  ModelParams published;
  // Pre-noise iterate, kept only when the caller runs with internal state.
  std::optional<ModelParams> internal;
};

// Fresh state after training: `trained` is the noiseless model.
D2DState D2DInitialState(const ModelParams& trained, double noise_std,
                         bool internal_state, Rng& rng);

// `iters` descent steps on the updated data, then publish the result plus
// N(0, σ²I). Starts from the internal iterate when `internal_state` is set,
// otherwise from the published model, and keeps the internal iterate only
// in the former case.
D2DState D2DUnlearn(const D2DState& state, const Dataset& new_data,
                    const Objective& objective, int64_t iters, double step,
                    double noise_std, double radius, bool internal_state,
                    Rng& rng);

}  // namespace certun

#endif  // CERTUN_D2D_D2D_H_
