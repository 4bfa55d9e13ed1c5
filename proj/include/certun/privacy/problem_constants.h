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

#ifndef CERTUN_PRIVACY_PROBLEM_CONSTANTS_H_
#define CERTUN_PRIVACY_PROBLEM_CONSTANTS_H_

#include <cstdint>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace certun {

// Curvature regime of the objective. Selects which recursion the accountant
// uses for the LSI constants and the unlearning rate.
enum class Regime { kStronglyConvex, kConvex, kNonConvex };

absl::string_view RegimeName(Regime regime);
absl::StatusOr<Regime> ParseRegime(absl::string_view name);

// Constants of a smooth, Lipschitz ERM problem as consumed by every bound.
struct ProblemConstants {
  double smoothness = 0.0;        // L
  double strong_convexity = 0.0;  // m; 0 means merely convex
  double lipschitz = 0.0;         // M, the per-sample gradient clip norm
  double radius = 0.0;            // R, radius of the projection ball
  int64_t n = 0;
  int64_t dim = 0;
  double reg = 0.0;  // λ

  absl::Status Validate() const;
  // Validate() plus the curvature sign the regime requires.
  absl::Status ValidateFor(Regime regime) const;

  // ℓ2-regularized binary logistic regression on unit-norm features:
  // L = 1/4 + λ, m = λ, M = 1.
  static ProblemConstants BinaryLogistic(int64_t n, int64_t dim, double reg,
                                         double radius);
  // Softmax cross-entropy on unit-norm features: L = 1 + λ, m = λ, M = 2.
  static ProblemConstants MulticlassLogistic(int64_t n, int64_t dim,
                                             double reg, double radius);
};

// Number of learning iterations; Infinite() selects the converged limit.
class Horizon {
 public:
  static Horizon Finite(int64_t steps) { return Horizon(steps, false); }
  static Horizon Infinite() { return Horizon(0, true); }

  bool infinite() const { return infinite_; }
  // Only meaningful when !infinite().
  int64_t steps() const { return steps_; }

  friend bool operator==(const Horizon&, const Horizon&) = default;

 private:
  Horizon(int64_t steps, bool infinite) : steps_(steps), infinite_(infinite) {}

  int64_t steps_;
  bool infinite_;
};

struct NoiseSchedule {
  double step = 0.0;       // η
  double noise_std = 0.0;  // σ
  Horizon learn_iters = Horizon::Infinite();
  int64_t unlearn_iters = 0;

  // Step-size conditions of the regime. The strongly convex check uses
  // C_LSI = 2σ²/m, which reduces to η ≤ min(1/m, 1/L).
  absl::Status Validate(const ProblemConstants& constants,
                        Regime regime) const;
};

}  // namespace certun

#endif  // CERTUN_PRIVACY_PROBLEM_CONSTANTS_H_
