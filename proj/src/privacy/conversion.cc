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

#include "certun/privacy/conversion.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace certun {
namespace {

constexpr int kGridPoints = 2000;
constexpr double kLogMinOrder = -6.0;  // log10 of the smallest α−1
constexpr double kLogMaxOrder = 6.0;
constexpr double kRefineTol = 1e-10;
constexpr int kMaxRefineIters = 200;

}  // namespace

absl::StatusOr<DpConversion> RdpToDp(const RenyiBound& bound, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  const double log_inv_delta = -std::log(delta);
  // Objective in u = log(α−1); the curve is smooth in u and the tail term
  // is exp(−u)·log(1/δ).
  auto objective = [&](double u) {
    const double am1 = std::exp(u);
    return bound(1.0 + am1) + log_inv_delta / am1;
  };

  const double lo = kLogMinOrder * std::log(10.0);
  const double hi = kLogMaxOrder * std::log(10.0);
  const double h = (hi - lo) / (kGridPoints - 1);
  std::vector<double> values(kGridPoints);
  int best = 0;
  for (int i = 0; i < kGridPoints; ++i) {
    values[i] = objective(lo + h * i);
    if (values[i] < values[best]) best = i;
  }

  DpConversion out{values[best], 1.0 + std::exp(lo + h * best)};

  // Golden-section on the bracket around the grid minimum.
  double a = lo + h * std::max(best - 1, 0);
  double b = lo + h * std::min(best + 1, kGridPoints - 1);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int it = 0; it < kMaxRefineIters; ++it) {
    if (std::abs(b - a) <= kRefineTol * std::max(1.0, std::abs(c))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = objective(d);
    }
  }
  const double u = fc < fd ? c : d;
  const double f = std::min(fc, fd);
  if (std::isfinite(f) && f < out.epsilon) {
    out.epsilon = f;
    out.alpha = 1.0 + std::exp(u);
  }
  if (!std::isfinite(out.epsilon)) {
    return absl::InternalError("RDP to DP conversion produced a non-finite value");
  }
  return out;
}

}  // namespace certun
