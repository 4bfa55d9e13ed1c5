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

#ifndef CERTUN_PRIVACY_RENYI_BOUND_H_
#define CERTUN_PRIVACY_RENYI_BOUND_H_

#include <memory>

namespace certun {

// A privacy-loss curve α ↦ ε(α) over α > 1.
//
// Bounds are built from a small closed-form algebra so that they can be
// evaluated at any order, including the doubled orders that sequential
// composition needs:
//   Linear(c):            α ↦ c·α            (learning loss ε₀)
//   b.Decayed(r):         α ↦ exp(−r/α)·b(α) (r = Σ R_k over unlearning steps)
//   WeakTriangle(a, b):   α ↦ ((α−½)/(α−1))·(a(2α) + b(2α))
// Values are immutable and cheap to copy; subtrees are shared.
class RenyiBound {
 public:
  // The zero curve.
  RenyiBound();

  // Requires slope >= 0.
  static RenyiBound Linear(double slope);
  static RenyiBound WeakTriangle(const RenyiBound& first,
                                 const RenyiBound& second);

  // Requires total_rate >= 0.
  RenyiBound Decayed(double total_rate) const;

  // Requires alpha > 1.
  double operator()(double alpha) const;

  bool is_zero() const { return node_ == nullptr; }

 private:
  struct Node;
  explicit RenyiBound(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace certun

#endif  // CERTUN_PRIVACY_RENYI_BOUND_H_
