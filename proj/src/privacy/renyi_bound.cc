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

#include "certun/privacy/renyi_bound.h"

#include <cassert>
#include <cmath>
#include <variant>

namespace certun {

struct RenyiBound::Node {
  struct Linear {
    double slope;
  };
  struct Decayed {
    RenyiBound base;
    double total_rate;
  };
  struct WeakTriangle {
    RenyiBound first;
    RenyiBound second;
  };
  std::variant<Linear, Decayed, WeakTriangle> op;
};

RenyiBound::RenyiBound() = default;

RenyiBound RenyiBound::Linear(double slope) {
  assert(slope >= 0.0);
  if (slope == 0.0) return RenyiBound();
  return RenyiBound(std::make_shared<const Node>(Node{Node::Linear{slope}}));
}

RenyiBound RenyiBound::WeakTriangle(const RenyiBound& first,
                                    const RenyiBound& second) {
  if (first.is_zero() && second.is_zero()) return RenyiBound();
  return RenyiBound(
      std::make_shared<const Node>(Node{Node::WeakTriangle{first, second}}));
}

RenyiBound RenyiBound::Decayed(double total_rate) const {
  assert(total_rate >= 0.0);
  if (total_rate == 0.0 || is_zero()) return *this;
  if (const auto* d = std::get_if<Node::Decayed>(&node_->op)) {
    return d->base.Decayed(d->total_rate + total_rate);
  }
  return RenyiBound(
      std::make_shared<const Node>(Node{Node::Decayed{*this, total_rate}}));
}

double RenyiBound::operator()(double alpha) const {
  assert(alpha > 1.0);
  if (is_zero()) return 0.0;
  return std::visit(
      [alpha](const auto& op) -> double {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Node::Linear>) {
          return op.slope * alpha;
        } else if constexpr (std::is_same_v<T, Node::Decayed>) {
          return std::exp(-op.total_rate / alpha) * op.base(alpha);
        } else {
          const double factor = (alpha - 0.5) / (alpha - 1.0);
          return factor * (op.first(2.0 * alpha) + op.second(2.0 * alpha));
        }
      },
      node_->op);
}

}  // namespace certun
