// Copyright 2026 The cwl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cwl/pv_model.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cwl/rng.h"

namespace cwl {

void PvParams::Validate() const {
  if (branching_factor < 2) {
    throw std::invalid_argument("branching factor must be >= 2");
  }
  if (max_cost == 0 && cost < 1) {
    throw std::invalid_argument("cost must be >= 1");
  }
  if (max_cost < 0) throw std::invalid_argument("max cost must be >= 0");
  if (max_depth < 1) throw std::invalid_argument("max depth must be >= 1");
}

PvTree::PvTree(const PvParams& params)
    : params_(params), root_key_(Mix64(params.seed ^ 0x5056545245450000ULL)) {
  params_.Validate();
}

PvState PvTree::Root() const { return PvState{root_key_, 0, 1}; }

int PvTree::DesignatedChild(const PvState& s) const {
  double u = StreamUniform(s.key, StreamTag::kDesignated);
  int i = static_cast<int>(u * params_.branching_factor);
  return i < params_.branching_factor ? i : params_.branching_factor - 1;
}

int PvTree::SiblingCost(const PvState& s) const {
  if (params_.max_cost == 0) return params_.cost;
  double u = StreamUniform(s.key, StreamTag::kPvCost);
  int k = 1 + static_cast<int>(u * params_.max_cost);
  return k <= params_.max_cost ? k : params_.max_cost;
}

PvState PvTree::Child(const PvState& s, int i) const {
  if (IsLeaf(s)) throw std::out_of_range("leaf node has no children");
  if (i < 0 || i >= params_.branching_factor) {
    throw std::out_of_range("child index " + std::to_string(i) +
                            " outside [0, b)");
  }
  int64_t v = s.value;
  if (i != DesignatedChild(s)) {
    int64_t k = SiblingCost(s);
    v = PlayerAtDepth(s.depth) == Player::kMax ? v - k : v + k;
  }
  return PvState{HashCombine(s.key, static_cast<uint64_t>(i)), s.depth + 1,
                 v};
}

PvState PvTree::Walk(std::span<const int> path) const {
  if (static_cast<int>(path.size()) > params_.max_depth) {
    throw std::out_of_range("path longer than max depth");
  }
  PvState s = Root();
  for (int i : path) s = Child(s, i);
  return s;
}

int64_t PvValue(const PvParams& params, std::span<const int> path) {
  return PvTree(params).Walk(path).value;
}

namespace {

int64_t SumBelow(const PvTree& tree, const PvState& s, int d) {
  if (d == 0) return s.value;
  int64_t sum = 0;
  for (int i = 0; i < tree.params().branching_factor; ++i) {
    sum += SumBelow(tree, tree.Child(s, i), d - 1);
  }
  return sum;
}

}  // namespace

int64_t PvLeafSum(const PvParams& params, std::span<const int> path, int d) {
  PvTree tree(params);
  if (d < 0) throw std::invalid_argument("depth must be >= 0");
  if (d * std::log10(params.branching_factor) > 6.0 + 1e-12) {
    throw std::invalid_argument("b^d exceeds 10^6 leaves");
  }
  if (static_cast<int>(path.size()) + d > params.max_depth) {
    throw std::invalid_argument("enumeration would pass max depth");
  }
  return SumBelow(tree, tree.Walk(path), d);
}

PvPlan PvNaivePlan(const PvParams& params, int playouts_per_child,
                   uint64_t rng_seed) {
  PvTree tree(params);
  if (playouts_per_child < 1) {
    throw std::invalid_argument("playouts per child must be >= 1");
  }
  SplitMix64 rng(rng_seed);
  const int b = params.branching_factor;
  const PvState root = tree.Root();

  PvPlan plan;
  plan.estimates.assign(b, 0.0);
  for (int a = 0; a < b; ++a) {
    const PvState child = tree.Child(root, a);
    double total = 0.0;
    for (int p = 0; p < playouts_per_child; ++p) {
      PvState s = child;
      while (!tree.IsLeaf(s)) {
        s = tree.Child(s, static_cast<int>(rng.Below(b)));
      }
      total += static_cast<double>(s.value);
    }
    plan.estimates[a] = total / playouts_per_child;
  }

  std::vector<int> best;
  for (int a = 0; a < b; ++a) {
    if (best.empty() || plan.estimates[a] > plan.estimates[best[0]]) {
      best.assign(1, a);
    } else if (plan.estimates[a] == plan.estimates[best[0]]) {
      best.push_back(a);
    }
  }
  plan.action = best[rng.Below(best.size())];
  return plan;
}

}  // namespace cwl
