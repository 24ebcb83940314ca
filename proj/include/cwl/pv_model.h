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

#ifndef CWL_PV_MODEL_H_
#define CWL_PV_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cwl/tree_model.h"

namespace cwl {

// Prefix value tree. Integer minimax values; a sub-optimal move costs the
// player on move `cost` (Max loses it, Min gives it away). The root is a Max
// node with value 1 and exactly one optimal child.
struct PvParams {
  int branching_factor = 2;
  int cost = 1;
  // When > 0, the cost of each sibling group is drawn uniformly from
  // {1, ..., max_cost} and `cost` is ignored.
  int max_cost = 0;
  int max_depth = 20;
  uint64_t seed = 0;

  void Validate() const;
};

struct PvState {
  uint64_t key = 0;
  int depth = 0;
  int64_t value = 1;
};

class PvTree {
 public:
  explicit PvTree(const PvParams& params);

  const PvParams& params() const { return params_; }

  PvState Root() const;
  bool IsLeaf(const PvState& s) const { return s.depth >= params_.max_depth; }
  int DesignatedChild(const PvState& s) const;
  // Cost applied to the non-designated children of s.
  int SiblingCost(const PvState& s) const;
  PvState Child(const PvState& s, int i) const;
  PvState Walk(std::span<const int> path) const;

 private:
  PvParams params_;
  uint64_t root_key_;
};

int64_t PvValue(const PvParams& params, std::span<const int> path);

// Sum of the values of all depth-d descendants of `path`, by enumeration.
// Throws std::invalid_argument when b^d > 10^6 or the walk would pass d_max.
int64_t PvLeafSum(const PvParams& params, std::span<const int> path, int d);

struct PvPlan {
  int action = 0;
  std::vector<double> estimates;
};

// 1-ply lookahead: each root child is scored by the mean leaf value of
// `playouts_per_child` uniformly random walks to depth d_max. Ties are broken
// uniformly at random.
PvPlan PvNaivePlan(const PvParams& params, int playouts_per_child,
                   uint64_t rng_seed);

}  // namespace cwl

#endif  // CWL_PV_MODEL_H_
