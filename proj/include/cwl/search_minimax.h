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

#ifndef CWL_SEARCH_MINIMAX_H_
#define CWL_SEARCH_MINIMAX_H_

#include <cstdint>
#include <span>

#include "cwl/heuristics.h"
#include "cwl/tree_model.h"

namespace cwl {

struct MinimaxConfig {
  int depth = 1;
  Heuristic heuristic;
  // Heuristic noise seed. Frontier draws are keyed by (seed, node), so every
  // search over the same tree sees the same frontier values.
  uint64_t seed = 0;
};

struct MinimaxResult {
  double value = 0.0;
  // Lowest index among the root's best children.
  int best_action = 0;
  int64_t frontier_evaluations = 0;
};

// Frontier value of a node: the true reward at terminals, the heuristic
// otherwise, with randomness drawn from the node's own stream.
double FrontierValue(const GameTree& game, const NodeState& s,
                     const MinimaxConfig& cfg);

// Depth-limited fail-soft alpha-beta from `path`. Requires
// depth(path) + 1 <= d_max and depth >= 1.
MinimaxResult AlphaBeta(const GameParams& params, std::span<const int> path,
                        const MinimaxConfig& cfg);

// Plain minimax without pruning, for checking AlphaBeta. Requires
// b^depth <= 10^6.
MinimaxResult MinimaxReference(const GameParams& params,
                               std::span<const int> path,
                               const MinimaxConfig& cfg);

}  // namespace cwl

#endif  // CWL_SEARCH_MINIMAX_H_
