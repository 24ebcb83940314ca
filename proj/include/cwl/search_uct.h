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

#ifndef CWL_SEARCH_UCT_H_
#define CWL_SEARCH_UCT_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cwl/heuristics.h"
#include "cwl/rng.h"
#include "cwl/tree_model.h"

namespace cwl {

struct UctConfig {
  double exploration = 1.0;
  int64_t budget = 1000;
  // Ascending iteration counts in [1, budget] at which the root decision is
  // recorded. Empty means {budget}.
  std::vector<int64_t> checkpoints;
  Heuristic heuristic;
  uint64_t seed = 0;

  void Validate() const;
};

// UCB1 with the negamax view on the [0, 1] scale: Min scores 1 - q.
// Returns +infinity for an unvisited child.
double UcbScore(double q_child, int64_t n_child, int64_t n_parent, double c,
                Player perspective);

// Running-mean update Q <- (n Q + r) / (n + 1), n <- n + 1.
inline void BackupAverage(double& q, int64_t& n, double reward) {
  q = (static_cast<double>(n) * q + reward) / static_cast<double>(n + 1);
  ++n;
}

// Search tree stored as an arena. Node 0 is the root once created.
class SearchTree {
 public:
  static constexpr int32_t kNone = -1;

  struct Node {
    NodeState state;
    int32_t parent = kNone;
    int64_t visits = 0;
    double mean = 0.0;  // Max's perspective.
    int32_t first_child = kNone;  // Offset into child slots, or kNone.
  };

  explicit SearchTree(int branching_factor) : b_(branching_factor) {}

  int branching_factor() const { return b_; }
  size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  const Node& node(int32_t id) const { return nodes_[id]; }
  Node& node(int32_t id) { return nodes_[id]; }

  // Child id for action a, or kNone if not yet tracked.
  int32_t child(int32_t id, int a) const {
    const Node& n = nodes_[id];
    return n.first_child == kNone ? kNone : slots_[n.first_child + a];
  }

  int32_t AddRoot(const NodeState& s);
  int32_t AddChild(int32_t parent, int a, const NodeState& s);

  // Path of child indices from the root to `id`.
  NodePath PathOf(int32_t id) const;

 private:
  int b_;
  std::vector<Node> nodes_;
  std::vector<int32_t> slots_;
};

struct BreadthFirstReport {
  bool holds = true;
  int64_t max_sibling_gap = 0;
};

// Holds iff every expanded node's children (untracked ones count as 0 visits)
// have visit counts within 1 of each other.
BreadthFirstReport BreadthFirstCheck(const SearchTree& tree);

struct CheckpointRecord {
  int64_t iteration = 0;
  int action = 0;
  std::vector<int64_t> child_visits;
  std::vector<double> child_means;
};

struct SearchResult {
  std::vector<CheckpointRecord> checkpoints;
  int64_t tree_size = 0;
  // Number of tracked nodes at each depth.
  std::vector<int64_t> depth_histogram;
  BreadthFirstReport breadth_first;

  int final_action() const { return checkpoints.back().action; }
};

// Per-iteration observer: iteration number, path of the node whose reward was
// backed up, and the reward.
using IterationObserver =
    std::function<void(int64_t, std::span<const int>, double)>;

class UctSearch {
 public:
  UctSearch(const GameParams& params, UctConfig config);

  // Runs one iteration. Returns the tree id of the evaluated node.
  int32_t Step();
  int64_t iterations() const { return iterations_; }
  double last_reward() const { return last_reward_; }
  const SearchTree& tree() const { return tree_; }

  // argmax of root-child means over tracked children, ties uniform; uniform
  // over all actions when no child is tracked yet.
  int RootDecision();
  CheckpointRecord Snapshot();

  SearchResult Run(const IterationObserver& observer = nullptr);

 private:
  GameTree game_;
  UctConfig config_;
  SearchTree tree_;
  SplitMix64 rng_;
  int64_t iterations_ = 0;
  double last_reward_ = 0.0;
  std::vector<int32_t> walk_;
  std::vector<int> ties_;
};

SearchResult RunUct(const GameParams& params, const UctConfig& config,
                    const IterationObserver& observer = nullptr);

// CSV line "iteration,path,reward" for the trace stream.
std::string FormatTraceLine(int64_t iteration, std::span<const int> path,
                            double reward);

}  // namespace cwl

#endif  // CWL_SEARCH_UCT_H_
