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

#include "cwl/search_uct.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace cwl {

void UctConfig::Validate() const {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (!(exploration >= 0.0)) {
    throw std::invalid_argument("exploration constant must be >= 0");
  }
  int64_t prev = 0;
  for (int64_t c : checkpoints) {
    if (c <= prev || c > budget) {
      throw std::invalid_argument(
          "checkpoints must be strictly ascending within [1, budget]");
    }
    prev = c;
  }
}

double UcbScore(double q_child, int64_t n_child, int64_t n_parent, double c,
                Player perspective) {
  if (n_child == 0) return std::numeric_limits<double>::infinity();
  double value = perspective == Player::kMax ? q_child : 1.0 - q_child;
  if (c == 0.0) return value;
  return value + c * std::sqrt(std::log(static_cast<double>(n_parent)) /
                               static_cast<double>(n_child));
}

int32_t SearchTree::AddRoot(const NodeState& s) {
  if (!nodes_.empty()) throw std::logic_error("root already exists");
  nodes_.push_back(Node{s, kNone, 0, 0.0, kNone});
  return 0;
}

int32_t SearchTree::AddChild(int32_t parent, int a, const NodeState& s) {
  int32_t id = static_cast<int32_t>(nodes_.size());
  if (nodes_[parent].first_child == kNone) {
    nodes_[parent].first_child = static_cast<int32_t>(slots_.size());
    slots_.resize(slots_.size() + b_, kNone);
  }
  slots_[nodes_[parent].first_child + a] = id;
  nodes_.push_back(Node{s, parent, 0, 0.0, kNone});
  return id;
}

NodePath SearchTree::PathOf(int32_t id) const {
  NodePath path;
  while (nodes_[id].parent != kNone) {
    int32_t p = nodes_[id].parent;
    for (int a = 0; a < b_; ++a) {
      if (child(p, a) == id) {
        path.push_back(a);
        break;
      }
    }
    id = p;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

BreadthFirstReport BreadthFirstCheck(const SearchTree& tree) {
  BreadthFirstReport report;
  for (size_t id = 0; id < tree.size(); ++id) {
    if (tree.node(static_cast<int32_t>(id)).first_child == SearchTree::kNone) {
      continue;
    }
    int64_t lo = std::numeric_limits<int64_t>::max();
    int64_t hi = 0;
    for (int a = 0; a < tree.branching_factor(); ++a) {
      int32_t c = tree.child(static_cast<int32_t>(id), a);
      int64_t n = c == SearchTree::kNone ? 0 : tree.node(c).visits;
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    report.max_sibling_gap = std::max(report.max_sibling_gap, hi - lo);
  }
  report.holds = report.max_sibling_gap <= 1;
  return report;
}

UctSearch::UctSearch(const GameParams& params, UctConfig config)
    : game_(params),
      config_(std::move(config)),
      tree_(params.branching_factor),
      rng_(Mix64(config_.seed)) {
  config_.Validate();
  if (config_.checkpoints.empty()) config_.checkpoints = {config_.budget};
}

int32_t UctSearch::Step() {
  ++iterations_;
  const GameParams& params = game_.params();
  double reward;
  int32_t evaluated;
  walk_.clear();

  if (tree_.empty()) {
    evaluated = tree_.AddRoot(game_.Root());
    walk_.push_back(evaluated);
    const NodeState& s = tree_.node(evaluated).state;
    reward = Evaluate(config_.heuristic,
                      EvalContext{s.value, s.player(), s.depth, &params}, rng_);
  } else {
    int32_t cur = 0;
    walk_.push_back(cur);
    const int b = tree_.branching_factor();
    while (true) {
      const SearchTree::Node& node = tree_.node(cur);
      if (game_.IsTerminal(node.state)) {
        evaluated = cur;
        reward = TrueReward(node.state.value);
        break;
      }
      const Player player = node.state.player();
      double best = -std::numeric_limits<double>::infinity();
      ties_.clear();
      for (int a = 0; a < b; ++a) {
        int32_t c = tree_.child(cur, a);
        double score =
            c == SearchTree::kNone
                ? std::numeric_limits<double>::infinity()
                : UcbScore(tree_.node(c).mean, tree_.node(c).visits,
                           node.visits, config_.exploration, player);
        if (score > best) {
          best = score;
          ties_.assign(1, a);
        } else if (score == best) {
          ties_.push_back(a);
        }
      }
      int action = ties_.size() == 1 ? ties_[0] : ties_[rng_.Below(ties_.size())];
      int32_t next = tree_.child(cur, action);
      if (next == SearchTree::kNone) {
        NodeState s = game_.Child(node.state, action);
        evaluated = tree_.AddChild(cur, action, s);
        walk_.push_back(evaluated);
        reward = game_.IsTerminal(s)
                     ? TrueReward(s.value)
                     : Evaluate(config_.heuristic,
                                EvalContext{s.value, s.player(), s.depth,
                                            &params},
                                rng_);
        break;
      }
      cur = next;
      walk_.push_back(cur);
    }
  }

  last_reward_ = reward;
  for (int32_t id : walk_) {
    SearchTree::Node& n = tree_.node(id);
    BackupAverage(n.mean, n.visits, reward);
  }
  return evaluated;
}

int UctSearch::RootDecision() {
  // Separate stream so recording a checkpoint never perturbs the search.
  SplitMix64 pick(HashCombine(Mix64(config_.seed), 0x726f6f74ULL + iterations_));
  const int b = tree_.branching_factor();
  ties_.clear();
  double best = -1.0;
  if (!tree_.empty()) {
    for (int a = 0; a < b; ++a) {
      int32_t c = tree_.child(0, a);
      if (c == SearchTree::kNone) continue;
      double q = tree_.node(c).mean;
      if (q > best) {
        best = q;
        ties_.assign(1, a);
      } else if (q == best) {
        ties_.push_back(a);
      }
    }
  }
  if (ties_.empty()) return static_cast<int>(pick.Below(b));
  return ties_.size() == 1 ? ties_[0] : ties_[pick.Below(ties_.size())];
}

CheckpointRecord UctSearch::Snapshot() {
  CheckpointRecord rec;
  rec.iteration = iterations_;
  rec.action = RootDecision();
  const int b = tree_.branching_factor();
  rec.child_visits.assign(b, 0);
  rec.child_means.assign(b, 0.0);
  if (!tree_.empty()) {
    for (int a = 0; a < b; ++a) {
      int32_t c = tree_.child(0, a);
      if (c == SearchTree::kNone) continue;
      rec.child_visits[a] = tree_.node(c).visits;
      rec.child_means[a] = tree_.node(c).mean;
    }
  }
  return rec;
}

SearchResult UctSearch::Run(const IterationObserver& observer) {
  SearchResult result;
  size_t next = 0;
  while (next < config_.checkpoints.size() &&
         config_.checkpoints[next] <= iterations_) {
    ++next;
  }
  while (iterations_ < config_.budget) {
    int32_t id = Step();
    if (observer) {
      const NodePath path = tree_.PathOf(id);
      observer(iterations_, path, last_reward_);
    }
    if (next < config_.checkpoints.size() &&
        config_.checkpoints[next] == iterations_) {
      result.checkpoints.push_back(Snapshot());
      ++next;
    }
  }
  result.tree_size = static_cast<int64_t>(tree_.size());
  for (size_t id = 0; id < tree_.size(); ++id) {
    size_t d = static_cast<size_t>(tree_.node(static_cast<int32_t>(id)).state.depth);
    if (result.depth_histogram.size() <= d) result.depth_histogram.resize(d + 1, 0);
    ++result.depth_histogram[d];
  }
  result.breadth_first = BreadthFirstCheck(tree_);
  return result;
}

SearchResult RunUct(const GameParams& params, const UctConfig& config,
                    const IterationObserver& observer) {
  return UctSearch(params, config).Run(observer);
}

std::string FormatTraceLine(int64_t iteration, std::span<const int> path,
                            double reward) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ",%.17g", reward);
  return std::to_string(iteration) + "," + PathToString(path) + buf;
}

}  // namespace cwl
