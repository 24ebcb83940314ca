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

#include "cwl/tree_model.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cwl/rng.h"

namespace cwl {

void GameParams::Validate() const {
  if (branching_factor < 2) {
    throw std::invalid_argument("branching factor must be >= 2, got " +
                                std::to_string(branching_factor));
  }
  if (max_depth < 1) {
    throw std::invalid_argument("max depth must be >= 1, got " +
                                std::to_string(max_depth));
  }
  if (!(critical_rate >= 0.0 && critical_rate <= 1.0)) {
    throw std::invalid_argument("critical rate must lie in [0, 1]");
  }
}

std::string PathToString(std::span<const int> path) {
  if (path.empty()) return "r";
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += '/';
    out += std::to_string(path[i]);
  }
  return out;
}

GameTree::GameTree(const GameParams& params)
    : params_(params), root_key_(Mix64(params.seed)) {
  params_.Validate();
}

NodeState GameTree::Root() const { return NodeState{root_key_, 0, +1}; }

int GameTree::DesignatedChild(const NodeState& s) const {
  if (s.kind() == NodeKind::kForced) return -1;
  double u = StreamUniform(s.key, StreamTag::kDesignated);
  int i = static_cast<int>(u * params_.branching_factor);
  return i < params_.branching_factor ? i : params_.branching_factor - 1;
}

int GameTree::ChildValue(const NodeState& s, int i) const {
  if (s.kind() == NodeKind::kForced) return s.value;
  if (i == DesignatedChild(s)) return s.value;
  bool flip = StreamUniform(s.key, StreamTag::kFlip, static_cast<uint64_t>(i)) <
              params_.critical_rate;
  return flip ? -s.value : s.value;
}

NodeState GameTree::Child(const NodeState& s, int i) const {
  if (IsTerminal(s)) {
    throw std::out_of_range("terminal node has no children");
  }
  if (i < 0 || i >= params_.branching_factor) {
    throw std::out_of_range("child index " + std::to_string(i) +
                            " outside [0, b)");
  }
  return NodeState{HashCombine(s.key, static_cast<uint64_t>(i)), s.depth + 1,
                   ChildValue(s, i)};
}

NodeState GameTree::Walk(std::span<const int> path) const {
  if (static_cast<int>(path.size()) > params_.max_depth) {
    throw std::out_of_range("path longer than max depth");
  }
  NodeState s = Root();
  for (int i : path) s = Child(s, i);
  return s;
}

NodeInfo GameTree::Meta(const NodeState& s) const {
  NodeInfo info;
  info.value = s.value;
  info.kind = s.kind();
  info.player = s.player();
  info.terminal = IsTerminal(s);
  if (info.terminal) return info;
  // The player-favorable value: +1 for Max, -1 for Min.
  int favorable = info.player == Player::kMax ? +1 : -1;
  for (int i = 0; i < params_.branching_factor; ++i) {
    if (info.kind == NodeKind::kForced || ChildValue(s, i) == favorable) {
      info.optimal_moves.push_back(i);
    }
  }
  return info;
}

int NodeValue(const GameParams& params, std::span<const int> path) {
  return GameTree(params).Walk(path).value;
}

NodeInfo NodeMeta(const GameParams& params, std::span<const int> path) {
  GameTree tree(params);
  return tree.Meta(tree.Walk(path));
}

double PlusChildDensity(const GameParams& params) {
  double b = params.branching_factor;
  return 1.0 - params.critical_rate + params.critical_rate / b;
}

double SubtreePlusDensity(int value, Player player, int remaining,
                          const GameParams& params) {
  params.Validate();
  if (value != +1 && value != -1) {
    throw std::invalid_argument("node value must be +1 or -1");
  }
  if (remaining < 0 || remaining > params.max_depth) {
    throw std::out_of_range("remaining depth outside [0, d_max]");
  }
  const double k = PlusChildDensity(params);
  double f = value == +1 ? 1.0 : 0.0;
  Player p = player;
  for (int i = 0; i < remaining; ++i) {
    f = p == Player::kMax ? f * k : f * k + 1.0 - k;
    p = Opponent(p);
  }
  return f;
}

double PlusDensity(const GameParams& params, int n) {
  return SubtreePlusDensity(+1, Player::kMax, n, params);
}

double ClosedFormEvenDensity(const GameParams& params, int half_depth) {
  const double k = PlusChildDensity(params);
  return std::pow(k, 2.0 * half_depth) +
         (1.0 - std::pow(k, 2.0 * half_depth + 2.0)) / (1.0 + k);
}

DensityLimits ComputeDensityLimits(const GameParams& params) {
  params.Validate();
  if (params.critical_rate == 0.0) return DensityLimits{1.0, 1.0, false};
  const double k = PlusChildDensity(params);
  return DensityLimits{1.0 / (1.0 + k), k / (1.0 + k), true};
}

namespace {

void EmitSubtree(const GameTree& tree, const NodeState& s, NodePath& path,
                 int depth_cap, std::string& out) {
  const std::string id = PathToString(path);
  out += "  \"" + id + "\" [label=\"" + (s.value > 0 ? "+1" : "-1") + "\"]\n";
  if (s.depth >= depth_cap) return;
  for (int i = 0; i < tree.branching_factor(); ++i) {
    path.push_back(i);
    out += "  \"" + id + "\" -> \"" + PathToString(path) + "\"\n";
    EmitSubtree(tree, tree.Child(s, i), path, depth_cap, out);
    path.pop_back();
  }
}

}  // namespace

std::string ExportTree(const GameParams& params, int depth_cap) {
  GameTree tree(params);
  if (depth_cap < 0 || depth_cap > params.max_depth) {
    throw std::invalid_argument("depth cap outside [0, d_max]");
  }
  if (depth_cap * std::log10(params.branching_factor) > 6.0 + 1e-12) {
    throw std::invalid_argument("b^depth_cap exceeds 10^6 nodes");
  }
  std::string out = "digraph {\n";
  NodePath path;
  EmitSubtree(tree, tree.Root(), path, depth_cap, out);
  out += "}\n";
  return out;
}

}  // namespace cwl
