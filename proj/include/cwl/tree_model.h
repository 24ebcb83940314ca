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

#ifndef CWL_TREE_MODEL_H_
#define CWL_TREE_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cwl {

enum class Player { kMax, kMin };
enum class NodeKind { kChoice, kForced };

inline Player PlayerAtDepth(int depth) {
  return depth % 2 == 0 ? Player::kMax : Player::kMin;
}
inline Player Opponent(Player p) {
  return p == Player::kMax ? Player::kMin : Player::kMax;
}

// Parameters of one critical win-loss game. The root is always a Max choice
// node with value +1.
struct GameParams {
  int branching_factor = 2;
  double critical_rate = 1.0;
  int max_depth = 50;
  uint64_t seed = 0;

  // Throws std::invalid_argument on b < 2, d_max < 1 or gamma outside [0,1].
  void Validate() const;

  bool operator==(const GameParams&) const = default;
};

// Child indices from the root. The path is the only node identity.
using NodePath = std::vector<int>;

// "r" for the root, otherwise slash separated indices ("0/2/1").
std::string PathToString(std::span<const int> path);

// Cursor into a lazily generated tree. Carries everything needed to derive the
// children in O(1), so searches never re-walk paths from the root.
struct NodeState {
  uint64_t key = 0;
  int depth = 0;
  int value = +1;

  Player player() const { return PlayerAtDepth(depth); }
  NodeKind kind() const {
    bool choice = (player() == Player::kMax) == (value == +1);
    return choice ? NodeKind::kChoice : NodeKind::kForced;
  }
};

struct NodeInfo {
  int value = +1;
  NodeKind kind = NodeKind::kChoice;
  Player player = Player::kMax;
  bool terminal = false;
  std::vector<int> optimal_moves;
};

// Read-only view of one game instance. Cheap to copy and safe to share.
class GameTree {
 public:
  explicit GameTree(const GameParams& params);

  const GameParams& params() const { return params_; }
  int branching_factor() const { return params_.branching_factor; }
  int max_depth() const { return params_.max_depth; }

  NodeState Root() const;
  bool IsTerminal(const NodeState& s) const {
    return s.depth >= params_.max_depth;
  }

  // Index of the child that keeps the parent's value at a choice node, or -1
  // at a forced node.
  int DesignatedChild(const NodeState& s) const;

  // Value of child i without materializing its key.
  int ChildValue(const NodeState& s, int i) const;

  // Throws std::out_of_range for a terminal parent or a bad index.
  NodeState Child(const NodeState& s, int i) const;

  // Throws std::out_of_range if the path is invalid for these params.
  NodeState Walk(std::span<const int> path) const;

  NodeInfo Meta(const NodeState& s) const;

 private:
  GameParams params_;
  uint64_t root_key_;
};

int NodeValue(const GameParams& params, std::span<const int> path);
NodeInfo NodeMeta(const GameParams& params, std::span<const int> path);

// Expected density of +1 children below a choice node: 1 - gamma + gamma / b.
double PlusChildDensity(const GameParams& params);

// Density of +1 nodes `remaining` plies below a node with the given value and
// player on move. Iterates f' = f k at Max levels and f' = f k + 1 - k at Min
// levels.
double SubtreePlusDensity(int value, Player player, int remaining,
                          const GameParams& params);

// Density of +1 nodes at depth n below the root. Requires 0 <= n <= d_max.
double PlusDensity(const GameParams& params, int n);

// Closed form from the literature, f_2d = k^2d + (1 - k^(2d+2)) / (1 + k).
// Kept for comparison only; it disagrees with the recurrence at finite depth.
double ClosedFormEvenDensity(const GameParams& params, int half_depth);

struct DensityLimits {
  double even_limit = 1.0;
  double odd_limit = 1.0;
  // False when gamma = 0; both limits are then reported as 1.
  bool defined = true;
};

DensityLimits ComputeDensityLimits(const GameParams& params);

// Graphviz digraph of the top `depth_cap` plies. Throws std::invalid_argument
// when b^depth_cap exceeds 10^6 or depth_cap is outside [0, d_max].
std::string ExportTree(const GameParams& params, int depth_cap);

}  // namespace cwl

#endif  // CWL_TREE_MODEL_H_
