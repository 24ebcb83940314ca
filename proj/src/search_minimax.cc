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

#include "cwl/search_minimax.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cwl/rng.h"

namespace cwl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckRoot(const GameTree& game, std::span<const int> path,
               const MinimaxConfig& cfg) {
  if (cfg.depth < 1) throw std::invalid_argument("search depth must be >= 1");
  if (static_cast<int>(path.size()) + 1 > game.max_depth()) {
    throw std::invalid_argument("search root must have children");
  }
}

class AlphaBetaSearcher {
 public:
  AlphaBetaSearcher(const GameTree& game, const MinimaxConfig& cfg)
      : game_(game), cfg_(cfg) {}

  double Search(const NodeState& s, int remaining, double alpha, double beta) {
    if (remaining == 0 || game_.IsTerminal(s)) {
      ++evaluations_;
      return FrontierValue(game_, s, cfg_);
    }
    const int b = game_.branching_factor();
    if (s.player() == Player::kMax) {
      double v = -kInf;
      for (int a = 0; a < b; ++a) {
        v = std::max(v, Search(game_.Child(s, a), remaining - 1, alpha, beta));
        alpha = std::max(alpha, v);
        if (alpha >= beta) break;
      }
      return v;
    }
    double v = kInf;
    for (int a = 0; a < b; ++a) {
      v = std::min(v, Search(game_.Child(s, a), remaining - 1, alpha, beta));
      beta = std::min(beta, v);
      if (alpha >= beta) break;
    }
    return v;
  }

  int64_t evaluations() const { return evaluations_; }

 private:
  const GameTree& game_;
  const MinimaxConfig& cfg_;
  int64_t evaluations_ = 0;
};

class ExhaustiveSearcher {
 public:
  ExhaustiveSearcher(const GameTree& game, const MinimaxConfig& cfg)
      : game_(game), cfg_(cfg) {}

  double Search(const NodeState& s, int remaining) {
    if (remaining == 0 || game_.IsTerminal(s)) {
      ++evaluations_;
      return FrontierValue(game_, s, cfg_);
    }
    const bool max = s.player() == Player::kMax;
    double v = max ? -kInf : kInf;
    for (int a = 0; a < game_.branching_factor(); ++a) {
      double c = Search(game_.Child(s, a), remaining - 1);
      v = max ? std::max(v, c) : std::min(v, c);
    }
    return v;
  }

  int64_t evaluations() const { return evaluations_; }

 private:
  const GameTree& game_;
  const MinimaxConfig& cfg_;
  int64_t evaluations_ = 0;
};

}  // namespace

double FrontierValue(const GameTree& game, const NodeState& s,
                     const MinimaxConfig& cfg) {
  if (game.IsTerminal(s)) return TrueReward(s.value);
  SplitMix64 rng(HashCombine(
      HashCombine(cfg.seed, static_cast<uint64_t>(StreamTag::kHeuristic)),
      s.key));
  return Evaluate(cfg.heuristic,
                  EvalContext{s.value, s.player(), s.depth, &game.params()},
                  rng);
}

MinimaxResult AlphaBeta(const GameParams& params, std::span<const int> path,
                        const MinimaxConfig& cfg) {
  GameTree game(params);
  CheckRoot(game, path, cfg);
  const NodeState root = game.Walk(path);
  const bool max = root.player() == Player::kMax;
  AlphaBetaSearcher searcher(game, cfg);

  double alpha = -kInf, beta = kInf;
  MinimaxResult result;
  result.value = max ? -kInf : kInf;
  for (int a = 0; a < game.branching_factor(); ++a) {
    double v = searcher.Search(game.Child(root, a), cfg.depth - 1, alpha, beta);
    if (max ? v > result.value : v < result.value) {
      result.value = v;
      result.best_action = a;
    }
    if (max) {
      alpha = std::max(alpha, v);
    } else {
      beta = std::min(beta, v);
    }
  }
  result.frontier_evaluations = searcher.evaluations();
  return result;
}

MinimaxResult MinimaxReference(const GameParams& params,
                               std::span<const int> path,
                               const MinimaxConfig& cfg) {
  GameTree game(params);
  CheckRoot(game, path, cfg);
  if (cfg.depth * std::log10(params.branching_factor) > 6.0 + 1e-12) {
    throw std::invalid_argument("b^depth exceeds 10^6 frontier nodes");
  }
  const NodeState root = game.Walk(path);
  const bool max = root.player() == Player::kMax;
  ExhaustiveSearcher searcher(game, cfg);

  MinimaxResult result;
  result.value = max ? -kInf : kInf;
  for (int a = 0; a < game.branching_factor(); ++a) {
    double v = searcher.Search(game.Child(root, a), cfg.depth - 1);
    if (max ? v > result.value : v < result.value) {
      result.value = v;
      result.best_action = a;
    }
  }
  result.frontier_evaluations = searcher.evaluations();
  return result;
}

}  // namespace cwl
