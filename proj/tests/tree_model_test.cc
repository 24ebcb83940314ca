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
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace cwl {
namespace {

// Oracle: exact +1 fraction at each depth 0..n of one tree, by enumerating
// every node.
std::vector<double> EnumeratedDensities(const GameParams& params, int n) {
  GameTree tree(params);
  std::vector<double> plus(n + 1, 0.0);
  std::function<void(const NodeState&)> visit = [&](const NodeState& s) {
    if (s.value > 0) plus[s.depth] += 1.0;
    if (s.depth == n) return;
    for (int i = 0; i < params.branching_factor; ++i) visit(tree.Child(s, i));
  };
  visit(tree.Root());
  for (int d = 0; d <= n; ++d) {
    plus[d] /= std::pow(params.branching_factor, d);
  }
  return plus;
}

std::vector<double> MeanEnumeratedDensities(GameParams params, int n, int seeds) {
  std::vector<double> mean(n + 1, 0.0);
  for (int s = 0; s < seeds; ++s) {
    params.seed = 1000 + s;
    std::vector<double> d = EnumeratedDensities(params, n);
    for (int i = 0; i <= n; ++i) mean[i] += d[i] / seeds;
  }
  return mean;
}

TEST(GameParamsTest, RejectsBadParams) {
  EXPECT_THROW((GameParams{1, 0.5, 10, 0}.Validate()), std::invalid_argument);
  EXPECT_THROW((GameParams{2, 0.5, 0, 0}.Validate()), std::invalid_argument);
  EXPECT_THROW((GameParams{2, 1.5, 10, 0}.Validate()), std::invalid_argument);
  EXPECT_THROW((GameParams{2, -0.1, 10, 0}.Validate()), std::invalid_argument);
  EXPECT_NO_THROW((GameParams{2, 0.0, 1, 0}.Validate()));
}

TEST(NodeValueTest, RootIsMaxChoicePlusOne) {
  for (uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    GameParams p{3, 0.7, 10, seed};
    EXPECT_EQ(NodeValue(p, {}), +1);
    NodeInfo info = NodeMeta(p, {});
    EXPECT_EQ(info.value, +1);
    EXPECT_EQ(info.kind, NodeKind::kChoice);
    EXPECT_EQ(info.player, Player::kMax);
    EXPECT_FALSE(info.terminal);
  }
}

TEST(NodeValueTest, ZeroCriticalRateNeverFlips) {
  GameParams p{3, 0.0, 8, 5};
  for (const NodePath& path :
       {NodePath{0}, NodePath{2, 1}, NodePath{1, 1, 1, 0, 2, 2, 0, 1}}) {
    EXPECT_EQ(NodeValue(p, path), +1);
  }
}

TEST(NodeValueTest, FullCriticalRateBinaryRootHasOneWinner) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    GameParams p{2, 1.0, 5, seed};
    EXPECT_EQ(NodeValue(p, NodePath{0}) + NodeValue(p, NodePath{1}), 0) << seed;
  }
}

TEST(NodeValueTest, RejectsInvalidPaths) {
  GameParams p{2, 0.5, 3, 0};
  EXPECT_THROW(NodeValue(p, NodePath{2}), std::out_of_range);
  EXPECT_THROW(NodeValue(p, NodePath{-1}), std::out_of_range);
  EXPECT_THROW(NodeValue(p, NodePath{0, 0, 0, 0}), std::out_of_range);
  EXPECT_NO_THROW(NodeValue(p, NodePath{1, 1, 1}));
}

TEST(NodeValueTest, Deterministic) {
  GameParams p{5, 0.6, 30, 1234};
  NodePath path = {4, 0, 3, 3, 1, 2, 0, 4, 1, 1, 2, 3};
  int first = NodeValue(p, path);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(NodeValue(p, path), first);
  // Querying other nodes in between must not matter.
  NodeValue(p, NodePath{1, 2, 3});
  EXPECT_EQ(NodeValue(p, path), first);
  EXPECT_EQ(GameTree(p).Walk(path).key, GameTree(p).Walk(path).key);
}

TEST(NodeValueTest, DifferentSeedsDifferentTrees) {
  int differ = 0;
  for (uint64_t s = 0; s < 50; ++s) {
    GameTree a(GameParams{4, 1.0, 10, s}), b(GameParams{4, 1.0, 10, s + 1});
    differ += a.DesignatedChild(a.Root()) != b.DesignatedChild(b.Root());
  }
  EXPECT_GT(differ, 20);
}

TEST(NodeMetaTest, ForcedNodesOfferEveryMove) {
  GameParams p{3, 1.0, 6, 17};
  GameTree tree(p);
  NodeState root = tree.Root();
  int loser = -1;
  for (int i = 0; i < 3; ++i) {
    if (tree.ChildValue(root, i) == -1) loser = i;
  }
  ASSERT_GE(loser, 0);
  // A -1 child of Max is a Min choice node; one of its -1 children is a Max
  // node with value -1, which is forced.
  NodeState min_choice = tree.Child(root, loser);
  EXPECT_EQ(min_choice.kind(), NodeKind::kChoice);
  int d = tree.DesignatedChild(min_choice);
  NodeState max_forced = tree.Child(min_choice, d);
  NodeInfo info = tree.Meta(max_forced);
  EXPECT_EQ(info.player, Player::kMax);
  EXPECT_EQ(info.value, -1);
  EXPECT_EQ(info.kind, NodeKind::kForced);
  EXPECT_EQ(info.optimal_moves, (std::vector<int>{0, 1, 2}));
}

TEST(NodeMetaTest, FullCriticalRateChoiceHasSingleOptimalMove) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    NodeInfo info = NodeMeta(GameParams{3, 1.0, 5, seed}, {});
    ASSERT_EQ(info.optimal_moves.size(), 1u);
    EXPECT_EQ(info.optimal_moves[0],
              GameTree(GameParams{3, 1.0, 5, seed}).DesignatedChild(GameTree(GameParams{3, 1.0, 5, seed}).Root()));
  }
}

TEST(NodeMetaTest, TerminalAtMaxDepth) {
  GameParams p{2, 0.5, 3, 1};
  EXPECT_TRUE(NodeMeta(p, NodePath{0, 1, 0}).terminal);
  EXPECT_TRUE(NodeMeta(p, NodePath{0, 1, 0}).optimal_moves.empty());
  EXPECT_FALSE(NodeMeta(p, NodePath{0, 1}).terminal);
}

TEST(TreeInvariantTest, KindMatchesValueAndPlayer) {
  GameParams p{3, 0.5, 6, 3};
  GameTree tree(p);
  std::function<void(const NodeState&)> visit = [&](const NodeState& s) {
    NodeInfo info = tree.Meta(s);
    bool choice = (info.player == Player::kMax && info.value == 1) ||
                  (info.player == Player::kMin && info.value == -1);
    EXPECT_EQ(info.kind == NodeKind::kChoice, choice);
    EXPECT_EQ(info.player == Player::kMax, s.depth % 2 == 0);
    if (info.terminal) return;
    int same = 0;
    for (int i = 0; i < 3; ++i) {
      int v = tree.ChildValue(s, i);
      same += v == s.value;
      if (info.kind == NodeKind::kForced) EXPECT_EQ(v, s.value);
    }
    EXPECT_GE(same, 1);
    EXPECT_FALSE(info.optimal_moves.empty());
    for (int i = 0; i < 3; ++i) visit(tree.Child(s, i));
  };
  visit(tree.Root());
}

TEST(TreeInvariantTest, DesignatedChildUniform) {
  for (int b : {2, 3, 5}) {
    std::vector<int> counts(b, 0);
    const int seeds = 20000;
    for (int s = 0; s < seeds; ++s) {
      GameTree tree(GameParams{b, 0.5, 4, static_cast<uint64_t>(s)});
      ++counts[tree.DesignatedChild(tree.Root())];
    }
    double expected = static_cast<double>(seeds) / b;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 1% critical values of chi-square with b - 1 degrees of freedom.
    double critical = b == 2 ? 6.635 : b == 3 ? 9.210 : 13.277;
    EXPECT_LT(chi2, critical) << "b=" << b;
  }
}

TEST(TreeInvariantTest, FlipRateMatchesGamma) {
  for (double gamma : {0.3, 0.9}) {
    int64_t flips = 0, trials = 0;
    for (uint64_t s = 0; trials < 200000; ++s) {
      GameTree tree(GameParams{4, gamma, 4, s});
      NodeState root = tree.Root();
      int d = tree.DesignatedChild(root);
      for (int i = 0; i < 4; ++i) {
        if (i == d) continue;
        ++trials;
        flips += tree.ChildValue(root, i) != root.value;
      }
    }
    double rate = static_cast<double>(flips) / trials;
    double se = std::sqrt(gamma * (1 - gamma) / trials);
    EXPECT_NEAR(rate, gamma, 3 * se) << gamma;
  }
}

TEST(PlusDensityTest, Examples) {
  GameParams p{2, 1.0, 20, 0};
  EXPECT_DOUBLE_EQ(PlusDensity(p, 0), 1.0);
  EXPECT_DOUBLE_EQ(PlusDensity(p, 1), 0.5);
  EXPECT_DOUBLE_EQ(PlusDensity(p, 2), 0.75);
  GameParams flat{3, 0.0, 20, 0};
  for (int n = 0; n <= 20; ++n) EXPECT_DOUBLE_EQ(PlusDensity(flat, n), 1.0);
  EXPECT_THROW(PlusDensity(p, 21), std::out_of_range);
  EXPECT_THROW(PlusDensity(p, -1), std::out_of_range);
}

TEST(PlusDensityTest, ClosedFormDisagreesAtFiniteDepth) {
  GameParams p{2, 1.0, 60, 0};
  // Recurrence (and enumeration) give 0.75 at depth 2; the closed form 0.875.
  EXPECT_DOUBLE_EQ(PlusDensity(p, 2), 0.75);
  EXPECT_DOUBLE_EQ(ClosedFormEvenDensity(p, 1), 0.875);
  // Both share the same limit.
  EXPECT_NEAR(ClosedFormEvenDensity(p, 25), PlusDensity(p, 50), 1e-12);
}

TEST(PlusDensityTest, MatchesEnumerationOracle) {
  for (double gamma : {0.5, 1.0}) {
    for (int b : {2, 3}) {
      GameParams p{b, gamma, 20, 0};
      const int n = b == 2 ? 10 : 7;
      std::vector<double> oracle = MeanEnumeratedDensities(p, n, 1000);
      for (int d = 0; d <= n; ++d) {
        EXPECT_NEAR(PlusDensity(p, d), oracle[d], 0.02)
            << "gamma=" << gamma << " b=" << b << " n=" << d;
      }
    }
  }
  // Exact for gamma = 1, b = 2: each level's +1 count is the same in every tree.
  std::vector<double> one = EnumeratedDensities(GameParams{2, 1.0, 12, 42}, 12);
  for (int d = 0; d <= 12; ++d) {
    EXPECT_NEAR(one[d], PlusDensity(GameParams{2, 1.0, 12, 0}, d), 1e-12);
  }
}

TEST(DensityLimitsTest, Examples) {
  DensityLimits lim = ComputeDensityLimits(GameParams{2, 1.0, 10, 0});
  EXPECT_TRUE(lim.defined);
  EXPECT_DOUBLE_EQ(lim.even_limit, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(lim.odd_limit, 1.0 / 3.0);
  for (double g : {0.1, 0.5, 0.9, 1.0}) {
    for (int b : {2, 3, 10, 1000}) {
      DensityLimits l = ComputeDensityLimits(GameParams{b, g, 10, 0});
      EXPECT_NEAR(l.even_limit + l.odd_limit, 1.0, 1e-15);
    }
  }
  DensityLimits wide = ComputeDensityLimits(GameParams{1000000, 1.0, 10, 0});
  EXPECT_NEAR(wide.even_limit, 1.0, 1e-5);
  EXPECT_NEAR(wide.odd_limit, 0.0, 1e-5);
  DensityLimits none = ComputeDensityLimits(GameParams{2, 0.0, 10, 0});
  EXPECT_FALSE(none.defined);
  EXPECT_EQ(none.even_limit, 1.0);
  EXPECT_EQ(none.odd_limit, 1.0);
}

TEST(DensityLimitsTest, EvenDepthsApproachLimitMonotonically) {
  GameParams p{2, 1.0, 50, 0};
  double limit = ComputeDensityLimits(p).even_limit;
  double prev = std::abs(PlusDensity(p, 0) - limit);
  for (int d = 1; d <= 25; ++d) {
    double gap = std::abs(PlusDensity(p, 2 * d) - limit);
    EXPECT_LT(gap, prev) << d;
    prev = gap;
  }
  EXPECT_LT(std::abs(PlusDensity(p, 50) - limit), 1e-3);
}

TEST(SubtreePlusDensityTest, Examples) {
  GameParams p{2, 1.0, 10, 0};
  EXPECT_DOUBLE_EQ(SubtreePlusDensity(+1, Player::kMin, 0, p), 1.0);
  EXPECT_DOUBLE_EQ(SubtreePlusDensity(+1, Player::kMax, 0, p), 1.0);
  EXPECT_DOUBLE_EQ(SubtreePlusDensity(-1, Player::kMax, 1, p), 0.0);
  for (int n = 0; n <= 10; ++n) {
    EXPECT_DOUBLE_EQ(SubtreePlusDensity(+1, Player::kMax, n, p), PlusDensity(p, n));
  }
  EXPECT_THROW(SubtreePlusDensity(+1, Player::kMax, 11, p), std::out_of_range);
}

TEST(SubtreePlusDensityTest, MinChoiceGrandchildrenMatchSampling) {
  // Sample grandchildren of Min choice nodes (-1 children of the root).
  const GameParams base{2, 1.0, 6, 0};
  int64_t plus = 0, total = 0;
  for (uint64_t s = 0; total < 100000; ++s) {
    GameParams p = base;
    p.seed = s;
    GameTree tree(p);
    NodeState root = tree.Root();
    for (int i = 0; i < 2; ++i) {
      if (tree.ChildValue(root, i) != -1) continue;
      NodeState m = tree.Child(root, i);
      for (int j = 0; j < 2; ++j) {
        NodeState c = tree.Child(m, j);
        for (int k = 0; k < 2; ++k) {
          plus += tree.ChildValue(c, k) > 0;
          ++total;
        }
      }
    }
  }
  EXPECT_NEAR(static_cast<double>(plus) / total,
              SubtreePlusDensity(-1, Player::kMin, 2, base), 0.02);
}

TEST(ExportTreeTest, Shapes) {
  GameParams p{2, 1.0, 5, 3};
  std::string zero = ExportTree(p, 0);
  EXPECT_EQ(zero, "digraph {\n  \"r\" [label=\"+1\"]\n}\n");

  std::string one = ExportTree(p, 1);
  auto count = [](const std::string& s, const std::string& what) {
    size_t n = 0;
    for (size_t pos = s.find(what); pos != std::string::npos;
         pos = s.find(what, pos + 1)) {
      ++n;
    }
    return n;
  };
  EXPECT_EQ(count(one, "[label="), 3u);
  EXPECT_EQ(count(one, " -> "), 2u);
  EXPECT_NE(one.find("\"r\" -> \"0\""), std::string::npos);

  std::string flat = ExportTree(GameParams{2, 0.0, 5, 3}, 2);
  EXPECT_EQ(count(flat, "[label=\"+1\"]"), 7u);
  EXPECT_EQ(count(flat, "[label=\"-1\"]"), 0u);
  EXPECT_NE(flat.find("\"0/1\""), std::string::npos);
}

TEST(ExportTreeTest, RejectsHugeExports) {
  EXPECT_THROW(ExportTree(GameParams{10, 1.0, 50, 0}, 7), std::invalid_argument);
  EXPECT_NO_THROW(ExportTree(GameParams{10, 1.0, 50, 0}, 2));
  EXPECT_THROW(ExportTree(GameParams{2, 1.0, 5, 0}, 6), std::invalid_argument);
}

}  // namespace
}  // namespace cwl
