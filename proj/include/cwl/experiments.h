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

#ifndef CWL_EXPERIMENTS_H_
#define CWL_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cwl/heuristics.h"
#include "cwl/tree_model.h"

namespace cwl {

enum class Algorithm { kUct, kAlphaBeta };

std::string AlgorithmName(Algorithm a);
Algorithm ParseAlgorithm(const std::string& name);

// One grid point. For alpha-beta, `budgets` are search depths and
// `exploration` is unused.
struct Cell {
  double gamma = 1.0;
  int branching_factor = 2;
  double exploration = 1.0;
  Heuristic heuristic;
  Algorithm algorithm = Algorithm::kUct;
  int max_depth = 50;
  std::vector<int64_t> budgets;
  int trees = 500;
  uint64_t master_seed = 0;

  // Canonical text naming every parameter that defines the cell's results.
  std::string Id() const;
  GameParams TreeParams(int tree_index) const;
  uint64_t SearchSeed(int tree_index) const;
};

struct GridSpec {
  std::vector<double> gammas = {0.9, 1.0};
  std::vector<int> branching_factors = {2, 5, 10};
  std::vector<double> explorations = {0.1, 0.5, 1.0, 2.0, 5.0};
  std::vector<std::string> heuristics = {"perfect"};
  std::vector<int64_t> budgets = {10, 100, 1000, 10000, 100000};
  int max_depth = 50;
  int trees = 500;
  uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kUct;

  // M >= 1, budgets strictly ascending, and for UCT the first budget is 10.
  void Validate() const;
  // Cartesian product in gamma, b, heuristic, c order. Alpha-beta grids
  // collapse the c axis to a single cell.
  std::vector<Cell> Cells() const;
};

// Chosen root action at each budget for one tree. The default runs the
// cell's algorithm; tests substitute stubs.
using Decider = std::function<std::vector<int>(const Cell&, int tree_index)>;

std::vector<int> DefaultDecisions(const Cell& cell, int tree_index);

struct CellRecords {
  Cell cell;
  // correct[t][i]: tree t chose an optimal root move at budget i.
  std::vector<std::vector<uint8_t>> correct;
  double wall_seconds = 0.0;
};

// Runs all M trees of one cell. A decision is correct iff the chosen action
// is in the root's optimal-move set.
CellRecords RunCell(const Cell& cell, int workers = 1,
                    const Decider& decider = DefaultDecisions);

// Runs every (cell, tree) task over one worker pool. Output order follows
// `cells` regardless of scheduling.
std::vector<CellRecords> RunCells(const std::vector<Cell>& cells,
                                  int workers = 1,
                                  const Decider& decider = DefaultDecisions);

struct CellReport {
  Cell cell;
  std::vector<double> delta;
  std::vector<double> se;
  // delta_j / delta_baseline; NaN when the baseline accuracy is 0.
  std::vector<double> index;
  bool baseline_defined = true;
  int trees = 0;
  double wall_seconds = 0.0;

  bool Pathological(size_t budget_index) const {
    return baseline_defined && index[budget_index] < 1.0;
  }
};

CellReport PathologyReport(const CellRecords& records);

// Binomial standard error sqrt(p (1 - p) / m).
double BinomialSe(double p, int m);

// Smallest c that forces breadth-first growth within N iterations:
// sqrt(N^3 / (2 ln N)). Throws for N < 2.
double TheoremCBound(int64_t n);

struct TheoremRunSummary {
  int trees = 0;
  int breadth_first_holds = 0;
  double accuracy = 0.0;
  double se = 0.0;
  double c = 0.0;
};

// UCT with the Perfect heuristic and c = TheoremCBound(budget), gamma = 1.
TheoremRunSummary RunTheoremExperiment(int branching_factor, int64_t budget,
                                       int max_depth, int trees, uint64_t seed,
                                       int workers = 1);

// Header: gamma,b,c,heuristic,algo,budget,delta,se,pathology_index.
// Throws std::invalid_argument for an empty report or a cell with no budgets.
std::string ResultsCsv(const std::vector<CellReport>& reports);
std::string ResultsSvg(const std::vector<CellReport>& reports);

int DefaultWorkerCount();

// Runs fn(i) for i in [0, count) on `workers` threads. Rethrows the first
// exception after all threads join.
void ParallelFor(size_t count, int workers,
                 const std::function<void(size_t)>& fn);

}  // namespace cwl

#endif  // CWL_EXPERIMENTS_H_
