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

#include "cwl/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cwl/rng.h"
#include "cwl/search_minimax.h"
#include "cwl/search_uct.h"

namespace cwl {

namespace {

uint64_t HashString(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return Mix64(h);
}

std::string FormatReal(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

void ParallelFor(size_t count, int workers,
                 const std::function<void(size_t)>& fn) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (workers == 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

std::string AlgorithmName(Algorithm a) {
  return a == Algorithm::kUct ? "uct" : "alphabeta";
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "uct") return Algorithm::kUct;
  if (name == "alphabeta" || name == "ab") return Algorithm::kAlphaBeta;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string Cell::Id() const {
  std::string id = "gamma=" + FormatReal("%.17g", gamma) +
                   ";b=" + std::to_string(branching_factor);
  if (algorithm == Algorithm::kUct) {
    id += ";c=" + FormatReal("%.17g", exploration);
  }
  id += ";h=" + heuristic.label + ";algo=" + AlgorithmName(algorithm) +
        ";dmax=" + std::to_string(max_depth);
  return id;
}

GameParams Cell::TreeParams(int tree_index) const {
  uint64_t seed = HashCombine(HashCombine(Mix64(master_seed), HashString(Id())),
                              static_cast<uint64_t>(tree_index));
  return GameParams{branching_factor, gamma, max_depth, seed};
}

uint64_t Cell::SearchSeed(int tree_index) const {
  return HashCombine(TreeParams(tree_index).seed, 0x7365617263680000ULL);
}

void GridSpec::Validate() const {
  if (trees < 1) throw std::invalid_argument("trees per cell must be >= 1");
  if (budgets.empty()) throw std::invalid_argument("budgets must be non-empty");
  for (size_t i = 0; i < budgets.size(); ++i) {
    if (budgets[i] < 1 || (i > 0 && budgets[i] <= budgets[i - 1])) {
      throw std::invalid_argument("budgets must be positive and ascending");
    }
  }
  if (algorithm == Algorithm::kUct && budgets.front() != 10) {
    throw std::invalid_argument("the first UCT budget must be 10");
  }
  if (algorithm == Algorithm::kAlphaBeta && budgets.back() >= max_depth) {
    throw std::invalid_argument("alpha-beta depths must be below max depth");
  }
  if (gammas.empty() || branching_factors.empty() || heuristics.empty() ||
      (algorithm == Algorithm::kUct && explorations.empty())) {
    throw std::invalid_argument("every grid axis needs at least one value");
  }
  for (double g : gammas) GameParams{2, g, max_depth, 0}.Validate();
  for (int b : branching_factors) GameParams{b, 0.0, max_depth, 0}.Validate();
  for (double c : explorations) {
    if (!(c >= 0.0)) throw std::invalid_argument("c must be >= 0");
  }
}

std::vector<Cell> GridSpec::Cells() const {
  Validate();
  std::map<std::string, Heuristic> parsed;
  for (const std::string& h : heuristics) parsed.emplace(h, Heuristic::Parse(h));
  std::vector<double> cs = explorations;
  if (algorithm == Algorithm::kAlphaBeta) cs = {0.0};

  std::vector<Cell> cells;
  for (double g : gammas) {
    for (int b : branching_factors) {
      for (const std::string& h : heuristics) {
        for (double c : cs) {
          cells.push_back(Cell{g, b, c, parsed.at(h), algorithm, max_depth,
                               budgets, trees, seed});
        }
      }
    }
  }
  return cells;
}

std::vector<int> DefaultDecisions(const Cell& cell, int tree_index) {
  const GameParams params = cell.TreeParams(tree_index);
  const uint64_t seed = cell.SearchSeed(tree_index);
  std::vector<int> actions;
  if (cell.algorithm == Algorithm::kUct) {
    UctConfig cfg;
    cfg.exploration = cell.exploration;
    cfg.budget = cell.budgets.back();
    cfg.checkpoints = cell.budgets;
    cfg.heuristic = cell.heuristic;
    cfg.seed = seed;
    SearchResult r = RunUct(params, cfg);
    for (const CheckpointRecord& rec : r.checkpoints) actions.push_back(rec.action);
  } else {
    for (int64_t depth : cell.budgets) {
      MinimaxConfig cfg{static_cast<int>(depth), cell.heuristic, seed};
      actions.push_back(AlphaBeta(params, {}, cfg).best_action);
    }
  }
  return actions;
}

namespace {

std::vector<uint8_t> ScoreTree(const Cell& cell, int t, const Decider& decider) {
  const NodeInfo root = NodeMeta(cell.TreeParams(t), {});
  std::vector<int> actions = decider(cell, t);
  if (actions.size() != cell.budgets.size()) {
    throw std::logic_error("decider returned the wrong number of decisions");
  }
  std::vector<uint8_t> ok(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) {
    ok[i] = std::find(root.optimal_moves.begin(), root.optimal_moves.end(),
                      actions[i]) != root.optimal_moves.end();
  }
  return ok;
}

}  // namespace

std::vector<CellRecords> RunCells(const std::vector<Cell>& cells, int workers,
                                  const Decider& decider) {
  std::vector<CellRecords> out(cells.size());
  std::vector<std::pair<size_t, int>> tasks;
  for (size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].trees < 1) throw std::invalid_argument("trees must be >= 1");
    if (cells[c].budgets.empty()) throw std::invalid_argument("no budgets");
    out[c].cell = cells[c];
    out[c].correct.resize(cells[c].trees);
    for (int t = 0; t < cells[c].trees; ++t) tasks.emplace_back(c, t);
  }
  std::vector<double> seconds(tasks.size(), 0.0);
  ParallelFor(tasks.size(), workers, [&](size_t i) {
    auto start = std::chrono::steady_clock::now();
    auto [c, t] = tasks[i];
    out[c].correct[t] = ScoreTree(cells[c], t, decider);
    seconds[i] = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  });
  for (size_t i = 0; i < tasks.size(); ++i) {
    out[tasks[i].first].wall_seconds += seconds[i];
  }
  return out;
}

CellRecords RunCell(const Cell& cell, int workers, const Decider& decider) {
  return std::move(RunCells({cell}, workers, decider).front());
}

double BinomialSe(double p, int m) {
  return m > 0 ? std::sqrt(p * (1.0 - p) / m) : 0.0;
}

CellReport PathologyReport(const CellRecords& records) {
  const size_t nb = records.cell.budgets.size();
  if (nb == 0) throw std::invalid_argument("report needs a baseline budget");
  CellReport rep;
  rep.cell = records.cell;
  rep.trees = static_cast<int>(records.correct.size());
  rep.wall_seconds = records.wall_seconds;
  rep.delta.assign(nb, 0.0);
  for (const auto& row : records.correct) {
    for (size_t i = 0; i < nb; ++i) rep.delta[i] += row[i];
  }
  for (size_t i = 0; i < nb; ++i) {
    rep.delta[i] = rep.trees > 0 ? rep.delta[i] / rep.trees : 0.0;
    rep.se.push_back(BinomialSe(rep.delta[i], rep.trees));
  }
  rep.baseline_defined = rep.delta[0] > 0.0;
  for (size_t i = 0; i < nb; ++i) {
    rep.index.push_back(rep.baseline_defined
                            ? rep.delta[i] / rep.delta[0]
                            : std::numeric_limits<double>::quiet_NaN());
  }
  return rep;
}

double TheoremCBound(int64_t n) {
  if (n < 2) throw std::invalid_argument("theorem bound needs N >= 2");
  double nd = static_cast<double>(n);
  return std::sqrt(nd * nd * nd / (2.0 * std::log(nd)));
}

TheoremRunSummary RunTheoremExperiment(int branching_factor, int64_t budget,
                                       int max_depth, int trees, uint64_t seed,
                                       int workers) {
  TheoremRunSummary summary;
  summary.trees = trees;
  summary.c = TheoremCBound(budget);
  Cell cell{1.0, branching_factor, summary.c, Heuristic::Perfect(),
            Algorithm::kUct, max_depth, {budget}, trees, seed};
  std::vector<uint8_t> holds(trees, 0);
  Decider decider = [&](const Cell& c, int t) {
    UctConfig cfg;
    cfg.exploration = c.exploration;
    cfg.budget = budget;
    cfg.heuristic = c.heuristic;
    cfg.seed = c.SearchSeed(t);
    SearchResult r = RunUct(c.TreeParams(t), cfg);
    holds[t] = r.breadth_first.holds;
    return std::vector<int>{r.final_action()};
  };
  CellReport rep = PathologyReport(RunCell(cell, workers, decider));
  for (uint8_t h : holds) summary.breadth_first_holds += h;
  summary.accuracy = rep.delta[0];
  summary.se = rep.se[0];
  return summary;
}

std::string ResultsCsv(const std::vector<CellReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("empty report");
  std::string out = "gamma,b,c,heuristic,algo,budget,delta,se,pathology_index\n";
  for (const CellReport& r : reports) {
    if (r.cell.budgets.empty()) throw std::invalid_argument("cell without budgets");
    for (size_t i = 0; i < r.cell.budgets.size(); ++i) {
      out += FormatReal("%g", r.cell.gamma) + "," +
             std::to_string(r.cell.branching_factor) + "," +
             FormatReal("%g", r.cell.exploration) + "," +
             CsvField(r.cell.heuristic.label) + "," +
             AlgorithmName(r.cell.algorithm) + "," +
             std::to_string(r.cell.budgets[i]) + "," +
             FormatReal("%.6f", r.delta[i]) + "," + FormatReal("%.6f", r.se[i]) +
             "," +
             (r.baseline_defined ? FormatReal("%.6f", r.index[i]) : "NA") +
             "\n";
    }
  }
  return out;
}

std::string ResultsSvg(const std::vector<CellReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("empty report");
  // One panel per (gamma, b, heuristic, algo); one polyline per c.
  std::map<std::string, std::vector<const CellReport*>> panels;
  std::vector<std::string> order;
  for (const CellReport& r : reports) {
    std::string key = "gamma=" + FormatReal("%g", r.cell.gamma) +
                      " b=" + std::to_string(r.cell.branching_factor) + " " +
                      r.cell.heuristic.label + " " +
                      AlgorithmName(r.cell.algorithm);
    if (!panels.count(key)) order.push_back(key);
    panels[key].push_back(&r);
  }

  constexpr double kW = 360, kH = 260, kLeft = 50, kTop = 30, kPlotW = 280,
                   kPlotH = 180;
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  const int cols = std::min<int>(3, static_cast<int>(order.size()));
  const int rows = (static_cast<int>(order.size()) + cols - 1) / cols;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    FormatReal("%.0f", cols * kW) + "\" height=\"" +
                    FormatReal("%.0f", rows * kH) + "\">\n";
  for (size_t p = 0; p < order.size(); ++p) {
    const auto& cells = panels[order[p]];
    const double ox = (p % cols) * kW, oy = (p / cols) * kH;
    const bool log_x = cells.front()->cell.algorithm == Algorithm::kUct;
    auto xval = [&](int64_t budget) {
      return log_x ? std::log10(static_cast<double>(budget))
                   : static_cast<double>(budget);
    };
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = 1.0, ymax = 1.0;
    for (const CellReport* r : cells) {
      for (size_t i = 0; i < r->cell.budgets.size(); ++i) {
        xmin = std::min(xmin, xval(r->cell.budgets[i]));
        xmax = std::max(xmax, xval(r->cell.budgets[i]));
        if (r->baseline_defined) {
          ymin = std::min(ymin, r->index[i]);
          ymax = std::max(ymax, r->index[i]);
        }
      }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    ymin -= 0.05;
    ymax += 0.05;
    auto px = [&](double x) { return ox + kLeft + (x - xmin) / (xmax - xmin) * kPlotW; };
    auto py = [&](double y) { return oy + kTop + (ymax - y) / (ymax - ymin) * kPlotH; };

    svg += "<g>\n<text x=\"" + FormatReal("%.1f", ox + kLeft) + "\" y=\"" +
           FormatReal("%.1f", oy + 18) + "\" font-size=\"12\">" +
           XmlEscape(order[p]) + "</text>\n";
    svg += "<rect x=\"" + FormatReal("%.1f", ox + kLeft) + "\" y=\"" +
           FormatReal("%.1f", oy + kTop) + "\" width=\"" +
           FormatReal("%.1f", kPlotW) + "\" height=\"" +
           FormatReal("%.1f", kPlotH) +
           "\" fill=\"none\" stroke=\"#000\"/>\n";
    // Reference line at index 1.
    svg += "<line x1=\"" + FormatReal("%.1f", px(xmin)) + "\" y1=\"" +
           FormatReal("%.1f", py(1.0)) + "\" x2=\"" +
           FormatReal("%.1f", px(xmax)) + "\" y2=\"" +
           FormatReal("%.1f", py(1.0)) +
           "\" stroke=\"#999\" stroke-dasharray=\"4\"/>\n";
    svg += "<text x=\"" + FormatReal("%.1f", ox + kLeft) + "\" y=\"" +
           FormatReal("%.1f", oy + kTop + kPlotH + 16) +
           "\" font-size=\"10\">" +
           (log_x ? "log10(budget)" : "search depth") + " " +
           FormatReal("%g", xmin) + " .. " + FormatReal("%g", xmax) +
           "; pathology index " + FormatReal("%.2f", ymin) + " .. " +
           FormatReal("%.2f", ymax) + "</text>\n";
    for (size_t s = 0; s < cells.size(); ++s) {
      const CellReport* r = cells[s];
      if (!r->baseline_defined) continue;
      std::string pts;
      for (size_t i = 0; i < r->cell.budgets.size(); ++i) {
        if (i > 0) pts += ' ';
        pts += FormatReal("%.1f", px(xval(r->cell.budgets[i]))) + "," +
               FormatReal("%.1f", py(r->index[i]));
      }
      const char* color = kColors[s % 8];
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" points=\"" + pts + "\"/>\n";
      svg += "<text x=\"" + FormatReal("%.1f", ox + kLeft + kPlotW + 4) +
             "\" y=\"" + FormatReal("%.1f", oy + kTop + 12 + 12.0 * s) +
             "\" font-size=\"10\" fill=\"" + color + "\">" +
             (r->cell.algorithm == Algorithm::kUct
                  ? "c=" + FormatReal("%g", r->cell.exploration)
                  : std::string("ab")) +
             "</text>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

int DefaultWorkerCount() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace cwl
