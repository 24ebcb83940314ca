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

// Command-line entry point: tree export, density tables, single searches,
// experiment grids, prefix-value checks, theorem runs and engine probing.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cwl/engine_probe.h"
#include "cwl/experiments.h"
#include "cwl/heuristics.h"
#include "cwl/pv_model.h"
#include "cwl/run_config.h"
#include "cwl/search_minimax.h"
#include "cwl/search_uct.h"
#include "cwl/tree_model.h"

namespace {

constexpr const char* kVersion = "cwl 1.0.0";

using cwl::GameParams;

struct Globals {
  int workers = cwl::DefaultWorkerCount();
  uint64_t seed = 0;
  std::string out_dir = ".";
  std::string config;
};

void AddGlobals(CLI::App* sub, Globals& g) {
  sub->add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", g.seed, "Master seed");
  sub->add_option("--out-dir", g.out_dir, "Directory for output files");
  sub->add_option("--config", g.config, "Flat key=value config file");
}

std::string Fmt(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::filesystem::path OutPath(const Globals& g, const std::string& name) {
  std::filesystem::create_directories(g.out_dir);
  return std::filesystem::path(g.out_dir) / name;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Echo of every option's resolved value, for provenance.
void WriteManifest(const Globals& g, const CLI::App* sub) {
  std::string text = std::string("# ") + kVersion + "\nsubcommand=" +
                     sub->get_name() + "\n";
  for (const CLI::Option* opt : sub->get_options()) {
    std::string name = opt->get_single_name();
    if (name == "help" || name == "config") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) {
        value += (value.empty() ? "" : " ") + r;
      }
    } else {
      value = opt->get_default_str();
    }
    text += name + "=" + value + "\n";
  }
  WriteFile(OutPath(g, sub->get_name() + ".manifest"), text);
}

std::vector<std::string> KnownKeys(const CLI::App* sub) {
  std::vector<std::string> keys;
  for (const CLI::Option* opt : sub->get_options()) {
    std::string name = opt->get_single_name();
    if (name != "help" && name != "config") keys.push_back(name);
  }
  return keys;
}

// ---------------------------------------------------------------------------

struct TreeFlags {
  int b = 2;
  double gamma = 1.0;
  int d_max = 50;
};

void AddTreeFlags(CLI::App* sub, TreeFlags& t) {
  sub->add_option("--b", t.b, "Branching factor");
  sub->add_option("--gamma", t.gamma, "Critical rate");
  sub->add_option("--d-max", t.d_max, "Maximum game depth");
}

int RunGenTree(const Globals& g, const TreeFlags& t, int depth_cap) {
  GameParams params{t.b, t.gamma, t.d_max, g.seed};
  std::string dot = cwl::ExportTree(params, depth_cap);
  auto path = OutPath(g, "tree.dot");
  WriteFile(path, dot);
  long nodes = std::count(dot.begin(), dot.end(), '[');
  std::cout << "wrote " << path.string() << " (" << nodes << " nodes)\n";
  return 0;
}

int RunDensity(const Globals& g, const TreeFlags& t, int n) {
  GameParams params{t.b, t.gamma, t.d_max, g.seed};
  if (n >= 0) {
    std::cout << Fmt("%.10g", cwl::PlusDensity(params, n)) << "\n";
    return 0;
  }
  cwl::DensityLimits lim = cwl::ComputeDensityLimits(params);
  std::string csv = "n,plus_density,closed_form\n";
  std::cout << "k = " << Fmt("%.10g", cwl::PlusChildDensity(params)) << "\n"
            << "limits: even " << Fmt("%.10g", lim.even_limit) << ", odd "
            << Fmt("%.10g", lim.odd_limit)
            << (lim.defined ? "" : " (gamma = 0: no distinct limits)") << "\n"
            << "  n  f_n           closed form (even n)\n";
  for (int i = 0; i <= t.d_max; ++i) {
    double f = cwl::PlusDensity(params, i);
    std::string closed =
        i % 2 == 0 ? Fmt("%.10f", cwl::ClosedFormEvenDensity(params, i / 2)) : "";
    csv += std::to_string(i) + "," + Fmt("%.17g", f) + "," + closed + "\n";
    std::cout << Fmt("%3.0f", i) << "  " << Fmt("%.10f", f) << "  " << closed
              << "\n";
  }
  WriteFile(OutPath(g, "density.csv"), csv);
  return 0;
}

struct SearchFlags {
  std::string algo = "uct";
  double c = 1.0;
  int64_t budget = 1000;
  std::vector<int64_t> checkpoints;
  std::string heuristic = "perfect";
  int depth = 4;
  bool trace = false;
};

int RunSearch(const Globals& g, const TreeFlags& t, const SearchFlags& s) {
  GameParams params{t.b, t.gamma, t.d_max, g.seed};
  cwl::Heuristic h = cwl::Heuristic::Parse(s.heuristic);
  cwl::NodeInfo root = cwl::NodeMeta(params, {});
  nlohmann::json j;
  j["optimal_moves"] = root.optimal_moves;

  if (cwl::ParseAlgorithm(s.algo) == cwl::Algorithm::kAlphaBeta) {
    cwl::MinimaxConfig cfg{s.depth, h, cwl::HashCombine(g.seed, 1)};
    cwl::MinimaxResult r = cwl::AlphaBeta(params, {}, cfg);
    j["algorithm"] = "alphabeta";
    j["value"] = r.value;
    j["best_action"] = r.best_action;
    j["frontier_evaluations"] = r.frontier_evaluations;
    std::cout << "alpha-beta depth " << s.depth << ": action " << r.best_action
              << ", value " << Fmt("%.6f", r.value) << ", "
              << r.frontier_evaluations << " frontier evaluations\n";
  } else {
    cwl::UctConfig cfg;
    cfg.exploration = s.c;
    cfg.budget = s.budget;
    cfg.checkpoints = s.checkpoints;
    cfg.heuristic = h;
    cfg.seed = cwl::HashCombine(g.seed, 1);
    std::string trace = "iteration,path,reward\n";
    cwl::IterationObserver obs;
    if (s.trace) {
      obs = [&](int64_t it, std::span<const int> path, double r) {
        trace += cwl::FormatTraceLine(it, path, r) + "\n";
      };
    }
    cwl::SearchResult r = cwl::RunUct(params, cfg, obs);
    if (s.trace) WriteFile(OutPath(g, "trace.csv"), trace);
    j["algorithm"] = "uct";
    j["tree_size"] = r.tree_size;
    j["depth_histogram"] = r.depth_histogram;
    j["breadth_first"] = {{"holds", r.breadth_first.holds},
                          {"max_sibling_gap", r.breadth_first.max_sibling_gap}};
    for (const cwl::CheckpointRecord& c : r.checkpoints) {
      j["checkpoints"].push_back({{"iteration", c.iteration},
                                  {"action", c.action},
                                  {"child_visits", c.child_visits},
                                  {"child_means", c.child_means}});
      bool ok = std::count(root.optimal_moves.begin(), root.optimal_moves.end(),
                           c.action) > 0;
      std::cout << "iteration " << c.iteration << ": action " << c.action
                << (ok ? " (optimal)" : " (sub-optimal)") << "\n";
    }
    std::cout << "tree size " << r.tree_size << ", breadth-first "
              << (r.breadth_first.holds ? "yes" : "no") << " (max sibling gap "
              << r.breadth_first.max_sibling_gap << ")\n";
  }
  WriteFile(OutPath(g, "search.json"), j.dump(2) + "\n");
  return 0;
}

struct ExperimentFlags {
  cwl::GridSpec grid;
  std::string algo = "uct";
  std::vector<std::string> formats = {"csv", "svg"};
};

int RunExperiment(const Globals& g, ExperimentFlags& e) {
  e.grid.seed = g.seed;
  e.grid.algorithm = cwl::ParseAlgorithm(e.algo);
  std::vector<cwl::Cell> cells = e.grid.Cells();
  std::cout << cells.size() << " cells x " << e.grid.trees << " trees on "
            << g.workers << " workers\n";
  std::vector<cwl::CellRecords> records = cwl::RunCells(cells, g.workers);
  std::vector<cwl::CellReport> reports;
  for (const auto& r : records) reports.push_back(cwl::PathologyReport(r));

  for (const std::string& f : e.formats) {
    if (f == "csv") {
      WriteFile(OutPath(g, "results.csv"), cwl::ResultsCsv(reports));
    } else if (f == "svg") {
      WriteFile(OutPath(g, "results.svg"), cwl::ResultsSvg(reports));
    } else {
      throw std::invalid_argument("unknown output format '" + f + "'");
    }
  }
  for (const cwl::CellReport& r : reports) {
    std::cout << r.cell.Id() << "\n";
    for (size_t i = 0; i < r.cell.budgets.size(); ++i) {
      std::cout << "  budget " << r.cell.budgets[i] << ": delta "
                << Fmt("%.3f", r.delta[i]) << " +- " << Fmt("%.3f", r.se[i])
                << ", P " << (r.baseline_defined ? Fmt("%.3f", r.index[i]) : "NA")
                << (r.Pathological(i) ? "  pathological" : "") << "\n";
    }
  }
  return 0;
}

struct PvFlags {
  int b = 2;
  int cost = 1;
  int max_cost = 0;
  int d_max = 20;
  int seeds = 100;
  int max_d = 10;
  int playouts = 1000;
  int instances = 200;
};

int RunPvCheck(const Globals& g, const PvFlags& f) {
  std::string csv = "seed,d,sum_optimal,sum_other,difference\n";
  int violations = 0;
  for (int s = 0; s < f.seeds; ++s) {
    cwl::PvParams p{f.b, f.cost, f.max_cost, f.d_max, g.seed + s};
    cwl::PvTree tree(p);
    int opt = tree.DesignatedChild(tree.Root());
    int other = opt == 0 ? 1 : 0;
    for (int d = 0; d <= std::min(f.max_d, f.d_max - 1); ++d) {
      int64_t a = cwl::PvLeafSum(p, std::vector<int>{opt}, d);
      int64_t b = cwl::PvLeafSum(p, std::vector<int>{other}, d);
      csv += std::to_string(p.seed) + "," + std::to_string(d) + "," +
             std::to_string(a) + "," + std::to_string(b) + "," +
             std::to_string(a - b) + "\n";
      if (f.b == 2 && f.max_cost == 0 && a - b != int64_t{f.cost} << d) ++violations;
    }
  }
  int correct = 0;
  for (int i = 0; i < f.instances; ++i) {
    cwl::PvParams p{f.b, f.cost, f.max_cost, f.d_max, g.seed + 1000003ULL * (i + 1)};
    cwl::PvTree tree(p);
    cwl::PvPlan plan = cwl::PvNaivePlan(p, f.playouts, cwl::HashCombine(g.seed, i));
    correct += plan.action == tree.DesignatedChild(tree.Root());
  }
  WriteFile(OutPath(g, "pv_check.csv"), csv);
  if (f.b == 2 && f.max_cost == 0) {
    std::cout << "leaf-sum gap = cost * 2^d: "
              << (violations == 0 ? "holds" : "VIOLATED") << " for " << f.seeds
              << " seeds, d <= " << f.max_d << "\n";
  }
  std::cout << "naive 1-ply planner accuracy: " << correct << "/" << f.instances
            << " (" << Fmt("%.3f", double(correct) / f.instances) << ")\n";
  return violations == 0 ? 0 : 2;
}

struct TheoremFlags {
  std::vector<int64_t> n = {10, 100, 1000, 10000, 100000};
  std::vector<int> b = {2, 3};
  int trees = 0;
  int d_max = 50;
};

int RunTheorem(const Globals& g, const TheoremFlags& f) {
  std::string csv = "N,c_bound\n";
  std::cout << "       N  c bound\n";
  for (int64_t n : f.n) {
    double c = cwl::TheoremCBound(n);
    csv += std::to_string(n) + "," + Fmt("%.17g", c) + "\n";
    std::cout << Fmt("%8.0f", static_cast<double>(n)) << "  " << Fmt("%.1f", c)
              << "\n";
  }
  WriteFile(OutPath(g, "theorem.csv"), csv);
  if (f.trees > 0) {
    for (int64_t n : f.n) {
      for (int b : f.b) {
        cwl::TheoremRunSummary s =
            cwl::RunTheoremExperiment(b, n, f.d_max, f.trees, g.seed, g.workers);
        std::cout << "N=" << n << " b=" << b << ": breadth-first in "
                  << s.breadth_first_holds << "/" << s.trees
                  << " runs, accuracy " << Fmt("%.3f", s.accuracy) << " +- "
                  << Fmt("%.3f", s.se) << " (1/b = " << Fmt("%.3f", 1.0 / b)
                  << ")\n";
      }
    }
  }
  return 0;
}

struct ProbeFlags {
  std::string action = "gamma";
  std::string engine;
  int plies = 10;
  std::string mode = "light";
  int samples = 100;
  std::string fens;
  int bins = 20;
  int multipv = 3;
  int deep_depth = 20;
  int child_depth = 19;
  int heavy_depth = 10;
  int timeout_ms = 10000;
  std::vector<std::string> options;
  std::string move_query = "perft";
  bool fen_query = true;
};

std::vector<std::string> SplitWords(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

int RunProbe(const Globals& g, const ProbeFlags& f) {
  cwl::ProbeConfig cfg;
  cfg.engine_command = SplitWords(f.engine);
  if (cfg.engine_command.empty()) throw std::invalid_argument("--engine is required");
  cfg.plies = f.plies;
  cfg.mode = f.mode == "heavy" ? cwl::PlayoutMode::kHeavy : cwl::PlayoutMode::kLight;
  if (f.mode != "heavy" && f.mode != "light") {
    throw std::invalid_argument("--mode must be light or heavy");
  }
  cfg.samples = f.samples;
  cfg.seed = g.seed;
  cfg.multipv = f.multipv;
  cfg.deep_depth = f.deep_depth;
  cfg.child_depth = f.child_depth;
  cfg.heavy_depth = f.heavy_depth;
  cfg.timeout = std::chrono::milliseconds(f.timeout_ms);
  cfg.move_query = f.move_query == "multipv" ? cwl::MoveQuery::kMultiPv
                                             : cwl::MoveQuery::kPerft;
  cfg.fen_query = f.fen_query;
  for (const std::string& o : f.options) {
    size_t eq = o.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--option wants Name=value");
    cfg.option_overrides.emplace_back(o.substr(0, eq), o.substr(eq + 1));
  }

  cwl::UciSession session = cwl::UciSession::Launch(cfg);
  for (const std::string& w : session.warnings()) std::cerr << "engine: " << w << "\n";

  auto positions = [&] {
    if (!f.fens.empty()) return ReadLines(f.fens);
    return cwl::SamplePositions(session, cfg, cfg.plies, cfg.mode, cfg.samples,
                                cfg.seed);
  };

  if (f.action == "sample") {
    std::vector<std::string> fens = positions();
    std::string text;
    for (const std::string& s : fens) text += s + "\n";
    WriteFile(OutPath(g, "positions.fen"), text);
    std::cout << "sampled " << fens.size() << " positions\n";
  } else if (f.action == "gamma") {
    std::vector<cwl::CriticalRateRecord> records;
    int high = 0, valid = 0;
    for (const std::string& fen : positions()) {
      records.push_back(cwl::EmpiricalGamma(session, cfg, fen));
      if (records.back().valid) {
        ++valid;
        high += records.back().gamma_tilde > 0.9;
      }
    }
    WriteFile(OutPath(g, "critical_rates.csv"), cwl::CriticalRateCsv(records));
    std::cout << valid << "/" << records.size() << " positions scored; "
              << high << " with gamma~ > 0.9\n";
  } else if (f.action == "hist") {
    cwl::EvalHistograms h =
        cwl::BuildEvalHistograms(session, cfg, positions(), f.bins);
    WriteFile(OutPath(g, "eval.hist"), cwl::FormatEvalHistograms(h, cfg));
    std::cout << "histogram written; " << h.dropped << " samples dropped\n";
  } else {
    throw std::invalid_argument("--action must be sample, gamma or hist");
  }
  WriteFile(OutPath(g, "probe_transcript.txt"), session.TranscriptText());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical win-loss game trees: generation, search and "
               "pathology experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Globals g;
  TreeFlags tree;
  int depth_cap = 3;
  int density_n = -1;
  SearchFlags search;
  ExperimentFlags exp;
  PvFlags pv;
  TheoremFlags thm;
  ProbeFlags probe;

  auto* gen = app.add_subcommand("gen-tree", "Export the top of a game tree as a digraph");
  AddTreeFlags(gen, tree);
  gen->add_option("--depth-cap", depth_cap, "Plies to export");
  AddGlobals(gen, g);

  auto* density = app.add_subcommand("density", "Density of +1 nodes by depth");
  AddTreeFlags(density, tree);
  density->add_option("--n", density_n, "Single depth to print (default: table)");
  AddGlobals(density, g);

  auto* srch = app.add_subcommand("search", "Run one UCT or alpha-beta search");
  AddTreeFlags(srch, tree);
  srch->add_option("--algo", search.algo, "uct or alphabeta");
  srch->add_option("--c", search.c, "UCT exploration constant");
  srch->add_option("--budget", search.budget, "UCT iterations");
  srch->add_option("--checkpoints", search.checkpoints, "UCT iterations to record");
  srch->add_option("--heuristic", search.heuristic,
                   "perfect | gaussian[:sigma] | hist:<file> | l1 | linf");
  srch->add_option("--depth", search.depth, "Alpha-beta search depth");
  srch->add_option("--trace", search.trace, "Write trace.csv (true/false)");
  AddGlobals(srch, g);

  auto* expt = app.add_subcommand("experiment", "Pathology grid sweep");
  expt->add_option("--gamma", exp.grid.gammas, "Critical rates");
  expt->add_option("--b", exp.grid.branching_factors,
                   "Branching factors (alpha-beta default: 2 3 5)");
  expt->add_option("--c", exp.grid.explorations, "UCT exploration constants");
  expt->add_option("--heuristic", exp.grid.heuristics, "Heuristic specs");
  expt->add_option("--budgets", exp.grid.budgets,
                   "UCT iteration budgets or alpha-beta depths");
  expt->add_option("--d-max", exp.grid.max_depth, "Maximum game depth");
  expt->add_option("--trees", exp.grid.trees, "Trees per cell");
  expt->add_option("--algo", exp.algo, "uct or alphabeta");
  expt->add_option("--format", exp.formats, "Output formats (csv, svg)");
  AddGlobals(expt, g);

  auto* pvc = app.add_subcommand("pv-check", "Prefix value trees: leaf sums and 1-ply planner");
  pvc->add_option("--b", pv.b, "Branching factor");
  pvc->add_option("--cost", pv.cost, "Sub-optimal move cost");
  pvc->add_option("--max-cost", pv.max_cost, "Random cost range {1..max} (0 = fixed)");
  pvc->add_option("--d-max", pv.d_max, "Tree depth");
  pvc->add_option("--seeds", pv.seeds, "Trees for the leaf-sum check");
  pvc->add_option("--max-d", pv.max_d, "Deepest leaf-sum level");
  pvc->add_option("--playouts", pv.playouts, "Playouts per root child");
  pvc->add_option("--instances", pv.instances, "Planner instances");
  AddGlobals(pvc, g);

  auto* theorem = app.add_subcommand("theorem", "Breadth-first exploration bound");
  theorem->add_option("--N", thm.n, "Budgets");
  theorem->add_option("--b", thm.b, "Branching factors for the verification run");
  theorem->add_option("--trees", thm.trees, "Trees per verification run (0 = skip)");
  theorem->add_option("--d-max", thm.d_max, "Game depth for the verification run");
  AddGlobals(theorem, g);

  auto* prb = app.add_subcommand("probe", "Measure critical rates and evaluation histograms with a UCI engine");
  prb->add_option("--action", probe.action, "sample | gamma | hist");
  prb->add_option("--engine", probe.engine, "Engine command line");
  prb->add_option("--plies", probe.plies, "Sampling depth p");
  prb->add_option("--mode", probe.mode, "light or heavy playouts");
  prb->add_option("--samples", probe.samples, "Positions to sample");
  prb->add_option("--fens", probe.fens, "Read positions from this FEN list instead");
  prb->add_option("--bins", probe.bins, "Histogram bins");
  prb->add_option("--multipv", probe.multipv, "Candidates per heavy-playout step");
  prb->add_option("--deep-depth", probe.deep_depth, "Depth for position values");
  prb->add_option("--child-depth", probe.child_depth, "Depth for child values");
  prb->add_option("--heavy-depth", probe.heavy_depth, "Depth for heavy playouts");
  prb->add_option("--timeout-ms", probe.timeout_ms, "Per-reply timeout");
  prb->add_option("--option", probe.options, "Engine option override Name=value");
  prb->add_option("--move-query", probe.move_query, "perft or multipv");
  prb->add_option("--fen-query", probe.fen_query, "Resolve samples to FEN via `d`");
  AddGlobals(prb, g);

  for (CLI::App* sub : app.get_subcommands({})) {
    for (CLI::Option* opt : sub->get_options()) opt->capture_default_str();
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Expand a --config file into flags for the chosen subcommand.
    auto cfg_it = std::find(args.begin(), args.end(), "--config");
    if (cfg_it != args.end() && cfg_it + 1 != args.end() && !args.empty()) {
      CLI::App* sub = nullptr;
      for (const std::string& a : args) {
        if (!a.starts_with("-")) {
          sub = app.get_subcommand_ptr(a).get();
          break;
        }
      }
      if (sub != nullptr) {
        args = cwl::MergeConfigIntoArgs(cwl::LoadFlatConfig(*(cfg_it + 1)), args,
                                        KnownKeys(sub));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n\n";
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands()[0];
    std::cerr << sub->help();
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    int rc = 0;
    if (sub == expt && expt->count("--b") == 0 && exp.algo != "uct") {
      exp.grid.branching_factors = {2, 3, 5};
    }
    if (sub == gen) rc = RunGenTree(g, tree, depth_cap);
    else if (sub == density) rc = RunDensity(g, tree, density_n);
    else if (sub == srch) rc = RunSearch(g, tree, search);
    else if (sub == expt) rc = RunExperiment(g, exp);
    else if (sub == pvc) rc = RunPvCheck(g, pv);
    else if (sub == theorem) rc = RunTheorem(g, thm);
    else if (sub == prb) rc = RunProbe(g, probe);
    WriteManifest(g, sub);
    return rc;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
