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

#include "cwl/heuristics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cwl {

namespace {

std::vector<double> Normalize(std::vector<double> w, const char* name) {
  double total = 0.0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      throw std::invalid_argument(std::string("negative or non-finite weight in ") +
                                  name + " class");
    }
    total += x;
  }
  if (total <= 0.0) {
    throw std::invalid_argument(std::string(name) + " class has zero total weight");
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> Cumulative(const std::vector<double>& w) {
  std::vector<double> cdf(w.size());
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    cdf[i] = acc;
  }
  // Pin the top so a draw just below 1 always lands in a bin with mass.
  for (size_t i = w.size(); i-- > 0;) {
    if (w[i] > 0.0) {
      for (size_t j = i; j < w.size(); ++j) cdf[j] = 1.0;
      break;
    }
  }
  return cdf;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<double> ParseReals(std::string_view s, int line_no) {
  std::istringstream in{std::string(s)};
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    size_t used = 0;
    double x;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw std::invalid_argument("histogram line " + std::to_string(line_no) +
                                  ": bad number '" + tok + "'");
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

HistogramPdf::HistogramPdf(std::vector<double> plus_weights,
                           std::vector<double> minus_weights) {
  if (plus_weights.size() < 2) {
    throw std::invalid_argument("histogram needs at least 2 bins");
  }
  if (plus_weights.size() != minus_weights.size()) {
    throw std::invalid_argument("plus and minus bin counts differ");
  }
  plus_ = Normalize(std::move(plus_weights), "plus");
  minus_ = Normalize(std::move(minus_weights), "minus");
  plus_cdf_ = Cumulative(plus_);
  minus_cdf_ = Cumulative(minus_);
}

double HistogramPdf::Sample(int value, SplitMix64& rng) const {
  const std::vector<double>& cdf = value > 0 ? plus_cdf_ : minus_cdf_;
  double u = rng.Uniform();
  size_t bin = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
  if (bin >= cdf.size()) bin = cdf.size() - 1;
  double x = (static_cast<double>(bin) + rng.Uniform()) /
             static_cast<double>(cdf.size());
  return std::min(x, 1.0);
}

double HistogramPdf::Mean(int value) const {
  const std::vector<double>& w = weights(value);
  double m = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    m += w[i] * (static_cast<double>(i) + 0.5) / static_cast<double>(w.size());
  }
  return m;
}

HistogramPdf ParseHistogram(std::string_view text) {
  int bins = -1;
  std::vector<double> plus, minus;
  bool have_plus = false, have_minus = false;
  int line_no = 0;
  while (!text.empty()) {
    size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("histogram line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    std::string_view key = Trim(line.substr(0, eq));
    std::string_view val = line.substr(eq + 1);
    if (key == "bins") {
      std::vector<double> v = ParseReals(val, line_no);
      if (v.size() != 1 || v[0] != std::floor(v[0]) || v[0] < 2) {
        throw std::invalid_argument("histogram: bins must be an integer >= 2");
      }
      bins = static_cast<int>(v[0]);
    } else if (key == "plus") {
      plus = ParseReals(val, line_no);
      have_plus = true;
    } else if (key == "minus") {
      minus = ParseReals(val, line_no);
      have_minus = true;
    } else {
      throw std::invalid_argument("histogram line " + std::to_string(line_no) +
                                  ": unknown key '" + std::string(key) + "'");
    }
  }
  if (bins < 0 || !have_plus || !have_minus) {
    throw std::invalid_argument("histogram: bins, plus and minus are required");
  }
  if (static_cast<int>(plus.size()) != bins ||
      static_cast<int>(minus.size()) != bins) {
    throw std::invalid_argument("histogram: weight count does not match bins");
  }
  return HistogramPdf(std::move(plus), std::move(minus));
}

HistogramPdf LoadHistogram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open histogram file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseHistogram(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string FormatHistogram(const std::vector<double>& plus,
                            const std::vector<double>& minus,
                            std::string_view comment) {
  std::string out;
  if (!comment.empty()) {
    std::string_view c = comment;
    while (!c.empty()) {
      size_t nl = c.find('\n');
      out += "# ";
      out += c.substr(0, nl);
      out += '\n';
      c = nl == std::string_view::npos ? std::string_view{} : c.substr(nl + 1);
    }
  }
  auto row = [](const std::vector<double>& w) {
    std::string s;
    char buf[32];
    for (size_t i = 0; i < w.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", w[i]);
      if (i > 0) s += ' ';
      s += buf;
    }
    return s;
  };
  out += "bins=" + std::to_string(plus.size()) + "\n";
  out += "plus=" + row(plus) + "\n";
  out += "minus=" + row(minus) + "\n";
  return out;
}

Heuristic Heuristic::Perfect() { return Heuristic{}; }

Heuristic Heuristic::Gaussian(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian sigma must be >= 0");
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "gaussian:%g", sigma);
  return Heuristic{HeuristicKind::kGaussian, sigma, nullptr, buf};
}

Heuristic Heuristic::FromHistogram(std::shared_ptr<const HistogramPdf> pdf,
                                   std::string label) {
  if (!pdf) throw std::invalid_argument("histogram heuristic needs a pdf");
  return Heuristic{HeuristicKind::kHistogram, 0.0, std::move(pdf),
                   std::move(label)};
}

Heuristic Heuristic::PlayoutL1() {
  return Heuristic{HeuristicKind::kPlayoutL1, 0.0, nullptr, "l1"};
}

Heuristic Heuristic::PlayoutLInf() {
  return Heuristic{HeuristicKind::kPlayoutLInf, 0.0, nullptr, "linf"};
}

Heuristic Heuristic::Parse(std::string_view spec) {
  spec = Trim(spec);
  if (spec == "perfect") return Perfect();
  if (spec == "l1") return PlayoutL1();
  if (spec == "linf") return PlayoutLInf();
  if (spec == "gaussian") return Gaussian(0.3);
  if (spec.starts_with("gaussian:")) {
    std::vector<double> v = ParseReals(spec.substr(9), 1);
    if (v.size() != 1) throw std::invalid_argument("bad gaussian sigma");
    return Gaussian(v[0]);
  }
  if (spec.starts_with("hist:")) {
    std::string path(spec.substr(5));
    auto pdf = std::make_shared<const HistogramPdf>(LoadHistogram(path));
    return FromHistogram(std::move(pdf),
                         "hist:" + std::filesystem::path(path).filename().string());
  }
  throw std::invalid_argument("unknown heuristic '" + std::string(spec) + "'");
}

double Evaluate(const Heuristic& h, const EvalContext& ctx, SplitMix64& rng) {
  switch (h.kind) {
    case HeuristicKind::kPerfect:
      return TrueReward(ctx.value);
    case HeuristicKind::kGaussian:
      return std::clamp(TrueReward(ctx.value) + h.sigma * rng.Normal(), 0.0,
                        1.0);
    case HeuristicKind::kHistogram:
      return h.histogram->Sample(ctx.value, rng);
    case HeuristicKind::kPlayoutL1:
    case HeuristicKind::kPlayoutLInf: {
      if (ctx.params == nullptr) {
        throw std::invalid_argument("playout heuristics need game params");
      }
      double f = SubtreePlusDensity(ctx.value, ctx.player,
                                    ctx.params->max_depth - ctx.depth,
                                    *ctx.params);
      if (h.kind == HeuristicKind::kPlayoutLInf) return f;
      return rng.Uniform() < f ? 1.0 : 0.0;
    }
  }
  throw std::invalid_argument("malformed heuristic");
}

}  // namespace cwl
