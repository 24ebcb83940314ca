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

#ifndef CWL_HEURISTICS_H_
#define CWL_HEURISTICS_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cwl/rng.h"
#include "cwl/tree_model.h"

namespace cwl {

// Per-class evaluation densities over B uniform bins of [0, 1].
class HistogramPdf {
 public:
  // Raw weights are normalized per class. Throws std::invalid_argument on
  // B < 2, mismatched sizes, negative or non-finite weights, or a zero-total
  // class.
  HistogramPdf(std::vector<double> plus_weights,
               std::vector<double> minus_weights);

  int bin_count() const { return static_cast<int>(plus_.size()); }
  const std::vector<double>& weights(int value) const {
    return value > 0 ? plus_ : minus_;
  }

  // Inverse-CDF draw for the class of `value`, uniform within the bin.
  double Sample(int value, SplitMix64& rng) const;

  // Mean of the class density (bin midpoints weighted by mass).
  double Mean(int value) const;

 private:
  std::vector<double> plus_, minus_;
  std::vector<double> plus_cdf_, minus_cdf_;
};

// Text format: `bins=<B>`, `plus=<B reals>`, `minus=<B reals>`, one per line,
// `#` starts a comment.
HistogramPdf ParseHistogram(std::string_view text);
HistogramPdf LoadHistogram(const std::string& path);
std::string FormatHistogram(const std::vector<double>& plus,
                            const std::vector<double>& minus,
                            std::string_view comment = {});

enum class HeuristicKind { kPerfect, kGaussian, kHistogram, kPlayoutL1,
                           kPlayoutLInf };

// A configured leaf evaluator. Immutable once built.
struct Heuristic {
  HeuristicKind kind = HeuristicKind::kPerfect;
  double sigma = 0.3;
  std::shared_ptr<const HistogramPdf> histogram;
  // Display name, also part of experiment cell ids ("perfect",
  // "hist:foo.hist", ...). Histogram labels carry the file name only.
  std::string label = "perfect";

  static Heuristic Perfect();
  static Heuristic Gaussian(double sigma);
  static Heuristic FromHistogram(std::shared_ptr<const HistogramPdf> pdf,
                                 std::string label);
  static Heuristic PlayoutL1();
  static Heuristic PlayoutLInf();

  // Parses "perfect", "gaussian[:sigma]", "hist:<file>", "l1", "linf".
  // Histogram files are read relative to the working directory.
  static Heuristic Parse(std::string_view spec);
};

struct EvalContext {
  int value = +1;
  Player player = Player::kMax;
  int depth = 0;
  const GameParams* params = nullptr;
};

// Reward in [0, 1] from Max's point of view. All randomness comes from `rng`.
double Evaluate(const Heuristic& h, const EvalContext& ctx, SplitMix64& rng);

// Win = 1, loss = 0.
inline double TrueReward(int value) { return value > 0 ? 1.0 : 0.0; }

}  // namespace cwl

#endif  // CWL_HEURISTICS_H_
