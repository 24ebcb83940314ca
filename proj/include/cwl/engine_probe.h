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

#ifndef CWL_ENGINE_PROBE_H_
#define CWL_ENGINE_PROBE_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cwl {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EngineTimeout : public EngineError {
 public:
  using EngineError::EngineError;
};

// Line-oriented duplex channel to an engine.
class LineTransport {
 public:
  virtual ~LineTransport() = default;
  virtual void WriteLine(std::string_view line) = 0;
  // nullopt on timeout. Throws EngineError when the engine has gone away.
  virtual std::optional<std::string> ReadLine(
      std::chrono::milliseconds timeout) = 0;
};

// Child process speaking over its standard streams.
class ProcessTransport : public LineTransport {
 public:
  // Throws EngineError if the executable cannot be started.
  explicit ProcessTransport(const std::vector<std::string>& argv);
  ~ProcessTransport() override;

  ProcessTransport(const ProcessTransport&) = delete;
  ProcessTransport& operator=(const ProcessTransport&) = delete;

  void WriteLine(std::string_view line) override;
  std::optional<std::string> ReadLine(
      std::chrono::milliseconds timeout) override;

 private:
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// Plays back a recorded transcript ("> sent", "< received" lines). Every
// write must match the next recorded command; reads return the recorded
// replies and time out when the next entry is a command.
class ReplayTransport : public LineTransport {
 public:
  explicit ReplayTransport(std::string_view transcript);

  void WriteLine(std::string_view line) override;
  std::optional<std::string> ReadLine(
      std::chrono::milliseconds timeout) override;

  bool exhausted() const { return next_ >= entries_.size(); }

 private:
  std::vector<std::pair<char, std::string>> entries_;
  size_t next_ = 0;
};

enum class PlayoutMode { kLight, kHeavy };

// Move-list source for light playouts.
enum class MoveQuery { kPerft, kMultiPv };

struct ProbeConfig {
  std::vector<std::string> engine_command;
  int plies = 10;
  PlayoutMode mode = PlayoutMode::kLight;
  int deep_depth = 20;
  int child_depth = 19;
  int heavy_depth = 10;
  int multipv = 3;
  int samples = 100;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> option_overrides;
  std::chrono::milliseconds timeout{10000};
  MoveQuery move_query = MoveQuery::kPerft;
  // Resolve sampled positions to FEN with the `d` command.
  bool fen_query = true;
  // Stand-in for a static evaluation: `go depth 1 nodes 1`.
  int static_depth = 1;
  int64_t static_nodes = 1;
  double logistic_scale = 400.0;

  void Validate() const;
};

// Engine options applied at session start, in order.
const std::vector<std::pair<std::string, std::string>>& DefaultEngineOptions();

struct Score {
  enum class Kind { kCp, kMate };
  Kind kind = Kind::kCp;
  int value = 0;

  // +1, -1, or 0 for a centipawn score of exactly 0. "mate 0" and negative
  // mates are -1.
  int Sign() const;
};

// Parses "cp <x>" or "mate <y>".
Score ParseScore(std::string_view text);

struct PvLine {
  int multipv = 1;
  Score score;
  std::string move;
};

// Parsed `info` line; nullopt for lines without a score and for bound-only
// scores. `move` is empty when the line carries no pv (e.g. "score mate 0").
std::optional<PvLine> ParseInfoLine(std::string_view line);

// Normalized evaluation 1 / (1 + 10^(-cp / scale)); mates map to 0 or 1.
double NormalizeScore(const Score& score, double scale = 400.0);

struct GoLimits {
  int depth = 1;
  int64_t nodes = 0;  // 0 = no node limit.
};

// UCI session. Every line sent and received is kept in the transcript as
// "> line" / "< line".
class UciSession {
 public:
  UciSession(std::unique_ptr<LineTransport> transport, const ProbeConfig& cfg);

  // Spawns cfg.engine_command and performs the handshake.
  static UciSession Launch(const ProbeConfig& cfg);

  UciSession(UciSession&&) = default;
  UciSession& operator=(UciSession&&) = default;
  ~UciSession();

  // uci / uciok, options, isready / readyok. Throws EngineTimeout.
  void Handshake();

  // Results for one position, ordered by multipv index. Scores are from the
  // side to move in `position`.
  std::vector<PvLine> Evaluate(const std::string& position, GoLimits limits,
                               int multipv = 1);
  std::vector<std::string> LegalMoves(const std::string& position);
  // FEN of a "startpos ..." or "fen ..." position via the `d` command.
  std::string Fen(const std::string& position);
  void NewGame();
  void Quit();

  const std::vector<std::string>& transcript() const { return transcript_; }
  std::string TranscriptText() const;
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<std::string>& advertised_options() const {
    return advertised_options_;
  }

 private:
  void Send(const std::string& line);
  std::string Receive();
  void SetMultiPv(int multipv);
  void WaitReady();

  std::unique_ptr<LineTransport> transport_;
  ProbeConfig cfg_;
  int current_multipv_ = 1;
  bool quit_ = false;
  std::vector<std::string> transcript_;
  std::vector<std::string> warnings_;
  std::vector<std::string> advertised_options_;
};

// "startpos" or "fen <FEN>" plus one more move.
std::string AppendMove(const std::string& position, const std::string& move);
// Position argument for a raw FEN.
inline std::string FenPosition(const std::string& fen) { return "fen " + fen; }

// Positions `plies` deep, by uniform random legal moves (light) or uniform
// choice among the multipv moves of a heavy_depth search (heavy). Games that
// end early are discarded and redrawn.
std::vector<std::string> SamplePositions(UciSession& session,
                                         const ProbeConfig& cfg, int plies,
                                         PlayoutMode mode, int count,
                                         uint64_t seed);

struct CriticalRateRecord {
  std::string fen;
  int legal_moves = 0;
  // Children with a decisive sign; equals legal_moves unless some were
  // excluded for a zero score.
  int effective_b = 0;
  int parent_sign = 0;
  // Children's signs from the parent mover's point of view (0 = excluded).
  std::vector<int> child_signs;
  int disagreements = 0;
  double gamma_tilde = 0.0;
  bool valid = false;
  std::string note;
};

CriticalRateRecord EmpiricalGamma(UciSession& session, const ProbeConfig& cfg,
                                  const std::string& fen);

// fen,b,parent_sign,gamma_tilde for the valid records.
std::string CriticalRateCsv(const std::vector<CriticalRateRecord>& records);

struct EvalHistograms {
  std::vector<double> plus;
  std::vector<double> minus;
  int dropped = 0;
};

EvalHistograms BuildEvalHistograms(UciSession& session, const ProbeConfig& cfg,
                                   const std::vector<std::string>& fens,
                                   int bins);

// Histogram file text; throws std::invalid_argument if a class is empty.
std::string FormatEvalHistograms(const EvalHistograms& h,
                                 const ProbeConfig& cfg);

}  // namespace cwl

#endif  // CWL_ENGINE_PROBE_H_
