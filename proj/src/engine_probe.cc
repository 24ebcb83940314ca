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

#include "cwl/engine_probe.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <sstream>

#include "cwl/heuristics.h"
#include "cwl/rng.h"

namespace cwl {

namespace {

std::vector<std::string_view> Tokens(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

int ParseInt(std::string_view s) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(std::string(s), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw EngineError("unparseable integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Transports

ProcessTransport::ProcessTransport(const std::vector<std::string>& argv) {
  if (argv.empty()) throw EngineError("empty engine command");
  signal(SIGPIPE, SIG_IGN);
  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (pipe(in_pipe) != 0) throw EngineError("pipe failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw EngineError("pipe failed");
  }
  // Reports exec failure to the parent; closed on a successful exec.
  if (pipe2(err_pipe, O_CLOEXEC) != 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw EngineError("pipe failed");
  }

  std::vector<char*> args;
  for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  pid_t pid = fork();
  if (pid < 0) throw EngineError("fork failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0]}) {
      close(fd);
    }
    execvp(args[0], args.data());
    int err = errno;
    ssize_t ignored = write(err_pipe[1], &err, sizeof err);
    (void)ignored;
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);
  int child_errno = 0;
  ssize_t n = read(err_pipe[0], &child_errno, sizeof child_errno);
  close(err_pipe[0]);
  if (n == sizeof child_errno) {
    close(in_pipe[1]);
    close(out_pipe[0]);
    waitpid(pid, nullptr, 0);
    throw EngineError("cannot start engine '" + argv[0] +
                      "': " + std::strerror(child_errno));
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

ProcessTransport::~ProcessTransport() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    // Give the engine a moment to exit on EOF, then make sure it is gone.
    for (int i = 0; i < 50; ++i) {
      if (waitpid(pid_, nullptr, WNOHANG) == pid_) return;
      usleep(2000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }
}

void ProcessTransport::WriteLine(std::string_view line) {
  std::string data(line);
  data += '\n';
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw EngineError("engine closed its input");
    }
    off += static_cast<size_t>(n);
  }
}

std::optional<std::string> ProcessTransport::ReadLine(
    std::chrono::milliseconds timeout) {
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return std::nullopt;
    pollfd pfd{from_child_, POLLIN, 0};
    int r = poll(&pfd, 1, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      throw EngineError("poll failed");
    }
    if (r == 0) return std::nullopt;
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw EngineError("read from engine failed");
    }
    if (n == 0) throw EngineError("engine exited");
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

ReplayTransport::ReplayTransport(std::string_view transcript) {
  while (!transcript.empty()) {
    size_t nl = transcript.find('\n');
    std::string_view line = transcript.substr(0, nl);
    transcript = nl == std::string_view::npos ? std::string_view{}
                                              : transcript.substr(nl + 1);
    if (line.empty()) continue;
    if (line.size() < 2 || (line[0] != '>' && line[0] != '<') || line[1] != ' ') {
      throw std::invalid_argument("bad transcript line: " + std::string(line));
    }
    entries_.emplace_back(line[0], std::string(line.substr(2)));
  }
}

void ReplayTransport::WriteLine(std::string_view line) {
  if (next_ >= entries_.size() || entries_[next_].first != '>') {
    throw EngineError("replay: unexpected command '" + std::string(line) + "'");
  }
  if (entries_[next_].second != line) {
    throw EngineError("replay: expected '" + entries_[next_].second +
                      "', got '" + std::string(line) + "'");
  }
  ++next_;
}

std::optional<std::string> ReplayTransport::ReadLine(std::chrono::milliseconds) {
  if (next_ >= entries_.size() || entries_[next_].first != '<') {
    return std::nullopt;
  }
  return entries_[next_++].second;
}

// ---------------------------------------------------------------------------
// Parsing

void ProbeConfig::Validate() const {
  if (plies < 0) throw std::invalid_argument("plies must be >= 0");
  if (deep_depth < 1 || child_depth < 1 || heavy_depth < 1 || static_depth < 1) {
    throw std::invalid_argument("search depths must be >= 1");
  }
  if (multipv < 1) throw std::invalid_argument("multipv must be >= 1");
  if (samples < 0) throw std::invalid_argument("samples must be >= 0");
  if (!(logistic_scale > 0.0)) throw std::invalid_argument("bad logistic scale");
}

const std::vector<std::pair<std::string, std::string>>& DefaultEngineOptions() {
  static const std::vector<std::pair<std::string, std::string>> kOptions = {
      {"Debug Log File", ""},
      {"Contempt", "24"},
      {"Threads", "1"},
      {"Hash", "16"},
      {"Clear Hash Ponder", "false"},
      {"MultiPV", "1"},
      {"Skill Level", "20"},
      {"Move Overhead", "10"},
      {"Slow Mover", "100"},
      {"nodestime", "0"},
      {"UCI_Chess960", "false"},
      {"UCI_AnalyseMode", "false"},
      {"UCI_LimitStrength", "false"},
      {"UCI_Elo", "1350"},
      {"UCI_ShowWDL", "false"},
      {"SyzygyPath", ""},
      {"SyzygyProbeDepth", "1"},
      {"Syzygy50MoveRule", "true"},
      {"SyzygyProbeLimit", "7"},
      {"Use NNUE", "false"},
      {"EvalFile", "nn-62ef826d1a6d.nnue"},
  };
  return kOptions;
}

int Score::Sign() const {
  if (kind == Kind::kMate) return value > 0 ? +1 : -1;
  return (value > 0) - (value < 0);
}

Score ParseScore(std::string_view text) {
  auto tok = Tokens(text);
  if (tok.size() != 2) throw EngineError("bad score '" + std::string(text) + "'");
  if (tok[0] == "cp") return Score{Score::Kind::kCp, ParseInt(tok[1])};
  if (tok[0] == "mate") return Score{Score::Kind::kMate, ParseInt(tok[1])};
  throw EngineError("bad score '" + std::string(text) + "'");
}

std::optional<PvLine> ParseInfoLine(std::string_view line) {
  auto tok = Tokens(line);
  if (tok.empty() || tok[0] != "info") return std::nullopt;
  PvLine pv;
  bool have_score = false;
  for (size_t i = 1; i < tok.size(); ++i) {
    if (tok[i] == "string") return std::nullopt;
    if (tok[i] == "multipv" && i + 1 < tok.size()) {
      pv.multipv = ParseInt(tok[++i]);
    } else if (tok[i] == "score" && i + 2 < tok.size()) {
      std::string s = std::string(tok[i + 1]) + " " + std::string(tok[i + 2]);
      pv.score = ParseScore(s);
      have_score = true;
      i += 2;
      if (i + 1 < tok.size() &&
          (tok[i + 1] == "lowerbound" || tok[i + 1] == "upperbound")) {
        return std::nullopt;
      }
    } else if (tok[i] == "pv" && i + 1 < tok.size()) {
      pv.move = std::string(tok[i + 1]);
      break;
    }
  }
  if (!have_score) return std::nullopt;
  return pv;
}

double NormalizeScore(const Score& score, double scale) {
  if (score.kind == Score::Kind::kMate) return score.Sign() > 0 ? 1.0 : 0.0;
  return 1.0 / (1.0 + std::pow(10.0, -static_cast<double>(score.value) / scale));
}

// ---------------------------------------------------------------------------
// Session

UciSession::UciSession(std::unique_ptr<LineTransport> transport,
                       const ProbeConfig& cfg)
    : transport_(std::move(transport)), cfg_(cfg) {
  cfg_.Validate();
}

UciSession UciSession::Launch(const ProbeConfig& cfg) {
  UciSession session(std::make_unique<ProcessTransport>(cfg.engine_command), cfg);
  session.Handshake();
  return session;
}

UciSession::~UciSession() {
  if (transport_ && !quit_) {
    try {
      Quit();
    } catch (const std::exception&) {
    }
  }
}

void UciSession::Send(const std::string& line) {
  transcript_.push_back("> " + line);
  transport_->WriteLine(line);
}

std::string UciSession::Receive() {
  std::optional<std::string> line = transport_->ReadLine(cfg_.timeout);
  if (!line) {
    throw EngineTimeout("engine did not answer within " +
                        std::to_string(cfg_.timeout.count()) + " ms");
  }
  transcript_.push_back("< " + *line);
  return *line;
}

void UciSession::WaitReady() {
  Send("isready");
  while (true) {
    std::string line = Receive();
    if (line == "readyok") return;
    if (line.starts_with("No such option") ||
        line.starts_with("info string ERROR") || line.starts_with("Unknown")) {
      warnings_.push_back(line);
    }
  }
}

void UciSession::Handshake() {
  Send("uci");
  while (true) {
    std::string line = Receive();
    if (line == "uciok") break;
    if (line.starts_with("option name ")) {
      std::string_view rest = std::string_view(line).substr(12);
      size_t type = rest.find(" type ");
      advertised_options_.emplace_back(rest.substr(0, type));
    }
  }
  std::vector<std::pair<std::string, std::string>> options = DefaultEngineOptions();
  for (const auto& [name, value] : cfg_.option_overrides) {
    auto it = std::find_if(options.begin(), options.end(),
                           [&](const auto& o) { return o.first == name; });
    if (it != options.end()) {
      it->second = value;
    } else {
      options.emplace_back(name, value);
    }
  }
  for (const auto& [name, value] : options) {
    Send(value.empty() ? "setoption name " + name + " value"
                       : "setoption name " + name + " value " + value);
    if (name == "MultiPV") current_multipv_ = std::stoi(value);
  }
  WaitReady();
}

void UciSession::SetMultiPv(int multipv) {
  if (multipv == current_multipv_) return;
  Send("setoption name MultiPV value " + std::to_string(multipv));
  current_multipv_ = multipv;
}

void UciSession::NewGame() {
  Send("ucinewgame");
  WaitReady();
}

void UciSession::Quit() {
  if (quit_) return;
  quit_ = true;
  transcript_.push_back("> quit");
  transport_->WriteLine("quit");
}

std::vector<PvLine> UciSession::Evaluate(const std::string& position,
                                         GoLimits limits, int multipv) {
  SetMultiPv(multipv);
  Send("position " + position);
  std::string go = "go depth " + std::to_string(limits.depth);
  if (limits.nodes > 0) go += " nodes " + std::to_string(limits.nodes);
  Send(go);
  std::map<int, PvLine> latest;
  while (true) {
    std::string line = Receive();
    if (line.starts_with("bestmove")) break;
    if (std::optional<PvLine> pv = ParseInfoLine(line)) {
      latest[pv->multipv] = *pv;
    }
  }
  std::vector<PvLine> out;
  for (auto& [k, pv] : latest) out.push_back(pv);
  return out;
}

std::vector<std::string> UciSession::LegalMoves(const std::string& position) {
  if (cfg_.move_query == MoveQuery::kMultiPv) {
    std::vector<std::string> moves;
    for (const PvLine& pv : Evaluate(position, GoLimits{1, 0}, 500)) {
      if (!pv.move.empty()) moves.push_back(pv.move);
    }
    return moves;
  }
  Send("position " + position);
  Send("go perft 1");
  std::vector<std::string> moves;
  while (true) {
    std::string line = Receive();
    if (line.starts_with("Nodes searched")) break;
    size_t colon = line.find(':');
    if (colon == std::string::npos || colon == 0) continue;
    std::string_view move = std::string_view(line).substr(0, colon);
    if (move.find(' ') != std::string_view::npos) continue;
    moves.emplace_back(move);
  }
  return moves;
}

std::string UciSession::Fen(const std::string& position) {
  Send("position " + position);
  Send("d");
  std::string fen;
  while (true) {
    std::string line = Receive();
    std::string_view v(line);
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    if (v.starts_with("Fen: ")) fen = std::string(v.substr(5));
    if (v.starts_with("Checkers:")) break;
  }
  if (fen.empty()) throw EngineError("engine did not report a FEN");
  return fen;
}

std::string UciSession::TranscriptText() const {
  std::string out;
  for (const std::string& l : transcript_) out += l + "\n";
  return out;
}

std::string AppendMove(const std::string& position, const std::string& move) {
  if (position.find(" moves ") != std::string::npos) return position + " " + move;
  return position + " moves " + move;
}

// ---------------------------------------------------------------------------
// Procedures

std::vector<std::string> SamplePositions(UciSession& session,
                                         const ProbeConfig& cfg, int plies,
                                         PlayoutMode mode, int count,
                                         uint64_t seed) {
  if (plies < 0 || count < 0) throw std::invalid_argument("bad sample request");
  SplitMix64 rng(Mix64(seed));
  std::vector<std::string> out;
  const int max_attempts = 100 * std::max(count, 1);
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > max_attempts) {
      throw EngineError("too many games ended before the requested ply");
    }
    std::string pos = "startpos";
    bool ended = false;
    for (int ply = 0; ply < plies && !ended; ++ply) {
      std::vector<std::string> moves;
      if (mode == PlayoutMode::kLight) {
        moves = session.LegalMoves(pos);
      } else {
        for (const PvLine& pv :
             session.Evaluate(pos, GoLimits{cfg.heavy_depth, 0}, cfg.multipv)) {
          if (!pv.move.empty()) moves.push_back(pv.move);
        }
      }
      if (moves.empty()) {
        ended = true;
        break;
      }
      pos = AppendMove(pos, moves[rng.Below(moves.size())]);
    }
    if (ended) continue;
    out.push_back(cfg.fen_query ? session.Fen(pos) : pos);
  }
  return out;
}

CriticalRateRecord EmpiricalGamma(UciSession& session, const ProbeConfig& cfg,
                                  const std::string& fen) {
  CriticalRateRecord rec;
  rec.fen = fen;
  const std::string parent = FenPosition(fen);
  std::vector<std::string> moves = session.LegalMoves(parent);
  rec.legal_moves = static_cast<int>(moves.size());
  if (rec.legal_moves < 2) {
    rec.note = "fewer than 2 legal moves";
    return rec;
  }
  std::vector<PvLine> deep = session.Evaluate(parent, GoLimits{cfg.deep_depth, 0}, 1);
  if (deep.empty()) throw EngineError("no score for " + fen);
  rec.parent_sign = deep.front().score.Sign();
  if (rec.parent_sign == 0) {
    rec.note = "indeterminate parent";
    return rec;
  }
  int excluded = 0;
  for (const std::string& m : moves) {
    std::vector<PvLine> r =
        session.Evaluate(AppendMove(parent, m), GoLimits{cfg.child_depth, 0}, 1);
    // A child with no legal replies reports "mate 0" (mated) or "cp 0"
    // (stalemate) without a pv.
    int sign = r.empty() ? 0 : -r.front().score.Sign();
    rec.child_signs.push_back(sign);
    if (sign == 0) {
      ++excluded;
      continue;
    }
    if (sign != rec.parent_sign) ++rec.disagreements;
  }
  rec.effective_b = rec.legal_moves - excluded;
  if (excluded > 0) rec.note = std::to_string(excluded) + " indeterminate children excluded";
  if (rec.effective_b < 2) {
    rec.note = "fewer than 2 decisive children";
    return rec;
  }
  if (rec.disagreements > rec.effective_b - 1) {
    rec.disagreements = rec.effective_b - 1;
    rec.note += rec.note.empty() ? "" : "; ";
    rec.note += "no child agrees with the parent; clamped";
  }
  rec.gamma_tilde =
      static_cast<double>(rec.disagreements) / (rec.effective_b - 1);
  rec.valid = true;
  return rec;
}

std::string CriticalRateCsv(const std::vector<CriticalRateRecord>& records) {
  std::string out = "fen,b,parent_sign,gamma_tilde\n";
  char buf[32];
  for (const CriticalRateRecord& r : records) {
    if (!r.valid) continue;
    std::snprintf(buf, sizeof buf, "%.6f", r.gamma_tilde);
    out += "\"" + r.fen + "\"," + std::to_string(r.effective_b) + "," +
           std::to_string(r.parent_sign) + "," + buf + "\n";
  }
  return out;
}

EvalHistograms BuildEvalHistograms(UciSession& session, const ProbeConfig& cfg,
                                   const std::vector<std::string>& fens,
                                   int bins) {
  if (fens.empty()) throw std::invalid_argument("no samples");
  if (bins < 2) throw std::invalid_argument("bins must be >= 2");
  EvalHistograms h;
  h.plus.assign(bins, 0.0);
  h.minus.assign(bins, 0.0);
  for (const std::string& fen : fens) {
    const std::string pos = FenPosition(fen);
    std::vector<PvLine> deep = session.Evaluate(pos, GoLimits{cfg.deep_depth, 0}, 1);
    int cls = deep.empty() ? 0 : deep.front().score.Sign();
    if (cls == 0) {
      ++h.dropped;
      continue;
    }
    std::vector<PvLine> shallow = session.Evaluate(
        pos, GoLimits{cfg.static_depth, cfg.static_nodes}, 1);
    if (shallow.empty()) throw EngineError("no static score for " + fen);
    double x = NormalizeScore(shallow.front().score, cfg.logistic_scale);
    int bin = std::min(bins - 1, static_cast<int>(x * bins));
    (cls > 0 ? h.plus : h.minus)[bin] += 1.0;
  }
  return h;
}

std::string FormatEvalHistograms(const EvalHistograms& h,
                                 const ProbeConfig& cfg) {
  double plus = 0, minus = 0;
  for (double x : h.plus) plus += x;
  for (double x : h.minus) minus += x;
  if (plus <= 0 || minus <= 0) {
    throw std::invalid_argument("both classes need at least one sample");
  }
  std::ostringstream note;
  note << "evaluation histogram from engine probe\n"
       << "class = sign of depth " << cfg.deep_depth << " score; value = go depth "
       << cfg.static_depth << " nodes " << cfg.static_nodes
       << " (static evaluation stand-in), logistic scale " << cfg.logistic_scale
       << "\n"
       << "samples: +1 " << plus << ", -1 " << minus << ", dropped " << h.dropped;
  return FormatHistogram(h.plus, h.minus, note.str());
}

}  // namespace cwl
