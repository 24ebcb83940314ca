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

#include "cwl/run_config.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cwl {

namespace {

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitValues(std::string v) {
  v = Trim(v);
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') {
    v = v.substr(1, v.size() - 2);
  }
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream in(v);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) {
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
      tok = tok.substr(1, tok.size() - 2);
    }
    out.push_back(tok);
  }
  return out;
}

}  // namespace

ConfigEntries ParseFlatConfig(std::string_view text) {
  ConfigEntries entries;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    std::string key = Trim(line.substr(0, eq));
    for (const auto& e : entries) {
      if (e.first == key) {
        throw std::invalid_argument("config key '" + key + "' repeated");
      }
    }
    entries.emplace_back(key, SplitValues(line.substr(eq + 1)));
  }
  return entries;
}

ConfigEntries LoadFlatConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseFlatConfig(buf.str());
}

std::vector<std::string> MergeConfigIntoArgs(
    const ConfigEntries& config, const std::vector<std::string>& args,
    const std::vector<std::string>& known) {
  std::vector<std::string> out = args;
  for (const auto& [key, values] : config) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
    const std::string flag = "--" + key;
    bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.starts_with(flag + "=");
    });
    if (given) continue;
    out.push_back(flag);
    out.insert(out.end(), values.begin(), values.end());
  }
  return out;
}

}  // namespace cwl
