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

#ifndef CWL_RUN_CONFIG_H_
#define CWL_RUN_CONFIG_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cwl {

// Flat `key=value` configuration. `#` starts a comment; list values may be
// written as `a b c`, `a, b, c` or `[a, b, c]`.
using ConfigEntries = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Throws std::invalid_argument on a malformed line or a repeated key.
ConfigEntries ParseFlatConfig(std::string_view text);
ConfigEntries LoadFlatConfig(const std::string& path);

// Merges a config file into command-line arguments. Entries whose flag
// (`--key`) already appears in `args` are skipped, so the command line wins.
// `known` lists the accepted keys; anything else throws std::invalid_argument.
std::vector<std::string> MergeConfigIntoArgs(
    const ConfigEntries& config, const std::vector<std::string>& args,
    const std::vector<std::string>& known);

}  // namespace cwl

#endif  // CWL_RUN_CONFIG_H_
