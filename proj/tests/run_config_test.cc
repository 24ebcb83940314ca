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

#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace cwl {
namespace {

using Args = std::vector<std::string>;

TEST(ParseFlatConfigTest, ListForms) {
  ConfigEntries e = ParseFlatConfig(
      "# grid\n"
      "gamma = 0.5 1.0\n"
      "b=2, 3\n"
      "c=[0.5, 2]   # two values\n"
      "\n"
      "heuristic=\"hist:data/x.hist\"\n");
  ASSERT_EQ(e.size(), 4u);
  EXPECT_EQ(e[0].first, "gamma");
  EXPECT_EQ(e[0].second, (Args{"0.5", "1.0"}));
  EXPECT_EQ(e[1].second, (Args{"2", "3"}));
  EXPECT_EQ(e[2].second, (Args{"0.5", "2"}));
  EXPECT_EQ(e[3].second, (Args{"hist:data/x.hist"}));
}

TEST(ParseFlatConfigTest, Errors) {
  EXPECT_THROW(ParseFlatConfig("gamma 0.5\n"), std::invalid_argument);
  EXPECT_THROW(ParseFlatConfig("=0.5\n"), std::invalid_argument);
  EXPECT_THROW(ParseFlatConfig("b=2\nb=3\n"), std::invalid_argument);
  EXPECT_THROW(LoadFlatConfig("/nonexistent/run.cfg"), std::invalid_argument);
}

TEST(MergeConfigIntoArgsTest, CommandLineWins) {
  ConfigEntries e = ParseFlatConfig("b=2 3\ntrees=10\n");
  Args merged = MergeConfigIntoArgs(e, {"--trees", "5"}, {"b", "trees"});
  EXPECT_EQ(merged, (Args{"--trees", "5", "--b", "2", "3"}));
  Args eq = MergeConfigIntoArgs(e, {"--trees=7"}, {"b", "trees"});
  EXPECT_EQ(eq, (Args{"--trees=7", "--b", "2", "3"}));
}

TEST(MergeConfigIntoArgsTest, UnknownKey) {
  EXPECT_THROW(MergeConfigIntoArgs(ParseFlatConfig("colour=red\n"), {}, {"b"}),
               std::invalid_argument);
}

}  // namespace
}  // namespace cwl
