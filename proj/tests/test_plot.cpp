// Copyright 2026 The aoap-mcts Authors
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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "aoap/plot.hpp"

namespace aoap {
namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<PcsRow> grid_rows() {
  std::vector<PcsRow> rows;
  for (const char* p : {"aoap", "uct"}) {
    for (int i = 0; i < 12; ++i) {
      const double pcs = 0.3 + 0.03 * i;
      rows.push_back({p, static_cast<std::uint64_t>(80 + 20 * i), 10000, 0, pcs,
                      std::sqrt(pcs * (1 - pcs) / 10000)});
    }
  }
  return rows;
}

TEST(Plot, TwoSeriesTwelvePoints) {
  const auto svg = render_plot(grid_rows());
  EXPECT_EQ(count(svg, "class=\"series\""), 2);
  EXPECT_EQ(count(svg, "class=\"whisker\""), 24);
  EXPECT_EQ(count(svg, "class=\"marker\""), 24);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Plot, SinglePointIsAMarkerOnly) {
  const auto svg = render_plot({{"aoap", 300, 10, 5, 0.5, 0.158}});
  EXPECT_EQ(count(svg, "class=\"series\""), 0);
  EXPECT_EQ(count(svg, "class=\"marker\""), 1);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}

TEST(Plot, DeterministicFiles) {
  const std::string a = ::testing::TempDir() + "plot_a.svg";
  const std::string b = ::testing::TempDir() + "plot_b.svg";
  emit_plot(grid_rows(), a);
  emit_plot(grid_rows(), b);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(Plot, EmptyTableIsAnError) {
  EXPECT_THROW(render_plot({}), PreconditionError);
}

}  // namespace
}  // namespace aoap
