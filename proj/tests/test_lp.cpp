// Copyright 2026 The sinrcap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sinrcap/lp.hpp"
#include "sinrcap/random.hpp"

namespace sinrcap {
namespace {

// 64-bit LCG; the optima below were computed with an external solver on the
// programs this produces.
struct Lcg {
  std::uint64_t x;
  double next() {
    x = 6364136223846793005ULL * x + 1442695040888963407ULL;
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }
};

LinearProgram lcg_program(std::uint64_t seed, std::size_t n, std::size_t m) {
  Lcg g{seed};
  LinearProgram lp(n);
  for (auto& c : lp.objective) c = 0.5 + g.next();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<LinearProgram::Term> terms;
    for (std::size_t j = 0; j < n; ++j)
      if (g.next() < 0.3) terms.push_back({j, g.next()});
    lp.add_row(std::move(terms), 0.5 + 2.0 * g.next());
  }
  return lp;
}

LinearProgram random_program(std::uint64_t seed, std::size_t n, std::size_t m,
                             double density) {
  SplitMix64 rng(seed);
  LinearProgram lp(n);
  for (auto& c : lp.objective) c = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.1, 3.0);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<LinearProgram::Term> terms;
    for (std::size_t j = 0; j < n; ++j)
      if (rng.uniform() < density)
        // Coarse coefficients make ties and degenerate vertices common.
        terms.push_back({j, std::round(rng.uniform(0.0, 4.0)) / 2.0});
    lp.add_row(std::move(terms), std::round(rng.uniform(1.0, 6.0)) / 2.0);
  }
  return lp;
}

TEST(SolveLp, BoxOnly) {
  LinearProgram lp(1);
  const auto sol = solve_lp(lp);
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
  EXPECT_NEAR(sol.values[0], 1.0, 1e-12);
}

TEST(SolveLp, SharedRow) {
  LinearProgram lp(2);
  lp.add_row({{0, 2.0}, {1, 2.0}}, 1.0);
  const auto sol = solve_lp(lp);
  EXPECT_NEAR(sol.objective, 0.5, 1e-12);
  EXPECT_NEAR(sol.dual_bound, 0.5, 1e-9);
}

TEST(SolveLp, ZeroObjective) {
  LinearProgram lp(3, 0.0);
  lp.add_row({{0, 1.0}, {2, 1.0}}, 1.0);
  EXPECT_NEAR(solve_lp(lp).objective, 0.0, 1e-12);
}

TEST(SolveLp, EmptyProgram) {
  LinearProgram lp(0);
  const auto sol = solve_lp(lp);
  EXPECT_TRUE(sol.values.empty());
  EXPECT_EQ(sol.objective, 0.0);
}

TEST(SolveLp, RejectsMalformedPrograms) {
  LinearProgram lp(2);
  lp.add_row({{0, -1.0}}, 1.0);
  EXPECT_THROW(solve_lp(lp), std::invalid_argument);
  LinearProgram zero_rhs(1);
  zero_rhs.add_row({{0, 1.0}}, 0.0);
  EXPECT_THROW(solve_lp(zero_rhs), std::invalid_argument);
  LinearProgram bad_var(1);
  bad_var.add_row({{3, 1.0}}, 1.0);
  EXPECT_THROW(solve_lp(bad_var), std::invalid_argument);
}

TEST(SolveLp, MatchesVertexEnumeration) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const std::size_t m = 1 + seed % 6;
    const LinearProgram lp = random_program(seed, n, m, 0.6);
    const auto sol = solve_lp(lp);
    EXPECT_TRUE(check_solution(lp, sol.values)) << seed;
    EXPECT_NEAR(sol.objective, testing::vertex_enumeration_optimum(lp), 1e-7)
        << seed;
  }
}

TEST(SolveLp, DualBoundCertifiesLargePrograms) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const LinearProgram lp = random_program(1000 + seed, 60, 80, 0.15);
    const auto sol = solve_lp(lp);
    EXPECT_TRUE(check_solution(lp, sol.values));
    EXPECT_LE(sol.dual_bound - sol.objective, 1e-7 * std::max(1.0, sol.objective));
    EXPECT_GE(sol.dual_bound, sol.objective - 1e-9);
  }
}

TEST(SolveLp, MatchesExternalSolver) {
  struct Case {
    std::uint64_t seed;
    std::size_t n;
    std::size_t m;
    double optimum;
  };
  for (const Case& c : {Case{1, 30, 30, 9.340532530010806},
                        Case{2, 40, 25, 13.182107997519473},
                        Case{3, 25, 60, 6.429183275626435}}) {
    const auto sol = solve_lp(lcg_program(c.seed, c.n, c.m));
    EXPECT_NEAR(sol.objective, c.optimum, 1e-7) << c.seed;
  }
}

TEST(CheckSolution, Examples) {
  LinearProgram lp(2);
  lp.add_row({{0, 2.0}, {1, 1.0}}, 1.0);
  EXPECT_TRUE(check_solution(lp, std::vector<double>{0.0, 0.0}));
  EXPECT_FALSE(check_solution(lp, std::vector<double>{1.0, 0.0}));
  EXPECT_FALSE(check_solution(lp, std::vector<double>{0.0, 1.5}));
  EXPECT_FALSE(check_solution(lp, std::vector<double>{0.0}));
}

TEST(LpFormat, WritesRowsAndBounds) {
  LinearProgram lp(2);
  lp.add_row({{0, 0.5}, {1, 0.0}}, 1.0, "in_3");
  const std::string text = to_lp_format(lp);
  EXPECT_NE(text.find("Maximize\n obj: 1 x0 + 1 x1"), std::string::npos);
  EXPECT_NE(text.find(" in_3: 0.5 x0 <= 1\n"), std::string::npos);
  EXPECT_NE(text.find(" 0 <= x1 <= 1\n"), std::string::npos);
  EXPECT_NE(text.find("End\n"), std::string::npos);
}

}  // namespace
}  // namespace sinrcap
