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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sinrcap/harness.hpp"
#include "sinrcap/logging.hpp"

namespace sinrcap {
namespace {

TEST(Generate, Deterministic) {
  const GenConfig g{.n = 50, .R = 30, .delta = 5, .seed = 42, .primaries = 3};
  EXPECT_EQ(generate_instance(g), generate_instance(g));
  GenConfig other = g;
  other.seed = 43;
  EXPECT_FALSE(generate_instance(g) == generate_instance(other));
}

TEST(Generate, Bounds) {
  const GenConfig g{.n = 400, .R = 30, .delta = 5, .seed = 7};
  const Instance inst = generate_instance(g);
  ASSERT_EQ(inst.size(), 400U);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Link& l = inst.link(i);
    EXPECT_EQ(l.id, static_cast<LinkId>(i));
    EXPECT_GE(l.sender.x, 0.0);
    EXPECT_LE(l.sender.x, 30.0);
    EXPECT_GE(l.sender.y, 0.0);
    EXPECT_LE(l.sender.y, 30.0);
    EXPECT_GE(inst.length(i), 1.0 - 1e-12);
    EXPECT_LE(inst.length(i), 5.0 + 1e-12);
    EXPECT_GE(l.weight, 1.0);
    EXPECT_LE(l.weight, 400.0);
  }
  EXPECT_EQ(inst.alpha(), 2.5);
  EXPECT_EQ(inst.beta(), 1.0);
  EXPECT_EQ(inst.noise(), 0.0);
}

TEST(Generate, WeightDistributions) {
  const std::size_t n = 200;
  const Instance rev = generate_instance(
      {.n = n, .weight_dist = WeightDistribution::kReversed, .seed = 1});
  for (const Link& l : rev.links()) {
    EXPECT_GT(l.weight, 1.0 / n - 1e-15);
    EXPECT_LE(l.weight, 1.0);
  }
  const Instance len = generate_instance(
      {.n = n, .weight_dist = WeightDistribution::kLengthDetermined, .seed = 1});
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(len.link(i).weight, len.length(i));
  const Instance cls = generate_instance(
      {.n = n, .weight_dist = WeightDistribution::kWeightClass, .seed = 1});
  std::vector<int> seen(9, 0);
  for (const Link& l : cls.links()) {
    const int t = static_cast<int>(std::log2(l.weight));
    EXPECT_EQ(std::ldexp(1.0, t), l.weight);
    ASSERT_GE(t, 1);
    ASSERT_LE(t, 8);  // ceil(log2 200) = 8
    ++seen[t];
  }
  for (int t = 1; t <= 8; ++t) EXPECT_GT(seen[t], 0) << t;
}

TEST(Generate, PrimariesAreFeasible) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = generate_instance(
        {.n = 10, .R = 10, .delta = 4, .seed = seed, .primaries = 4});
    ASSERT_EQ(inst.primaries().size(), 4U);
    std::vector<testing::Transmitter> p;
    for (std::size_t j = 0; j < 4; ++j)
      p.push_back({inst.primaries().links[j], inst.primaries().powers[j], 1.0, 0.0});
    EXPECT_TRUE(testing::ref_sinr(p, inst.alpha()));
  }
}

TEST(Generate, InvalidConfig) {
  EXPECT_THROW(generate_instance({.n = 0}), std::invalid_argument);
  EXPECT_THROW(generate_instance({.R = 0}), std::invalid_argument);
  EXPECT_THROW(generate_instance({.delta = 0.5}), std::invalid_argument);
}

TEST(Compare, TrivialInstanceRatioOne) {
  CompareConfig cfg;
  cfg.instances = {{.n = 1, .seed = 3}};
  cfg.sweep = {1.0};
  cfg.trials = 5;
  const auto records = run_compare(cfg);
  ASSERT_EQ(records.size(), 5U);
  for (const auto& r : records) {
    EXPECT_EQ(r.value, 1.0);
    EXPECT_EQ(r.ratio, 1.0);
    EXPECT_TRUE(r.feasible);
  }
  EXPECT_EQ(records.back().algo, "oracle");
  EXPECT_FALSE(records.back().constant.has_value());
}

TEST(Compare, EmptySweepRejected) {
  CompareConfig cfg;
  cfg.instances = {{.n = 3}};
  cfg.sweep = {};
  EXPECT_THROW(run_compare(cfg), std::invalid_argument);
}

TEST(Compare, RowsAgreeWithOracleAndCertificates) {
  CompareConfig cfg;
  for (std::uint64_t s = 1; s <= 4; ++s)
    cfg.instances.push_back({.n = 10, .R = 6, .delta = 3, .seed = s});
  cfg.sweep = {0.5, 1.0, 2.0};
  cfg.trials = 10;
  std::vector<ExperimentRecord> records;
  {
    ScopedWarningCapture quiet;
    records = run_compare(cfg);
  }
  ASSERT_EQ(records.size(), 4U * 5U);
  for (std::size_t i = 0; i < records.size(); i += 5) {
    const double opt = records[i + 4].value;
    EXPECT_EQ(records[i + 4].algo, "oracle");
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_LE(records[i + k].value, opt + 1e-9);
      EXPECT_TRUE(records[i + k].feasible);
    }
    EXPECT_GE(records[i + 1].value, records[i + 2].value);
    EXPECT_GE(records[i + 1].value, records[i + 3].value);
    EXPECT_DOUBLE_EQ(records[i].ratio, records[i].value / records[i + 1].value);
  }
}

TEST(Compare, CsvIsDeterministic) {
  CompareConfig cfg;
  cfg.instances = {{.n = 30, .R = 20, .delta = 4, .seed = 9},
                   {.n = 30, .R = 10, .delta = 2, .seed = 10}};
  cfg.sweep = {0.6, 1.2};
  cfg.trials = 8;
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, run_compare(cfg));
  write_csv(b, run_compare(cfg));
  const std::string text = a.str();
  EXPECT_EQ(text, b.str());
  EXPECT_EQ(text.substr(0, kCsvHeader.size()), kCsvHeader);
  // Header plus four algorithms per instance; no oracle rows at n = 30.
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 9);
}

TEST(Compare, TimingColumnOnlyWhenRequested) {
  CompareConfig cfg;
  cfg.instances = {{.n = 5, .seed = 1}};
  cfg.sweep = {1.0};
  cfg.trials = 2;
  EXPECT_FALSE(run_compare(cfg).front().runtime_ms.has_value());
  cfg.timing = true;
  EXPECT_TRUE(run_compare(cfg).front().runtime_ms.has_value());
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(default_sweep().size(), 15U);
  EXPECT_NEAR(default_sweep().back(), 3.0, 1e-12);
}

TEST(OracleSuite, PassesAndIsReproducible) {
  std::vector<GenConfig> configs;
  for (std::uint64_t s = 1; s <= 6; ++s)
    configs.push_back({.n = 9, .R = 5, .delta = 3, .seed = s});
  ScopedWarningCapture quiet;
  const SuiteReport a = run_oracle_suite(configs, PowerAssignment::uniform(), 10);
  const SuiteReport b = run_oracle_suite(configs, PowerAssignment::uniform(), 10);
  EXPECT_TRUE(a.pass());
  std::ostringstream sa;
  std::ostringstream sb;
  write_suite_csv(sa, a);
  write_suite_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  for (const SuiteRow& r : a.rows) {
    EXPECT_LE(r.alg_capacity, r.opt);
    EXPECT_GE(r.lp_star, static_cast<double>(r.bifeasible) - 1e-7);
    EXPECT_GE(r.alg_qos, 0.0);
  }
}

}  // namespace
}  // namespace sinrcap
