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

#include <vector>

#include "oracles.hpp"
#include "sinrcap/greedy.hpp"
#include "sinrcap/harness.hpp"
#include "sinrcap/oracle.hpp"

namespace sinrcap {
namespace {

using testing::make_instance;
using testing::make_link;

AffectanceContext uniform_context(const Instance& inst) {
  return AffectanceContext(inst, PowerAssignment::uniform(), false);
}

TEST(GreedyBase, AllFarLinksAccepted) {
  std::vector<Link> links;
  for (int i = 0; i < 5; ++i) links.push_back(make_link(i, 1e5 * i, 0, 1e5 * i + 1 + i, 0));
  const auto ctx = uniform_context(make_instance(std::move(links)));
  const std::vector<std::size_t> order = {0, 1, 2, 3, 4};
  EXPECT_EQ(greedy_accept(ctx, order, 1.0).size(), 5U);
  EXPECT_EQ(greedy_base(ctx).value, 5.0);
}

TEST(GreedyBase, CoLocatedPairKeepsOne) {
  const auto ctx = uniform_context(make_instance(
      {make_link(3, 0, 0, 1, 0), make_link(1, 0, 0, 1, 0)}));
  const std::vector<std::size_t> order = {0, 1};
  EXPECT_EQ(greedy_accept(ctx, order, 0.5), (std::vector<std::size_t>{0}));
  const Schedule s = greedy_base(ctx, 0.5);
  // Equal lengths are ordered by id.
  EXPECT_EQ(s.ids, (std::vector<LinkId>{1}));
  EXPECT_THROW(greedy_base(ctx, 0.0), std::invalid_argument);
}

TEST(WeightClasses, EqualWeightsFormOneClass) {
  std::vector<Link> links =
      generate_instance({.n = 20, .R = 10, .delta = 3, .seed = 5}).links();
  for (Link& l : links) l.weight = 3.0;
  const auto ctx = uniform_context(make_instance(std::move(links)));
  EXPECT_EQ(weight_classes(ctx).size(), 1U);
  EXPECT_EQ(greedy_weight_classes(ctx).ids,
            greedy_base(ctx, 1.0, Objective::kWeight).ids);
}

TEST(WeightClasses, HeavySingletonWins) {
  const auto ctx = uniform_context(make_instance(
      {make_link(0, 0, 0, 1, 0, 1.0), make_link(1, 1e6, 0, 1e6 + 1, 0, 2.0)}));
  const auto classes = weight_classes(ctx);
  ASSERT_EQ(classes.size(), 2U);
  const Schedule s = greedy_weight_classes(ctx);
  EXPECT_EQ(s.ids, (std::vector<LinkId>{1}));
  EXPECT_EQ(s.value, 2.0);
}

TEST(WeightClasses, PowerOfTwoWeightIsCovered) {
  // The largest weight scales to n = 4 = 2^2 and must land in class 2.
  std::vector<Link> links;
  for (int i = 0; i < 4; ++i)
    links.push_back(make_link(i, 1e5 * i, 0, 1e5 * i + 1, 0, 1.0 + i));
  const auto classes = weight_classes(uniform_context(make_instance(std::move(links))));
  ASSERT_TRUE(classes.contains(2));
  EXPECT_EQ(classes.at(2), (std::vector<std::size_t>{3}));
  EXPECT_EQ(classes.at(1), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(classes.at(0), (std::vector<std::size_t>{0}));
}

TEST(WeightClasses, EmptyInstance) {
  const auto ctx = uniform_context(Instance());
  EXPECT_TRUE(greedy_weight_classes(ctx).empty());
  EXPECT_TRUE(greedy_length_classes(ctx).empty());
  EXPECT_TRUE(greedy_combined(ctx).empty());
}

TEST(LengthClasses, Examples) {
  const auto narrow = uniform_context(make_instance(
      {make_link(0, 0, 0, 1, 0), make_link(1, 50, 0, 51.9, 0)}));
  EXPECT_EQ(length_classes(narrow).size(), 1U);
  const auto wide = uniform_context(make_instance(
      {make_link(0, 0, 0, 1, 0), make_link(1, 50, 0, 58, 0)}));
  const auto classes = length_classes(wide);
  ASSERT_EQ(classes.size(), 2U);
  EXPECT_TRUE(classes.contains(0));
  EXPECT_TRUE(classes.contains(3));
}

TEST(Combined, AtLeastEachConstituent) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = generate_instance(
        {.n = 40, .R = 20, .delta = 8,
         .weight_dist = WeightDistribution::kOrdinary, .seed = seed});
    const AffectanceContext ctx(inst, PowerAssignment::linear(), false);
    for (double c : {0.4, 1.0, 2.2}) {
      const Schedule all = greedy_combined(ctx, c);
      EXPECT_GE(all.value, greedy_weight_classes(ctx, c).value);
      EXPECT_GE(all.value, greedy_length_classes(ctx, c).value);
      EXPECT_TRUE(all.certificate.one_feasible);
      EXPECT_TRUE(all.certificate.exact_sinr);
    }
  }
}

TEST(Greedy, BoundedByExactOptimum) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto dist = static_cast<WeightDistribution>(seed % 4);
    const Instance inst = generate_instance(
        {.n = 10, .R = 6, .delta = 4, .weight_dist = dist, .seed = seed});
    const AffectanceContext ctx(inst, PowerAssignment::linear(), false);
    const double opt = exact_capacity(ctx).value;
    const double opt_w = exact_capacity(ctx, Objective::kWeight).value;
    EXPECT_NEAR(opt, testing::ref_optimum(inst, PowerAssignment::linear(), false), 0);
    for (double c : {0.5, 1.0, 3.0}) {
      EXPECT_LE(greedy_base(ctx, c).value, opt);
      EXPECT_LE(greedy_weight_classes(ctx, c).value, opt_w + 1e-9);
      EXPECT_LE(greedy_length_classes(ctx, c).value, opt_w + 1e-9);
      EXPECT_LE(greedy_combined(ctx, c).value, opt_w + 1e-9);
    }
  }
}

}  // namespace
}  // namespace sinrcap
