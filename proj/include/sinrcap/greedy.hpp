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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "sinrcap/affectance.hpp"
#include "sinrcap/rounding.hpp"

namespace sinrcap {

// Baseline greedy algorithms used for comparison with the LP pipeline.

// Scans `order` and accepts u when both a_A(u) and a_u(A) stay within c_g
// for the accepted set A.
inline std::vector<std::size_t> greedy_accept(const AffectanceContext& ctx,
                                              std::span<const std::size_t> order,
                                              double c_g) {
  std::vector<std::size_t> accepted;
  for (std::size_t u : order) {
    if (aggregate(ctx, accepted, u, Direction::kIn).within(c_g) &&
        aggregate(ctx, accepted, u, Direction::kOut).within(c_g))
      accepted.push_back(u);
  }
  return accepted;
}

namespace detail {

inline void require_positive_cg(double c_g) {
  if (!(c_g > 0.0)) throw std::invalid_argument("c_g must be positive");
}

inline std::vector<std::size_t> by_length(const AffectanceContext& ctx,
                                          std::vector<std::size_t> links) {
  std::sort(links.begin(), links.end(), [&](std::size_t a, std::size_t b) {
    if (ctx.length(a) != ctx.length(b)) return ctx.length(a) < ctx.length(b);
    return ctx.id(a) < ctx.id(b);
  });
  return links;
}

inline std::vector<std::size_t> by_weight(const AffectanceContext& ctx,
                                          std::vector<std::size_t> links) {
  std::sort(links.begin(), links.end(), [&](std::size_t a, std::size_t b) {
    if (ctx.weight(a) != ctx.weight(b)) return ctx.weight(a) > ctx.weight(b);
    return ctx.id(a) < ctx.id(b);
  });
  return links;
}

inline std::vector<std::size_t> greedy_run(const AffectanceContext& ctx,
                                           std::span<const std::size_t> order,
                                           double c_g, Objective objective) {
  const auto accepted = greedy_accept(ctx, order, c_g);
  return final_selection(ctx, accepted, 12.0 * c_g, 1.0, objective).selected;
}

// Smallest t >= 0 with x < 2^(t+1), for x >= 1.
inline int dyadic_class(double x) {
  int t = static_cast<int>(std::floor(std::log2(x)));
  if (t < 0) t = 0;
  while (std::ldexp(1.0, t + 1) <= x) ++t;
  while (t > 0 && std::ldexp(1.0, t) > x) --t;
  return t;
}

inline Schedule best_of(const AffectanceContext& ctx,
                        const std::vector<std::vector<std::size_t>>& runs,
                        Objective objective) {
  return certify(ctx, best_part(ctx, runs, objective), objective);
}

}  // namespace detail

// Weight classes after scaling the largest weight to n; weights that
// scale below 1 are discarded.
inline std::map<int, std::vector<std::size_t>> weight_classes(
    const AffectanceContext& ctx) {
  std::map<int, std::vector<std::size_t>> classes;
  double max_w = 0.0;
  for (std::size_t u = 0; u < ctx.size(); ++u)
    max_w = std::max(max_w, ctx.weight(u));
  if (max_w <= 0.0) return classes;
  const double scale = static_cast<double>(ctx.size()) / max_w;
  for (std::size_t u = 0; u < ctx.size(); ++u) {
    const double w = ctx.weight(u) * scale;
    if (w >= 1.0) classes[detail::dyadic_class(w)].push_back(u);
  }
  return classes;
}

// Length classes after scaling the shortest length to 1.
inline std::map<int, std::vector<std::size_t>> length_classes(
    const AffectanceContext& ctx) {
  std::map<int, std::vector<std::size_t>> classes;
  if (ctx.size() == 0) return classes;
  double min_l = ctx.length(0);
  for (std::size_t u = 1; u < ctx.size(); ++u)
    min_l = std::min(min_l, ctx.length(u));
  for (std::size_t u = 0; u < ctx.size(); ++u)
    classes[detail::dyadic_class(ctx.length(u) / min_l)].push_back(u);
  return classes;
}

// Shortest-first greedy restricted to `links` (all links when empty),
// followed by the LP pipeline's final selection.
inline Schedule greedy_base(const AffectanceContext& ctx, double c_g = 1.0,
                            Objective objective = Objective::kCardinality,
                            std::vector<std::size_t> links = {}) {
  detail::require_positive_cg(c_g);
  if (links.empty()) links = detail::all_links(ctx);
  const auto order = detail::by_length(ctx, std::move(links));
  return certify(ctx, detail::greedy_run(ctx, order, c_g, objective),
                 objective);
}

// Weight classes W_t = {u : w_u in [2^t, 2^(t+1))} after scaling the largest
// weight to n and discarding weights below 1. The heaviest class solution
// wins.
inline Schedule greedy_weight_classes(const AffectanceContext& ctx,
                                      double c_g = 1.0) {
  detail::require_positive_cg(c_g);
  const auto classes = weight_classes(ctx);
  std::vector<std::vector<std::size_t>> runs;
  for (auto& [t, members] : classes) {
    const auto order = detail::by_length(ctx, members);
    runs.push_back(detail::greedy_run(ctx, order, c_g, Objective::kWeight));
  }
  return detail::best_of(ctx, runs, Objective::kWeight);
}

// Length classes L_t = {u : l_u / l_min in [2^t, 2^(t+1))}; within a class
// links are scanned by non-increasing weight.
inline Schedule greedy_length_classes(const AffectanceContext& ctx,
                                      double c_g = 1.0) {
  detail::require_positive_cg(c_g);
  const auto classes = length_classes(ctx);
  std::vector<std::vector<std::size_t>> runs;
  for (auto& [t, members] : classes) {
    const auto order = detail::by_weight(ctx, members);
    runs.push_back(detail::greedy_run(ctx, order, c_g, Objective::kWeight));
  }
  return detail::best_of(ctx, runs, Objective::kWeight);
}

// The heavier of the weight-class and length-class greedy solutions.
inline Schedule greedy_combined(const AffectanceContext& ctx,
                                double c_g = 1.0) {
  Schedule by_weight = greedy_weight_classes(ctx, c_g);
  Schedule by_length = greedy_length_classes(ctx, c_g);
  return preferred(by_length, by_weight) ? by_length : by_weight;
}

}  // namespace sinrcap
