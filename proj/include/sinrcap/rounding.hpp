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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sinrcap/affectance.hpp"
#include "sinrcap/errors.hpp"
#include "sinrcap/formulations.hpp"
#include "sinrcap/lp.hpp"
#include "sinrcap/random.hpp"

namespace sinrcap {

enum class RoundingMode {
  kCapacity,
  kQos,
  kWeighted,
  kAdmissionGeneral,
  kAdmissionLarge,
};

struct RoundingPolicy {
  RoundingMode mode = RoundingMode::kCapacity;
  double C = 1.0;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  // Second-stage bound for the capacity and QoS conditions, as a multiple of C.
  double capacity_factor = 3.0;
  // Bound for the weighted condition and for event B_u, as a multiple of C.
  double single_condition_factor = 4.0;
  // Event A: total affectance on the primaries at most this times |P|.
  double primary_budget_factor = 5.0;
  // Per-primary bound that must hold after the second stage (large-OPT).
  double per_primary_bound = 1.0;
  // Resampling cap for the large-OPT per-primary condition.
  std::size_t max_retries = 200;
  // In-affectance kept by extract_low_affectance; 12 C when unset.
  std::optional<double> extraction_bound;
  // Target of the final signal strengthening.
  double theta = 1.0;

  double low_affectance_bound() const {
    return extraction_bound.value_or(12.0 * C);
  }

  Objective objective() const {
    return mode == RoundingMode::kWeighted ? Objective::kWeight
                                           : Objective::kCardinality;
  }

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  }
};

// Independent Bernoulli(delta) draws over the formulation's links, keyed by
// (seed, trial, attempt, link id). Returns an indicator over context indices.
inline std::vector<char> first_stage(const AffectanceContext& ctx,
                                     const Formulation& f,
                                     std::span<const double> delta,
                                     std::uint64_t seed, std::uint64_t trial,
                                     std::uint64_t attempt = 0) {
  std::vector<char> s(ctx.size(), 0);
  for (std::size_t a = 0; a < f.links.size(); ++a) {
    const std::size_t u = f.links[a];
    const auto key = static_cast<std::uint64_t>(ctx.id(u));
    s[u] = keyed_uniform(seed, trial, attempt, key) < delta[a] ? 1 : 0;
  }
  return s;
}

// Per-link second-stage conditions given a first-stage indicator, evaluated
// for every link of the formulation whether or not it was drawn. Global
// events (A for general admission) are folded in.
inline std::vector<char> second_stage_conditions(const AffectanceContext& ctx,
                                                 const Formulation& f,
                                                 std::span<const char> s,
                                                 const RoundingPolicy& policy) {
  std::vector<std::size_t> drawn;
  for (std::size_t u : f.links)
    if (s[u]) drawn.push_back(u);
  std::vector<char> ok(ctx.size(), 0);
  const double C = policy.C;
  bool global = true;
  if (policy.mode == RoundingMode::kAdmissionGeneral &&
      ctx.has_primaries()) {
    double total = 0.0;
    for (std::size_t v : drawn) total += primary_load(ctx, v);
    global = total <= policy.primary_budget_factor *
                          static_cast<double>(ctx.primary_count());
  }
  for (std::size_t u : f.links) {
    bool pass = global;
    switch (policy.mode) {
      case RoundingMode::kCapacity: {
        double in = 0.0;
        double out = 0.0;
        for (std::size_t v : drawn) {
          if (v == u || ctx.length(v) < ctx.length(u)) continue;
          in += ctx.affectance(v, u);
          out += ctx.affectance(u, v);
        }
        const double bound = policy.capacity_factor * C;
        pass = in <= bound && out <= bound;
        break;
      }
      case RoundingMode::kQos: {
        double out = 0.0;
        for (std::size_t v : drawn)
          if (v != u) out += ctx.affectance(u, v);
        pass = out <= policy.capacity_factor * C;
        break;
      }
      case RoundingMode::kWeighted: {
        double in = 0.0;
        for (std::size_t v : drawn)
          if (v != u) in += ctx.affectance(v, u);
        pass = in <= policy.single_condition_factor * C;
        break;
      }
      case RoundingMode::kAdmissionGeneral:
      case RoundingMode::kAdmissionLarge: {
        double out = 0.0;
        for (std::size_t v : drawn)
          if (v != u) out += ctx.affectance(u, v);
        pass = pass && out <= policy.single_condition_factor * C;
        break;
      }
    }
    ok[u] = pass ? 1 : 0;
  }
  return ok;
}

namespace detail {

inline std::vector<std::size_t> select_second_stage(
    const AffectanceContext& ctx, const Formulation& f,
    std::span<const char> s, const RoundingPolicy& policy) {
  const std::vector<char> ok = second_stage_conditions(ctx, f, s, policy);
  std::vector<std::size_t> out;
  for (std::size_t u : f.links)
    if (s[u] && ok[u]) out.push_back(u);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool per_primary_within(const AffectanceContext& ctx,
                               std::span<const std::size_t> set,
                               double bound) {
  for (std::size_t j = 0; j < ctx.primary_count(); ++j)
    if (!aggregate(ctx, set, ctx.primary_node(j), Direction::kIn)
             .within(bound))
      return false;
  return true;
}

}  // namespace detail

// Two-stage rounding: Bernoulli(delta) selection, then the mode's per-link
// conditions. For large-OPT admission the draw is repeated until every
// primary's incoming affectance is within bound, up to policy.max_retries.
inline std::vector<std::size_t> sample_round(const AffectanceContext& ctx,
                                             const Formulation& f,
                                             std::span<const double> delta,
                                             const RoundingPolicy& policy,
                                             std::uint64_t trial) {
  if (delta.size() != f.links.size())
    throw std::invalid_argument("fractional solution size mismatch");
  if (policy.mode != RoundingMode::kAdmissionLarge) {
    const auto s = first_stage(ctx, f, delta, policy.seed, trial);
    return detail::select_second_stage(ctx, f, s, policy);
  }
  for (std::size_t attempt = 0; attempt < policy.max_retries; ++attempt) {
    const auto s = first_stage(ctx, f, delta, policy.seed, trial, attempt);
    auto selected = detail::select_second_stage(ctx, f, s, policy);
    if (detail::per_primary_within(ctx, selected, policy.per_primary_bound))
      return selected;
  }
  throw RetriesExhausted("per-primary affectance condition failed in " +
                         std::to_string(policy.max_retries) + " draws");
}

// Members whose in-affectance from the set is at most `bound`.
inline std::vector<std::size_t> extract_low_affectance(
    const AffectanceContext& ctx, std::span<const std::size_t> set,
    double bound = 12.0) {
  std::vector<std::size_t> out;
  for (std::size_t u : set)
    if (aggregate(ctx, set, u, Direction::kIn).value <= bound) out.push_back(u);
  return out;
}

// First-fit partition into theta-feasible parts. Links are taken by
// non-increasing length (ties by id); each goes to the first part that stays
// theta-feasible with it, or opens a new part.
inline std::vector<std::vector<std::size_t>> signal_strengthen(
    const AffectanceContext& ctx, std::span<const std::size_t> set,
    double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  std::vector<std::size_t> order(set.begin(), set.end());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ctx.length(a) != ctx.length(b)) return ctx.length(a) > ctx.length(b);
    return ctx.id(a) < ctx.id(b);
  });
  struct Part {
    std::vector<std::size_t> members;
    std::vector<AffectanceSum> load;  // a_part(x) per member
  };
  std::vector<Part> parts;
  for (std::size_t u : order) {
    bool placed = false;
    for (Part& part : parts) {
      AffectanceSum own;
      bool fits = true;
      for (std::size_t i = 0; i < part.members.size() && fits; ++i) {
        const std::size_t x = part.members[i];
        AffectanceSum updated = part.load[i];
        updated.add(ctx.affectance(u, x), ctx.saturated(u, x));
        fits = updated.within(theta);
        own.add(ctx.affectance(x, u), ctx.saturated(x, u));
      }
      if (!fits || !own.within(theta)) continue;
      for (std::size_t i = 0; i < part.members.size(); ++i)
        part.load[i].add(ctx.affectance(u, part.members[i]),
                         ctx.saturated(u, part.members[i]));
      part.members.push_back(u);
      part.load.push_back(own);
      placed = true;
      break;
    }
    if (!placed) parts.push_back({{u}, {AffectanceSum{}}});
  }
  std::vector<std::vector<std::size_t>> out;
  out.reserve(parts.size());
  for (Part& p : parts) {
    std::sort(p.members.begin(), p.members.end());
    out.push_back(std::move(p.members));
  }
  return out;
}

// Best part of a partition under the objective (ties: smallest id set).
inline std::vector<std::size_t> best_part(
    const AffectanceContext& ctx,
    const std::vector<std::vector<std::size_t>>& parts, Objective objective) {
  std::vector<std::size_t> best;
  double best_value = 0.0;
  std::vector<LinkId> best_ids;
  for (const auto& part : parts) {
    const double value = objective_value(ctx, part, objective);
    auto ids = sorted_ids(ctx, part);
    if (best.empty() || preferred(value, ids, best_value, best_ids)) {
      best = part;
      best_value = value;
      best_ids = std::move(ids);
    }
  }
  return best;
}

struct FinalSelection {
  std::vector<std::size_t> selected;
  std::size_t low_affectance_size = 0;
  std::size_t parts = 0;
};

// Low-affectance extraction followed by signal strengthening; keeps the
// best part.
inline FinalSelection final_selection(const AffectanceContext& ctx,
                                      std::span<const std::size_t> set,
                                      double bound, double theta,
                                      Objective objective) {
  FinalSelection out;
  const auto low = extract_low_affectance(ctx, set, bound);
  out.low_affectance_size = low.size();
  const auto parts = signal_strengthen(ctx, low, theta);
  out.parts = parts.size();
  out.selected = best_part(ctx, parts, objective);
  return out;
}

enum class FormulationKind { kCapacity, kQos, kWeighted };

inline RoundingMode rounding_mode_for(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::kCapacity:
      return RoundingMode::kCapacity;
    case FormulationKind::kQos:
      return RoundingMode::kQos;
    case FormulationKind::kWeighted:
      return RoundingMode::kWeighted;
  }
  return RoundingMode::kCapacity;
}

inline Formulation build_formulation(const AffectanceContext& ctx,
                                     FormulationKind kind, double C) {
  switch (kind) {
    case FormulationKind::kCapacity:
      return build_capacity_lp(ctx, C);
    case FormulationKind::kQos:
      return build_qos_lp(ctx, C);
    case FormulationKind::kWeighted:
      return build_weighted_lp(ctx, C);
  }
  return build_capacity_lp(ctx, C);
}

struct PipelineResult {
  Schedule schedule;
  FractionalSolution lp;
  double mean_rounded_size = 0.0;
  std::size_t best_trial = 0;
  std::size_t parts = 0;
};

// Runs all trials of rounding plus final selection over a solved
// formulation and keeps the best outcome (ties: smallest id set).
inline PipelineResult round_and_select(const AffectanceContext& ctx,
                                       const Formulation& f,
                                       FractionalSolution lp,
                                       const RoundingPolicy& policy) {
  PipelineResult result;
  const Objective objective = policy.objective();
  std::vector<std::size_t> best;
  double best_value = -1.0;
  std::vector<LinkId> best_ids;
  double total_rounded = 0.0;
  for (std::size_t t = 0; t < policy.trials; ++t) {
    const auto rounded = sample_round(ctx, f, lp.values, policy, t);
    total_rounded += static_cast<double>(rounded.size());
    const FinalSelection sel = final_selection(
        ctx, rounded, policy.low_affectance_bound(), policy.theta, objective);
    const double value = objective_value(ctx, sel.selected, objective);
    auto ids = sorted_ids(ctx, sel.selected);
    if (best_value < 0.0 || preferred(value, ids, best_value, best_ids)) {
      best = sel.selected;
      best_value = value;
      best_ids = std::move(ids);
      result.best_trial = t;
      result.parts = sel.parts;
    }
  }
  result.mean_rounded_size =
      total_rounded / static_cast<double>(policy.trials);
  result.schedule = certify(ctx, std::move(best), objective);
  result.lp = std::move(lp);
  if (policy.theta <= 1.0 && !result.schedule.certificate.one_feasible)
    throw std::logic_error("final selection produced an infeasible set");
  return result;
}

// LP, rounding and final selection for the capacity, QoS and weighted
// problems. The policy mode is taken from the formulation kind.
inline PipelineResult run_pipeline(const AffectanceContext& ctx,
                                   FormulationKind kind,
                                   RoundingPolicy policy) {
  policy.mode = rounding_mode_for(kind);
  policy.validate();
  Formulation f = build_formulation(ctx, kind, policy.C);
  FractionalSolution lp = solve_lp(f.lp);
  return round_and_select(ctx, f, std::move(lp), policy);
}

}  // namespace sinrcap
