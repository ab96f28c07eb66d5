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
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sinrcap/affectance.hpp"
#include "sinrcap/errors.hpp"
#include "sinrcap/formulations.hpp"
#include "sinrcap/logging.hpp"
#include "sinrcap/lp.hpp"
#include "sinrcap/random.hpp"
#include "sinrcap/rounding.hpp"

namespace sinrcap {

// Exact SINR check of every primary (at its explicit power) and every
// admitted link with all of P and Q transmitting. Recomputed from the raw
// geometry, independent of the context's affectance tables.
inline bool verify_admission(const AffectanceContext& ctx,
                             std::span<const std::size_t> admitted) {
  const Instance& inst = ctx.instance();
  const std::size_t n = inst.size();
  const double alpha = inst.alpha();
  std::vector<std::size_t> nodes(admitted.begin(), admitted.end());
  for (std::size_t j = 0; j < inst.primaries().size(); ++j)
    nodes.push_back(n + j);
  auto power = [&](std::size_t node) {
    return node < n ? power_of(ctx.assignment(), inst.length(node), alpha)
                    : inst.primaries().powers[node - n];
  };
  for (std::size_t v : nodes) {
    double interference = 0.0;
    for (std::size_t w : nodes) {
      if (w == v) continue;
      const double d = inst.sender_to_receiver(w, v);
      if (d == 0.0) return false;
      interference += power(w) / std::pow(d, alpha);
    }
    const double signal = power(v) / std::pow(inst.length(v), alpha);
    if (!(signal >= inst.beta_of(v) * (inst.noise_of(v) + interference)))
      return false;
  }
  return true;
}

// First-fit grouping such that every group keeps each primary's incoming
// affectance within 1. Links are taken by decreasing total affectance on
// the primaries (ties by id). A link that cannot fit even alone is dropped.
inline std::vector<std::vector<std::size_t>> partition_by_primaries(
    const AffectanceContext& ctx, std::span<const std::size_t> set) {
  const std::size_t k = ctx.primary_count();
  std::vector<std::size_t> order(set.begin(), set.end());
  std::vector<double> load(ctx.size(), 0.0);
  for (std::size_t v : order) load[v] = primary_load(ctx, v);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (load[a] != load[b]) return load[a] > load[b];
    return ctx.id(a) < ctx.id(b);
  });
  struct Group {
    std::vector<std::size_t> members;
    std::vector<AffectanceSum> on_primary;
  };
  std::vector<Group> groups;
  for (std::size_t v : order) {
    auto fits = [&](const std::vector<AffectanceSum>& base) {
      for (std::size_t j = 0; j < k; ++j) {
        AffectanceSum s = base[j];
        const std::size_t w = ctx.primary_node(j);
        s.add(ctx.affectance(v, w), ctx.saturated(v, w));
        if (!s.within(1.0)) return false;
      }
      return true;
    };
    const std::vector<AffectanceSum> empty(k);
    if (!fits(empty)) {
      warn("dropping link " + std::to_string(ctx.id(v)) +
           " that alone violates a primary");
      continue;
    }
    Group* target = nullptr;
    for (Group& g : groups)
      if (fits(g.on_primary)) {
        target = &g;
        break;
      }
    if (!target) {
      groups.push_back({{}, empty});
      target = &groups.back();
    }
    target->members.push_back(v);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t w = ctx.primary_node(j);
      target->on_primary[j].add(ctx.affectance(v, w), ctx.saturated(v, w));
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (Group& g : groups) {
    std::sort(g.members.begin(), g.members.end());
    out.push_back(std::move(g.members));
  }
  return out;
}

struct AdmissionResult {
  Schedule admitted;
  // Partition of the extracted feasible set of the winning trial.
  std::vector<std::vector<std::size_t>> groups;
  // sum_{v in admitted} a^_v(w) per primary w.
  std::vector<double> primary_residual;
  bool verified = false;
  FractionalSolution lp;
  // Links that entered the formulation (all links, or the large-OPT filter).
  std::vector<std::size_t> candidates;
  std::size_t best_trial = 0;
};

namespace detail {

inline AdmissionResult finish_admission(const AffectanceContext& ctx,
                                        std::vector<std::size_t> members,
                                        AdmissionResult result) {
  result.admitted = certify(ctx, std::move(members), Objective::kCardinality);
  result.primary_residual.assign(ctx.primary_count(), 0.0);
  for (std::size_t j = 0; j < ctx.primary_count(); ++j)
    result.primary_residual[j] = aggregate_affectance(
        ctx, result.admitted.members, ctx.primary_node(j), Direction::kIn);
  result.verified = verify_admission(ctx, result.admitted.members);
  if (!result.verified)
    throw std::logic_error("admission result violates an SINR constraint");
  return result;
}

inline void require_nearly_uniform(const AffectanceContext& ctx) {
  if (!is_nearly_uniform(ctx))
    warn("admission pipeline expects a nearly uniform secondary power");
}

}  // namespace detail

// O(|P|) admission: admission LP, rounding with events A and B_u,
// extraction of a feasible set, then grouping against the primaries. The
// largest group wins.
inline AdmissionResult admit_general(const AffectanceContext& ctx,
                                     RoundingPolicy policy) {
  policy.validate();
  detail::require_nearly_uniform(ctx);
  if (!ctx.has_primaries()) {
    PipelineResult p = run_pipeline(ctx, FormulationKind::kQos, policy);
    AdmissionResult r;
    r.groups = {p.schedule.members};
    r.lp = std::move(p.lp);
    r.candidates = detail::all_links(ctx);
    r.best_trial = p.best_trial;
    return detail::finish_admission(ctx, p.schedule.members, std::move(r));
  }
  policy.mode = RoundingMode::kAdmissionGeneral;
  Formulation f = build_admission_lp(ctx, policy.C);
  AdmissionResult result;
  result.lp = solve_lp(f.lp);
  result.candidates = f.links;
  std::vector<std::size_t> best;
  std::vector<LinkId> best_ids;
  bool have = false;
  for (std::size_t t = 0; t < policy.trials; ++t) {
    const auto rounded = sample_round(ctx, f, result.lp.values, policy, t);
    const FinalSelection sel =
        final_selection(ctx, rounded, policy.low_affectance_bound(),
                        policy.theta, Objective::kCardinality);
    auto groups = partition_by_primaries(ctx, sel.selected);
    auto group = best_part(ctx, groups, Objective::kCardinality);
    auto ids = sorted_ids(ctx, group);
    const double value = static_cast<double>(group.size());
    if (!have || preferred(value, ids, static_cast<double>(best.size()),
                           best_ids)) {
      best = std::move(group);
      best_ids = std::move(ids);
      result.groups = std::move(groups);
      result.best_trial = t;
      have = true;
    }
  }
  return detail::finish_admission(ctx, std::move(best), std::move(result));
}

struct SparsifyOptions {
  double keep_probability = 1.0 / 6.0;
  double bound = 1.0 / 3.0;
  std::size_t max_retries = 200;
};

struct SparsifyResult {
  std::vector<std::size_t> kept;
  std::size_t attempts = 0;
};

namespace detail {
inline constexpr std::uint64_t kSparsifyStream = 0x5ba45e11ULL;
}

// One independent keep-with-probability draw over R; accepted when every
// primary's incoming affectance from the kept links is within the bound.
inline bool sparsify_attempt(const AffectanceContext& ctx,
                             std::span<const std::size_t> set,
                             std::uint64_t seed, std::uint64_t attempt,
                             const SparsifyOptions& options,
                             std::vector<std::size_t>& kept) {
  kept.clear();
  for (std::size_t u : set)
    if (keyed_uniform(seed, detail::kSparsifyStream, attempt,
                      static_cast<std::uint64_t>(ctx.id(u))) <
        options.keep_probability)
      kept.push_back(u);
  return detail::per_primary_within(ctx, kept, options.bound);
}

// Random 1/6-sample of R whose affectance on each primary is at most 1/3,
// retried up to options.max_retries times.
inline SparsifyResult sparsify(const AffectanceContext& ctx,
                               std::span<const std::size_t> set,
                               std::uint64_t seed,
                               const SparsifyOptions& options = {}) {
  SparsifyResult r;
  for (std::size_t attempt = 0; attempt < options.max_retries; ++attempt) {
    r.attempts = attempt + 1;
    if (sparsify_attempt(ctx, set, seed, attempt, options, r.kept)) {
      std::sort(r.kept.begin(), r.kept.end());
      return r;
    }
  }
  throw RetriesExhausted("sparsification failed in " +
                         std::to_string(options.max_retries) + " attempts");
}

// Constant-factor admission when OPT is large compared to |P|: prefilter,
// the large-OPT LP, rounding that resamples until every primary stays within
// its budget, and final selection.
inline AdmissionResult admit_large_opt(const AffectanceContext& ctx,
                                       RoundingPolicy policy,
                                       double log_base = std::numbers::e) {
  policy.validate();
  detail::require_nearly_uniform(ctx);
  policy.mode = RoundingMode::kAdmissionLarge;
  LargeAdmissionFormulation f = build_admission_large_lp(ctx, policy.C, log_base);
  AdmissionResult result;
  result.lp = solve_lp(f.lp);
  result.candidates = f.links;
  PipelineResult p = round_and_select(ctx, f, result.lp, policy);
  result.best_trial = p.best_trial;
  result.groups = {p.schedule.members};
  return detail::finish_admission(ctx, p.schedule.members, std::move(result));
}

struct PowerClassContext {
  // Indices into the parent context.
  std::vector<std::size_t> links;
  AffectanceContext context;
};

// Groups links by power into classes anchored at their smallest power, each
// holding powers within a factor c1 of the anchor.
inline std::vector<PowerClassContext> nearly_uniform_classes(
    const AffectanceContext& ctx, double c1 = 2.0) {
  if (!(c1 >= 1.0)) throw std::invalid_argument("c1 must be at least 1");
  std::vector<std::size_t> order(ctx.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ctx.power(a) != ctx.power(b)) return ctx.power(a) < ctx.power(b);
    return ctx.id(a) < ctx.id(b);
  });
  std::vector<PowerClassContext> out;
  std::size_t i = 0;
  while (i < order.size()) {
    const double anchor = ctx.power(order[i]);
    std::vector<std::size_t> members;
    while (i < order.size() && ctx.power(order[i]) <= c1 * anchor)
      members.push_back(order[i++]);
    std::sort(members.begin(), members.end());
    out.push_back({members,
                   AffectanceContext(ctx.instance().restricted(members),
                                     ctx.assignment(), ctx.has_primaries())});
  }
  return out;
}

// admit_general per nearly-uniform power class; the largest admitted set is
// re-certified against the full context.
inline AdmissionResult admit_by_power_classes(const AffectanceContext& ctx,
                                              const RoundingPolicy& policy,
                                              double c1 = 2.0) {
  AdmissionResult best;
  bool have = false;
  for (const PowerClassContext& cls : nearly_uniform_classes(ctx, c1)) {
    AdmissionResult r = admit_general(cls.context, policy);
    std::vector<std::size_t> mapped;
    for (std::size_t m : r.admitted.members) mapped.push_back(cls.links[m]);
    std::vector<std::size_t> mapped_candidates;
    for (std::size_t m : r.candidates)
      mapped_candidates.push_back(cls.links[m]);
    r.candidates = std::move(mapped_candidates);
    for (auto& g : r.groups)
      for (auto& m : g) m = cls.links[m];
    r = detail::finish_admission(ctx, std::move(mapped), std::move(r));
    if (!have || preferred(r.admitted, best.admitted)) {
      best = std::move(r);
      have = true;
    }
  }
  if (!have) best = detail::finish_admission(ctx, {}, AdmissionResult{});
  return best;
}

}  // namespace sinrcap
