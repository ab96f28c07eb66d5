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

#include <cstddef>
#include <string>
#include <vector>

#include "sinrcap/affectance.hpp"
#include "sinrcap/errors.hpp"

namespace sinrcap {

// Exhaustive optima for small instances. Every notion of feasibility used
// here is closed under taking subsets, so the enumeration prunes a branch as
// soon as the partial set becomes infeasible.

inline constexpr std::size_t kOracleMaxLinks = 20;

enum class OracleMode {
  kExactSinr,
  // a_S(v) <= gamma for every member (gamma = 1 for the capacity oracle).
  kAffectance,
  // Both in- and out-affectance within gamma.
  kBiAffectance,
};

namespace detail {

class SubsetSearch {
 public:
  SubsetSearch(const AffectanceContext& ctx, Objective objective,
               OracleMode mode, double gamma, bool include_primaries)
      : ctx_(ctx),
        objective_(objective),
        mode_(mode),
        gamma_(gamma),
        primaries_(include_primaries ? ctx.primary_count() : 0) {
    if (ctx.size() > kOracleMaxLinks)
      throw TooLarge("oracle supports at most " +
                     std::to_string(kOracleMaxLinks) + " links");
  }

  std::vector<std::size_t> run() {
    const std::size_t n = ctx_.size();
    suffix_.assign(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;)
      suffix_[i] = suffix_[i + 1] + gain(i);
    State root;
    root.primary_in.assign(primaries_, AffectanceSum{});
    root.primary_power.assign(primaries_, 0.0);
    best_value_ = 0.0;
    best_ids_.clear();
    best_.clear();
    search(0, root);
    return best_;
  }

 private:
  struct State {
    std::vector<std::size_t> members;
    std::vector<AffectanceSum> in;
    std::vector<AffectanceSum> out;
    std::vector<double> power_in;
    std::vector<AffectanceSum> primary_in;
    std::vector<double> primary_power;
    double value = 0.0;
  };

  double gain(std::size_t i) const {
    return objective_ == Objective::kCardinality ? 1.0 : ctx_.weight(i);
  }

  bool sinr_ok(std::size_t v, double interference) const {
    return ctx_.signal(v) >= ctx_.beta(v) * (ctx_.noise(v) + interference);
  }

  // Extends the state with link u; false when the result is infeasible.
  bool extend(const State& s, std::size_t u, State& next) const {
    next = s;
    AffectanceSum own_in;
    AffectanceSum own_out;
    double own_power = 0.0;
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      const std::size_t x = s.members[i];
      own_in.add(ctx_.affectance(x, u), ctx_.saturated(x, u));
      own_out.add(ctx_.affectance(u, x), ctx_.saturated(u, x));
      own_power += ctx_.received(x, u);
      next.in[i].add(ctx_.affectance(u, x), ctx_.saturated(u, x));
      next.out[i].add(ctx_.affectance(x, u), ctx_.saturated(x, u));
      next.power_in[i] += ctx_.received(u, x);
    }
    next.members.push_back(u);
    next.in.push_back(own_in);
    next.out.push_back(own_out);
    next.power_in.push_back(own_power);
    for (std::size_t j = 0; j < primaries_; ++j) {
      const std::size_t w = ctx_.primary_node(j);
      next.primary_in[j].add(ctx_.affectance(u, w), ctx_.saturated(u, w));
      next.primary_power[j] += ctx_.received(u, w);
    }
    next.value = s.value + gain(u);

    for (std::size_t i = 0; i < next.members.size(); ++i) {
      const std::size_t x = next.members[i];
      switch (mode_) {
        case OracleMode::kExactSinr:
          if (!sinr_ok(x, next.power_in[i])) return false;
          break;
        case OracleMode::kAffectance:
          if (!next.in[i].within(gamma_)) return false;
          break;
        case OracleMode::kBiAffectance:
          if (!next.in[i].within(gamma_) || !next.out[i].within(gamma_))
            return false;
          break;
      }
    }
    for (std::size_t j = 0; j < primaries_; ++j) {
      const std::size_t w = ctx_.primary_node(j);
      if (mode_ == OracleMode::kExactSinr) {
        if (!sinr_ok(w, next.primary_power[j])) return false;
      } else if (!next.primary_in[j].within(1.0)) {
        return false;
      }
    }
    return true;
  }

  void consider(const State& s) {
    if (s.value < best_value_) return;
    auto ids = sorted_ids(ctx_, s.members);
    if (preferred(s.value, ids, best_value_, best_ids_)) {
      best_ = s.members;
      best_value_ = s.value;
      best_ids_ = std::move(ids);
    }
  }

  void search(std::size_t i, const State& s) {
    consider(s);
    if (i == ctx_.size()) return;
    if (s.value + suffix_[i] < best_value_) return;
    State next;
    if (extend(s, i, next)) search(i + 1, next);
    search(i + 1, s);
  }

  const AffectanceContext& ctx_;
  Objective objective_;
  OracleMode mode_;
  double gamma_;
  std::size_t primaries_;
  std::vector<double> suffix_;
  std::vector<std::size_t> best_;
  std::vector<LinkId> best_ids_;
  double best_value_ = 0.0;
};

}  // namespace detail

// Maximum-objective feasible subset (ties: lexicographically smallest id
// set). With primaries attached, their interference is treated as noise.
inline Schedule exact_capacity(const AffectanceContext& ctx,
                               Objective objective = Objective::kCardinality,
                               OracleMode mode = OracleMode::kExactSinr,
                               double gamma = 1.0) {
  detail::SubsetSearch search(ctx, objective, mode, gamma, false);
  return certify(ctx, search.run(), objective);
}

// Largest Q such that Q together with the primaries is SINR-feasible.
inline Schedule exact_admission(const AffectanceContext& ctx) {
  detail::SubsetSearch search(ctx, Objective::kCardinality,
                              OracleMode::kExactSinr, 1.0, true);
  return certify(ctx, search.run(), Objective::kCardinality);
}

// Largest gamma-bi-feasible subset.
inline Schedule largest_bifeasible(const AffectanceContext& ctx,
                                   double gamma = 2.0) {
  detail::SubsetSearch search(ctx, Objective::kCardinality,
                              OracleMode::kBiAffectance, gamma, false);
  return certify(ctx, search.run(), Objective::kCardinality);
}

}  // namespace sinrcap
