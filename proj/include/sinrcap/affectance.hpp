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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sinrcap/errors.hpp"
#include "sinrcap/logging.hpp"
#include "sinrcap/model.hpp"

namespace sinrcap {

// beta / (1 - beta * noise * length^alpha / power). Requires the link to
// meet its SINR threshold in isolation.
inline double c_factor(double beta, double noise, double length, double power,
                       double alpha) {
  const double load = beta * noise * std::pow(length, alpha) / power;
  if (!(load < 1.0))
    throw IndividuallyInfeasible("link cannot reach its SINR threshold alone");
  return beta / (1.0 - load);
}

// A sum of clipped affectances. `saturated` marks that at least one term was
// clipped from a raw value strictly above 1; such a term counts as exceeding
// 1 in feasibility comparisons, which keeps `a_S(v) <= 1` equivalent to the
// SINR condition.
struct AffectanceSum {
  double value = 0.0;
  bool saturated = false;

  bool within(double bound) const {
    return saturated ? value < bound : value <= bound;
  }

  AffectanceSum& add(double term, bool term_saturated) {
    value += term;
    saturated = saturated || term_saturated;
    return *this;
  }
};

// Immutable per-instance precomputation of powers, lengths, c-factors and
// the dense pairwise affectance matrix.
//
// Node indices 0..n-1 are the candidate links; when primaries are attached
// they follow as n..n+k-1 and their interference is folded into the noise of
// every receiver (the hat variant of affectance).
class AffectanceContext {
 public:
  AffectanceContext(Instance instance, PowerAssignment assignment,
                    bool attach_primaries = false)
      : instance_(std::move(instance)),
        assignment_(std::move(assignment)),
        n_(instance_.size()),
        k_(attach_primaries ? instance_.primaries().size() : 0) {
    precompute();
  }

  const Instance& instance() const { return instance_; }
  const PowerAssignment& assignment() const { return assignment_; }

  std::size_t size() const { return n_; }
  std::size_t primary_count() const { return k_; }
  bool has_primaries() const { return k_ > 0; }
  std::size_t node_count() const { return n_ + k_; }
  std::size_t primary_node(std::size_t j) const { return n_ + j; }

  LinkId id(std::size_t node) const { return instance_.node_link(node).id; }
  double weight(std::size_t i) const { return instance_.link(i).weight; }
  double power(std::size_t node) const { return power_[node]; }
  double length(std::size_t node) const { return length_[node]; }
  double beta(std::size_t node) const { return instance_.beta_of(node); }
  // Effective noise at the node's receiver (augmented by primaries).
  double noise(std::size_t node) const { return noise_[node]; }
  double c(std::size_t node) const { return c_[node]; }
  // Received signal strength P_v / l_v^alpha.
  double signal(std::size_t node) const { return signal_[node]; }

  // Affectance on v from w, min{1, c_v (P_w/P_v) (l_v/d_wv)^alpha}; zero when
  // w == v.
  double affectance(std::size_t w, std::size_t v) const {
    return affectance_[w * node_count() + v];
  }
  bool saturated(std::size_t w, std::size_t v) const {
    return saturated_[w * node_count() + v] != 0;
  }
  // Interference power P_w / d_wv^alpha (infinite for d_wv == 0).
  double received(std::size_t w, std::size_t v) const {
    return received_[w * node_count() + v];
  }

  std::size_t index_of(LinkId id) const { return instance_.index_of(id); }

  // Largest over smallest power among candidate links.
  double power_spread() const {
    if (n_ == 0) return 1.0;
    const auto [lo, hi] = std::minmax_element(power_.begin(),
                                              power_.begin() + n_);
    return *hi / *lo;
  }

 private:
  void precompute() {
    const std::size_t m = node_count();
    const double alpha = instance_.alpha();
    power_.resize(m);
    length_.resize(m);
    noise_.resize(m);
    c_.resize(m);
    signal_.resize(m);
    for (std::size_t v = 0; v < m; ++v) {
      length_[v] = instance_.length(v);
      power_[v] = v < n_ ? power_of(assignment_, length_[v], alpha)
                         : instance_.primaries().powers[v - n_];
      signal_[v] = power_[v] / std::pow(length_[v], alpha);
    }
    received_.assign(m * m, 0.0);
    for (std::size_t w = 0; w < m; ++w)
      for (std::size_t v = 0; v < m; ++v) {
        if (w == v) continue;
        const double d = instance_.sender_to_receiver(w, v);
        received_[w * m + v] = d > 0.0
                                   ? power_[w] / std::pow(d, alpha)
                                   : std::numeric_limits<double>::infinity();
      }
    for (std::size_t v = 0; v < m; ++v) {
      double noise = instance_.noise_of(v);
      for (std::size_t j = 0; j < k_; ++j)
        if (n_ + j != v) noise += received_[(n_ + j) * m + v];
      noise_[v] = noise;
      const double b = instance_.beta_of(v);
      const double load = b * noise / signal_[v];
      if (!(load < 1.0)) {
        const std::string msg =
            "link " + std::to_string(id(v)) +
            " cannot reach its SINR threshold even when transmitting alone";
        if (v >= n_) throw InfeasiblePrimaries(msg);
        throw IndividuallyInfeasible(msg);
      }
      c_[v] = b / (1.0 - load);
    }
    affectance_.assign(m * m, 0.0);
    saturated_.assign(m * m, 0);
    for (std::size_t w = 0; w < m; ++w)
      for (std::size_t v = 0; v < m; ++v) {
        if (w == v) continue;
        const double raw = c_[v] * received_[w * m + v] / signal_[v];
        affectance_[w * m + v] = std::min(1.0, raw);
        saturated_[w * m + v] = raw > 1.0 ? 1 : 0;
      }
  }

  Instance instance_;
  PowerAssignment assignment_;
  std::size_t n_;
  std::size_t k_;
  std::vector<double> power_;
  std::vector<double> length_;
  std::vector<double> noise_;
  std::vector<double> c_;
  std::vector<double> signal_;
  std::vector<double> received_;
  std::vector<double> affectance_;
  std::vector<unsigned char> saturated_;
};

struct Preprocessed {
  AffectanceContext context;
  std::vector<LinkId> removed;
};

// Builds a context after dropping every candidate link that cannot meet its
// SINR threshold alone (with primary interference as noise when attached).
// Each removal is reported through warn().
inline Preprocessed preprocess(const Instance& instance,
                               const PowerAssignment& assignment,
                               bool attach_primaries = false) {
  const double alpha = instance.alpha();
  const std::size_t n = instance.size();
  std::vector<std::size_t> keep;
  std::vector<LinkId> removed;
  for (std::size_t v = 0; v < n; ++v) {
    double noise = instance.noise_of(v);
    if (attach_primaries) {
      for (std::size_t j = 0; j < instance.primaries().size(); ++j) {
        const double d = instance.sender_to_receiver(n + j, v);
        noise += d > 0.0 ? instance.primaries().powers[j] / std::pow(d, alpha)
                         : std::numeric_limits<double>::infinity();
      }
    }
    const double signal =
        power_of(assignment, instance.length(v), alpha) /
        std::pow(instance.length(v), alpha);
    if (instance.beta_of(v) * noise / signal < 1.0) {
      keep.push_back(v);
    } else {
      removed.push_back(instance.link(v).id);
      warn("removing individually infeasible link " +
           std::to_string(instance.link(v).id));
    }
  }
  Instance kept = removed.empty() ? instance : instance.restricted(keep);
  AffectanceContext ctx(std::move(kept), assignment, attach_primaries);
  if (!attach_primaries) return {std::move(ctx), std::move(removed)};

  // A link whose affectance alone exceeds a primary's budget can never be
  // admitted. Affectance on a primary does not depend on other candidates,
  // so one pass over the built context finds them all.
  std::vector<std::size_t> admissible;
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    bool ok = true;
    for (std::size_t j = 0; j < ctx.primary_count() && ok; ++j) {
      AffectanceSum sum;
      const std::size_t w = ctx.primary_node(j);
      sum.add(ctx.affectance(v, w), ctx.saturated(v, w));
      ok = sum.within(1.0);
    }
    if (ok) {
      admissible.push_back(v);
    } else {
      removed.push_back(ctx.id(v));
      warn("removing link " + std::to_string(ctx.id(v)) +
           " that alone violates a primary");
    }
  }
  if (admissible.size() == ctx.size()) return {std::move(ctx), std::move(removed)};
  std::sort(removed.begin(), removed.end());
  return {AffectanceContext(ctx.instance().restricted(admissible), assignment, true),
          std::move(removed)};
}

inline double c_factor(const AffectanceContext& ctx, std::size_t v) {
  return ctx.c(v);
}

inline double affectance(const AffectanceContext& ctx, std::size_t w,
                         std::size_t v) {
  return ctx.affectance(w, v);
}

// Noise at u's receiver including every primary other than u.
inline double hat_noise(const AffectanceContext& ctx, std::size_t u) {
  return ctx.noise(u);
}

enum class Direction { kIn, kOut };

// kIn: a_S(v) = sum_{w in S} a_w(v); kOut: a_v(S) = sum_{w in S} a_v(w).
inline AffectanceSum aggregate(const AffectanceContext& ctx,
                               std::span<const std::size_t> set, std::size_t v,
                               Direction direction) {
  AffectanceSum sum;
  for (std::size_t w : set) {
    if (direction == Direction::kIn)
      sum.add(ctx.affectance(w, v), ctx.saturated(w, v));
    else
      sum.add(ctx.affectance(v, w), ctx.saturated(v, w));
  }
  return sum;
}

inline double aggregate_affectance(const AffectanceContext& ctx,
                                   std::span<const std::size_t> set,
                                   std::size_t v, Direction direction) {
  return aggregate(ctx, set, v, direction).value;
}

enum class FeasibilityMode { kFeasible, kAntiFeasible, kBiFeasible, kExactSinr };

// SINR condition at every member, with primaries (if attached) as noise.
inline bool exact_sinr_feasible(const AffectanceContext& ctx,
                                std::span<const std::size_t> set) {
  for (std::size_t v : set) {
    double interference = 0.0;
    for (std::size_t w : set)
      if (w != v) interference += ctx.received(w, v);
    if (!(ctx.signal(v) >= ctx.beta(v) * (ctx.noise(v) + interference)))
      return false;
  }
  return true;
}

inline bool check_feasibility(const AffectanceContext& ctx,
                              std::span<const std::size_t> set, double gamma,
                              FeasibilityMode mode) {
  if (mode == FeasibilityMode::kExactSinr) return exact_sinr_feasible(ctx, set);
  const bool in = mode == FeasibilityMode::kFeasible ||
                  mode == FeasibilityMode::kBiFeasible;
  const bool out = mode == FeasibilityMode::kAntiFeasible ||
                   mode == FeasibilityMode::kBiFeasible;
  for (std::size_t v : set) {
    if (in && !aggregate(ctx, set, v, Direction::kIn).within(gamma))
      return false;
    if (out && !aggregate(ctx, set, v, Direction::kOut).within(gamma))
      return false;
  }
  return true;
}

// d_uv * d_vu >= q^2 l_u l_v for every pair in the set.
inline bool separation_check(const AffectanceContext& ctx,
                             std::span<const std::size_t> set, double q) {
  const Instance& inst = ctx.instance();
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      const std::size_t u = set[a];
      const std::size_t v = set[b];
      const double lhs =
          inst.sender_to_receiver(u, v) * inst.sender_to_receiver(v, u);
      if (lhs < q * q * ctx.length(u) * ctx.length(v)) return false;
    }
  return true;
}

// Power ratio bound among candidate links ("nearly uniform" with c1).
inline bool is_nearly_uniform(const AffectanceContext& ctx, double c1 = 2.0) {
  return ctx.power_spread() <= c1;
}

enum class Objective { kCardinality, kWeight };

struct Certificate {
  std::vector<double> in_affectance;
  std::vector<double> out_affectance;
  bool one_feasible = true;
  bool exact_sinr = true;
};

struct Schedule {
  // Context indices, ascending.
  std::vector<std::size_t> members;
  std::vector<LinkId> ids;
  double value = 0.0;
  Certificate certificate;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

inline double objective_value(const AffectanceContext& ctx,
                              std::span<const std::size_t> members,
                              Objective objective) {
  if (objective == Objective::kCardinality)
    return static_cast<double>(members.size());
  double total = 0.0;
  for (std::size_t i : members) total += ctx.weight(i);
  return total;
}

inline std::vector<LinkId> sorted_ids(const AffectanceContext& ctx,
                                      std::span<const std::size_t> members) {
  std::vector<LinkId> ids;
  ids.reserve(members.size());
  for (std::size_t i : members) ids.push_back(ctx.id(i));
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Recomputes affectance sums and the exact SINR verdict for a member set.
inline Schedule certify(const AffectanceContext& ctx,
                        std::vector<std::size_t> members, Objective objective) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Schedule s;
  s.members = std::move(members);
  s.value = objective_value(ctx, s.members, objective);
  s.ids = sorted_ids(ctx, s.members);
  auto& cert = s.certificate;
  for (std::size_t v : s.members) {
    const AffectanceSum in = aggregate(ctx, s.members, v, Direction::kIn);
    cert.in_affectance.push_back(in.value);
    cert.out_affectance.push_back(
        aggregate(ctx, s.members, v, Direction::kOut).value);
    cert.one_feasible = cert.one_feasible && in.within(1.0);
  }
  cert.exact_sinr = exact_sinr_feasible(ctx, s.members);
  return s;
}

// Strict preference: larger value, then the lexicographically smaller id set.
inline bool preferred(double value_a, const std::vector<LinkId>& ids_a,
                      double value_b, const std::vector<LinkId>& ids_b) {
  if (value_a != value_b) return value_a > value_b;
  return ids_a < ids_b;
}

inline bool preferred(const Schedule& a, const Schedule& b) {
  return preferred(a.value, a.ids, b.value, b.ids);
}

}  // namespace sinrcap
