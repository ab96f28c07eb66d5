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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sinrcap/affectance.hpp"
#include "sinrcap/logging.hpp"
#include "sinrcap/lp.hpp"

namespace sinrcap {

// A relaxation plus the context index behind each LP variable.
struct Formulation {
  LinearProgram lp;
  std::vector<std::size_t> links;
};

namespace detail {

inline void require_positive_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("LP constant C must be positive");
}

inline std::vector<std::size_t> all_links(const AffectanceContext& ctx) {
  std::vector<std::size_t> v(ctx.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace detail

// Rows per link u, restricted to links v at least as long as u:
//   sum a_v(u) delta_v <= C   and   sum a_u(v) delta_v <= C.
inline Formulation build_capacity_lp(const AffectanceContext& ctx, double C) {
  detail::require_positive_c(C);
  if (!validate_power_class(ctx.instance(), ctx.assignment()).ok())
    warn("capacity LP built for a power assignment that is not "
         "non-decreasing and sub-linear");
  const std::size_t n = ctx.size();
  Formulation f{LinearProgram(n), detail::all_links(ctx)};
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<LinearProgram::Term> in;
    std::vector<LinearProgram::Term> out;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || ctx.length(v) < ctx.length(u)) continue;
      in.push_back({v, ctx.affectance(v, u)});
      out.push_back({v, ctx.affectance(u, v)});
    }
    f.lp.add_row(std::move(in), C, "in" + std::to_string(u));
    f.lp.add_row(std::move(out), C, "out" + std::to_string(u));
  }
  return f;
}

// One out-affectance row per link: sum_{v != u} a_u(v) delta_v <= C.
inline Formulation build_qos_lp(const AffectanceContext& ctx, double C) {
  detail::require_positive_c(C);
  if (!is_nearly_uniform(ctx))
    warn("QoS LP built for a power assignment that is not nearly uniform");
  const std::size_t n = ctx.size();
  Formulation f{LinearProgram(n), detail::all_links(ctx)};
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<LinearProgram::Term> out;
    for (std::size_t v = 0; v < n; ++v)
      if (v != u) out.push_back({v, ctx.affectance(u, v)});
    f.lp.add_row(std::move(out), C, "out" + std::to_string(u));
  }
  return f;
}

// Total affectance of link v on all primaries, sum_w a^_v(w).
inline double primary_load(const AffectanceContext& ctx, std::size_t v) {
  double total = 0.0;
  for (std::size_t j = 0; j < ctx.primary_count(); ++j)
    total += ctx.affectance(v, ctx.primary_node(j));
  return total;
}

// The QoS rows under hat-affectance plus one aggregate row bounding the
// total affectance on the primaries by |P|.
inline Formulation build_admission_lp(const AffectanceContext& ctx, double C) {
  Formulation f = build_qos_lp(ctx, C);
  const std::size_t k = ctx.primary_count();
  if (k == 0) return f;
  std::vector<LinearProgram::Term> aggregate_row;
  for (std::size_t v = 0; v < ctx.size(); ++v)
    aggregate_row.push_back({v, primary_load(ctx, v)});
  LinearProgram lp(ctx.size());
  lp.add_row(std::move(aggregate_row), static_cast<double>(k), "primaries");
  for (auto& row : f.lp.rows) lp.rows.push_back(std::move(row));
  f.lp = std::move(lp);
  return f;
}

struct LargeAdmissionFormulation : Formulation {
  double threshold = 0.0;
  // Set when k = 1 and the threshold falls back to 1/10.
  bool single_primary_fallback = false;
};

// 1 / (10 sqrt(log k)), with 1/10 for k < 2.
inline double large_admission_threshold(std::size_t k,
                                        double log_base = std::numbers::e) {
  if (k < 2) return 0.1;
  return 1.0 / (10.0 * std::sqrt(std::log(static_cast<double>(k)) /
                                 std::log(log_base)));
}

// Keeps links whose affectance on every primary is at most the threshold,
// then bounds each primary's incoming affectance by 1/3 and every link's
// outgoing affectance by C.
inline LargeAdmissionFormulation build_admission_large_lp(
    const AffectanceContext& ctx, double C,
    double log_base = std::numbers::e) {
  detail::require_positive_c(C);
  const std::size_t k = ctx.primary_count();
  LargeAdmissionFormulation f;
  f.threshold = large_admission_threshold(k, log_base);
  f.single_primary_fallback = k < 2;
  if (k == 1)
    warn("large-OPT admission with a single primary uses threshold 1/10");
  for (std::size_t u = 0; u < ctx.size(); ++u) {
    bool keep = true;
    for (std::size_t j = 0; j < k && keep; ++j)
      keep = ctx.affectance(u, ctx.primary_node(j)) <= f.threshold;
    if (keep) f.links.push_back(u);
  }
  const std::size_t m = f.links.size();
  f.lp = LinearProgram(m);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<LinearProgram::Term> row;
    for (std::size_t a = 0; a < m; ++a)
      row.push_back({a, ctx.affectance(f.links[a], ctx.primary_node(j))});
    f.lp.add_row(std::move(row), 1.0 / 3.0, "primary" + std::to_string(j));
  }
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<LinearProgram::Term> row;
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) row.push_back({b, ctx.affectance(f.links[a], f.links[b])});
    f.lp.add_row(std::move(row), C, "out" + std::to_string(f.links[a]));
  }
  return f;
}

// maximize sum w_u delta_u  s.t.  sum_v a_v(u) delta_v <= C for every u.
inline Formulation build_weighted_lp(const AffectanceContext& ctx, double C) {
  detail::require_positive_c(C);
  if (ctx.assignment().kind() != PowerAssignment::Kind::kLinear)
    warn("weighted LP guarantees hold for linear power only");
  const std::size_t n = ctx.size();
  Formulation f{LinearProgram(n), detail::all_links(ctx)};
  for (std::size_t u = 0; u < n; ++u) f.lp.objective[u] = ctx.weight(u);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<LinearProgram::Term> in;
    for (std::size_t v = 0; v < n; ++v)
      if (v != u) in.push_back({v, ctx.affectance(v, u)});
    f.lp.add_row(std::move(in), C, "in" + std::to_string(u));
  }
  return f;
}

}  // namespace sinrcap
