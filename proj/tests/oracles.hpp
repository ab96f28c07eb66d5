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

// Reference computations used only by the tests. They work from raw
// coordinates and dense linear algebra and share no code paths with the
// library beyond the data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "sinrcap/lp.hpp"
#include "sinrcap/model.hpp"

namespace sinrcap::testing {

// Power of a link under the named rule, computed from the coordinates.
inline double ref_power(const PowerAssignment& a, const Link& l, double alpha) {
  const double len = std::hypot(l.sender.x - l.receiver.x,
                                l.sender.y - l.receiver.y);
  switch (a.kind()) {
    case PowerAssignment::Kind::kUniform:
      return a.parameter();
    case PowerAssignment::Kind::kLinear:
      return std::pow(len, alpha);
    case PowerAssignment::Kind::kMean:
      return std::pow(len, alpha / 2.0);
    case PowerAssignment::Kind::kExponent:
      return std::pow(len, a.parameter() * alpha);
  }
  return 1.0;
}

struct Transmitter {
  Link link;
  double power;
  double beta;
  double noise;
};

// Every member of `set` meets P/l^a >= beta (N + sum P'/d^a). Euclidean only.
inline bool ref_sinr(const std::vector<Transmitter>& set, double alpha) {
  for (std::size_t v = 0; v < set.size(); ++v) {
    const Link& lv = set[v].link;
    double interference = 0.0;
    for (std::size_t w = 0; w < set.size(); ++w) {
      if (w == v) continue;
      const double d = std::hypot(set[w].link.sender.x - lv.receiver.x,
                                  set[w].link.sender.y - lv.receiver.y);
      interference += set[w].power / std::pow(d, alpha);
    }
    const double len = std::hypot(lv.sender.x - lv.receiver.x,
                                  lv.sender.y - lv.receiver.y);
    if (!(set[v].power / std::pow(len, alpha) >=
          set[v].beta * (set[v].noise + interference)))
      return false;
  }
  return true;
}

// Transmitters for the chosen link indices plus (optionally) all primaries.
inline std::vector<Transmitter> ref_transmitters(
    const Instance& inst, const PowerAssignment& a,
    const std::vector<std::size_t>& links, bool with_primaries) {
  std::vector<Transmitter> out;
  for (std::size_t i : links) {
    const Link& l = inst.link(i);
    out.push_back({l, ref_power(a, l, inst.alpha()),
                   l.beta_override.value_or(inst.beta()),
                   l.noise_override.value_or(inst.noise())});
  }
  if (with_primaries)
    for (std::size_t j = 0; j < inst.primaries().size(); ++j) {
      const Link& l = inst.primaries().links[j];
      out.push_back({l, inst.primaries().powers[j],
                     l.beta_override.value_or(inst.beta()),
                     l.noise_override.value_or(inst.noise())});
    }
  return out;
}

inline std::vector<std::size_t> mask_members(std::uint64_t mask,
                                             std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1U) out.push_back(i);
  return out;
}

// Largest objective over all SINR-feasible subsets by plain enumeration.
inline double ref_optimum(const Instance& inst, const PowerAssignment& a,
                          bool weighted, bool with_primaries = false) {
  const std::size_t n = inst.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto members = mask_members(mask, n);
    if (!ref_sinr(ref_transmitters(inst, a, members, with_primaries),
                  inst.alpha()))
      continue;
    double value = 0.0;
    for (std::size_t i : members) value += weighted ? inst.link(i).weight : 1.0;
    best = std::max(best, value);
  }
  return best;
}

// Solves a square system by Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> solve_square(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Optimum of max c.x, Ax <= b, 0 <= x <= 1 by enumerating every basis of
// active constraints. Only for a handful of variables.
inline double vertex_enumeration_optimum(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& row : lp.rows) {
    std::vector<double> dense(n, 0.0);
    for (const auto& t : row.terms) dense[t.var] += t.coef;
    rows.push_back(dense);
    rhs.push_back(row.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    rows.push_back(e);
    rhs.push_back(1.0);
    e[j] = -1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  const std::size_t m = rows.size();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> choose =
      [&](std::size_t depth, std::size_t start) {
        if (depth == n) {
          std::vector<std::vector<double>> a;
          std::vector<double> b;
          for (std::size_t r : pick) {
            a.push_back(rows[r]);
            b.push_back(rhs[r]);
          }
          const auto x = solve_square(a, b);
          if (!x) return;
          for (std::size_t r = 0; r < m; ++r) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += rows[r][j] * (*x)[j];
            if (lhs > rhs[r] + 1e-9) return;
          }
          double value = 0.0;
          for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * (*x)[j];
          best = std::max(best, value);
          return;
        }
        for (std::size_t r = start; r < m; ++r) {
          pick[depth] = r;
          choose(depth + 1, r + 1);
        }
      };
  if (n == 0) return 0.0;
  choose(0, 0);
  return best;
}

}  // namespace sinrcap::testing

namespace sinrcap::testing {

inline Link make_link(LinkId id, double sx, double sy, double rx, double ry,
                      double weight = 1.0) {
  Link l;
  l.id = id;
  l.sender = {sx, sy};
  l.receiver = {rx, ry};
  l.weight = weight;
  return l;
}

inline Instance make_instance(std::vector<Link> links, double alpha = 2.5,
                              double beta = 1.0, double noise = 0.0,
                              PrimarySet primaries = {}) {
  return Instance(std::move(links), alpha, beta, noise, EuclideanPlane{},
                  std::move(primaries));
}

}  // namespace sinrcap::testing
