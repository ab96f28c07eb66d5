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
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "sinrcap/errors.hpp"

namespace sinrcap {

using LinkId = std::int64_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double euclidean_distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Link {
  LinkId id = 0;
  Point sender;
  Point receiver;
  double weight = 1.0;
  std::optional<double> beta_override;
  std::optional<double> noise_override;

  friend bool operator==(const Link&, const Link&) = default;
};

// Links that already transmit at fixed, explicitly given powers.
struct PrimarySet {
  std::vector<Link> links;
  std::vector<double> powers;

  std::size_t size() const { return links.size(); }
  bool empty() const { return links.empty(); }

  friend bool operator==(const PrimarySet&, const PrimarySet&) = default;
};

struct EuclideanPlane {
  friend bool operator==(const EuclideanPlane&, const EuclideanPlane&) =
      default;
};

// Symmetric distances over every endpoint of an instance. Points are
// ordered sender/receiver pairs: link i owns points 2i and 2i+1, primary j
// owns points 2(n+j) and 2(n+j)+1.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::vector<double>> rows)
      : rows_(std::move(rows)) {}

  std::size_t points() const { return rows_.size(); }
  double at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  DistanceMatrix restricted(std::span<const std::size_t> point_ids) const {
    std::vector<std::vector<double>> out(point_ids.size(),
                                         std::vector<double>(point_ids.size()));
    for (std::size_t a = 0; a < point_ids.size(); ++a)
      for (std::size_t b = 0; b < point_ids.size(); ++b)
        out[a][b] = rows_[point_ids[a]][point_ids[b]];
    return DistanceMatrix(std::move(out));
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) =
      default;

 private:
  std::vector<std::vector<double>> rows_;
};

using Metric = std::variant<EuclideanPlane, DistanceMatrix>;

inline constexpr double kTriangleTolerance = 1e-9;

// An immutable set of candidate links plus the physical parameters of the
// channel. Primaries, when present, share the metric with the links.
class Instance {
 public:
  Instance() = default;

  Instance(std::vector<Link> links, double alpha, double beta, double noise,
           Metric metric = EuclideanPlane{}, PrimarySet primaries = {})
      : links_(std::move(links)),
        primaries_(std::move(primaries)),
        alpha_(alpha),
        beta_(beta),
        noise_(noise),
        metric_(std::move(metric)) {
    validate();
  }

  const std::vector<Link>& links() const { return links_; }
  const Link& link(std::size_t index) const { return links_[index]; }
  const PrimarySet& primaries() const { return primaries_; }
  std::size_t size() const { return links_.size(); }
  bool empty() const { return links_.empty(); }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double noise() const { return noise_; }
  const Metric& metric() const { return metric_; }
  bool is_euclidean() const {
    return std::holds_alternative<EuclideanPlane>(metric_);
  }

  // Nodes are links 0..n-1 followed by primaries n..n+k-1.
  std::size_t node_count() const { return links_.size() + primaries_.size(); }

  const Link& node_link(std::size_t node) const {
    return node < links_.size() ? links_[node]
                                : primaries_.links[node - links_.size()];
  }

  std::size_t index_of(LinkId id) const {
    auto it = index_.find(id);
    if (it == index_.end() || it->second >= links_.size())
      throw UnknownLink("unknown link id " + std::to_string(id));
    return it->second;
  }

  bool contains(LinkId id) const {
    auto it = index_.find(id);
    return it != index_.end() && it->second < links_.size();
  }

  // d(s_w, r_v) for nodes w and v.
  double sender_to_receiver(std::size_t w, std::size_t v) const {
    if (const auto* m = std::get_if<DistanceMatrix>(&metric_))
      return m->at(2 * w, 2 * v + 1);
    return euclidean_distance(node_link(w).sender, node_link(v).receiver);
  }

  double length(std::size_t node) const {
    return sender_to_receiver(node, node);
  }

  double beta_of(std::size_t node) const {
    const auto& l = node_link(node);
    return l.beta_override.value_or(beta_);
  }

  double noise_of(std::size_t node) const {
    const auto& l = node_link(node);
    return l.noise_override.value_or(noise_);
  }

  // Sub-instance over the given link indices (in the given order). Primaries
  // are kept unless `keep_primaries` is false.
  Instance restricted(std::span<const std::size_t> link_indices,
                      bool keep_primaries = true) const {
    std::vector<Link> links;
    links.reserve(link_indices.size());
    for (std::size_t i : link_indices) links.push_back(links_.at(i));
    PrimarySet primaries = keep_primaries ? primaries_ : PrimarySet{};
    Metric metric = EuclideanPlane{};
    if (const auto* m = std::get_if<DistanceMatrix>(&metric_)) {
      std::vector<std::size_t> points;
      for (std::size_t i : link_indices) {
        points.push_back(2 * i);
        points.push_back(2 * i + 1);
      }
      if (keep_primaries) {
        for (std::size_t j = 0; j < primaries_.size(); ++j) {
          points.push_back(2 * (links_.size() + j));
          points.push_back(2 * (links_.size() + j) + 1);
        }
      }
      metric = m->restricted(points);
    }
    return Instance(std::move(links), alpha_, beta_, noise_, std::move(metric),
                    std::move(primaries));
  }

  Instance without_primaries() const {
    std::vector<std::size_t> all(links_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return restricted(all, false);
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.links_ == b.links_ && a.primaries_ == b.primaries_ &&
           a.alpha_ == b.alpha_ && a.beta_ == b.beta_ &&
           a.noise_ == b.noise_ && a.metric_ == b.metric_;
  }

 private:
  static bool finite(double x) { return std::isfinite(x); }

  void validate() {
    if (!finite(alpha_) || alpha_ <= 0.0)
      throw InvalidInstance("alpha must be positive");
    if (!finite(beta_) || beta_ <= 0.0)
      throw InvalidInstance("beta must be positive");
    if (!finite(noise_) || noise_ < 0.0)
      throw InvalidInstance("noise must be nonnegative");
    if (primaries_.powers.size() != primaries_.links.size())
      throw InvalidInstance("every primary needs exactly one power");

    index_.clear();
    for (std::size_t node = 0; node < node_count(); ++node) {
      const Link& l = node_link(node);
      if (!index_.emplace(l.id, node).second)
        throw InvalidInstance("duplicate link id " + std::to_string(l.id));
      for (double c : {l.sender.x, l.sender.y, l.receiver.x, l.receiver.y})
        if (!finite(c))
          throw InvalidInstance("non-finite coordinate on link " +
                                std::to_string(l.id));
      if (!finite(l.weight) || l.weight < 0.0)
        throw InvalidInstance("weight must be nonnegative on link " +
                              std::to_string(l.id));
      if (l.beta_override && (!finite(*l.beta_override) || *l.beta_override <= 0.0))
        throw InvalidInstance("beta override must be positive on link " +
                              std::to_string(l.id));
      if (l.noise_override &&
          (!finite(*l.noise_override) || *l.noise_override < 0.0))
        throw InvalidInstance("noise override must be nonnegative on link " +
                              std::to_string(l.id));
    }
    for (double p : primaries_.powers)
      if (!finite(p) || p <= 0.0)
        throw InvalidInstance("primary powers must be positive");

    if (const auto* m = std::get_if<DistanceMatrix>(&metric_))
      validate_matrix(*m);

    for (std::size_t node = 0; node < node_count(); ++node)
      if (!(length(node) > 0.0))
        throw InvalidInstance("link " + std::to_string(node_link(node).id) +
                              " has non-positive length");
  }

  void validate_matrix(const DistanceMatrix& m) const {
    const std::size_t p = m.points();
    if (p != 2 * node_count())
      throw InvalidInstance("distance matrix must cover " +
                            std::to_string(2 * node_count()) + " points");
    for (const auto& row : m.rows())
      if (row.size() != p)
        throw InvalidInstance("distance matrix must be square");
    for (std::size_t i = 0; i < p; ++i) {
      if (m.at(i, i) != 0.0)
        throw InvalidInstance("distance matrix diagonal must be zero");
      for (std::size_t j = 0; j < p; ++j) {
        const double d = m.at(i, j);
        if (!finite(d) || d < 0.0)
          throw InvalidInstance("distances must be finite and nonnegative");
        if (std::abs(d - m.at(j, i)) > kTriangleTolerance * std::max(1.0, d))
          throw InvalidInstance("distance matrix must be symmetric");
      }
    }
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
          const double d = m.at(i, j);
          if (d > m.at(i, k) + m.at(k, j) +
                      kTriangleTolerance * std::max(1.0, d))
            throw InvalidInstance("distance matrix violates the triangle "
                                  "inequality at points " +
                                  std::to_string(i) + ", " +
                                  std::to_string(k) + ", " +
                                  std::to_string(j));
        }
  }

  std::vector<Link> links_;
  PrimarySet primaries_;
  double alpha_ = 2.5;
  double beta_ = 1.0;
  double noise_ = 0.0;
  Metric metric_ = EuclideanPlane{};
  std::unordered_map<LinkId, std::size_t> index_;
};

// d(s_w, r_v) by link id; equals the link length when w == v.
inline double cross_distance(const Instance& instance, LinkId w, LinkId v) {
  return instance.sender_to_receiver(instance.index_of(w),
                                     instance.index_of(v));
}

// Ratio of the longest to the shortest link length.
inline double length_ratio(const Instance& instance) {
  if (instance.empty()) throw EmptyInstance("length ratio of empty instance");
  double lo = instance.length(0);
  double hi = lo;
  for (std::size_t i = 1; i < instance.size(); ++i) {
    const double l = instance.length(i);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return hi / lo;
}

// Length-based transmit power rule.
class PowerAssignment {
 public:
  enum class Kind { kUniform, kLinear, kMean, kExponent };

  static PowerAssignment uniform(double p0 = 1.0) {
    if (!(p0 > 0.0) || !std::isfinite(p0))
      throw std::invalid_argument("uniform power must be positive");
    return PowerAssignment(Kind::kUniform, p0);
  }
  static PowerAssignment linear() { return PowerAssignment(Kind::kLinear, 1.0); }
  static PowerAssignment mean() { return PowerAssignment(Kind::kMean, 0.5); }
  static PowerAssignment exponent(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0))
      throw std::invalid_argument("power exponent must lie in [0, 1]");
    return PowerAssignment(Kind::kExponent, tau);
  }

  // Accepts "uniform", "uniform:P0", "linear", "mean" and "exp:TAU".
  static PowerAssignment parse(std::string_view text) {
    auto number = [](std::string_view s) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad number in power assignment: " +
                                    std::string(s));
      return v;
    };
    if (text == "uniform") return uniform();
    if (text == "linear") return linear();
    if (text == "mean") return mean();
    if (text.starts_with("uniform:")) return uniform(number(text.substr(8)));
    if (text.starts_with("exp:")) return exponent(number(text.substr(4)));
    throw std::invalid_argument("unknown power assignment: " +
                                std::string(text));
  }

  Kind kind() const { return kind_; }
  double parameter() const { return parameter_; }

  double power(double length, double alpha) const {
    switch (kind_) {
      case Kind::kUniform:
        return parameter_;
      case Kind::kLinear:
        return std::pow(length, alpha);
      case Kind::kMean:
        return std::pow(length, alpha / 2.0);
      case Kind::kExponent:
        return std::pow(length, parameter_ * alpha);
    }
    return parameter_;
  }

  std::string to_string() const {
    std::ostringstream os;
    switch (kind_) {
      case Kind::kUniform:
        os << "uniform";
        if (parameter_ != 1.0) os << ':' << parameter_;
        break;
      case Kind::kLinear:
        os << "linear";
        break;
      case Kind::kMean:
        os << "mean";
        break;
      case Kind::kExponent:
        os << "exp:" << parameter_;
        break;
    }
    return os.str();
  }

  friend bool operator==(const PowerAssignment&, const PowerAssignment&) =
      default;

 private:
  PowerAssignment(Kind kind, double parameter)
      : kind_(kind), parameter_(parameter) {}

  Kind kind_;
  double parameter_;
};

inline double power_of(const PowerAssignment& assignment, double length,
                       double alpha) {
  return assignment.power(length, alpha);
}

inline double power_of(const PowerAssignment& assignment,
                       const Instance& instance, std::size_t link_index) {
  return assignment.power(instance.length(link_index), instance.alpha());
}

struct PowerClass {
  bool non_decreasing = true;
  bool sub_linear = true;

  bool ok() const { return non_decreasing && sub_linear; }
};

// Checks both monotonicity properties over all ordered link pairs. Values
// are compared up to a relative 1e-12 so that exactly length-proportional
// rules are not rejected for rounding noise.
inline PowerClass validate_power_class(const Instance& instance,
                                       const PowerAssignment& assignment) {
  constexpr double kRel = 1e-12;
  const std::size_t n = instance.size();
  std::vector<double> power(n);
  std::vector<double> received(n);
  for (std::size_t i = 0; i < n; ++i) {
    power[i] = power_of(assignment, instance, i);
    received[i] = power[i] / std::pow(instance.length(i), instance.alpha());
  }
  PowerClass out;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) {
      if (instance.length(v) < instance.length(w)) continue;
      if (power[v] < power[w] * (1.0 - kRel)) out.non_decreasing = false;
      if (received[v] > received[w] * (1.0 + kRel)) out.sub_linear = false;
    }
  }
  return out;
}

}  // namespace sinrcap
