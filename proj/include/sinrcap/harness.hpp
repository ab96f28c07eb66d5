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
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sinrcap/admission.hpp"
#include "sinrcap/affectance.hpp"
#include "sinrcap/errors.hpp"
#include "sinrcap/formulations.hpp"
#include "sinrcap/greedy.hpp"
#include "sinrcap/logging.hpp"
#include "sinrcap/lp.hpp"
#include "sinrcap/model.hpp"
#include "sinrcap/oracle.hpp"
#include "sinrcap/random.hpp"
#include "sinrcap/rounding.hpp"

namespace sinrcap {

enum class WeightDistribution {
  kOrdinary,
  kReversed,
  kLengthDetermined,
  kWeightClass,
};

inline std::string_view to_string(WeightDistribution d) {
  switch (d) {
    case WeightDistribution::kOrdinary:
      return "ordinary";
    case WeightDistribution::kReversed:
      return "reversed";
    case WeightDistribution::kLengthDetermined:
      return "length_determined";
    case WeightDistribution::kWeightClass:
      return "weight_class";
  }
  return "ordinary";
}

inline WeightDistribution parse_weight_distribution(std::string_view s) {
  if (s == "ordinary") return WeightDistribution::kOrdinary;
  if (s == "reversed") return WeightDistribution::kReversed;
  if (s == "length_determined") return WeightDistribution::kLengthDetermined;
  if (s == "weight_class") return WeightDistribution::kWeightClass;
  throw std::invalid_argument("unknown weight distribution: " +
                              std::string(s));
}

struct GenConfig {
  std::size_t n = 100;
  // Side of the square the senders are drawn from.
  double R = 100.0;
  // Link lengths are uniform in [1, delta].
  double delta = 8.0;
  WeightDistribution weight_dist = WeightDistribution::kOrdinary;
  double alpha = 2.5;
  double beta = 1.0;
  double noise = 0.0;
  std::uint64_t seed = 1;
  // Primary links, placed like ordinary links at a fixed power and redrawn
  // until they are feasible on their own.
  std::size_t primaries = 0;
  double primary_power = 1.0;

  double density() const { return static_cast<double>(n) / (R * R); }

  void validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    if (!(delta >= 1.0)) throw std::invalid_argument("delta must be >= 1");
  }
};

namespace detail {

inline Link random_link(SplitMix64& rng, LinkId id, double R, double delta) {
  Link l;
  l.id = id;
  l.sender = {rng.uniform(0.0, R), rng.uniform(0.0, R)};
  const double length = rng.uniform(1.0, delta);
  const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
  l.receiver = {l.sender.x + length * std::cos(angle),
                l.sender.y + length * std::sin(angle)};
  return l;
}

inline bool primaries_feasible(const PrimarySet& p, double alpha, double beta,
                               double noise) {
  for (std::size_t v = 0; v < p.size(); ++v) {
    double interference = 0.0;
    for (std::size_t w = 0; w < p.size(); ++w) {
      if (w == v) continue;
      const double d =
          euclidean_distance(p.links[w].sender, p.links[v].receiver);
      if (d == 0.0) return false;
      interference += p.powers[w] / std::pow(d, alpha);
    }
    const double signal =
        p.powers[v] /
        std::pow(euclidean_distance(p.links[v].sender, p.links[v].receiver),
                 alpha);
    if (!(signal >= beta * (noise + interference))) return false;
  }
  return true;
}

}  // namespace detail

// Senders uniform in [0,R]^2, lengths uniform in [1, delta], receivers in a
// uniformly random direction. Deterministic in the seed.
inline Instance generate_instance(const GenConfig& cfg) {
  cfg.validate();
  SplitMix64 rng(cfg.seed);
  const double n = static_cast<double>(cfg.n);
  const auto max_class =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::log2(n))));
  std::vector<Link> links;
  links.reserve(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    Link l = detail::random_link(rng, static_cast<LinkId>(i), cfg.R, cfg.delta);
    switch (cfg.weight_dist) {
      case WeightDistribution::kOrdinary:
        l.weight = rng.uniform(1.0, n);
        break;
      case WeightDistribution::kReversed:
        l.weight = 1.0 / rng.uniform(1.0, n);
        break;
      case WeightDistribution::kLengthDetermined:
        l.weight = euclidean_distance(l.sender, l.receiver);
        break;
      case WeightDistribution::kWeightClass:
        l.weight = std::ldexp(1.0, static_cast<int>(rng.uniform_int(1, max_class)));
        break;
    }
    links.push_back(l);
  }
  PrimarySet primaries;
  if (cfg.primaries > 0) {
    constexpr int kMaxAttempts = 10000;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxAttempts)
        throw Error("could not place feasible primaries");
      primaries = {};
      for (std::size_t j = 0; j < cfg.primaries; ++j) {
        primaries.links.push_back(detail::random_link(
            rng, static_cast<LinkId>(cfg.n + j), cfg.R, cfg.delta));
        primaries.powers.push_back(cfg.primary_power);
      }
      if (detail::primaries_feasible(primaries, cfg.alpha, cfg.beta, cfg.noise))
        break;
    }
  }
  return Instance(std::move(links), cfg.alpha, cfg.beta, cfg.noise,
                  EuclideanPlane{}, std::move(primaries));
}

// Shortest decimal form that parses back to the same double.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Default sweep 0.2, 0.4, ..., 3.0.
inline std::vector<double> default_sweep() {
  std::vector<double> s;
  for (int i = 1; i <= 15; ++i) s.push_back(0.2 * i);
  return s;
}

struct ExperimentRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double R = 0.0;
  double delta = 0.0;
  double density = 0.0;
  WeightDistribution weight_dist = WeightDistribution::kOrdinary;
  std::string algo;
  std::optional<double> constant;
  double value = 0.0;
  bool feasible = false;
  std::optional<double> runtime_ms;
  // SLP / SG for the record's instance.
  double ratio = 0.0;
};

inline constexpr std::string_view kCsvHeader =
    "seed,n,R,delta,density,weight_dist,algo,constant,value,feasible,"
    "runtime_ms,ratio";

inline void write_csv(std::ostream& out,
                      const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << format_number(r.R) << ','
        << format_number(r.delta) << ',' << format_number(r.density) << ','
        << to_string(r.weight_dist) << ',' << r.algo << ','
        << (r.constant ? format_number(*r.constant) : "") << ','
        << format_number(r.value) << ',' << (r.feasible ? "true" : "false")
        << ',' << (r.runtime_ms ? format_number(*r.runtime_ms) : "") << ','
        << format_number(r.ratio) << '\n';
  }
}

struct CompareConfig {
  std::vector<GenConfig> instances;
  std::vector<double> sweep = default_sweep();
  std::size_t trials = 100;
  PowerAssignment power = PowerAssignment::linear();
  // Runtime is wall-clock and therefore left blank unless requested.
  bool timing = false;
  // Adds an exact-optimum row for instances small enough to enumerate.
  bool oracle_rows = true;
};

// Both the certificate and an independent exact SINR recomputation.
inline bool verified_feasible(const AffectanceContext& ctx,
                              const Schedule& s) {
  const Schedule again = certify(ctx, s.members, Objective::kCardinality);
  return again.certificate.one_feasible && again.certificate.exact_sinr &&
         exact_sinr_feasible(ctx, s.members);
}

inline double solution_ratio(double lp_value, double greedy_value) {
  if (greedy_value > 0.0) return lp_value / greedy_value;
  return lp_value > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

// Runs the weighted LP pipeline and the greedy baselines over the constant
// sweep on each generated instance and keeps every algorithm's best value.
inline std::vector<ExperimentRecord> run_compare(const CompareConfig& cfg) {
  if (cfg.sweep.empty()) throw std::invalid_argument("empty constant sweep");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  using Clock = std::chrono::steady_clock;
  std::vector<ExperimentRecord> out;
  for (const GenConfig& g : cfg.instances) {
    const Instance instance = generate_instance(g).without_primaries();
    const AffectanceContext ctx = preprocess(instance, cfg.power).context;

    struct Best {
      explicit Best(std::string name) : algo(std::move(name)) {}
      std::string algo;
      double value = -1.0;
      std::optional<double> constant;
      double ms = 0.0;
      bool feasible = true;
    };
    std::vector<Best> best;
    for (const char* name : {"lp", "greedy", "greedy_w", "greedy_l"})
      best.emplace_back(name);
    auto track = [&](Best& b, double constant, auto&& run) {
      const auto t0 = Clock::now();
      Schedule s = run();
      b.ms += std::chrono::duration<double, std::milli>(Clock::now() - t0)
                  .count();
      if (!verified_feasible(ctx, s))
        throw std::logic_error(b.algo + " emitted an infeasible schedule");
      if (s.value > b.value) {
        b.value = s.value;
        b.constant = constant;
      }
    };
    for (double c : cfg.sweep) {
      RoundingPolicy policy;
      policy.C = c;
      policy.trials = cfg.trials;
      policy.seed = hash_key({g.seed, 0x1bULL});
      track(best[0], c, [&] {
        return run_pipeline(ctx, FormulationKind::kWeighted, policy).schedule;
      });
      Schedule by_w;
      Schedule by_l;
      track(best[2], c, [&] { return by_w = greedy_weight_classes(ctx, c); });
      track(best[3], c, [&] { return by_l = greedy_length_classes(ctx, c); });
      track(best[1], c,
            [&] { return preferred(by_l, by_w) ? by_l : by_w; });
    }
    best[1].ms += best[2].ms + best[3].ms;
    if (cfg.oracle_rows && ctx.size() <= 12) {
      Best o("oracle");
      track(o, 0.0, [&] {
        return exact_capacity(ctx, Objective::kWeight, OracleMode::kExactSinr);
      });
      o.constant.reset();
      best.push_back(o);
    }
    const double ratio = solution_ratio(best[0].value, best[1].value);
    for (const Best& b : best) {
      ExperimentRecord r;
      r.seed = g.seed;
      r.n = g.n;
      r.R = g.R;
      r.delta = g.delta;
      r.density = g.density();
      r.weight_dist = g.weight_dist;
      r.algo = b.algo;
      r.constant = b.constant;
      r.value = b.value;
      r.feasible = b.feasible;
      if (cfg.timing) r.runtime_ms = b.ms;
      r.ratio = ratio;
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline void write_csv_file(const std::string& path,
                           const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_csv(out, records);
  if (!out) throw Error("failed writing " + path);
}

// Largest left-hand side of a capacity LP row under the indicator of `set`.
inline double induced_capacity_rowsum(const AffectanceContext& ctx,
                                      std::span<const std::size_t> set) {
  double worst = 0.0;
  for (std::size_t u = 0; u < ctx.size(); ++u) {
    double in = 0.0;
    double out = 0.0;
    for (std::size_t v : set) {
      if (v == u || ctx.length(v) < ctx.length(u)) continue;
      in += ctx.affectance(v, u);
      out += ctx.affectance(u, v);
    }
    worst = std::max({worst, in, out});
  }
  return worst;
}

struct SuiteRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string power;
  double opt = 0.0;
  double opt_weight = 0.0;
  double alg_capacity = 0.0;
  double alg_qos = -1.0;  // negative when QoS is not applicable
  double alg_weighted = 0.0;
  double alg_greedy = 0.0;
  double alg_greedy_combined = 0.0;
  double lp_star = 0.0;
  double calibrated_c = 0.0;
  std::size_t bifeasible = 0;
  bool dominance = true;
  bool lp_relaxation = true;
  bool half_opt = true;
  bool feasible = true;

  bool pass() const { return dominance && lp_relaxation && half_opt && feasible; }
};

struct SuiteReport {
  std::vector<SuiteRow> rows;

  bool pass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const SuiteRow& r) { return r.pass(); });
  }
};

// Oracle-backed property checks on small instances: every algorithm stays
// below the exact optimum, the largest 2-bi-feasible set has at least
// ceil(OPT/2) links, and the capacity LP with C set to that set's induced
// row sum has LP* >= its size.
inline SuiteRow oracle_check(const GenConfig& g, const PowerAssignment& power,
                             std::size_t trials, double C = 1.0) {
  const Instance instance = generate_instance(g).without_primaries();
  const AffectanceContext ctx = preprocess(instance, power).context;
  if (ctx.size() > 12) throw TooLarge("oracle suite instances need n <= 12");
  SuiteRow row;
  row.seed = g.seed;
  row.n = ctx.size();
  row.power = power.to_string();

  const Schedule opt = exact_capacity(ctx, Objective::kCardinality);
  const Schedule opt_w = exact_capacity(ctx, Objective::kWeight);
  row.opt = opt.value;
  row.opt_weight = opt_w.value;

  RoundingPolicy policy;
  policy.C = C;
  policy.trials = trials;
  policy.seed = hash_key({g.seed, 0x5eULL});
  auto check = [&](const Schedule& s, double bound) {
    row.feasible = row.feasible && verified_feasible(ctx, s);
    row.dominance = row.dominance && s.value <= bound;
    return s.value;
  };
  row.alg_capacity = check(
      run_pipeline(ctx, FormulationKind::kCapacity, policy).schedule, row.opt);
  if (is_nearly_uniform(ctx))
    row.alg_qos = check(
        run_pipeline(ctx, FormulationKind::kQos, policy).schedule, row.opt);
  row.alg_weighted =
      check(run_pipeline(ctx, FormulationKind::kWeighted, policy).schedule,
            row.opt_weight);
  row.alg_greedy = check(greedy_base(ctx, C), row.opt);
  row.alg_greedy_combined = check(greedy_combined(ctx, C), row.opt_weight);
  check(greedy_weight_classes(ctx, C), row.opt_weight);
  check(greedy_length_classes(ctx, C), row.opt_weight);

  const Schedule w2 = largest_bifeasible(ctx, 2.0);
  row.bifeasible = w2.size();
  row.half_opt = 2 * w2.size() >= static_cast<std::size_t>(row.opt);
  const double induced = induced_capacity_rowsum(ctx, w2.members);
  row.calibrated_c = induced > 0.0 ? induced : 1.0;
  row.lp_star = solve_lp(build_capacity_lp(ctx, row.calibrated_c).lp).objective;
  row.lp_relaxation =
      row.lp_star >= static_cast<double>(w2.size()) - kLpTolerance;
  return row;
}

inline SuiteReport run_oracle_suite(const std::vector<GenConfig>& configs,
                                    const PowerAssignment& power,
                                    std::size_t trials) {
  SuiteReport report;
  for (const GenConfig& g : configs)
    report.rows.push_back(oracle_check(g, power, trials));
  return report;
}

inline void write_suite_csv(std::ostream& out, const SuiteReport& report) {
  out << "seed,n,power,opt,opt_weight,alg_capacity,alg_qos,alg_weighted,"
         "alg_greedy,alg_greedy_combined,lp_star,calibrated_c,bifeasible,"
         "dominance,lp_relaxation,half_opt,feasible\n";
  auto b = [](bool x) { return x ? "true" : "false"; };
  for (const SuiteRow& r : report.rows) {
    out << r.seed << ',' << r.n << ',' << r.power << ','
        << format_number(r.opt) << ',' << format_number(r.opt_weight) << ','
        << format_number(r.alg_capacity) << ','
        << (r.alg_qos >= 0.0 ? format_number(r.alg_qos) : "") << ','
        << format_number(r.alg_weighted) << ','
        << format_number(r.alg_greedy) << ','
        << format_number(r.alg_greedy_combined) << ','
        << format_number(r.lp_star) << ',' << format_number(r.calibrated_c)
        << ',' << r.bifeasible << ',' << b(r.dominance) << ','
        << b(r.lp_relaxation) << ',' << b(r.half_opt) << ','
        << b(r.feasible) << '\n';
  }
}

}  // namespace sinrcap
