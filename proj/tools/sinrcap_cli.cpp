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

// Command-line front end: instance generation, single runs, the LP versus
// greedy comparison and the oracle property suite.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "sinrcap/sinrcap.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sinrcap;

// Writes to the file when a path is given, otherwise to stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

ordered_json schedule_json(const AffectanceContext& ctx, const Schedule& s) {
  ordered_json j;
  j["ids"] = s.ids;
  j["value"] = s.value;
  j["one_feasible"] = s.certificate.one_feasible;
  j["exact_sinr"] = s.certificate.exact_sinr;
  ordered_json links = ordered_json::array();
  for (std::size_t i = 0; i < s.members.size(); ++i)
    links.push_back({{"id", ctx.id(s.members[i])},
                     {"in_affectance", s.certificate.in_affectance[i]},
                     {"out_affectance", s.certificate.out_affectance[i]}});
  j["links"] = std::move(links);
  return j;
}

struct Common {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::string power = "linear";
  std::string out;
};

void add_common(CLI::App* app, Common& c, const std::string& default_power) {
  c.power = default_power;
  app->add_option("--seed", c.seed, "master seed")->capture_default_str();
  app->add_option("--trials", c.trials, "rounding trials")->capture_default_str();
  app->add_option("--power", c.power, "uniform|uniform:P|linear|mean|exp:TAU")
      ->capture_default_str();
  app->add_option("--out", c.out, "output file (stdout when omitted)");
}

RoundingPolicy policy_from(const Common& c, double C) {
  RoundingPolicy p;
  p.C = C;
  p.trials = c.trials;
  p.seed = c.seed;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SINR link capacity and spectrum admission toolkit"};
  app.require_subcommand(1);
  int status = 0;

  // gen
  GenConfig gen;
  std::string gen_weights = "ordinary";
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--n", gen.n)->capture_default_str();
  gen_cmd->add_option("--R", gen.R, "side of the square")->capture_default_str();
  gen_cmd->add_option("--delta", gen.delta, "maximum link length")->capture_default_str();
  gen_cmd->add_option("--weights", gen_weights,
                      "ordinary|reversed|length_determined|weight_class")
      ->capture_default_str();
  gen_cmd->add_option("--alpha", gen.alpha)->capture_default_str();
  gen_cmd->add_option("--beta", gen.beta)->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise)->capture_default_str();
  gen_cmd->add_option("--primaries", gen.primaries)->capture_default_str();
  gen_cmd->add_option("--primary-power", gen.primary_power)->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen_out);
  gen_cmd->callback([&] {
    gen.weight_dist = parse_weight_distribution(gen_weights);
    emit(gen_out, write_instance(generate_instance(gen)));
  });

  // solve
  Common solve;
  std::string solve_file;
  std::string algo = "capacity";
  double solve_c = 1.0;
  auto* solve_cmd = app.add_subcommand("solve", "run one algorithm on an instance");
  solve_cmd->add_option("instance", solve_file)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--algo", algo,
                        "capacity|qos|weighted|greedy|greedy_w|greedy_l|greedy_combined")
      ->capture_default_str();
  solve_cmd->add_option("--C", solve_c, "LP constant or greedy c_g")->capture_default_str();
  add_common(solve_cmd, solve, "linear");
  solve_cmd->callback([&] {
    const Instance inst = load_instance(solve_file).without_primaries();
    const auto pre = preprocess(inst, PowerAssignment::parse(solve.power));
    const AffectanceContext& ctx = pre.context;
    ordered_json j;
    j["algo"] = algo;
    j["constant"] = solve_c;
    j["removed"] = pre.removed;
    Schedule s;
    if (algo == "capacity" || algo == "qos" || algo == "weighted") {
      const FormulationKind kind = algo == "capacity" ? FormulationKind::kCapacity
                                   : algo == "qos"    ? FormulationKind::kQos
                                                      : FormulationKind::kWeighted;
      const PipelineResult r = run_pipeline(ctx, kind, policy_from(solve, solve_c));
      j["lp_objective"] = r.lp.objective;
      j["mean_rounded_size"] = r.mean_rounded_size;
      s = r.schedule;
    } else if (algo == "greedy") {
      s = greedy_base(ctx, solve_c);
    } else if (algo == "greedy_w") {
      s = greedy_weight_classes(ctx, solve_c);
    } else if (algo == "greedy_l") {
      s = greedy_length_classes(ctx, solve_c);
    } else if (algo == "greedy_combined") {
      s = greedy_combined(ctx, solve_c);
    } else {
      throw CLI::ValidationError("--algo", "unknown algorithm " + algo);
    }
    j["schedule"] = schedule_json(ctx, s);
    const bool ok = verified_feasible(ctx, s);
    j["verified"] = ok;
    emit(solve.out, j.dump(2) + "\n");
    if (!ok) status = 1;
  });

  // admit
  Common admit;
  std::string admit_file;
  std::string method = "general";
  double admit_c = 1.0;
  double c1 = 2.0;
  auto* admit_cmd = app.add_subcommand("admit", "admit secondaries next to primaries");
  admit_cmd->add_option("instance", admit_file)->required()->check(CLI::ExistingFile);
  admit_cmd->add_option("--method", method, "general|large|classes")->capture_default_str();
  admit_cmd->add_option("--C", admit_c)->capture_default_str();
  admit_cmd->add_option("--c1", c1, "power ratio per class")->capture_default_str();
  add_common(admit_cmd, admit, "uniform");
  admit_cmd->callback([&] {
    const Instance inst = load_instance(admit_file);
    const auto pre = preprocess(inst, PowerAssignment::parse(admit.power), true);
    const AffectanceContext& ctx = pre.context;
    const RoundingPolicy policy = policy_from(admit, admit_c);
    AdmissionResult r;
    if (method == "general")
      r = admit_general(ctx, policy);
    else if (method == "large")
      r = admit_large_opt(ctx, policy);
    else if (method == "classes")
      r = admit_by_power_classes(ctx, policy, c1);
    else
      throw CLI::ValidationError("--method", "unknown method " + method);
    ordered_json j;
    j["method"] = method;
    j["removed"] = pre.removed;
    j["admitted"] = schedule_json(ctx, r.admitted);
    j["groups"] = r.groups.size();
    j["primary_residual"] = r.primary_residual;
    j["lp_objective"] = r.lp.objective;
    j["verified"] = r.verified;
    emit(admit.out, j.dump(2) + "\n");
    if (!r.verified) status = 1;
  });

  // oracle
  std::string oracle_file;
  std::string oracle_power = "linear";
  std::string objective = "cardinality";
  std::string mode = "exact_sinr";
  double gamma = 1.0;
  bool oracle_admission = false;
  std::string oracle_out;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by enumeration (n <= 20)");
  oracle_cmd->add_option("instance", oracle_file)->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--power", oracle_power)->capture_default_str();
  oracle_cmd->add_option("--objective", objective, "cardinality|weight")->capture_default_str();
  oracle_cmd->add_option("--mode", mode, "exact_sinr|affectance|bi")->capture_default_str();
  oracle_cmd->add_option("--gamma", gamma)->capture_default_str();
  oracle_cmd->add_flag("--admission", oracle_admission, "respect the primaries' SINR");
  oracle_cmd->add_option("--out", oracle_out);
  oracle_cmd->callback([&] {
    const Instance inst = load_instance(oracle_file);
    const auto pre = preprocess(oracle_admission ? inst : inst.without_primaries(),
                                PowerAssignment::parse(oracle_power), oracle_admission);
    const AffectanceContext& ctx = pre.context;
    Schedule s;
    if (oracle_admission) {
      s = exact_admission(ctx);
    } else {
      const Objective obj =
          objective == "weight" ? Objective::kWeight : Objective::kCardinality;
      const OracleMode m = mode == "affectance" ? OracleMode::kAffectance
                           : mode == "bi"       ? OracleMode::kBiAffectance
                                                : OracleMode::kExactSinr;
      s = exact_capacity(ctx, obj, m, gamma);
    }
    ordered_json j;
    j["removed"] = pre.removed;
    j["schedule"] = schedule_json(ctx, s);
    emit(oracle_out, j.dump(2) + "\n");
  });

  // compare
  Common compare;
  std::vector<std::size_t> cmp_n = {100};
  std::vector<double> cmp_r = {25, 50, 100};
  std::vector<double> cmp_delta = {2, 8, 32};
  std::vector<std::string> cmp_weights = {"ordinary"};
  std::size_t repeats = 1;
  std::vector<double> sweep = default_sweep();
  bool timing = false;
  auto* compare_cmd = app.add_subcommand("compare", "LP pipeline versus greedy baselines");
  compare_cmd->add_option("--n", cmp_n)->delimiter(',')->capture_default_str();
  compare_cmd->add_option("--R", cmp_r)->delimiter(',')->capture_default_str();
  compare_cmd->add_option("--delta", cmp_delta)->delimiter(',')->capture_default_str();
  compare_cmd->add_option("--weights", cmp_weights)->delimiter(',')->capture_default_str();
  compare_cmd->add_option("--repeats", repeats, "instances per grid cell")
      ->capture_default_str();
  compare_cmd->add_option("--sweep", sweep, "constants C and c_g")
      ->delimiter(',')
      ->capture_default_str();
  compare_cmd->add_flag("--timing", timing, "fill the runtime_ms column");
  add_common(compare_cmd, compare, "linear");
  compare_cmd->callback([&] {
    CompareConfig cfg;
    cfg.sweep = sweep;
    cfg.trials = compare.trials;
    cfg.power = PowerAssignment::parse(compare.power);
    cfg.timing = timing;
    std::uint64_t index = 0;
    for (const auto& w : cmp_weights)
      for (std::size_t n : cmp_n)
        for (double delta : cmp_delta)
          for (double R : cmp_r)
            for (std::size_t rep = 0; rep < repeats; ++rep) {
              GenConfig g;
              g.n = n;
              g.R = R;
              g.delta = delta;
              g.weight_dist = parse_weight_distribution(w);
              g.seed = hash_key({compare.seed, index++});
              cfg.instances.push_back(g);
            }
    ScopedWarningCapture quiet;
    const auto records = run_compare(cfg);
    std::ostringstream os;
    write_csv(os, records);
    emit(compare.out, os.str());
    for (const auto& r : records)
      if (!r.feasible) status = 1;
  });

  // suite
  Common suite;
  std::size_t suite_count = 50;
  std::size_t suite_n = 10;
  double suite_r = 6.0;
  double suite_delta = 3.0;
  auto* suite_cmd = app.add_subcommand("suite", "oracle-backed property checks");
  suite_cmd->add_option("--count", suite_count)->capture_default_str();
  suite_cmd->add_option("--n", suite_n, "links per instance (<= 12)")->capture_default_str();
  suite_cmd->add_option("--R", suite_r)->capture_default_str();
  suite_cmd->add_option("--delta", suite_delta)->capture_default_str();
  add_common(suite_cmd, suite, "uniform");
  suite_cmd->callback([&] {
    std::vector<GenConfig> configs;
    for (std::uint64_t i = 0; i < suite_count; ++i) {
      GenConfig g;
      g.n = suite_n;
      g.R = suite_r;
      g.delta = suite_delta;
      g.weight_dist = static_cast<WeightDistribution>(i % 4);
      g.seed = hash_key({suite.seed, i});
      configs.push_back(g);
    }
    ScopedWarningCapture quiet;
    const SuiteReport report =
        run_oracle_suite(configs, PowerAssignment::parse(suite.power), suite.trials);
    std::ostringstream os;
    write_suite_csv(os, report);
    emit(suite.out, os.str());
    std::size_t failed = 0;
    for (const auto& r : report.rows) failed += r.pass() ? 0 : 1;
    std::cerr << report.rows.size() - failed << "/" << report.rows.size()
              << " instances pass all checks\n";
    if (failed > 0) status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const sinrcap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
