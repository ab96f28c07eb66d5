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

// Generates a random instance, solves the capacity LP, rounds it and compares
// the result with two greedy baselines.
//
//   capacity_demo [n] [seed]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "sinrcap/sinrcap.hpp"

int main(int argc, char** argv) {
  using namespace sinrcap;
  GenConfig g;
  g.n = argc > 1 ? static_cast<std::size_t>(std::atoi(argv[1])) : 60;
  g.seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  g.R = 40;
  g.delta = 6;

  try {
    const Preprocessed pre =
        preprocess(generate_instance(g), PowerAssignment::linear());
    const AffectanceContext& ctx = pre.context;

    RoundingPolicy policy;
    policy.seed = g.seed;
    for (double C : {0.5, 1.0, 2.0}) {
      policy.C = C;
      const auto run = run_pipeline(ctx, FormulationKind::kCapacity, policy);
      std::printf("C=%-4g LP*=%8.3f  rounded=%3zu  feasible=%s\n", C,
                  run.lp.objective, run.schedule.members.size(),
                  exact_sinr_feasible(ctx, run.schedule.members) ? "yes" : "no");
    }
    const Schedule w = greedy_base(ctx);
    const Schedule l = greedy_combined(ctx);
    std::printf("greedy=%zu  greedy_combined=%zu\n", w.members.size(), l.members.size());
  } catch (const Error& e) {
    std::fprintf(stderr, "capacity_demo: %s\n", e.what());
    return 2;
  }
  return 0;
}
