// Copyright 2026 The rmtsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RMTSIM_BENCH_H_
#define RMTSIM_BENCH_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rmtsim/pipeline.h"
#include "rmtsim/simulator.h"

namespace rmtsim {

struct BenchResult {
  int64_t num_phvs = 0;
  int repeat = 0;
  // Wall time of each run, in milliseconds.
  std::vector<double> unoptimized_ms;
  std::vector<double> optimized_ms;
  double unoptimized_median_ms = 0;
  double optimized_median_ms = 0;
  // unoptimized / optimized.
  double speedup = 0;
};

// Times `repeat` tick-accurate simulations of `pipeline` (bound, not yet
// optimized) and of its optimized form over the same traffic, alternating
// between the two. Before reporting, checks that both variants produce
// identical input and output traces and final state.
//
// Errors: kInvalidArgument for no PHVs or repeat < 1, kFailedPrecondition
// for an unbound pipeline, kInternal when the variants diverge.
absl::StatusOr<BenchResult> RunBench(const Pipeline& pipeline,
                                     std::span<const Phv> phvs,
                                     const StateSnapshot& initial_state,
                                     int repeat);

double Median(std::vector<double> values);

std::string FormatBenchTable(const BenchResult& result);

}  // namespace rmtsim

#endif  // RMTSIM_BENCH_H_
