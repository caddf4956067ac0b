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

#include "rmtsim/bench.h"

#include <algorithm>
#include <chrono>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "rmtsim/optimizer.h"
#include "rmtsim/status_macros.h"

namespace rmtsim {
namespace {

bool SameTrace(const Trace& a, const Trace& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    const TraceEntry& x = a.entries[i];
    const TraceEntry& y = b.entries[i];
    if (x.tick != y.tick || x.phv != y.phv || !(x.state == y.state)) {
      return false;
    }
  }
  return true;
}

absl::StatusOr<double> TimeRun(const Pipeline& p, std::span<const Phv> phvs,
                               const StateSnapshot& initial) {
  const auto start = std::chrono::steady_clock::now();
  RMTSIM_ASSIGN_OR_RETURN(SimulationResult r,
                          Simulate(p, phvs, initial, SimMode::kTickAccurate));
  const auto end = std::chrono::steady_clock::now();
  // Keep the result alive until after the clock stops.
  if (r.output.entries.size() != phvs.size()) {
    return absl::InternalError("simulation lost PHVs");
  }
  return std::chrono::duration<double, std::milli>(end - start).count();
}

}  // namespace

double Median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

absl::StatusOr<BenchResult> RunBench(const Pipeline& pipeline,
                                     std::span<const Phv> phvs,
                                     const StateSnapshot& initial_state,
                                     int repeat) {
  if (phvs.empty()) {
    return absl::InvalidArgumentError("no PHVs requested");
  }
  if (repeat < 1) {
    return absl::InvalidArgumentError("repeat must be at least 1");
  }
  if (!pipeline.bound()) {
    return absl::FailedPreconditionError(
        "cannot benchmark an unbound pipeline; bind machine code first");
  }
  // Rebinding drops any specialization so the baseline is truly unoptimized.
  RMTSIM_ASSIGN_OR_RETURN(Pipeline plain,
                          Bind(pipeline, pipeline.machine_code()));
  RMTSIM_ASSIGN_OR_RETURN(Pipeline optimized, Optimize(plain));

  RMTSIM_ASSIGN_OR_RETURN(
      SimulationResult a,
      Simulate(plain, phvs, initial_state, SimMode::kTickAccurate));
  RMTSIM_ASSIGN_OR_RETURN(
      SimulationResult b,
      Simulate(optimized, phvs, initial_state, SimMode::kTickAccurate));
  if (!SameTrace(a.input, b.input) || !SameTrace(a.output, b.output) ||
      !(a.final_state == b.final_state)) {
    return absl::InternalError(
        "optimized and unoptimized simulations diverge; refusing to report "
        "timings");
  }

  BenchResult result;
  result.num_phvs = static_cast<int64_t>(phvs.size());
  result.repeat = repeat;
  for (int i = 0; i < repeat; ++i) {
    RMTSIM_ASSIGN_OR_RETURN(double u, TimeRun(plain, phvs, initial_state));
    RMTSIM_ASSIGN_OR_RETURN(double o, TimeRun(optimized, phvs, initial_state));
    result.unoptimized_ms.push_back(u);
    result.optimized_ms.push_back(o);
  }
  result.unoptimized_median_ms = Median(result.unoptimized_ms);
  result.optimized_median_ms = Median(result.optimized_ms);
  result.speedup =
      result.optimized_median_ms > 0
          ? result.unoptimized_median_ms / result.optimized_median_ms
          : 0;
  return result;
}

std::string FormatBenchTable(const BenchResult& r) {
  return absl::StrFormat(
      "phvs=%d repeat=%d equality=ok\n"
      "%-12s %12s\n"
      "%-12s %12.3f\n"
      "%-12s %12.3f\n"
      "speedup %.3fx\n",
      r.num_phvs, r.repeat, "variant", "median_ms", "unoptimized",
      r.unoptimized_median_ms, "optimized", r.optimized_median_ms, r.speedup);
}

}  // namespace rmtsim
