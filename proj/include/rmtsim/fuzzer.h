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

// Differential testing of a bound pipeline against a specification oracle,
// and mutation campaigns over its machine code.

#ifndef RMTSIM_FUZZER_H_
#define RMTSIM_FUZZER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "rmtsim/oracle.h"
#include "rmtsim/pipeline.h"
#include "rmtsim/simulator.h"
#include "rmtsim/traffic.h"

namespace rmtsim {

struct FuzzOptions {
  // Keep going after the first mismatch and report every failing PHV.
  bool collect_all = false;
};

// Oracle state, as (variable name, value) in schema order.
using MappedState = std::vector<std::pair<std::string, Value>>;

struct Counterexample {
  uint64_t seed = 0;
  // Position of the PHV in the generated traffic.
  int64_t index = 0;
  // Tick at which the PHV left the pipeline.
  int64_t tick = 0;
  Phv input;
  Phv expected_phv;
  Phv actual_phv;
  MappedState expected_state;
  MappedState actual_state;
  // Field paths such as "phv[1]" or "state.count".
  std::vector<std::string> mismatched_fields;
};

enum class Outcome { kPass, kFail };

struct Verdict {
  Outcome outcome = Outcome::kPass;
  uint64_t seed = 0;
  int64_t phvs_checked = 0;
  // Empty on kPass; the first mismatch only, unless collect_all is set.
  std::vector<Counterexample> failures;

  bool passed() const { return outcome == Outcome::kPass; }
};

// Generates traffic from `cfg`, runs the pipeline tick-accurately and the
// oracle sequentially over it, and compares every output PHV and the
// oracle-mapped state captured when the PHV leaves each stage.
//
// Errors: kInvalidArgument for num_phvs < 1 or an oracle schema mismatch,
// kFailedPrecondition for an unbound pipeline.
absl::StatusOr<Verdict> FuzzTest(const Pipeline& pipeline,
                                 const SpecOracle& oracle,
                                 const TrafficConfig& cfg,
                                 const FuzzOptions& options = {});

// Multi-line human-readable report of one counterexample.
std::string FormatCounterexample(const Counterexample& cx);

// A single-slot edit of the pipeline's machine code.
struct Mutation {
  std::string name;
  std::string slot;
  CodeValue value = 0;
  // Whether the edit preserves the program's semantics.
  bool expect_pass = false;
};

// One mutation per line: `name: slot = value [expect=fail|pass]`. Blank
// lines and `#` comments are ignored; the expectation defaults to fail.
absl::StatusOr<std::vector<Mutation>> ParseMutations(absl::string_view source);

struct MutationResult {
  Mutation mutation;
  CodeValue original = 0;
  absl::Status status;
  // Set when status is ok.
  std::optional<Verdict> verdict;

  // The verdict agrees with the mutation's expectation.
  bool matched() const {
    return verdict.has_value() && verdict->passed() == mutation.expect_pass;
  }
};

struct CampaignReport {
  Verdict baseline;
  std::vector<MutationResult> results;

  int caught() const;     // expect fail, got fail
  int preserved() const;  // expect pass, got pass
  int unexpected() const;
  int errors() const;
  bool ok() const {
    return baseline.passed() && unexpected() == 0 && errors() == 0;
  }
};

// Fuzzes the unmodified pipeline, then each mutation on its own copy,
// using up to `jobs` worker threads. An optimized input pipeline has each
// mutant re-optimized. Results are in mutation order regardless of jobs.
//
// Errors: kInvalidArgument when a mutation names an unknown slot or an
// out-of-range value, plus everything FuzzTest reports for the baseline.
absl::StatusOr<CampaignReport> MutationCampaign(
    const Pipeline& pipeline, const SpecOracle& oracle,
    const TrafficConfig& cfg, const std::vector<Mutation>& mutations,
    int jobs = 1);

std::string FormatCampaignTable(const CampaignReport& report);

// One record per mutation: name, slot, values, expectation, verdict and
// the first counterexample's index, tick and seed.
std::string CampaignToJson(const CampaignReport& report);

}  // namespace rmtsim

#endif  // RMTSIM_FUZZER_H_
