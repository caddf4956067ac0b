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

#include "rmtsim/fuzzer.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "json.hpp"
#include "rmtsim/optimizer.h"
#include "rmtsim/status_macros.h"
#include "rmtsim/trace_io.h"

namespace rmtsim {
namespace {

MappedState MapState(const std::vector<StateBinding>& schema,
                     std::span<const Value> values) {
  MappedState out;
  out.reserve(schema.size());
  for (size_t i = 0; i < schema.size(); ++i) {
    out.emplace_back(schema[i].var, values[i]);
  }
  return out;
}

std::string FormatMapped(const MappedState& state) {
  std::vector<std::string> parts;
  for (const auto& [var, v] : state) parts.push_back(absl::StrCat(var, "=", v));
  return absl::StrCat("{", absl::StrJoin(parts, ", "), "}");
}

}  // namespace

absl::StatusOr<Verdict> FuzzTest(const Pipeline& pipeline,
                                 const SpecOracle& oracle,
                                 const TrafficConfig& cfg,
                                 const FuzzOptions& options) {
  if (cfg.num_phvs < 1) {
    return absl::InvalidArgumentError("no PHVs requested (num_phvs < 1)");
  }
  if (!pipeline.bound()) {
    return absl::FailedPreconditionError(
        "cannot fuzz an unbound pipeline; bind machine code first");
  }
  RMTSIM_RETURN_IF_ERROR(ValidateOracle(oracle, pipeline));

  const std::shared_ptr<const StateLayout> layout =
      StateLayout::ForPipeline(pipeline);
  RMTSIM_ASSIGN_OR_RETURN(Traffic traffic,
                          GenerateTraffic(cfg, pipeline.phv_length(), layout));

  const std::vector<StateBinding> schema = oracle.state_schema();
  std::vector<Value> oracle_state;
  for (const StateBinding& b : schema) {
    oracle_state.push_back(traffic.initial_state.Get(b.coord)[b.index]);
  }

  RMTSIM_ASSIGN_OR_RETURN(Machine machine,
                          Machine::Create(pipeline, traffic.initial_state));
  Verdict verdict;
  verdict.seed = cfg.seed;
  std::vector<Value> actual_state(schema.size());

  // Returns false to stop early.
  auto check = [&](const ExitRecord& exit) {
    const Phv& input = traffic.phvs[exit.sequence];
    const Phv expected = oracle.Transfer(input, oracle_state);
    for (size_t i = 0; i < schema.size(); ++i) {
      actual_state[i] = exit.state.Get(schema[i].coord)[schema[i].index];
    }
    ++verdict.phvs_checked;
    std::vector<std::string> fields;
    if (expected.containers.size() != exit.phv.containers.size()) {
      fields.push_back("phv");
    } else {
      for (size_t c = 0; c < expected.containers.size(); ++c) {
        if (expected.containers[c] != exit.phv.containers[c]) {
          fields.push_back(absl::StrCat("phv[", c, "]"));
        }
      }
    }
    for (size_t i = 0; i < schema.size(); ++i) {
      if (oracle_state[i] != actual_state[i]) {
        fields.push_back(absl::StrCat("state.", schema[i].var));
      }
    }
    if (fields.empty()) return true;
    verdict.outcome = Outcome::kFail;
    Counterexample cx;
    cx.seed = cfg.seed;
    cx.index = static_cast<int64_t>(exit.sequence);
    cx.tick = exit.exit_tick;
    cx.input = input;
    cx.expected_phv = expected;
    cx.actual_phv = exit.phv;
    cx.expected_state = MapState(schema, oracle_state);
    cx.actual_state = MapState(schema, actual_state);
    cx.mismatched_fields = std::move(fields);
    verdict.failures.push_back(std::move(cx));
    return options.collect_all;
  };

  for (const Phv& phv : traffic.phvs) {
    RMTSIM_RETURN_IF_ERROR(machine.Inject(phv));
    if (std::optional<ExitRecord> exit = machine.Step(); exit.has_value()) {
      if (!check(*exit)) return verdict;
    }
  }
  while (!machine.Idle()) {
    if (std::optional<ExitRecord> exit = machine.Step(); exit.has_value()) {
      if (!check(*exit)) return verdict;
    }
  }
  if (verdict.phvs_checked != cfg.num_phvs) {
    return absl::InternalError(absl::StrCat("checked ", verdict.phvs_checked,
                                            " of ", cfg.num_phvs, " PHVs"));
  }
  return verdict;
}

std::string FormatCounterexample(const Counterexample& cx) {
  return absl::StrCat(
      "counterexample: seed=", cx.seed, " index=", cx.index, " tick=", cx.tick,
      "\n  input phv:      ", FormatPhv(cx.input),
      "\n  expected phv:   ", FormatPhv(cx.expected_phv),
      "\n  actual phv:     ", FormatPhv(cx.actual_phv),
      "\n  expected state: ", FormatMapped(cx.expected_state),
      "\n  actual state:   ", FormatMapped(cx.actual_state),
      "\n  mismatched:     ", absl::StrJoin(cx.mismatched_fields, ", "), "\n");
}

absl::StatusOr<std::vector<Mutation>> ParseMutations(absl::string_view source) {
  std::vector<Mutation> out;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(source, '\n')) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    auto error = [line_no](absl::string_view msg) {
      return absl::InvalidArgumentError(
          absl::StrCat("mutations line ", line_no, ": ", msg));
    };
    const size_t colon = line.find(':');
    const size_t eq = line.find('=');
    if (colon == absl::string_view::npos || eq == absl::string_view::npos ||
        eq < colon) {
      return error("expected 'name: slot = value [expect=fail|pass]'");
    }
    Mutation m;
    m.name = std::string(absl::StripAsciiWhitespace(line.substr(0, colon)));
    m.slot = std::string(
        absl::StripAsciiWhitespace(line.substr(colon + 1, eq - colon - 1)));
    if (m.name.empty() || m.slot.empty()) {
      return error("empty mutation or slot name");
    }
    std::vector<absl::string_view> rest =
        absl::StrSplit(line.substr(eq + 1), ' ', absl::SkipEmpty());
    if (rest.empty() || rest.size() > 2) {
      return error("expected a value and an optional expect=fail|pass");
    }
    uint64_t v = 0;
    if (!absl::SimpleAtoi(rest[0], &v) || v >= kCodeValueLimit) {
      return error(absl::StrCat("invalid value '", rest[0], "'"));
    }
    m.value = static_cast<CodeValue>(v);
    if (rest.size() == 2) {
      if (rest[1] == "expect=pass") {
        m.expect_pass = true;
      } else if (rest[1] != "expect=fail") {
        return error(absl::StrCat("unknown expectation '", rest[1], "'"));
      }
    }
    for (const Mutation& prev : out) {
      if (prev.name == m.name) {
        return error(absl::StrCat("duplicate mutation name '", m.name, "'"));
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

int CampaignReport::caught() const {
  return static_cast<int>(std::count_if(
      results.begin(), results.end(), [](const MutationResult& r) {
        return r.matched() && !r.mutation.expect_pass;
      }));
}

int CampaignReport::preserved() const {
  return static_cast<int>(std::count_if(
      results.begin(), results.end(), [](const MutationResult& r) {
        return r.matched() && r.mutation.expect_pass;
      }));
}

int CampaignReport::unexpected() const {
  return static_cast<int>(std::count_if(
      results.begin(), results.end(), [](const MutationResult& r) {
        return r.verdict.has_value() && !r.matched();
      }));
}

int CampaignReport::errors() const {
  return static_cast<int>(
      std::count_if(results.begin(), results.end(),
                    [](const MutationResult& r) { return !r.status.ok(); }));
}

absl::StatusOr<CampaignReport> MutationCampaign(
    const Pipeline& pipeline, const SpecOracle& oracle,
    const TrafficConfig& cfg, const std::vector<Mutation>& mutations,
    int jobs) {
  if (!pipeline.bound()) {
    return absl::FailedPreconditionError(
        "cannot fuzz an unbound pipeline; bind machine code first");
  }
  const MachineCode& base = pipeline.machine_code();
  CampaignReport report;
  report.results.resize(mutations.size());
  for (size_t i = 0; i < mutations.size(); ++i) {
    const Mutation& m = mutations[i];
    const CatalogEntry* entry = pipeline.catalog().Find(m.slot);
    if (entry == nullptr) {
      return absl::InvalidArgumentError(absl::StrCat(
          "mutation '", m.name, "' names unknown slot '", m.slot, "'"));
    }
    if (m.value >= entry->upper_bound) {
      return absl::InvalidArgumentError(
          absl::StrCat("mutation '", m.name, "' sets ", m.slot, " to ", m.value,
                       ", outside [0, ", entry->upper_bound, ")"));
    }
    report.results[i].mutation = m;
    report.results[i].original = *base.Get(m.slot);
  }
  RMTSIM_ASSIGN_OR_RETURN(report.baseline, FuzzTest(pipeline, oracle, cfg));

  auto run_one = [&](size_t i) {
    MutationResult& r = report.results[i];
    MachineCode mc = base;
    r.status = mc.Set(r.mutation.slot, r.mutation.value);
    if (!r.status.ok()) return;
    absl::StatusOr<Pipeline> mutant = Bind(pipeline, mc);
    if (mutant.ok() && pipeline.optimized()) mutant = Optimize(*mutant);
    if (!mutant.ok()) {
      r.status = mutant.status();
      return;
    }
    absl::StatusOr<Verdict> v = FuzzTest(*mutant, oracle, cfg);
    if (!v.ok()) {
      r.status = v.status();
      return;
    }
    r.verdict = *std::move(v);
  };

  const size_t workers =
      std::clamp<size_t>(static_cast<size_t>(std::max(jobs, 1)), 1,
                         std::max<size_t>(mutations.size(), 1));
  if (workers == 1) {
    for (size_t i = 0; i < mutations.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < mutations.size(); i = next++) run_one(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return report;
}

std::string FormatCampaignTable(const CampaignReport& report) {
  std::string out =
      absl::StrFormat("baseline: %s (%d PHVs, seed %d)\n",
                      report.baseline.passed() ? "PASS" : "FAIL",
                      report.baseline.phvs_checked, report.baseline.seed);
  absl::StrAppend(
      &out, absl::StrFormat("%-32s %-36s %-21s %-6s %-6s %-9s %s\n", "mutation",
                            "slot", "edit", "expect", "got", "tick", "result"));
  for (const MutationResult& r : report.results) {
    const std::string edit = absl::StrCat(r.original, " -> ", r.mutation.value);
    const char* expect = r.mutation.expect_pass ? "pass" : "fail";
    if (!r.status.ok()) {
      absl::StrAppend(
          &out, absl::StrFormat("%-32s %-36s %-21s %-6s %-6s %-9s ERROR: %s\n",
                                r.mutation.name, r.mutation.slot, edit, expect,
                                "-", "-", r.status.ToString()));
      continue;
    }
    const Verdict& v = *r.verdict;
    const std::string tick =
        v.failures.empty() ? "-" : absl::StrCat(v.failures.front().tick);
    absl::StrAppend(
        &out, absl::StrFormat("%-32s %-36s %-21s %-6s %-6s %-9s %s\n",
                              r.mutation.name, r.mutation.slot, edit, expect,
                              v.passed() ? "pass" : "fail", tick,
                              r.matched() ? "ok" : "UNEXPECTED"));
  }
  absl::StrAppend(
      &out, absl::StrFormat("summary: %d mutations, %d caught, %d preserved, "
                            "%d unexpected, %d errors\n",
                            report.results.size(), report.caught(),
                            report.preserved(), report.unexpected(),
                            report.errors()));
  return out;
}

std::string CampaignToJson(const CampaignReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const MutationResult& r : report.results) {
    nlohmann::json rec = {
        {"name", r.mutation.name},
        {"slot", r.mutation.slot},
        {"original", r.original},
        {"value", r.mutation.value},
        {"expected", r.mutation.expect_pass ? "pass" : "fail"},
    };
    if (!r.status.ok()) {
      rec["verdict"] = "error";
      rec["error"] = r.status.ToString();
    } else {
      rec["verdict"] = r.verdict->passed() ? "pass" : "fail";
      rec["phvs_checked"] = r.verdict->phvs_checked;
      if (!r.verdict->failures.empty()) {
        const Counterexample& cx = r.verdict->failures.front();
        rec["counterexample"] = {
            {"seed", cx.seed}, {"index", cx.index}, {"tick", cx.tick}};
      }
    }
    rec["matched"] = r.matched();
    records.push_back(std::move(rec));
  }
  nlohmann::json j = {{"baseline",
                       {{"verdict", report.baseline.passed() ? "pass" : "fail"},
                        {"seed", report.baseline.seed},
                        {"phvs_checked", report.baseline.phvs_checked}}},
                      {"mutations", std::move(records)},
                      {"summary",
                       {{"total", report.results.size()},
                        {"caught", report.caught()},
                        {"preserved", report.preserved()},
                        {"unexpected", report.unexpected()},
                        {"errors", report.errors()}}}};
  return j.dump(2);
}

}  // namespace rmtsim
