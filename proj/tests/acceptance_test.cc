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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
// and exits non-zero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "rmtsim/alu_parser.h"
#include "rmtsim/bench.h"
#include "rmtsim/cli.h"
#include "rmtsim/fuzzer.h"
#include "rmtsim/optimizer.h"
#include "rmtsim/simulator.h"
#include "rmtsim/trace_io.h"
#include "rmtsim/traffic.h"
#include "tests/test_util.h"

namespace rmtsim {
namespace {

// Outcome of one criterion: pass flag plus a one-line detail.
struct Check {
  bool pass = true;
  std::string detail;

  void Fail(std::string why) {
    if (pass) detail = std::move(why);
    pass = false;
  }
};

#define ASSIGN_OR_FAIL(check, lhs, rexpr)                                \
  auto RMTSIM_TEST_CONCAT(or_, __LINE__) = (rexpr);                      \
  if (!RMTSIM_TEST_CONCAT(or_, __LINE__).ok()) {                         \
    (check).Fail(RMTSIM_TEST_CONCAT(or_, __LINE__).status().ToString()); \
    return check;                                                        \
  }                                                                      \
  lhs = *std::move(RMTSIM_TEST_CONCAT(or_, __LINE__))

// Every fixture pipeline with its machine code.
std::vector<std::pair<std::string, std::string>> AllFixtures() {
  std::vector<std::pair<std::string, std::string>> out = {
      {"counter_1x1", "counter"},
      {"identity_2x2", "identity"},
      {"sampling_2x1", "sampling"},
      {"heavy_hitter_1x1", "heavy_hitter"},
      {"minimal_1x1", "minimal"}};
  for (const std::string& s : testing::ShapeFixtures()) out.push_back({s, s});
  return out;
}

absl::StatusOr<Traffic> RandomTraffic(const Pipeline& p, int64_t n,
                                      uint64_t seed) {
  TrafficConfig cfg;
  cfg.num_phvs = n;
  cfg.seed = seed;
  return GenerateTraffic(cfg, p.phv_length(), StateLayout::ForPipeline(p));
}

bool SameEntries(const Trace& a, const Trace& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].tick != b.entries[i].tick ||
        !(a.entries[i].phv == b.entries[i].phv) ||
        !(a.entries[i].state == b.entries[i].state)) {
      return false;
    }
  }
  return true;
}

// 1. Optimized and unoptimized pipelines agree on random machine code.
Check OptimizerPreservesSemantics() {
  Check c;
  int instances = 0;
  for (const std::string& shape : testing::ShapeFixtures()) {
    ASSIGN_OR_FAIL(c, Pipeline p, testing::LoadFixture(shape));
    for (uint64_t seed = 1000; seed < 1012; ++seed) {
      ASSIGN_OR_FAIL(c, Pipeline bound,
                     Bind(p, RandomMachineCode(p.catalog(), seed)));
      ASSIGN_OR_FAIL(c, Pipeline opt, Optimize(bound));
      ASSIGN_OR_FAIL(c, Traffic t, RandomTraffic(p, 1000, seed));
      ASSIGN_OR_FAIL(
          c, SimulationResult a,
          Simulate(bound, t.phvs, t.initial_state, SimMode::kTickAccurate));
      ASSIGN_OR_FAIL(
          c, SimulationResult b,
          Simulate(opt, t.phvs, t.initial_state, SimMode::kTickAccurate));
      if (!SameEntries(a.output, b.output) ||
          !(a.final_state == b.final_state)) {
        c.Fail(
            absl::StrCat("divergence on ", shape, " machine-code seed ", seed));
      }
      ++instances;
    }
  }
  if (instances < 100) c.Fail(absl::StrCat("only ", instances, " instances"));
  if (c.pass) {
    c.detail = absl::StrCat(instances,
                            " (shape, machine code) instances x 1000 PHVs "
                            "identical");
  }
  return c;
}

// Hole nodes plus if-statements with a literal condition.
int Leftovers(const AluProgram& alu) {
  int n = 0;
  ForEachExpr(alu.body, [&](const Expr& e) { n += IsHole(e.kind) ? 1 : 0; });
  ForEachStmt(alu.body, [&](const Stmt& s) {
    n += s.kind == StmtKind::kIf && s.expr->kind == ExprKind::kIntLit ? 1 : 0;
  });
  return n;
}

// 2. Nothing configurable survives specialization.
Check SpecializationIsComplete() {
  Check c;
  int alus = 0;
  for (const std::string& shape : testing::ShapeFixtures()) {
    ASSIGN_OR_FAIL(c, Pipeline p, testing::LoadFixture(shape));
    for (uint64_t seed = 0; seed < 50; ++seed) {
      ASSIGN_OR_FAIL(c, Pipeline bound,
                     Bind(p, RandomMachineCode(p.catalog(), seed)));
      ASSIGN_OR_FAIL(c, Pipeline opt, Optimize(bound));
      for (const Stage& stage : opt.stages()) {
        for (const AluInstance& inst : stage.alus) {
          ++alus;
          if (inst.specialized == nullptr ||
              Leftovers(*inst.specialized) != 0) {
            c.Fail(absl::StrCat("leftover hole or constant if in ", shape,
                                " seed ", seed, " ", AluPath(inst.coord)));
          }
        }
      }
      if (Describe(opt).find("opcode") != std::string::npos) {
        c.Fail(absl::StrCat("'opcode' in optimized listing of ", shape));
      }
    }
  }
  // The opcode selection of arith_op becomes a plain operator.
  ASSIGN_OR_FAIL(c, AluProgram raw,
                 ParseAluFile(testing::FixturePath("alus/raw.alu")));
  for (const auto& [opcode, want] :
       std::vector<std::pair<CodeValue, std::string>>{
           {0, "return (pkt_0 + 5)\n"}, {1, "return (pkt_0 - 5)\n"}}) {
    const std::vector<CodeValue> b = {opcode, 5};
    const AluProgram s = SpecializeAlu(raw, b);
    if (PrintBody(s, "") != want || Leftovers(s) != 0) {
      c.Fail(absl::StrCat("arith_op opcode ", opcode, " specialized to ",
                          PrintBody(s, "")));
    }
  }
  if (c.pass) {
    c.detail = absl::StrCat(alus,
                            " specialized ALUs scanned: 0 holes, 0 constant "
                            "ifs; arith_op opcode folds to +/-");
  }
  return c;
}

// 3. Tick-accurate and sequential execution agree.
Check ModesAgree() {
  Check c;
  int fixtures = 0;
  for (const auto& [hw, mc] : AllFixtures()) {
    ASSIGN_OR_FAIL(c, Pipeline p, testing::LoadFixture(hw, mc));
    ASSIGN_OR_FAIL(c, Traffic t, RandomTraffic(p, 500, 3));
    ASSIGN_OR_FAIL(
        c, SimulationResult a,
        Simulate(p, t.phvs, t.initial_state, SimMode::kTickAccurate));
    ASSIGN_OR_FAIL(c, SimulationResult b,
                   Simulate(p, t.phvs, t.initial_state, SimMode::kSequential));
    bool same = a.output.entries.size() == b.output.entries.size() &&
                a.final_state == b.final_state;
    for (size_t i = 0; same && i < a.output.entries.size(); ++i) {
      same = a.output.entries[i].phv == b.output.entries[i].phv &&
             a.output.entries[i].state == b.output.entries[i].state;
    }
    if (!same) c.Fail(absl::StrCat("modes differ on ", hw));
    ++fixtures;
  }
  if (c.pass) {
    c.detail =
        absl::StrCat(fixtures, " fixture pipelines x 500 PHVs identical");
  }
  return c;
}

// 4. Every shipped mutation gets the verdict it expects.
Check MutationSuitesBehave() {
  Check c;
  int caught = 0;
  int preserved = 0;
  int programs = 0;
  for (const char* name : {"counter", "identity", "sampling", "heavy_hitter"}) {
    const std::string hw =
        absl::StrCat(name, std::string(name) == "identity"   ? "_2x2"
                           : std::string(name) == "sampling" ? "_2x1"
                                                             : "_1x1");
    ASSIGN_OR_FAIL(c, Pipeline p, testing::LoadFixture(hw, name));
    ASSIGN_OR_FAIL(c, std::string text,
                   internal::ReadFile(testing::FixturePath(
                       absl::StrCat("mutations/", name, ".mut"))));
    ASSIGN_OR_FAIL(c, std::vector<Mutation> muts, ParseMutations(text));
    ASSIGN_OR_FAIL(c, std::unique_ptr<SpecOracle> oracle,
                   OracleRegistry::Default().Create(name));
    TrafficConfig cfg;
    cfg.num_phvs = 50000;
    cfg.seed = 1;
    ASSIGN_OR_FAIL(c, CampaignReport r,
                   MutationCampaign(p, *oracle, cfg, muts, 2));
    if (!r.baseline.passed()) c.Fail(absl::StrCat(name, " baseline failed"));
    for (const MutationResult& m : r.results) {
      if (!m.matched()) {
        c.Fail(absl::StrCat(
            name, ": ", m.mutation.name, " ",
            m.status.ok() ? "unexpected verdict" : m.status.ToString()));
      }
    }
    caught += r.caught();
    preserved += r.preserved();
    ++programs;
  }
  if (caught < 10) c.Fail(absl::StrCat("only ", caught, " mutations caught"));
  if (c.pass) {
    c.detail = absl::StrCat(caught, " semantics-changing edits caught, ",
                            preserved, " preserving edits pass, across ",
                            programs, " programs at 50000 PHVs");
  }
  return c;
}

// Spearman rank correlation; inputs have no ties in practice, and ties
// get their average rank.
double Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (size_t i = 0; i < idx.size();) {
      size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (size_t k = i; k <= j; ++k) r[idx[k]] = (i + j) / 2.0;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// 5. The benchmark runs, passes its equality gate, shows a speedup on the
// larger shapes, and the time saved grows with pipeline size.
Check BenchmarkTrend() {
  Check c;
  struct Row {
    std::string shape;
    int cells = 0;
    BenchResult r;
  };
  std::vector<Row> rows;
  for (const std::string& shape : testing::ShapeFixtures()) {
    ASSIGN_OR_FAIL(c, Pipeline p, testing::LoadFixture(shape, shape));
    ASSIGN_OR_FAIL(c, Traffic t, RandomTraffic(p, 50000, 0));
    ASSIGN_OR_FAIL(c, BenchResult r, RunBench(p, t.phvs, t.initial_state, 5));
    rows.push_back({shape, p.depth() * p.width(), r});
    std::printf(
        "  bench %-24s cells=%-3d unopt=%8.2fms opt=%8.2fms "
        "speedup=%.3fx\n",
        shape.c_str(), p.depth() * p.width(), r.unoptimized_median_ms,
        r.optimized_median_ms, r.speedup);
  }
  for (const Row& row : rows) {
    if (row.cells >= 6 && row.r.speedup < 1.0) {
      c.Fail(
          absl::StrFormat("%s speedup %.3fx < 1.0x", row.shape, row.r.speedup));
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.cells < b.cells; });
  std::vector<double> cells;
  std::vector<double> saved;
  for (const Row& row : rows) {
    cells.push_back(row.cells);
    saved.push_back(row.r.unoptimized_median_ms - row.r.optimized_median_ms);
  }
  const double rho = Spearman(cells, saved);
  const double small = (saved[0] + saved[1] + saved[2]) / 3;
  const size_t n = saved.size();
  const double large = (saved[n - 1] + saved[n - 2] + saved[n - 3]) / 3;
  if (rho <= 0) c.Fail(absl::StrFormat("rank correlation %.3f <= 0", rho));
  if (large <= small) {
    c.Fail(absl::StrFormat("largest shapes save %.2fms, smallest %.2fms", large,
                           small));
  }
  if (c.pass) {
    c.detail = absl::StrFormat(
        "9 shapes x 50000 PHVs, equality gate ok, speedup >= 1.0x where "
        "depth*width >= 6, time saved vs size rho=%.3f (largest 3 %.2fms, "
        "smallest 3 %.2fms)",
        rho, large, small);
  }
  return c;
}

// 6. Default traffic stays in range and reproduces byte for byte.
Check TrafficConforms() {
  Check c;
  int64_t containers = 0;
  for (const auto& [hw, mc] : AllFixtures()) {
    ASSIGN_OR_FAIL(c, Pipeline p, testing::LoadFixture(hw, mc));
    ASSIGN_OR_FAIL(c, Traffic t, RandomTraffic(p, 10000, 21));
    for (const Phv& phv : t.phvs) {
      for (Value v : phv.containers) {
        ++containers;
        if (v < 0 || v > 10000) {
          c.Fail(absl::StrCat("container value ", v, " in ", hw));
        }
      }
    }
    for (Value v : t.initial_state.values()) {
      if (v < 0 || v > 10000) c.Fail(absl::StrCat("state value ", v));
    }
  }
  auto run_sim = [](const std::string& seed) {
    std::istringstream in;
    std::ostringstream out;
    std::ostringstream err;
    const int code =
        RunCli({"sim", "--hw", testing::FixturePath("hw/shape_4x5_pred_raw.hw"),
                "--alu-dir", testing::FixturePath("alus"), "--mc",
                testing::FixturePath("mc/shape_4x5_pred_raw.mc"), "--phvs",
                "2000", "--seed", seed},
               in, out, err);
    return std::make_pair(code, out.str());
  };
  const auto first = run_sim("99");
  const auto second = run_sim("99");
  const auto other = run_sim("100");
  if (first.first != 0 || first.second.empty()) {
    c.Fail("sim command failed");
  } else if (first.second != second.second) {
    c.Fail("same seed produced different traces");
  } else if (first.second == other.second) {
    c.Fail("different seeds produced identical traces");
  }
  if (c.pass) {
    c.detail = absl::StrCat(containers,
                            " containers within [0, 10000]; repeated seed "
                            "gives byte-identical sim output (",
                            first.second.size(), " bytes)");
  }
  return c;
}

// 7. The counter sees its own updates on the very next PHV.
Check CounterStateIsFresh() {
  Check c;
  constexpr int kN = 1000;
  ASSIGN_OR_FAIL(c, Pipeline p, testing::LoadFixture("counter_1x1", "counter"));
  TrafficConfig cfg;
  cfg.num_phvs = kN;
  cfg.state_init = StateAssignment{{AluCoord{0, 0}, {0}}};
  ASSIGN_OR_FAIL(
      c, Traffic t,
      GenerateTraffic(cfg, p.phv_length(), StateLayout::ForPipeline(p)));
  for (SimMode mode : {SimMode::kTickAccurate, SimMode::kSequential}) {
    ASSIGN_OR_FAIL(c, SimulationResult r,
                   Simulate(p, t.phvs, t.initial_state, mode));
    for (int i = 0; i < kN; ++i) {
      if (r.output.entries[i].phv.containers[0] != i + 1) {
        c.Fail(absl::StrCat("output ", i, " is ",
                            r.output.entries[i].phv.containers[0]));
        break;
      }
    }
    if (r.final_state.values() != std::vector<Value>{kN}) {
      c.Fail(absl::StrCat("final state ", FormatState(r.final_state)));
    }
  }
  if (c.pass) {
    c.detail = absl::StrCat("outputs 1..", kN, " and final state ", kN,
                            " in both modes");
  }
  return c;
}

}  // namespace
}  // namespace rmtsim

int main() {
  using rmtsim::Check;
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"optimizer preserves semantics", rmtsim::OptimizerPreservesSemantics},
      {"specialization is complete", rmtsim::SpecializationIsComplete},
      {"execution modes agree", rmtsim::ModesAgree},
      {"mutation suites behave", rmtsim::MutationSuitesBehave},
      {"benchmark trend", rmtsim::BenchmarkTrend},
      {"traffic conformance", rmtsim::TrafficConforms},
      {"counter state freshness", rmtsim::CounterStateIsFresh}};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Check c = criteria[i].second();
    std::printf("%s criterion %zu (%s): %s\n", c.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), c.detail.c_str());
    std::fflush(stdout);
    if (!c.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
