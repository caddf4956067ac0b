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

#include "rmtsim/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "rmtsim/bench.h"
#include "rmtsim/fuzzer.h"
#include "rmtsim/hardware_spec.h"
#include "rmtsim/optimizer.h"
#include "rmtsim/oracle.h"
#include "rmtsim/pipeline.h"
#include "rmtsim/simulator.h"
#include "rmtsim/status_macros.h"
#include "rmtsim/trace_io.h"
#include "rmtsim/traffic.h"
#include "src/file_util.h"

namespace rmtsim {
namespace {

namespace fs = std::filesystem;

// Options shared by every subcommand.
struct PipelineFlags {
  std::string hw;
  std::vector<std::string> alu_dirs;
  std::vector<std::string> alu_files;
  std::string mc;
  bool optimize = false;
};

struct TrafficFlags {
  int64_t phvs = 0;
  uint64_t seed = 0;
  std::string state_init = "random";
  Value container_min = kDefaultContainerMin;
  Value container_max = kDefaultContainerMax;
};

void AddPipelineFlags(CLI::App* cmd, PipelineFlags* f, bool mc_required) {
  cmd->add_option("--hw", f->hw, "Hardware spec file")->required();
  cmd->add_option("--alu-dir", f->alu_dirs,
                  "Directory searched for <name>.alu (repeatable)");
  cmd->add_option("--alu", f->alu_files, "Explicit ALU file (repeatable)");
  CLI::Option* mc =
      cmd->add_option("--mc", f->mc, "Machine code file, or - for stdin");
  if (mc_required) mc->required();
  cmd->add_flag("--optimize", f->optimize,
                "Specialize ALU bodies for the machine code");
}

void AddTrafficFlags(CLI::App* cmd, TrafficFlags* f, int64_t default_phvs) {
  f->phvs = default_phvs;
  cmd->add_option("--phvs", f->phvs, "Number of PHVs")->capture_default_str();
  cmd->add_option("--seed", f->seed, "Traffic seed")->capture_default_str();
  cmd->add_option("--state-init", f->state_init,
                  "random, zero, or a state file")
      ->capture_default_str();
  cmd->add_option("--container-min", f->container_min,
                  "Smallest container value")
      ->capture_default_str();
  cmd->add_option("--container-max", f->container_max,
                  "Largest container value")
      ->capture_default_str();
}

absl::StatusOr<std::string> ReadInput(const std::string& path,
                                      std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  return internal::ReadFile(path);
}

std::vector<fs::path> SearchPath(const PipelineFlags& f) {
  std::vector<fs::path> dirs(f.alu_dirs.begin(), f.alu_dirs.end());
  if (const char* env = std::getenv(kAluPathEnv); env != nullptr) {
    for (absl::string_view d : absl::StrSplit(env, ':', absl::SkipEmpty())) {
      dirs.emplace_back(std::string(d));
    }
  }
  return dirs;
}

absl::StatusOr<Pipeline> LoadPipeline(const PipelineFlags& f,
                                      std::istream& in) {
  if (f.optimize && f.mc.empty()) {
    return absl::InvalidArgumentError("optimization requires machine code");
  }
  RMTSIM_ASSIGN_OR_RETURN(HardwareSpec spec, ParseHardwareSpecFile(f.hw));
  std::vector<fs::path> files(f.alu_files.begin(), f.alu_files.end());
  RMTSIM_ASSIGN_OR_RETURN(AluLibrary alus,
                          LoadAlus(spec, SearchPath(f), files));
  RMTSIM_ASSIGN_OR_RETURN(Pipeline pipeline, BuildPipeline(spec, alus));
  if (f.mc.empty()) return pipeline;
  RMTSIM_ASSIGN_OR_RETURN(std::string source, ReadInput(f.mc, in));
  absl::StatusOr<MachineCode> mc = ParseMachineCode(source);
  if (!mc.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(
        f.mc == "-" ? "<stdin>" : f.mc, ": ", mc.status().message()));
  }
  RMTSIM_ASSIGN_OR_RETURN(pipeline, Bind(pipeline, *mc));
  if (f.optimize) {
    RMTSIM_ASSIGN_OR_RETURN(pipeline, Optimize(pipeline));
  }
  return pipeline;
}

absl::StatusOr<TrafficConfig> MakeTrafficConfig(const TrafficFlags& f,
                                                const Pipeline& pipeline) {
  TrafficConfig cfg;
  cfg.num_phvs = f.phvs;
  cfg.seed = f.seed;
  cfg.container_min = f.container_min;
  cfg.container_max = f.container_max;
  if (f.state_init == "random") {
    cfg.state_init = RandomStateInit{};
  } else if (f.state_init == "zero") {
    cfg.state_init =
        StateSnapshot::Zero(StateLayout::ForPipeline(pipeline)).ToAssignment();
  } else {
    RMTSIM_ASSIGN_OR_RETURN(std::string source,
                            internal::ReadFile(f.state_init));
    absl::StatusOr<StateAssignment> state = ParseStateAssignment(source);
    if (!state.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(f.state_init, ": ", state.status().message()));
    }
    cfg.state_init = *std::move(state);
  }
  if (cfg.num_phvs < 1) {
    return absl::InvalidArgumentError(
        "no PHVs requested (--phvs must be >= 1)");
  }
  return cfg;
}

int ReportError(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return status.code() == absl::StatusCode::kInternal ? kExitInternal
                                                      : kExitUsage;
}

absl::Status WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    return absl::InvalidArgumentError(absl::StrCat("cannot write ", path));
  f << text;
  if (!f)
    return absl::InternalError(absl::StrCat("write to ", path, " failed"));
  return absl::OkStatus();
}

struct GenFlags {
  PipelineFlags p;
  bool catalog = false;
  std::optional<uint64_t> random_mc;
};

int RunGen(const GenFlags& f, std::istream& in, std::ostream& out,
           std::ostream& err) {
  absl::StatusOr<Pipeline> p = LoadPipeline(f.p, in);
  if (!p.ok()) return ReportError(err, p.status());
  if (f.catalog) {
    out << DescribeCatalog(p->catalog());
  } else if (f.random_mc.has_value()) {
    out << SerializeMachineCode(RandomMachineCode(p->catalog(), *f.random_mc));
  } else {
    out << Describe(*p);
  }
  return kExitPass;
}

struct SimFlags {
  PipelineFlags p;
  TrafficFlags t;
  std::string mode = "tick";
  std::string out_path;
  bool json = false;
};

int RunSim(const SimFlags& f, std::istream& in, std::ostream& out,
           std::ostream& err) {
  absl::StatusOr<Pipeline> p = LoadPipeline(f.p, in);
  if (!p.ok()) return ReportError(err, p.status());
  absl::StatusOr<TrafficConfig> cfg = MakeTrafficConfig(f.t, *p);
  if (!cfg.ok()) return ReportError(err, cfg.status());
  absl::StatusOr<Traffic> traffic =
      GenerateTraffic(*cfg, p->phv_length(), StateLayout::ForPipeline(*p));
  if (!traffic.ok()) return ReportError(err, traffic.status());
  const SimMode mode =
      f.mode == "sequential" ? SimMode::kSequential : SimMode::kTickAccurate;
  absl::StatusOr<SimulationResult> result =
      Simulate(*p, traffic->phvs, traffic->initial_state, mode);
  if (!result.ok()) return ReportError(err, result.status());

  std::string text;
  if (f.json) {
    text = SimulationResultToJson(*result) + "\n";
  } else {
    text = absl::StrCat("input trace (", result->input.entries.size(),
                        " entries)\n", FormatTrace(result->input),
                        "output trace (", result->output.entries.size(),
                        " entries)\n", FormatTrace(result->output),
                        "final state=", FormatState(result->final_state), "\n");
  }
  if (f.out_path.empty()) {
    out << text;
  } else if (absl::Status s = WriteFile(f.out_path, text); !s.ok()) {
    return ReportError(err, s);
  }
  return kExitPass;
}

struct FuzzFlags {
  PipelineFlags p;
  TrafficFlags t;
  std::string oracle;
  std::string mutations;
  std::string results;
  int jobs = 1;
  bool all_failures = false;
};

// Shortest fuzz invocation that reaches the last reported failure.
std::string ReplayCommand(const FuzzFlags& f, int64_t phvs) {
  std::string cmd = absl::StrCat("rmtsim fuzz --hw ", f.p.hw);
  for (const std::string& d : f.p.alu_dirs)
    absl::StrAppend(&cmd, " --alu-dir ", d);
  for (const std::string& a : f.p.alu_files)
    absl::StrAppend(&cmd, " --alu ", a);
  absl::StrAppend(&cmd, " --mc ", f.p.mc);
  if (f.p.optimize) absl::StrAppend(&cmd, " --optimize");
  absl::StrAppend(&cmd, " --oracle ", f.oracle, " --seed ", f.t.seed,
                  " --phvs ", phvs);
  if (f.t.state_init != "random") {
    absl::StrAppend(&cmd, " --state-init ", f.t.state_init);
  }
  if (f.t.container_min != kDefaultContainerMin) {
    absl::StrAppend(&cmd, " --container-min ", f.t.container_min);
  }
  if (f.t.container_max != kDefaultContainerMax) {
    absl::StrAppend(&cmd, " --container-max ", f.t.container_max);
  }
  return cmd;
}

int RunFuzz(const FuzzFlags& f, std::istream& in, std::ostream& out,
            std::ostream& err) {
  absl::StatusOr<std::unique_ptr<SpecOracle>> oracle =
      OracleRegistry::Default().Create(f.oracle);
  if (!oracle.ok()) return ReportError(err, oracle.status());
  absl::StatusOr<Pipeline> p = LoadPipeline(f.p, in);
  if (!p.ok()) return ReportError(err, p.status());
  absl::StatusOr<TrafficConfig> cfg = MakeTrafficConfig(f.t, *p);
  if (!cfg.ok()) return ReportError(err, cfg.status());

  if (!f.mutations.empty()) {
    absl::StatusOr<std::string> source = internal::ReadFile(f.mutations);
    if (!source.ok()) return ReportError(err, source.status());
    absl::StatusOr<std::vector<Mutation>> mutations = ParseMutations(*source);
    if (!mutations.ok()) {
      return ReportError(err,
                         absl::InvalidArgumentError(absl::StrCat(
                             f.mutations, ": ", mutations.status().message())));
    }
    absl::StatusOr<CampaignReport> report =
        MutationCampaign(*p, **oracle, *cfg, *mutations, f.jobs);
    if (!report.ok()) return ReportError(err, report.status());
    out << FormatCampaignTable(*report);
    if (!f.results.empty()) {
      if (absl::Status s = WriteFile(f.results, CampaignToJson(*report) + "\n");
          !s.ok()) {
        return ReportError(err, s);
      }
    }
    return report->ok() ? kExitPass : kExitFail;
  }

  FuzzOptions options;
  options.collect_all = f.all_failures;
  absl::StatusOr<Verdict> verdict = FuzzTest(*p, **oracle, *cfg, options);
  if (!verdict.ok()) return ReportError(err, verdict.status());
  if (verdict->passed()) {
    out << "PASS oracle=" << f.oracle << " phvs=" << verdict->phvs_checked
        << " seed=" << verdict->seed << "\n";
    return kExitPass;
  }
  out << "FAIL oracle=" << f.oracle << " phvs_checked=" << verdict->phvs_checked
      << " seed=" << verdict->seed << " failures=" << verdict->failures.size()
      << "\n";
  for (const Counterexample& cx : verdict->failures) {
    out << FormatCounterexample(cx);
  }
  out << "replay: " << ReplayCommand(f, verdict->failures.back().index + 1)
      << "\n";
  return kExitFail;
}

struct BenchFlags {
  PipelineFlags p;
  TrafficFlags t;
  int repeat = 3;
};

int RunBenchCommand(const BenchFlags& f, std::istream& in, std::ostream& out,
                    std::ostream& err) {
  if (f.p.optimize) {
    return ReportError(
        err, absl::InvalidArgumentError("bench always runs both variants; drop "
                                        "--optimize"));
  }
  absl::StatusOr<Pipeline> p = LoadPipeline(f.p, in);
  if (!p.ok()) return ReportError(err, p.status());
  absl::StatusOr<TrafficConfig> cfg = MakeTrafficConfig(f.t, *p);
  if (!cfg.ok()) return ReportError(err, cfg.status());
  if (f.repeat < 1) {
    return ReportError(err,
                       absl::InvalidArgumentError("--repeat must be >= 1"));
  }
  absl::StatusOr<Traffic> traffic =
      GenerateTraffic(*cfg, p->phv_length(), StateLayout::ForPipeline(*p));
  if (!traffic.ok()) return ReportError(err, traffic.status());
  absl::StatusOr<BenchResult> result =
      RunBench(*p, traffic->phvs, traffic->initial_state, f.repeat);
  if (!result.ok()) return ReportError(err, result.status());
  out << "pipeline depth=" << p->depth() << " width=" << p->width() << "\n"
      << FormatBenchTable(*result);
  return kExitPass;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Instruction-level simulator and fuzzer for RMT-style switch "
      "pipelines",
      "rmtsim"};
  app.require_subcommand(1);

  GenFlags gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Build a pipeline and describe it");
  AddPipelineFlags(gen_cmd, &gen.p, /*mc_required=*/false);
  gen_cmd->add_flag("--catalog", gen.catalog,
                    "List every machine-code slot with its range");
  gen_cmd->add_option("--random-mc", gen.random_mc,
                      "Print random in-range machine code for this seed");

  SimFlags sim;
  CLI::App* sim_cmd =
      app.add_subcommand("sim", "Simulate random traffic and print traces");
  AddPipelineFlags(sim_cmd, &sim.p, /*mc_required=*/true);
  AddTrafficFlags(sim_cmd, &sim.t, 10);
  sim_cmd->add_option("--mode", sim.mode, "tick or sequential")
      ->check(CLI::IsMember({"tick", "sequential"}))
      ->capture_default_str();
  sim_cmd->add_option("--out", sim.out_path, "Write traces to this file");
  sim_cmd->add_flag("--json", sim.json, "Emit JSON instead of text");

  FuzzFlags fuzz;
  CLI::App* fuzz_cmd = app.add_subcommand(
      "fuzz", "Check the pipeline against a specification oracle");
  AddPipelineFlags(fuzz_cmd, &fuzz.p, /*mc_required=*/true);
  AddTrafficFlags(fuzz_cmd, &fuzz.t, 50000);
  fuzz_cmd->add_option("--oracle", fuzz.oracle, "Registered oracle name")
      ->required();
  fuzz_cmd->add_option("--mutations", fuzz.mutations,
                       "Run a mutation campaign from this file");
  fuzz_cmd->add_option("--results", fuzz.results,
                       "Write campaign results as JSON");
  fuzz_cmd->add_option("--jobs", fuzz.jobs, "Campaign worker threads")
      ->capture_default_str();
  fuzz_cmd->add_flag("--all-failures", fuzz.all_failures,
                     "Report every mismatch instead of the first");

  BenchFlags bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Time unoptimized against optimized simulation");
  AddPipelineFlags(bench_cmd, &bench.p, /*mc_required=*/true);
  AddTrafficFlags(bench_cmd, &bench.t, 50000);
  bench_cmd->add_option("--repeat", bench.repeat, "Runs per variant")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return RunGen(gen, in, out, err);
    if (sim_cmd->parsed()) return RunSim(sim, in, out, err);
    if (fuzz_cmd->parsed()) return RunFuzz(fuzz, in, out, err);
    if (bench_cmd->parsed()) return RunBenchCommand(bench, in, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace rmtsim
