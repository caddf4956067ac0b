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

#include "rmtsim/oracle.h"

#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "rmtsim/alu_eval.h"

namespace rmtsim {
namespace {

class CounterOracle : public SpecOracle {
 public:
  absl::string_view name() const override { return "counter"; }
  std::vector<StateBinding> state_schema() const override {
    return {{"count", {0, 0}, 0}};
  }
  int phv_length() const override { return 1; }
  Phv Transfer(const Phv&, std::span<Value> state) const override {
    state[0] = WrapAdd(state[0], 1);
    return Phv{{state[0]}};
  }
};

class IdentityOracle : public SpecOracle {
 public:
  absl::string_view name() const override { return "identity"; }
  std::vector<StateBinding> state_schema() const override { return {}; }
  Phv Transfer(const Phv& in, std::span<Value>) const override { return in; }
};

class SamplingOracle : public SpecOracle {
 public:
  static constexpr Value kWrapAbove = 8;

  absl::string_view name() const override { return "sampling"; }
  std::vector<StateBinding> state_schema() const override {
    return {{"count", {0, 0}, 0}, {"flag", {1, 0}, 0}};
  }
  int phv_length() const override { return 2; }
  Phv Transfer(const Phv&, std::span<Value> state) const override {
    state[0] = state[0] > kWrapAbove ? 0 : WrapAdd(state[0], 1);
    state[1] = state[0] == 0 ? 1 : 0;
    return Phv{{state[1], state[1]}};
  }
};

class HeavyHitterOracle : public SpecOracle {
 public:
  static constexpr Value kThreshold = 5000;

  absl::string_view name() const override { return "heavy_hitter"; }
  std::vector<StateBinding> state_schema() const override {
    return {{"hits", {0, 0}, 0}, {"bytes", {0, 0}, 1}};
  }
  int phv_length() const override { return 2; }
  Phv Transfer(const Phv& in, std::span<Value> state) const override {
    if (in.containers[0] > kThreshold) {
      state[0] = WrapAdd(state[0], 1);
      state[1] = WrapAdd(state[1], in.containers[0]);
    }
    return Phv{{state[0], state[0]}};
  }
};

class PipelineOracle : public SpecOracle {
 public:
  explicit PipelineOracle(const Pipeline& p)
      : pipeline_(std::make_shared<const Pipeline>(p)) {
    for (const Stage& stage : pipeline_->stages()) {
      for (const AluInstance& inst : stage.alus) {
        const AluProgram& prog = inst.executable();
        offsets_.push_back(schema_.size());
        for (size_t i = 0; i < prog.state_vars.size(); ++i) {
          schema_.push_back(
              {absl::StrCat(AluPath(inst.coord), ".", prog.state_vars[i]),
               inst.coord, static_cast<int>(i)});
        }
      }
    }
  }

  absl::string_view name() const override { return "pipeline"; }
  std::vector<StateBinding> state_schema() const override { return schema_; }
  int phv_length() const override { return pipeline_->phv_length(); }

  Phv Transfer(const Phv& in, std::span<Value> state) const override {
    Phv cur = in;
    size_t alu_index = 0;
    for (const Stage& stage : pipeline_->stages()) {
      std::vector<Value> outputs;
      for (const AluInstance& inst : stage.alus) {
        const AluProgram& prog = inst.executable();
        std::vector<Value> operands;
        for (const InputMux& mux : inst.input_muxes) {
          operands.push_back(cur.containers[mux.ctrl]);
        }
        std::vector<Value> locals(prog.locals.size());
        outputs.push_back(EvalAluUnchecked(
            prog, inst.executable_bindings(), operands,
            state.subspan(offsets_[alu_index], prog.state_vars.size()),
            locals));
        ++alu_index;
      }
      for (const OutputMux& mux : stage.output_muxes) {
        cur.containers[mux.container] = outputs[mux.ctrl];
      }
    }
    return cur;
  }

 private:
  std::shared_ptr<const Pipeline> pipeline_;
  std::vector<StateBinding> schema_;
  std::vector<size_t> offsets_;
};

}  // namespace

absl::Status ValidateOracle(const SpecOracle& oracle,
                            const Pipeline& pipeline) {
  if (oracle.phv_length() != 0 &&
      oracle.phv_length() != pipeline.phv_length()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "schema mismatch: oracle '", oracle.name(), "' expects PHV length ",
        oracle.phv_length(), ", pipeline has ", pipeline.phv_length()));
  }
  std::set<std::pair<AluCoord, int>> seen;
  for (const StateBinding& b : oracle.state_schema()) {
    const bool in_grid = b.coord.stage >= 0 &&
                         b.coord.stage < pipeline.depth() && b.coord.alu >= 0 &&
                         b.coord.alu < pipeline.width();
    if (!in_grid || !pipeline.alu(b.coord).program->stateful() || b.index < 0 ||
        b.index >= static_cast<int>(
                       pipeline.alu(b.coord).program->state_vars.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("schema mismatch: oracle '", oracle.name(), "' maps '",
                       b.var, "' to ", AluPath(b.coord), "[", b.index,
                       "], which is not a state variable of the pipeline"));
    }
    if (!seen.insert({b.coord, b.index}).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "schema mismatch: oracle '", oracle.name(),
          "' maps two variables to ", AluPath(b.coord), "[", b.index, "]"));
    }
  }
  return absl::OkStatus();
}

OracleRegistry& OracleRegistry::Default() {
  static OracleRegistry* registry = [] {
    auto* r = new OracleRegistry();
    RegisterBuiltinOracles(*r);
    return r;
  }();
  return *registry;
}

absl::Status OracleRegistry::Register(std::string name, Factory factory) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!factories_.emplace(name, std::move(factory)).second) {
    return absl::AlreadyExistsError(
        absl::StrCat("oracle '", name, "' is already registered"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::unique_ptr<SpecOracle>> OracleRegistry::Create(
    absl::string_view name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = factories_.find(name);
  if (it == factories_.end()) {
    std::vector<std::string> names;
    for (const auto& [n, f] : factories_) names.push_back(n);
    return absl::NotFoundError(
        absl::StrCat("unknown oracle '", name,
                     "'; registered oracles: ", absl::StrJoin(names, ", ")));
  }
  return it->second();
}

std::vector<std::string> OracleRegistry::Names() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string> names;
  for (const auto& [n, f] : factories_) names.push_back(n);
  return names;
}

void RegisterBuiltinOracles(OracleRegistry& registry) {
  (void)registry.Register("counter",
                          [] { return std::make_unique<CounterOracle>(); });
  (void)registry.Register("identity",
                          [] { return std::make_unique<IdentityOracle>(); });
  (void)registry.Register("sampling",
                          [] { return std::make_unique<SamplingOracle>(); });
  (void)registry.Register("heavy_hitter",
                          [] { return std::make_unique<HeavyHitterOracle>(); });
}

std::unique_ptr<SpecOracle> MakePipelineOracle(const Pipeline& pipeline) {
  return std::make_unique<PipelineOracle>(pipeline);
}

}  // namespace rmtsim
