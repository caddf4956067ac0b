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

#include "rmtsim/simulator.h"

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "rmtsim/alu_eval.h"
#include "rmtsim/status_macros.h"

namespace rmtsim {

std::shared_ptr<const StateLayout> StateLayout::ForPipeline(const Pipeline& p) {
  auto layout = std::make_shared<StateLayout>();
  for (const Stage& stage : p.stages()) {
    for (const AluInstance& inst : stage.alus) {
      if (!inst.program->stateful()) continue;
      const size_t width = inst.program->state_vars.size();
      layout->entries_.push_back({inst.coord, layout->total_size_, width});
      layout->total_size_ += width;
    }
  }
  return layout;
}

const StateLayout::Entry* StateLayout::Find(AluCoord coord) const {
  auto it =
      std::lower_bound(entries_.begin(), entries_.end(), coord,
                       [](const Entry& e, AluCoord c) { return e.coord < c; });
  if (it == entries_.end() || it->coord != coord) return nullptr;
  return &*it;
}

StateSnapshot::StateSnapshot(std::shared_ptr<const StateLayout> layout,
                             std::vector<Value> values)
    : layout_(std::move(layout)), values_(std::move(values)) {}

StateSnapshot StateSnapshot::Zero(std::shared_ptr<const StateLayout> layout) {
  const size_t n = layout->total_size();
  return StateSnapshot(std::move(layout), std::vector<Value>(n, 0));
}

absl::StatusOr<StateSnapshot> StateSnapshot::FromAssignment(
    std::shared_ptr<const StateLayout> layout,
    const StateAssignment& assignment) {
  std::vector<Value> values(layout->total_size(), 0);
  for (const auto& [coord, vals] : assignment) {
    const StateLayout::Entry* e = layout->Find(coord);
    if (e == nullptr) {
      return absl::InvalidArgumentError(absl::StrCat(
          "state given for ", AluPath(coord), ", which is not stateful"));
    }
    if (vals.size() != e->width) {
      return absl::InvalidArgumentError(
          absl::StrCat("state for ", AluPath(coord), " has ", vals.size(),
                       " values, expected ", e->width));
    }
    std::copy(vals.begin(), vals.end(), values.begin() + e->offset);
  }
  for (const StateLayout::Entry& e : layout->entries()) {
    if (assignment.count(e.coord) == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("no initial state for ", AluPath(e.coord)));
    }
  }
  return StateSnapshot(std::move(layout), std::move(values));
}

std::span<const Value> StateSnapshot::Get(AluCoord coord) const {
  const StateLayout::Entry* e = layout_->Find(coord);
  if (e == nullptr) return {};
  return std::span<const Value>(values_).subspan(e->offset, e->width);
}

std::span<Value> StateSnapshot::Mutable(AluCoord coord) {
  const StateLayout::Entry* e = layout_->Find(coord);
  if (e == nullptr) return {};
  return std::span<Value>(values_).subspan(e->offset, e->width);
}

StateAssignment StateSnapshot::ToAssignment() const {
  StateAssignment out;
  for (const StateLayout::Entry& e : layout_->entries()) {
    out[e.coord] = std::vector<Value>(values_.begin() + e.offset,
                                      values_.begin() + e.offset + e.width);
  }
  return out;
}

bool operator==(const StateSnapshot& a, const StateSnapshot& b) {
  return a.values_ == b.values_ && *a.layout_ == *b.layout_;
}

absl::StatusOr<Machine> Machine::Create(const Pipeline& pipeline,
                                        const StateSnapshot& initial_state) {
  if (!pipeline.bound()) {
    return absl::FailedPreconditionError(
        "cannot simulate an unbound pipeline; bind machine code first");
  }
  Machine m;
  m.pipeline_ = std::make_shared<const Pipeline>(pipeline);
  m.layout_ = StateLayout::ForPipeline(*m.pipeline_);
  if (!(initial_state.layout() == *m.layout_) ||
      initial_state.values().size() != m.layout_->total_size()) {
    return absl::InvalidArgumentError(
        "initial state does not cover exactly the stateful ALUs of the "
        "pipeline");
  }
  m.state_ = initial_state.values();

  size_t max_operands = 0;
  size_t max_locals = 0;
  size_t offset = 0;
  for (const Stage& stage : m.pipeline_->stages()) {
    StageRuntime rt;
    rt.state_begin = offset;
    for (const AluInstance& inst : stage.alus) {
      AluRuntime alu;
      alu.program = &inst.executable();
      alu.bindings = inst.executable_bindings();
      for (const InputMux& mux : inst.input_muxes) {
        alu.input_ctrl.push_back(mux.ctrl);
      }
      alu.state_offset = offset;
      alu.state_width = alu.program->state_vars.size();
      offset += alu.state_width;
      max_operands = std::max(max_operands, alu.input_ctrl.size());
      max_locals = std::max(max_locals, alu.program->locals.size());
      rt.alus.push_back(std::move(alu));
    }
    for (const OutputMux& mux : stage.output_muxes) {
      rt.output_ctrl.push_back(mux.ctrl);
    }
    rt.state_end = offset;
    m.stages_.push_back(std::move(rt));
  }
  m.operands_.assign(max_operands, 0);
  m.outputs_.assign(static_cast<size_t>(m.pipeline_->width()), 0);
  m.locals_.assign(max_locals, 0);
  m.slots_.resize(static_cast<size_t>(m.pipeline_->depth()));
  return m;
}

absl::Status Machine::Inject(Phv phv) {
  if (static_cast<int>(phv.containers.size()) != pipeline_->phv_length()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "PHV has ", phv.containers.size(), " containers, pipeline expects ",
        pipeline_->phv_length()));
  }
  if (slots_[0].has_value()) {
    return absl::FailedPreconditionError(
        "stage 0 already holds a PHV; step before injecting again");
  }
  InFlight f;
  f.sequence = next_sequence_++;
  f.entry_tick = tick_;
  f.containers = std::move(phv.containers);
  f.exit_state.assign(layout_->total_size(), 0);
  slots_[0] = std::move(f);
  return absl::OkStatus();
}

void Machine::ExecuteStage(int s, InFlight& phv) {
  const StageRuntime& rt = stages_[s];
  for (size_t a = 0; a < rt.alus.size(); ++a) {
    const AluRuntime& alu = rt.alus[a];
    const size_t n = alu.input_ctrl.size();
    for (size_t k = 0; k < n; ++k) {
      operands_[k] = phv.containers[alu.input_ctrl[k]];
    }
    outputs_[a] = EvalAluUnchecked(
        *alu.program, alu.bindings, std::span<const Value>(operands_.data(), n),
        std::span<Value>(state_.data() + alu.state_offset, alu.state_width),
        locals_);
  }
  for (size_t c = 0; c < rt.output_ctrl.size(); ++c) {
    phv.containers[c] = outputs_[rt.output_ctrl[c]];
  }
  std::copy(state_.begin() + rt.state_begin, state_.begin() + rt.state_end,
            phv.exit_state.begin() + rt.state_begin);
}

std::optional<ExitRecord> Machine::Step() {
  std::optional<ExitRecord> exit;
  const int depth = static_cast<int>(slots_.size());
  for (int s = depth - 1; s >= 0; --s) {
    if (!slots_[s].has_value()) continue;
    ExecuteStage(s, *slots_[s]);
    if (s == depth - 1) {
      InFlight& f = *slots_[s];
      exit = ExitRecord{f.sequence, f.entry_tick, tick_,
                        Phv{std::move(f.containers)},
                        StateSnapshot(layout_, std::move(f.exit_state))};
    } else {
      slots_[s + 1] = std::move(slots_[s]);
    }
    slots_[s].reset();
  }
  ++tick_;
  return exit;
}

bool Machine::Idle() const {
  return std::none_of(slots_.begin(), slots_.end(),
                      [](const auto& s) { return s.has_value(); });
}

std::vector<bool> Machine::Occupancy() const {
  std::vector<bool> out;
  for (const auto& s : slots_) out.push_back(s.has_value());
  return out;
}

StateSnapshot Machine::CurrentState() const {
  return StateSnapshot(layout_, state_);
}

absl::StatusOr<SimulationResult> Simulate(const Pipeline& pipeline,
                                          std::span<const Phv> phvs,
                                          const StateSnapshot& initial_state,
                                          SimMode mode) {
  RMTSIM_ASSIGN_OR_RETURN(Machine m, Machine::Create(pipeline, initial_state));
  for (size_t i = 0; i < phvs.size(); ++i) {
    if (static_cast<int>(phvs[i].containers.size()) != pipeline.phv_length()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "PHV ", i, " has ", phvs[i].containers.size(),
          " containers, pipeline expects ", pipeline.phv_length()));
    }
  }
  SimulationResult result;
  result.input.role = TraceRole::kInput;
  result.output.role = TraceRole::kOutput;
  result.input.entries.reserve(phvs.size());
  result.output.entries.reserve(phvs.size());
  auto record_exit = [&result](std::optional<ExitRecord> exit) {
    if (!exit.has_value()) return;
    result.output.entries.push_back(
        {exit->exit_tick, std::move(exit->phv), std::move(exit->state)});
  };
  for (const Phv& phv : phvs) {
    result.input.entries.push_back({m.tick(), phv, m.CurrentState()});
    RMTSIM_RETURN_IF_ERROR(m.Inject(phv));
    if (mode == SimMode::kTickAccurate) {
      record_exit(m.Step());
    } else {
      for (int s = 0; s < pipeline.depth(); ++s) record_exit(m.Step());
    }
  }
  while (!m.Idle()) record_exit(m.Step());
  if (result.output.entries.size() != result.input.entries.size()) {
    return absl::InternalError(
        absl::StrCat("simulation produced ", result.output.entries.size(),
                     " outputs for ", result.input.entries.size(), " inputs"));
  }
  result.final_state = m.CurrentState();
  return result;
}

}  // namespace rmtsim
