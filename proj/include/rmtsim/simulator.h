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

// Tick-level execution of a bound pipeline.
//
// Tick-accurate mode: at tick i PHV i enters stage 0. Within a tick the
// stages execute last-first, so every in-flight PHV moves one stage per tick
// and each PHV sees the state left by all earlier PHVs at that stage. PHV i
// leaves after stage depth-1, at tick i + depth - 1.
//
// Sequential mode: PHV i runs through all stages before PHV i+1 enters. It
// enters at tick i * depth.
//
// Input-trace snapshots hold the whole pipeline state at the start of the
// PHV's entry tick. Output-trace snapshots hold, for every stateful ALU, the
// state it had right after processing that PHV. Output snapshots therefore
// match between the two modes; input snapshots of later stages do not.

#ifndef RMTSIM_SIMULATOR_H_
#define RMTSIM_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rmtsim/pipeline.h"
#include "rmtsim/value.h"

namespace rmtsim {

struct Phv {
  std::vector<Value> containers;

  friend bool operator==(const Phv&, const Phv&) = default;
};

// Where each stateful ALU's variables live in a flat state vector.
class StateLayout {
 public:
  struct Entry {
    AluCoord coord;
    size_t offset = 0;
    size_t width = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static std::shared_ptr<const StateLayout> ForPipeline(const Pipeline& p);

  const std::vector<Entry>& entries() const { return entries_; }
  size_t total_size() const { return total_size_; }
  const Entry* Find(AluCoord coord) const;

  friend bool operator==(const StateLayout& a, const StateLayout& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  size_t total_size_ = 0;
};

// Explicit per-ALU state, e.g. read from a file.
using StateAssignment = std::map<AluCoord, std::vector<Value>>;

class StateSnapshot {
 public:
  StateSnapshot() = default;
  StateSnapshot(std::shared_ptr<const StateLayout> layout,
                std::vector<Value> values);

  static StateSnapshot Zero(std::shared_ptr<const StateLayout> layout);

  // Fails with kInvalidArgument unless `assignment` names exactly the
  // layout's ALUs with the right number of values each.
  static absl::StatusOr<StateSnapshot> FromAssignment(
      std::shared_ptr<const StateLayout> layout,
      const StateAssignment& assignment);

  // Empty span for a coordinate without state.
  std::span<const Value> Get(AluCoord coord) const;
  std::span<Value> Mutable(AluCoord coord);

  const StateLayout& layout() const { return *layout_; }
  const std::shared_ptr<const StateLayout>& layout_ptr() const {
    return layout_;
  }
  const std::vector<Value>& values() const { return values_; }
  std::vector<Value>& mutable_values() { return values_; }

  StateAssignment ToAssignment() const;

  friend bool operator==(const StateSnapshot& a, const StateSnapshot& b);

 private:
  std::shared_ptr<const StateLayout> layout_ =
      std::make_shared<const StateLayout>();
  std::vector<Value> values_;
};

struct TraceEntry {
  int64_t tick = 0;
  Phv phv;
  StateSnapshot state;
};

enum class TraceRole { kInput, kOutput };

struct Trace {
  TraceRole role = TraceRole::kInput;
  std::vector<TraceEntry> entries;
};

enum class SimMode { kTickAccurate, kSequential };

struct SimulationResult {
  Trace input;
  Trace output;
  StateSnapshot final_state;
};

// Errors: kFailedPrecondition for an unbound pipeline; kInvalidArgument for
// a PHV of the wrong length or an initial state that does not cover exactly
// the pipeline's stateful ALUs.
absl::StatusOr<SimulationResult> Simulate(const Pipeline& pipeline,
                                          std::span<const Phv> phvs,
                                          const StateSnapshot& initial_state,
                                          SimMode mode);

struct ExitRecord {
  uint64_t sequence = 0;
  int64_t entry_tick = 0;
  int64_t exit_tick = 0;
  Phv phv;
  StateSnapshot state;
};

// Single-tick stepping over a private copy of the pipeline state. At most
// one PHV occupies each stage.
class Machine {
 public:
  static absl::StatusOr<Machine> Create(const Pipeline& pipeline,
                                        const StateSnapshot& initial_state);

  // Queues `phv` to enter stage 0 on the next Step. Fails if it has the
  // wrong length or the previous injection has not been stepped yet.
  absl::Status Inject(Phv phv);

  // Advances one tick. Returns the PHV that left the last stage, if any.
  std::optional<ExitRecord> Step();

  int64_t tick() const { return tick_; }
  bool Idle() const;
  // occupancy()[k] is true when a PHV waits to execute at stage k.
  std::vector<bool> Occupancy() const;
  StateSnapshot CurrentState() const;

 private:
  struct InFlight {
    uint64_t sequence = 0;
    int64_t entry_tick = 0;
    std::vector<Value> containers;
    std::vector<Value> exit_state;
  };
  struct AluRuntime {
    const AluProgram* program = nullptr;
    std::span<const CodeValue> bindings;
    std::vector<int> input_ctrl;
    size_t state_offset = 0;
    size_t state_width = 0;
  };
  struct StageRuntime {
    std::vector<AluRuntime> alus;
    std::vector<int> output_ctrl;
    size_t state_begin = 0;
    size_t state_end = 0;
  };

  Machine() = default;
  void ExecuteStage(int s, InFlight& phv);

  std::shared_ptr<const Pipeline> pipeline_;
  std::shared_ptr<const StateLayout> layout_;
  std::vector<StageRuntime> stages_;
  std::vector<Value> state_;
  std::vector<std::optional<InFlight>> slots_;
  std::vector<Value> operands_;
  std::vector<Value> outputs_;
  std::vector<Value> locals_;
  int64_t tick_ = 0;
  uint64_t next_sequence_ = 0;
};

}  // namespace rmtsim

#endif  // RMTSIM_SIMULATOR_H_
