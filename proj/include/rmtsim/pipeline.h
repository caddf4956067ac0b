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

// Executable pipeline IR: a depth x width grid of ALU instances joined to
// the PHV by input and output multiplexers.
//
// A Pipeline is a value. BuildPipeline returns an unbound pipeline whose
// catalog lists every configurable point; Bind applies machine code and
// returns a new, bound pipeline; Optimize (optimizer.h) specializes the ALU
// bodies of a bound pipeline.
//
// Machine-code names:
//   ALU holes:        stage_{s}_alu_{a}_{construct}_{ordinal}
//   input muxes:      stage_{s}_alu_{a}_input_mux_{k}_ctrl   in [0, phv_length)
//   output muxes:     stage_{s}_output_mux_{c}_ctrl          in [0, width)

#ifndef RMTSIM_PIPELINE_H_
#define RMTSIM_PIPELINE_H_

#include <compare>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rmtsim/alu_program.h"
#include "rmtsim/hardware_spec.h"
#include "rmtsim/machine_code.h"

namespace rmtsim {

struct AluCoord {
  int stage = 0;
  int alu = 0;

  friend auto operator<=>(const AluCoord&, const AluCoord&) = default;
};

// "stage_{s}_alu_{a}".
std::string AluPath(AluCoord coord);

struct InputMux {
  int operand = 0;
  int fanin = 0;
  std::string ctrl_name;
  // Selected PHV container; -1 until bound.
  int ctrl = -1;
};

struct OutputMux {
  int container = 0;
  int fanin = 0;
  std::string ctrl_name;
  // Selected ALU of the stage; -1 until bound.
  int ctrl = -1;
};

struct AluInstance {
  AluCoord coord;
  std::shared_ptr<const AluProgram> program;
  // Hole-free body produced by Optimize; null otherwise.
  std::shared_ptr<const AluProgram> specialized;
  std::vector<std::string> slot_names;
  std::vector<InputMux> input_muxes;
  // Dense hole values, indexed like program->hole_slots. Empty until bound.
  std::vector<CodeValue> bindings;

  const AluProgram& executable() const {
    return specialized ? *specialized : *program;
  }
  // Bindings that go with executable().
  std::span<const CodeValue> executable_bindings() const {
    if (specialized) return {};
    return bindings;
  }
};

struct Stage {
  int index = 0;
  std::vector<AluInstance> alus;
  // One per PHV container.
  std::vector<OutputMux> output_muxes;
};

class Pipeline {
 public:
  const HardwareSpec& spec() const { return spec_; }
  int depth() const { return spec_.depth; }
  int width() const { return spec_.width; }
  int phv_length() const { return spec_.phv_length; }

  const std::vector<Stage>& stages() const { return stages_; }
  const AluInstance& alu(AluCoord c) const {
    return stages_[c.stage].alus[c.alu];
  }
  const SlotCatalog& catalog() const { return catalog_; }
  bool bound() const { return bound_; }
  bool optimized() const { return optimized_; }

  // Machine code the pipeline was bound with, in catalog order.
  const MachineCode& machine_code() const { return machine_code_; }

  // Stateful instances in (stage, alu) order.
  std::vector<AluCoord> StatefulCoords() const;

 private:
  friend absl::StatusOr<Pipeline> BuildPipeline(const HardwareSpec& spec,
                                                const AluLibrary& alus);
  friend absl::StatusOr<Pipeline> Bind(const Pipeline& pipeline,
                                       const MachineCode& mc);
  friend absl::StatusOr<Pipeline> Optimize(const Pipeline& pipeline);

  HardwareSpec spec_;
  std::vector<Stage> stages_;
  SlotCatalog catalog_;
  MachineCode machine_code_;
  bool bound_ = false;
  bool optimized_ = false;
};

// Fails with kNotFound ("unknown ALU") for a name missing from `alus` and
// kInvalidArgument when an ALU needs more operands than the PHV has.
absl::StatusOr<Pipeline> BuildPipeline(const HardwareSpec& spec,
                                       const AluLibrary& alus);

// Returns a bound copy. Any catalog diagnostic fails the bind with
// kFailedPrecondition; the message lists every diagnostic. Rebinding a bound
// or optimized pipeline starts again from the unspecialized ALU bodies.
absl::StatusOr<Pipeline> Bind(const Pipeline& pipeline, const MachineCode& mc);

// Human-readable listing of stages, ALU bodies and mux wiring. Holes show
// their machine-code name, plus the value once bound; optimized pipelines
// show the specialized bodies.
std::string Describe(const Pipeline& pipeline);

// One line per catalog entry: "<name> [0, <upper>) <kind>".
std::string DescribeCatalog(const SlotCatalog& catalog);

// Data-flow edge of the pipeline graph. Nodes are PHV containers entering a
// stage, ALUs and output muxes. `from_stage`/`to_stage` give the stage each
// endpoint belongs to; a container written by stage s's output mux belongs
// to stage s + 1.
struct DataflowEdge {
  enum class Kind { kContainerToAlu, kAluToOutputMux, kOutputMuxToContainer };
  Kind kind;
  int from_stage;
  int to_stage;
  std::string label;
};

std::vector<DataflowEdge> DataflowGraph(const Pipeline& pipeline);

}  // namespace rmtsim

#endif  // RMTSIM_PIPELINE_H_
