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

#include "rmtsim/pipeline.h"

#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "rmtsim/status_macros.h"

namespace rmtsim {

std::string AluPath(AluCoord coord) {
  return absl::StrCat("stage_", coord.stage, "_alu_", coord.alu);
}

std::vector<AluCoord> Pipeline::StatefulCoords() const {
  std::vector<AluCoord> out;
  for (const Stage& stage : stages_) {
    for (const AluInstance& inst : stage.alus) {
      if (inst.program->stateful()) out.push_back(inst.coord);
    }
  }
  return out;
}

absl::StatusOr<Pipeline> BuildPipeline(const HardwareSpec& spec,
                                       const AluLibrary& alus) {
  RMTSIM_RETURN_IF_ERROR(ValidateHardwareSpec(spec));
  Pipeline p;
  p.spec_ = spec;
  for (int s = 0; s < spec.depth; ++s) {
    Stage stage;
    stage.index = s;
    for (int a = 0; a < spec.width; ++a) {
      const std::string& name = spec.stage_assignments[s][a];
      auto it = alus.find(name);
      if (it == alus.end() || it->second == nullptr) {
        return absl::NotFoundError(
            absl::StrCat("unknown ALU '", name, "' at stage ", s, " slot ", a));
      }
      AluInstance inst;
      inst.coord = {s, a};
      inst.program = it->second;
      const std::string path = AluPath(inst.coord);
      const int operands =
          static_cast<int>(inst.program->packet_operands.size());
      if (operands > spec.phv_length) {
        return absl::InvalidArgumentError(absl::StrCat(
            "ALU '", name, "' at stage ", s, " takes ", operands,
            " operands but the PHV has only ", spec.phv_length, " containers"));
      }
      inst.slot_names = SlotNames(*inst.program, path);
      for (size_t h = 0; h < inst.slot_names.size(); ++h) {
        RMTSIM_RETURN_IF_ERROR(p.catalog_.Add(
            {inst.slot_names[h], inst.program->hole_slots[h].upper_bound(),
             SlotKind::kAluHole}));
      }
      for (int k = 0; k < operands; ++k) {
        InputMux mux;
        mux.operand = k;
        mux.fanin = spec.phv_length;
        mux.ctrl_name = absl::StrCat(path, "_input_mux_", k, "_ctrl");
        RMTSIM_RETURN_IF_ERROR(
            p.catalog_.Add({mux.ctrl_name, static_cast<uint64_t>(mux.fanin),
                            SlotKind::kInputMuxCtrl}));
        inst.input_muxes.push_back(std::move(mux));
      }
      stage.alus.push_back(std::move(inst));
    }
    for (int c = 0; c < spec.phv_length; ++c) {
      OutputMux mux;
      mux.container = c;
      mux.fanin = spec.width;
      mux.ctrl_name = absl::StrCat("stage_", s, "_output_mux_", c, "_ctrl");
      RMTSIM_RETURN_IF_ERROR(
          p.catalog_.Add({mux.ctrl_name, static_cast<uint64_t>(mux.fanin),
                          SlotKind::kOutputMuxCtrl}));
      stage.output_muxes.push_back(std::move(mux));
    }
    p.stages_.push_back(std::move(stage));
  }
  return p;
}

absl::StatusOr<Pipeline> Bind(const Pipeline& pipeline, const MachineCode& mc) {
  const std::vector<Diagnostic> diags =
      CheckAgainstCatalog(mc, pipeline.catalog());
  if (!diags.empty()) {
    std::vector<std::string> lines;
    for (const Diagnostic& d : diags) lines.push_back(d.ToString());
    return absl::FailedPreconditionError(absl::StrCat(
        "machine code does not match the pipeline (", diags.size(), " problem",
        diags.size() == 1 ? "" : "s", "):\n  ", absl::StrJoin(lines, "\n  ")));
  }
  Pipeline p = pipeline;
  for (Stage& stage : p.stages_) {
    for (AluInstance& inst : stage.alus) {
      inst.specialized = nullptr;
      inst.bindings.clear();
      for (const std::string& name : inst.slot_names) {
        inst.bindings.push_back(*mc.Get(name));
      }
      for (InputMux& mux : inst.input_muxes) {
        mux.ctrl = static_cast<int>(*mc.Get(mux.ctrl_name));
      }
    }
    for (OutputMux& mux : stage.output_muxes) {
      mux.ctrl = static_cast<int>(*mc.Get(mux.ctrl_name));
    }
  }
  p.machine_code_ = MachineCode();
  for (const CatalogEntry& e : p.catalog_.entries()) {
    (void)p.machine_code_.Add(e.name, *mc.Get(e.name));
  }
  p.bound_ = true;
  p.optimized_ = false;
  return p;
}

namespace {

absl::string_view SlotKindName(SlotKind kind) {
  switch (kind) {
    case SlotKind::kAluHole:
      return "alu_hole";
    case SlotKind::kInputMuxCtrl:
      return "input_mux";
    case SlotKind::kOutputMuxCtrl:
      return "output_mux";
  }
  return "?";
}

}  // namespace

std::string DescribeCatalog(const SlotCatalog& catalog) {
  std::string out;
  for (const CatalogEntry& e : catalog.entries()) {
    absl::StrAppend(&out, e.name, " [0, ", e.upper_bound, ") ",
                    SlotKindName(e.kind), "\n");
  }
  return out;
}

std::string Describe(const Pipeline& p) {
  std::string out =
      absl::StrCat("pipeline depth=", p.depth(), " width=", p.width(),
                   " phv_length=", p.phv_length(), " (",
                   p.optimized() ? "optimized"
                   : p.bound()   ? "bound"
                                 : "unbound",
                   ")\n");
  for (const Stage& stage : p.stages()) {
    absl::StrAppend(&out, "stage ", stage.index, ":\n");
    for (const AluInstance& inst : stage.alus) {
      const AluProgram& prog = inst.executable();
      absl::StrAppend(&out, "  alu ", inst.coord.alu, " ", prog.name, " (",
                      prog.stateful() ? "stateful" : "stateless");
      if (prog.stateful()) {
        absl::StrAppend(&out, ", state ", absl::StrJoin(prog.state_vars, ", "));
      }
      absl::StrAppend(&out, ")\n");
      for (const InputMux& mux : inst.input_muxes) {
        absl::StrAppend(&out, "    ", prog.packet_operands[mux.operand],
                        " <- ");
        if (mux.ctrl >= 0) {
          absl::StrAppend(&out, "container ", mux.ctrl, "\n");
        } else {
          absl::StrAppend(&out, mux.ctrl_name, " [0, ", mux.fanin, ")\n");
        }
      }
      HoleAnnotator annotate = nullptr;
      if (!inst.specialized) {
        annotate = [&inst, &p](const Expr& node, const HoleSlot&,
                               std::string* head) {
          std::string spelling;
          switch (node.kind) {
            case ExprKind::kConst:
              spelling = "C";
              break;
            case ExprKind::kOpt:
              spelling = "Opt";
              break;
            case ExprKind::kMux:
              spelling = absl::StrCat("Mux", node.args.size());
              break;
            case ExprKind::kArithOp:
              spelling = "arith_op";
              break;
            case ExprKind::kRelOp:
              spelling = "rel_op";
              break;
            default:
              spelling = "logic_op";
              break;
          }
          absl::StrAppend(&spelling, "<", inst.slot_names[node.index]);
          if (p.bound()) {
            absl::StrAppend(&spelling, "=", inst.bindings[node.index]);
          }
          absl::StrAppend(&spelling, ">");
          *head = std::move(spelling);
          return true;
        };
      }
      out += PrintBody(prog, "    | ", annotate);
    }
    for (const OutputMux& mux : stage.output_muxes) {
      absl::StrAppend(&out, "  container ", mux.container, " <- ");
      if (mux.ctrl >= 0) {
        absl::StrAppend(&out, "alu ", mux.ctrl, "\n");
      } else {
        absl::StrAppend(&out, mux.ctrl_name, " [0, ", mux.fanin, ")\n");
      }
    }
  }
  return out;
}

std::vector<DataflowEdge> DataflowGraph(const Pipeline& p) {
  std::vector<DataflowEdge> edges;
  for (const Stage& stage : p.stages()) {
    const int s = stage.index;
    for (const AluInstance& inst : stage.alus) {
      for (const InputMux& mux : inst.input_muxes) {
        // An unbound mux may select any container.
        const int lo = mux.ctrl >= 0 ? mux.ctrl : 0;
        const int hi = mux.ctrl >= 0 ? mux.ctrl + 1 : mux.fanin;
        for (int c = lo; c < hi; ++c) {
          edges.push_back(
              {DataflowEdge::Kind::kContainerToAlu, s, s,
               absl::StrCat("container ", c, " -> ", AluPath(inst.coord),
                            " operand ", mux.operand)});
        }
      }
    }
    for (const OutputMux& mux : stage.output_muxes) {
      const int lo = mux.ctrl >= 0 ? mux.ctrl : 0;
      const int hi = mux.ctrl >= 0 ? mux.ctrl + 1 : mux.fanin;
      for (int a = lo; a < hi; ++a) {
        edges.push_back({DataflowEdge::Kind::kAluToOutputMux, s, s,
                         absl::StrCat(AluPath({s, a}), " -> ", mux.ctrl_name)});
      }
      edges.push_back(
          {DataflowEdge::Kind::kOutputMuxToContainer, s, s + 1,
           absl::StrCat(mux.ctrl_name, " -> container ", mux.container)});
    }
  }
  return edges;
}

}  // namespace rmtsim
