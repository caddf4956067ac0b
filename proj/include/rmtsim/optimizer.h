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

// Sparse conditional constant propagation over bound ALU bodies.
//
// Once machine code is fixed every hole is a constant. Specialization
// substitutes those constants, folds constant subexpressions, replaces
// if-statements whose condition folds to a constant with the taken branch,
// and drops statements that can no longer execute. Opt and MuxN collapse to
// the selected argument; arith_op, rel_op and logic_op become the fixed
// operator their opcode names. Let-bound locals whose value folds to a
// constant are propagated into their uses.
//
// Only ALU bodies are rewritten. Mux wiring and stage structure are left as
// they are.

#ifndef RMTSIM_OPTIMIZER_H_
#define RMTSIM_OPTIMIZER_H_

#include <span>

#include "absl/status/statusor.h"
#include "rmtsim/alu_program.h"
#include "rmtsim/pipeline.h"

namespace rmtsim {

// `bindings` is dense and in range for alu.hole_slots. The result has no
// hole slots and computes the same function of (operands, state).
AluProgram SpecializeAlu(const AluProgram& alu,
                         std::span<const CodeValue> bindings);

// Specializes every ALU body. Fails with kFailedPrecondition on an unbound
// pipeline. Optimizing an optimized pipeline returns an equal pipeline.
absl::StatusOr<Pipeline> Optimize(const Pipeline& pipeline);

}  // namespace rmtsim

#endif  // RMTSIM_OPTIMIZER_H_
