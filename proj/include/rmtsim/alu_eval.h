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

#ifndef RMTSIM_ALU_EVAL_H_
#define RMTSIM_ALU_EVAL_H_

#include <map>
#include <span>

#include "absl/status/statusor.h"
#include "rmtsim/alu_program.h"
#include "rmtsim/value.h"

namespace rmtsim {

using HoleBindingMap = std::map<HoleSlot, CodeValue>;

// Resolves a binding map into a dense vector indexed like alu.hole_slots.
// Fails with kNotFound for a slot without a binding and kOutOfRange for a
// value outside the slot's range.
absl::StatusOr<std::vector<CodeValue>> ResolveBindings(
    const AluProgram& alu, const HoleBindingMap& bindings);

// Runs the ALU once. Stateful ALUs update `state` in place.
absl::StatusOr<Value> EvalAlu(const AluProgram& alu,
                              const HoleBindingMap& bindings,
                              std::span<const Value> operands,
                              std::span<Value> state);

// Unchecked form used by the simulator. `bindings` is dense and in range,
// the spans match the program's declarations, and `locals` has at least
// alu.locals.size() entries.
Value EvalAluUnchecked(const AluProgram& alu,
                       std::span<const CodeValue> bindings,
                       std::span<const Value> operands, std::span<Value> state,
                       std::span<Value> locals);

// Applies a fixed operator (kAdd ... kNot) to literal arguments.
Value ApplyFixedOp(ExprKind kind, Value a, Value b);

}  // namespace rmtsim

#endif  // RMTSIM_ALU_EVAL_H_
