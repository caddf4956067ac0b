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

#include "rmtsim/alu_eval.h"

#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "rmtsim/status_macros.h"

namespace rmtsim {
namespace {

class Evaluator {
 public:
  Evaluator(std::span<const CodeValue> bindings,
            std::span<const Value> operands, std::span<Value> state,
            std::span<Value> locals)
      : bindings_(bindings),
        operands_(operands),
        state_(state),
        locals_(locals) {}

  Value Eval(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::kIntLit:
        return e.literal;
      case ExprKind::kOperandRef:
        return operands_[e.index];
      case ExprKind::kStateRef:
        return state_[e.index];
      case ExprKind::kLocalRef:
        return locals_[e.index];
      case ExprKind::kConst:
        return FromCode(bindings_[e.index]);
      case ExprKind::kOpt:
        return bindings_[e.index] == 0 ? 0 : Eval(*e.args[0]);
      case ExprKind::kMux:
        return Eval(*e.args[bindings_[e.index]]);
      case ExprKind::kArithOp: {
        const Value a = Eval(*e.args[0]);
        const Value b = Eval(*e.args[1]);
        if (bindings_[e.index] == 0) return WrapAdd(a, b);
        return WrapSub(a, b);
      }
      case ExprKind::kRelOp: {
        const Value a = Eval(*e.args[0]);
        const Value b = Eval(*e.args[1]);
        const CodeValue op = bindings_[e.index];
        if (op == 0) return a != b;
        if (op == 1) return a < b;
        if (op == 2) return a > b;
        return a == b;
      }
      case ExprKind::kLogicOp: {
        const bool a = Eval(*e.args[0]) != 0;
        const bool b = Eval(*e.args[1]) != 0;
        if (bindings_[e.index] == 0) return a && b;
        return a || b;
      }
      case ExprKind::kNot:
        return Eval(*e.args[0]) == 0;
      case ExprKind::kAdd:
        return WrapAdd(Eval(*e.args[0]), Eval(*e.args[1]));
      case ExprKind::kSub:
        return WrapSub(Eval(*e.args[0]), Eval(*e.args[1]));
      case ExprKind::kEq:
        return Eval(*e.args[0]) == Eval(*e.args[1]);
      case ExprKind::kNe:
        return Eval(*e.args[0]) != Eval(*e.args[1]);
      case ExprKind::kLt:
        return Eval(*e.args[0]) < Eval(*e.args[1]);
      case ExprKind::kGt:
        return Eval(*e.args[0]) > Eval(*e.args[1]);
      case ExprKind::kAnd: {
        const bool a = Eval(*e.args[0]) != 0;
        return (Eval(*e.args[1]) != 0) && a;
      }
      case ExprKind::kOr: {
        const bool a = Eval(*e.args[0]) != 0;
        return (Eval(*e.args[1]) != 0) || a;
      }
    }
    return 0;
  }

  std::optional<Value> Exec(const std::vector<Stmt>& body) {
    for (const Stmt& s : body) {
      switch (s.kind) {
        case StmtKind::kIf: {
          const std::vector<Stmt>& taken =
              Eval(*s.expr) != 0 ? s.then_body : s.else_body;
          if (std::optional<Value> r = Exec(taken)) return r;
          break;
        }
        case StmtKind::kAssign:
          state_[s.target] = Eval(*s.expr);
          break;
        case StmtKind::kLet:
          locals_[s.target] = Eval(*s.expr);
          break;
        case StmtKind::kReturn:
          return Eval(*s.expr);
      }
    }
    return std::nullopt;
  }

 private:
  std::span<const CodeValue> bindings_;
  std::span<const Value> operands_;
  std::span<Value> state_;
  std::span<Value> locals_;
};

}  // namespace

Value ApplyFixedOp(ExprKind kind, Value a, Value b) {
  switch (kind) {
    case ExprKind::kAdd:
      return WrapAdd(a, b);
    case ExprKind::kSub:
      return WrapSub(a, b);
    case ExprKind::kEq:
      return a == b;
    case ExprKind::kNe:
      return a != b;
    case ExprKind::kLt:
      return a < b;
    case ExprKind::kGt:
      return a > b;
    case ExprKind::kAnd:
      return a != 0 && b != 0;
    case ExprKind::kOr:
      return a != 0 || b != 0;
    case ExprKind::kNot:
      return a == 0;
    default:
      return 0;
  }
}

absl::StatusOr<std::vector<CodeValue>> ResolveBindings(
    const AluProgram& alu, const HoleBindingMap& bindings) {
  std::vector<CodeValue> dense;
  dense.reserve(alu.hole_slots.size());
  for (const HoleSlot& slot : alu.hole_slots) {
    auto it = bindings.find(slot);
    if (it == bindings.end()) {
      return absl::NotFoundError(
          absl::StrCat("missing binding for ", HoleSlotDebugString(slot)));
    }
    if (it->second >= slot.upper_bound()) {
      return absl::OutOfRangeError(
          absl::StrCat("binding for ", HoleSlotDebugString(slot), " is ",
                       it->second, ", outside [0, ", slot.upper_bound(), ")"));
    }
    dense.push_back(it->second);
  }
  return dense;
}

absl::StatusOr<Value> EvalAlu(const AluProgram& alu,
                              const HoleBindingMap& bindings,
                              std::span<const Value> operands,
                              std::span<Value> state) {
  RMTSIM_ASSIGN_OR_RETURN(std::vector<CodeValue> dense,
                          ResolveBindings(alu, bindings));
  if (operands.size() != alu.packet_operands.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("ALU '", alu.name, "' takes ", alu.packet_operands.size(),
                     " operands, got ", operands.size()));
  }
  if (state.size() != alu.state_vars.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("ALU '", alu.name, "' has ", alu.state_vars.size(),
                     " state variables, got ", state.size()));
  }
  std::vector<Value> locals(alu.locals.size(), 0);
  return EvalAluUnchecked(alu, dense, operands, state, locals);
}

Value EvalAluUnchecked(const AluProgram& alu,
                       std::span<const CodeValue> bindings,
                       std::span<const Value> operands, std::span<Value> state,
                       std::span<Value> locals) {
  Evaluator ev(bindings, operands, state, locals);
  // Validation guarantees a return on every path.
  return ev.Exec(alu.body).value_or(0);
}

}  // namespace rmtsim
