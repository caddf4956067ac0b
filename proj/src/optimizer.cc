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

#include "rmtsim/optimizer.h"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "rmtsim/alu_eval.h"

namespace rmtsim {
namespace {

bool IsLiteral(const ExprPtr& e) { return e->kind == ExprKind::kIntLit; }

class Specializer {
 public:
  Specializer(const AluProgram& alu, std::span<const CodeValue> bindings)
      : bindings_(bindings), local_values_(alu.locals.size()) {}

  ExprPtr Fold(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::kIntLit:
      case ExprKind::kOperandRef:
      case ExprKind::kStateRef:
        return e;
      case ExprKind::kLocalRef:
        if (local_values_[e->index].has_value()) {
          return MakeLiteral(*local_values_[e->index]);
        }
        return e;
      case ExprKind::kConst:
        return MakeLiteral(FromCode(bindings_[e->index]));
      case ExprKind::kOpt:
        if (bindings_[e->index] == 0) return MakeLiteral(0);
        return Fold(e->args[0]);
      case ExprKind::kMux:
        return Fold(e->args[bindings_[e->index]]);
      case ExprKind::kArithOp: {
        static constexpr ExprKind kTable[] = {ExprKind::kAdd, ExprKind::kSub};
        return Binary(kTable[bindings_[e->index]], *e);
      }
      case ExprKind::kRelOp: {
        static constexpr ExprKind kTable[] = {ExprKind::kNe, ExprKind::kLt,
                                              ExprKind::kGt, ExprKind::kEq};
        return Binary(kTable[bindings_[e->index]], *e);
      }
      case ExprKind::kLogicOp: {
        static constexpr ExprKind kTable[] = {ExprKind::kAnd, ExprKind::kOr};
        return Binary(kTable[bindings_[e->index]], *e);
      }
      case ExprKind::kNot: {
        ExprPtr arg = Fold(e->args[0]);
        if (IsLiteral(arg)) return MakeLiteral(arg->literal == 0);
        if (arg == e->args[0]) return e;
        return MakeNode(ExprKind::kNot, {std::move(arg)});
      }
      default: {
        ExprPtr folded = Binary(e->kind, *e);
        // Keep the original node when nothing changed.
        if (folded->kind == e->kind && folded->args[0] == e->args[0] &&
            folded->args[1] == e->args[1]) {
          return e;
        }
        return folded;
      }
    }
  }

  // Specializes a statement list. Sets *returns when every path through the
  // result ends in a return.
  std::vector<Stmt> Block(const std::vector<Stmt>& body, bool* returns) {
    std::vector<Stmt> out;
    *returns = false;
    for (const Stmt& s : body) {
      switch (s.kind) {
        case StmtKind::kIf: {
          ExprPtr cond = Fold(s.expr);
          if (IsLiteral(cond)) {
            bool taken_returns = false;
            std::vector<Stmt> taken = Block(
                cond->literal != 0 ? s.then_body : s.else_body, &taken_returns);
            for (Stmt& t : taken) out.push_back(std::move(t));
            if (taken_returns) {
              *returns = true;
              return out;
            }
            break;
          }
          bool then_returns = false;
          bool else_returns = false;
          std::vector<Stmt> then_body = Block(s.then_body, &then_returns);
          std::vector<Stmt> else_body = Block(s.else_body, &else_returns);
          if (then_body.empty() && else_body.empty()) break;
          Stmt r;
          r.kind = StmtKind::kIf;
          if (then_body.empty()) {
            // Keep the then-branch non-empty so the body stays valid DSL.
            r.expr = MakeNode(ExprKind::kNot, {std::move(cond)});
            r.then_body = std::move(else_body);
          } else {
            r.expr = std::move(cond);
            r.then_body = std::move(then_body);
            r.else_body = std::move(else_body);
          }
          out.push_back(std::move(r));
          if (then_returns && else_returns) {
            *returns = true;
            return out;
          }
          break;
        }
        case StmtKind::kLet: {
          ExprPtr value = Fold(s.expr);
          if (IsLiteral(value)) {
            local_values_[s.target] = value->literal;
            break;
          }
          local_values_[s.target].reset();
          Stmt r = s;
          r.expr = std::move(value);
          out.push_back(std::move(r));
          break;
        }
        case StmtKind::kAssign: {
          Stmt r = s;
          r.expr = Fold(s.expr);
          out.push_back(std::move(r));
          break;
        }
        case StmtKind::kReturn: {
          Stmt r = s;
          r.expr = Fold(s.expr);
          out.push_back(std::move(r));
          *returns = true;
          return out;
        }
      }
    }
    return out;
  }

 private:
  ExprPtr Binary(ExprKind kind, const Expr& e) {
    ExprPtr a = Fold(e.args[0]);
    ExprPtr b = Fold(e.args[1]);
    if (IsLiteral(a) && IsLiteral(b)) {
      return MakeLiteral(ApplyFixedOp(kind, a->literal, b->literal));
    }
    // Operands are side-effect free, so a known absorbing operand decides
    // the result.
    if (kind == ExprKind::kAnd && ((IsLiteral(a) && a->literal == 0) ||
                                   (IsLiteral(b) && b->literal == 0))) {
      return MakeLiteral(0);
    }
    if (kind == ExprKind::kOr && ((IsLiteral(a) && a->literal != 0) ||
                                  (IsLiteral(b) && b->literal != 0))) {
      return MakeLiteral(1);
    }
    // Additive identities, typically left behind by Opt gates set to 0.
    if (kind == ExprKind::kAdd && IsLiteral(a) && a->literal == 0) return b;
    if ((kind == ExprKind::kAdd || kind == ExprKind::kSub) && IsLiteral(b) &&
        b->literal == 0) {
      return a;
    }
    return MakeNode(kind, {std::move(a), std::move(b)});
  }

  std::span<const CodeValue> bindings_;
  std::vector<std::optional<Value>> local_values_;
};

}  // namespace

AluProgram SpecializeAlu(const AluProgram& alu,
                         std::span<const CodeValue> bindings) {
  Specializer spec(alu, bindings);
  AluProgram out;
  out.name = alu.name;
  out.kind = alu.kind;
  out.state_vars = alu.state_vars;
  out.packet_operands = alu.packet_operands;
  out.locals = alu.locals;
  bool returns = false;
  out.body = spec.Block(alu.body, &returns);
  return out;
}

absl::StatusOr<Pipeline> Optimize(const Pipeline& pipeline) {
  if (!pipeline.bound()) {
    return absl::FailedPreconditionError(
        "optimization requires a pipeline bound to machine code");
  }
  Pipeline p = pipeline;
  for (Stage& stage : p.stages_) {
    for (AluInstance& inst : stage.alus) {
      inst.specialized = std::make_shared<const AluProgram>(
          SpecializeAlu(inst.executable(), inst.executable_bindings()));
    }
  }
  p.optimized_ = true;
  return p;
}

}  // namespace rmtsim
