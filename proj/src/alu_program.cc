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

#include "rmtsim/alu_program.h"

#include <string>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace rmtsim {

absl::string_view HoleConstructName(HoleConstruct c) {
  switch (c) {
    case HoleConstruct::kImmediate:
      return "immediate";
    case HoleConstruct::kOpcode:
      return "opcode";
    case HoleConstruct::kOptCtrl:
      return "optctrl";
    case HoleConstruct::kMuxCtrl:
      return "muxctrl";
  }
  return "?";
}

uint64_t HoleSlot::upper_bound() const {
  switch (construct) {
    case HoleConstruct::kImmediate:
      return kCodeValueLimit;
    case HoleConstruct::kOptCtrl:
      return 2;
    case HoleConstruct::kOpcode:
    case HoleConstruct::kMuxCtrl:
      return static_cast<uint64_t>(arity);
  }
  return 0;
}

std::string HoleSlotDebugString(const HoleSlot& slot) {
  switch (slot.construct) {
    case HoleConstruct::kImmediate:
      return absl::StrCat("Immediate#", slot.ordinal);
    case HoleConstruct::kOpcode:
      return absl::StrCat("Opcode(", slot.arity, ")#", slot.ordinal);
    case HoleConstruct::kOptCtrl:
      return absl::StrCat("OptCtrl#", slot.ordinal);
    case HoleConstruct::kMuxCtrl:
      return absl::StrCat("MuxCtrl(", slot.arity, ")#", slot.ordinal);
  }
  return "?";
}

bool IsHole(ExprKind kind) {
  switch (kind) {
    case ExprKind::kConst:
    case ExprKind::kOpt:
    case ExprKind::kMux:
    case ExprKind::kArithOp:
    case ExprKind::kRelOp:
    case ExprKind::kLogicOp:
      return true;
    default:
      return false;
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.literal != b.literal || a.index != b.index ||
      a.name != b.name || a.args.size() != b.args.size()) {
    return false;
  }
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!SameExpr(a.args[i], b.args[i])) return false;
  }
  return true;
}

bool SameExpr(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  return *a == *b;
}

ExprPtr MakeLiteral(Value v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kIntLit;
  e->literal = v;
  return e;
}

ExprPtr MakeRef(ExprKind kind, int index, std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->index = index;
  e->name = std::move(name);
  return e;
}

ExprPtr MakeNode(ExprKind kind, std::vector<ExprPtr> args, int hole) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->index = hole;
  e->args = std::move(args);
  return e;
}

bool operator==(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && SameExpr(a.expr, b.expr) && a.target == b.target &&
         a.target_name == b.target_name && a.then_body == b.then_body &&
         a.else_body == b.else_body;
}

bool operator==(const AluProgram& a, const AluProgram& b) {
  return a.name == b.name && a.kind == b.kind && a.state_vars == b.state_vars &&
         a.packet_operands == b.packet_operands && a.body == b.body &&
         a.hole_slots == b.hole_slots && a.locals == b.locals;
}

std::vector<std::string> SlotNames(const AluProgram& alu,
                                   absl::string_view alu_path) {
  std::vector<std::string> names;
  names.reserve(alu.hole_slots.size());
  for (const HoleSlot& slot : alu.hole_slots) {
    names.push_back(absl::StrCat(
        alu_path, "_", HoleConstructName(slot.construct), "_", slot.ordinal));
  }
  return names;
}

namespace {

absl::string_view InfixToken(ExprKind kind) {
  switch (kind) {
    case ExprKind::kAdd:
      return "+";
    case ExprKind::kSub:
      return "-";
    case ExprKind::kEq:
      return "==";
    case ExprKind::kNe:
      return "!=";
    case ExprKind::kLt:
      return "<";
    case ExprKind::kGt:
      return ">";
    case ExprKind::kAnd:
      return "&&";
    case ExprKind::kOr:
      return "||";
    default:
      return "";
  }
}

std::string HoleSpelling(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kConst:
      return "C";
    case ExprKind::kOpt:
      return "Opt";
    case ExprKind::kMux:
      return absl::StrCat("Mux", e.args.size());
    case ExprKind::kArithOp:
      return "arith_op";
    case ExprKind::kRelOp:
      return "rel_op";
    case ExprKind::kLogicOp:
      return "logic_op";
    default:
      return "";
  }
}

class Printer {
 public:
  Printer(const AluProgram& alu, const HoleAnnotator& annotate)
      : alu_(alu), annotate_(annotate) {}

  std::string Expr(const rmtsim::Expr& e) const {
    switch (e.kind) {
      case ExprKind::kIntLit:
        return absl::StrCat(e.literal);
      case ExprKind::kOperandRef:
      case ExprKind::kStateRef:
      case ExprKind::kLocalRef:
        return e.name;
      case ExprKind::kNot:
        return absl::StrCat("!", Expr(*e.args[0]));
      default:
        break;
    }
    if (IsHole(e.kind)) {
      std::string head;
      const bool annotated =
          annotate_ && e.index >= 0 &&
          e.index < static_cast<int>(alu_.hole_slots.size()) &&
          annotate_(e, alu_.hole_slots[e.index], &head);
      if (!annotated) head = HoleSpelling(e);
      std::vector<std::string> args;
      for (const ExprPtr& a : e.args) args.push_back(Expr(*a));
      return absl::StrCat(head, "(", absl::StrJoin(args, ", "), ")");
    }
    return absl::StrCat("(", Expr(*e.args[0]), " ", InfixToken(e.kind), " ",
                        Expr(*e.args[1]), ")");
  }

  void Block(const std::vector<Stmt>& body, const std::string& indent,
             std::string* out) const {
    for (const Stmt& s : body) {
      switch (s.kind) {
        case StmtKind::kIf:
          absl::StrAppend(out, indent, "if ", Expr(*s.expr), " {\n");
          Block(s.then_body, indent + "  ", out);
          if (s.else_body.empty()) {
            absl::StrAppend(out, indent, "}\n");
          } else {
            absl::StrAppend(out, indent, "} else {\n");
            Block(s.else_body, indent + "  ", out);
            absl::StrAppend(out, indent, "}\n");
          }
          break;
        case StmtKind::kAssign:
          absl::StrAppend(out, indent, s.target_name, " = ", Expr(*s.expr),
                          "\n");
          break;
        case StmtKind::kLet:
          absl::StrAppend(out, indent, "let ", s.target_name, " = ",
                          Expr(*s.expr), "\n");
          break;
        case StmtKind::kReturn:
          absl::StrAppend(out, indent, "return ", Expr(*s.expr), "\n");
          break;
      }
    }
  }

 private:
  const AluProgram& alu_;
  const HoleAnnotator& annotate_;
};

void VisitExpr(const Expr& e, const std::function<void(const Expr&)>& fn) {
  fn(e);
  for (const ExprPtr& a : e.args) VisitExpr(*a, fn);
}

}  // namespace

std::string PrintExpr(const AluProgram& alu, const Expr& e,
                      const HoleAnnotator& annotate) {
  return Printer(alu, annotate).Expr(e);
}

std::string PrintBody(const AluProgram& alu, absl::string_view indent,
                      const HoleAnnotator& annotate) {
  std::string out;
  Printer(alu, annotate).Block(alu.body, std::string(indent), &out);
  return out;
}

std::string PrintAluProgram(const AluProgram& alu) {
  std::string out =
      absl::StrCat(alu.stateful() ? "stateful" : "stateless", " alu ", alu.name,
                   "(", absl::StrJoin(alu.packet_operands, ", "), ")");
  if (alu.stateful()) {
    absl::StrAppend(&out, " state(", absl::StrJoin(alu.state_vars, ", "), ")");
  }
  absl::StrAppend(&out, ":\n", PrintBody(alu, "  "));
  return out;
}

void ForEachStmt(const std::vector<Stmt>& body,
                 const std::function<void(const Stmt&)>& fn) {
  for (const Stmt& s : body) {
    fn(s);
    ForEachStmt(s.then_body, fn);
    ForEachStmt(s.else_body, fn);
  }
}

void ForEachExpr(const std::vector<Stmt>& body,
                 const std::function<void(const Expr&)>& fn) {
  for (const Stmt& s : body) {
    if (s.expr) VisitExpr(*s.expr, fn);
    ForEachExpr(s.then_body, fn);
    ForEachExpr(s.else_body, fn);
  }
}

}  // namespace rmtsim
