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

// AST for the ALU description language. A parsed program is immutable and
// may be shared between pipelines and threads.

#ifndef RMTSIM_ALU_PROGRAM_H_
#define RMTSIM_ALU_PROGRAM_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "absl/strings/string_view.h"
#include "rmtsim/value.h"

namespace rmtsim {

enum class AluKind { kStateful, kStateless };

enum class HoleConstruct { kImmediate, kOpcode, kOptCtrl, kMuxCtrl };

// Token used in machine-code names: "immediate", "opcode", "optctrl",
// "muxctrl".
absl::string_view HoleConstructName(HoleConstruct c);

// One configurable point of an ALU body.
struct HoleSlot {
  HoleConstruct construct = HoleConstruct::kImmediate;
  // Number of choices for kOpcode and kMuxCtrl; 2 for kOptCtrl; unused for
  // kImmediate.
  int arity = 0;
  // Dense from 0 per construct.
  int ordinal = 0;

  // Half-open [0, upper).
  uint64_t upper_bound() const;

  friend bool operator==(const HoleSlot&, const HoleSlot&) = default;
  friend auto operator<=>(const HoleSlot&, const HoleSlot&) = default;
};

std::string HoleSlotDebugString(const HoleSlot& slot);

enum class ExprKind {
  kIntLit,
  kOperandRef,
  kStateRef,
  kLocalRef,
  // Configurable nodes. Each owns one hole slot.
  kConst,    // C()
  kOpt,      // Opt(e)
  kMux,      // MuxN(e1, ..., eN)
  kArithOp,  // arith_op(a, b)
  kRelOp,    // rel_op(a, b)
  kLogicOp,  // logic_op(a, b)
  // Fixed operators.
  kAdd,
  kSub,
  kEq,
  kNe,
  kLt,
  kGt,
  kAnd,
  kOr,
  kNot,
};

bool IsHole(ExprKind kind);

// Opcode tables for the configurable operators.
inline constexpr int kArithOpcodes = 2;  // 0: +, 1: -
inline constexpr int kRelOpcodes = 4;    // 0: !=, 1: <, 2: >, 3: ==
inline constexpr int kLogicOpcodes = 2;  // 0: &&, 1: ||

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::kIntLit;
  // Literal value for kIntLit.
  Value literal = 0;
  // Operand/state/local index for references; hole index into
  // AluProgram::hole_slots for configurable nodes.
  int index = -1;
  // Identifier for references.
  std::string name;
  std::vector<ExprPtr> args;
};

bool operator==(const Expr& a, const Expr& b);
bool SameExpr(const ExprPtr& a, const ExprPtr& b);

ExprPtr MakeLiteral(Value v);
ExprPtr MakeRef(ExprKind kind, int index, std::string name);
ExprPtr MakeNode(ExprKind kind, std::vector<ExprPtr> args, int hole = -1);

enum class StmtKind { kIf, kAssign, kLet, kReturn };

struct Stmt {
  StmtKind kind = StmtKind::kReturn;
  // kIf: condition. kAssign/kLet/kReturn: value.
  ExprPtr expr;
  // kAssign: state index. kLet: local index.
  int target = -1;
  std::string target_name;
  std::vector<Stmt> then_body;
  std::vector<Stmt> else_body;
};

bool operator==(const Stmt& a, const Stmt& b);

struct AluProgram {
  std::string name;
  AluKind kind = AluKind::kStateless;
  std::vector<std::string> state_vars;
  std::vector<std::string> packet_operands;
  std::vector<Stmt> body;
  std::vector<HoleSlot> hole_slots;
  std::vector<std::string> locals;

  bool stateful() const { return kind == AluKind::kStateful; }
};

bool operator==(const AluProgram& a, const AluProgram& b);

// Machine-code names for each hole slot, in hole_slots order:
// "{alu_path}_{construct}_{ordinal}".
std::vector<std::string> SlotNames(const AluProgram& alu,
                                   absl::string_view alu_path);

// Renders a hole node while pretty-printing. Returning false falls back to
// the plain DSL spelling.
using HoleAnnotator = std::function<bool(const Expr& node, const HoleSlot& slot,
                                         std::string* out)>;

// Renders the program in DSL syntax. The output reparses to an equal
// program.
std::string PrintAluProgram(const AluProgram& alu);

std::string PrintExpr(const AluProgram& alu, const Expr& e,
                      const HoleAnnotator& annotate = nullptr);

// Body only, each line prefixed with `indent`.
std::string PrintBody(const AluProgram& alu, absl::string_view indent,
                      const HoleAnnotator& annotate = nullptr);

// Visits every expression node of the body in pre-order.
void ForEachExpr(const std::vector<Stmt>& body,
                 const std::function<void(const Expr&)>& fn);

void ForEachStmt(const std::vector<Stmt>& body,
                 const std::function<void(const Stmt&)>& fn);

}  // namespace rmtsim

#endif  // RMTSIM_ALU_PROGRAM_H_
