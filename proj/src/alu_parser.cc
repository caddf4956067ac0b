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

#include "rmtsim/alu_parser.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "rmtsim/status_macros.h"
#include "src/file_util.h"

namespace rmtsim {
namespace {

enum class TokKind { kIdent, kInt, kPunct, kEnd };

struct Token {
  TokKind kind = TokKind::kEnd;
  std::string text;
  size_t offset = 0;
};

std::string Describe(const Token& t) {
  switch (t.kind) {
    case TokKind::kEnd:
      return "end of input";
    case TokKind::kInt:
      return absl::StrCat("integer ", t.text);
    case TokKind::kIdent:
      return absl::StrCat("identifier '", t.text, "'");
    case TokKind::kPunct:
      return absl::StrCat("'", t.text, "'");
  }
  return "?";
}

absl::Status SyntaxErrorAt(absl::string_view src, size_t offset,
                           absl::string_view expected,
                           absl::string_view found) {
  int line = 1;
  int col = 1;
  for (size_t i = 0; i < offset && i < src.size(); ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "syntax error at offset ", offset, " (line ", line, ", column ", col,
      "): expected ", expected, ", found ", found));
}

absl::Status ValidationError(absl::string_view msg) {
  return absl::InvalidArgumentError(absl::StrCat("validation error: ", msg));
}

absl::StatusOr<std::vector<Token>> Lex(absl::string_view src) {
  std::vector<Token> toks;
  size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (absl::ascii_isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Token t;
    t.offset = i;
    if (absl::ascii_isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (absl::ascii_isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_')) {
        ++j;
      }
      t.kind = TokKind::kIdent;
      t.text = std::string(src.substr(i, j - i));
      i = j;
    } else if (absl::ascii_isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() &&
             absl::ascii_isdigit(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      t.kind = TokKind::kInt;
      t.text = std::string(src.substr(i, j - i));
      i = j;
    } else {
      static constexpr std::array<absl::string_view, 4> kTwoChar = {
          "==", "!=", "&&", "||"};
      static constexpr absl::string_view kOneChar = "(){},:=;<>!+-";
      t.kind = TokKind::kPunct;
      const absl::string_view two = src.substr(i, 2);
      if (std::find(kTwoChar.begin(), kTwoChar.end(), two) != kTwoChar.end()) {
        t.text = std::string(two);
        i += 2;
      } else if (kOneChar.find(c) != absl::string_view::npos) {
        t.text = std::string(1, c);
        i += 1;
      } else {
        return SyntaxErrorAt(
            src, i, "a token",
            absl::StrCat("character '", std::string(1, c), "'"));
      }
    }
    toks.push_back(std::move(t));
  }
  Token end;
  end.offset = src.size();
  toks.push_back(end);
  return toks;
}

// Returns N for "MuxN" with N >= 2, otherwise 0.
int MuxArity(absl::string_view ident) {
  if (ident.size() < 4 || ident.substr(0, 3) != "Mux") return 0;
  int n = 0;
  if (!absl::SimpleAtoi(ident.substr(3), &n)) return 0;
  if (!absl::ascii_isdigit(static_cast<unsigned char>(ident[3]))) return 0;
  return n >= 2 ? n : 0;
}

bool IsReserved(absl::string_view ident) {
  static constexpr std::array<absl::string_view, 14> kWords = {
      "stateful", "stateless", "alu",      "state", "if",
      "else",     "return",    "let",      "C",     "Opt",
      "arith_op", "rel_op",    "logic_op", "Mux"};
  return std::find(kWords.begin(), kWords.end(), ident) != kWords.end() ||
         MuxArity(ident) != 0;
}

class Parser {
 public:
  Parser(absl::string_view src, std::vector<Token> toks)
      : src_(src), toks_(std::move(toks)) {}

  absl::StatusOr<AluProgram> Program(absl::string_view expected_name) {
    if (Peek().kind == TokKind::kIdent &&
        (Peek().text == "stateful" || Peek().text == "stateless")) {
      prog_.kind =
          Peek().text == "stateful" ? AluKind::kStateful : AluKind::kStateless;
      Advance();
    } else {
      return Expected("'stateful' or 'stateless'");
    }
    RMTSIM_RETURN_IF_ERROR(ExpectKeyword("alu"));
    RMTSIM_ASSIGN_OR_RETURN(prog_.name, Identifier("ALU name"));
    if (!expected_name.empty() && prog_.name != expected_name) {
      return ValidationError(absl::StrCat("ALU is named '", prog_.name,
                                          "' but its file is '", expected_name,
                                          "'"));
    }
    RMTSIM_ASSIGN_OR_RETURN(prog_.packet_operands, DeclList(true));
    bool has_state_clause = false;
    if (Peek().kind == TokKind::kIdent && Peek().text == "state") {
      Advance();
      has_state_clause = true;
      RMTSIM_ASSIGN_OR_RETURN(prog_.state_vars, DeclList(false));
    }
    RMTSIM_RETURN_IF_ERROR(ExpectPunct(":"));

    if (prog_.stateful() && prog_.state_vars.empty()) {
      return ValidationError(absl::StrCat("stateful ALU '", prog_.name,
                                          "' declares no state variables"));
    }
    if (!prog_.stateful() && has_state_clause) {
      return ValidationError(absl::StrCat("stateless ALU '", prog_.name,
                                          "' declares state variables"));
    }
    RMTSIM_RETURN_IF_ERROR(CheckDeclarations());

    scopes_.emplace_back();
    while (Peek().kind != TokKind::kEnd) {
      RMTSIM_ASSIGN_OR_RETURN(Stmt s, Statement());
      prog_.body.push_back(std::move(s));
    }
    return std::move(prog_);
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  void Advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  bool AtPunct(absl::string_view p) const {
    return Peek().kind == TokKind::kPunct && Peek().text == p;
  }

  absl::Status Expected(absl::string_view what) const {
    return SyntaxErrorAt(src_, Peek().offset, what, Describe(Peek()));
  }

  absl::Status ExpectPunct(absl::string_view p) {
    if (!AtPunct(p)) return Expected(absl::StrCat("'", p, "'"));
    Advance();
    return absl::OkStatus();
  }

  absl::Status ExpectKeyword(absl::string_view k) {
    if (Peek().kind != TokKind::kIdent || Peek().text != k) {
      return Expected(absl::StrCat("'", k, "'"));
    }
    Advance();
    return absl::OkStatus();
  }

  absl::StatusOr<std::string> Identifier(absl::string_view what) {
    if (Peek().kind != TokKind::kIdent) return Expected(what);
    std::string s = Peek().text;
    Advance();
    return s;
  }

  // "(" [ident {"," ident}] ")"; an empty list is allowed for operands only.
  absl::StatusOr<std::vector<std::string>> DeclList(bool allow_empty) {
    RMTSIM_RETURN_IF_ERROR(ExpectPunct("("));
    std::vector<std::string> names;
    if (allow_empty && AtPunct(")")) {
      Advance();
      return names;
    }
    while (true) {
      RMTSIM_ASSIGN_OR_RETURN(std::string n, Identifier("identifier"));
      names.push_back(std::move(n));
      if (AtPunct(",")) {
        Advance();
        continue;
      }
      RMTSIM_RETURN_IF_ERROR(ExpectPunct(")"));
      return names;
    }
  }

  absl::Status CheckDeclarations() const {
    std::vector<std::string> all = prog_.packet_operands;
    all.insert(all.end(), prog_.state_vars.begin(), prog_.state_vars.end());
    for (size_t i = 0; i < all.size(); ++i) {
      if (IsReserved(all[i])) {
        return ValidationError(
            absl::StrCat("'", all[i], "' is a reserved word"));
      }
      for (size_t j = 0; j < i; ++j) {
        if (all[i] == all[j]) {
          return ValidationError(
              absl::StrCat("'", all[i], "' is declared more than once"));
        }
      }
    }
    return absl::OkStatus();
  }

  int FindLocal(absl::string_view name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      for (const auto& [n, idx] : *it) {
        if (n == name) return idx;
      }
    }
    return -1;
  }

  static int IndexOf(const std::vector<std::string>& v, absl::string_view s) {
    auto it = std::find(v.begin(), v.end(), s);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
  }

  void SkipSemicolon() {
    if (AtPunct(";")) Advance();
  }

  absl::StatusOr<std::vector<Stmt>> Block() {
    RMTSIM_RETURN_IF_ERROR(ExpectPunct("{"));
    scopes_.emplace_back();
    std::vector<Stmt> body;
    while (!AtPunct("}")) {
      if (Peek().kind == TokKind::kEnd) return Expected("'}'");
      RMTSIM_ASSIGN_OR_RETURN(Stmt s, Statement());
      body.push_back(std::move(s));
    }
    Advance();
    scopes_.pop_back();
    return body;
  }

  absl::StatusOr<Stmt> Statement() {
    const Token& t = Peek();
    if (t.kind != TokKind::kIdent) return Expected("a statement");
    Stmt s;
    if (t.text == "if") {
      Advance();
      s.kind = StmtKind::kIf;
      RMTSIM_ASSIGN_OR_RETURN(s.expr, Expression());
      RMTSIM_ASSIGN_OR_RETURN(s.then_body, Block());
      if (Peek().kind == TokKind::kIdent && Peek().text == "else") {
        Advance();
        if (Peek().kind == TokKind::kIdent && Peek().text == "if") {
          RMTSIM_ASSIGN_OR_RETURN(Stmt nested, Statement());
          s.else_body.push_back(std::move(nested));
        } else {
          RMTSIM_ASSIGN_OR_RETURN(s.else_body, Block());
        }
      }
      return s;
    }
    if (t.text == "return") {
      Advance();
      s.kind = StmtKind::kReturn;
      RMTSIM_ASSIGN_OR_RETURN(s.expr, Expression());
      SkipSemicolon();
      return s;
    }
    if (t.text == "let") {
      Advance();
      const size_t at = Peek().offset;
      RMTSIM_ASSIGN_OR_RETURN(std::string name, Identifier("local name"));
      if (IsReserved(name)) {
        return ValidationError(absl::StrCat("'", name, "' is a reserved word"));
      }
      if (FindLocal(name) >= 0 || IndexOf(prog_.state_vars, name) >= 0 ||
          IndexOf(prog_.packet_operands, name) >= 0) {
        return ValidationError(absl::StrCat("local '", name, "' at offset ", at,
                                            " shadows a visible name"));
      }
      RMTSIM_RETURN_IF_ERROR(ExpectPunct("="));
      s.kind = StmtKind::kLet;
      RMTSIM_ASSIGN_OR_RETURN(s.expr, Expression());
      s.target = static_cast<int>(prog_.locals.size());
      s.target_name = name;
      prog_.locals.push_back(name);
      // Visible only after its own initializer.
      scopes_.back().emplace_back(name, s.target);
      SkipSemicolon();
      return s;
    }
    if (IsReserved(t.text)) return Expected("a statement");

    const size_t at = t.offset;
    std::string name = t.text;
    Advance();
    RMTSIM_RETURN_IF_ERROR(ExpectPunct("="));
    const int state_index = IndexOf(prog_.state_vars, name);
    if (state_index < 0) {
      if (IndexOf(prog_.packet_operands, name) >= 0) {
        return ValidationError(absl::StrCat("cannot assign packet operand '",
                                            name, "' at offset ", at));
      }
      if (FindLocal(name) >= 0) {
        return ValidationError(
            absl::StrCat("cannot reassign local '", name, "' at offset ", at));
      }
      if (!prog_.stateful()) {
        return ValidationError(absl::StrCat("stateless ALU '", prog_.name,
                                            "' cannot assign state variable '",
                                            name, "' at offset ", at));
      }
      return ValidationError(absl::StrCat("undeclared state variable '", name,
                                          "' at offset ", at));
    }
    s.kind = StmtKind::kAssign;
    s.target = state_index;
    s.target_name = std::move(name);
    RMTSIM_ASSIGN_OR_RETURN(s.expr, Expression());
    SkipSemicolon();
    return s;
  }

  absl::StatusOr<ExprPtr> Expression() { return OrExpr(); }

  absl::StatusOr<ExprPtr> OrExpr() {
    RMTSIM_ASSIGN_OR_RETURN(ExprPtr lhs, AndExpr());
    while (AtPunct("||")) {
      Advance();
      RMTSIM_ASSIGN_OR_RETURN(ExprPtr rhs, AndExpr());
      lhs = MakeNode(ExprKind::kOr, {lhs, rhs});
    }
    return lhs;
  }

  absl::StatusOr<ExprPtr> AndExpr() {
    RMTSIM_ASSIGN_OR_RETURN(ExprPtr lhs, Comparison());
    while (AtPunct("&&")) {
      Advance();
      RMTSIM_ASSIGN_OR_RETURN(ExprPtr rhs, Comparison());
      lhs = MakeNode(ExprKind::kAnd, {lhs, rhs});
    }
    return lhs;
  }

  absl::StatusOr<ExprPtr> Comparison() {
    RMTSIM_ASSIGN_OR_RETURN(ExprPtr lhs, Additive());
    static constexpr std::array<std::pair<absl::string_view, ExprKind>, 4>
        kOps = {{{"==", ExprKind::kEq},
                 {"!=", ExprKind::kNe},
                 {"<", ExprKind::kLt},
                 {">", ExprKind::kGt}}};
    for (const auto& [tok, kind] : kOps) {
      if (AtPunct(tok)) {
        Advance();
        RMTSIM_ASSIGN_OR_RETURN(ExprPtr rhs, Additive());
        return MakeNode(kind, {lhs, rhs});
      }
    }
    return lhs;
  }

  absl::StatusOr<ExprPtr> Additive() {
    RMTSIM_ASSIGN_OR_RETURN(ExprPtr lhs, Unary());
    while (AtPunct("+") || AtPunct("-")) {
      const ExprKind kind = AtPunct("+") ? ExprKind::kAdd : ExprKind::kSub;
      Advance();
      RMTSIM_ASSIGN_OR_RETURN(ExprPtr rhs, Unary());
      lhs = MakeNode(kind, {lhs, rhs});
    }
    return lhs;
  }

  absl::StatusOr<ExprPtr> Unary() {
    if (AtPunct("!")) {
      Advance();
      RMTSIM_ASSIGN_OR_RETURN(ExprPtr arg, Unary());
      return MakeNode(ExprKind::kNot, {arg});
    }
    if (AtPunct("-")) {
      Advance();
      if (Peek().kind != TokKind::kInt) return Expected("integer after '-'");
      return Literal(/*negative=*/true);
    }
    return Primary();
  }

  absl::StatusOr<ExprPtr> Literal(bool negative) {
    const Token t = Peek();
    Advance();
    uint64_t magnitude = 0;
    const bool parsed = absl::SimpleAtoi(t.text, &magnitude);
    const uint64_t limit =
        negative ? (uint64_t{1} << 31) : (kCodeValueLimit - 1);
    if (!parsed || magnitude > limit) {
      return ValidationError(absl::StrCat(
          "integer literal ", negative ? "-" : "", t.text, " at offset ",
          t.offset, " is outside the 32-bit range"));
    }
    const uint32_t bits =
        negative ? static_cast<uint32_t>(0u - static_cast<uint32_t>(magnitude))
                 : static_cast<uint32_t>(magnitude);
    return MakeLiteral(FromCode(bits));
  }

  int NewHole(HoleConstruct construct, int arity) {
    HoleSlot slot;
    slot.construct = construct;
    slot.arity = arity;
    slot.ordinal = ordinals_[static_cast<int>(construct)]++;
    prog_.hole_slots.push_back(slot);
    return static_cast<int>(prog_.hole_slots.size()) - 1;
  }

  // Parses "(" e1 "," ... eN ")" with exactly n arguments.
  absl::StatusOr<std::vector<ExprPtr>> Args(size_t n) {
    RMTSIM_RETURN_IF_ERROR(ExpectPunct("("));
    std::vector<ExprPtr> args;
    for (size_t i = 0; i < n; ++i) {
      if (i > 0) RMTSIM_RETURN_IF_ERROR(ExpectPunct(","));
      RMTSIM_ASSIGN_OR_RETURN(ExprPtr a, Expression());
      args.push_back(std::move(a));
    }
    RMTSIM_RETURN_IF_ERROR(ExpectPunct(")"));
    return args;
  }

  absl::StatusOr<ExprPtr> Configurable(ExprKind kind, HoleConstruct construct,
                                       int arity, size_t nargs) {
    // Pre-order: the node's own slot precedes its children's.
    const int hole = NewHole(construct, arity);
    RMTSIM_ASSIGN_OR_RETURN(std::vector<ExprPtr> args, Args(nargs));
    return MakeNode(kind, std::move(args), hole);
  }

  absl::StatusOr<ExprPtr> Primary() {
    const Token t = Peek();
    if (t.kind == TokKind::kInt) return Literal(/*negative=*/false);
    if (AtPunct("(")) {
      Advance();
      RMTSIM_ASSIGN_OR_RETURN(ExprPtr e, Expression());
      RMTSIM_RETURN_IF_ERROR(ExpectPunct(")"));
      return e;
    }
    if (t.kind != TokKind::kIdent) return Expected("an expression");
    Advance();
    if (t.text == "C") {
      return Configurable(ExprKind::kConst, HoleConstruct::kImmediate, 0, 0);
    }
    if (t.text == "Opt") {
      return Configurable(ExprKind::kOpt, HoleConstruct::kOptCtrl, 2, 1);
    }
    if (const int n = MuxArity(t.text); n > 0) {
      return Configurable(ExprKind::kMux, HoleConstruct::kMuxCtrl, n, n);
    }
    if (t.text == "arith_op") {
      return Configurable(ExprKind::kArithOp, HoleConstruct::kOpcode,
                          kArithOpcodes, 2);
    }
    if (t.text == "rel_op") {
      return Configurable(ExprKind::kRelOp, HoleConstruct::kOpcode, kRelOpcodes,
                          2);
    }
    if (t.text == "logic_op") {
      return Configurable(ExprKind::kLogicOp, HoleConstruct::kOpcode,
                          kLogicOpcodes, 2);
    }
    if (AtPunct("(") || IsReserved(t.text)) {
      return SyntaxErrorAt(src_, t.offset, "an expression",
                           absl::StrCat("unknown function '", t.text, "'"));
    }
    if (const int local = FindLocal(t.text); local >= 0) {
      return MakeRef(ExprKind::kLocalRef, local, t.text);
    }
    if (const int s = IndexOf(prog_.state_vars, t.text); s >= 0) {
      return MakeRef(ExprKind::kStateRef, s, t.text);
    }
    if (const int p = IndexOf(prog_.packet_operands, t.text); p >= 0) {
      return MakeRef(ExprKind::kOperandRef, p, t.text);
    }
    return ValidationError(absl::StrCat("undeclared identifier '", t.text,
                                        "' at offset ", t.offset));
  }

  absl::string_view src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  AluProgram prog_;
  std::vector<std::vector<std::pair<std::string, int>>> scopes_;
  std::array<int, 4> ordinals_ = {0, 0, 0, 0};
};

// Walks one statement list. `assigned` holds the state variables written on
// the paths entering the list; on return it holds the union over the paths
// that fall through.
absl::Status CheckFlow(const AluProgram& alu, const std::vector<Stmt>& body,
                       std::vector<bool>& assigned, bool* falls_through) {
  bool reachable = true;
  for (const Stmt& s : body) {
    if (!reachable) {
      return ValidationError(
          absl::StrCat("ALU '", alu.name, "' has a statement after return"));
    }
    switch (s.kind) {
      case StmtKind::kAssign:
        if (assigned[s.target]) {
          return ValidationError(
              absl::StrCat("state variable '", s.target_name,
                           "' is assigned more than once on a control path"));
        }
        assigned[s.target] = true;
        break;
      case StmtKind::kLet:
        break;
      case StmtKind::kReturn:
        reachable = false;
        break;
      case StmtKind::kIf: {
        if (s.then_body.empty()) {
          return ValidationError(
              absl::StrCat("ALU '", alu.name, "' has an empty if branch"));
        }
        std::vector<bool> then_assigned = assigned;
        std::vector<bool> else_assigned = assigned;
        bool then_ft = false;
        bool else_ft = true;
        RMTSIM_RETURN_IF_ERROR(
            CheckFlow(alu, s.then_body, then_assigned, &then_ft));
        RMTSIM_RETURN_IF_ERROR(
            CheckFlow(alu, s.else_body, else_assigned, &else_ft));
        if (!then_ft && !else_ft) {
          reachable = false;
          break;
        }
        for (size_t i = 0; i < assigned.size(); ++i) {
          assigned[i] =
              (then_ft && then_assigned[i]) || (else_ft && else_assigned[i]);
        }
        break;
      }
    }
  }
  *falls_through = reachable;
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<AluProgram> ParseAlu(absl::string_view source,
                                    absl::string_view name) {
  RMTSIM_ASSIGN_OR_RETURN(std::vector<Token> toks, Lex(source));
  Parser parser(source, std::move(toks));
  RMTSIM_ASSIGN_OR_RETURN(AluProgram alu, parser.Program(name));
  std::vector<bool> assigned(alu.state_vars.size(), false);
  bool falls_through = false;
  RMTSIM_RETURN_IF_ERROR(CheckFlow(alu, alu.body, assigned, &falls_through));
  if (falls_through) {
    return ValidationError(absl::StrCat(
        "ALU '", alu.name, "' does not return a value on every control path"));
  }
  return alu;
}

absl::StatusOr<AluProgram> ParseAluFile(const std::filesystem::path& path) {
  RMTSIM_ASSIGN_OR_RETURN(std::string source, internal::ReadFile(path));
  absl::StatusOr<AluProgram> alu = ParseAlu(source, path.stem().string());
  if (!alu.ok()) {
    return absl::Status(
        alu.status().code(),
        absl::StrCat(path.string(), ": ", alu.status().message()));
  }
  return alu;
}

}  // namespace rmtsim
