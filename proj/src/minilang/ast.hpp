#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ghostsym::minilang {

struct SrcLoc {
  int line = 0;
  int col = 0;
};

struct Type {
  enum class Kind { Void, Int, Float, Bool, Ptr };
  Kind kind = Kind::Void;
  std::string record;  // Ptr only

  bool operator==(const Type& o) const {
    return kind == o.kind && (kind != Kind::Ptr || record == o.record);
  }
  bool operator!=(const Type& o) const { return !(*this == o); }

  static Type void_t() { return {Kind::Void, {}}; }
  static Type int_t() { return {Kind::Int, {}}; }
  static Type float_t() { return {Kind::Float, {}}; }
  static Type bool_t() { return {Kind::Bool, {}}; }
  static Type ptr(std::string rec) { return {Kind::Ptr, std::move(rec)}; }

  std::string str() const;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    IntLit,
    FloatLit,
    BoolLit,
    NullLit,
    Var,
    Field,      // a->name
    Unary,      // op: "!", "-", "~"
    Binary,     // op: arithmetic / comparison / logical
    Intrinsic,  // name(args): sin cos fabs hi_bits
    Malloc,     // malloc(name)
  };

  Kind kind;
  SrcLoc loc;
  mutable Type type;  // annotated by the checker

  int32_t int_val = 0;
  double float_val = 0.0;
  bool bool_val = false;
  std::string name;  // Var / Field name / Intrinsic name / Malloc record
  std::string op;
  ExprPtr a, b;
  std::vector<ExprPtr> args;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
using Block = std::vector<StmtPtr>;

struct Stmt {
  enum class Kind {
    Decl,        // type name [= e];
    Assign,      // name = e;
    FieldStore,  // obj->field = e;
    If,          // if (cond) body else els
    While,       // while (cond) body
    Call,        // [lhs =] callee(args);
    Return,      // return [e];
    Assume,      // assume(e);
    Assert,      // assert(e);
    Bomb,        // bomb(num);
    Emit,        // emit(args);   -- ghost inverse output
    Labeled,     // @name { body }
    // Internal statements emitted by transformations; not part of the
    // surface grammar and never executed concretely.
    Havoc,       // name := fresh symbol of `type`
    HavocField,  // freshen field `field` in all cells of record `name`
    GhostAlloc,  // name := fresh cell of record `field`, symbolic fields
    Choose,      // name := selector in [0, num)
    Snapshot,    // input snapshot marker
  };

  Kind kind;
  SrcLoc loc;

  std::string name;   // Decl/Assign/Havoc/GhostAlloc/Choose var, Call callee, Labeled label
  std::string field;  // FieldStore field, HavocField field, GhostAlloc record
  std::string lhs;    // Call result var (may be empty)
  Type type;          // Decl/Havoc declared type
  int num = 0;        // Bomb id, Choose case count

  ExprPtr e;     // Decl init / Assign rhs / FieldStore value / Return value
  ExprPtr obj;   // FieldStore object
  ExprPtr cond;  // If/While/Assume/Assert guard
  std::vector<ExprPtr> args;
  Block body, els;

  int branch_id = -1;  // If/While/Assert
};

struct Param {
  std::string name;
  Type type;
  bool symbolic = false;
};

struct Proc {
  std::string name;
  Type ret;
  std::vector<Param> params;
  Block body;
  SrcLoc loc;
};

struct RecordDecl {
  std::string name;
  std::vector<Param> fields;
  SrcLoc loc;
};

struct FragmentLabel {
  std::string label;
};

struct Program {
  std::vector<RecordDecl> records;
  std::vector<Proc> procs;
  std::string entry = "main";
  int next_branch_id = 0;  // branch ids below this belong to the source program

  const Proc* find_proc(const std::string& name) const;
  const RecordDecl* find_record(const std::string& name) const;
};

// --- fragment addressing -------------------------------------------------

// Locates the labeled fragment; throws UnknownLabel when absent.
struct FragmentRef {
  const Proc* proc = nullptr;
  const Stmt* labeled = nullptr;  // the Labeled statement
};
FragmentRef find_fragment(const Program& p, const std::string& label);
bool has_fragment(const Program& p, const std::string& label);
std::vector<std::string> all_fragment_labels(const Program& p);

// Returns a copy of `p` with the labeled fragment's body replaced;
// untouched statements are shared with the original.
Program replace_fragment(const Program& p, const std::string& label,
                         Block replacement);

// Returns a copy with new statements spliced in front of the labeled
// fragment (inside the label's scope the fragment itself stays last).
Program insert_before_fragment(const Program& p, const std::string& label,
                               Block prelude);

// --- misc helpers ---------------------------------------------------------

bool equal_programs(const Program& a, const Program& b);

// Total number of (branch, polarity) pairs in source branches
// (if / while / assert), counting the program as written.
int static_branch_count(const Program& p);

// All source branch ids (if/while/assert) of the program.
std::vector<int> all_branch_ids(const Program& p);

// All bomb ids present in the program.
std::vector<int> all_bomb_ids(const Program& p);

std::shared_ptr<Stmt> clone_stmt(const Stmt& s);

}  // namespace ghostsym::minilang
