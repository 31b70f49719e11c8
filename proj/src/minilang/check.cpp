#include <map>
#include <set>
#include <sstream>

#include "minilang/parser.hpp"
#include "util/error.hpp"

namespace ghostsym::minilang {

namespace {

class Checker {
public:
  explicit Checker(Program& p) : p_(p) {}

  void run() {
    std::set<std::string> names;
    for (const auto& r : p_.records) {
      if (!names.insert(r.name).second)
        err(r.loc, "duplicate record '" + r.name + "'");
      for (const auto& f : r.fields)
        if (f.type.kind == Type::Kind::Void)
          err(r.loc, "record field cannot be void");
      for (const auto& f : r.fields)
        if (f.type.kind == Type::Kind::Ptr && !p_.find_record(f.type.record))
          err(r.loc, "unknown record '" + f.type.record + "'");
    }
    std::set<std::string> procs;
    for (const auto& pr : p_.procs)
      if (!procs.insert(pr.name).second)
        err(pr.loc, "duplicate procedure '" + pr.name + "'");

    std::set<std::string> labels;
    for (auto& pr : p_.procs) check_proc(pr, labels);
  }

private:
  [[noreturn]] void err(const SrcLoc& loc, const std::string& what) {
    std::ostringstream os;
    os << "line " << loc.line << " col " << loc.col << ": " << what;
    fail(ErrorCode::sort_error, os.str());
  }

  bool compat(const Type& a, const Type& b) {
    if (a == b) return true;
    if (a.kind == Type::Kind::Ptr && b.kind == Type::Kind::Ptr)
      return a.record.empty() || b.record.empty();
    return false;
  }

  void check_proc(Proc& pr, std::set<std::string>& labels) {
    vars_.clear();
    for (const auto& prm : pr.params) {
      if (prm.type.kind == Type::Kind::Void) err(pr.loc, "void parameter");
      if (!vars_.emplace(prm.name, prm.type).second)
        err(pr.loc, "duplicate parameter '" + prm.name + "'");
    }
    ret_ = pr.ret;
    check_block(pr.body, labels);
  }

  void check_block(const Block& b, std::set<std::string>& labels) {
    for (const auto& sp : b) check_stmt(*sp, labels);
  }

  void check_stmt(const Stmt& s, std::set<std::string>& labels) {
    switch (s.kind) {
      case Stmt::Kind::Decl: {
        if (s.type.kind == Type::Kind::Void) err(s.loc, "void variable");
        if (!vars_.emplace(s.name, s.type).second)
          err(s.loc, "redeclaration of '" + s.name + "'");
        if (s.e) {
          Type t = type_of(*s.e);
          if (!compat(t, s.type))
            err(s.loc, "initializer type " + t.str() + " does not match " +
                           s.type.str());
        }
        break;
      }
      case Stmt::Kind::Assign: {
        Type vt = var_type(s.name, s.loc);
        Type t = type_of(*s.e);
        if (!compat(t, vt))
          err(s.loc, "cannot assign " + t.str() + " to " + vt.str());
        break;
      }
      case Stmt::Kind::FieldStore: {
        Type ot = type_of(*s.obj);
        if (ot.kind != Type::Kind::Ptr || ot.record.empty())
          err(s.loc, "field store on non-pointer");
        const RecordDecl* rec = p_.find_record(ot.record);
        const Param* f = find_field(rec, s.field, s.loc);
        Type t = type_of(*s.e);
        if (!compat(t, f->type))
          err(s.loc, "cannot store " + t.str() + " into field of type " +
                         f->type.str());
        break;
      }
      case Stmt::Kind::If:
      case Stmt::Kind::While: {
        if (type_of(*s.cond).kind != Type::Kind::Bool)
          err(s.loc, "guard must be bool");
        check_block(s.body, labels);
        check_block(s.els, labels);
        break;
      }
      case Stmt::Kind::Assume:
      case Stmt::Kind::Assert: {
        if (type_of(*s.cond).kind != Type::Kind::Bool)
          err(s.loc, "condition must be bool");
        break;
      }
      case Stmt::Kind::Call: {
        const Proc* callee = p_.find_proc(s.name);
        if (!callee) err(s.loc, "unknown procedure '" + s.name + "'");
        if (callee->params.size() != s.args.size())
          err(s.loc, "arity mismatch calling '" + s.name + "'");
        for (size_t i = 0; i < s.args.size(); ++i) {
          Type t = type_of(*s.args[i]);
          if (!compat(t, callee->params[i].type))
            err(s.loc, "argument " + std::to_string(i + 1) + " of '" + s.name +
                           "' has type " + t.str() + ", expected " +
                           callee->params[i].type.str());
        }
        if (!s.lhs.empty()) {
          Type vt = var_type(s.lhs, s.loc);
          if (callee->ret.kind == Type::Kind::Void)
            err(s.loc, "void call cannot produce a value");
          if (!compat(callee->ret, vt))
            err(s.loc, "call result type mismatch");
        }
        break;
      }
      case Stmt::Kind::Return: {
        if (s.e) {
          Type t = type_of(*s.e);
          if (!compat(t, ret_)) err(s.loc, "return type mismatch");
        } else if (ret_.kind != Type::Kind::Void) {
          err(s.loc, "missing return value");
        }
        break;
      }
      case Stmt::Kind::Bomb:
        break;
      case Stmt::Kind::Emit: {
        for (const auto& a : s.args)
          if (type_of(*a).kind == Type::Kind::Void)
            err(s.loc, "emit of void value");
        break;
      }
      case Stmt::Kind::Labeled: {
        if (!labels.insert(s.name).second)
          err(s.loc, "duplicate fragment label @" + s.name);
        check_block(s.body, labels);
        break;
      }
      case Stmt::Kind::Havoc: {
        var_type(s.name, s.loc);
        break;
      }
      case Stmt::Kind::HavocField:
        break;
      case Stmt::Kind::GhostAlloc: {
        if (!p_.find_record(s.field))
          err(s.loc, "unknown record '" + s.field + "'");
        vars_.emplace(s.name, Type::ptr(s.field));
        break;
      }
      case Stmt::Kind::Choose: {
        vars_.emplace(s.name, Type::int_t());
        break;
      }
      case Stmt::Kind::Snapshot:
        break;
    }
  }

  Type var_type(const std::string& name, const SrcLoc& loc) {
    auto it = vars_.find(name);
    if (it == vars_.end()) err(loc, "undeclared variable '" + name + "'");
    return it->second;
  }

  const Param* find_field(const RecordDecl* rec, const std::string& f,
                          const SrcLoc& loc) {
    for (const auto& fld : rec->fields)
      if (fld.name == f) return &fld;
    err(loc, "record " + rec->name + " has no field '" + f + "'");
  }

  Type type_of(const Expr& e) {
    Type t = infer(e);
    e.type = t;
    return t;
  }

  Type infer(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::IntLit: return Type::int_t();
      case K::FloatLit: return Type::float_t();
      case K::BoolLit: return Type::bool_t();
      case K::NullLit: return Type::ptr("");
      case K::Var: return var_type(e.name, e.loc);
      case K::Field: {
        Type ot = type_of(*e.a);
        if (ot.kind != Type::Kind::Ptr || ot.record.empty())
          err(e.loc, "field access on non-pointer");
        return find_field(p_.find_record(ot.record), e.name, e.loc)->type;
      }
      case K::Unary: {
        Type t = type_of(*e.a);
        if (e.op == "!") {
          if (t.kind != Type::Kind::Bool) err(e.loc, "! needs bool");
          return t;
        }
        if (e.op == "~") {
          if (t.kind != Type::Kind::Int) err(e.loc, "~ needs int");
          return t;
        }
        if (t.kind != Type::Kind::Int && t.kind != Type::Kind::Float)
          err(e.loc, "unary - needs numeric operand");
        return t;
      }
      case K::Binary: {
        Type a = type_of(*e.a);
        Type b = type_of(*e.b);
        const std::string& op = e.op;
        if (op == "&&" || op == "||") {
          if (a.kind != Type::Kind::Bool || b.kind != Type::Kind::Bool)
            err(e.loc, op + " needs bool operands");
          return Type::bool_t();
        }
        if (op == "&" || op == "|" || op == "^" || op == "<<" || op == ">>" ||
            op == "%") {
          if (a.kind != Type::Kind::Int || b.kind != Type::Kind::Int)
            err(e.loc, op + " needs int operands");
          return Type::int_t();
        }
        if (op == "+" || op == "-" || op == "*" || op == "/") {
          if (!compat(a, b) || (a.kind != Type::Kind::Int &&
                                a.kind != Type::Kind::Float))
            err(e.loc, op + " needs matching numeric operands");
          return a;
        }
        if (op == "<" || op == "<=" || op == ">" || op == ">=") {
          if (!compat(a, b) || (a.kind != Type::Kind::Int &&
                                a.kind != Type::Kind::Float))
            err(e.loc, op + " needs matching numeric operands");
          return Type::bool_t();
        }
        if (op == "==" || op == "!=") {
          if (!compat(a, b)) err(e.loc, "comparison of mismatched types");
          return Type::bool_t();
        }
        err(e.loc, "unknown operator " + op);
      }
      case K::Intrinsic: {
        if (e.args.size() != 1) err(e.loc, e.name + " takes one argument");
        Type t = type_of(*e.args[0]);
        if (t.kind != Type::Kind::Float)
          err(e.loc, e.name + " needs a float argument");
        return e.name == "hi_bits" ? Type::int_t() : Type::float_t();
      }
      case K::Malloc: {
        if (!p_.find_record(e.name))
          err(e.loc, "unknown record '" + e.name + "'");
        return Type::ptr(e.name);
      }
    }
    err(e.loc, "unreachable expression kind");
  }

  Program& p_;
  std::map<std::string, Type> vars_;
  Type ret_;
};

}  // namespace

void check_program(Program& p) { Checker(p).run(); }

}  // namespace ghostsym::minilang
