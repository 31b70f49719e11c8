#include <cstdio>
#include <sstream>

#include "minilang/parser.hpp"

namespace ghostsym::minilang {

namespace {

int prec_of(const std::string& op) {
  if (op == "||") return 0;
  if (op == "&&") return 1;
  if (op == "|") return 2;
  if (op == "^") return 3;
  if (op == "&") return 4;
  if (op == "==" || op == "!=") return 5;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 6;
  if (op == "<<" || op == ">>") return 7;
  if (op == "+" || op == "-") return 8;
  return 9;  // * / %
}

std::string float_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s = buf;
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

std::string int_text(int32_t v) {
  if (v < 0) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "0x%08x", static_cast<uint32_t>(v));
    return buf;
  }
  return std::to_string(v);
}

class Printer {
public:
  std::string print(const Program& p) {
    for (const auto& r : p.records) {
      os_ << "struct " << r.name << " {\n";
      for (const auto& f : r.fields)
        os_ << "  " << f.type.str() << " " << f.name << ";\n";
      os_ << "}\n\n";
    }
    for (const auto& pr : p.procs) {
      os_ << pr.ret.str() << " " << pr.name << "(";
      for (size_t i = 0; i < pr.params.size(); ++i) {
        if (i) os_ << ", ";
        os_ << pr.params[i].type.str() << " " << pr.params[i].name;
        if (pr.params[i].symbolic) os_ << " symbolic";
      }
      os_ << ") {\n";
      block(pr.body, 1);
      os_ << "}\n\n";
    }
    return os_.str();
  }

private:
  void indent(int n) {
    for (int i = 0; i < n; ++i) os_ << "  ";
  }

  void block(const Block& b, int depth) {
    for (const auto& s : b) stmt(*s, depth);
  }

  void stmt(const Stmt& s, int d) {
    indent(d);
    switch (s.kind) {
      case Stmt::Kind::Decl:
        os_ << s.type.str() << " " << s.name;
        if (s.e) os_ << " = " << expr(*s.e, -1);
        os_ << ";\n";
        break;
      case Stmt::Kind::Assign:
        os_ << s.name << " = " << expr(*s.e, -1) << ";\n";
        break;
      case Stmt::Kind::FieldStore:
        os_ << expr(*s.obj, 11) << "->" << s.field << " = " << expr(*s.e, -1)
            << ";\n";
        break;
      case Stmt::Kind::If:
        os_ << "if (" << expr(*s.cond, -1) << ") {\n";
        block(s.body, d + 1);
        indent(d);
        os_ << "}";
        if (!s.els.empty()) {
          os_ << " else {\n";
          block(s.els, d + 1);
          indent(d);
          os_ << "}";
        }
        os_ << "\n";
        break;
      case Stmt::Kind::While:
        os_ << "while (" << expr(*s.cond, -1) << ") {\n";
        block(s.body, d + 1);
        indent(d);
        os_ << "}\n";
        break;
      case Stmt::Kind::Call:
        if (!s.lhs.empty()) os_ << s.lhs << " = ";
        os_ << s.name << "(";
        for (size_t i = 0; i < s.args.size(); ++i) {
          if (i) os_ << ", ";
          os_ << expr(*s.args[i], -1);
        }
        os_ << ");\n";
        break;
      case Stmt::Kind::Return:
        os_ << "return";
        if (s.e) os_ << " " << expr(*s.e, -1);
        os_ << ";\n";
        break;
      case Stmt::Kind::Assume:
        os_ << "assume(" << expr(*s.cond, -1) << ");\n";
        break;
      case Stmt::Kind::Assert:
        os_ << "assert(" << expr(*s.cond, -1) << ");\n";
        break;
      case Stmt::Kind::Bomb:
        os_ << "bomb(" << s.num << ");\n";
        break;
      case Stmt::Kind::Emit:
        os_ << "emit(";
        for (size_t i = 0; i < s.args.size(); ++i) {
          if (i) os_ << ", ";
          os_ << expr(*s.args[i], -1);
        }
        os_ << ");\n";
        break;
      case Stmt::Kind::Labeled:
        os_ << "@" << s.name << " {\n";
        block(s.body, d + 1);
        indent(d);
        os_ << "}\n";
        break;
      // Internal statements: printed for diagnostics, not reparseable.
      case Stmt::Kind::Havoc:
        os_ << "havoc " << s.name << ";\n";
        break;
      case Stmt::Kind::HavocField:
        os_ << "havoc_field " << s.name << "." << s.field << ";\n";
        break;
      case Stmt::Kind::GhostAlloc:
        os_ << "ghost_alloc " << s.name << " : " << s.field << ";\n";
        break;
      case Stmt::Kind::Choose:
        os_ << s.name << " = choose(" << s.num << ");\n";
        break;
      case Stmt::Kind::Snapshot:
        os_ << "snapshot;\n";
        break;
    }
  }

  std::string expr(const Expr& e, int parent_prec) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::IntLit: return int_text(e.int_val);
      case K::FloatLit:
        if (e.float_val < 0)
          return "(0.0 - " + float_text(-e.float_val) + ")";
        return float_text(e.float_val);
      case K::BoolLit: return e.bool_val ? "true" : "false";
      case K::NullLit: return "null";
      case K::Var: return e.name;
      case K::Field: return expr(*e.a, 11) + "->" + e.name;
      case K::Unary: return e.op + expr(*e.a, 10);
      case K::Binary: {
        int p = prec_of(e.op);
        std::string body = expr(*e.a, p) + " " + e.op + " " + expr(*e.b, p + 1);
        if (p < parent_prec) return "(" + body + ")";
        return body;
      }
      case K::Intrinsic: {
        std::string s = e.name + "(";
        for (size_t i = 0; i < e.args.size(); ++i) {
          if (i) s += ", ";
          s += expr(*e.args[i], -1);
        }
        return s + ")";
      }
      case K::Malloc: return "malloc(" + e.name + ")";
    }
    return "?";
  }

  std::ostringstream os_;
};

}  // namespace

std::string pretty_print(const Program& p) { return Printer().print(p); }

}  // namespace ghostsym::minilang
