#include "minilang/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

#include "util/error.hpp"

namespace ghostsym::minilang {

namespace {

// --- lexer -----------------------------------------------------------------

enum class Tok {
  End,
  Ident,
  IntLit,
  FloatLit,
  Punct,  // operators and separators, spelled out in `text`
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int32_t int_val = 0;
  double float_val = 0.0;
  SrcLoc loc;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_ws();
    tok_ = Token{};
    tok_.loc = {line_, col()};
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    // multi-char punctuation first
    static const char* two[] = {"->", "<<", ">>", "<=", ">=", "==",
                                "!=", "&&", "||", nullptr};
    for (int i = 0; two[i]; ++i) {
      if (src_.compare(pos_, 2, two[i]) == 0) {
        tok_.kind = Tok::Punct;
        tok_.text = two[i];
        pos_ += 2;
        return;
      }
    }
    tok_.kind = Tok::Punct;
    tok_.text = std::string(1, c);
    ++pos_;
  }

  void lex_number() {
    size_t start = pos_;
    if (src_.compare(pos_, 2, "0x") == 0 || src_.compare(pos_, 2, "0X") == 0) {
      pos_ += 2;
      while (pos_ < src_.size() &&
             std::isxdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      uint64_t v = std::strtoull(src_.substr(start, pos_ - start).c_str(),
                                 nullptr, 16);
      tok_.kind = Tok::IntLit;
      tok_.int_val = static_cast<int32_t>(static_cast<uint32_t>(v));
      return;
    }
    bool is_float = false;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.' && pos_ + 1 < src_.size() &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      is_float = true;
      ++pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        is_float = true;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      } else {
        pos_ = save;
      }
    }
    std::string text = src_.substr(start, pos_ - start);
    if (is_float) {
      tok_.kind = Tok::FloatLit;
      tok_.float_val = std::strtod(text.c_str(), nullptr);
    } else {
      tok_.kind = Tok::IntLit;
      tok_.int_val =
          static_cast<int32_t>(static_cast<uint32_t>(std::strtoull(
              text.c_str(), nullptr, 10)));
    }
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < src_.size() &&
               !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
          if (src_[pos_] == '\n') {
            ++line_;
            line_start_ = pos_ + 1;
          }
          ++pos_;
        }
        pos_ = pos_ + 2 <= src_.size() ? pos_ + 2 : src_.size();
      } else {
        break;
      }
    }
  }

  int col() const { return static_cast<int>(pos_ - line_start_) + 1; }

  const std::string& src_;
  size_t pos_ = 0;
  size_t line_start_ = 0;
  int line_ = 1;
  Token tok_;
};

bool is_intrinsic(const std::string& n) {
  return n == "sin" || n == "cos" || n == "fabs" || n == "hi_bits";
}

bool is_type_keyword(const std::string& n) {
  return n == "int" || n == "float" || n == "bool" || n == "void";
}

bool is_keyword(const std::string& n) {
  return is_type_keyword(n) || n == "struct" || n == "if" || n == "else" ||
         n == "while" || n == "return" || n == "assert" || n == "assume" ||
         n == "bomb" || n == "emit" || n == "malloc" || n == "null" ||
         n == "true" || n == "false" || n == "symbolic";
}

// --- parser ----------------------------------------------------------------

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) { prescan(src); }

  Program parse() {
    Program p;
    while (lex_.peek().kind != Tok::End) {
      if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "struct") {
        p.records.push_back(parse_record());
      } else {
        p.procs.push_back(parse_proc());
      }
    }
    p.next_branch_id = next_branch_;
    return p;
  }

private:
  [[noreturn]] void err(const SrcLoc& loc, const std::string& what) {
    std::ostringstream os;
    os << "line " << loc.line << " col " << loc.col << ": " << what;
    fail(ErrorCode::syntax_error, os.str());
  }

  Token expect_punct(const std::string& t) {
    Token tok = lex_.next();
    if (tok.kind != Tok::Punct || tok.text != t)
      err(tok.loc, "expected '" + t + "', got '" + tok.text + "'");
    return tok;
  }

  Token expect_ident() {
    Token tok = lex_.next();
    if (tok.kind != Tok::Ident || is_keyword(tok.text))
      err(tok.loc, "expected identifier, got '" + tok.text + "'");
    return tok;
  }

  bool at_punct(const std::string& t) const {
    return lex_.peek().kind == Tok::Punct && lex_.peek().text == t;
  }
  bool at_ident(const std::string& t) const {
    return lex_.peek().kind == Tok::Ident && lex_.peek().text == t;
  }

  // Records procedure and record names so bodies can call forward.
  void prescan(const std::string& src) {
    Lexer lx(src);
    int depth = 0;
    Token prev2, prev;
    while (lx.peek().kind != Tok::End) {
      Token t = lx.next();
      if (t.kind == Tok::Punct && t.text == "{") ++depth;
      if (t.kind == Tok::Punct && t.text == "}") --depth;
      if (depth == 0 && t.kind == Tok::Punct && t.text == "(" &&
          prev.kind == Tok::Ident && !is_keyword(prev.text) &&
          prev2.kind == Tok::Ident &&
          (is_type_keyword(prev2.text) || !is_keyword(prev2.text)))
        proc_names_.insert(prev.text);
      if (depth == 0 && t.kind == Tok::Punct && t.text == "(" &&
          prev.kind == Tok::Ident && !is_keyword(prev.text) &&
          prev2.kind == Tok::Punct && prev2.text == "*")
        proc_names_.insert(prev.text);
      if (t.kind == Tok::Ident && t.text == "struct" && depth == 0) {
        Token name = lx.next();
        if (name.kind == Tok::Ident) record_names_.insert(name.text);
        prev2 = prev;
        prev = name;
        continue;
      }
      prev2 = prev;
      prev = t;
    }
  }

  Type parse_type() {
    Token t = lex_.next();
    if (t.kind != Tok::Ident) err(t.loc, "expected type");
    if (t.text == "int") return Type::int_t();
    if (t.text == "float") return Type::float_t();
    if (t.text == "bool") return Type::bool_t();
    if (t.text == "void") return Type::void_t();
    if (record_names_.count(t.text)) {
      expect_punct("*");
      return Type::ptr(t.text);
    }
    err(t.loc, "unknown type '" + t.text + "'");
  }

  bool at_type() const {
    const Token& t = lex_.peek();
    if (t.kind != Tok::Ident) return false;
    return t.text == "int" || t.text == "float" || t.text == "bool" ||
           record_names_.count(t.text) > 0;
  }

  RecordDecl parse_record() {
    RecordDecl r;
    r.loc = lex_.peek().loc;
    lex_.next();  // struct
    r.name = expect_ident().text;
    expect_punct("{");
    while (!at_punct("}")) {
      Param f;
      f.type = parse_type();
      f.name = expect_ident().text;
      expect_punct(";");
      r.fields.push_back(f);
    }
    expect_punct("}");
    if (at_punct(";")) lex_.next();
    return r;
  }

  Proc parse_proc() {
    Proc p;
    p.loc = lex_.peek().loc;
    p.ret = parse_type();
    p.name = expect_ident().text;
    expect_punct("(");
    if (!at_punct(")")) {
      for (;;) {
        Param prm;
        prm.type = parse_type();
        prm.name = expect_ident().text;
        if (at_ident("symbolic")) {
          lex_.next();
          prm.symbolic = true;
        }
        p.params.push_back(prm);
        if (at_punct(",")) {
          lex_.next();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    p.body = parse_block();
    return p;
  }

  Block parse_block() {
    expect_punct("{");
    Block b;
    while (!at_punct("}")) parse_stmt_into(b);
    expect_punct("}");
    return b;
  }

  void parse_stmt_into(Block& out) {
    if (lex_.peek().kind == Tok::Ident && at_type()) {
      parse_decl_into(out);
      return;
    }
    out.push_back(parse_stmt());
  }

  StmtPtr parse_stmt() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Punct && t.text == "@") return parse_labeled();
    if (t.kind != Tok::Ident) err(t.loc, "expected statement");

    if (t.text == "if") return parse_if();
    if (t.text == "while") return parse_while();
    if (t.text == "return") return parse_return();
    if (t.text == "assert" || t.text == "assume") return parse_check(t.text);
    if (t.text == "bomb") return parse_bomb();
    if (t.text == "emit") return parse_emit();

    // assignment / field store / bare call
    Token name = expect_ident();
    if (at_punct("(")) {
      auto s = std::make_shared<Stmt>();
      s->kind = Stmt::Kind::Call;
      s->loc = name.loc;
      s->name = name.text;
      s->args = parse_call_args();
      expect_punct(";");
      return s;
    }
    if (at_punct("->")) {
      // lvalue chain: name->f1->...->fn = expr
      ExprPtr obj = make_var(name);
      std::string last_field;
      while (at_punct("->")) {
        lex_.next();
        Token f = expect_ident();
        if (at_punct("->")) {
          obj = make_field(obj, f.text, f.loc);
        } else {
          last_field = f.text;
          break;
        }
      }
      auto s = std::make_shared<Stmt>();
      s->kind = Stmt::Kind::FieldStore;
      s->loc = name.loc;
      s->obj = obj;
      s->field = last_field;
      expect_punct("=");
      s->e = parse_expr();
      expect_punct(";");
      return s;
    }
    expect_punct("=");
    return parse_assign_rhs(name);
  }

  StmtPtr parse_labeled() {
    Token at = lex_.next();  // '@'
    Token name = expect_ident();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Labeled;
    s->loc = at.loc;
    s->name = name.text;
    s->body = parse_block();
    return s;
  }

  void parse_decl_into(Block& out) {
    auto s = std::make_shared<Stmt>();
    s->loc = lex_.peek().loc;
    s->kind = Stmt::Kind::Decl;
    s->type = parse_type();
    Token name = expect_ident();
    s->name = name.text;
    if (at_punct("=")) {
      lex_.next();
      StmtPtr inner = parse_assign_rhs(name);
      if (inner->kind == Stmt::Kind::Assign) {
        auto copy = std::make_shared<Stmt>(*inner);
        copy->kind = Stmt::Kind::Decl;
        copy->type = s->type;
        out.push_back(copy);
      } else {
        // `T x = f(...);` becomes a declaration followed by the call.
        out.push_back(s);
        out.push_back(inner);
      }
      return;
    }
    expect_punct(";");
    out.push_back(s);
  }

  // After `name =` has been consumed: expr, malloc, or user call.
  StmtPtr parse_assign_rhs(const Token& name) {
    auto s = std::make_shared<Stmt>();
    s->loc = name.loc;
    if (at_ident("malloc")) {
      lex_.next();
      expect_punct("(");
      Token rec = expect_ident();
      expect_punct(")");
      expect_punct(";");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Malloc;
      e->loc = rec.loc;
      e->name = rec.text;
      s->kind = Stmt::Kind::Assign;
      s->name = name.text;
      s->e = e;
      return s;
    }
    if (lex_.peek().kind == Tok::Ident && proc_names_.count(lex_.peek().text) &&
        !is_intrinsic(lex_.peek().text)) {
      Token callee = lex_.next();
      s->kind = Stmt::Kind::Call;
      s->name = callee.text;
      s->lhs = name.text;
      s->args = parse_call_args();
      expect_punct(";");
      return s;
    }
    s->kind = Stmt::Kind::Assign;
    s->name = name.text;
    s->e = parse_expr();
    expect_punct(";");
    return s;
  }

  std::vector<ExprPtr> parse_call_args() {
    expect_punct("(");
    std::vector<ExprPtr> args;
    if (!at_punct(")")) {
      for (;;) {
        args.push_back(parse_expr());
        if (at_punct(",")) {
          lex_.next();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    return args;
  }

  StmtPtr parse_if() {
    Token kw = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::If;
    s->loc = kw.loc;
    s->branch_id = next_branch_++;
    expect_punct("(");
    s->cond = parse_expr();
    expect_punct(")");
    s->body = parse_block();
    if (at_ident("else")) {
      lex_.next();
      if (at_ident("if")) {
        s->els.push_back(parse_if());
      } else {
        s->els = parse_block();
      }
    }
    return s;
  }

  StmtPtr parse_while() {
    Token kw = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::While;
    s->loc = kw.loc;
    s->branch_id = next_branch_++;
    expect_punct("(");
    s->cond = parse_expr();
    expect_punct(")");
    s->body = parse_block();
    return s;
  }

  StmtPtr parse_return() {
    Token kw = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Return;
    s->loc = kw.loc;
    if (!at_punct(";")) s->e = parse_expr();
    expect_punct(";");
    return s;
  }

  StmtPtr parse_check(const std::string& kw) {
    Token t = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = kw == "assert" ? Stmt::Kind::Assert : Stmt::Kind::Assume;
    s->loc = t.loc;
    if (s->kind == Stmt::Kind::Assert) s->branch_id = next_branch_++;
    expect_punct("(");
    s->cond = parse_expr();
    expect_punct(")");
    expect_punct(";");
    return s;
  }

  StmtPtr parse_bomb() {
    Token t = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Bomb;
    s->loc = t.loc;
    expect_punct("(");
    Token id = lex_.next();
    if (id.kind != Tok::IntLit) err(id.loc, "bomb id must be an int literal");
    s->num = id.int_val;
    expect_punct(")");
    expect_punct(";");
    return s;
  }

  StmtPtr parse_emit() {
    Token t = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Emit;
    s->loc = t.loc;
    s->args = parse_call_args();
    expect_punct(";");
    return s;
  }

  // --- expressions, C precedence ------------------------------------------

  ExprPtr parse_expr() { return parse_bin(0); }

  struct Level {
    const char* ops[5];
  };

  ExprPtr parse_bin(int lvl) {
    static const Level levels[] = {
        {{"||", nullptr}},
        {{"&&", nullptr}},
        {{"|", nullptr}},
        {{"^", nullptr}},
        {{"&", nullptr}},
        {{"==", "!=", nullptr}},
        {{"<", "<=", ">", ">=", nullptr}},
        {{"<<", ">>", nullptr}},
        {{"+", "-", nullptr}},
        {{"*", "/", "%", nullptr}},
    };
    constexpr int n_levels = sizeof(levels) / sizeof(levels[0]);
    if (lvl >= n_levels) return parse_unary();
    ExprPtr lhs = parse_bin(lvl + 1);
    for (;;) {
      bool matched = false;
      if (lex_.peek().kind == Tok::Punct) {
        for (int i = 0; levels[lvl].ops[i]; ++i) {
          if (lex_.peek().text == levels[lvl].ops[i]) {
            Token op = lex_.next();
            ExprPtr rhs = parse_bin(lvl + 1);
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Binary;
            e->loc = op.loc;
            e->op = op.text;
            e->a = lhs;
            e->b = rhs;
            lhs = e;
            matched = true;
            break;
          }
        }
      }
      if (!matched) return lhs;
    }
  }

  ExprPtr parse_unary() {
    if (at_punct("!") || at_punct("-") || at_punct("~")) {
      Token op = lex_.next();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Unary;
      e->loc = op.loc;
      e->op = op.text;
      e->a = parse_unary();
      return e;
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (at_punct("->")) {
      lex_.next();
      Token f = expect_ident();
      e = make_field(e, f.text, f.loc);
    }
    return e;
  }

  ExprPtr parse_primary() {
    Token t = lex_.next();
    auto e = std::make_shared<Expr>();
    e->loc = t.loc;
    switch (t.kind) {
      case Tok::IntLit:
        e->kind = Expr::Kind::IntLit;
        e->int_val = t.int_val;
        return e;
      case Tok::FloatLit:
        e->kind = Expr::Kind::FloatLit;
        e->float_val = t.float_val;
        return e;
      case Tok::Punct:
        if (t.text == "(") {
          ExprPtr inner = parse_expr();
          expect_punct(")");
          return inner;
        }
        err(t.loc, "unexpected '" + t.text + "' in expression");
      case Tok::Ident:
        if (t.text == "true" || t.text == "false") {
          e->kind = Expr::Kind::BoolLit;
          e->bool_val = t.text == "true";
          return e;
        }
        if (t.text == "null") {
          e->kind = Expr::Kind::NullLit;
          return e;
        }
        if (is_intrinsic(t.text)) {
          e->kind = Expr::Kind::Intrinsic;
          e->name = t.text;
          e->args = parse_call_args();
          return e;
        }
        if (is_keyword(t.text)) err(t.loc, "unexpected keyword '" + t.text + "'");
        if (proc_names_.count(t.text) && at_punct("("))
          err(t.loc, "procedure calls are statements, not expressions");
        e->kind = Expr::Kind::Var;
        e->name = t.text;
        return e;
      case Tok::End:
        err(t.loc, "unexpected end of input in expression");
    }
    err(t.loc, "unexpected token");
  }

  static ExprPtr make_var(const Token& t) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->loc = t.loc;
    e->name = t.text;
    return e;
  }

  static ExprPtr make_field(ExprPtr obj, const std::string& f, SrcLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Field;
    e->loc = loc;
    e->name = f;
    e->a = std::move(obj);
    return e;
  }

  Lexer lex_;
  std::set<std::string> proc_names_;
  std::set<std::string> record_names_;
  int next_branch_ = 0;
};

}  // namespace

Program parse_program(const std::string& source) {
  Parser parser(source);
  Program p = parser.parse();
  check_program(p);
  return p;
}

}  // namespace ghostsym::minilang
