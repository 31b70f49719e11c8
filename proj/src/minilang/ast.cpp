#include "minilang/ast.hpp"

#include <functional>

#include "util/error.hpp"

namespace ghostsym::minilang {

std::string Type::str() const {
  switch (kind) {
    case Kind::Void: return "void";
    case Kind::Int: return "int";
    case Kind::Float: return "float";
    case Kind::Bool: return "bool";
    case Kind::Ptr: return record + "*";
  }
  return "?";
}

const Proc* Program::find_proc(const std::string& name) const {
  for (const auto& p : procs)
    if (p.name == name) return &p;
  return nullptr;
}

const RecordDecl* Program::find_record(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

void walk_block(const Block& b, const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : b) {
    fn(*s);
    if (!s->body.empty()) walk_block(s->body, fn);
    if (!s->els.empty()) walk_block(s->els, fn);
  }
}

}  // namespace

FragmentRef find_fragment(const Program& p, const std::string& label) {
  FragmentRef ref;
  for (const auto& proc : p.procs) {
    walk_block(proc.body, [&](const Stmt& s) {
      if (s.kind == Stmt::Kind::Labeled && s.name == label) {
        ref.proc = &proc;
        ref.labeled = &s;
      }
    });
    if (ref.labeled) return ref;
  }
  fail(ErrorCode::unknown_label, "no fragment @" + label);
}

bool has_fragment(const Program& p, const std::string& label) {
  bool found = false;
  for (const auto& proc : p.procs)
    walk_block(proc.body, [&](const Stmt& s) {
      if (s.kind == Stmt::Kind::Labeled && s.name == label) found = true;
    });
  return found;
}

std::vector<std::string> all_fragment_labels(const Program& p) {
  std::vector<std::string> out;
  for (const auto& proc : p.procs)
    walk_block(proc.body, [&](const Stmt& s) {
      if (s.kind == Stmt::Kind::Labeled) out.push_back(s.name);
    });
  return out;
}

std::shared_ptr<Stmt> clone_stmt(const Stmt& s) {
  return std::make_shared<Stmt>(s);
}

namespace {

enum class SpliceMode { Replace, InsertBefore };

bool rewrite_block(const Block& in, const std::string& label, const Block& repl,
                   SpliceMode mode, Block& out) {
  bool changed = false;
  for (const auto& s : in) {
    if (s->kind == Stmt::Kind::Labeled && s->name == label) {
      if (mode == SpliceMode::Replace) {
        auto copy = std::make_shared<Stmt>(*s);
        copy->body = repl;
        out.push_back(copy);
      } else {
        for (const auto& pre : repl) out.push_back(pre);
        out.push_back(s);
      }
      changed = true;
      continue;
    }
    if (!s->body.empty() || !s->els.empty()) {
      Block nb, ne;
      bool cb = rewrite_block(s->body, label, repl, mode, nb);
      bool ce = rewrite_block(s->els, label, repl, mode, ne);
      if (cb || ce) {
        auto copy = std::make_shared<Stmt>(*s);
        if (cb) copy->body = nb;
        if (ce) copy->els = ne;
        out.push_back(copy);
        changed = true;
        continue;
      }
    }
    out.push_back(s);
  }
  return changed;
}

Program splice(const Program& p, const std::string& label, Block repl,
               SpliceMode mode) {
  find_fragment(p, label);  // throws UnknownLabel when absent
  Program q = p;
  for (auto& proc : q.procs) {
    Block nb;
    if (rewrite_block(proc.body, label, repl, mode, nb)) proc.body = nb;
  }
  return q;
}

}  // namespace

Program replace_fragment(const Program& p, const std::string& label,
                         Block replacement) {
  return splice(p, label, std::move(replacement), SpliceMode::Replace);
}

Program insert_before_fragment(const Program& p, const std::string& label,
                               Block prelude) {
  return splice(p, label, std::move(prelude), SpliceMode::InsertBefore);
}

namespace {

bool equal_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->op != b->op) return false;
  switch (a->kind) {
    case Expr::Kind::IntLit:
      if (a->int_val != b->int_val) return false;
      break;
    case Expr::Kind::FloatLit:
      if (a->float_val != b->float_val) return false;
      break;
    case Expr::Kind::BoolLit:
      if (a->bool_val != b->bool_val) return false;
      break;
    default:
      break;
  }
  if (!equal_expr(a->a, b->a) || !equal_expr(a->b, b->b)) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal_expr(a->args[i], b->args[i])) return false;
  return true;
}

bool equal_block(const Block& a, const Block& b);

bool equal_stmt(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->field != b->field ||
      a->lhs != b->lhs || a->num != b->num || a->type != b->type)
    return false;
  if (!equal_expr(a->e, b->e) || !equal_expr(a->obj, b->obj) ||
      !equal_expr(a->cond, b->cond))
    return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal_expr(a->args[i], b->args[i])) return false;
  return equal_block(a->body, b->body) && equal_block(a->els, b->els);
}

bool equal_block(const Block& a, const Block& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal_stmt(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool equal_programs(const Program& a, const Program& b) {
  if (a.entry != b.entry) return false;
  if (a.records.size() != b.records.size() || a.procs.size() != b.procs.size())
    return false;
  for (size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].name != b.records[i].name) return false;
    if (a.records[i].fields.size() != b.records[i].fields.size()) return false;
    for (size_t j = 0; j < a.records[i].fields.size(); ++j) {
      if (a.records[i].fields[j].name != b.records[i].fields[j].name ||
          a.records[i].fields[j].type != b.records[i].fields[j].type)
        return false;
    }
  }
  for (size_t i = 0; i < a.procs.size(); ++i) {
    const auto& pa = a.procs[i];
    const auto& pb = b.procs[i];
    if (pa.name != pb.name || pa.ret != pb.ret ||
        pa.params.size() != pb.params.size())
      return false;
    for (size_t j = 0; j < pa.params.size(); ++j)
      if (pa.params[j].name != pb.params[j].name ||
          pa.params[j].type != pb.params[j].type ||
          pa.params[j].symbolic != pb.params[j].symbolic)
        return false;
    if (!equal_block(pa.body, pb.body)) return false;
  }
  return true;
}

int static_branch_count(const Program& p) {
  return static_cast<int>(all_branch_ids(p).size()) * 2;
}

std::vector<int> all_branch_ids(const Program& p) {
  std::vector<int> ids;
  for (const auto& proc : p.procs)
    walk_block(proc.body, [&](const Stmt& s) {
      if (s.kind == Stmt::Kind::If || s.kind == Stmt::Kind::While ||
          s.kind == Stmt::Kind::Assert)
        ids.push_back(s.branch_id);
    });
  return ids;
}

std::vector<int> all_bomb_ids(const Program& p) {
  std::vector<int> ids;
  for (const auto& proc : p.procs)
    walk_block(proc.body, [&](const Stmt& s) {
      if (s.kind == Stmt::Kind::Bomb) ids.push_back(s.num);
    });
  return ids;
}

}  // namespace ghostsym::minilang
