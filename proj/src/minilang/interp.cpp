#include "minilang/interp.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "util/error.hpp"

namespace ghostsym::minilang {

std::string Value::str() const {
  std::ostringstream os;
  switch (kind) {
    case Type::Kind::Int: os << i; break;
    case Type::Kind::Float: os << f; break;
    case Type::Kind::Bool: os << (b ? "true" : "false"); break;
    case Type::Kind::Ptr:
      if (addr == 0)
        os << "null";
      else
        os << "&" << addr;
      break;
    default: os << "void";
  }
  return os.str();
}

namespace {

struct FaultSignal {
  Fault fault;
};

struct AssumeStop {};

class Interp {
public:
  Interp(const Program& p, const ExecOptions& opts) : p_(p), opts_(opts) {}

  ExecResult run_entry(const ConcreteState& init) {
    const std::string entry = opts_.entry.empty() ? p_.entry : opts_.entry;
    const Proc* proc = p_.find_proc(entry);
    if (!proc) fail(ErrorCode::runtime_fault, "no entry procedure '" + entry + "'");
    heap_ = init.heap;
    next_addr_ = init.next_addr;
    for (const auto& [a, _] : heap_)
      if (a >= next_addr_) next_addr_ = a + 1;

    Frame frame;
    for (const auto& prm : proc->params) {
      auto it = init.store.find(prm.name);
      if (it == init.store.end())
        fail(ErrorCode::runtime_fault,
             "entry parameter '" + prm.name + "' not bound");
      frame.vars[prm.name] = it->second;
    }
    return run_frame(proc->body, std::move(frame));
  }

  ExecResult run_fragment(const std::string& label, const ConcreteState& init) {
    FragmentRef ref = find_fragment(p_, label);
    heap_ = init.heap;
    next_addr_ = init.next_addr;
    for (const auto& [a, _] : heap_)
      if (a >= next_addr_) next_addr_ = a + 1;
    Frame frame;
    frame.vars = init.store;
    return run_frame(ref.labeled->body, std::move(frame));
  }

private:
  struct Frame {
    std::map<std::string, Value> vars;
  };

  ExecResult run_frame(const Block& body, Frame frame) {
    ExecResult res;
    frames_.push_back(std::move(frame));
    try {
      Flow fl = exec_block(body);
      if (fl.kind == Flow::Kind::Returned) res.ret = fl.value;
    } catch (const FaultSignal& f) {
      res.fault = f.fault;
    } catch (const AssumeStop&) {
      res.assume_violated = true;
    }
    res.state.store = frames_.front().vars;
    res.state.heap = std::move(heap_);
    res.state.next_addr = next_addr_;
    res.trace = std::move(trace_);
    res.bombs = std::move(bombs_);
    res.emits = std::move(emits_);
    res.steps = steps_;
    res.guard_gap = std::move(guard_gap_);
    frames_.clear();
    return res;
  }

  struct Flow {
    enum class Kind { Normal, Returned } kind = Kind::Normal;
    Value value;
  };

  [[noreturn]] void fault(const std::string& kind, const std::string& msg,
                          const SrcLoc& loc) {
    throw FaultSignal{Fault{kind, msg, loc}};
  }

  void tick(const SrcLoc& loc) {
    if (++steps_ > opts_.step_budget)
      fault("step_budget", "step budget exceeded", loc);
  }

  Flow exec_block(const Block& b) {
    for (const auto& s : b) {
      Flow fl = exec_stmt(*s);
      if (fl.kind == Flow::Kind::Returned) return fl;
    }
    return {};
  }

  Flow exec_stmt(const Stmt& s) {
    tick(s.loc);
    switch (s.kind) {
      case Stmt::Kind::Decl: {
        Value v = s.e ? eval(*s.e) : default_value(s.type);
        frames_.back().vars[s.name] = v;
        return {};
      }
      case Stmt::Kind::Assign: {
        frames_.back().vars[s.name] = eval(*s.e);
        return {};
      }
      case Stmt::Kind::FieldStore: {
        Value obj = eval(*s.obj);
        ConcCell& cell = deref(obj, s.loc);
        cell.fields[s.field] = eval(*s.e);
        return {};
      }
      case Stmt::Kind::If: {
        bool taken = eval_guard(*s.cond, s.branch_id);
        trace_.push_back({s.branch_id, taken});
        return exec_block(taken ? s.body : s.els);
      }
      case Stmt::Kind::While: {
        for (;;) {
          tick(s.loc);
          bool taken = eval_guard(*s.cond, s.branch_id);
          trace_.push_back({s.branch_id, taken});
          if (!taken) return {};
          Flow fl = exec_block(s.body);
          if (fl.kind == Flow::Kind::Returned) return fl;
        }
      }
      case Stmt::Kind::Call: {
        const Proc* callee = p_.find_proc(s.name);
        Frame frame;
        for (size_t i = 0; i < s.args.size(); ++i)
          frame.vars[callee->params[i].name] = eval(*s.args[i]);
        frames_.push_back(std::move(frame));
        Flow fl = exec_block(callee->body);
        frames_.pop_back();
        if (!s.lhs.empty()) {
          Value v = fl.kind == Flow::Kind::Returned ? fl.value
                                                    : default_value(callee->ret);
          frames_.back().vars[s.lhs] = v;
        }
        return {};
      }
      case Stmt::Kind::Return:
        return {Flow::Kind::Returned, s.e ? eval(*s.e) : Value{}};
      case Stmt::Kind::Assume: {
        if (!eval(*s.cond).b) throw AssumeStop{};
        return {};
      }
      case Stmt::Kind::Assert: {
        bool ok = eval_guard(*s.cond, s.branch_id);
        trace_.push_back({s.branch_id, ok});
        if (!ok) fault("assert", "assertion failed", s.loc);
        return {};
      }
      case Stmt::Kind::Bomb:
        bombs_.push_back(s.num);
        return {};
      case Stmt::Kind::Emit: {
        std::vector<Value> tuple;
        for (const auto& a : s.args) tuple.push_back(eval(*a));
        emits_.push_back(std::move(tuple));
        return {};
      }
      case Stmt::Kind::Labeled:
        return exec_block(s.body);
      case Stmt::Kind::Havoc:
      case Stmt::Kind::HavocField:
      case Stmt::Kind::GhostAlloc:
      case Stmt::Kind::Choose:
        fault("ghost_stmt", "ghost statement in concrete execution", s.loc);
      case Stmt::Kind::Snapshot:
        return {};
    }
    return {};
  }

  bool eval_guard(const Expr& cond, int branch_id) {
    Value v = eval(cond);
    if (opts_.record_gaps && cond.kind == Expr::Kind::Binary) {
      const std::string& op = cond.op;
      if (op == "<" || op == "<=" || op == ">" || op == ">=" || op == "==" ||
          op == "!=") {
        // re-evaluate operands once more for the gap; expressions are pure
        Value a = eval(*cond.a);
        Value b = eval(*cond.b);
        if (a.kind == Type::Kind::Float)
          guard_gap_[branch_id] = a.f - b.f;
        else if (a.kind == Type::Kind::Int)
          guard_gap_[branch_id] = static_cast<double>(a.i) - b.i;
      }
    }
    return v.b;
  }

  Value default_value(const Type& t) {
    switch (t.kind) {
      case Type::Kind::Int: return Value::of_int(0);
      case Type::Kind::Float: return Value::of_float(0.0);
      case Type::Kind::Bool: return Value::of_bool(false);
      case Type::Kind::Ptr: return Value::of_ptr(0);
      default: return Value{};
    }
  }

  ConcCell& deref(const Value& v, const SrcLoc& loc) {
    if (v.kind != Type::Kind::Ptr || v.addr == 0)
      fault("null_deref", "null or non-pointer dereference", loc);
    auto it = heap_.find(v.addr);
    if (it == heap_.end())
      fault("null_deref", "dangling address " + std::to_string(v.addr), loc);
    return it->second;
  }

  Value read_var(const std::string& name, const SrcLoc& loc) {
    auto& vars = frames_.back().vars;
    auto it = vars.find(name);
    if (it == vars.end())
      fault("unbound", "variable '" + name + "' has no value", loc);
    return it->second;
  }

  Value eval(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::IntLit: return Value::of_int(e.int_val);
      case K::FloatLit: return Value::of_float(e.float_val);
      case K::BoolLit: return Value::of_bool(e.bool_val);
      case K::NullLit: return Value::of_ptr(0);
      case K::Var: return read_var(e.name, e.loc);
      case K::Field: {
        Value obj = eval(*e.a);
        ConcCell& cell = deref(obj, e.loc);
        auto it = cell.fields.find(e.name);
        if (it == cell.fields.end())
          fault("null_deref", "missing field '" + e.name + "'", e.loc);
        return it->second;
      }
      case K::Unary: {
        Value a = eval(*e.a);
        if (e.op == "!") return Value::of_bool(!a.b);
        if (e.op == "~") return Value::of_int(~a.i);
        if (a.kind == Type::Kind::Int)
          return Value::of_int(static_cast<int32_t>(
              -static_cast<uint32_t>(a.i)));
        return Value::of_float(-a.f);
      }
      case K::Binary: return eval_binary(e);
      case K::Intrinsic: {
        Value a = eval(*e.args[0]);
        if (e.name == "sin") return Value::of_float(std::sin(a.f));
        if (e.name == "cos") return Value::of_float(std::cos(a.f));
        if (e.name == "fabs") return Value::of_float(std::fabs(a.f));
        // hi_bits: high 32 bits of the IEEE-754 double representation
        uint64_t bits = std::bit_cast<uint64_t>(a.f);
        return Value::of_int(static_cast<int32_t>(
            static_cast<uint32_t>(bits >> 32)));
      }
      case K::Malloc: {
        uint32_t a = next_addr_++;
        ConcCell cell;
        cell.record = e.name;
        const RecordDecl* rec = p_.find_record(e.name);
        for (const auto& f : rec->fields)
          cell.fields[f.name] = default_value(f.type);
        heap_[a] = std::move(cell);
        return Value::of_ptr(a);
      }
    }
    fail(ErrorCode::internal_error, "bad expression kind");
  }

  Value eval_binary(const Expr& e) {
    const std::string& op = e.op;
    Value a = eval(*e.a);
    Value b = eval(*e.b);
    if (op == "&&") return Value::of_bool(a.b && b.b);
    if (op == "||") return Value::of_bool(a.b || b.b);

    if (a.kind == Type::Kind::Int && b.kind == Type::Kind::Int) {
      uint32_t ua = static_cast<uint32_t>(a.i);
      uint32_t ub = static_cast<uint32_t>(b.i);
      if (op == "+") return Value::of_int(static_cast<int32_t>(ua + ub));
      if (op == "-") return Value::of_int(static_cast<int32_t>(ua - ub));
      if (op == "*") return Value::of_int(static_cast<int32_t>(ua * ub));
      if (op == "/") {
        if (b.i == 0) fault("div_by_zero", "division by zero", e.loc);
        if (a.i == INT32_MIN && b.i == -1) return Value::of_int(INT32_MIN);
        return Value::of_int(a.i / b.i);
      }
      if (op == "%") {
        if (b.i == 0) fault("div_by_zero", "modulo by zero", e.loc);
        if (a.i == INT32_MIN && b.i == -1) return Value::of_int(0);
        return Value::of_int(a.i % b.i);
      }
      if (op == "&") return Value::of_int(a.i & b.i);
      if (op == "|") return Value::of_int(a.i | b.i);
      if (op == "^") return Value::of_int(a.i ^ b.i);
      if (op == "<<") return Value::of_int(static_cast<int32_t>(ua << (ub & 31)));
      if (op == ">>") return Value::of_int(a.i >> (ub & 31));
      if (op == "<") return Value::of_bool(a.i < b.i);
      if (op == "<=") return Value::of_bool(a.i <= b.i);
      if (op == ">") return Value::of_bool(a.i > b.i);
      if (op == ">=") return Value::of_bool(a.i >= b.i);
      if (op == "==") return Value::of_bool(a.i == b.i);
      if (op == "!=") return Value::of_bool(a.i != b.i);
    }
    if (a.kind == Type::Kind::Float && b.kind == Type::Kind::Float) {
      if (op == "+") return Value::of_float(a.f + b.f);
      if (op == "-") return Value::of_float(a.f - b.f);
      if (op == "*") return Value::of_float(a.f * b.f);
      if (op == "/") {
        if (b.f == 0.0) fault("div_by_zero", "division by zero", e.loc);
        return Value::of_float(a.f / b.f);
      }
      if (op == "<") return Value::of_bool(a.f < b.f);
      if (op == "<=") return Value::of_bool(a.f <= b.f);
      if (op == ">") return Value::of_bool(a.f > b.f);
      if (op == ">=") return Value::of_bool(a.f >= b.f);
      if (op == "==") return Value::of_bool(a.f == b.f);
      if (op == "!=") return Value::of_bool(a.f != b.f);
    }
    if (a.kind == Type::Kind::Bool && b.kind == Type::Kind::Bool) {
      if (op == "==") return Value::of_bool(a.b == b.b);
      if (op == "!=") return Value::of_bool(a.b != b.b);
      if (op == "^") return Value::of_bool(a.b != b.b);
    }
    if (a.kind == Type::Kind::Ptr && b.kind == Type::Kind::Ptr) {
      if (op == "==") return Value::of_bool(a.addr == b.addr);
      if (op == "!=") return Value::of_bool(a.addr != b.addr);
    }
    fail(ErrorCode::internal_error, "bad binary operands for " + op);
  }

  const Program& p_;
  const ExecOptions& opts_;
  std::vector<Frame> frames_;
  std::map<uint32_t, ConcCell> heap_;
  uint32_t next_addr_ = 1;
  uint64_t steps_ = 0;
  std::vector<BranchStep> trace_;
  std::vector<int> bombs_;
  std::vector<std::vector<Value>> emits_;
  std::map<int, double> guard_gap_;
};

}  // namespace

ExecResult exec(const Program& p, const ConcreteState& init,
                const ExecOptions& opts) {
  return Interp(p, opts).run_entry(init);
}

ExecResult exec_fragment(const Program& p, const std::string& label,
                         const ConcreteState& init, const ExecOptions& opts) {
  return Interp(p, opts).run_fragment(label, init);
}

}  // namespace ghostsym::minilang
