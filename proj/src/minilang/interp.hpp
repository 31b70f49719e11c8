#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minilang/ast.hpp"

namespace ghostsym::minilang {

struct Value {
  Type::Kind kind = Type::Kind::Void;
  int32_t i = 0;
  double f = 0.0;
  bool b = false;
  uint32_t addr = 0;

  static Value of_int(int32_t v) { return {Type::Kind::Int, v, 0, false, 0}; }
  static Value of_float(double v) { return {Type::Kind::Float, 0, v, false, 0}; }
  static Value of_bool(bool v) { return {Type::Kind::Bool, 0, 0, v, 0}; }
  static Value of_ptr(uint32_t a) { return {Type::Kind::Ptr, 0, 0, false, a}; }

  bool same(const Value& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Type::Kind::Int: return i == o.i;
      case Type::Kind::Float: return f == o.f;
      case Type::Kind::Bool: return b == o.b;
      case Type::Kind::Ptr: return addr == o.addr;
      default: return true;
    }
  }

  std::string str() const;
};

struct ConcCell {
  std::string record;
  std::map<std::string, Value> fields;
};

struct ConcreteState {
  std::map<std::string, Value> store;
  std::map<uint32_t, ConcCell> heap;
  uint32_t next_addr = 1;
};

struct Fault {
  std::string kind;  // "null_deref" | "div_by_zero" | "assert" | "step_budget" | ...
  std::string msg;
  SrcLoc loc;
};

struct BranchStep {
  int id = -1;
  bool taken = false;
  bool operator==(const BranchStep& o) const {
    return id == o.id && taken == o.taken;
  }
};

struct ExecOptions {
  uint64_t step_budget = 1000000;
  bool record_gaps = false;   // track numeric guard gaps for near-miss reports
  std::string entry;          // overrides program entry when non-empty
};

struct ExecResult {
  ConcreteState state;  // entry-frame store + final heap
  Value ret;
  std::vector<BranchStep> trace;
  std::vector<int> bombs;
  std::vector<std::vector<Value>> emits;
  std::optional<Fault> fault;
  bool assume_violated = false;
  uint64_t steps = 0;
  std::map<int, double> guard_gap;  // branch id -> lhs-rhs at last evaluation
};

// Deterministic small-step execution of the entry procedure.
// Throws Error only on contract violations (unknown entry, unbound
// parameter); runtime faults and budget exhaustion are reported in the
// result so the trace-so-far stays available.
ExecResult exec(const Program& p, const ConcreteState& init,
                const ExecOptions& opts = {});

// Executes only the labeled fragment's body in a frame seeded from
// init.store. Reads outside the seeded store throw.
ExecResult exec_fragment(const Program& p, const std::string& label,
                         const ConcreteState& init,
                         const ExecOptions& opts = {});

}  // namespace ghostsym::minilang
