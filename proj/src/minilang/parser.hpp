#pragma once

#include <string>

#include "minilang/ast.hpp"

namespace ghostsym::minilang {

// Parses MiniC source into a typed Program. Throws SyntaxError with
// line/column on malformed input, SortError on type violations.
Program parse_program(const std::string& source);

// Type-checks (and re-annotates expression types of) a program in place.
// Used after fragment transformations splice in new statements.
void check_program(Program& p);

std::string pretty_print(const Program& p);

}  // namespace ghostsym::minilang
