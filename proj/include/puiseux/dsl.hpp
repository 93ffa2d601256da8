#pragma once

#include "puiseux/solver.hpp"

#include <optional>
#include <string>

namespace puiseux {

struct ParseError : Error {
    int line = 0, col = 0;
    std::string expected;

    ParseError(const std::string& msg, int l, int c, std::string exp = {})
        : Error(msg + " (line " + std::to_string(l) + ", column " + std::to_string(c) + ")"),
          line(l),
          col(c),
          expected(std::move(exp)) {}
};

enum class Policy { SidesOnly, SidesAndVertexRoots };

inline BranchPolicy to_branch_policy(Policy p) {
    return p == Policy::SidesOnly ? BranchPolicy::SidesOnly
                                  : BranchPolicy::SidesAndVertexRoots;
}

/// A parsed problem: symbol declarations, operator, equation, optional initial
/// segment and solver directives.
struct Problem {
    SymbolTable syms;
    std::vector<int> basis;  // declared additive generators, in order
    OperatorKind op;
    Equation equation;
    std::optional<GenSeries> segment;
    Budget budget;
    Policy policy = Policy::SidesAndVertexRoots;

    Ctx ctx(int precision_budget = 8) { return Ctx{&syms, precision_budget}; }
};

/// Parses the `puiseux-forge v1` format.  Throws ParseError (with position)
/// for syntax errors and SemanticError for semantic ones.
Problem parse_problem(const std::string& text);

std::string render_problem(const Problem& p);

/// Parses a series literal (e.g. "x + x^tau") against an existing problem's
/// symbols; used for --at prefixes and similar CLI inputs.
GenSeries parse_series_literal(Problem& p, const std::string& text, int precision_budget = 8);

}  // namespace puiseux
