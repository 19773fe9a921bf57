#pragma once

// Planar 1-in-3 SAT instances with rectilinear layouts; the exhaustive model
// oracle here is the ground truth every reduction is tested against.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galaxies/board.hpp"  // ParseError, Cell

namespace galaxies {

struct Literal {
    int var = 0;          // 1-based variable index
    bool negated = false;
    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

struct Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;
};

struct Assignment {
    std::vector<uint8_t> values;  // values[i] is variable i+1

    bool value(int var) const { return values[var - 1] != 0; }
    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

// Orthogonal embedding of the variable-clause incidence graph on a coarse
// integer grid. Routes run from the clause anchor to the variable anchor.
struct Route {
    int clause = 0;  // 0-based
    int slot = 0;    // 1..3
    std::vector<Cell> points;
};

struct Layout {
    int grid_w = 0;
    int grid_h = 0;
    std::vector<Cell> var_anchors;     // one per variable
    std::vector<Cell> clause_anchors;  // one per clause
    std::vector<Route> routes;
};

Formula parse_formula(const std::string& text);
std::string serialize_formula(const Formula& f);

bool clause_satisfied(const Clause& c, const Assignment& a);
bool formula_satisfied(const Formula& f, const Assignment& a);

// All assignments with exactly one true literal per clause, in lexicographic
// order (variable 1 most significant, false < true).
// Pre: num_vars <= 24 (std::invalid_argument otherwise).
std::vector<Assignment> one_in_three_models(const Formula& f);

struct LayoutIssue {
    std::string message;
};

struct LayoutReport {
    std::vector<LayoutIssue> issues;
    bool ok() const { return issues.empty(); }
};

LayoutReport validate_layout(const Formula& f, const Layout& l);

// Deterministic backtracking layout helper for tiny instances.
// Pre: num_vars + num_clauses <= 10 (std::invalid_argument otherwise).
// Throws std::runtime_error when no layout is found within the grid bound.
Layout auto_layout(const Formula& f);

Layout parse_layout(const std::string& json_text);
std::string serialize_layout(const Layout& l);

}  // namespace galaxies
