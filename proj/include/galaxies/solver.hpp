#pragma once

// Exact search over Spiral Galaxies solutions: decide, count, enumerate and
// find alternative solutions, per shape class. The search is an exact-cover
// traversal: it branches on the lowest-index uncovered cell in row-major
// order and tries the candidate galaxies that could own it in a canonical
// order (size, then lexicographic cell set), which makes results and node
// counts deterministic.

#include <optional>

#include "galaxies/board.hpp"

namespace galaxies {

struct SearchBudget {
    std::optional<long long> max_solutions;  // cap for counting/enumeration
    std::optional<long long> max_nodes;      // backtracking node cap
};

enum class SolveStatus { Sat, Unsat, BudgetExceeded };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Unsat;
    std::optional<Solution> solution;
    long long node_count = 0;
};

struct CountOutcome {
    long long count = 0;
    bool complete = true;  // cleared when a budget was hit; count is a lower bound
    long long node_count = 0;
};

struct EnumerateOutcome {
    std::vector<Solution> solutions;
    bool complete = true;
    long long node_count = 0;
};

struct AnotherOutcome {
    std::optional<Solution> solution;  // a solution distinct from the given one
    bool complete = true;              // true: NONE really means unique
    long long node_count = 0;
};

SolveOutcome solve(const Board& board, ShapeClass shapes, const SearchBudget& budget = {});
CountOutcome count_solutions(const Board& board, ShapeClass shapes, const SearchBudget& budget = {});
EnumerateOutcome enumerate_solutions(const Board& board, ShapeClass shapes,
                                     const SearchBudget& budget = {});

// Pre: `given` passes verify for the shape class (std::invalid_argument otherwise).
AnotherOutcome another_solution(const Board& board, ShapeClass shapes, const Solution& given,
                                const SearchBudget& budget = {});

// Independent test oracle: enumerates every center's possible galaxy as a
// bitmask over the (at most 12) board cells and counts exact covers by plain
// backtracking over centers. Shares no code path with the main solver.
// Pre: width*height <= 12 (std::invalid_argument otherwise).
long long naive_count(const Board& board, ShapeClass shapes);

}  // namespace galaxies
