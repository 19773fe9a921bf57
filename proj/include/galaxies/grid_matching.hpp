#pragma once

// Squared grid graphs: vertices on the integer lattice, edges exactly
// between vertices at Euclidean distance 2 (so axis-aligned length-2
// segments). Edges are always derived from the vertex set, never stored.

#include <optional>

#include "galaxies/board.hpp"
#include "galaxies/solver.hpp"

namespace galaxies {

struct GridEdge {
    Cell u, v;  // normalized so u < v
    friend bool operator==(const GridEdge&, const GridEdge&) = default;
    friend auto operator<=>(const GridEdge&, const GridEdge&) = default;
};

struct SquaredGridGraph {
    std::vector<Cell> vertices;  // pairwise distinct

    // The implicit edge set, sorted.
    std::vector<GridEdge> edges() const;
};

struct Matching {
    std::vector<GridEdge> edges;
};

// Splits by parity of x+y; no edge connects the two parts.
std::pair<SquaredGridGraph, SquaredGridGraph> parity_split(const SquaredGridGraph& g);

// True iff the two open length-2 segments intersect. For distance-2 lattice
// edges within one parity class this is equivalent to "perpendicular edges
// sharing their midpoint", which the tests assert.
// Pre: the edges share no endpoint (std::invalid_argument otherwise).
bool edges_cross(const GridEdge& e1, const GridEdge& e2);

// Lemma-style conversion: the board is the bounding rectangle (padded to an
// even-parity origin); vertices become empty cells, every other position a
// cell center. Pre: all vertices even, nonempty.
Board graph_to_puzzle(const SquaredGridGraph& g);

// Inverse direction. Pre: all centers are cell centers and every empty cell
// sits at an even position ("even board").
SquaredGridGraph puzzle_to_graph(const Board& b);

struct MatchingOutcome {
    std::optional<Matching> matching;
    bool complete = true;
    long long node_count = 0;
};

struct MatchingCount {
    long long count = 0;
    bool complete = true;
    long long node_count = 0;
};

// Complete backtracking over vertices in lexicographic order; returns a
// perfect non-crossing matching iff one exists (under budget).
MatchingOutcome solve_matching(const SquaredGridGraph& g, const SearchBudget& budget = {});
MatchingCount count_matchings(const SquaredGridGraph& g, const SearchBudget& budget = {});

SquaredGridGraph parse_graph(const std::string& text);
std::string serialize_graph(const SquaredGridGraph& g);
std::string serialize_matching(const Matching& m);

}  // namespace galaxies
