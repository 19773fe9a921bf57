#pragma once

// The puzzle-design problem: given a target shape, find the minimum number
// of centers whose galaxies exactly cover it, together with the shape
// compiler that encodes 1-in-3 SAT into that question.

#include <optional>

#include "galaxies/board.hpp"
#include "galaxies/formula.hpp"
#include "galaxies/gadget_io.hpp"
#include "galaxies/solver.hpp"

namespace galaxies {

struct Shape {
    int width = 0;
    int height = 0;
    std::vector<Cell> cells;  // sorted row-major; complement is forbidden

    bool contains(Cell c) const;
    int index_of(Cell c) const;  // -1 when absent
};

Shape parse_shape(const std::string& text);
std::string serialize_shape(const Shape& s);

struct SymmetricCandidate {
    Center center;
    std::vector<Cell> cells;  // sorted
};

// All (center, cell set) pairs containing the anchor, within the shape, of
// size <= size_cap, symmetric about the center, containing the center's
// incident cells, connected unless allow_disconnected. Canonical order:
// size, then cells, then center.
std::vector<SymmetricCandidate> enumerate_symmetric_galaxies(const Shape& s, Cell anchor,
                                                             int size_cap,
                                                             bool allow_disconnected = false);

struct CenterPlacement {
    std::vector<Center> centers;
    std::vector<int> owner;  // parallel to Shape::cells
    friend bool operator==(const CenterPlacement&, const CenterPlacement&) = default;
};

struct MinCentersResult {
    int k_min = 0;
    std::vector<CenterPlacement> optimal;  // all optima, owner-map identity
    bool exact = true;
    long long node_count = 0;
};

// Exact branch-and-bound over the first uncovered shape cell in row-major
// order. exact stays true unless a budget was hit (k_min is then an upper
// bound and `optimal` may be incomplete).
MinCentersResult min_centers(const Shape& s, int size_cap, const SearchBudget& budget = {},
                             bool allow_disconnected = false);

enum class ShapeGadgetKind { LocalCenter, Block, End, Fix, VariableChain, Split };
enum class BlockKind { Straight, Corner, Clause };

struct ShapeGadget {
    ShapeGadgetKind kind = ShapeGadgetKind::LocalCenter;
    Pose pose;
    int variant = 0;        // local center arm shape, 0..3
    int width = 3;          // local center width parameter (>= 3)
    BlockKind block = BlockKind::Straight;
    int chain_centers = 0;  // variable chain: number of local centers (k)
};

std::vector<Cell> emit_gadget_shape(const ShapeGadget& g);

struct ShapePlacedGadget {
    ShapeGadgetKind kind;
    int variant = 0;
    std::vector<Cell> cells;
    bool mandatory_center = false;  // contributes 1 to the budget
};

struct ShapeCompilation {
    Shape shape;
    int k_budget = 0;
    std::vector<ShapePlacedGadget> manifest;
    // Probe: per variable, the cells of one 5x5 area of its split room; the
    // variable is TRUE when that area is eaten by the adjacent chain galaxy.
    std::vector<std::vector<Cell>> probes;
};

ShapeCompilation compile_shape(const Formula& f, const Layout& l);

}  // namespace galaxies
