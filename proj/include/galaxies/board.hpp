#pragma once

// Boards, centers, galaxies and solutions for Spiral Galaxies puzzles.
//
// All geometry uses doubled coordinates: cell (x,y) has its middle point at
// (2x+1, 2y+1). A center position (a,b) with both coordinates odd sits on a
// cell middle, with exactly one odd coordinate on an edge midpoint, and with
// both even on a grid vertex. This keeps every legal center integral and
// makes the 180-degree rotation about a center a one-line integer map.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galaxies {

struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class CenterKind { CellCenter, EdgeMidpoint, Vertex };

struct Center {
    int a = 0;  // doubled x
    int b = 0;  // doubled y
    bool black = false;

    CenterKind kind() const {
        const bool ax = a % 2 != 0, by = b % 2 != 0;
        if (ax && by) return CenterKind::CellCenter;
        if (ax || by) return CenterKind::EdgeMidpoint;
        return CenterKind::Vertex;
    }
    friend bool operator==(const Center&, const Center&) = default;
};

struct Board {
    int width = 0;
    int height = 0;
    std::vector<Center> centers;
    bool allow_disconnected = false;

    int cell_count() const { return width * height; }
    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    int cell_index(Cell c) const { return c.y * width + c.x; }
    Cell cell_at(int idx) const { return {idx % width, idx / width}; }

    // Cells whose closed doubled square contains the center position:
    // 1 cell for a cell center, 2 for an edge midpoint, 4 for a vertex.
    std::vector<Cell> incident_cells(const Center& c) const;

    // Throws std::invalid_argument when a structural invariant is broken
    // (duplicate or out-of-range centers, no center on a nonempty board).
    void check_invariants() const;
};

// Total assignment of cells to center indices, row-major (y*width + x).
struct Solution {
    std::vector<int> owner;
    friend bool operator==(const Solution&, const Solution&) = default;
    friend auto operator<=>(const Solution&, const Solution&) = default;
};

enum class ShapeClass { Any, Rect, Unit3 };

struct Picture {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> black;  // width*height, row-major

    bool at(Cell c) const { return black[c.y * width + c.x] != 0; }
};

// 180-degree image of a cell about a center; may land off-board.
inline Cell rotate_cell(Cell p, const Center& c) {
    return {c.a - p.x - 1, c.b - p.y - 1};
}

enum class Rule { Symmetry, Containment, Uniqueness, Connectivity, Shape };

struct Violation {
    int galaxy = -1;  // center index
    Rule rule = Rule::Symmetry;
    Cell witness{};
    std::string detail;
};

struct Verdict {
    bool valid = true;
    std::vector<Violation> violations;
};

const char* rule_name(Rule r);

// Checks a total owner map against the Spiral Galaxies rules for the given
// shape class. Throws std::invalid_argument when the map is not total or
// references an invalid center index.
Verdict verify(const Board& board, const Solution& sol, ShapeClass shapes);

// Cell is black iff its owning center is black. Assumes sol is total.
Picture picture_of(const Board& board, const Solution& sol);

// Parse errors carry a 1-based line and column.
struct ParseError : std::runtime_error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int column_ = 0)
        : std::runtime_error(msg + " (line " + std::to_string(line_) +
                             (column_ > 0 ? ", column " + std::to_string(column_) : "") + ")"),
          line(line_), column(column_) {}
};

Board parse_board(const std::string& text);
std::string serialize_board(const Board& board);

Solution parse_solution(const Board& board, const std::string& text);
std::string serialize_solution(const Board& board, const Solution& sol);

enum class RenderFormat { Ascii, Svg };

std::string render(const Board& board, const Solution* sol, RenderFormat fmt);

}  // namespace galaxies
