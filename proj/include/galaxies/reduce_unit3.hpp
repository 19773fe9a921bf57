#pragma once

// Compiles Planar 1-in-3 SAT into Unit3 boards, parsimoniously: the compiled
// board has exactly one solution per 1-in-3 model. Disks follow the
// convention of the disk/center figures: disks mark cells, a cell center is
// derived at the midpoint of every pair of disks at cell distance 2, and all
// remaining cells are filled with forced 1x1 centers.

#include <map>

#include "galaxies/board.hpp"
#include "galaxies/formula.hpp"
#include "galaxies/gadget_io.hpp"
#include "galaxies/solver.hpp"

namespace galaxies {

struct DiskLayout {
    std::vector<Cell> disks;
};

// Derives the board for a disk layout. Every derived midpoint carries a
// center, every disk cell carries none, every other cell gets a filler
// center. Errors (std::invalid_argument): disks outside the 1-cell margin,
// duplicate disks, or a derived midpoint that lands on a disk (overlapping
// collinear potential edges are ambiguous and rejected).
Board disks_to_board(const DiskLayout& d, int width, int height);

enum class Unit3GadgetKind { VariableLoop, Negation, Clause };

struct Unit3Gadget {
    Unit3GadgetKind kind = Unit3GadgetKind::VariableLoop;
    Pose pose;        // doubled-coordinate translation + quarter turns
    int extent = 0;   // variable loop: extra horizontal stretch in disk steps
};

// Disk pattern for one gadget, transcribed from the fixture files and
// transformed by the pose. Throws std::invalid_argument on bad parameters.
std::vector<Cell> emit_gadget_unit3(const Unit3Gadget& g);

struct Unit3Probe {
    int var = 0;          // 1-based
    Cell disk_a, disk_b;  // probe pair at cell distance 2
    bool joined_means_true = true;
};

struct Unit3PlacedGadget {
    Unit3GadgetKind kind;
    int index = 0;  // variable or clause index (1-based vars, 0-based clauses)
    std::vector<Cell> disks;
};

struct Unit3Compilation {
    Board board;
    std::vector<Unit3Probe> probes;  // one per variable
    std::vector<Unit3PlacedGadget> manifest;
};

// Pre: validate_layout(f, l) is empty (std::invalid_argument otherwise).
// Throws std::runtime_error on routing congestion.
Unit3Compilation compile_unit3(const Formula& f, const Layout& l);

// Reads each probe pair's joined/split state. Pre: s verifies under Unit3.
Assignment decode_unit3(const Unit3Compilation& c, const Solution& s);

}  // namespace galaxies
