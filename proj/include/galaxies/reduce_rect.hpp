#pragma once

// Compiles Planar 1-in-3 SAT into Rect boards (galaxies restricted to
// rectangles). Sound and complete for satisfiability; not parsimonious.

#include "galaxies/board.hpp"
#include "galaxies/formula.hpp"
#include "galaxies/gadget_io.hpp"

namespace galaxies {

enum class RectGadgetKind { FaceFill, VariableLoop, Corridor, Bend, Shift, Clause };

struct RectGadget {
    RectGadgetKind kind = RectGadgetKind::VariableLoop;
    Pose pose;
    int length = 0;        // corridor length in cells
    int shift_amount = 0;  // shift gadget lateral offset, must be > 3
    int loop_extent = 0;   // variable loop arm parameter k (odd)
};

struct EmittedRect {
    std::vector<Cell> region;     // cells carved out of the face fill
    std::vector<Center> centers;  // centers inside the region
};

// Exact pattern per gadget under its pose. Throws std::invalid_argument on
// parameter violations (for the shift gadget: amount <= 3).
EmittedRect emit_gadget_rect(const RectGadget& g);

struct RectProbe {
    int var = 0;
    Cell cell;  // leftmost cell of the top row of the loop's first arm
};

struct RectPlacedGadget {
    RectGadgetKind kind;
    int index = 0;
    std::vector<Cell> region;
};

struct RectCompilation {
    Board board;
    std::vector<RectProbe> probes;
    std::vector<RectPlacedGadget> manifest;
};

// Pre: validate_layout(f, l) empty. Throws std::runtime_error on congestion.
RectCompilation compile_rect(const Formula& f, const Layout& l);

// Probe galaxy width >= 3 decodes as TRUE, width 1 as FALSE.
// Pre: s verifies under Rect. Throws std::runtime_error on an unrecognized
// probe pattern (a compiler bug, never silently defaulted).
Assignment decode_rect(const RectCompilation& c, const Solution& s);

}  // namespace galaxies
