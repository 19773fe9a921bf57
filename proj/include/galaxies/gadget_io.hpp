#pragma once

// Loading and transforming the gadget pattern fixtures under gadgets/.
//
// Fixture format: optional 'c <comment>' and 'meta <key> <values...>' lines,
// then 'grid <w> <h>' followed by h rows of w characters. Cell characters:
//   .  open cell inside the pattern      #  outside the pattern
//   *  disk (unit3 patterns)             o  white cell-center (rect patterns)
// Edge or vertex centers cannot sit in a cell grid, so rect patterns list
// them as 'meta center <a> <b>' in pattern-local doubled coordinates.

#include <map>
#include <string>
#include <vector>

#include "galaxies/board.hpp"

namespace galaxies {

struct GadgetPattern {
    int width = 0;
    int height = 0;
    std::vector<std::string> rows;
    std::multimap<std::string, std::vector<std::string>> meta;

    char at(Cell c) const { return rows[c.y][c.x]; }
    std::vector<Cell> cells_with(char ch) const;
    std::vector<Center> listed_centers() const;  // meta center entries
    std::vector<Cell> meta_cells(const std::string& key) const;
};

GadgetPattern parse_gadget(const std::string& text);
std::string serialize_gadget(const GadgetPattern& p);

// Resolves against $GALAXIES_GADGET_DIR, else the compiled-in default.
std::string gadget_dir();
GadgetPattern load_gadget(const std::string& relative_path);

// Pose: quarter-turn rotation followed by a doubled-coordinate translation.
struct Pose {
    int dx = 0;  // doubled
    int dy = 0;  // doubled
    int rot = 0;  // quarter turns counterclockwise, 0..3
};

// Doubled-coordinate point transform under a pose.
std::pair<int, int> pose_point(const Pose& p, int a, int b);
Cell pose_cell(const Pose& p, Cell c);

}  // namespace galaxies
