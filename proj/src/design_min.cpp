#include "galaxies/design_min.hpp"

namespace galaxies {

bool Shape::contains(Cell c) const { return index_of(c) >= 0; }
int Shape::index_of(Cell c) const { return -1; }

Shape parse_shape(const std::string& text) { throw std::runtime_error("nyi"); }
std::string serialize_shape(const Shape& s) { throw std::runtime_error("nyi"); }

std::vector<SymmetricCandidate> enumerate_symmetric_galaxies(const Shape& s, Cell anchor,
                                                             int size_cap, bool allow_disconnected) {
    throw std::runtime_error("nyi");
}

MinCentersResult min_centers(const Shape& s, int size_cap, const SearchBudget& budget,
                             bool allow_disconnected) {
    throw std::runtime_error("nyi");
}

std::vector<Cell> emit_gadget_shape(const ShapeGadget& g) { throw std::runtime_error("nyi"); }

ShapeCompilation compile_shape(const Formula& f, const Layout& l) { throw std::runtime_error("nyi"); }

}  // namespace galaxies
