#include "galaxies/reduce_rect.hpp"

namespace galaxies {

EmittedRect emit_gadget_rect(const RectGadget& g) {
    (void)g;
    throw std::runtime_error("emit_gadget_rect: not implemented yet");
}

RectCompilation compile_rect(const Formula& f, const Layout& l) {
    (void)f;
    (void)l;
    throw std::runtime_error("compile_rect: not implemented yet");
}

Assignment decode_rect(const RectCompilation& c, const Solution& s) {
    (void)c;
    (void)s;
    throw std::runtime_error("decode_rect: not implemented yet");
}

}  // namespace galaxies
