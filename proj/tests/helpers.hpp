#ifndef HDLINK_TEST_HELPERS_HPP
#define HDLINK_TEST_HELPERS_HPP

#include "core/complex.hpp"

namespace hdl::testing {

// Boundary of the standard 4-simplex, realized on the simplex
// conv(0, e1, e2, e3, e4) in R^4 and embedded linearly into R^6.
inline SimplicialLink pentachoron_link() {
    Component comp;
    comp.cx.vertex_count = 5;
    for (int k = 0; k < 5; ++k) {
        std::array<int, 4> tet;
        int idx = 0;
        for (int v = 0; v < 5; ++v)
            if (v != k) tet[idx++] = v;
        comp.cx.tets.push_back(tet);
        comp.cx.orient.push_back(k % 2 == 0 ? 1 : -1);
    }
    for (int v = 0; v < 5; ++v) {
        Pt dom(4, Rat(0));
        if (v > 0) dom[v - 1] = 1;
        comp.domain.push_back(dom);
        Pt emb(6, Rat(0));
        if (v > 0) emb[v - 1] = 1;
        // Mild shear so no coordinate subspace degeneracies bite.
        emb[4] = Rat(v, 7);
        emb[5] = Rat(v * v, 11);
        comp.embed.push_back(emb);
    }
    SimplicialLink link;
    link.kind = LinkKind::spherical;
    link.comps.push_back(comp);
    link.provenance = "test: boundary of the 4-simplex";
    return link;
}

} // namespace hdl::testing

#endif
