#ifndef HDLINK_LOCUS_HPP
#define HDLINK_LOCUS_HPP

#include "chains.hpp"
#include "complex.hpp"

namespace hdl {

// A point of the double-point locus seen from one sheet: the tet of the
// component containing its preimage and the exact barycentric coordinates.
struct SheetPoint {
    int comp = -1;
    int tet = -1;
    Vec bary; // 4 coordinates, sum 1
};

// One straight piece of the double-point curve, oriented im0 -> im1 by the
// locus orientation rule (the frame of the locus direction followed by
// positive frames of the two sheets is positive in R^5). The over sheet is
// the one with the larger dropped coordinate.
struct LocusSeg {
    Pt im0, im1; // image endpoints in R^5
    SheetPoint over0, over1;
    SheetPoint under0, under1;
};

// A stitched double-point curve. Segments run head to tail; for closed
// curves the last head equals the first tail.
struct LocusCurve {
    int comp_over = -1;
    int comp_under = -1;
    std::vector<LocusSeg> segs;
    bool closed = true;
};

struct DoubleLocus {
    std::vector<LocusCurve> curves;
};

// Extract the double-point locus of the projection dropping the last
// coordinate. Requires a validated link; throws NonGenericProjection (or
// UmbrellaPresent for self-intersection arcs that terminate) when the
// projection is not generic.
DoubleLocus double_locus(const SimplicialLink& link);

// Non-throwing genericity probe: collects the failures double_locus would
// throw for.
ValidationReport check_generic(const SimplicialLink& link);

// Perturb (seeded, shrinking magnitudes) until the projection is generic.
// Returns the link unchanged when it already is. Throws
// GenericityUnreachable after max_attempts failures.
SimplicialLink resolve_to_generic(const SimplicialLink& link, uint64_t seed = 0,
                                  int max_attempts = 24);

// The curve as an oriented 1-chain in R^5.
Chain image_chain(const LocusCurve& c);

// The preimage of the curve on its over (or under) sheet, as an oriented
// 1-chain, either in domain coordinates or in ambient R^6 coordinates.
Chain preimage_chain(const SimplicialLink& link, const LocusCurve& c, bool over,
                     bool in_domain);

} // namespace hdl

#endif
