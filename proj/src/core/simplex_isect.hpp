#ifndef HDLINK_SIMPLEX_ISECT_HPP
#define HDLINK_SIMPLEX_ISECT_HPP

#include "geom.hpp"

namespace hdl {

// Barycentric coordinates of one intersection point with respect to both
// input simplices.
struct BaryPair {
    std::vector<Rat> lambda; // w.r.t. s
    std::vector<Rat> mu;     // w.r.t. t
};

// Exact intersection of a p-simplex and a q-simplex in R^d, specialized to
// the transverse dimensions the engine meets (p+q-d <= 1):
//   - Point:   0-dimensional transverse intersection (p+q == d)
//   - Segment: 1-dimensional transverse intersection (p+q == d+1)
//   - Contact: any non-generic contact (touch at a boundary face, pinch
//              point, overlap of positive defect, ...). Callers treat this
//              as an embedding violation or perturb-and-retry signal.
struct Isect {
    enum class Kind { Empty, Point, Segment, Contact };
    Kind kind = Kind::Empty;
    BaryPair a, b;               // Point: a only; Segment: both endpoints
    bool endpoint_codim2 = false; // a segment endpoint hits a codim>=2 face
    std::string note;             // human-readable reason for Contact
};

Isect intersect_simplices(const Simplex& s, const Simplex& t);

// Ambient point from barycentric coordinates.
Pt bary_point(const Simplex& s, const std::vector<Rat>& coords);

// Convex combination of two points.
Pt lerp(const Pt& a, const Pt& b, const Rat& t);

} // namespace hdl

#endif
