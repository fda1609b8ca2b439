#ifndef HDLINK_FRAMING_HPP
#define HDLINK_FRAMING_HPP

#include "locus.hpp"

namespace hdl {

// One sample of the normal field along a locus curve: position (segment
// index and parameter in [0,1)) plus the field value on each preimage
// branch, as free vectors in the domain R^3 of the long knot. Between
// consecutive samples everything interpolates linearly, so base points,
// push-offs and image shifts are all piecewise linear.
struct FrameSample {
    int seg = 0;
    Rat t = 0;
    Vec v_over, v_under;
};

struct FramedCurve {
    int curve = -1; // index into DoubleLocus::curves
    std::vector<FrameSample> samples; // sorted by (seg, t); one at (s, 0) per s
};

// A normal framing of the self-intersection preimage of one component,
// normalized so that lk(L_i, L~) = lk(L_i, L~_i) + sum_{j != i} lk(L_i, L_j)
// vanishes for every preimage circle L_i.
struct Framing {
    int comp = -1;
    Rat eps = 0; // domain push-off scale; the result is certified at eps/2 too
    std::vector<FramedCurve> curves;
};

// The domain circle of one branch of a framed curve as a closed polygon,
// pushed off by eps along its field (eps = 0 gives the base circle).
Chain framed_domain_circle(const SimplicialLink& link, const LocusCurve& curve,
                           const FramedCurve& fc, bool over, const Rat& eps);

// Insert n full rotations (sign = direction) of the field of one branch,
// localized inside one segment of the curve. Changes the self-linking of the
// pushed circle by -n or +n depending on the ambient conventions; the other
// branch and all base circles are geometrically unchanged.
void insert_twists(const SimplicialLink& link, const LocusCurve& curve,
                   FramedCurve& fc, int n, bool over);

// Build the zero framing of the self-intersection locus of component `comp`
// (long domain R^3 only). Throws PushOffCollision when no collision-free
// scale could be certified, UmbrellaPresent is impossible here since the
// locus is already stitched into closed curves.
Framing zero_framing(const SimplicialLink& link, const DoubleLocus& locus,
                     int comp, uint64_t seed = 0);

// Projection of a component as a 3-cycle in R^5. Spherical components are
// closed already; a long component is compactified: all projected tets plus
// a cone over their boundary rim from an apex far off the standard plane
// (a stand-in for the plane through infinity; `attempt` pushes the apex
// further out on retries).
Chain projected_image_cycle(const Component& comp, int attempt = 0);

// Ekholm's linking invariant of the projection restricted to one component:
// the image of the self-intersection locus, pushed along
// w(p) = df(v(p_1)) + df(v(p_2)) for the zero framing v, linked with the
// image 3-cycle. Certified at two push-off scales and the same for every
// framing seed.
Int ekholm_E(const SimplicialLink& link, const DoubleLocus& locus, int comp,
             uint64_t seed = 0);

} // namespace hdl

#endif
