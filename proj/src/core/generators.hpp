#ifndef HDLINK_GENERATORS_HPP
#define HDLINK_GENERATORS_HPP

#include "complex.hpp"

namespace hdl {

// One 3-sphere component: the boundary of [-a,a]^2 x [-b,b]^2 in R^4,
// realized on itself (domain = polytope boundary) and triangulated without
// interior vertices: 8 cuboid facets, each cut into 6 tets by the
// monotone-path (Kuhn) rule, so neighbouring facets agree on the shared
// square diagonals. Tet signs give the outward-first boundary orientation.
// The ambient embedding is left empty; set it with embed_linear.
Component product_square_boundary(const Rat& a, const Rat& b);

// Set the ambient embedding of a component to u -> E u + off (E is 6 x dim).
void embed_linear(Component& comp, const Mat& E, const Vec& off);

// Solid box [lo, hi] in R^3 on a lattice of the given cell size (which must
// divide every side), cut into 6 tets per cell by the monotone-path (Kuhn)
// rule so the triangulation is conforming. Tets carry the standard
// orientation of R^3. The ambient embedding is left empty.
Component solid_box_region(const Vec& lo, const Vec& hi, const Rat& cell);

// The three-component Borromean link of flat product spheres: X, Y and Z are
// boundaries of boxes in the coordinate 4-planes {x=0}, {y=0} and {z=0} of
// R^6 = {(x,y,z)}, x,y,z in R^2, with half-extents alpha on one square
// factor and beta on the other, cyclically. The whole configuration is then
// mapped through the exact unimodular map T(v) = (v1-v6, ..., v5-v6, v6), so
// dropping the last coordinate projects along the diagonal direction
// (1,...,1) of the original coordinates. Requires 2*beta < alpha.
SimplicialLink borromean(const Rat& alpha = 4, const Rat& beta = 1);

// Merge component j (an intact product-square boundary sphere) into
// component i (a long component containing intact lattice cells): a lattice
// cell of i is hollowed out, a shrunk copy of the cell is re-triangulated by
// the Schlegel diagram of the sphere minus one facet and embedded onto the
// sphere minus that facet, and the shell in between becomes the connecting
// tube. The corridor (cell, facet) is searched so that the new tube and the
// two removed pieces are clean both in R^6 and in the projection to R^5, so
// tubing never creates or destroys double-point curves. Components keep
// their order; j is removed.
SimplicialLink tube(const SimplicialLink& link, int i, int j);

// Two-component links obtained from the Borromean link by tubing two of its
// components together through a base plane: b1 merges the pair so that the
// W-invariant is (-2, 0), b2 symmetrically (0, -2).
SimplicialLink b1();
SimplicialLink b2();

// The long Haefliger trefoil: all three Borromean components tubed into one
// flat base plane. Certified smale_term = 0: the plane is flat, and every
// tube runs through a corridor whose projection is disjoint from all other
// sheets, so the projected immersion is regularly homotopic to the standard
// plane.
SimplicialLink trefoil();

// The same construction reflected through an ambient hyperplane (and the
// domain re-parametrised so the standard inclusion is unchanged): a long
// knot with the opposite Haefliger invariant.
SimplicialLink mirror_image(const SimplicialLink& knot);

// A nowhere-zero push-off field along a long knot, standard (= e5 + e6)
// outside the compact box. Per-vertex vectors in R^6.
struct NormalField {
    std::vector<Vec> vecs;
};

// The 2-component link F u F~ formed by a long knot and its push-off along
// the field (default: the constant field e5 + e6). The push-off distance
// starts at 1/2 and is halved until the pair is exactly disjoint.
SimplicialLink cable(const SimplicialLink& knot,
                     const NormalField* field = nullptr);

// Connected sum of two long knots built on lattice planes with identical
// standard inclusions: the non-standard cells of each summand are
// transplanted side by side into one longer lattice plane. smale_term adds.
SimplicialLink connected_sum(const SimplicialLink& a, const SimplicialLink& b);

// A PL map from a box lattice (rel boundary) to configurations of k
// distinct points in R^3: one k-point configuration per domain vertex,
// interpolated affinely on every tet, constant outside interior_radius.
struct ConfigMap {
    int k = 0;
    Vec lo, hi;        // domain box
    Rat cell = 0;      // lattice cell size
    Rat interior_radius = 0;
    std::vector<Pt> domain;               // lattice vertices (R^3)
    std::vector<std::vector<Vec>> points; // per vertex: k points in R^3
};

// Exact validity check: on every tet and every strand pair the difference
// of the two affine point maps is nowhere zero (0 is not in the convex hull
// of its four vertex values), and the map is constant outside
// interior_radius. Throws InvalidInput on violation.
void check_config(const ConfigMap& c);

// Graphing: strand i becomes the long component x -> (x, f_i(x)) in R^6.
// Strands that are constant everywhere are rebuilt on a one-cell lattice.
SimplicialLink graph(const ConfigMap& c);

// Inverse of graph for braid links: every component must be a graph over
// the first three coordinates on one common lattice (else NotABraid).
// retract(graph(c)) == c exactly (up to the coarsening of constant strands,
// which retract does not see because they are dropped back to the common
// lattice when present).
ConfigMap retract(const SimplicialLink& link);

// The two Whitehead-bracket representatives, graphed: a 3-component link
// from the bracket of the two "strand 2 orbits strand 1 / strand 3" sphere
// classes, and a 2-component link from the bracket of the identity sphere
// class of C(2, R^3) with itself.
SimplicialLink graph_whitehead_aa();
SimplicialLink graph_whitehead_idid();

// Trivial references: a flat long plane, and k far-apart product spheres.
SimplicialLink unknot();
SimplicialLink unlink(int k);

} // namespace hdl

#endif
