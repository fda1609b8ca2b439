#ifndef HDLINK_CHAINS_HPP
#define HDLINK_CHAINS_HPP

#include "complex.hpp"

namespace hdl {

// Oriented simplicial p-chain: simplices with +-1 coefficients. The vertex
// order of each simplex together with the sign carries the orientation.
struct ChainSimplex {
    Simplex s;
    int sign = 1;
};

struct Chain {
    int dim = 0;
    std::vector<ChainSimplex> simps;
    int ambient() const { return simps.empty() ? 0 : simps[0].s.ambient(); }
};

// Cone a*c: each simplex [v0..vp] becomes [a, v0..vp] with the same sign,
// so that boundary(a*c) = c - a*boundary(c).
Chain cone(const Chain& c, const Pt& apex);

// Exact check that the boundary of the chain vanishes.
bool is_cycle(const Chain& c);

// Boundary (p-1)-chain after exact cancellation of interior faces. Each
// surviving face is emitted in sorted vertex order with its net coefficient.
Chain chain_boundary(const Chain& c);

// Reverse the orientation of a chain.
Chain negate(const Chain& c);

// Signed transversal intersection count of a p-chain and a q-chain with
// p + q = d. Every geometric intersection must be a single point in the
// relative interior of both simplices; anything else throws
// NonGenericIntersection.
Int intersection_number(const Chain& M, const Chain& C);

// True iff no simplex of M touches a simplex of N.
bool chains_disjoint(const Chain& M, const Chain& N);

// Linking number of disjoint cycles M (dim m) and N (dim n) in R^d with
// m + n + 1 = d: the intersection number of M with a cone over N from a
// seeded random apex. Recomputed from an independent apex as a consistency
// check; disagreement throws ConsistencyFailure. M may be a non-closed chain
// when its missing boundary is guaranteed to stay clear of the cone (used
// with the noncompact standard ends of long components).
Int linking_number(const Chain& M, const Chain& N, uint64_t seed = 0);

// Independent oracle for disjoint closed curves in R^3: signed count of the
// crossings where M passes over N in a seeded generic projection to the
// plane.
Int crossing_count_linking(const Chain& M, const Chain& N, uint64_t seed = 0);

// Linking number of two disjoint 1-cycles lying on the boundary 3-sphere of
// the convex domain polytope of a spherical component. Computed as the
// intersection number of interior cones over the two curves from distinct
// apexes; the sign follows the component's own orientation.
Int linking_in_sphere(const Component& comp, const Chain& A, const Chain& B,
                      uint64_t seed = 0);

} // namespace hdl

#endif
