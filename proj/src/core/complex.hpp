#ifndef HDLINK_COMPLEX_HPP
#define HDLINK_COMPLEX_HPP

#include "geom.hpp"
#include "simplex_isect.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>

namespace hdl {

// Abstract oriented triangulated closed 3-manifold (one component), l = 2:
// top simplices are 4-tuples of vertex indices with a +-1 orientation sign.
struct AbstractComplex {
    int ell = 2;
    int vertex_count = 0;
    std::vector<std::array<int, 4>> tets;
    std::vector<int> orient; // +-1 per tet
};

// For long components: the standard affine inclusion R^3 -> R^6 the component
// agrees with at domain points of sup-norm >= interior_radius.
struct LongInfo {
    Mat lin;  // 6x3
    Vec off;  // 6
    Rat interior_radius;
};

struct Component {
    AbstractComplex cx;
    std::vector<Pt> domain; // per-vertex: R^4 (spherical) or R^3 (long)
    std::vector<Pt> embed;  // per-vertex: R^6
    std::optional<LongInfo> standard;

    Simplex embed_simplex(int t) const;
    Simplex domain_simplex(int t) const;
    Simplex projected_simplex(int t) const; // embed with last coordinate dropped
    int shared_vertex_count(int t1, int t2) const;
};

enum class LinkKind { spherical, long_knot };

struct SimplicialLink {
    int ell = 2;
    LinkKind kind = LinkKind::spherical;
    std::vector<Component> comps;
    std::optional<Rat> smale_term; // supplied regular-homotopy input, if certified
    std::string provenance;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;
    void fail(const std::string& p) {
        ok = false;
        if (problems.size() < 50) problems.push_back(p);
    }
};

// Full validation: combinatorial manifold/orientation coherence, Euler
// characteristic 0, connectivity, domain & ambient embedding injectivity,
// long-component standardness outside the declared box.
ValidationReport validate(const SimplicialLink& link);

// Embedding-only validation of the ambient map, restricted to simplex pairs
// touching at least one vertex of `moved` (all pairs when moved is empty and
// check_all is true). Used by the perturbation isotopy certificate.
ValidationReport validate_embedding(const SimplicialLink& link,
                                    const std::vector<std::set<int>>& moved,
                                    bool check_all);

// Red (1->8) subdivision rounds until every embedded edge has sup-norm length
// < target. Point set and orientation preserved.
SimplicialLink refine(const SimplicialLink& link, const Rat& target_edge_length);

// One red-refinement round applied to every component.
SimplicialLink refine_once(const SimplicialLink& link);

// Seeded rational perturbation of ambient vertex positions of magnitude
// <= magnitude (sup-norm), with the straight-line interpolation validated on
// the dyadic grid t = k/16 as an isotopy certificate. Long components keep
// their standard region fixed. Throws PerturbationTooLarge on failure.
SimplicialLink perturb(const SimplicialLink& link, const Rat& magnitude,
                       uint64_t seed);

SimplicialLink reverse_component(const SimplicialLink& link, int i);
SimplicialLink mirror(const SimplicialLink& link);

// Exact volume-preserving shear u_index += u6/8 (index in [0,5)): an ambient
// isotopy that changes the projection direction. Invariants must not change.
SimplicialLink shear_projection(const SimplicialLink& link, int index);

// Exact sup-norm bounding box prefilter data.
struct BBox {
    std::vector<double> lo, hi;
    bool overlaps(const BBox& o) const {
        for (size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > o.hi[i] || o.lo[i] > hi[i]) return false;
        return true;
    }
};
BBox bbox_of(const Simplex& s);

// True iff the closed simplices do not touch at all (certified exactly; a
// guessed separating hyperplane fast path backed by the exact intersection
// test).
bool disjoint_simplices(const Simplex& S, const Simplex& T);

// True iff closed simplices S and T (sharing the vertices listed in both
// orders via shared index pairs) intersect exactly in their shared face.
bool adjacent_pair_clean(const Simplex& S, const Simplex& T,
                         const std::vector<std::pair<int, int>>& shared);

} // namespace hdl

#endif
