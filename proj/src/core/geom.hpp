#ifndef HDLINK_GEOM_HPP
#define HDLINK_GEOM_HPP

#include "rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace hdl {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
    Dimension = 1,
    RankDeficient,
    NonGenericIntersection,
    ApexDegenerate,
    CyclesIntersect,
    NonGenericApex,
    NonGenericDirection,
    NoValidProjectionPoint,
    PerturbationTooLarge,
    NonGenericProjection,
    GenericityUnreachable,
    PushOffCollision,
    UmbrellaPresent,
    ConsistencyFailure,
    NonInteger,
    LatticeViolation,
    NeighborhoodOverlap,
    SelectorInvalid,
    ParameterViolation,
    NoCorridor,
    NotABraid,
    InvalidInput,
};

struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// ---------------------------------------------------------------------------
// Points and vectors
// ---------------------------------------------------------------------------

using Vec = std::vector<Rat>;   // coordinate vector / direction in R^d
using Pt  = std::vector<Rat>;   // point in R^d

Vec sub(const Pt& a, const Pt& b);
Vec add(const Pt& a, const Vec& b);
Vec scale(const Vec& a, const Rat& s);
Rat dot(const Vec& a, const Vec& b);
Rat norm2(const Vec& a);

// p-simplex in R^d: p+1 vertices.
struct Simplex {
    std::vector<Pt> v;
    int dim() const { return (int)v.size() - 1; }
    int ambient() const { return v.empty() ? 0 : (int)v[0].size(); }
};

// Ordered list of linearly independent direction vectors (a partial frame).
struct OrientedFrame {
    std::vector<Vec> vectors;
};

// ---------------------------------------------------------------------------
// Exact linear algebra (small dense systems)
// ---------------------------------------------------------------------------

using Mat = std::vector<std::vector<Rat>>;

// Sign of det of a square matrix; 0 if singular.
int det_sign(Mat m);

// Row-reduced solve of A x = b. Returns the full solution set as a particular
// solution plus a basis of the kernel; nullopt if inconsistent.
struct AffineSolution {
    std::vector<Rat> particular;        // one solution
    std::vector<std::vector<Rat>> kernel; // basis of homogeneous solutions
};
std::optional<AffineSolution> solve_affine(Mat A, std::vector<Rat> b);

// Rank of a matrix (exact).
int rank(Mat m);

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

// Sign of the orientation of d+1 ordered points in R^d: +1 iff the edge
// vectors (p1-p0, ..., pd-p0) form a positively oriented basis; 0 iff the
// points are affinely dependent.
int orientation_sign(const std::vector<Pt>& pts);

// Transverse-intersection orientation: sign of the combined frame
// (u, v, w) as a basis of R^d. Throws RankDeficient when it is not a basis.
int transverse_orientation(const OrientedFrame& u, const OrientedFrame& v,
                           const OrientedFrame& w, int ambient);

} // namespace hdl

#endif
