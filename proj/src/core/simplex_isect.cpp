#include "simplex_isect.hpp"
#include "lp.hpp"

namespace hdl {

Pt bary_point(const Simplex& s, const std::vector<Rat>& coords) {
    if (coords.size() != s.v.size())
        throw Error(ErrorCode::Dimension, "bary_point: coordinate count mismatch");
    Pt p(s.ambient(), Rat(0));
    for (size_t i = 0; i < coords.size(); ++i)
        for (int j = 0; j < s.ambient(); ++j) p[j] += coords[i] * s.v[i][j];
    return p;
}

Pt lerp(const Pt& a, const Pt& b, const Rat& t) {
    Pt p(a.size());
    for (size_t i = 0; i < a.size(); ++i) p[i] = a[i] + t * (b[i] - a[i]);
    return p;
}

Isect intersect_simplices(const Simplex& s, const Simplex& t) {
    const int d = s.ambient();
    if (t.ambient() != d)
        throw Error(ErrorCode::Dimension, "intersect_simplices: ambient mismatch");
    const int p = s.dim(), q = t.dim();
    const int nl = p + 1, nm = q + 1;
    const int nvars = nl + nm;

    // System: sum(lambda_i s_i) - sum(mu_j t_j) = 0 (d rows),
    //         sum(lambda) = 1, sum(mu) = 1.
    Mat A(d + 2, std::vector<Rat>(nvars, Rat(0)));
    std::vector<Rat> b(d + 2, Rat(0));
    for (int r = 0; r < d; ++r) {
        for (int i = 0; i < nl; ++i) A[r][i] = s.v[i][r];
        for (int j = 0; j < nm; ++j) A[r][nl + j] = -t.v[j][r];
    }
    for (int i = 0; i < nl; ++i) A[d][i] = 1;
    for (int j = 0; j < nm; ++j) A[d + 1][nl + j] = 1;
    b[d] = 1;
    b[d + 1] = 1;

    Isect out;
    auto sol = solve_affine(A, b);
    if (!sol) { out.kind = Isect::Kind::Empty; return out; }
    const int sdim = (int)sol->kernel.size();
    const int expected = p + q - d;

    auto split = [&](const std::vector<Rat>& x) {
        BaryPair bp;
        bp.lambda.assign(x.begin(), x.begin() + nl);
        bp.mu.assign(x.begin() + nl, x.end());
        return bp;
    };

    if (sdim == 0) {
        const auto& x = sol->particular;
        int zeros = 0;
        for (const auto& c : x) {
            if (c < 0) { out.kind = Isect::Kind::Empty; return out; }
            if (c == 0) ++zeros;
        }
        if (expected != 0 || zeros > 0) {
            out.kind = Isect::Kind::Contact;
            out.note = expected != 0 ? "point contact where dimension expected "
                                       + std::to_string(expected)
                                     : "intersection point on a boundary face";
            out.a = split(x);
            return out;
        }
        out.kind = Isect::Kind::Point;
        out.a = split(x);
        return out;
    }

    if (sdim == 1) {
        const auto& x0 = sol->particular;
        const auto& k = sol->kernel[0];
        // Clip x0 + t*k to the nonnegative orthant.
        bool lo_set = false, hi_set = false;
        Rat lo = 0, hi = 0;
        for (int i = 0; i < nvars; ++i) {
            if (k[i] == 0) {
                if (x0[i] < 0) { out.kind = Isect::Kind::Empty; return out; }
                continue;
            }
            Rat bound = -x0[i] / k[i];
            if (k[i] > 0) { // x0+tk >= 0  <=>  t >= bound
                if (!lo_set || bound > lo) { lo = bound; lo_set = true; }
            } else {
                if (!hi_set || bound < hi) { hi = bound; hi_set = true; }
            }
        }
        if (!lo_set || !hi_set)
            throw Error(ErrorCode::RankDeficient,
                        "intersect_simplices: unbounded parameter line");
        if (lo > hi) { out.kind = Isect::Kind::Empty; return out; }

        auto at = [&](const Rat& tpar) {
            std::vector<Rat> x(nvars);
            for (int i = 0; i < nvars; ++i) x[i] = x0[i] + tpar * k[i];
            return x;
        };
        if (lo == hi) {
            out.kind = Isect::Kind::Contact;
            out.note = "pinch-point contact of a 1-dimensional intersection";
            out.a = split(at(lo));
            return out;
        }
        if (expected != 1) {
            out.kind = Isect::Kind::Contact;
            out.note = "1-dimensional overlap where dimension expected "
                       + std::to_string(expected);
            out.a = split(at(lo));
            out.b = split(at(hi));
            return out;
        }
        auto xa = at(lo), xb = at(hi);
        // A coordinate vanishing identically means the whole segment lies in a
        // boundary facet: non-generic.
        for (int i = 0; i < nvars; ++i)
            if (xa[i] == 0 && xb[i] == 0) {
                out.kind = Isect::Kind::Contact;
                out.note = "intersection segment lies in a boundary facet";
                out.a = split(xa);
                out.b = split(xb);
                return out;
            }
        int za = 0, zb = 0;
        for (int i = 0; i < nvars; ++i) {
            if (xa[i] == 0) ++za;
            if (xb[i] == 0) ++zb;
        }
        out.kind = Isect::Kind::Segment;
        out.a = split(xa);
        out.b = split(xb);
        out.endpoint_codim2 = (za >= 2 || zb >= 2);
        return out;
    }

    // Solution space of dimension >= 2: decide feasibility exactly.
    if (lp_feasible(A, b)) {
        out.kind = Isect::Kind::Contact;
        out.note = "affine hulls overlap in dimension " + std::to_string(sdim) +
                   " with nonempty simplex intersection";
    } else {
        out.kind = Isect::Kind::Empty;
    }
    return out;
}

} // namespace hdl
