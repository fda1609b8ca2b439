#include "chains.hpp"

#include "rng.hpp"

#include <map>

namespace hdl {

Chain cone(const Chain& c, const Pt& apex) {
    Chain out;
    out.dim = c.dim + 1;
    for (const auto& cs : c.simps) {
        Simplex s;
        s.v.push_back(apex);
        for (const auto& v : cs.s.v) s.v.push_back(v);
        out.simps.push_back({std::move(s), cs.sign});
    }
    return out;
}

Chain negate(const Chain& c) {
    Chain out = c;
    for (auto& cs : out.simps) cs.sign = -cs.sign;
    return out;
}

namespace {

int perm_sort_sign(std::vector<int>& idx) {
    int swaps = 0;
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            if (idx[i] > idx[j]) { std::swap(idx[i], idx[j]); ++swaps; }
    return swaps % 2 == 0 ? 1 : -1;
}

} // namespace

namespace {

// Boundary coefficients keyed by the sorted vertex tuple (the coefficient is
// taken relative to the sorted vertex order).
std::map<std::vector<Pt>, long> boundary_coefficients(const Chain& c) {
    std::map<std::vector<Pt>, long> coeff;
    for (const auto& cs : c.simps) {
        for (size_t k = 0; k < cs.s.v.size(); ++k) {
            std::vector<Pt> face;
            for (size_t i = 0; i < cs.s.v.size(); ++i)
                if (i != k) face.push_back(cs.s.v[i]);
            std::vector<Pt> key = face;
            std::sort(key.begin(), key.end());
            // Parity of the permutation taking `face` to sorted order.
            std::vector<int> idx(face.size());
            for (size_t i = 0; i < face.size(); ++i) {
                auto it = std::lower_bound(key.begin(), key.end(), face[i]);
                idx[i] = (int)(it - key.begin());
            }
            int par = perm_sort_sign(idx);
            coeff[key] += cs.sign * (k % 2 == 0 ? 1 : -1) * par;
        }
    }
    return coeff;
}

} // namespace

bool is_cycle(const Chain& c) {
    for (const auto& [key, v] : boundary_coefficients(c))
        if (v != 0) return false;
    return true;
}

Chain chain_boundary(const Chain& c) {
    Chain out;
    out.dim = c.dim - 1;
    for (const auto& [key, v] : boundary_coefficients(c)) {
        if (v == 0) continue;
        Simplex s;
        s.v = key;
        int sgn = v > 0 ? 1 : -1;
        for (long i = 0; i < (v > 0 ? v : -v); ++i)
            out.simps.push_back({s, sgn});
    }
    return out;
}

bool chains_disjoint(const Chain& M, const Chain& N) {
    std::vector<BBox> mb, nb;
    for (const auto& cs : M.simps) mb.push_back(bbox_of(cs.s));
    for (const auto& cs : N.simps) nb.push_back(bbox_of(cs.s));
    for (size_t i = 0; i < M.simps.size(); ++i)
        for (size_t j = 0; j < N.simps.size(); ++j) {
            if (!mb[i].overlaps(nb[j])) continue;
            if (!disjoint_simplices(M.simps[i].s, N.simps[j].s)) return false;
        }
    return true;
}

Int intersection_number(const Chain& M, const Chain& C) {
    if (M.simps.empty() || C.simps.empty()) return 0;
    const int d = M.ambient();
    if (C.ambient() != d || M.dim + C.dim != d)
        throw Error(ErrorCode::Dimension,
                    "intersection_number: dimensions do not pair to the ambient");
    std::vector<BBox> mb, cb;
    for (const auto& cs : M.simps) mb.push_back(bbox_of(cs.s));
    for (const auto& cs : C.simps) cb.push_back(bbox_of(cs.s));
    Int total = 0;
    for (size_t i = 0; i < M.simps.size(); ++i) {
        for (size_t j = 0; j < C.simps.size(); ++j) {
            if (!mb[i].overlaps(cb[j])) continue;
            const Simplex& s = M.simps[i].s;
            const Simplex& t = C.simps[j].s;
            auto r = intersect_simplices(s, t);
            if (r.kind == Isect::Kind::Empty) continue;
            if (r.kind != Isect::Kind::Point)
                throw Error(ErrorCode::NonGenericIntersection,
                            "intersection_number: non-transversal contact");
            for (const auto& l : r.a.lambda)
                if (l == 0)
                    throw Error(ErrorCode::NonGenericIntersection,
                                "intersection_number: contact on a simplex boundary");
            for (const auto& m : r.a.mu)
                if (m == 0)
                    throw Error(ErrorCode::NonGenericIntersection,
                                "intersection_number: contact on a simplex boundary");
            OrientedFrame fs, ft;
            for (size_t k = 1; k < s.v.size(); ++k)
                fs.vectors.push_back(sub(s.v[k], s.v[0]));
            for (size_t k = 1; k < t.v.size(); ++k)
                ft.vectors.push_back(sub(t.v[k], t.v[0]));
            int eps;
            try {
                eps = transverse_orientation(fs, ft, OrientedFrame{}, d);
            } catch (const Error&) {
                throw Error(ErrorCode::NonGenericIntersection,
                            "intersection_number: degenerate frame at a contact");
            }
            total += M.simps[i].sign * C.simps[j].sign * eps;
        }
    }
    return total;
}

namespace {

// Bounding box of a whole chain, as exact rational extremes.
void chain_extent(const Chain& c, Pt& lo, Pt& hi) {
    const int d = c.ambient();
    lo.assign(d, Rat(0));
    hi.assign(d, Rat(0));
    bool first = true;
    for (const auto& cs : c.simps)
        for (const auto& p : cs.s.v) {
            for (int i = 0; i < d; ++i) {
                if (first || p[i] < lo[i]) lo[i] = p[i];
                if (first || p[i] > hi[i]) hi[i] = p[i];
            }
            first = false;
        }
}

Int linking_via_apex(const Chain& M, const Chain& N, std::mt19937_64& rng) {
    const int d = M.ambient();
    Pt lo, hi, lo2, hi2;
    chain_extent(M, lo, hi);
    chain_extent(N, lo2, hi2);
    Rat radius = 1;
    for (int i = 0; i < d; ++i) {
        radius = rmax(radius, rmax(rabs(lo[i]), rabs(hi[i])));
        radius = rmax(radius, rmax(rabs(lo2[i]), rabs(hi2[i])));
    }
    for (int attempt = 0; attempt < 48; ++attempt) {
        Pt apex(d);
        for (int i = 0; i < d; ++i) apex[i] = rand_rat(rng, 3 * radius);
        Chain C = cone(N, apex);
        bool degenerate = false;
        for (const auto& cs : C.simps) {
            Mat m;
            for (size_t k = 1; k < cs.s.v.size(); ++k)
                m.push_back(sub(cs.s.v[k], cs.s.v[0]));
            if (rank(m) != (int)cs.s.v.size() - 1) { degenerate = true; break; }
        }
        if (degenerate) continue;
        try {
            return intersection_number(M, C);
        } catch (const Error& e) {
            if (e.code != ErrorCode::NonGenericIntersection) throw;
        }
    }
    throw Error(ErrorCode::NonGenericApex,
                "linking_number: no generic apex found");
}

} // namespace

Int linking_number(const Chain& M, const Chain& N, uint64_t seed) {
    const int d = M.ambient();
    if (N.ambient() != d || M.dim + N.dim + 1 != d)
        throw Error(ErrorCode::Dimension,
                    "linking_number: dim M + dim N + 1 must equal the ambient");
    if (!chains_disjoint(M, N))
        throw Error(ErrorCode::CyclesIntersect, "linking_number: cycles touch");
    auto rng = seeded_rng(seed, 0x11);
    Int v1 = linking_via_apex(M, N, rng);
    Int v2 = linking_via_apex(M, N, rng);
    if (v1 != v2)
        throw Error(ErrorCode::ConsistencyFailure,
                    "linking_number: apex-dependent result " + v1.str() + " vs " +
                        v2.str());
    return v1;
}

Int crossing_count_linking(const Chain& M, const Chain& N, uint64_t seed) {
    if (M.ambient() != 3 || N.ambient() != 3 || M.dim != 1 || N.dim != 1)
        throw Error(ErrorCode::Dimension,
                    "crossing_count_linking: needs curves in R^3");
    if (!chains_disjoint(M, N))
        throw Error(ErrorCode::CyclesIntersect,
                    "crossing_count_linking: curves touch");
    auto rng = seeded_rng(seed, 0x22);
    for (int attempt = 0; attempt < 48; ++attempt) {
        const Rat s1 = rand_rat(rng, Rat(1)), s2 = rand_rat(rng, Rat(1));
        auto proj = [&](const Pt& p) {
            return std::array<Rat, 2>{p[0] + s1 * p[2], p[1] + s2 * p[2]};
        };
        Int total = 0;
        bool retry = false;
        for (const auto& ms : M.simps) {
            if (retry) break;
            auto p0 = proj(ms.s.v[0]), p1 = proj(ms.s.v[1]);
            const std::array<Rat, 2> dm{p1[0] - p0[0], p1[1] - p0[1]};
            if (dm[0] == 0 && dm[1] == 0) { retry = true; break; }
            for (const auto& ns : N.simps) {
                auto q0 = proj(ns.s.v[0]), q1 = proj(ns.s.v[1]);
                const std::array<Rat, 2> dn{q1[0] - q0[0], q1[1] - q0[1]};
                if (dn[0] == 0 && dn[1] == 0) { retry = true; break; }
                Rat D = dm[0] * dn[1] - dm[1] * dn[0];
                const std::array<Rat, 2> r{q0[0] - p0[0], q0[1] - p0[1]};
                if (D == 0) {
                    // Parallel projections: an overlap forces a new direction.
                    if (r[0] * dm[1] - r[1] * dm[0] == 0) { retry = true; break; }
                    continue;
                }
                Rat t = (r[0] * dn[1] - r[1] * dn[0]) / D;
                Rat u = (r[0] * dm[1] - r[1] * dm[0]) / D;
                if (t < 0 || t > 1 || u < 0 || u > 1) continue;
                if (t == 0 || t == 1 || u == 0 || u == 1) { retry = true; break; }
                Rat zm = ms.s.v[0][2] + t * (ms.s.v[1][2] - ms.s.v[0][2]);
                Rat zn = ns.s.v[0][2] + u * (ns.s.v[1][2] - ns.s.v[0][2]);
                if (zm == zn)
                    throw Error(ErrorCode::CyclesIntersect,
                                "crossing_count_linking: curves meet");
                if (zm > zn) total += ms.sign * ns.sign * sgn(D);
            }
        }
        if (!retry) return total;
    }
    throw Error(ErrorCode::NonGenericDirection,
                "crossing_count_linking: no generic projection found");
}

Int linking_in_sphere(const Component& comp, const Chain& A, const Chain& B,
                      uint64_t seed) {
    if (comp.domain.empty() || comp.domain[0].size() != 4)
        throw Error(ErrorCode::Dimension,
                    "linking_in_sphere: needs a spherical domain in R^4");
    if (A.dim != 1 || B.dim != 1 || A.ambient() != 4 || B.ambient() != 4)
        throw Error(ErrorCode::Dimension, "linking_in_sphere: needs curves in R^4");
    if (!chains_disjoint(A, B))
        throw Error(ErrorCode::CyclesIntersect, "linking_in_sphere: curves touch");

    // Interior reference point of the convex domain polytope.
    Pt c(4, Rat(0));
    for (const auto& p : comp.domain)
        for (int i = 0; i < 4; ++i) c[i] += p[i];
    for (auto& x : c) x /= (int)comp.domain.size();

    // Alignment of the component's orientation with the outward-first
    // boundary orientation of the polytope.
    const auto& tet = comp.cx.tets.at(0);
    Mat frame;
    frame.push_back(sub(comp.domain[tet[0]], c));
    for (int k = 1; k < 4; ++k)
        frame.push_back(sub(comp.domain[tet[k]], comp.domain[tet[0]]));
    int align = comp.cx.orient[0] * det_sign(frame);
    if (align == 0)
        throw Error(ErrorCode::ConsistencyFailure,
                    "linking_in_sphere: degenerate reference tet");

    Rat spread = 1;
    for (const auto& p : comp.domain)
        for (int i = 0; i < 4; ++i) spread = rmax(spread, rabs(p[i] - c[i]));

    auto rng = seeded_rng(seed, 0x33);
    auto once = [&]() -> Int {
        for (int attempt = 0; attempt < 48; ++attempt) {
            Pt c1(4), c2(4);
            for (int i = 0; i < 4; ++i) {
                c1[i] = c[i] + rand_rat(rng, spread / 8);
                c2[i] = c[i] + rand_rat(rng, spread / 8);
            }
            if (c1 == c2) continue;
            Chain CA = cone(A, c1), CB = cone(B, c2);
            bool degenerate = false;
            for (const auto* ch : {&CA, &CB})
                for (const auto& cs : ch->simps) {
                    Mat m;
                    for (size_t k = 1; k < cs.s.v.size(); ++k)
                        m.push_back(sub(cs.s.v[k], cs.s.v[0]));
                    if (rank(m) != 2) { degenerate = true; break; }
                }
            if (degenerate) continue;
            try {
                return intersection_number(CA, CB);
            } catch (const Error& e) {
                if (e.code != ErrorCode::NonGenericIntersection) throw;
            }
        }
        throw Error(ErrorCode::NonGenericApex,
                    "linking_in_sphere: no generic apex pair found");
    };
    Int v1 = once();
    Int v2 = once();
    if (v1 != v2)
        throw Error(ErrorCode::ConsistencyFailure,
                    "linking_in_sphere: apex-dependent result");
    return align * v1;
}

} // namespace hdl
