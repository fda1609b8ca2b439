#include "locus.hpp"

#include <map>

namespace hdl {

namespace {

Pt bary_apply(const Simplex& s, const Vec& bary) {
    Pt p(s.v[0].size(), Rat(0));
    for (size_t k = 0; k < s.v.size(); ++k)
        for (size_t i = 0; i < p.size(); ++i) p[i] += bary[k] * s.v[k][i];
    return p;
}

Rat sixth_coordinate(const Component& comp, int tet, const Vec& bary) {
    Rat u6 = 0;
    for (int k = 0; k < 4; ++k) u6 += bary[k] * comp.embed[comp.cx.tets[tet][k]][5];
    return u6;
}

// Orient the frame (u, E_i, E_j) positively inside the oriented 3-space of a
// projected sheet: returns the ordered pair of complementary edges. sigma is
// the sheet orientation sign carried by (E1, E2, E3).
std::pair<Vec, Vec> positive_complement(const Vec& u, const std::vector<Vec>& E,
                                        int sigma) {
    Mat A(u.size(), std::vector<Rat>(3));
    for (size_t r = 0; r < u.size(); ++r)
        for (int c = 0; c < 3; ++c) A[r][c] = E[c][r];
    auto sol = solve_affine(A, u);
    if (!sol)
        throw Error(ErrorCode::NonGenericProjection,
                    "locus: direction left the sheet's tangent space");
    int m = -1;
    for (int k = 0; k < 3; ++k)
        if (sol->particular[k] != 0) { m = k; break; }
    if (m < 0)
        throw Error(ErrorCode::NonGenericProjection, "locus: zero direction");
    int i = (m == 0) ? 1 : 0;
    int j = (m == 2) ? 1 : 2;
    int parity = (m == 1) ? -1 : 1;
    int s = sgn(sol->particular[m]) * parity * sigma;
    if (s > 0) return {E[i], E[j]};
    return {E[j], E[i]};
}

struct EndRef {
    int seg;
    int end; // 0 = tail (im0), 1 = head (im1)
};

} // namespace

DoubleLocus double_locus(const SimplicialLink& link) {
    struct Entry {
        int ci, t;
        Simplex proj;
        BBox box;
    };
    std::vector<Entry> entries;
    for (size_t ci = 0; ci < link.comps.size(); ++ci)
        for (size_t t = 0; t < link.comps[ci].cx.tets.size(); ++t) {
            Simplex p = link.comps[ci].projected_simplex((int)t);
            BBox b = bbox_of(p);
            entries.push_back({(int)ci, (int)t, std::move(p), std::move(b)});
        }

    std::vector<LocusSeg> segs;
    for (size_t i = 0; i < entries.size(); ++i) {
        for (size_t j = i + 1; j < entries.size(); ++j) {
            const Entry& A = entries[i];
            const Entry& B = entries[j];
            if (!A.box.overlaps(B.box)) continue;
            const Component& ca = link.comps[A.ci];
            const Component& cb = link.comps[B.ci];
            if (A.ci == B.ci && ca.shared_vertex_count(A.t, B.t) > 0) {
                const auto& ta = ca.cx.tets[A.t];
                const auto& tb = cb.cx.tets[B.t];
                std::vector<std::pair<int, int>> shared;
                for (int x = 0; x < 4; ++x)
                    for (int y = 0; y < 4; ++y)
                        if (ta[x] == tb[y]) shared.push_back({x, y});
                if (!adjacent_pair_clean(A.proj, B.proj, shared))
                    throw Error(ErrorCode::NonGenericProjection,
                                "locus: projected neighbours of component " +
                                    std::to_string(A.ci) +
                                    " overlap beyond their shared face");
                continue;
            }
            if (disjoint_simplices(A.proj, B.proj)) continue;
            auto r = intersect_simplices(A.proj, B.proj);
            if (r.kind == Isect::Kind::Empty) continue;
            if (r.kind != Isect::Kind::Segment)
                throw Error(ErrorCode::NonGenericProjection,
                            "locus: non-transversal sheet contact");
            if (r.endpoint_codim2)
                throw Error(ErrorCode::NonGenericProjection,
                            "locus: curve endpoint on a corner of the triangulation");

            Pt p0 = bary_point(A.proj, r.a.lambda);
            Pt p1 = bary_point(A.proj, r.b.lambda);

            // Over sheet by the dropped coordinate, checked at both ends.
            Rat d0 = sixth_coordinate(ca, A.t, r.a.lambda) -
                     sixth_coordinate(cb, B.t, r.a.mu);
            Rat d1 = sixth_coordinate(ca, A.t, r.b.lambda) -
                     sixth_coordinate(cb, B.t, r.b.mu);
            if (sgn(d0) == 0 || sgn(d0) != sgn(d1))
                throw Error(ErrorCode::ConsistencyFailure,
                            "locus: sheets meet in R^6 along a double point");
            bool a_over = d0 > 0;

            // Locus orientation: (u, positive frame of sheet A, positive
            // frame of sheet B) positive in R^5; for two sheets the rule is
            // order-independent.
            Vec u = sub(p1, p0);
            std::vector<Vec> EA, EB;
            for (int k = 1; k < 4; ++k) {
                EA.push_back(sub(A.proj.v[k], A.proj.v[0]));
                EB.push_back(sub(B.proj.v[k], B.proj.v[0]));
            }
            auto [va1, va2] = positive_complement(u, EA, ca.cx.orient[A.t]);
            auto [vb1, vb2] = positive_complement(u, EB, cb.cx.orient[B.t]);
            int theta = det_sign({u, va1, va2, vb1, vb2});
            if (theta == 0)
                throw Error(ErrorCode::NonGenericProjection,
                            "locus: tangent spaces of the sheets are not transversal");

            LocusSeg seg;
            auto mk = [](int comp, int tet, const Vec& bary) {
                return SheetPoint{comp, tet, bary};
            };
            SheetPoint A0 = mk(A.ci, A.t, r.a.lambda), A1 = mk(A.ci, A.t, r.b.lambda);
            SheetPoint B0 = mk(B.ci, B.t, r.a.mu), B1 = mk(B.ci, B.t, r.b.mu);
            if (theta > 0) {
                seg.im0 = p0;
                seg.im1 = p1;
            } else {
                seg.im0 = p1;
                seg.im1 = p0;
                std::swap(A0, A1);
                std::swap(B0, B1);
            }
            seg.over0 = a_over ? A0 : B0;
            seg.over1 = a_over ? A1 : B1;
            seg.under0 = a_over ? B0 : A0;
            seg.under1 = a_over ? B1 : A1;
            segs.push_back(std::move(seg));
        }
    }

    // Stitch segments into curves by exact endpoint equality in R^5.
    std::map<Pt, std::vector<EndRef>> at;
    for (size_t s = 0; s < segs.size(); ++s) {
        at[segs[s].im0].push_back({(int)s, 0});
        at[segs[s].im1].push_back({(int)s, 1});
    }
    for (const auto& [p, refs] : at) {
        if (refs.size() > 2)
            throw Error(ErrorCode::NonGenericProjection,
                        "locus: more than two curve ends meet at one point");
        if (refs.size() == 2 && refs[0].end == refs[1].end)
            throw Error(ErrorCode::ConsistencyFailure,
                        "locus: incoherent curve orientations at a stitch point");
    }

    auto domain_pt = [&](const SheetPoint& sp) {
        return bary_apply(link.comps[sp.comp].domain_simplex(sp.tet), sp.bary);
    };
    auto check_stitch = [&](const LocusSeg& cur, const LocusSeg& nxt) {
        if (cur.over1.comp != nxt.over0.comp || cur.under1.comp != nxt.under0.comp)
            throw Error(ErrorCode::ConsistencyFailure,
                        "locus: over/under sheets flip across a stitch point");
        if (domain_pt(cur.over1) != domain_pt(nxt.over0) ||
            domain_pt(cur.under1) != domain_pt(nxt.under0))
            throw Error(ErrorCode::ConsistencyFailure,
                        "locus: preimages disagree across a stitch point");
    };

    DoubleLocus out;
    std::vector<bool> used(segs.size(), false);
    for (size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0]) continue;
        LocusCurve curve;
        int s = (int)s0;
        while (true) {
            used[s] = true;
            curve.segs.push_back(segs[s]);
            const auto& refs = at[segs[s].im1];
            if (refs.size() == 1) { curve.closed = false; break; }
            int nxt = (refs[0].seg == s && refs[0].end == 1) ? refs[1].seg : refs[0].seg;
            if (nxt == (int)s0) break; // closed up
            if (used[nxt])
                throw Error(ErrorCode::ConsistencyFailure,
                            "locus: stitching revisited a segment");
            check_stitch(segs[s], segs[nxt]);
            s = nxt;
        }
        if (curve.closed)
            check_stitch(curve.segs.back(), curve.segs.front());
        else {
            // The walk started mid-arc only if the tail of s0 was also open;
            // otherwise the arc was traversed from its true start. Either way
            // an open arc is fatal.
            const auto& sp = curve.segs.front();
            if (sp.over0.comp == sp.under0.comp)
                throw Error(ErrorCode::UmbrellaPresent,
                            "locus: self-intersection arc terminates (umbrella point)");
            throw Error(ErrorCode::NonGenericProjection,
                        "locus: double-point arc between distinct components "
                        "terminates");
        }
        curve.comp_over = curve.segs[0].over0.comp;
        curve.comp_under = curve.segs[0].under0.comp;
        out.curves.push_back(std::move(curve));
    }
    return out;
}

ValidationReport check_generic(const SimplicialLink& link) {
    ValidationReport rep;
    try {
        (void)double_locus(link);
    } catch (const Error& e) {
        if (e.code == ErrorCode::NonGenericProjection ||
            e.code == ErrorCode::NonGenericIntersection ||
            e.code == ErrorCode::UmbrellaPresent)
            rep.fail(e.what());
        else
            throw;
    }
    return rep;
}

SimplicialLink resolve_to_generic(const SimplicialLink& link, uint64_t seed,
                                  int max_attempts) {
    if (check_generic(link).ok) return link;
    Rat spread = 1;
    for (const auto& comp : link.comps)
        for (const auto& p : comp.embed)
            for (const auto& c : p) spread = rmax(spread, rabs(c));
    Rat magnitude = spread / 4096;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        try {
            SimplicialLink cand = perturb(link, magnitude, seed + attempt);
            if (check_generic(cand).ok) return cand;
        } catch (const Error& e) {
            if (e.code != ErrorCode::PerturbationTooLarge) throw;
        }
        if (attempt % 4 == 0) magnitude /= 8;
    }
    throw Error(ErrorCode::GenericityUnreachable,
                "resolve_to_generic: no generic perturbation found");
}

Chain image_chain(const LocusCurve& c) {
    Chain out;
    out.dim = 1;
    for (const auto& seg : c.segs) {
        Simplex s;
        s.v.push_back(seg.im0);
        s.v.push_back(seg.im1);
        out.simps.push_back({std::move(s), 1});
    }
    return out;
}

Chain preimage_chain(const SimplicialLink& link, const LocusCurve& c, bool over,
                     bool in_domain) {
    Chain out;
    out.dim = 1;
    for (const auto& seg : c.segs) {
        const SheetPoint& p0 = over ? seg.over0 : seg.under0;
        const SheetPoint& p1 = over ? seg.over1 : seg.under1;
        const Component& comp = link.comps[p0.comp];
        Simplex base = in_domain ? comp.domain_simplex(p0.tet)
                                 : comp.embed_simplex(p0.tet);
        Simplex s;
        s.v.push_back(bary_apply(base, p0.bary));
        s.v.push_back(bary_apply(in_domain ? comp.domain_simplex(p1.tet)
                                           : comp.embed_simplex(p1.tet),
                                 p1.bary));
        out.simps.push_back({std::move(s), 1});
    }
    return out;
}

} // namespace hdl
