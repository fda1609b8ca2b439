#include "framing.hpp"

#include "rng.hpp"

#include <algorithm>

namespace hdl {

namespace {

Pt branch_point(const SimplicialLink& link, const LocusCurve& curve, int seg,
                const Rat& t, bool over) {
    const LocusSeg& s = curve.segs[seg];
    const SheetPoint& a = over ? s.over0 : s.under0;
    const SheetPoint& b = over ? s.over1 : s.under1;
    const Component& comp = link.comps[a.comp];
    Simplex D = comp.domain_simplex(a.tet);
    Pt p(D.v[0].size(), Rat(0));
    for (int k = 0; k < 4; ++k) {
        Rat bary = (1 - t) * a.bary[k] + t * b.bary[k];
        for (size_t i = 0; i < p.size(); ++i) p[i] += bary * D.v[k][i];
    }
    return p;
}

Pt image_point(const LocusCurve& curve, int seg, const Rat& t) {
    const LocusSeg& s = curve.segs[seg];
    Pt p(s.im0.size());
    for (size_t i = 0; i < p.size(); ++i)
        p[i] = (1 - t) * s.im0[i] + t * s.im1[i];
    return p;
}

// Insert a sample at (seg, t), t in (0,1), with both field values
// interpolated so neither pushed circle changes geometrically.
size_t insert_interpolated(FramedCurve& fc, int seg, const Rat& t) {
    auto& ss = fc.samples;
    size_t idx = 0;
    while (idx < ss.size() &&
           (ss[idx].seg < seg || (ss[idx].seg == seg && ss[idx].t <= t)))
        ++idx;
    const FrameSample& prev = ss[idx - 1];
    if (prev.seg != seg || prev.t >= t)
        throw Error(ErrorCode::InvalidInput, "framing: bad twist position");
    const FrameSample& next = idx < ss.size() ? ss[idx] : ss[0];
    Rat t1 = (idx < ss.size() && next.seg == seg) ? next.t : Rat(1);
    Rat u = (t - prev.t) / (t1 - prev.t);
    FrameSample mid;
    mid.seg = seg;
    mid.t = t;
    mid.v_over.resize(prev.v_over.size());
    mid.v_under.resize(prev.v_under.size());
    for (size_t i = 0; i < mid.v_over.size(); ++i) {
        mid.v_over[i] = (1 - u) * prev.v_over[i] + u * next.v_over[i];
        mid.v_under[i] = (1 - u) * prev.v_under[i] + u * next.v_under[i];
    }
    ss.insert(ss.begin() + idx, std::move(mid));
    return idx;
}

Vec cross3(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

Rat sup_norm(const Vec& v) {
    Rat m = 0;
    for (const auto& c : v) m = rmax(m, rabs(c));
    return m;
}

// True iff (1 - t) a + t b is linearly independent from e for every
// t in [0, 1]. c(t) = ((1 - t) a + t b) x e is linear in t, so it avoids
// zero iff its endpoints are nonzero and not antiparallel.
bool arc_avoids_axis(const Vec& a, const Vec& b, const Vec& e) {
    Vec c0 = cross3(a, e), c1 = cross3(b, e);
    if (sup_norm(c0) == 0 || sup_norm(c1) == 0) return false;
    if (sup_norm(cross3(c0, c1)) != 0) return true;
    return dot(c0, c1) > 0;
}

} // namespace

Chain framed_domain_circle(const SimplicialLink& link, const LocusCurve& curve,
                           const FramedCurve& fc, bool over, const Rat& eps) {
    std::vector<Pt> pts;
    for (const auto& s : fc.samples) {
        Pt p = branch_point(link, curve, s.seg, s.t, over);
        if (eps != 0) {
            const Vec& v = over ? s.v_over : s.v_under;
            for (size_t i = 0; i < p.size(); ++i) p[i] += eps * v[i];
        }
        pts.push_back(std::move(p));
    }
    Chain c;
    c.dim = 1;
    for (size_t i = 0; i < pts.size(); ++i) {
        const Pt& a = pts[i];
        const Pt& b = pts[(i + 1) % pts.size()];
        if (a == b) continue;
        Simplex s;
        s.v.push_back(a);
        s.v.push_back(b);
        c.simps.push_back({std::move(s), 1});
    }
    return c;
}

void insert_twists(const SimplicialLink& link, const LocusCurve& curve,
                   FramedCurve& fc, int n, bool over) {
    if (n == 0) return;
    const int nsegs = (int)curve.segs.size();
    const int seg = over ? 0 : 1 % nsegs;
    Vec v0;
    for (const auto& s : fc.samples)
        if (s.seg == seg && s.t == 0) v0 = over ? s.v_over : s.v_under;
    Vec e = sub(branch_point(link, curve, seg, 1, over),
                branch_point(link, curve, seg, 0, over));
    Vec n2 = cross3(e, v0);
    Rat m = sup_norm(n2);
    if (m == 0)
        throw Error(ErrorCode::ConsistencyFailure,
                    "framing: twist axis is tangent to the curve");
    Rat rescale = sup_norm(v0) / m;
    for (auto& c : n2) c *= rescale;
    const int dir = n > 0 ? 1 : -1;
    const int total = 4 * std::abs(n);
    // Spread the new samples over the gap between the segment start and the
    // next existing sample, so repeated insertions never collide.
    Rat t1 = 1;
    for (const auto& s : fc.samples)
        if (s.seg == seg && s.t > 0) {
            t1 = s.t;
            break;
        }
    for (int k = 1; k <= total; ++k) {
        Rat t = t1 * k / (total + 1);
        size_t idx = insert_interpolated(fc, seg, t);
        Vec val;
        switch (k % 4) {
            case 1: val = n2; break;
            case 2: val = v0; for (auto& c : val) c = -c; break;
            case 3: val = n2; for (auto& c : val) c = -c; break;
            default: val = v0; break;
        }
        if (dir < 0 && (k % 2 == 1))
            for (auto& c : val) c = -c; // reverse the rotation sense
        (over ? fc.samples[idx].v_over : fc.samples[idx].v_under) = val;
    }
}

Framing zero_framing(const SimplicialLink& link, const DoubleLocus& locus,
                     int comp, uint64_t seed) {
    Framing out;
    out.comp = comp;
    std::vector<int> ids;
    for (size_t c = 0; c < locus.curves.size(); ++c)
        if (locus.curves[c].comp_over == comp &&
            locus.curves[c].comp_under == comp)
            ids.push_back((int)c);
    if (ids.empty()) return out;
    if (link.comps[comp].domain[0].size() != 3)
        throw Error(ErrorCode::InvalidInput,
                    "zero_framing: needs a long component (domain R^3)");

    std::string last_problem = "no attempt";
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            auto rng = seeded_rng(seed, 0xF1 + (uint64_t)attempt);
            auto rand_dir = [&]() {
                while (true) {
                    Vec r{rand_rat(rng, Rat(1)), rand_rat(rng, Rat(1)),
                          rand_rat(rng, Rat(1))};
                    if (sup_norm(r) != 0) return r;
                }
            };
            Vec r_over = rand_dir(), r_under = rand_dir();

            std::vector<FramedCurve> fcs;
            for (int id : ids) {
                FramedCurve fc;
                fc.curve = id;
                for (size_t s = 0; s < locus.curves[id].segs.size(); ++s)
                    fc.samples.push_back({(int)s, Rat(0), r_over, r_under});
                fcs.push_back(std::move(fc));
            }

            // Circle index i <-> (curve ids[i/2], branch over = i%2==0).
            const int m = (int)ids.size();
            auto base_circle = [&](int i) {
                return framed_domain_circle(link, locus.curves[ids[i / 2]],
                                            fcs[i / 2], i % 2 == 0, Rat(0));
            };
            auto pushed_circle = [&](int i, const Rat& e) {
                return framed_domain_circle(link, locus.curves[ids[i / 2]],
                                            fcs[i / 2], i % 2 == 0, e);
            };

            Rat minlen = -1;
            std::vector<Chain> base;
            for (int i = 0; i < 2 * m; ++i) {
                base.push_back(base_circle(i));
                for (const auto& cs : base.back().simps) {
                    Rat len = sup_norm(sub(cs.s.v[1], cs.s.v[0]));
                    if (minlen < 0 || len < minlen) minlen = len;
                }
            }
            Rat eps = minlen / 1024;
            for (int a = 0; a < attempt; ++a) eps /= 4;

            std::vector<std::vector<Int>> cross(2 * m,
                                                std::vector<Int>(2 * m, 0));
            for (int i = 0; i < 2 * m; ++i)
                for (int j = i + 1; j < 2 * m; ++j) {
                    cross[i][j] = linking_number(base[i], base[j], seed + 3);
                    cross[j][i] = cross[i][j];
                }

            auto defect = [&](int i, const Rat& e) {
                Int s = linking_number(base[i], pushed_circle(i, e), seed + 5);
                for (int j = 0; j < 2 * m; ++j)
                    if (j != i) s += cross[i][j];
                return s;
            };

            for (int i = 0; i < 2 * m; ++i) {
                Int s = defect(i, eps);
                if (s == 0) continue;
                // Measure the sign of one full twist, then apply the batch.
                FramedCurve probe = fcs[i / 2];
                insert_twists(link, locus.curves[ids[i / 2]], probe, 1,
                              i % 2 == 0);
                Int before =
                    linking_number(base[i], framed_domain_circle(
                                                link, locus.curves[ids[i / 2]],
                                                probe, i % 2 == 0, eps),
                                   seed + 5);
                Int d = before - (s - [&] {
                            Int c = 0;
                            for (int j = 0; j < 2 * m; ++j)
                                if (j != i) c += cross[i][j];
                            return c;
                        }());
                if (d != 1 && d != -1)
                    throw Error(ErrorCode::ConsistencyFailure,
                                "zero_framing: one twist changed the "
                                "self-linking by " + d.str());
                Int n = -s * d; // d is +-1
                insert_twists(link, locus.curves[ids[i / 2]], fcs[i / 2],
                              (int)n.convert_to<long>(), i % 2 == 0);
            }

            // The field must be nowhere tangent to the curve, including on
            // every interpolated arc; a tangency would make the small-scale
            // framing class differ from the one certified below.
            for (size_t f = 0; f < fcs.size(); ++f) {
                const LocusCurve& cu = locus.curves[ids[f]];
                const auto& ss = fcs[f].samples;
                for (size_t i = 0; i < ss.size(); ++i) {
                    const FrameSample& a = ss[i];
                    const FrameSample& b = ss[(i + 1) % ss.size()];
                    for (bool over : {true, false}) {
                        Vec e = sub(branch_point(link, cu, a.seg, 1, over),
                                    branch_point(link, cu, a.seg, 0, over));
                        if (!arc_avoids_axis(over ? a.v_over : a.v_under,
                                             over ? b.v_over : b.v_under, e))
                            throw Error(ErrorCode::ConsistencyFailure,
                                        "zero_framing: field arc tangent to "
                                        "the curve");
                    }
                }
            }

            // Full re-verification at eps and eps/2.
            for (int i = 0; i < 2 * m; ++i) {
                base[i] = base_circle(i);
                if (defect(i, eps) != 0 || defect(i, eps / 2) != 0)
                    throw Error(ErrorCode::ConsistencyFailure,
                                "zero_framing: normalization failed to land "
                                "on zero");
            }
            out.eps = eps;
            out.curves = std::move(fcs);
            return out;
        } catch (const Error& e) {
            if (e.code == ErrorCode::CyclesIntersect ||
                e.code == ErrorCode::NonGenericApex ||
                e.code == ErrorCode::NonGenericIntersection ||
                e.code == ErrorCode::ConsistencyFailure) {
                last_problem = e.what();
                continue;
            }
            throw;
        }
    }
    throw Error(ErrorCode::PushOffCollision,
                "zero_framing: no collision-free framing found (" +
                    last_problem + ")");
}

Chain projected_image_cycle(const Component& comp, int attempt) {
    Chain out;
    out.dim = 3;
    Rat radius = 1;
    for (size_t t = 0; t < comp.cx.tets.size(); ++t) {
        Simplex P = comp.projected_simplex((int)t);
        for (const auto& p : P.v) radius = rmax(radius, sup_norm(p));
        out.simps.push_back({std::move(P), comp.cx.orient[t]});
    }
    if (!comp.standard) return out; // spherical: closed already
    // Long component: the listed tets triangulate the image over a finite
    // box; the rest of the manifold is the standard plane. Close the chain
    // into a compact stand-in for the one-point compactification by coning
    // its boundary (which lies on the rim of the standard plane) to an apex
    // far off that plane. The cap stays clear of everything of bounded size:
    // at bounded heights its simplices hug the rim triangles, so the linking
    // numbers computed against this cycle see exactly the compactified image.
    Chain bd = chain_boundary(out);
    if (bd.simps.empty()) return out;
    const auto& st = *comp.standard;
    // Apex direction: a coordinate direction off the projected plane span.
    Mat span(4, Vec(5, Rat(0)));
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 3; ++c) span[c][r] = st.lin[r][c];
    int dir = -1;
    for (int r = 4; r >= 0 && dir < 0; --r) {
        for (auto& x : span[3]) x = 0;
        span[3][r] = 1;
        if (rank(span) == 4) dir = r;
    }
    if (dir < 0)
        throw Error(ErrorCode::ConsistencyFailure,
                    "projected_image_cycle: degenerate standard plane");
    Rat m = radius * Rat(Int(1) << (20 + std::min(attempt, 40)));
    Pt apex(5, Rat(0));
    for (int r = 0; r < 5; ++r) apex[r] = st.off[r];
    apex[dir] -= m;
    Chain cap = cone(bd, apex);
    for (auto& cs : cap.simps) out.simps.push_back({cs.s, -cs.sign});
    return out;
}

namespace {

// Image of a domain vector under the projected differential on one tet.
Vec projected_differential(const Component& comp, int tet, const Vec& v) {
    Simplex D = comp.domain_simplex(tet);
    Mat A(3, std::vector<Rat>(3));
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) A[r][k] = D.v[k + 1][r] - D.v[0][r];
    auto sol = solve_affine(A, v);
    if (!sol)
        throw Error(ErrorCode::ConsistencyFailure,
                    "framing: degenerate domain tet");
    Simplex P = comp.projected_simplex(tet);
    Vec w(5, Rat(0));
    for (int k = 0; k < 3; ++k)
        for (int r = 0; r < 5; ++r)
            w[r] += sol->particular[k] * (P.v[k + 1][r] - P.v[0][r]);
    return w;
}

} // namespace

Int ekholm_E(const SimplicialLink& link, const DoubleLocus& locus, int comp,
             uint64_t seed) {
    Framing fr = zero_framing(link, locus, comp, seed);
    if (fr.curves.empty()) return 0;

    std::string last_problem = "no attempt";
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            Chain image = projected_image_cycle(link.comps[comp], attempt);
            Rat minlen = -1;
            std::vector<std::vector<Pt>> bases;
            std::vector<std::vector<Vec>> shifts;
            for (const auto& fc : fr.curves) {
                const LocusCurve& curve = locus.curves[fc.curve];
                std::vector<Pt> b;
                std::vector<Vec> w;
                for (const auto& s : fc.samples) {
                    b.push_back(image_point(curve, s.seg, s.t));
                    Vec wo = projected_differential(
                        link.comps[comp], curve.segs[s.seg].over0.tet,
                        s.v_over);
                    Vec wu = projected_differential(
                        link.comps[comp], curve.segs[s.seg].under0.tet,
                        s.v_under);
                    Vec ww = add(wo, wu);
                    // Normalise so every sample moves by exactly eps in the
                    // sup norm; otherwise thin tets can blow the shift up
                    // past nearby sheets.
                    Rat m = sup_norm(ww);
                    if (m == 0)
                        throw Error(ErrorCode::ConsistencyFailure,
                                    "ekholm_E: vanishing push-off direction");
                    for (auto& x : ww) x /= m;
                    w.push_back(std::move(ww));
                }
                for (size_t i = 0; i < b.size(); ++i) {
                    Rat len = sup_norm(sub(b[(i + 1) % b.size()], b[i]));
                    if (len != 0 && (minlen < 0 || len < minlen)) minlen = len;
                }
                bases.push_back(std::move(b));
                shifts.push_back(std::move(w));
            }
            Rat eps = minlen / 1024;
            for (int a = 0; a < attempt; ++a) eps /= 4;

            auto shifted = [&](const Rat& e) {
                Chain g;
                g.dim = 1;
                for (size_t c = 0; c < bases.size(); ++c) {
                    std::vector<Pt> pts;
                    for (size_t i = 0; i < bases[c].size(); ++i) {
                        Pt p = bases[c][i];
                        for (int r = 0; r < 5; ++r)
                            p[r] += e * shifts[c][i][r];
                        pts.push_back(std::move(p));
                    }
                    for (size_t i = 0; i < pts.size(); ++i) {
                        const Pt& a = pts[i];
                        const Pt& b = pts[(i + 1) % pts.size()];
                        if (a == b) continue;
                        Simplex s;
                        s.v.push_back(a);
                        s.v.push_back(b);
                        g.simps.push_back({std::move(s), 1});
                    }
                }
                return g;
            };
            Int e1 = linking_number(shifted(eps), image, seed + 11);
            Int e2 = linking_number(shifted(eps / 2), image, seed + 13);
            if (e1 != e2)
                throw Error(ErrorCode::ConsistencyFailure,
                            "ekholm_E: value depends on the push-off scale");
            return e1;
        } catch (const Error& e) {
            if (e.code == ErrorCode::CyclesIntersect ||
                e.code == ErrorCode::NonGenericApex ||
                e.code == ErrorCode::NonGenericIntersection ||
                e.code == ErrorCode::ConsistencyFailure) {
                last_problem = e.what();
                continue;
            }
            throw;
        }
    }
    throw Error(ErrorCode::PushOffCollision,
                "ekholm_E: no collision-free image push-off found (" +
                    last_problem + ")");
}

} // namespace hdl
