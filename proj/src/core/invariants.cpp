#include "invariants.hpp"

#include <algorithm>
#include <set>

namespace hdl {

namespace {

enum class Branch { Plus, Minus, Both, BothAdjusted };

// Union of the preimage circles, in the domain of component `a`, of all
// double curves between components a and b. A curve contributes its over
// branch when a is the over component (the + label) and its under branch
// when a is the under component (the - label); for a == b both branches of
// every self curve contribute.
Chain pair_preimage(const SimplicialLink& link, const DoubleLocus& locus,
                    int a, int b, Branch br) {
    Chain out;
    out.dim = 1;
    auto take = [&](const LocusCurve& c, bool over, bool plus_label) {
        if (br == Branch::Plus && !plus_label) return;
        if (br == Branch::Minus && plus_label) return;
        Chain piece = preimage_chain(link, c, over, true);
        int sign = (br == Branch::BothAdjusted && !plus_label) ? -1 : 1;
        for (auto& cs : piece.simps) {
            cs.sign *= sign;
            out.simps.push_back(std::move(cs));
        }
    };
    for (const auto& c : locus.curves) {
        if (c.comp_over == a && c.comp_under == b) take(c, true, true);
        if (c.comp_under == a && c.comp_over == b) take(c, false, false);
    }
    return out;
}

// Image 1-cycle of all double curves between components a and b in R^5.
Chain pair_image(const DoubleLocus& locus, int a, int b) {
    Chain out;
    out.dim = 1;
    for (const auto& c : locus.curves) {
        if (!((c.comp_over == a && c.comp_under == b) ||
              (c.comp_over == b && c.comp_under == a)))
            continue;
        Chain piece = image_chain(c);
        for (auto& cs : piece.simps) out.simps.push_back(std::move(cs));
    }
    return out;
}

// Linking number inside the domain of one component: the boundary 3-sphere
// of the domain polytope for spherical components, plain R^3 for long ones.
Int lk_dom(const SimplicialLink& link, int comp, const Chain& A,
           const Chain& B, uint64_t seed) {
    if (A.simps.empty() || B.simps.empty()) return 0;
    if (link.comps[comp].domain[0].size() == 3)
        return linking_number(A, B, seed);
    return linking_in_sphere(link.comps[comp], A, B, seed);
}

Rat half(const Int& v) { return Rat(v) / 2; }

void require_integer(const Rat& v, const std::string& what) {
    if (denominator(v) != 1)
        throw Error(ErrorCode::NonInteger,
                    what + " is not an integer: " + v.str());
}

Rat sixth_at(const Component& comp, const SheetPoint& sp) {
    Simplex s = comp.embed_simplex(sp.tet);
    Rat v = 0;
    for (int k = 0; k < 4; ++k) v += sp.bary[k] * s.v[k][5];
    return v;
}

} // namespace

InvariantReport invariant_V(const SimplicialLink& link, uint64_t seed) {
    if (link.comps.size() != 3)
        throw Error(ErrorCode::InvalidInput,
                    "invariant_V: needs a 3-component link");
    SimplicialLink g = resolve_to_generic(link, seed);
    DoubleLocus locus = double_locus(g);

    InvariantReport rep;
    rep.which = "V";
    const char* nm[3] = {"X", "Y", "Z"};
    // The three pairs in cyclic order: (X;Y,Z), (Y;Z,X), (Z;X,Y).
    Int e[6];
    for (int i = 0; i < 3; ++i) {
        int a = i, b = (i + 1) % 3, c = (i + 2) % 3;
        e[i] = lk_dom(g, a, pair_preimage(g, locus, a, b, Branch::Both),
                      pair_preimage(g, locus, a, c, Branch::Both), seed + i);
        rep.intermediates.push_back(
            {std::string("lk_") + nm[a] + "(L_" + nm[a] + nm[b] + ", L_" +
                 nm[a] + nm[c] + ")",
             Rat(e[i])});
        // Ambient form: lk_R5(c, a cap b).
        e[3 + i] = linking_number(projected_image_cycle(g.comps[c]),
                                  pair_image(locus, a, b), seed + 3 + i);
        rep.intermediates.push_back(
            {std::string("lk_R5(") + nm[c] + ", " + nm[a] + " cap " + nm[b] +
                 ")",
             Rat(e[3 + i])});
    }
    bool six_agree = true;
    for (int i = 1; i < 6; ++i) six_agree = six_agree && e[i] == e[0];
    rep.consistency.push_back({"six expressions of E(f) agree", six_agree});
    if (!six_agree)
        throw Error(ErrorCode::ConsistencyFailure,
                    "invariant_V: the six expressions of E(f) disagree");
    Int E = e[0];
    rep.intermediates.push_back({"E(f)", Rat(E)});

    Int cross_sum = 0;
    for (int i = 0; i < 3; ++i) {
        int a = i, b = (i + 1) % 3, c = (i + 2) % 3;
        // lk_a(L+_{ab}, L-_{ac}) and lk_a(L-_{ab}, L+_{ac}) with the pair
        // (b, c) ordered as in the defining formula: (X;Y,Z) uses (XY, XZ),
        // (Y;Z,X) uses (YZ, YX), (Z;X,Y) uses (ZX, ZY).
        Int t1 = lk_dom(g, a, pair_preimage(g, locus, a, b, Branch::Plus),
                        pair_preimage(g, locus, a, c, Branch::Minus),
                        seed + 11 + i);
        Int t2 = lk_dom(g, a, pair_preimage(g, locus, a, b, Branch::Minus),
                        pair_preimage(g, locus, a, c, Branch::Plus),
                        seed + 17 + i);
        rep.intermediates.push_back(
            {std::string("lk_") + nm[a] + "(L+_" + nm[a] + nm[b] + ", L-_" +
                 nm[a] + nm[c] + ")",
             Rat(t1)});
        rep.intermediates.push_back(
            {std::string("lk_") + nm[a] + "(L-_" + nm[a] + nm[b] + ", L+_" +
                 nm[a] + nm[c] + ")",
             Rat(t2)});
        cross_sum += t1 + t2;
    }
    Rat V = half(E) - half(cross_sum);
    require_integer(V, "invariant_V: value");
    rep.consistency.push_back({"value is an integer", true});
    rep.values.push_back(V);
    return rep;
}

InvariantReport invariant_W(const SimplicialLink& link, uint64_t seed) {
    if (link.comps.size() != 2)
        throw Error(ErrorCode::InvalidInput,
                    "invariant_W: needs a 2-component link");
    SimplicialLink g = resolve_to_generic(link, seed);
    DoubleLocus locus = double_locus(g);

    InvariantReport rep;
    rep.which = "W";
    const char* nm[2] = {"X", "Y"};
    Rat w[2];
    for (int x = 0; x < 2; ++x) {
        int y = 1 - x;
        // Adjusted orientation: L = L+ u -L-.
        Int self = lk_dom(g, x,
                          pair_preimage(g, locus, x, x, Branch::BothAdjusted),
                          pair_preimage(g, locus, x, y, Branch::BothAdjusted),
                          seed + 29 + x);
        Chain minus_adj =
            negate(pair_preimage(g, locus, y, x, Branch::Minus));
        Int mixed = lk_dom(g, y, pair_preimage(g, locus, y, x, Branch::Plus),
                           minus_adj, seed + 31 + x);
        rep.intermediates.push_back(
            {std::string("lk_") + nm[x] + "(L_" + nm[x] + nm[x] + ", L_" +
                 nm[x] + nm[y] + ") [adjusted]",
             Rat(self)});
        rep.intermediates.push_back(
            {std::string("lk_") + nm[y] + "(L+_" + nm[y] + nm[x] + ", L-_" +
                 nm[y] + nm[x] + ") [adjusted]",
             Rat(mixed)});
        w[x] = half(self) - Rat(mixed);

        // Immersion-side cross checks in the unadjusted orientation.
        Rat ex_dom =
            half(lk_dom(g, x, pair_preimage(g, locus, x, x, Branch::Both),
                        pair_preimage(g, locus, x, y, Branch::Both),
                        seed + 37 + x));
        Int ex_amb = linking_number(pair_image(locus, x, x),
                                    projected_image_cycle(g.comps[y]),
                                    seed + 41 + x);
        rep.intermediates.push_back(
            {std::string("E_") + nm[x] + "(f) = lk_" + nm[x] + "(L_" + nm[x] +
                 nm[x] + ", L_" + nm[x] + nm[y] + ")/2",
             ex_dom});
        rep.intermediates.push_back(
            {std::string("lk_R5(") + nm[x] + " cap " + nm[x] + ", " + nm[y] +
                 ")",
             Rat(ex_amb)});
        bool lemma_ok = ex_dom == Rat(ex_amb);
        rep.consistency.push_back(
            {std::string("E_") + nm[x] +
                 ": domain and ambient expressions agree",
             lemma_ok});
        if (!lemma_ok)
            throw Error(ErrorCode::ConsistencyFailure,
                        "invariant_W: the two expressions of E_" +
                            std::string(nm[x]) + " disagree");

        // Immersion form of the formula, term by term (unadjusted lk's):
        // W = E_x - lk(L+_xx, L-_xy) - lk(L-_xx, L+_xy) + lk(L+_yx, L-_yx).
        Int u1 = lk_dom(g, x, pair_preimage(g, locus, x, x, Branch::Plus),
                        pair_preimage(g, locus, x, y, Branch::Minus),
                        seed + 43 + x);
        Int u2 = lk_dom(g, x, pair_preimage(g, locus, x, x, Branch::Minus),
                        pair_preimage(g, locus, x, y, Branch::Plus),
                        seed + 47 + x);
        Int u3 = lk_dom(g, y, pair_preimage(g, locus, y, x, Branch::Plus),
                        pair_preimage(g, locus, y, x, Branch::Minus),
                        seed + 53 + x);
        bool recomposed = w[x] == ex_dom - Rat(u1) - Rat(u2) + Rat(u3);
        rep.consistency.push_back(
            {std::string("W") + std::to_string(x + 1) +
                 ": immersion form agrees",
             recomposed});
        if (!recomposed)
            throw Error(ErrorCode::ConsistencyFailure,
                        "invariant_W: immersion-form recomposition failed");
    }
    require_integer(w[0], "invariant_W: W1");
    require_integer(w[1], "invariant_W: W2");
    Rat sum = w[0] + w[1];
    if (denominator(sum) != 1 || numerator(sum) % 2 != 0)
        throw Error(ErrorCode::LatticeViolation,
                    "invariant_W: values (" + w[0].str() + ", " + w[1].str() +
                        ") leave the even-sum lattice");
    rep.consistency.push_back({"lattice: integers with even sum", true});
    rep.values.push_back(w[0]);
    rep.values.push_back(w[1]);
    return rep;
}

InvariantReport invariant_H(const SimplicialLink& knot, const Rat& smale_term,
                            uint64_t seed) {
    if (knot.comps.size() != 1)
        throw Error(ErrorCode::InvalidInput, "invariant_H: needs a knot");
    if (knot.kind != LinkKind::long_knot)
        throw Error(ErrorCode::InvalidInput,
                    "invariant_H: needs a long knot (puncture spherical "
                    "inputs first)");
    SimplicialLink g = resolve_to_generic(knot, seed);
    DoubleLocus locus = double_locus(g);

    InvariantReport rep;
    rep.which = "H";
    Int lk = lk_dom(g, 0, pair_preimage(g, locus, 0, 0, Branch::Plus),
                    pair_preimage(g, locus, 0, 0, Branch::Minus), seed + 61);
    Int E = ekholm_E(g, locus, 0, seed);
    rep.intermediates.push_back({"lk(L+, L-)", Rat(lk)});
    rep.intermediates.push_back({"E(f)", Rat(E)});
    rep.intermediates.push_back({"Omega", smale_term});
    rep.smale_term = smale_term;
    rep.smale_note = knot.smale_term && *knot.smale_term == smale_term
                         ? "matches the value certified by the generator"
                         : "supplied by the caller";
    Rat H = half(lk) + Rat(E) / 6 + smale_term / 3;
    require_integer(H, "invariant_H: value");
    rep.consistency.push_back({"value is an integer", true});
    rep.values.push_back(H);
    return rep;
}

SimplicialLink crossing_change(const SimplicialLink& knot,
                               const std::vector<int>& selector) {
    SimplicialLink cur = knot;
    for (int round = 0;; ++round) {
        DoubleLocus locus = double_locus(cur);
        std::set<int> sel(selector.begin(), selector.end());
        if (sel.size() != selector.size() || selector.empty() ||
            *sel.begin() < 0 || *sel.rbegin() >= (int)locus.curves.size())
            throw Error(ErrorCode::SelectorInvalid,
                        "crossing_change: selector does not name a subset of "
                        "the image double curves");

        // Core: the tets carrying the under-sheet preimages of the selected
        // curves; the bump is h on every vertex of a core tet and falls to
        // zero across the surrounding ring of tets.
        std::vector<std::set<int>> core_tets(cur.comps.size());
        Rat max_gap = 0;
        for (int id : sel) {
            const LocusCurve& c = locus.curves[id];
            const Component& over_c = cur.comps[c.comp_over];
            const Component& under_c = cur.comps[c.comp_under];
            for (const auto& s : c.segs) {
                core_tets[c.comp_under].insert(s.under0.tet);
                core_tets[c.comp_under].insert(s.under1.tet);
                max_gap = rmax(max_gap, sixth_at(over_c, s.over0) -
                                            sixth_at(under_c, s.under0));
                max_gap = rmax(max_gap, sixth_at(over_c, s.over1) -
                                            sixth_at(under_c, s.under1));
            }
        }

        std::vector<std::set<int>> core_verts(cur.comps.size());
        for (size_t ci = 0; ci < cur.comps.size(); ++ci)
            for (int t : core_tets[ci])
                for (int v : cur.comps[ci].cx.tets[t]) core_verts[ci].insert(v);

        // Support = every tet touching a core vertex. All other locus
        // branches must stay clear of it; the bump must also stay strictly
        // inside the standard radius of a long component.
        auto in_support = [&](int ci, int tet) {
            for (int v : cur.comps[ci].cx.tets[tet])
                if (core_verts[ci].count(v)) return true;
            return false;
        };
        bool clear = true;
        for (size_t id = 0; id < locus.curves.size() && clear; ++id) {
            const LocusCurve& c = locus.curves[id];
            bool selected = sel.count((int)id) > 0;
            for (const auto& s : c.segs) {
                if (!selected && (in_support(c.comp_under, s.under0.tet) ||
                                  in_support(c.comp_under, s.under1.tet))) {
                    clear = false;
                    break;
                }
                if (in_support(c.comp_over, s.over0.tet) ||
                    in_support(c.comp_over, s.over1.tet)) {
                    clear = false;
                    break;
                }
            }
        }
        for (size_t ci = 0; ci < cur.comps.size() && clear; ++ci) {
            const auto& comp = cur.comps[ci];
            if (!comp.standard) continue;
            for (int v : core_verts[ci]) {
                Rat r = 0;
                for (const auto& c : comp.domain[v]) r = rmax(r, rabs(c));
                if (r >= comp.standard->interior_radius) {
                    clear = false;
                    break;
                }
            }
        }
        if (!clear) {
            if (round >= 3)
                throw Error(ErrorCode::NeighborhoodOverlap,
                            "crossing_change: no clear tubular neighborhood "
                            "of the under sheet after refinement");
            cur = refine_once(cur);
            continue;
        }

        Rat h = 2 * max_gap;
        SimplicialLink out = cur;
        for (size_t ci = 0; ci < out.comps.size(); ++ci)
            for (int v : core_verts[ci]) out.comps[ci].embed[v][5] += h;
        auto rep = validate(out);
        if (!rep.ok)
            throw Error(ErrorCode::ConsistencyFailure,
                        "crossing_change: bump produced an invalid link: " +
                            rep.problems.front());
        double_locus(out); // must stay generic; throws otherwise
        return out;
    }
}

SimplicialLink permute_components(const SimplicialLink& link,
                                  const std::vector<int>& perm) {
    if (perm.size() != link.comps.size())
        throw Error(ErrorCode::InvalidInput, "permute_components: bad size");
    SimplicialLink out = link;
    for (size_t i = 0; i < perm.size(); ++i) out.comps[i] = link.comps[perm[i]];
    return out;
}

SymmetryReport symmetry_suite(const SimplicialLink& link, uint64_t seed) {
    SymmetryReport rep;
    rep.base = invariant_V(link, seed).values[0];
    auto push = [&](const std::string& name, const SimplicialLink& l,
                    const Rat& expected) {
        Rat v = invariant_V(l, seed).values[0];
        rep.entries.push_back({name, v, v == expected});
    };
    push("mirror", mirror(link), rep.base);
    for (int i = 0; i < 3; ++i)
        push("reverse component " + std::to_string(i),
             reverse_component(link, i), -rep.base);
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms)
        push("permutation (" + std::to_string(p[0]) + std::to_string(p[1]) +
                 std::to_string(p[2]) + ")",
             permute_components(link, {p[0], p[1], p[2]}), rep.base);
    return rep;
}

} // namespace hdl
