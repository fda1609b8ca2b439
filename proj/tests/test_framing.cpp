#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/framing.hpp"
#include "core/generators.hpp"
#include "helpers.hpp"

using namespace hdl;

namespace {

// A long unknot whose projection crosses itself: a "finger" of the standard
// 3-plane is folded over in the x direction and lifted in the dropped
// coordinate u6. The domain is the solid box [-2,4] x [-2,2]^2; everything
// at sup-norm >= 2 stays on the standard plane (x, y, z, 0, 0, 0). With
// r = |v|_inf, lambda = clamp(1 - r/2, 0, 1) and mu = -1, 1, 0 at
// r = 0, 1, >= 2, the block around the origin maps to
//   (x + 3*lambda, y, z, mu, y*lambda/2, 2*lambda),
// so its shadow in R^5 folds back over the flat region near (3, 0, 0) while
// u6 = 2*lambda keeps the embedding injective in R^6. Scaling the whole
// deformation back to zero is an ambient isotopy to the standard plane whose
// projection stays an immersion throughout, so the immersion is regularly
// homotopic to the flat plane: its invariants satisfy 3*lk(L+, L-) + E = 0
// (the unknot value of the combination with a trivial rotation term). The
// raw lattice fixture has flat sheet contacts, so callers resolve it to a
// generic projection first.
SimplicialLink finger_fixture() {
    Component c = solid_box_region({Rat(-2), Rat(-2), Rat(-2)},
                                   {Rat(4), Rat(2), Rat(2)}, Rat(1));
    for (const auto& v : c.domain) {
        Rat r = 0;
        for (const auto& x : v) r = rmax(r, rabs(x));
        Rat lam = 1 - r / 2;
        if (lam < 0) lam = 0;
        if (lam > 1) lam = 1;
        Rat mu = 0;
        if (r == 0) mu = -1;
        if (r == 1) mu = 1;
        c.embed.push_back({v[0] + 3 * lam, v[1], v[2], mu, v[1] * lam / 2,
                           2 * lam});
    }
    LongInfo st;
    st.lin = Mat(6, std::vector<Rat>(3, Rat(0)));
    st.lin[0][0] = st.lin[1][1] = st.lin[2][2] = 1;
    st.off = Vec(6, Rat(0));
    st.interior_radius = 2;
    c.standard = st;

    SimplicialLink link;
    link.kind = LinkKind::long_knot;
    link.comps.push_back(std::move(c));
    return link;
}

const SimplicialLink& resolved_finger() {
    static SimplicialLink link = resolve_to_generic(finger_fixture(), 3);
    return link;
}

const DoubleLocus& finger_locus() {
    static DoubleLocus dl = double_locus(resolved_finger());
    return dl;
}

SimplicialLink flat_fixture() {
    Component c = solid_box_region({Rat(-3), Rat(-3), Rat(-3)},
                                   {Rat(3), Rat(3), Rat(3)}, Rat(3));
    for (const auto& v : c.domain)
        c.embed.push_back({v[0], v[1], v[2], Rat(0), Rat(0), Rat(0)});
    LongInfo st;
    st.lin = Mat(6, std::vector<Rat>(3, Rat(0)));
    st.lin[0][0] = st.lin[1][1] = st.lin[2][2] = 1;
    st.off = Vec(6, Rat(0));
    st.interior_radius = 3;
    c.standard = st;

    SimplicialLink link;
    link.kind = LinkKind::long_knot;
    link.comps.push_back(std::move(c));
    return link;
}

} // namespace

TEST_CASE("finger fixture: closed self-intersection curves") {
    REQUIRE(validate(finger_fixture()).ok);
    const auto& link = resolved_finger();
    REQUIRE(validate(link).ok);
    const auto& dl = finger_locus();
    REQUIRE(!dl.curves.empty());
    for (const auto& c : dl.curves) {
        CHECK(c.closed);
        CHECK(c.comp_over == 0);
        CHECK(c.comp_under == 0);
        CHECK(c.segs.size() >= 3);
    }
}

TEST_CASE("finger fixture: over and under preimages are disjoint cycles") {
    const auto& link = resolved_finger();
    const auto& dl = finger_locus();
    Chain over, under;
    over.dim = under.dim = 1;
    for (const auto& c : dl.curves) {
        for (const auto& s : preimage_chain(link, c, true, true).simps)
            over.simps.push_back(s);
        for (const auto& s : preimage_chain(link, c, false, true).simps)
            under.simps.push_back(s);
    }
    CHECK(is_cycle(over));
    CHECK(is_cycle(under));
    REQUIRE(chains_disjoint(over, under));
    CHECK(linking_number(over, under, 1) == linking_number(over, under, 2));
}

TEST_CASE("zero framing: the framing equation holds at two scales") {
    const auto& link = resolved_finger();
    const auto& dl = finger_locus();
    Framing fr = zero_framing(link, dl, 0, 0);
    REQUIRE(!fr.curves.empty());
    REQUIRE(fr.eps > 0);

    // Re-verify lk(L_i, L~_i) + sum_{j != i} lk(L_i, L_j) = 0 independently.
    std::vector<Chain> bases;
    for (const auto& fc : fr.curves)
        for (bool over : {true, false})
            bases.push_back(framed_domain_circle(
                link, dl.curves[fc.curve], fc, over, Rat(0)));
    for (size_t ci = 0; ci < fr.curves.size(); ++ci) {
        const auto& fc = fr.curves[ci];
        for (bool over : {true, false}) {
            size_t i = 2 * ci + (over ? 0 : 1);
            Int cross = 0;
            for (size_t j = 0; j < bases.size(); ++j)
                if (j != i) cross += linking_number(bases[i], bases[j], 17);
            for (const Rat& e : {fr.eps, Rat(fr.eps / 2)}) {
                Chain pushed = framed_domain_circle(link, dl.curves[fc.curve],
                                                    fc, over, e);
                CHECK(linking_number(bases[i], pushed, 17) + cross == 0);
            }
        }
    }
}

TEST_CASE("insert_twists shifts the self-linking by one per twist") {
    const auto& link = resolved_finger();
    const auto& dl = finger_locus();
    Framing fr = zero_framing(link, dl, 0, 0);
    const auto& curve = dl.curves[fr.curves[0].curve];

    auto selflk = [&](const FramedCurve& fc) {
        Chain base = framed_domain_circle(link, curve, fc, true, Rat(0));
        Chain pushed = framed_domain_circle(link, curve, fc, true, fr.eps);
        return linking_number(base, pushed, 23);
    };
    Int s0 = selflk(fr.curves[0]);

    FramedCurve plus = fr.curves[0];
    insert_twists(link, curve, plus, 1, true);
    Int d = selflk(plus) - s0;
    CHECK((d == 1 || d == -1));

    FramedCurve triple = fr.curves[0];
    insert_twists(link, curve, triple, 3, true);
    CHECK(selflk(triple) - s0 == 3 * d);

    FramedCurve minus = fr.curves[0];
    insert_twists(link, curve, minus, -2, true);
    CHECK(selflk(minus) - s0 == -2 * d);

    // Inserting twists never moves the base circle.
    Chain b0 = framed_domain_circle(link, curve, fr.curves[0], true, Rat(0));
    Chain b3 = framed_domain_circle(link, curve, triple, true, Rat(0));
    CHECK(linking_number(b0, preimage_chain(link, curve, false, true), 5) ==
          linking_number(b3, preimage_chain(link, curve, false, true), 5));
}

TEST_CASE("finger fixture: the unknot relation 3 lk + E = 0 holds") {
    const auto& link = resolved_finger();
    const auto& dl = finger_locus();

    Chain over, under;
    over.dim = under.dim = 1;
    for (const auto& c : dl.curves) {
        for (const auto& s : preimage_chain(link, c, true, true).simps)
            over.simps.push_back(s);
        for (const auto& s : preimage_chain(link, c, false, true).simps)
            under.simps.push_back(s);
    }
    Int lk = linking_number(over, under, 9);

    Int e0 = ekholm_E(link, dl, 0, 0);
    CHECK(3 * lk + e0 == 0);
    CHECK(ekholm_E(link, dl, 0, 1) == e0);
    CHECK(ekholm_E(link, dl, 0, 2) == e0);
}

TEST_CASE("standard plane: empty locus, empty framing, E = 0") {
    auto link = flat_fixture();
    REQUIRE(validate(link).ok);
    auto dl = double_locus(link);
    CHECK(dl.curves.empty());
    Framing fr = zero_framing(link, dl, 0, 0);
    CHECK(fr.curves.empty());
    CHECK(ekholm_E(link, dl, 0, 0) == 0);
    Chain cyc = projected_image_cycle(link.comps[0]);
    CHECK(!cyc.simps.empty());
    CHECK(is_cycle(cyc));
}

TEST_CASE("projected image cycle of the finger is a compact 3-cycle") {
    const auto& link = resolved_finger();
    Chain cyc = projected_image_cycle(link.comps[0]);
    CHECK(!cyc.simps.empty());
    CHECK(is_cycle(cyc));
    // Every tet contributes, plus the compactifying cap over the rim.
    CHECK(cyc.simps.size() > link.comps[0].cx.tets.size());
}
