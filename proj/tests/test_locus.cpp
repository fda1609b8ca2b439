#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "core/generators.hpp"
#include "core/locus.hpp"
#include "helpers.hpp"

using namespace hdl;

namespace {

// Two product-of-squares 3-spheres whose projections to R^5 cross in closed
// curves. Component 0 sits in the coordinate 4-plane (u1,u2,u3,u4) lifted to
// u6 = delta; component 1 sits in (u1,u2,u3,u5), offset inside the common
// (u1,u2,u3) slice so that the two equator 2-spheres of the projections
// genuinely cross.
SimplicialLink two_sphere_fixture(const Rat& delta, const Vec& offset3) {
    SimplicialLink link;
    link.kind = LinkKind::spherical;

    Component A = product_square_boundary(Rat(2), Rat(2));
    Mat EA(6, std::vector<Rat>(4, Rat(0)));
    EA[0][0] = 1; EA[1][1] = 1; EA[2][2] = 1; EA[3][3] = 1;
    Vec offA(6, Rat(0));
    offA[5] = delta;
    embed_linear(A, EA, offA);
    link.comps.push_back(A);

    Component B = product_square_boundary(Rat(2), Rat(2));
    Mat EB(6, std::vector<Rat>(4, Rat(0)));
    EB[0][0] = 1; EB[1][1] = 1; EB[2][2] = 1; EB[4][3] = 1;
    Vec offB(6, Rat(0));
    for (int i = 0; i < 3; ++i) offB[i] = offset3[i];
    embed_linear(B, EB, offB);
    link.comps.push_back(B);
    return link;
}

size_t total_segments(const DoubleLocus& dl) {
    size_t n = 0;
    for (const auto& c : dl.curves) n += c.segs.size();
    return n;
}

} // namespace

TEST_CASE("crossing spheres: closed curves with the expected sheet labels") {
    auto link = two_sphere_fixture(Rat(1), {Rat(1, 2), Rat(1, 3), Rat(1, 4)});
    REQUIRE(validate(link).ok);
    auto dl = double_locus(link);
    REQUIRE(!dl.curves.empty());
    for (const auto& c : dl.curves) {
        CHECK(c.closed);
        CHECK(c.comp_over == 0);  // component 0 has the larger u6 everywhere
        CHECK(c.comp_under == 1);
        CHECK(c.segs.size() >= 3);
        for (const auto& s : c.segs) {
            CHECK(s.over0.comp == 0);
            CHECK(s.under0.comp == 1);
            // Curve pieces run head to tail and are nondegenerate.
            CHECK(s.im0 != s.im1);
        }
        for (size_t i = 0; i + 1 < c.segs.size(); ++i)
            CHECK(c.segs[i].im1 == c.segs[i + 1].im0);
        CHECK(c.segs.back().im1 == c.segs.front().im0);
    }
}

TEST_CASE("crossing spheres: flipping the height swaps over and under") {
    auto link = two_sphere_fixture(Rat(-1), {Rat(1, 2), Rat(1, 3), Rat(1, 4)});
    REQUIRE(validate(link).ok);
    auto dl = double_locus(link);
    REQUIRE(!dl.curves.empty());
    for (const auto& c : dl.curves) {
        CHECK(c.comp_over == 1);
        CHECK(c.comp_under == 0);
    }
}

TEST_CASE("image and preimage chains of every curve are cycles") {
    auto link = two_sphere_fixture(Rat(1), {Rat(1, 2), Rat(1, 3), Rat(1, 4)});
    auto dl = double_locus(link);
    REQUIRE(!dl.curves.empty());
    for (const auto& c : dl.curves) {
        CHECK(is_cycle(image_chain(c)));
        CHECK(is_cycle(preimage_chain(link, c, true, true)));
        CHECK(is_cycle(preimage_chain(link, c, true, false)));
        CHECK(is_cycle(preimage_chain(link, c, false, true)));
        CHECK(is_cycle(preimage_chain(link, c, false, false)));
    }
}

TEST_CASE("reversing a component reverses the locus curves") {
    auto link = two_sphere_fixture(Rat(1), {Rat(1, 2), Rat(1, 3), Rat(1, 4)});
    auto dl1 = double_locus(link);
    auto dl2 = double_locus(reverse_component(link, 0));
    CHECK(total_segments(dl1) == total_segments(dl2));
    std::set<std::pair<Pt, Pt>> fwd, rev;
    for (const auto& c : dl1.curves)
        for (const auto& s : c.segs) fwd.insert({s.im0, s.im1});
    for (const auto& c : dl2.curves)
        for (const auto& s : c.segs) rev.insert({s.im1, s.im0});
    CHECK(fwd == rev);
}

TEST_CASE("determinism: repeated extraction gives identical data") {
    auto link = two_sphere_fixture(Rat(1), {Rat(1, 2), Rat(1, 3), Rat(1, 4)});
    auto d1 = double_locus(link);
    auto d2 = double_locus(link);
    REQUIRE(d1.curves.size() == d2.curves.size());
    for (size_t i = 0; i < d1.curves.size(); ++i) {
        REQUIRE(d1.curves[i].segs.size() == d2.curves[i].segs.size());
        for (size_t j = 0; j < d1.curves[i].segs.size(); ++j) {
            CHECK(d1.curves[i].segs[j].im0 == d2.curves[i].segs[j].im0);
            CHECK(d1.curves[i].segs[j].im1 == d2.curves[i].segs[j].im1);
        }
    }
}

TEST_CASE("far-apart spheres have an empty locus") {
    auto link = two_sphere_fixture(Rat(1), {Rat(100), Rat(0), Rat(0)});
    REQUIRE(validate(link).ok);
    auto dl = double_locus(link);
    CHECK(dl.curves.empty());
    CHECK(check_generic(link).ok);
}

TEST_CASE("coinciding projections are rejected and resolved by perturbation") {
    // Component 1 is the exact u6-translate of component 0: the projections
    // coincide, which is as non-generic as it gets.
    SimplicialLink link;
    link.kind = LinkKind::spherical;
    for (int i = 0; i < 2; ++i) {
        Component c = product_square_boundary(Rat(2), Rat(2));
        Mat E(6, std::vector<Rat>(4, Rat(0)));
        E[0][0] = 1; E[1][1] = 1; E[2][2] = 1; E[3][3] = 1;
        Vec off(6, Rat(0));
        off[5] = Rat(i);
        embed_linear(c, E, off);
        link.comps.push_back(c);
    }
    REQUIRE(validate(link).ok);
    CHECK_THROWS_AS((void)double_locus(link), Error);
    CHECK_FALSE(check_generic(link).ok);

    auto fixed = resolve_to_generic(link, 7);
    CHECK(check_generic(fixed).ok);
    auto dl = double_locus(fixed);
    for (const auto& c : dl.curves) CHECK(c.closed);
    // Resolution is seed-deterministic.
    auto fixed2 = resolve_to_generic(link, 7);
    CHECK(fixed2.comps[0].embed == fixed.comps[0].embed);
    CHECK(fixed2.comps[1].embed == fixed.comps[1].embed);
}

TEST_CASE("a generic link is returned unchanged by resolve_to_generic") {
    auto link = two_sphere_fixture(Rat(1), {Rat(1, 2), Rat(1, 3), Rat(1, 4)});
    auto same = resolve_to_generic(link, 3);
    CHECK(same.comps[0].embed == link.comps[0].embed);
    CHECK(same.comps[1].embed == link.comps[1].embed);
}
