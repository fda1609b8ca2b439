#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace hdl;
using hdl::testing::pentachoron_link;

TEST_CASE("pentachoron boundary validates") {
    auto link = pentachoron_link();
    auto rep = validate(link);
    for (const auto& p : rep.problems) MESSAGE(p);
    CHECK(rep.ok);
}

TEST_CASE("orientation incoherence is detected") {
    auto link = pentachoron_link();
    link.comps[0].cx.orient[2] = -link.comps[0].cx.orient[2];
    CHECK_FALSE(validate(link).ok);
}

TEST_CASE("vertex swap flips induced orientation and is detected") {
    auto link = pentachoron_link();
    std::swap(link.comps[0].cx.tets[1][0], link.comps[0].cx.tets[1][1]);
    CHECK_FALSE(validate(link).ok);
    // Compensating the swap with a sign flip restores coherence.
    link.comps[0].cx.orient[1] = -link.comps[0].cx.orient[1];
    CHECK(validate(link).ok);
}

TEST_CASE("repeated vertex in a tet is detected") {
    auto link = pentachoron_link();
    link.comps[0].cx.tets[0][1] = link.comps[0].cx.tets[0][0];
    CHECK_FALSE(validate(link).ok);
}

TEST_CASE("two far-apart components validate; overlapping ones do not") {
    auto link = pentachoron_link();
    auto far_comp = link.comps[0];
    for (auto& p : far_comp.embed) p[0] += 100;
    link.comps.push_back(far_comp);
    CHECK(validate(link).ok);

    // A small translation inside the 4-dim affine hull of the first copy
    // makes the two 3-sphere images genuinely cross.
    auto clash = pentachoron_link();
    auto near_comp = clash.comps[0];
    Vec shift = sub(clash.comps[0].embed[1], clash.comps[0].embed[0]);
    for (auto& p : near_comp.embed)
        for (int r = 0; r < 6; ++r) p[r] += shift[r] / 10;
    clash.comps.push_back(near_comp);
    CHECK_FALSE(validate(clash).ok);
}

TEST_CASE("refine_once: 8x tets, midpoint vertices, still valid") {
    auto link = pentachoron_link();
    auto fine = refine_once(link);
    const auto& c0 = link.comps[0];
    const auto& c1 = fine.comps[0];
    CHECK(c1.cx.tets.size() == 8 * c0.cx.tets.size());
    // 5 original vertices + one midpoint per edge of the complete graph K5.
    CHECK(c1.cx.vertex_count == 5 + 10);
    for (int v = 0; v < c0.cx.vertex_count; ++v) {
        CHECK(c1.domain[v] == c0.domain[v]);
        CHECK(c1.embed[v] == c0.embed[v]);
    }
    auto rep = validate(fine);
    for (const auto& p : rep.problems) MESSAGE(p);
    CHECK(rep.ok);
}

TEST_CASE("refine: all embedded edges end below the target length") {
    auto link = pentachoron_link();
    Rat target(1, 2);
    auto fine = refine(link, target);
    Rat longest = 0;
    for (const auto& comp : fine.comps)
        for (const auto& tet : comp.cx.tets)
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    Vec d = sub(comp.embed[tet[i]], comp.embed[tet[j]]);
                    for (const auto& c : d) longest = rmax(longest, rabs(c));
                }
    CHECK(longest < target);
    CHECK(validate(fine).ok);
}

TEST_CASE("refine with a huge target is the identity") {
    auto link = pentachoron_link();
    auto same = refine(link, Rat(1000));
    CHECK(same.comps[0].cx.tets.size() == link.comps[0].cx.tets.size());
}

TEST_CASE("perturb: deterministic, bounded, isotopy-certified") {
    auto link = pentachoron_link();
    Rat mag(1, 50);
    auto p1 = perturb(link, mag, 7);
    auto p2 = perturb(link, mag, 7);
    auto p3 = perturb(link, mag, 8);
    CHECK(p1.comps[0].embed == p2.comps[0].embed);
    CHECK(p1.comps[0].embed != p3.comps[0].embed);
    CHECK(p1.comps[0].domain == link.comps[0].domain); // domain untouched
    bool any_moved = false;
    for (int v = 0; v < link.comps[0].cx.vertex_count; ++v)
        for (int r = 0; r < 6; ++r) {
            Rat d = rabs(p1.comps[0].embed[v][r] - link.comps[0].embed[v][r]);
            CHECK(d <= mag);
            if (d != 0) any_moved = true;
        }
    CHECK(any_moved);
    CHECK(validate(p1).ok);
}

TEST_CASE("perturb with magnitude zero is the identity") {
    auto link = pentachoron_link();
    auto same = perturb(link, Rat(0), 3);
    CHECK(same.comps[0].embed == link.comps[0].embed);
}

TEST_CASE("oversized perturbation throws") {
    auto link = pentachoron_link();
    auto far_comp = link.comps[0];
    // Second copy separated by less than the perturbation magnitude: some seed
    // will collide; with a huge magnitude every seed collides immediately or
    // fails the certificate.
    for (auto& p : far_comp.embed) p[4] += 3;
    link.comps.push_back(far_comp);
    REQUIRE(validate(link).ok);
    CHECK_THROWS_AS((void)perturb(link, Rat(50), 1), Error);
}

TEST_CASE("mirror is an involution negating the last ambient coordinate") {
    auto link = pentachoron_link();
    auto m = mirror(link);
    for (int v = 0; v < link.comps[0].cx.vertex_count; ++v) {
        CHECK(m.comps[0].embed[v][5] == -link.comps[0].embed[v][5]);
        for (int r = 0; r < 5; ++r)
            CHECK(m.comps[0].embed[v][r] == link.comps[0].embed[v][r]);
    }
    auto mm = mirror(m);
    CHECK(mm.comps[0].embed == link.comps[0].embed);
    CHECK(validate(m).ok);
}

TEST_CASE("reverse_component flips every tet sign of one component") {
    auto link = pentachoron_link();
    auto far_comp = link.comps[0];
    for (auto& p : far_comp.embed) p[0] += 100;
    link.comps.push_back(far_comp);
    auto r = reverse_component(link, 1);
    CHECK(r.comps[0].cx.orient == link.comps[0].cx.orient);
    for (size_t t = 0; t < link.comps[1].cx.orient.size(); ++t)
        CHECK(r.comps[1].cx.orient[t] == -link.comps[1].cx.orient[t]);
    CHECK(validate(r).ok);
    CHECK_THROWS_AS((void)reverse_component(link, 5), Error);
}

TEST_CASE("adjacent_pair_clean: face-sharing tets") {
    // Shared face z=0 triangle; apexes on opposite sides -> clean.
    Simplex S{{{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)},
               {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}}};
    Simplex T{{{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)},
               {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(-1)}}};
    std::vector<std::pair<int, int>> shared = {{0, 0}, {1, 1}, {2, 2}};
    CHECK(adjacent_pair_clean(S, T, shared));
    // Apexes on the same side -> the interiors overlap.
    Simplex U{{{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)},
               {Rat(0), Rat(1), Rat(0)}, {Rat(1, 4), Rat(1, 4), Rat(1, 2)}}};
    CHECK_FALSE(adjacent_pair_clean(S, U, shared));
}

TEST_CASE("adjacent_pair_clean: single shared vertex") {
    // Two tets meeting only at the origin, pointing into opposite orthants.
    Simplex S{{{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)},
               {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}}};
    Simplex T{{{Rat(0), Rat(0), Rat(0)}, {Rat(-1), Rat(0), Rat(0)},
               {Rat(0), Rat(-1), Rat(0)}, {Rat(0), Rat(0), Rat(-1)}}};
    std::vector<std::pair<int, int>> shared = {{0, 0}};
    CHECK(adjacent_pair_clean(S, T, shared));
    // A tet poking back into S through the shared vertex -> not clean.
    Simplex V{{{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(1, 2), Rat(1, 2)},
               {Rat(1, 2), Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2), Rat(1)}}};
    CHECK_FALSE(adjacent_pair_clean(S, V, shared));
}
