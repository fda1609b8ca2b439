#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/geom.hpp"
#include "core/lp.hpp"
#include "core/simplex_isect.hpp"

#include <algorithm>
#include <random>

using namespace hdl;

static Pt pt(std::initializer_list<long> xs) {
    Pt p;
    for (long x : xs) p.emplace_back(x);
    return p;
}

TEST_CASE("orientation_sign on standard examples") {
    CHECK(orientation_sign({pt({0, 0}), pt({1, 0}), pt({0, 1})}) == 1);
    CHECK(orientation_sign({pt({0, 0}), pt({0, 1}), pt({1, 0})}) == -1);
    CHECK(orientation_sign({pt({0, 0}), pt({1, 1}), pt({2, 2})}) == 0);
}

TEST_CASE("orientation_sign is alternating under vertex transpositions") {
    std::mt19937_64 rng(7);
    for (int d = 2; d <= 6; ++d) {
        std::vector<Pt> pts;
        int base;
        do {
            pts.clear();
            for (int i = 0; i <= d; ++i) {
                Pt p(d);
                for (int j = 0; j < d; ++j) p[j] = Rat((long)(rng() % 19) - 9, 1 + (long)(rng() % 3));
                pts.push_back(p);
            }
            base = orientation_sign(pts);
        } while (base == 0);
        for (int i = 0; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j) {
                auto q = pts;
                std::swap(q[i], q[j]);
                CHECK(orientation_sign(q) == -base);
            }
    }
}

TEST_CASE("orientation_sign invariant under integer rescaling of inputs") {
    std::vector<Pt> pts = {pt({0, 0, 0}), pt({2, 1, 0}), pt({1, 3, 1}), pt({0, 1, 4})};
    int s = orientation_sign(pts);
    for (auto& p : pts)
        for (auto& c : p) c *= 360360;
    CHECK(orientation_sign(pts) == s);
}

TEST_CASE("transverse_orientation basics and (inters_sym) swap rule") {
    OrientedFrame u{{pt({1, 0, 0})}}, v{{pt({0, 1, 0})}}, w{{pt({0, 0, 1})}};
    CHECK(transverse_orientation(u, v, w, 3) == 1);
    // Swapping the roles of the two sheets multiplies by (-1)^{(d-p)(d-q)}.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        // Two transverse 2-planes in R^4 meeting along a line: u 1 vector,
        // v and w 1 vector each; (d-p)(d-q) = (4-2)(4-2) = 4, sign preserved.
        auto rv = [&] {
            Vec x(4);
            for (auto& c : x) c = Rat((long)(rng() % 21) - 10);
            return x;
        };
        OrientedFrame uu{{rv()}}, vv{{rv()}}, ww{{rv(), rv()}};
        // frames: sheet s = (u,v) dim 2, sheet t = (u,w) dim 3 in R^4 =>
        // (d-p)(d-q) = (4-2)(4-3) = 2, still even; use generic check vs det.
        Mat m = {uu.vectors[0], vv.vectors[0], ww.vectors[0], ww.vectors[1]};
        if (det_sign(m) == 0) continue;
        int s1 = transverse_orientation(uu, vv, ww, 4);
        int s2 = transverse_orientation(uu, ww, vv, 4);
        int parity = ((4 - 2) * (4 - 3)) % 2 == 0 ? 1 : -1;
        CHECK(s2 == parity * s1);
        // Direct determinant oracle.
        CHECK(s1 == det_sign(m));
    }
    // Odd-parity swap: sheets of dims 1 and 2 in R^2... use (d,p,q)=(3,1,2):
    // (3-1)(3-2)=2 even; (d,p,q)=(2,1,1): (2-1)(2-1)=1 odd.
    OrientedFrame e1{{pt({1, 0})}}, e2{{pt({0, 1})}}, none{};
    int a = transverse_orientation(none, e1, e2, 2);
    int b = transverse_orientation(none, e2, e1, 2);
    CHECK(a == -b);
}

TEST_CASE("segment-segment intersection in R^2") {
    Simplex s{{pt({0, 0}), pt({2, 2})}};
    Simplex t{{pt({0, 2}), pt({2, 0})}};
    auto r = intersect_simplices(s, t);
    REQUIRE(r.kind == Isect::Kind::Point);
    Pt x = bary_point(s, r.a.lambda);
    CHECK(x == pt({1, 1}));
    CHECK(bary_point(t, r.a.mu) == x);
}

TEST_CASE("disjoint triangles in R^3 far apart") {
    Simplex s{{pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0})}};
    Simplex t{{pt({5, 5, 5}), pt({6, 5, 5}), pt({5, 6, 5})}};
    CHECK(intersect_simplices(s, t).kind == Isect::Kind::Empty);
}

TEST_CASE("two 3-simplices in R^5 meet in a segment; endpoints verified") {
    // Oracle: substitute returned barycentric coordinates back into both
    // simplices and check membership/equality exactly.
    Simplex s{{pt({0, 0, 0, 0, 0}), pt({4, 0, 0, 0, 0}), pt({0, 4, 0, 0, 0}),
               pt({0, 0, 4, 0, 0})}};
    Simplex t{{pt({1, 1, 1, -1, -1}), pt({1, 1, 1, 3, -1}), pt({1, 1, 1, -1, 3}),
               pt({1, 1, -3, 1, 1})}};
    auto r = intersect_simplices(s, t);
    REQUIRE(r.kind == Isect::Kind::Segment);
    for (const auto* bp : {&r.a, &r.b}) {
        Rat suml = 0, summ = 0;
        for (const auto& c : bp->lambda) { CHECK(c >= 0); suml += c; }
        for (const auto& c : bp->mu) { CHECK(c >= 0); summ += c; }
        CHECK(suml == 1);
        CHECK(summ == 1);
        CHECK(bary_point(s, bp->lambda) == bary_point(t, bp->mu));
    }
    CHECK(bary_point(s, r.a.lambda) != bary_point(s, r.b.lambda));
}

TEST_CASE("intersection result is symmetric as a point set") {
    Simplex s{{pt({0, 0, 0, 0, 0}), pt({4, 0, 0, 0, 0}), pt({0, 4, 0, 0, 0}),
               pt({0, 0, 4, 0, 0})}};
    Simplex t{{pt({1, 1, 1, -1, -1}), pt({1, 1, 1, 3, -1}), pt({1, 1, 1, -1, 3}),
               pt({1, 1, -3, 1, 1})}};
    auto r1 = intersect_simplices(s, t);
    auto r2 = intersect_simplices(t, s);
    REQUIRE(r1.kind == Isect::Kind::Segment);
    REQUIRE(r2.kind == Isect::Kind::Segment);
    std::vector<Pt> e1 = {bary_point(s, r1.a.lambda), bary_point(s, r1.b.lambda)};
    std::vector<Pt> e2 = {bary_point(t, r2.a.lambda), bary_point(t, r2.b.lambda)};
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    CHECK(e1 == e2);
}

TEST_CASE("boundary touch reported as Contact") {
    Simplex s{{pt({0, 0}), pt({2, 0})}};
    Simplex t{{pt({1, 0}), pt({1, 2})}}; // endpoint of t on interior of s
    auto r = intersect_simplices(s, t);
    CHECK(r.kind == Isect::Kind::Contact);
}

TEST_CASE("lp feasibility") {
    // x + y = 1, x - y = 0 with x,y >= 0: feasible (1/2, 1/2).
    Mat A = {{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
    CHECK(lp_feasible(A, {Rat(1), Rat(0)}));
    // x + y = -1 infeasible for x,y >= 0.
    Mat B = {{Rat(1), Rat(1)}};
    CHECK(!lp_feasible(B, {Rat(-1)}));
    // Overlapping coplanar triangles in R^3 detected via Contact.
    Simplex s{{pt({0, 0, 0}), pt({4, 0, 0}), pt({0, 4, 0})}};
    Simplex t{{pt({1, 1, 0}), pt({5, 1, 0}), pt({1, 5, 0})}};
    CHECK(intersect_simplices(s, t).kind == Isect::Kind::Contact);
    Simplex far{{pt({10, 10, 0}), pt({11, 10, 0}), pt({10, 11, 0})}};
    CHECK(intersect_simplices(s, far).kind == Isect::Kind::Empty);
}
