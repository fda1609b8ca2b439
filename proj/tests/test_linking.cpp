#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/chains.hpp"
#include "core/generators.hpp"
#include "core/rng.hpp"
#include "helpers.hpp"

using namespace hdl;

namespace {

Chain polygon(const std::vector<Pt>& pts) {
    Chain c;
    c.dim = 1;
    for (size_t i = 0; i < pts.size(); ++i) {
        Simplex s;
        s.v.push_back(pts[i]);
        s.v.push_back(pts[(i + 1) % pts.size()]);
        c.simps.push_back({std::move(s), 1});
    }
    return c;
}

Chain translate(const Chain& c, const Vec& t) {
    Chain out = c;
    for (auto& cs : out.simps)
        for (auto& p : cs.s.v)
            for (size_t i = 0; i < t.size(); ++i) p[i] += t[i];
    return out;
}

// The two curves of the simplest nontrivially linked pair in R^3: a square
// around the origin in the z=0 plane, and a rectangle in the y=0 plane
// threading through it.
std::pair<Chain, Chain> hopf_pair() {
    Chain A = polygon({{Rat(1), Rat(0), Rat(0)},
                       {Rat(0), Rat(1), Rat(0)},
                       {Rat(-1), Rat(0), Rat(0)},
                       {Rat(0), Rat(-1), Rat(0)}});
    Chain B = polygon({{Rat(1, 2), Rat(0), Rat(-1)},
                       {Rat(1, 2), Rat(0), Rat(1)},
                       {Rat(3), Rat(0), Rat(1)},
                       {Rat(3), Rat(0), Rat(-1)}});
    return {A, B};
}

Chain random_polygon(std::mt19937_64& rng, int n, const Rat& range) {
    std::vector<Pt> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({rand_rat(rng, range), rand_rat(rng, range), rand_rat(rng, range)});
    return polygon(pts);
}

// 3-sphere: boundary of the 4-simplex placed in the first four coordinates
// of R^5.
Chain pentachoron_cycle_r5() {
    auto link = testing::pentachoron_link();
    const auto& comp = link.comps[0];
    Chain c;
    c.dim = 3;
    for (size_t t = 0; t < comp.cx.tets.size(); ++t) {
        Simplex s;
        for (int k = 0; k < 4; ++k) {
            Pt p = comp.domain[comp.cx.tets[t][k]];
            p.push_back(Rat(0));
            s.v.push_back(p);
        }
        c.simps.push_back({std::move(s), comp.cx.orient[t]});
    }
    return c;
}

} // namespace

TEST_CASE("boundary bookkeeping: polygons and sphere chains are cycles") {
    auto [A, B] = hopf_pair();
    CHECK(is_cycle(A));
    CHECK(is_cycle(B));
    CHECK(is_cycle(pentachoron_cycle_r5()));
    Chain open = A;
    open.simps.pop_back();
    CHECK_FALSE(is_cycle(open));
}

TEST_CASE("hopf pair in R^3: both methods, reversal, symmetry, seeds") {
    auto [A, B] = hopf_pair();
    Int via_cone = linking_number(A, B, 0);
    Int via_crossings = crossing_count_linking(A, B, 0);
    CHECK(via_cone == via_crossings);
    CHECK((via_cone == 1 || via_cone == -1));
    // Orientation reversal of either factor negates the linking number.
    CHECK(linking_number(negate(A), B, 0) == -via_cone);
    CHECK(linking_number(A, negate(B), 0) == -via_cone);
    CHECK(crossing_count_linking(negate(A), B, 0) == -via_crossings);
    // (m+1)(n+1) even: symmetric.
    CHECK(linking_number(B, A, 0) == via_cone);
    CHECK(crossing_count_linking(B, A, 0) == via_crossings);
    // Seed independence.
    for (uint64_t s : {1, 2, 3, 4, 5}) {
        CHECK(linking_number(A, B, s) == via_cone);
        CHECK(crossing_count_linking(A, B, s) == via_crossings);
    }
}

TEST_CASE("split pair in R^3 has linking number zero") {
    auto [A, B] = hopf_pair();
    auto Bfar = translate(B, {Rat(100), Rat(0), Rat(0)});
    CHECK(linking_number(A, Bfar, 0) == 0);
    CHECK(crossing_count_linking(A, Bfar, 0) == 0);
}

TEST_CASE("touching curves are rejected") {
    auto [A, B] = hopf_pair();
    Chain C = polygon({{Rat(1), Rat(0), Rat(0)},   // vertex lies on A
                       {Rat(5), Rat(0), Rat(1)},
                       {Rat(5), Rat(1), Rat(-1)}});
    CHECK_THROWS_AS((void)linking_number(A, C, 0), Error);
    CHECK_THROWS_AS((void)crossing_count_linking(A, C, 0), Error);
}

TEST_CASE("cone method agrees with the crossing-count oracle on random pairs") {
    auto rng = seeded_rng(20260823, 0x77);
    int done = 0;
    int nonzero = 0;
    while (done < 60) {
        Chain M = random_polygon(rng, 6, Rat(4));
        Chain N = random_polygon(rng, 6, Rat(4));
        if (!chains_disjoint(M, N)) continue;
        Int a, b;
        try {
            a = linking_number(M, N, done);
            b = crossing_count_linking(M, N, done);
        } catch (const Error&) {
            continue; // degenerate random input; draw again
        }
        CHECK(a == b);
        if (a != 0) ++nonzero;
        ++done;
    }
    // The sample must exercise genuinely linked pairs, not just zeros.
    CHECK(nonzero > 5);
}

TEST_CASE("curve versus 3-sphere in R^5") {
    Chain S = pentachoron_cycle_r5();
    // Rectangle dipping through the interior of the simplex at its centroid
    // and returning far outside, in the fifth coordinate direction.
    Pt c{Rat(1, 5), Rat(1, 5), Rat(1, 5), Rat(1, 5)};
    auto lift = [](Pt base, const Rat& x5) {
        base.push_back(x5);
        return base;
    };
    Pt far{Rat(10), Rat(0), Rat(0), Rat(0)};
    Chain L = polygon({lift(c, Rat(-1)), lift(c, Rat(1)), lift(far, Rat(1)),
                       lift(far, Rat(-1))});
    Int lk13 = linking_number(L, S, 0);
    CHECK((lk13 == 1 || lk13 == -1));
    // lk(N, M) = (-1)^{(m+1)(n+1)} lk(M, N); here (1+1)(3+1) is even.
    Int lk31 = linking_number(S, L, 0);
    CHECK(lk31 == lk13);
    CHECK(linking_number(negate(L), S, 0) == -lk13);
    CHECK(linking_number(L, negate(S), 0) == -lk13);
    // A loop that stays outside links zero.
    Chain Lout = translate(L, {Rat(20), Rat(0), Rat(0), Rat(0), Rat(0)});
    CHECK(linking_number(Lout, S, 0) == 0);
    CHECK(linking_number(S, Lout, 0) == 0);
}

TEST_CASE("product-of-squares boundary component validates") {
    auto comp = product_square_boundary(Rat(1), Rat(1));
    CHECK(comp.cx.tets.size() == 48);
    CHECK(comp.cx.vertex_count == 16);
    Mat E(6, std::vector<Rat>(4, Rat(0)));
    for (int i = 0; i < 4; ++i) E[i][i] = 1;
    // Mild shear into the last two coordinates keeps the image generic.
    E[4] = {Rat(1, 3), Rat(1, 5), Rat(1, 7), Rat(1, 11)};
    E[5] = {Rat(1, 13), Rat(1, 17), Rat(1, 19), Rat(1, 23)};
    embed_linear(comp, E, Vec(6, Rat(0)));
    SimplicialLink link;
    link.kind = LinkKind::spherical;
    link.comps.push_back(comp);
    auto rep = validate(link);
    for (const auto& p : rep.problems) MESSAGE(p);
    CHECK(rep.ok);
}

TEST_CASE("linking inside the boundary 3-sphere: core curves of the two tori") {
    auto comp = product_square_boundary(Rat(1), Rat(1));
    // Core of the first solid torus: the first square's perimeter at the
    // centre of the second square; and vice versa.
    Chain A = polygon({{Rat(1), Rat(1), Rat(0), Rat(0)},
                       {Rat(-1), Rat(1), Rat(0), Rat(0)},
                       {Rat(-1), Rat(-1), Rat(0), Rat(0)},
                       {Rat(1), Rat(-1), Rat(0), Rat(0)}});
    Chain B = polygon({{Rat(0), Rat(0), Rat(1), Rat(1)},
                       {Rat(0), Rat(0), Rat(-1), Rat(1)},
                       {Rat(0), Rat(0), Rat(-1), Rat(-1)},
                       {Rat(0), Rat(0), Rat(1), Rat(-1)}});
    Int lk = linking_in_sphere(comp, A, B, 0);
    CHECK((lk == 1 || lk == -1));
    // Antisymmetry under curve reversal and under flipping the sphere's
    // orientation.
    CHECK(linking_in_sphere(comp, negate(A), B, 0) == -lk);
    CHECK(linking_in_sphere(comp, A, negate(B), 0) == -lk);
    auto flipped = comp;
    for (auto& o : flipped.cx.orient) o = -o;
    CHECK(linking_in_sphere(flipped, A, B, 0) == -lk);
    // Symmetry in the two curves ((1+1)(1+1) even).
    CHECK(linking_in_sphere(comp, B, A, 0) == lk);
    // Seed independence.
    for (uint64_t s : {1, 2, 3}) CHECK(linking_in_sphere(comp, A, B, s) == lk);
}

TEST_CASE("linking inside the boundary 3-sphere: split curves give zero") {
    auto comp = product_square_boundary(Rat(1), Rat(1));
    Chain A = polygon({{Rat(1), Rat(0), Rat(0), Rat(0)},
                       {Rat(1), Rat(1, 2), Rat(0), Rat(0)},
                       {Rat(1), Rat(0), Rat(1, 2), Rat(0)}});
    Chain B = polygon({{Rat(-1), Rat(0), Rat(0), Rat(0)},
                       {Rat(-1), Rat(1, 2), Rat(0), Rat(0)},
                       {Rat(-1), Rat(0), Rat(1, 2), Rat(0)}});
    CHECK(linking_in_sphere(comp, A, B, 0) == 0);
}
