#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/generators.hpp"
#include "core/json_io.hpp"
#include "helpers.hpp"

using namespace hdl;

namespace {

bool same_component(const Component& a, const Component& b) {
    return a.cx.vertex_count == b.cx.vertex_count && a.cx.tets == b.cx.tets &&
           a.cx.orient == b.cx.orient && a.domain == b.domain &&
           a.embed == b.embed &&
           a.standard.has_value() == b.standard.has_value() &&
           (!a.standard || (a.standard->lin == b.standard->lin &&
                            a.standard->off == b.standard->off &&
                            a.standard->interior_radius ==
                                b.standard->interior_radius));
}

bool same_link(const SimplicialLink& a, const SimplicialLink& b) {
    if (a.ell != b.ell || a.kind != b.kind ||
        a.comps.size() != b.comps.size() || a.smale_term != b.smale_term ||
        a.provenance != b.provenance)
        return false;
    for (size_t i = 0; i < a.comps.size(); ++i)
        if (!same_component(a.comps[i], b.comps[i])) return false;
    return true;
}

} // namespace

TEST_CASE("round trip is structurally identical and bit-exact") {
    auto links = {testing::pentachoron_link(), borromean(), unknot(),
                  unlink(3)};
    for (const auto& link : links) {
        std::string text = serialize_link(link);
        SimplicialLink back = parse_link(text);
        CHECK(same_link(link, back));
        // Serialization is deterministic, so a second trip is byte-equal.
        CHECK(serialize_link(back) == text);
        CHECK(validate(back).ok == validate(link).ok);
    }
}

TEST_CASE("awkward rationals survive the round trip") {
    SimplicialLink link = testing::pentachoron_link();
    // Huge numerators (beyond 64 bits) and tiny denominators mixed in.
    link.comps[0].embed[0][0] =
        Rat(Int("123456789012345678901234567890123456789"),
            Int("9876543210987654321098765432109"));
    link.comps[0].embed[1][3] = Rat(-7, 3);
    link.comps[0].domain[2][1] = Rat(1, Int("18446744073709551629"));
    link.smale_term = Rat(-3, 2);
    link.provenance = "test: awkward rationals";
    SimplicialLink back = parse_link(serialize_link(link));
    CHECK(same_link(link, back));
}

TEST_CASE("smale_term and provenance metadata round trip") {
    SimplicialLink link = unknot();
    CHECK(!link.smale_term.has_value());
    SimplicialLink back = parse_link(serialize_link(link));
    CHECK(!back.smale_term.has_value());
    CHECK(back.provenance == "unknot");

    link.smale_term = Rat(0);
    back = parse_link(serialize_link(link));
    REQUIRE(back.smale_term.has_value());
    CHECK(*back.smale_term == 0);
}

TEST_CASE("malformed input is rejected with InvalidInput") {
    auto expect_invalid = [](const std::string& text) {
        try {
            parse_link(text);
            return false;
        } catch (const Error& e) {
            return e.code == ErrorCode::InvalidInput;
        }
    };
    CHECK(expect_invalid("not json at all"));
    CHECK(expect_invalid("{}"));
    CHECK(expect_invalid(R"({"l":2,"kind":"weird","components":[]})"));
    // Zero denominator.
    std::string text = serialize_link(testing::pentachoron_link());
    auto pos = text.find("[\n");
    (void)pos;
    SimplicialLink bad = testing::pentachoron_link();
    std::string good = serialize_link(bad);
    CHECK(expect_invalid(
        R"({"l":2,"kind":"spherical","components":[{"vertices":[[[1,0],[0,1],[0,1],[0,1],[0,1],[0,1]]],"domain_vertices":[[[0,1],[0,1],[0,1],[0,1]]],"top_simplices":[],"orientations":[]}]})"));
    // Out-of-range vertex index.
    CHECK(expect_invalid(
        R"({"l":2,"kind":"spherical","components":[{"vertices":[],"domain_vertices":[],"top_simplices":[[0,1,2,3]],"orientations":[1]}]})"));
}
