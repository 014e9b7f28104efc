#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cuphom/forms.hpp"
#include "generators.hpp"

using namespace cuphom;
using Kind = FormError::Kind;

namespace {

Kind parse_error_kind(std::string_view text)
{
    try {
        parse_form(text);
    } catch (const FormError& e) {
        return e.kind();
    }
    FAIL("document parsed without error: " << text);
    return Kind::Malformed;
}

}  // namespace

TEST_CASE("parse_form examples")
{
    const ThreeForm t = parse_form(R"({"rank":3, "terms":[[1,2,3,5]]})");
    CHECK(t == torus3(5));

    const ThreeForm z = parse_form(R"({"rank":4, "terms":[]})");
    CHECK(z.rank() == 4);
    CHECK(z.is_zero());

    CHECK(parse_error_kind(R"({"rank":3, "terms":[[2,1,3,1]]})") == Kind::NotIncreasing);
}

TEST_CASE("parse_form drops zero coefficients and sorts")
{
    const ThreeForm f = parse_form(R"({"rank":5, "terms":[[3,4,5,2],[1,2,3,0],[1,2,4,-7]]})");
    REQUIRE(f.terms().size() == 2);
    CHECK(f.terms()[0] == Term{1, 2, 4, -7});
    CHECK(f.terms()[1] == Term{3, 4, 5, 2});
    CHECK(f.coefficient(1, 2, 3) == 0);
}

TEST_CASE("parse_form diagnostics are distinct")
{
    CHECK(parse_error_kind("not json") == Kind::Malformed);
    CHECK(parse_error_kind("[1,2]") == Kind::Malformed);
    CHECK(parse_error_kind(R"({"terms":[]})") == Kind::Malformed);
    CHECK(parse_error_kind(R"({"rank":3})") == Kind::Malformed);
    CHECK(parse_error_kind(R"({"rank":3, "terms":[[1,2,3]]})") == Kind::Malformed);
    CHECK(parse_error_kind(R"({"rank":3, "terms":[[1,2,3,1.5]]})") == Kind::Malformed);
    CHECK(parse_error_kind(R"({"rank":3, "terms":[[1,2,3,99999999999999999999]]})") == Kind::Malformed);
    CHECK(parse_error_kind(R"({"rank":3, "terms":[[1,3,3,1]]})") == Kind::NotIncreasing);
    CHECK(parse_error_kind(R"({"rank":3, "terms":[[1,2,4,1]]})") == Kind::IndexOutOfRange);
    CHECK(parse_error_kind(R"({"rank":3, "terms":[[0,2,3,1]]})") == Kind::IndexOutOfRange);
    CHECK(parse_error_kind(R"({"rank":3, "terms":[[1,2,3,1],[1,2,3,2]]})") == Kind::DuplicateTriple);
    CHECK(parse_error_kind(R"({"rank":3, "terms":[[1,2,3,0],[1,2,3,2]]})") == Kind::DuplicateTriple);
    CHECK(parse_error_kind(R"({"rank":64, "terms":[]})") == Kind::RankTooLarge);
    CHECK(parse_error_kind(R"({"rank":-1, "terms":[]})") == Kind::NegativeRank);
}

TEST_CASE("serialize_form")
{
    CHECK(serialize_form(ThreeForm(2)) == "{\n  \"rank\": 2,\n  \"terms\": []\n}\n");
    CHECK(serialize_form(surface_circle(1)) == "{\n  \"rank\": 3,\n  \"terms\": [\n    [1, 2, 3, 1]\n  ]\n}\n");
    const ThreeForm t = torus3(-4);
    CHECK(parse_form(serialize_form(t)) == t);
}

TEST_CASE("families")
{
    CHECK(trivial_form(6) == ThreeForm(6));
    CHECK(torus3(0) == ThreeForm(3));
    CHECK(torus3(1) == surface_circle(1));

    const ThreeForm sc2 = surface_circle(2);
    CHECK(sc2.rank() == 5);
    CHECK(sc2 == ThreeForm(5, {{1, 2, 3, 1}, {1, 4, 5, 1}}));

    CHECK(mapping_torus(0, 3) == ThreeForm(4));
    CHECK(mapping_torus(2, 1) == ThreeForm(6, {{1, 2, 3, 1}, {1, 4, 5, 1}}));
    CHECK(surface_circle(0) == ThreeForm(1));

    CHECK(builtin_family("torus3", {.n = 7}) == torus3(7));
    CHECK(builtin_family("surface_circle", {.g = 3}) == surface_circle(3));
    CHECK(builtin_family("mapping_torus", {.w = 1, .v0 = 2}) == mapping_torus(1, 2));
    CHECK(builtin_family("trivial", {.b = 3}) == trivial_form(3));

    CHECK_THROWS_AS(builtin_family("lens", {}), FormError);
    CHECK_THROWS_AS(surface_circle(-1), FormError);
    CHECK_THROWS_AS(mapping_torus(1, -1), FormError);
    CHECK_THROWS_AS(trivial_form(-2), FormError);
    CHECK_THROWS_AS(surface_circle(32), FormError);
}

TEST_CASE("every family instance round-trips")
{
    std::vector<ThreeForm> forms;
    for (int b = 0; b <= 8; ++b)
        forms.push_back(trivial_form(b));
    for (int n = -3; n <= 6; ++n)
        forms.push_back(torus3(n));
    for (int w = 0; w <= 4; ++w)
        for (int v0 = 0; v0 <= 3; ++v0)
            forms.push_back(mapping_torus(w, v0));
    for (const auto& f : forms)
        CHECK(parse_form(serialize_form(f)) == f);
}

TEST_CASE("connected_sum")
{
    CHECK(connected_sum(torus3(1), trivial_form(1)) == ThreeForm(4, {{1, 2, 3, 1}}));
    CHECK(connected_sum(trivial_form(2), trivial_form(3)) == trivial_form(5));
    CHECK(connected_sum(torus3(1), torus3(1)) == ThreeForm(6, {{1, 2, 3, 1}, {4, 5, 6, 1}}));
    CHECK_THROWS_AS(connected_sum(trivial_form(40), trivial_form(24)), FormError);

    testing::FormGen gen(21);
    for (int trial = 0; trial < 50; ++trial) {
        const ThreeForm a = gen.any_form(0, 5), b = gen.any_form(0, 5), c = gen.any_form(0, 5);
        CHECK(connected_sum(a, trivial_form(0)) == a);
        CHECK(connected_sum(trivial_form(0), a) == a);
        CHECK(connected_sum(a, b).rank() == a.rank() + b.rank());
        CHECK(serialize_form(connected_sum(connected_sum(a, b), c)) ==
              serialize_form(connected_sum(a, connected_sum(b, c))));
    }
}

TEST_CASE("reduce_mod_p")
{
    CHECK(reduce_mod_p(torus3(5), 5) == ThreeForm(3));
    CHECK(reduce_mod_p(torus3(5), 2) == ThreeForm(3, {{1, 2, 3, 1}}));
    CHECK(reduce_mod_p(torus3(-1), 3) == ThreeForm(3, {{1, 2, 3, 2}}));
    CHECK(reduce_mod_p(trivial_form(4), 7) == trivial_form(4));
    CHECK_THROWS_AS(reduce_mod_p(torus3(5), 4), FormError);
    CHECK_THROWS_AS(reduce_mod_p(torus3(5), 1), FormError);
}

TEST_CASE("negation and permutation")
{
    const ThreeForm f(4, {{1, 2, 3, 2}, {2, 3, 4, -5}});
    CHECK(f.negated() == ThreeForm(4, {{1, 2, 3, -2}, {2, 3, 4, 5}}));

    // Swapping 1 and 2: e1 e2 e3 -> e2 e1 e3 = -e1 e2 e3; e2 e3 e4 -> e1 e3 e4.
    const std::vector<int> swap12{2, 1, 3, 4};
    CHECK(f.permuted(swap12) == ThreeForm(4, {{1, 2, 3, -2}, {1, 3, 4, -5}}));

    const std::vector<int> bad{1, 1, 3, 4};
    CHECK_THROWS_AS(f.permuted(bad), FormError);
    const std::vector<int> short_perm{1, 2, 3};
    CHECK_THROWS_AS(f.permuted(short_perm), FormError);
    CHECK_THROWS_AS(f + ThreeForm(3), FormError);
    CHECK((f + f.negated()).is_zero());
}

TEST_CASE("form files")
{
    const auto path = std::filesystem::temp_directory_path() / "cuphom_test_form.json";
    write_form_file(path.string(), surface_circle(2));
    CHECK(read_form_file(path.string()) == surface_circle(2));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_form_file(path.string()), std::runtime_error);
}
