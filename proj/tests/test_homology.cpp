#include <doctest.h>

#include <cmath>

#include "cuphom/cup_complex.hpp"
#include "cuphom/forms.hpp"
#include "cuphom/homology.hpp"
#include "generators.hpp"

using namespace cuphom;

TEST_CASE("abelian group normal form and rendering")
{
    CHECK(AbelianGroup().render() == "0");
    CHECK(AbelianGroup::free(1).render() == "Z");
    CHECK(AbelianGroup::free(3).render() == "Z^3");
    CHECK(AbelianGroup(0, {2}).render() == "Z/2");
    CHECK(AbelianGroup(3, {6, 2}).render() == "Z^3 + Z/2 + Z/6");
    CHECK(AbelianGroup(1, {1, 1, 4}).render() == "Z + Z/4");
    CHECK(AbelianGroup(0, {2, 3}) == AbelianGroup(0, {6}));
    CHECK(AbelianGroup(0, {4, 6}).render() == "Z/2 + Z/12");
    CHECK(AbelianGroup(0, {1}).is_trivial());
    CHECK_THROWS_AS(AbelianGroup(0, {0}), std::invalid_argument);

    const AbelianGroup g(2, {2, 12});
    CHECK(g.p_torsion_count(2) == 2);
    CHECK(g.p_torsion_count(3) == 1);
    CHECK(g.p_torsion_count(5) == 0);
    CHECK(direct_sum(g, AbelianGroup(1, {3})).render() == "Z^3 + Z/6 + Z/12");
}

TEST_CASE("homology_group examples")
{
    for (long n : {2L, 5L, 12L}) {
        const ThreeForm t = torus3(n);
        const AbelianGroup h0 = homology_group(boundary_matrix(t, 0), boundary_matrix(t, 3));
        CHECK(h0 == AbelianGroup(0, {Integer(n)}));
        const AbelianGroup h3 = homology_group(boundary_matrix(t, 3), boundary_matrix(t, 6));
        CHECK(h3.is_trivial());
    }
    const ThreeForm z = trivial_form(5);
    CHECK(homology_group(boundary_matrix(z, 2), boundary_matrix(z, 5)) == AbelianGroup::free(10));
}

TEST_CASE("homology_group rejects invalid complexes")
{
    BoundaryMatrix out{3, 0, IntegerMatrix{{1}}};
    BoundaryMatrix in{6, 3, IntegerMatrix{{1}}};
    CHECK_THROWS_AS(homology_group(out, in), ComplexError);
    BoundaryMatrix wrong{6, 3, IntegerMatrix(2, 1)};
    CHECK_THROWS_AS(homology_group(out, wrong), ComplexError);
}

TEST_CASE("cup_homology examples")
{
    const auto t5 = cup_homology(torus3(5));
    CHECK(t5.even.render() == "Z^3 + Z/5");
    CHECK(t5.odd.render() == "Z^3");
    CHECK(t5.h == 3);

    const auto z4 = cup_homology(trivial_form(4));
    CHECK(z4.even == AbelianGroup::free(8));
    CHECK(z4.odd == AbelianGroup::free(8));
    CHECK(z4.h == 8);

    CHECK(cup_homology(surface_circle(2)).h == 10);

    const auto empty = cup_homology(trivial_form(0));
    CHECK(empty.h == mpq_class(1, 2));
    CHECK(empty.even == AbelianGroup::free(1));
    CHECK(empty.odd.is_trivial());
    CHECK(empty.by_degree.size() == 1);

    const auto neg = cup_homology(torus3(-5));
    CHECK(neg.even == t5.even);
}

TEST_CASE("cup_homology per-degree groups of surface_circle(3)")
{
    const auto r = cup_homology(surface_circle(3));
    std::vector<std::string> rendered;
    for (const auto& g : r.by_degree)
        rendered.push_back(g.render());
    CHECK(rendered == std::vector<std::string>{"0", "Z", "Z^6 + Z/2", "Z^28", "Z^28", "Z^6", "Z", "0"});
    CHECK(r.h_ev == 35);
    CHECK(r.h_odd == 35);
}

TEST_CASE("h_invariant matches cup_homology")
{
    testing::FormGen gen(51);
    for (int trial = 0; trial < 60; ++trial) {
        const ThreeForm f = gen.any_form(0, 6);
        CHECK(h_invariant(f) == cup_homology(f).h);
    }
}

TEST_CASE("h_mod_p")
{
    CHECK(h_mod_p(torus3(6), 2) == 4);
    CHECK(h_mod_p(torus3(6), 3) == 4);
    CHECK(h_mod_p(torus3(6), 5) == 3);
    CHECK(h_mod_p(torus3(6), 7) == 3);
    for (int b = 1; b <= 6; ++b)
        for (std::uint64_t p : {2, 3, 5})
            CHECK(h_mod_p(trivial_form(b), p) == (std::size_t{1} << (b - 1)));
    // surface_circle(2) has no torsion, so the F_2 rank equals the rational one.
    CHECK(h_mod_p(surface_circle(2), 2) == 10);
    // The Z/2 in degree 2 of surface_circle(3) adds one to each F_2 parity.
    CHECK(h_mod_p(surface_circle(3), 2) == 36);
    CHECK(h_mod_p(surface_circle(3), 3) == 35);
    CHECK_THROWS_AS(h_mod_p(torus3(6), 4), std::invalid_argument);
    CHECK_THROWS_AS(h_mod_p(trivial_form(0), 2), std::invalid_argument);
}

TEST_CASE("k_p")
{
    for (int b = 1; b <= 8; ++b) {
        const KpValue k = k_p(trivial_form(b), 1);
        CHECK(k.twice_h_p == mpq_class(1UL << b));
        CHECK(k.log2 == doctest::Approx(b));
    }
    const KpValue k0 = k_p(trivial_form(0), 1);
    CHECK(k0.h_p == mpq_class(1, 2));
    CHECK(k0.log2 == 0.0);
    CHECK(k_p(trivial_form(0), 3).twice_h_p == 1);

    const KpValue t = k_p(torus3(1), 1);
    CHECK(t.h_p == 3);
    CHECK(t.log2 == doctest::Approx(std::log2(6.0)));
    CHECK(k_p(torus3(6), 3).h_p == 4);
    CHECK_THROWS_AS(k_p(torus3(6), 6), std::invalid_argument);
}

TEST_CASE("k_p is additive under connected sum")
{
    testing::FormGen gen(52);
    for (int trial = 0; trial < 40; ++trial) {
        const ThreeForm a = gen.any_form(0, 4, 3), b = gen.any_form(0, 4, 3);
        const ThreeForm s = connected_sum(a, b);
        for (std::uint64_t p : {1, 2, 3}) {
            const mpq_class lhs = k_p(s, p).twice_h_p;
            const mpq_class rhs = k_p(a, p).twice_h_p * k_p(b, p).twice_h_p;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("field_homology_ranks")
{
    const FieldRanks q = field_homology_ranks(torus3(4), 0);
    CHECK(q.by_degree == std::vector<std::size_t>{0, 3, 3, 0});
    const FieldRanks f2 = field_homology_ranks(torus3(4), 2);
    CHECK(f2.by_degree == std::vector<std::size_t>{1, 3, 3, 1});
    CHECK(f2.even == 4);
    CHECK(f2.odd == 4);
    CHECK_THROWS_AS(field_homology_ranks(torus3(4), 9), std::invalid_argument);
}

TEST_CASE("uct_check examples")
{
    CHECK(uct_check(torus3(4), 2).ok());
    CHECK(uct_check(trivial_form(6), 3).ok());
    const CheckReport sc = uct_check(surface_circle(3), 2);
    CHECK(sc.ok());
    CHECK(sc.lines.size() == 8);
    CHECK(uct_check(surface_circle(2), 2).ok());
}

TEST_CASE("Kunneth products per parity over F_p")
{
    testing::FormGen gen(53);
    for (int trial = 0; trial < 40; ++trial) {
        const ThreeForm a = gen.any_form(1, 4, 4), b = gen.any_form(1, 4, 4);
        const ThreeForm s = connected_sum(a, b);
        for (std::uint64_t p : {2, 3}) {
            const FieldRanks ra = field_homology_ranks(a, p), rb = field_homology_ranks(b, p);
            const FieldRanks rs = field_homology_ranks(s, p);
            CHECK(rs.even == ra.even * rb.even + ra.odd * rb.odd);
            CHECK(rs.odd == ra.even * rb.odd + ra.odd * rb.even);
        }
    }
}
