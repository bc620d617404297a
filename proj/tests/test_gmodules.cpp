#include <doctest.h>

#include "galcoh/errors.hpp"
#include "galcoh/gmodules.hpp"

using namespace galcoh;

namespace {

bool same_action(const GModule& a, const GModule& b) {
    if (!(a.group() == b.group()) || a.factors() != b.factors()) return false;
    for (Elem g = 0; g < a.group().order(); ++g) {
        if (a.action(g).data != b.action(g).data) return false;
    }
    return true;
}

} // namespace

TEST_CASE("finite abelian groups enumerate lexicographically") {
    const FiniteAbelianGroup a({2, 4});
    CHECK(a.cardinality() == 8);
    CHECK(a.element(0) == ModElem{0, 0});
    CHECK(a.element(1) == ModElem{0, 1});
    CHECK(a.element(4) == ModElem{1, 0});
    for (std::size_t i = 0; i < 8; ++i) CHECK(a.index(a.element(i)) == i);
    CHECK(a.add({1, 3}, {1, 2}) == ModElem{0, 1});
    CHECK(a.neg({1, 1}) == ModElem{1, 3});
    CHECK(a.reduce({-1, 9}) == ModElem{1, 1});
    CHECK(mod_floor(-3, 4) == 1);
}

TEST_CASE("module construction") {
    const auto gal = real_galois_group();
    SUBCASE("trivial Z/2") {
        const auto m = make_trivial_module(gal, {2});
        CHECK(m->is_trivial_action());
        CHECK(m->act(1, {1}) == ModElem{1});
    }
    SUBCASE("the mu_4 module over Z/2 x (Z/4)^2") {
        const auto g = make_abelian({2, 4, 4});
        const auto m = make_module(g, {4}, {IntMatrix::scalar(3), IntMatrix::scalar(1), IntMatrix::scalar(1)});
        CHECK_FALSE(m->is_trivial_action());
        const Elem conj = g->generators()[0];
        CHECK(m->act(conj, {1}) == ModElem{3});
        CHECK(m->act(g->generators()[1], {1}) == ModElem{1});
    }
    SUBCASE("multiplication by 2 on Z/4 is not an automorphism") {
        CHECK_THROWS_AS(make_module(gal, {4}, {IntMatrix::scalar(2)}), InputError);
    }
    SUBCASE("matrices must respect the group relations") {
        // Z/3 acting on Z/4 through inversion would need an element of order 2
        CHECK_THROWS_AS(make_module(make_cyclic(3), {4}, {IntMatrix::scalar(3)}), InputError);
        CHECK_THROWS_AS(make_module(gal, {4}, {}), InputError);
    }
    SUBCASE("mixed torsion") {
        IntMatrix swapish(2, 2);
        swapish(0, 0) = 1;
        swapish(1, 0) = 2;  // (a, b) -> (a, 2a + b) on Z/2 + Z/4
        swapish(1, 1) = 1;
        const auto m = make_module(gal, {2, 4}, {swapish});
        CHECK(m->act(1, {1, 0}) == ModElem{1, 2});
        CHECK(m->act(1, m->act(1, {1, 3})) == ModElem{1, 3});
    }
}

TEST_CASE("roots of unity over Gal(C/R)") {
    CHECK(mu_m_real(4)->act(1, {1}) == ModElem{3});
    CHECK(mu_m_real(2)->is_trivial_action());
    CHECK(mu_m_real(3)->act(1, {1}) == ModElem{2});
    for (std::int64_t m = 2; m <= 12; ++m) {
        const auto mu = mu_m_real(m);
        for (std::int64_t x = 0; x < m; ++x) CHECK(mu->act(1, mu->act(1, {x})) == ModElem{x});
    }
}

TEST_CASE("pullback modules") {
    const auto gal = real_galois_group();
    const auto mu4 = mu_m_real(4);
    SUBCASE("identity") {
        CHECK(*pullback_module(identity_hom(gal), mu4) == *mu4);
    }
    SUBCASE("trivial hom gives the trivial action") {
        CHECK(pullback_module(trivial_hom(make_cyclic(4), gal), mu4)->is_trivial_action());
    }
    SUBCASE("along a section of Z/4 x| Gal -> Gal") {
        const auto z4 = make_cyclic(4);
        // pi_1 = mu_4 x| Gal, element (u, g) has id 2u + g
        const std::vector<std::vector<Elem>> act{{0, 1, 2, 3}, {0, 3, 2, 1}};
        const auto sd = make_semidirect(z4, gal, act);
        const auto over_pi = pullback_module(sd.projection, mu4);
        const GroupHom section(gal, sd.group, {0, 2 * 1 + 1});
        const auto back = pullback_module(section, over_pi);
        CHECK(back->act(1, {1}) == ModElem{3});
    }
    SUBCASE("composition") {
        const auto g = make_abelian({2, 4, 4});
        const auto m = make_module(g, {4}, {IntMatrix::scalar(3), IntMatrix::scalar(1), IntMatrix::scalar(1)});
        const auto z8 = make_cyclic(8);
        const GroupHom f = make_hom(z8, make_cyclic(4), {1});
        const GroupHom h = make_hom(make_cyclic(4), g, {1 * 16 + 1 * 4 + 3});
        CHECK(same_action(*pullback_module(compose(h, f), m), *pullback_module(f, pullback_module(h, m))));
    }
}

TEST_CASE("module homomorphisms") {
    const auto gal = real_galois_group();
    const auto z2 = make_trivial_module(gal, {2});
    const auto mu4 = mu_m_real(4);
    const ModuleHom incl(z2, mu4, IntMatrix::scalar(2));
    CHECK(incl({1}) == ModElem{2});
    const ModuleHom red(mu4, z2, IntMatrix::scalar(1));
    CHECK(red({3}) == ModElem{1});
    // 1 -> 1 from Z/2 to Z/4 is not well defined
    CHECK_THROWS_AS(ModuleHom(z2, mu4, IntMatrix::scalar(1)), InputError);
    // Z/4 trivial -> mu_4 by the identity is not equivariant
    CHECK_THROWS_AS(ModuleHom(make_trivial_module(gal, {4}), mu4, IntMatrix::scalar(1)), InputError);
}
