#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "galcoh/errors.hpp"
#include "galcoh/groups.hpp"
#include "oracles.hpp"

using namespace galcoh;

namespace {

// D8 from the presentation <r, s | r^4, s^2, (rs)^2>: r^i s^j with
// (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j+l).
GroupPtr d8_by_hand() {
    std::vector<Elem> table(64);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 4; ++k) {
                for (int l = 0; l < 2; ++l) {
                    const int r = ((i + (j ? -k : k)) % 4 + 4) % 4;
                    table[(2 * i + j) * 8 + 2 * k + l] = static_cast<Elem>(2 * r + (j + l) % 2);
                }
            }
        }
    }
    return std::make_shared<const FiniteGroup>(8, table, std::vector<Elem>{2, 1});
}

GroupPtr relabel(const FiniteGroup& g, std::mt19937_64& rng) {
    // keep the identity first so that the constructor sees a normal table
    std::vector<Elem> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Elem> table(g.order() * g.order());
    for (Elem a = 0; a < g.order(); ++a) {
        for (Elem b = 0; b < g.order(); ++b) table[perm[a] * g.order() + perm[b]] = perm[g.mul(a, b)];
    }
    std::vector<Elem> gens;
    for (Elem x : g.generators()) gens.push_back(perm[x]);
    return std::make_shared<const FiniteGroup>(g.order(), table, gens);
}

} // namespace

TEST_CASE("cyclic groups") {
    const auto one = make_cyclic(1);
    CHECK(one->order() == 1);
    CHECK(one->identity() == 0);
    const auto z4 = make_cyclic(4);
    CHECK(oracle::shape(*z4).orders == std::vector<std::size_t>{1, 2, 4, 4});
    const auto gal = real_galois_group();
    CHECK(gal->order() == 2);
    CHECK(gal->mul(1, 1) == 0);
    CHECK_THROWS_AS(make_cyclic(0), InputError);
}

TEST_CASE("direct products") {
    const auto v4 = make_direct_product(make_cyclic(2), make_cyclic(2)).group;
    CHECK(v4->order() == 4);
    for (Elem x = 0; x < 4; ++x) CHECK(v4->mul(x, x) == v4->identity());
    CHECK(fingerprint_small_group(*v4) == "V4");

    const auto big = make_direct_product(make_abelian({4, 4}), make_cyclic(2)).group;
    CHECK(big->order() == 32);
    CHECK(fingerprint_small_group(*big) == "Z4xZ4xZ2");
    CHECK(*make_abelian({2, 4, 4}) == *make_abelian({2, 4, 4}));

    const auto d8 = make_d8();
    const auto with_trivial = make_direct_product(d8, make_cyclic(1)).group;
    CHECK(fingerprint_small_group(*with_trivial) == fingerprint_small_group(*d8));

    // element ids are left-major pairs
    const auto prod = make_direct_product(make_cyclic(3), make_cyclic(2));
    CHECK(prod.group->mul(1 * 2 + 1, 2 * 2 + 1) == 0 * 2 + 0);
    CHECK(prod.proj_left(5) == 2);
    CHECK(prod.proj_right(5) == 1);
    CHECK(prod.incl_right(1) == 1);
}

TEST_CASE("semidirect products") {
    const auto z4 = make_cyclic(4), z2 = make_cyclic(2);
    SUBCASE("trivial action is the direct product") {
        const std::vector<std::vector<Elem>> triv{{0, 1, 2, 3}, {0, 1, 2, 3}};
        CHECK(make_semidirect(z4, z2, triv).group->cayley() == make_direct_product(z4, z2).group->cayley());
        const auto v4 = make_abelian({2, 2});
        const std::vector<std::vector<Elem>> triv4{{0, 1, 2, 3}, {0, 1, 2, 3}};
        CHECK(fingerprint_small_group(*make_semidirect(v4, z2, triv4).group) == "E8");
    }
    SUBCASE("inversion gives D8") {
        const std::vector<std::vector<Elem>> inv{{0, 1, 2, 3}, {0, 3, 2, 1}};
        const auto g = make_semidirect(z4, z2, inv).group;
        CHECK(fingerprint_small_group(*g) == "D8");
        CHECK(oracle::shape(*g) == oracle::shape(*d8_by_hand()));
        CHECK(oracle::shape(*g).orders == std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 4, 4});
    }
    SUBCASE("make_d8 satisfies r^4 = s^2 = rsrs = 1") {
        const auto d8 = make_d8();
        const Elem r = 2, s = 1;
        CHECK(d8->label(r) == "r");
        CHECK(d8->label(s) == "s");
        CHECK(d8->pow(r, 4) == d8->identity());
        CHECK(d8->mul(s, s) == d8->identity());
        CHECK(d8->mul(d8->mul(r, s), d8->mul(r, s)) == d8->identity());
        CHECK(d8->cayley() == d8_by_hand()->cayley());
    }
    SUBCASE("an action that is not a homomorphism is rejected") {
        const std::vector<std::vector<Elem>> bad{{0, 1, 2, 3}, {0, 2, 1, 3}};
        CHECK_THROWS_AS(make_semidirect(z4, z2, bad), InputError);
    }
}

TEST_CASE("homomorphisms from generator images") {
    const auto gal = real_galois_group();
    const auto v4 = make_abelian({2, 2});
    SUBCASE("identity") {
        const auto d8 = make_d8();
        const GroupHom f = make_hom(d8, d8, d8->generators());
        CHECK(f.images() == identity_hom(d8).images());
    }
    SUBCASE("the point (1,0) of H^1") {
        const GroupHom f = make_hom(gal, v4, {2});
        CHECK(f(0) == 0);
        CHECK(f(1) == 2);
    }
    SUBCASE("order obstruction") {
        try {
            make_hom(gal, make_cyclic(4), {1});
            FAIL("expected an error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("witness") != std::string::npos);
        }
    }
    SUBCASE("composition") {
        const auto z4 = make_cyclic(4);
        const GroupHom dbl = make_hom(z4, z4, {2});
        const GroupHom quad = compose(dbl, dbl);
        for (Elem x = 0; x < 4; ++x) CHECK(quad(x) == 0);
        CHECK(trivial_hom(z4, gal)(3) == 0);
    }
}

TEST_CASE("fingerprints") {
    CHECK(fingerprint_small_group(*make_cyclic(4)) == "Z4");
    CHECK(fingerprint_small_group(*make_abelian({2, 2})) == "V4");
    CHECK(fingerprint_small_group(*d8_by_hand()) == "D8");
    CHECK(fingerprint_small_group(*make_cyclic(1)) == "trivial");
    std::mt19937_64 rng(7);
    for (const auto& g : {make_d8(), make_abelian({2, 4}), make_cyclic(8), make_abelian({2, 2, 2})}) {
        const auto name = fingerprint_small_group(*g);
        for (int t = 0; t < 10; ++t) CHECK(fingerprint_small_group(*relabel(*g, rng)) == name);
    }
}

TEST_CASE("bad Cayley tables are rejected") {
    CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1, 1}, {1}), InputError);
    CHECK_THROWS_AS(FiniteGroup(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, {0}), InputError);
    // non-associative Latin square of order 5 with identity 0
    const std::vector<Elem> latin{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
    CHECK_THROWS_AS(FiniteGroup(5, latin, {1, 2}), InputError);
}
