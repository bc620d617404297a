#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "galcoh/errors.hpp"
#include "galcoh/extensions.hpp"
#include "oracles.hpp"

using namespace galcoh;

namespace {

std::vector<CohomologyClass> all_classes(const CohomologyGroup& h) {
    std::vector<CohomologyClass> out;
    std::vector<std::size_t> c(h.num_generators(), 0);
    while (true) {
        out.push_back(h.from_coordinates(std::vector<std::int64_t>(c.begin(), c.end())));
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == static_cast<std::size_t>(h.invariant_factors()[i])) c[i++] = 0;
        if (i == c.size()) break;
    }
    return out;
}

Cochain random_normalized_coboundary(const ModulePtr& m, std::mt19937_64& rng) {
    const Elem e = m->group().identity();
    const Cochain b = Cochain::from_function(m, 1, [&](const std::vector<Elem>& g) {
        ModElem v;
        for (auto f : m->factors()) v.push_back(g[0] == e ? 0 : static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(f)));
        return v;
    });
    return coboundary(b);
}

// E x_G H for pi: E -> G and f: H -> G, as a Cayley table on the pairs.
GroupPtr fiber_product(const Extension& e, const GroupHom& f) {
    const FiniteGroup& big = *e.total;
    const FiniteGroup& h = *f.source();
    std::vector<std::pair<Elem, Elem>> elems;
    for (Elem x = 0; x < big.order(); ++x) {
        for (Elem y = 0; y < h.order(); ++y) {
            if (e.quotient_map(x) == f(y)) elems.emplace_back(x, y);
        }
    }
    std::sort(elems.begin(), elems.end(), [&](auto a, auto b) {
        // identity first
        const bool ia = a.first == big.identity() && a.second == h.identity();
        const bool ib = b.first == big.identity() && b.second == h.identity();
        if (ia != ib) return ia;
        return a < b;
    });
    const std::size_t n = elems.size();
    std::vector<Elem> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::pair<Elem, Elem> p{big.mul(elems[i].first, elems[j].first), h.mul(elems[i].second, elems[j].second)};
            table[i * n + j] = static_cast<Elem>(std::find(elems.begin(), elems.end(), p) - elems.begin());
        }
    }
    std::vector<Elem> gens(n);
    std::iota(gens.begin(), gens.end(), 0);
    return std::make_shared<const FiniteGroup>(n, table, gens);
}

} // namespace

TEST_CASE("extensions from cocycles") {
    const auto v4 = make_abelian({2, 2});
    const auto z2 = make_trivial_module(v4, {2});
    SUBCASE("zero cocycle gives the direct product") {
        const Extension e = extension_from_cocycle(Cochain(z2, 2));
        CHECK(fingerprint_small_group(*e.total) == fingerprint_small_group(*make_direct_product(make_cyclic(2), v4).group));
        CHECK(fingerprint_small_group(*e.total) == "E8");
        CHECK(cocycle_of_extension(e).is_zero());
    }
    SUBCASE("the D8 class") {
        const auto d8 = d8_class();
        CHECK_FALSE(d8.is_zero());
        CHECK((d8 + d8).is_zero());
        CHECK(fingerprint_small_group(*extension_from_cocycle(d8.representative()).total) == "D8");
    }
    SUBCASE("the D8 extension with section 1, r, s, rs") {
        const Extension e = d8_extension();
        const Cochain c = cocycle_of_extension(e);
        CHECK_FALSE(cohomology_group(z2, 2).reduce(c).is_zero());
        CHECK(fingerprint_small_group(*extension_from_cocycle(c).total) == "D8");
    }
    SUBCASE("pullbacks along the four points of H^1(R, T[2])") {
        const auto d8 = d8_class();
        const auto gal = real_galois_group();
        for (Elem u = 0; u < 4; ++u) {
            const GroupHom f(gal, v4, {0, u});
            const auto target = cohomology_group(pullback_module(f, d8.parent().module()), 2);
            const auto x = pullback_class(f, d8, target);
            const auto name = fingerprint_small_group(*extension_from_cocycle(x.representative()).total);
            // u = 2 is (1,0), the image of r
            CHECK(is_split(x) == (u != 2));
            CHECK(name == (u == 2 ? "Z4" : "V4"));
        }
    }
    SUBCASE("round trip through the canonical section") {
        std::mt19937_64 rng(3);
        const auto h = cohomology_group(z2, 2);
        for (const auto& x : all_classes(h)) {
            const Cochain c = x.representative() + random_normalized_coboundary(z2, rng);
            CHECK(cocycle_of_extension(extension_from_cocycle(c)) == c);
        }
    }
}

TEST_CASE("splitting agrees with a search for homomorphic sections") {
    const std::vector<GroupPtr> groups{make_cyclic(2), make_cyclic(4), make_abelian({2, 2}), make_abelian({2, 4}),
                                       make_cyclic(8), make_abelian({2, 2, 2}), make_d8()};
    std::size_t split = 0, nonsplit = 0;
    for (const auto& g : groups) {
        const auto m = make_trivial_module(g, {2});
        for (const auto& x : all_classes(cohomology_group(m, 2))) {
            const Extension e = extension_from_cocycle(x.representative());
            const bool oracle_split = oracle::has_section(*e.total, *g, e.quotient_map.images());
            CHECK(is_split(x) == oracle_split);
            (oracle_split ? split : nonsplit) += 1;
        }
    }
    CHECK(split == groups.size());
    CHECK(nonsplit > 0);
}

TEST_CASE("Baer sums do not depend on representatives") {
    std::mt19937_64 rng(4);
    for (const auto& g : {make_cyclic(4), make_abelian({2, 2})}) {
        for (const std::vector<std::int64_t>& f : {std::vector<std::int64_t>{2}, {4}}) {
            const auto m = make_trivial_module(g, f);
            const auto classes = all_classes(cohomology_group(m, 2));
            for (const auto& a : classes) {
                for (const auto& b : classes) {
                    const auto name = fingerprint_small_group(*extension_from_cocycle(a.representative() + b.representative()).total);
                    for (int t = 0; t < 3; ++t) {
                        const Cochain a2 = a.representative() + random_normalized_coboundary(m, rng);
                        const Cochain b2 = b.representative() + random_normalized_coboundary(m, rng);
                        CHECK(fingerprint_small_group(*extension_from_cocycle(a2 + b2).total) == name);
                    }
                }
            }
        }
    }
}

TEST_CASE("pullback matches the fiber product") {
    const auto d8 = d8_class();
    const Extension e = extension_from_cocycle(d8.representative());
    const auto v4 = d8.parent().module()->group_ptr();
    std::vector<GroupHom> maps;
    for (Elem u = 0; u < 4; ++u) {
        maps.push_back(make_hom(real_galois_group(), v4, {u}));
        maps.push_back(make_hom(make_cyclic(4), v4, {u}));
    }
    maps.push_back(identity_hom(v4));
    maps.push_back(make_hom(v4, v4, {1, 2}));  // swaps the two factors
    maps.push_back(make_hom(make_abelian({2, 2, 2}), v4, {2, 0, 3}));
    for (const auto& f : maps) {
        const auto target = cohomology_group(pullback_module(f, d8.parent().module()), 2);
        const auto x = pullback_class(f, d8, target);
        CHECK(fingerprint_small_group(*extension_from_cocycle(x.representative()).total) ==
              fingerprint_small_group(*fiber_product(e, f)));
    }
}

TEST_CASE("input checks") {
    const auto mu4 = mu_m_real(4);
    CHECK_THROWS_AS(extension_from_cocycle(Cochain(mu4, 2)), InputError);
    const auto z2 = make_trivial_module(real_galois_group(), {2});
    Cochain not_normalized(z2, 2);
    for (Elem x = 0; x < 2; ++x) {
        for (Elem y = 0; y < 2; ++y) not_normalized.set({x, y}, {1});
    }
    CHECK_THROWS_AS(extension_from_cocycle(not_normalized), InputError);
    Cochain not_cocycle(z2, 2);
    not_cocycle.set({1, 0}, {1});
    CHECK_THROWS_AS(extension_from_cocycle(not_cocycle), InputError);
    const auto big = make_trivial_module(make_abelian({4, 4, 4}), {8});
    CHECK_THROWS_AS(extension_from_cocycle(Cochain(big, 2)), ResourceError);

    Extension e = d8_extension();
    e.section = {0, 1, 3, 2};
    CHECK_THROWS_AS(validate_extension(e), InputError);
}
