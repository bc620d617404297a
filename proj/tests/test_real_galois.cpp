#include <doctest.h>

#include <random>
#include <set>

#include "galcoh/errors.hpp"
#include "galcoh/real_galois.hpp"
#include "oracles.hpp"

using namespace galcoh;

namespace {

mpq_class frac(long n, long d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

GaussMatrix random_gauss(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
    GaussMatrix s(n);
    for (auto& x : s.a) x = GaussRat(frac(num(rng), den(rng)), frac(num(rng), den(rng)));
    return s;
}

// Nonzero determinant by exact elimination.
bool invertible(GaussMatrix m) {
    for (std::size_t c = 0; c < m.n; ++c) {
        std::size_t r = c;
        while (r < m.n && m(r, c).is_zero()) ++r;
        if (r == m.n) return false;
        for (std::size_t k = 0; k < m.n; ++k) std::swap(m(r, k), m(c, k));
        const GaussRat inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < m.n; ++i) {
            const GaussRat f = m(i, c) * inv;
            for (std::size_t k = c; k < m.n; ++k) m(i, k) = m(i, k) - f * m(c, k);
        }
    }
    return true;
}

std::vector<std::string> labels(const std::vector<SignSequence>& v) {
    std::vector<std::string> out;
    for (const auto& s : v) out.push_back(s.label());
    return out;
}

} // namespace

TEST_CASE("sign sequences") {
    const SignSequence s({-1, -1, 1});
    CHECK(s.label() == "(-1,-1,1)");
    CHECK(s.bits() == std::vector<std::int64_t>{1, 1});
    CHECK(SignSequence::from_bits(3, {1, 1}) == s);
    CHECK((s * s).is_identity());
    CHECK_THROWS_AS(SignSequence({-1, 1, 1}), InputError);
    CHECK_THROWS_AS(SignSequence({2, 1, 2}), InputError);
}

TEST_CASE("H^1(R, T[m])") {
    CHECK(labels(h1_real_torsion(3, 2)) == std::vector<std::string>{"(1,1,1)", "(1,-1,-1)", "(-1,1,-1)", "(-1,-1,1)"});
    CHECK(h1_real_torsion(3, 3).size() == 1);
    CHECK(h1_real_torsion(3, 3)[0].is_identity());
    CHECK(labels(h1_real_torsion(3, 4)) == labels(h1_real_torsion(3, 2)));
    CHECK(h1_real_torsion(4, 6).size() == 8);
}

TEST_CASE("hermitian signatures") {
    CHECK(hermitian_signature(HermitianForm::diagonal({-1, -1, 1})) == Signature{1, 2});
    CHECK(hermitian_signature(HermitianForm::diagonal({1, 1, 1})) == Signature{3, 0});
    GaussMatrix off(2);
    off(0, 1) = GaussRat(0, 1);
    off(1, 0) = GaussRat(0, -1);
    CHECK(hermitian_signature(HermitianForm(off)) == Signature{1, 1});
    GaussMatrix not_herm(2);
    not_herm(0, 1) = GaussRat(1);
    CHECK_THROWS_AS(HermitianForm{not_herm}, InputError);
    CHECK_THROWS_AS(hermitian_signature(HermitianForm::diagonal({1, 0})), InputError);
}

TEST_CASE("signatures are invariant under 50 random congruences") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::uniform_int_distribution<long> entry(-5, 5);
    int done = 0;
    while (done < 50) {
        const std::size_t n = size(rng);
        std::vector<long> d(n);
        for (auto& x : d) {
            while (x == 0) x = entry(rng);
        }
        const GaussMatrix s = random_gauss(n, rng);
        if (!invertible(s)) continue;
        const HermitianForm h = HermitianForm::diagonal(d);
        const HermitianForm moved = h.congruent(s);
        const Signature expect = hermitian_signature(h);
        CHECK(hermitian_signature(moved) == expect);
        CHECK(oracle::numeric_signature(moved.matrix()) == expect);
        // a second congruence from a non-diagonal starting point
        const GaussMatrix t = random_gauss(n, rng);
        if (invertible(t)) CHECK(hermitian_signature(moved.congruent(t)) == expect);
        ++done;
    }
}

TEST_CASE("classes in H^1(R, SU(p,q))") {
    CHECK(reference_signature(2, 1) == Signature{1, 2});
    CHECK(su_class_of_cocycle(SignSequence::identity(3), 2, 1) == Signature{1, 2});
    CHECK(su_class_of_cocycle(SignSequence({-1, -1, 1}), 2, 1) == Signature{3, 0});
    CHECK(su_class_of_cocycle(SignSequence({-1, 1, -1}), 2, 1) == hermitian_signature(HermitianForm::diagonal({1, -1, -1})));
    for (std::size_t p = 0; p <= 4; ++p) {
        for (std::size_t q = 0; p + q <= 5; ++q) {
            if (p + q < 2) continue;
            CHECK(su_class_of_cocycle(SignSequence::identity(p + q), p, q) == reference_signature(p, q));
            // even sign flips reach every signature of the same parity
            std::set<std::size_t> reached, expect;
            for (const auto& s : h1_real_torsion(p + q, 2)) reached.insert(su_class_of_cocycle(s, p, q).n_plus);
            const std::size_t a = reference_signature(p, q).n_plus;
            for (std::size_t k = a % 2; k <= p + q; k += 2) expect.insert(k);
            CHECK(reached == expect);
        }
    }
    std::size_t count = 0;
    for (const auto& s : h1_real_torsion(3, 4)) count += su_class_of_cocycle(s, 2, 1) != reference_signature(2, 1);
    CHECK(count == 1);
}

TEST_CASE("delta images") {
    CHECK(labels(delta_image(2, 1, 2)) == std::vector<std::string>{"(1,1,1)", "(1,-1,-1)", "(-1,1,-1)"});
    CHECK_FALSE(is_subgroup(delta_image(2, 1, 2)));
    CHECK(delta_image(2, 1, 3).size() == 1);
    CHECK(labels(delta_image(2, 1, 4)) == labels(delta_image(2, 1, 2)));
    for (std::size_t p = 2; p <= 3; ++p) {
        for (std::size_t q = 1; q <= 2; ++q) {
            const auto d = delta_image(p, q, 2);
            CHECK(d.front().is_identity());
            CHECK_FALSE(is_subgroup(d));
            // diag(-1, 1, ..., -1) and diag(1, -1, ..., -1) are in, their product is not
            std::vector<int> a(p + q, 1), b(p + q, 1);
            a[0] = a[p + q - 1] = -1;
            b[1] = b[p + q - 1] = -1;
            const SignSequence sa(a), sb(b);
            CHECK(std::find(d.begin(), d.end(), sa) != d.end());
            CHECK(std::find(d.begin(), d.end(), sb) != d.end());
            CHECK(std::find(d.begin(), d.end(), sa * sb) == d.end());
        }
    }
    CHECK(is_subgroup(std::vector<SignSequence>{SignSequence::identity(3)}));
}

TEST_CASE("subgroups of finite abelian groups") {
    const FiniteAbelianGroup h({2, 4});
    CHECK(is_subgroup({{0, 0}}, h));
    CHECK(is_subgroup({{0, 0}, {0, 2}, {1, 0}, {1, 2}}, h));
    CHECK_FALSE(is_subgroup({{0, 0}, {0, 1}}, h));
    CHECK_FALSE(is_subgroup({}, h));
    CHECK(generated_subgroup({{0, 1}}, h).size() == 4);
    CHECK(generated_subgroup({{1, 1}, {0, 2}}, h).size() == 4);
    CHECK(generated_subgroup({{1, 0}, {0, 1}}, h).size() == 8);
}

TEST_CASE("conditions (*) and (**)") {
    SUBCASE("no real places") {
        const ConditionInput in;
        CHECK(check_condition_star(in).holds);
        CHECK(check_condition_double_star(in).holds);
    }
    SUBCASE("SU(2,1)/T with trivial Sha") {
        ConditionInput in;
        in.places.push_back(place_from_sign_sequences("real", 3, 2, delta_image(2, 1, 2)));
        const auto star = check_condition_star(in);
        CHECK_FALSE(star.holds);
        REQUIRE(star.certificate);
        CHECK(SignSequence::from_bits(3, (*star.certificate)[0]).label() == "(-1,-1,1)");
        CHECK_FALSE(check_condition_double_star(in).holds);
    }
    SUBCASE("Sha covering the gap") {
        ConditionInput in;
        in.places.push_back(place_from_sign_sequences("real", 3, 2, delta_image(2, 1, 2)));
        in.sha_image = {{0, 0}, {1, 1}};
        CHECK(check_condition_star(in).holds);
        CHECK(check_condition_double_star(in).holds);
    }
    SUBCASE("surjective delta") {
        ConditionInput in;
        in.places.push_back(PlaceData{"v", FiniteAbelianGroup({2, 2}), {{0, 0}, {0, 1}, {1, 0}, {1, 1}}});
        CHECK(check_condition_star(in).holds);
    }
    SUBCASE("central mu_2 with trivial delta-image") {
        ConditionInput in;
        in.places.push_back(PlaceData{"v", FiniteAbelianGroup({2}), {{0}}});
        CHECK_FALSE(check_condition_star(in).holds);
        CHECK(check_condition_double_star(in).holds);
    }
    SUBCASE("subgroups at every place") {
        ConditionInput in;
        in.places.push_back(PlaceData{"v", FiniteAbelianGroup({2, 2}), {{0, 0}, {1, 1}}});
        in.places.push_back(PlaceData{"w", FiniteAbelianGroup({4}), {{0}, {2}}});
        CHECK(check_condition_double_star(in).holds);
    }
    SUBCASE("invalid input") {
        ConditionInput in;
        in.places.push_back(PlaceData{"v", FiniteAbelianGroup({2}), {{1}}});
        CHECK_THROWS_AS(validate_condition_input(in), InputError);
    }
}

TEST_CASE("(*) implies (**) on random inputs") {
    std::mt19937_64 rng(99);
    int star_true = 0;
    for (int t = 0; t < 300; ++t) {
        ConditionInput in;
        const int places = static_cast<int>(rng() % 3);
        std::vector<std::int64_t> all_factors;
        for (int v = 0; v < places; ++v) {
            std::vector<std::int64_t> f;
            const int rank = 1 + static_cast<int>(rng() % 2);
            for (int i = 0; i < rank; ++i) f.push_back(2 + static_cast<std::int64_t>(rng() % 3));
            const FiniteAbelianGroup h(f);
            PlaceData pd{"v" + std::to_string(v), h, {h.zero()}};
            for (std::size_t i = 1; i < h.cardinality(); ++i) {
                if (rng() % 3 == 0) pd.delta_image.push_back(h.element(i));
            }
            all_factors.insert(all_factors.end(), f.begin(), f.end());
            in.places.push_back(pd);
        }
        if (!all_factors.empty() && rng() % 2) {
            const FiniteAbelianGroup total(all_factors);
            in.sha_image = generated_subgroup({total.element(rng() % total.cardinality())}, total);
        }
        const bool star = check_condition_star(in).holds;
        star_true += star;
        if (star) CHECK(check_condition_double_star(in).holds);
    }
    CHECK(star_true > 0);
}
