#include <doctest.h>

#include <random>

#include "galcoh/errors.hpp"
#include "galcoh/local_symbols.hpp"
#include "oracles.hpp"

using namespace galcoh;

namespace {

mpq_class q(long n, long d = 1) {
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

const Place R = Place::real();
const Place P2 = Place::finite(2);
const Place P3 = Place::finite(3);
const Place P5 = Place::finite(5);
const Place P7 = Place::finite(7);

} // namespace

TEST_CASE("places and rationals") {
    CHECK(Place::parse("real").is_real());
    CHECK(Place::parse("inf").is_real());
    CHECK(Place::parse("7").prime() == 7);
    CHECK_THROWS_AS(Place::parse("6"), InputError);
    CHECK_THROWS_AS(Place::parse("1"), InputError);
    CHECK_THROWS_AS(Place::parse("x"), InputError);
    CHECK(parse_rational("-3/6") == q(-1, 2));
    CHECK(parse_rational("5") == 5);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK(prime_divisors(q(-12, 35)) == std::vector<std::uint64_t>{2, 3, 5, 7});
}

TEST_CASE("local squares") {
    CHECK(is_square_local(-1, P5));
    CHECK_FALSE(is_square_local(-1, R));
    CHECK_FALSE(is_square_local(-1, P3));
    CHECK_FALSE(is_square_local(2, P2));
    CHECK(is_square_local(17, P2));
    CHECK_FALSE(is_square_local(5, P2));
    CHECK(is_square_local(q(4, 9), P3));
    CHECK_FALSE(is_square_local(3, P3));
    CHECK(is_square_local(2, P7));
    CHECK_THROWS_AS(is_square_local(0, P5), InputError);
}

TEST_CASE("Hilbert symbol values") {
    CHECK(hilbert_symbol(-1, -1, R) == -1);
    CHECK(hilbert_symbol(-1, -1, P2) == -1);
    CHECK(hilbert_symbol(-1, -1, P3) == 1);
    CHECK(hilbert_symbol(2, 3, P3) == -1);
    CHECK(hilbert_symbol(5, 5, P5) == 1);
    CHECK(hilbert_symbol(3, 3, P3) == -1);
    CHECK(local_invariant(-1, -1, R) == 1);
    CHECK(local_invariant(1, 7, P7) == 0);
    CHECK_THROWS_AS(hilbert_symbol(0, 1, P2), InputError);
}

TEST_CASE("Hilbert symbols agree with a Hensel search") {
    const std::vector<long long> primes{0, 2, 3, 5, 7};
    std::size_t cases = 0;
    for (long n1 = -20; n1 <= 20; ++n1) {
        for (long n2 = -20; n2 <= 20; n2 += 3) {
            if (n1 == 0 || n2 == 0) continue;
            const mpq_class a = q(n1, 1 + (n2 + 21) % 4), b = q(n2, 1 + (n1 + 21) % 3);
            for (long long p : primes) {
                const Place v = p == 0 ? R : Place::finite(static_cast<std::uint64_t>(p));
                CHECK(hilbert_symbol(a, b, v) ==
                      oracle::hilbert_by_search(oracle::integer_representative(a), oracle::integer_representative(b), p));
                ++cases;
            }
        }
    }
    CHECK(cases > 2000);
}

TEST_CASE("symbol identities") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-60, 60), den(1, 12);
    const std::vector<Place> places{R, P2, P3, P5, P7, Place::finite(11), Place::finite(13)};
    auto rnd = [&] {
        long n = 0;
        while (n == 0) n = num(rng);
        return q(n, den(rng));
    };
    for (int t = 0; t < 200; ++t) {
        const mpq_class a = rnd(), b = rnd(), c = rnd();
        for (const auto& v : places) {
            CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
            CHECK(hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
            CHECK(hilbert_symbol(a, -a, v) == 1);
            if (a != 1) CHECK(hilbert_symbol(a, 1 - a, v) == 1);
            CHECK(hilbert_symbol(a, b * b, v) == 1);
            // (a, b) = 1 iff a is a norm from Q_v(sqrt b)
            CHECK((hilbert_symbol(-1, a, v) == 1) == is_norm_from_gaussian(a, v));
        }
        // at the real place the symbol is -1 exactly when both are negative
        CHECK((hilbert_symbol(a, b, R) == -1) == (a < 0 && b < 0));
    }
}

TEST_CASE("product formula") {
    const InvariantSum s = invariant_sum(-1, -1);
    std::vector<std::string> nonzero;
    for (const auto& [v, inv] : s.local) {
        if (inv) nonzero.push_back(v.name());
    }
    CHECK(nonzero == std::vector<std::string>{"real", "2"});
    CHECK(s.total == 0);
    for (const auto& [v, inv] : invariant_sum(1, 15).local) CHECK(inv == 0);

    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 50);
    for (int t = 0; t < 100; ++t) {
        long n1 = 0, n2 = 0;
        while (n1 == 0) n1 = num(rng);
        while (n2 == 0) n2 = num(rng);
        const mpq_class a = q(n1, den(rng)), b = q(n2, den(rng));
        const InvariantSum sum = invariant_sum(a, b);
        CHECK(sum.total == 0);
        int total = 0;
        for (const auto& [v, inv] : sum.local) total += inv;
        CHECK(total % 2 == 0);
        // places outside 2ab contribute nothing
        for (std::uint64_t p : {11ULL, 13ULL, 101ULL}) {
            auto divs = prime_divisors(a);
            for (auto d : prime_divisors(b)) divs.push_back(d);
            if (std::find(divs.begin(), divs.end(), p) == divs.end()) CHECK(local_invariant(a, b, Place::finite(p)) == 0);
        }
    }
}

TEST_CASE("isotropy of x^2 + y^2 + z^2") {
    const TernaryForm f(1, 1, 1);
    const auto r5 = ternary_isotropic(f, P5);
    CHECK(r5.isotropic);
    REQUIRE(r5.witness);
    CHECK(verify_padic_witness(f, *r5.witness, 5));
    CHECK(r5.witness->precision == kWitnessPrecision);
    // the witness by hand
    mpz_class mod = 1;
    for (int i = 0; i < r5.witness->precision; ++i) mod *= 5;
    const auto& w = r5.witness->padic;
    const mpz_class value = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    CHECK(value % mod == 0);
    CHECK((w[0] % 5 != 0 || w[1] % 5 != 0 || w[2] % 5 != 0));

    CHECK_FALSE(ternary_isotropic(f, R).isotropic);
    CHECK_FALSE(ternary_isotropic(f, P2).isotropic);
    CHECK(ternary_isotropic(f, P3).isotropic);

    const TernaryForm g(1, 1, -2);
    const auto rr = ternary_isotropic(g, R);
    CHECK(rr.isotropic);
    REQUIRE(rr.witness);
    CHECK(verify_real_witness(g, *rr.witness));

    CHECK_THROWS_AS(TernaryForm(0, 1, 1), InputError);

    IsotropyWitness bad = *r5.witness;
    bad.padic[0] += 1;
    CHECK_FALSE(verify_padic_witness(f, bad, 5));
}

TEST_CASE("isotropy matches the symbol") {
    // a x^2 + b y^2 + c z^2 is isotropic iff (-ac, -bc)_v = 1
    const std::vector<Place> places{R, P2, P3, P5, P7};
    for (long a : {1, -1, 2, -3, 5, 6}) {
        for (long b : {1, -2, 3, 7, -5}) {
            for (long c : {-1, 1, 3, -6}) {
                const TernaryForm f(a, b, c);
                for (const auto& v : places) {
                    const auto r = ternary_isotropic(f, v);
                    CHECK(r.isotropic == (hilbert_symbol(-a * c, -b * c, v) == 1));
                    if (r.isotropic && r.witness) {
                        if (v.is_real()) {
                            CHECK(verify_real_witness(f, *r.witness));
                        } else {
                            CHECK(verify_padic_witness(f, *r.witness, v.prime()));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("-1 as a norm from Q(i)") {
    CHECK(is_norm_from_gaussian(-1, P5));
    CHECK_FALSE(is_norm_from_gaussian(-1, R));
    CHECK(is_norm_from_gaussian(2, R));
    CHECK(is_norm_from_gaussian(5, P5));
    CHECK_FALSE(is_norm_from_gaussian(3, P3));
}
