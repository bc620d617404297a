#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace galcoh {

/// A place of Q: the real place or a prime p.
class Place {
public:
    static Place real() { return Place(0); }
    /// Throws InputError unless p is prime.
    static Place finite(std::uint64_t p);
    /// "real", "inf" or a prime in decimal.
    static Place parse(const std::string& s);

    bool is_real() const { return p_ == 0; }
    std::uint64_t prime() const { return p_; }
    std::string name() const { return is_real() ? "real" : std::to_string(p_); }
    bool operator==(const Place& o) const { return p_ == o.p_; }
    bool operator<(const Place& o) const { return p_ < o.p_; }

private:
    explicit Place(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

/// Parses "a", "-a", "a/b" into a rational; throws InputError on junk.
mpq_class parse_rational(const std::string& s);

/// a x^2 + b y^2 + c z^2 with nonzero rational coefficients.
struct TernaryForm {
    mpq_class a, b, c;
    /// Throws InputError for a zero coefficient.
    TernaryForm(mpq_class a_, mpq_class b_, mpq_class c_);
    mpq_class evaluate(const mpq_class& x, const mpq_class& y, const mpq_class& z) const;
};

bool is_square_local(const mpq_class& a, const Place& v);

/// (a, b)_v in {+1, -1}.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v);

/// Local invariant of the quaternion algebra (a, b) at v: 0 or 1 (meaning 1/2).
int local_invariant(const mpq_class& a, const mpq_class& b, const Place& v);

/// Witness of isotropy. At a prime p the coordinates are integers with
/// q(x) = 0 mod p^precision (after clearing denominators of q) and at least
/// one coordinate a p-adic unit. At the real place the coordinates are reals.
struct IsotropyWitness {
    std::array<mpz_class, 3> padic;
    int precision = 0;
    std::array<double, 3> real{};
};

struct IsotropyResult {
    bool isotropic = false;
    std::optional<IsotropyWitness> witness;
};

/// Precision (in powers of p) of p-adic witnesses.
inline constexpr int kWitnessPrecision = 6;

IsotropyResult ternary_isotropic(const TernaryForm& q, const Place& v);

/// Checks a p-adic witness against q: primitive and q(w) = 0 mod p^precision.
bool verify_padic_witness(const TernaryForm& q, const IsotropyWitness& w, std::uint64_t p);
/// |q(w)| <= tol * sum |coefficient| * |w|^2
bool verify_real_witness(const TernaryForm& q, const IsotropyWitness& w, double tol = 1e-9);

bool is_norm_from_gaussian(const mpq_class& a, const Place& v);

struct InvariantSum {
    std::vector<std::pair<Place, int>> local;  // invariant 0 or 1 (= 1/2) per place
    int total = 0;                             // sum mod 1, again as 0 or 1
};

/// Invariants of (a, b) at the real place and all primes dividing 2ab.
InvariantSum invariant_sum(const mpq_class& a, const mpq_class& b);

/// Primes dividing the numerator or denominator of a.
std::vector<std::uint64_t> prime_divisors(const mpq_class& a);

} // namespace galcoh
