#include "galcoh/local_symbols.hpp"

#include <cmath>
#include <set>

#include "galcoh/errors.hpp"

namespace galcoh {

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

void require_nonzero(const mpq_class& a, const char* what) {
    if (a == 0) throw InputError(std::string(what) + " must be nonzero");
}

// a and num*den differ by the square den^2
mpz_class integerize(const mpq_class& a) { return a.get_num() * a.get_den(); }

// n = p^v u with p not dividing u
int split_valuation(mpz_class& n, std::uint64_t p) {
    int v = 0;
    const mpz_class pp(static_cast<unsigned long>(p));
    while (n != 0 && mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
        n /= pp;
        ++v;
    }
    return v;
}

unsigned long residue(const mpz_class& u, unsigned long m) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), m);
    return r.get_ui();
}

int legendre(const mpz_class& u, std::uint64_t p) {
    const mpz_class pp(static_cast<unsigned long>(p));
    return mpz_legendre(u.get_mpz_t(), pp.get_mpz_t());
}

mpz_class pow_p(std::uint64_t p, int k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

// valuation of a nonzero rational
int valuation_q(const mpq_class& a, std::uint64_t p) {
    mpz_class n = a.get_num(), d = a.get_den();
    return split_valuation(n, p) - split_valuation(d, p);
}

// A rational p-adic unit reduced mod p^m.
mpz_class unit_mod(const mpq_class& u, std::uint64_t p, int m) {
    const mpz_class mod = pow_p(p, m);
    mpz_class inv;
    const mpz_class den = u.get_den();
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) throw InternalError("denominator is not a p-adic unit");
    mpz_class r = u.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
}

// Square root of a unit square u mod p^m, by Hensel lifting.
std::optional<mpz_class> sqrt_unit(const mpz_class& u, std::uint64_t p, int m) {
    const mpz_class mod = pow_p(p, m);
    if (p == 2) {
        if (residue(u, 8) != 1) return std::nullopt;
        mpz_class r = 1;
        for (int i = 3; i < m; ++i) {
            // keep r^2 = u mod 2^(i+1)
            const mpz_class m1 = pow_p(2, i + 1);
            mpz_class diff = r * r - u;
            mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), m1.get_mpz_t());
            if (diff != 0) r += pow_p(2, i - 1);
        }
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
        return r;
    }
    const unsigned long up = residue(u, static_cast<unsigned long>(p));
    std::optional<unsigned long> r0;
    for (unsigned long t = 1; t < p; ++t) {
        if ((t * t) % p == up) {
            r0 = t;
            break;
        }
    }
    if (!r0) return std::nullopt;
    mpz_class r = static_cast<unsigned long>(*r0);
    for (int prec = 1; prec < m; prec *= 2) {
        // Newton step r <- r - (r^2 - u) / (2r)
        mpz_class inv;
        const mpz_class two_r = 2 * r;
        mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), mod.get_mpz_t());
        r = r - (r * r - u) * inv;
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    }
    return r;
}

std::array<mpz_class, 3> integral_coefficients(const TernaryForm& q) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), q.a.get_den().get_mpz_t(), q.b.get_den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.c.get_den().get_mpz_t());
    const mpq_class lq(l);
    return {mpq_class(q.a * lq).get_num(), mpq_class(q.b * lq).get_num(), mpq_class(q.c * lq).get_num()};
}

std::optional<IsotropyWitness> padic_witness(const TernaryForm& q, std::uint64_t p) {
    const std::array<mpq_class, 3> coef{q.a, q.b, q.c};
    const int prec = kWitnessPrecision;
    const std::uint64_t range = p * p;
    // solve for the middle variable first, then the others
    for (int s : {1, 0, 2}) {
        const int i = s == 0 ? 1 : 0;
        const int j = s == 2 ? 1 : 2;
        for (std::uint64_t xi = 0; xi < range; ++xi) {
            for (std::uint64_t xj = 0; xj < range; ++xj) {
                if ((xi % p == 0) && (xj % p == 0)) continue;
                const mpq_class t = -(coef[static_cast<std::size_t>(i)] * xi * xi + coef[static_cast<std::size_t>(j)] * xj * xj) /
                                    coef[static_cast<std::size_t>(s)];
                IsotropyWitness w;
                w.precision = prec;
                w.padic[static_cast<std::size_t>(i)] = static_cast<unsigned long>(xi);
                w.padic[static_cast<std::size_t>(j)] = static_cast<unsigned long>(xj);
                if (t == 0) {
                    w.padic[static_cast<std::size_t>(s)] = 0;
                } else {
                    if (!is_square_local(t, Place::finite(p))) continue;
                    const int v = valuation_q(t, p);
                    if (v < 0) continue;  // the solved coordinate would not be integral
                    const mpq_class u = t / mpq_class(pow_p(p, v));
                    const auto r = sqrt_unit(unit_mod(u, p, prec + 4), p, prec + 4);
                    if (!r) continue;
                    w.padic[static_cast<std::size_t>(s)] = pow_p(p, v / 2) * *r;
                }
                const mpz_class mod = pow_p(p, prec);
                for (auto& x : w.padic) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
                if (verify_padic_witness(q, w, p)) return w;
            }
        }
    }
    return std::nullopt;
}

} // namespace

Place Place::finite(std::uint64_t p) {
    if (!is_prime(p)) throw InputError("place must be 'real' or a prime, got " + std::to_string(p));
    return Place(p);
}

Place Place::parse(const std::string& s) {
    if (s == "real" || s == "inf" || s == "infinity" || s == "R") return real();
    std::uint64_t p = 0;
    if (s.empty() || s.size() > 18) throw InputError("cannot parse place '" + s + "'");
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw InputError("cannot parse place '" + s + "'");
        p = p * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return finite(p);
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw InputError("cannot parse rational '" + s + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

TernaryForm::TernaryForm(mpq_class a_, mpq_class b_, mpq_class c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a == 0 || b == 0 || c == 0) throw InputError("ternary form is degenerate (zero coefficient)");
}

mpq_class TernaryForm::evaluate(const mpq_class& x, const mpq_class& y, const mpq_class& z) const {
    return a * x * x + b * y * y + c * z * z;
}

bool is_square_local(const mpq_class& a, const Place& v) {
    require_nonzero(a, "argument");
    if (v.is_real()) return a > 0;
    mpz_class n = integerize(a);
    const int val = split_valuation(n, v.prime());
    if (val % 2 != 0) return false;
    if (v.prime() == 2) return residue(n, 8) == 1;
    return legendre(n, v.prime()) == 1;
}

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v) {
    require_nonzero(a, "first argument");
    require_nonzero(b, "second argument");
    if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
    const std::uint64_t p = v.prime();
    mpz_class u = integerize(a), w = integerize(b);
    const int alpha = split_valuation(u, p);
    const int beta = split_valuation(w, p);
    if (p == 2) {
        const unsigned long u8 = residue(u, 8), w8 = residue(w, 8);
        const int eu = (u8 % 4 == 3), ew = (w8 % 4 == 3);
        const int ou = (u8 == 3 || u8 == 5), ow = (w8 == 3 || w8 == 5);
        const int e = eu * ew + alpha * ow + beta * ou;
        return (e % 2) ? -1 : 1;
    }
    int s = 1;
    if ((alpha * beta) % 2 && ((p - 1) / 2) % 2) s = -s;
    if (beta % 2) s *= legendre(u, p);
    if (alpha % 2) s *= legendre(w, p);
    return s;
}

int local_invariant(const mpq_class& a, const mpq_class& b, const Place& v) {
    return hilbert_symbol(a, b, v) == 1 ? 0 : 1;
}

bool verify_padic_witness(const TernaryForm& q, const IsotropyWitness& w, std::uint64_t p) {
    if (w.precision <= 0) return false;
    const mpz_class pp(static_cast<unsigned long>(p));
    bool primitive = false;
    for (const auto& x : w.padic) {
        if (!mpz_divisible_p(x.get_mpz_t(), pp.get_mpz_t())) primitive = true;
    }
    if (!primitive) return false;
    const auto c = integral_coefficients(q);
    mpz_class val = c[0] * w.padic[0] * w.padic[0] + c[1] * w.padic[1] * w.padic[1] + c[2] * w.padic[2] * w.padic[2];
    const mpz_class mod = pow_p(p, w.precision);
    return mpz_divisible_p(val.get_mpz_t(), mod.get_mpz_t()) != 0;
}

bool verify_real_witness(const TernaryForm& q, const IsotropyWitness& w, double tol) {
    const double a = q.a.get_d(), b = q.b.get_d(), c = q.c.get_d();
    const auto& x = w.real;
    const double norm2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (norm2 == 0) return false;
    const double val = a * x[0] * x[0] + b * x[1] * x[1] + c * x[2] * x[2];
    return std::fabs(val) <= tol * (std::fabs(a) + std::fabs(b) + std::fabs(c)) * norm2;
}

IsotropyResult ternary_isotropic(const TernaryForm& q, const Place& v) {
    IsotropyResult r;
    r.isotropic = hilbert_symbol(-q.a / q.c, -q.b / q.c, v) == 1;
    if (!r.isotropic) return r;
    if (v.is_real()) {
        const std::array<mpq_class, 3> c{q.a, q.b, q.c};
        for (std::size_t i = 0; i < 3 && !r.witness; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                if (sgn(c[i]) == sgn(c[j])) continue;
                IsotropyWitness w;
                w.real[i] = std::sqrt(std::fabs(c[j].get_d()));
                w.real[j] = std::sqrt(std::fabs(c[i].get_d()));
                r.witness = w;
                break;
            }
        }
        return r;
    }
    r.witness = padic_witness(q, v.prime());
    return r;
}

bool is_norm_from_gaussian(const mpq_class& a, const Place& v) {
    require_nonzero(a, "argument");
    return hilbert_symbol(-1, a, v) == 1;
}

std::vector<std::uint64_t> prime_divisors(const mpq_class& a) {
    std::set<std::uint64_t> out;
    for (mpz_class n : {mpz_class(abs(a.get_num())), mpz_class(a.get_den())}) {
        for (unsigned long d = 2; mpz_class(d) * d <= n; ++d) {
            if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
                out.insert(d);
                while (mpz_divisible_ui_p(n.get_mpz_t(), d)) n /= d;
            }
        }
        if (n > 1) {
            if (!n.fits_ulong_p()) throw ResourceError("prime factor too large");
            out.insert(n.get_ui());
        }
    }
    return {out.begin(), out.end()};
}

InvariantSum invariant_sum(const mpq_class& a, const mpq_class& b) {
    require_nonzero(a, "first argument");
    require_nonzero(b, "second argument");
    std::set<std::uint64_t> primes{2};
    for (auto p : prime_divisors(a)) primes.insert(p);
    for (auto p : prime_divisors(b)) primes.insert(p);
    InvariantSum s;
    s.local.emplace_back(Place::real(), local_invariant(a, b, Place::real()));
    for (auto p : primes) s.local.emplace_back(Place::finite(p), local_invariant(a, b, Place::finite(p)));
    for (const auto& [pl, inv] : s.local) s.total += inv;
    s.total %= 2;
    return s;
}

} // namespace galcoh
