#include "galcoh/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "galcoh/cohomology.hpp"
#include "galcoh/config.hpp"
#include "galcoh/errors.hpp"
#include "galcoh/extensions.hpp"
#include "galcoh/local_symbols.hpp"
#include "galcoh/pairing.hpp"
#include "galcoh/real_galois.hpp"

namespace galcoh {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string tuple_str(const std::vector<std::int64_t>& v) {
    std::vector<std::string> parts;
    for (auto x : v) parts.push_back(std::to_string(x));
    return "(" + join(parts, ",") + ")";
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- checks

std::string check_magma() {
    const GroupPtr g = make_abelian({2, 4, 4});
    // the Z/2 factor acts on mu_4 by inversion
    const ModulePtr mu4 = make_module(g, {4}, {IntMatrix::scalar(3), IntMatrix::scalar(1), IntMatrix::scalar(1)});
    return "invariant factors " + tuple_str(cohomology_group(mu4, 2).invariant_factors());
}

std::string check_d8() {
    const CohomologyClass d8 = d8_class();
    const Extension e = extension_from_cocycle(d8.representative());
    std::vector<std::string> parts{"extension " + fingerprint_small_group(*e.total)};
    const GroupPtr v4 = d8.parent().module()->group_ptr();
    const GroupPtr gal = real_galois_group();
    const FiniteAbelianGroup h1({2, 2});
    for (std::size_t i = 0; i < h1.cardinality(); ++i) {
        const GroupHom f(gal, v4, {0, static_cast<Elem>(i)});
        const CohomologyGroup target = cohomology_group(pullback_module(f, d8.parent().module()), 2);
        const CohomologyClass x = pullback_class(f, d8, target);
        const Extension ex = extension_from_cocycle(x.representative());
        parts.push_back(tuple_str(h1.element(i)) + " " + (is_split(x) ? "split " : "nonsplit ") +
                        fingerprint_small_group(*ex.total));
    }
    return join(parts, "; ");
}

std::string check_delta_image() {
    std::vector<std::string> parts;
    std::vector<std::string> labels;
    for (const auto& s : delta_image(2, 1, 2)) labels.push_back(s.label());
    parts.push_back("(2,1) {" + join(labels, ",") + "} subgroup=" + bool_str(is_subgroup(delta_image(2, 1, 2))));
    for (auto [p, q] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 1}}) {
        const auto d = delta_image(p, q, 2);
        parts.push_back("(" + std::to_string(p) + "," + std::to_string(q) + ") " + std::to_string(d.size()) + "/" +
                        std::to_string(h1_real_torsion(p + q, 2).size()) + " subgroup=" + bool_str(is_subgroup(d)));
    }
    return join(parts, "; ");
}

std::string check_alpha() {
    const AlphaData a = alpha_class_T2();
    const auto sections = real_sections(a.pi, [](const ModElem& u) { return t2_sign_sequence(u).label(); });
    const EvaluationTable t = evaluation_table(a.alpha, sections);
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < t.labels.size(); ++i) parts.push_back(t.labels[i] + "->" + (t.values[i] ? "1/2" : "0"));
    const LinearityResult lin = is_left_linear({a.alpha}, a.pi, sections);
    std::string out = join(parts, " ") + "; linear=" + bool_str(lin.linear);
    if (lin.violation) {
        const auto& v = *lin.violation;
        out += " violation " + v[0] + "+" + v[1] + "=" + v[2];
    }
    return out;
}

std::string check_t4() {
    const ModulePtr mu = torus_torsion_module(4);
    const Pi1Real pi = pi1_real(mu);
    const auto sections = real_sections(pi, [](const ModElem& u) { return torus_sign_sequence(u, 4).label(); });
    const CohomologyGroup h2 = cohomology_group(make_trivial_module(pi.group, {2}), 2);
    std::vector<CohomologyClass> basis;
    for (std::size_t i = 0; i < h2.num_generators(); ++i) basis.push_back(h2.basis_class(i));
    const LinearityResult lin = is_left_linear(basis, pi, sections);
    const KunnethPairingReport rep = kunneth_pairing_analysis(mu);
    std::ostringstream os;
    os << "H^2 = " << h2.describe() << "; sections=" << sections.size() << " pairs=" << sections.size() * sections.size()
       << " linear=" << bool_str(lin.linear) << "; components";
    for (const auto& c : rep.components) os << " [" << c.name << " dim " << c.classes << " linear=" << bool_str(c.linear) << "]";
    os << "; inner H1xH1 classes=" << rep.inner_classes.value_or(0) << " zero=" << bool_str(rep.inner_zero);
    return os.str();
}

std::string check_su21() {
    const auto h1 = h1_real_torsion(3, 4);
    const Signature ref = reference_signature(2, 1);
    std::vector<std::string> nontrivial;
    for (const auto& s : h1) {
        const Signature sig = su_class_of_cocycle(s, 2, 1);
        if (sig != ref) nontrivial.push_back(s.label() + " signature " + sig.str());
    }
    return "nontrivial " + std::to_string(nontrivial.size()) + " of " + std::to_string(h1.size()) + ": " +
           join(nontrivial, ", ");
}

std::string certificate_str(const ConditionResult& r, const ConditionInput& in, const std::vector<std::size_t>& n) {
    if (!r.certificate) return "";
    std::vector<std::string> parts;
    for (std::size_t v = 0; v < in.places.size(); ++v) {
        parts.push_back(n[v] ? SignSequence::from_bits(n[v], (*r.certificate)[v]).label() : tuple_str((*r.certificate)[v]));
    }
    return " missing " + join(parts, "x");
}

std::string check_conditions() {
    std::vector<std::string> parts;
    for (auto [p, q] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {2, 2}}) {
        ConditionInput in;
        in.places.push_back(place_from_sign_sequences("real", p + q, 2, delta_image(p, q, 2)));
        const auto star = check_condition_star(in);
        const auto dstar = check_condition_double_star(in);
        parts.push_back("SU(" + std::to_string(p) + "," + std::to_string(q) + ")/T R=0: star=" + bool_str(star.holds) +
                        certificate_str(star, in, {p + q}) + " dstar=" + bool_str(dstar.holds));
    }
    {
        ConditionInput in;
        in.places.push_back(PlaceData{"real", FiniteAbelianGroup({2}), {{0}}});
        parts.push_back("central mu2: dstar=" + bool_str(check_condition_double_star(in).holds));
    }
    {
        const ConditionInput in;
        parts.push_back("no real places: star=" + bool_str(check_condition_star(in).holds) +
                        " dstar=" + bool_str(check_condition_double_star(in).holds));
    }
    return join(parts, "; ");
}

// ------------------------------------------------ local symbol search

std::int64_t squarefree_kernel(std::int64_t n) {
    std::int64_t sign = n < 0 ? -1 : 1;
    n *= sign;
    std::int64_t out = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    return sign * out * n;
}

int vp(std::int64_t n, std::int64_t p) {
    int e = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Depth-first lifting of primitive solutions of z^2 = a x^2 + b y^2 from
// p^k to p^(k+1), up to p^target.
bool lift(std::int64_t a, std::int64_t b, std::int64_t p, int k, std::int64_t pk, int target, std::int64_t x,
          std::int64_t y, std::int64_t z) {
    if (k == target) return true;
    const std::int64_t next = pk * p;
    for (std::int64_t i = 0; i < p; ++i) {
        for (std::int64_t j = 0; j < p; ++j) {
            for (std::int64_t l = 0; l < p; ++l) {
                const std::int64_t X = x + i * pk, Y = y + j * pk, Z = z + l * pk;
                const __int128 f = static_cast<__int128>(Z) * Z - static_cast<__int128>(a) * X * X -
                                   static_cast<__int128>(b) * Y * Y;
                if (f % next != 0) continue;
                if (lift(a, b, p, k + 1, next, target, X, Y, Z)) return true;
            }
        }
    }
    return false;
}

// Hilbert symbol by searching primitive solutions modulo p^(2 v_p(4ab) + 3).
int searched_symbol(std::int64_t a, std::int64_t b, std::uint64_t prime) {
    const auto p = static_cast<std::int64_t>(prime);
    a = squarefree_kernel(a);
    b = squarefree_kernel(b);
    const int target = 2 * vp(4 * a * b, p) + 3;
    for (std::int64_t x = 0; x < p; ++x) {
        for (std::int64_t y = 0; y < p; ++y) {
            for (std::int64_t z = 0; z < p; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                if (mod(z * z - a * x * x - b * y * y, p) != 0) continue;
                if (lift(a, b, p, 1, p, target, x, y, z)) return 1;
            }
        }
    }
    return -1;
}

std::int64_t integerize(const mpq_class& q) {
    return q.get_num().get_si() * q.get_den().get_si();
}

std::string check_local_symbols(std::mt19937_64& rng) {
    std::vector<std::string> parts;
    const TernaryForm sum3(1, 1, 1);
    const IsotropyResult at5 = ternary_isotropic(sum3, Place::finite(5));
    const bool witness_ok = at5.witness && verify_padic_witness(sum3, *at5.witness, 5);
    parts.push_back("x^2+y^2+z^2: Q5 isotropic=" + bool_str(at5.isotropic) + " witness=" + (witness_ok ? "verified" : "missing") +
                    " R isotropic=" + bool_str(ternary_isotropic(sum3, Place::real()).isotropic) +
                    " Q2 isotropic=" + bool_str(ternary_isotropic(sum3, Place::finite(2)).isotropic));
    parts.push_back("-1 square: Q5=" + bool_str(is_square_local(-1, Place::finite(5))) +
                    " R=" + bool_str(is_square_local(-1, Place::real())));

    std::uniform_int_distribution<long> num(-60, 60), den(1, 60);
    auto random_rational = [&] {
        long n = 0;
        while (n == 0) n = num(rng);
        return mpq_class(n, den(rng));
    };
    int bad_totals = 0;
    for (int i = 0; i < 100; ++i) {
        mpq_class a = random_rational(), b = random_rational();
        a.canonicalize();
        b.canonicalize();
        if (invariant_sum(a, b).total != 0) ++bad_totals;
    }
    parts.push_back("product formula nonzero totals=" + std::to_string(bad_totals) + " of 100");

    std::vector<mpq_class> corpus;
    for (long n = -20; n <= 20; ++n) {
        for (long d = 1; d <= 20; ++d) {
            if (n == 0) continue;
            mpq_class q(n, d);
            q.canonicalize();
            if (q.get_den() == d) corpus.push_back(q);
        }
    }
    std::map<std::tuple<std::int64_t, std::int64_t, std::uint64_t>, int> memo;
    std::size_t mismatches = 0;
    for (std::uint64_t p : {0u, 2u, 3u, 5u, 7u}) {
        const Place v = p ? Place::finite(p) : Place::real();
        for (const auto& a : corpus) {
            for (const auto& b : corpus) {
                int expected;
                if (!p) {
                    expected = (a < 0 && b < 0) ? -1 : 1;
                } else {
                    const auto key = std::make_tuple(squarefree_kernel(integerize(a)), squarefree_kernel(integerize(b)), p);
                    auto it = memo.find(key);
                    if (it == memo.end()) it = memo.emplace(key, searched_symbol(std::get<0>(key), std::get<1>(key), p)).first;
                    expected = it->second;
                }
                if (hilbert_symbol(a, b, v) != expected) ++mismatches;
            }
        }
    }
    parts.push_back("search oracle mismatches=" + std::to_string(mismatches));
    return join(parts, "; ");
}

// ----------------------------------------------------- property suites

// Cohomology order by enumerating normalized cochains.
std::uint64_t brute_force_order(const GModule& m, int n) {
    const FiniteGroup& g = m.group();
    const FiniteAbelianGroup& a = m.coefficients();
    const std::size_t G = g.order(), A = a.cardinality();
    std::vector<std::size_t> add(A * A), act(G * A);
    for (std::size_t x = 0; x < A; ++x) {
        for (std::size_t y = 0; y < A; ++y) add[x * A + y] = a.index(a.add(a.element(x), a.element(y)));
        for (Elem h = 0; h < G; ++h) act[h * A + x] = a.index(m.act(h, a.element(x)));
    }
    std::vector<std::size_t> neg(A);
    for (std::size_t x = 0; x < A; ++x) neg[x] = a.index(a.neg(a.element(x)));
    const std::size_t zero = a.index(a.zero());
    const Elem e = g.identity();
    std::vector<Elem> nonid;
    for (Elem h = 0; h < G; ++h) {
        if (h != e) nonid.push_back(h);
    }
    const std::size_t k = nonid.size();
    if (n == 0) {
        std::uint64_t fixed = 0;
        for (std::size_t x = 0; x < A; ++x) {
            bool ok = true;
            for (Elem h = 0; h < G; ++h) ok = ok && act[h * A + x] == x;
            fixed += ok;
        }
        return fixed;
    }
    auto pos = [&](Elem h) { return h < e ? h : h - 1; };
    if (n == 1) {
        std::uint64_t cocycles = 0;
        std::vector<std::size_t> c(k, 0);
        auto val = [&](Elem h) { return h == e ? zero : c[pos(h)]; };
        while (true) {
            bool ok = true;
            for (Elem h : nonid) {
                for (Elem l : nonid) {
                    // c(hl) = c(h) + h.c(l)
                    if (val(g.mul(h, l)) != add[val(h) * A + act[h * A + val(l)]]) ok = false;
                }
            }
            cocycles += ok;
            std::size_t i = 0;
            while (i < k && ++c[i] == A) c[i++] = 0;
            if (i == k) break;
        }
        std::set<std::vector<std::size_t>> bounds;
        for (std::size_t x = 0; x < A; ++x) {
            std::vector<std::size_t> b;
            for (Elem h : nonid) b.push_back(add[act[h * A + x] * A + neg[x]]);
            bounds.insert(b);
        }
        return cocycles / bounds.size();
    }
    // n == 2
    std::uint64_t cocycles = 0;
    std::vector<std::size_t> c(k * k, 0);
    auto val = [&](Elem h, Elem l) { return (h == e || l == e) ? zero : c[pos(h) * k + pos(l)]; };
    while (true) {
        bool ok = true;
        for (std::size_t i1 = 0; ok && i1 < k; ++i1) {
            for (std::size_t i2 = 0; ok && i2 < k; ++i2) {
                for (std::size_t i3 = 0; ok && i3 < k; ++i3) {
                    const Elem h = nonid[i1], l = nonid[i2], r = nonid[i3];
                    // h.c(l,r) + c(h,lr) = c(hl,r) + c(h,l)
                    const std::size_t lhs = add[act[h * A + val(l, r)] * A + val(h, g.mul(l, r))];
                    const std::size_t rhs = add[val(g.mul(h, l), r) * A + val(h, l)];
                    ok = lhs == rhs;
                }
            }
        }
        cocycles += ok;
        std::size_t i = 0;
        while (i < k * k && ++c[i] == A) c[i++] = 0;
        if (i == k * k) break;
    }
    std::set<std::vector<std::size_t>> bounds;
    std::vector<std::size_t> b(k, 0);
    auto bval = [&](Elem h) { return h == e ? zero : b[pos(h)]; };
    while (true) {
        std::vector<std::size_t> db;
        for (Elem h : nonid) {
            for (Elem l : nonid) db.push_back(add[add[act[h * A + bval(l)] * A + neg[bval(g.mul(h, l))]] * A + bval(h)]);
        }
        bounds.insert(db);
        std::size_t i = 0;
        while (i < k && ++b[i] == A) b[i++] = 0;
        if (i == k) break;
    }
    return cocycles / bounds.size();
}

// Every module structure on the coefficient groups of order <= 4 over g.
std::vector<ModulePtr> small_modules(const GroupPtr& g) {
    std::vector<ModulePtr> out;
    const std::vector<std::vector<std::int64_t>> coeffs{{2}, {3}, {4}, {2, 2}};
    for (const auto& f : coeffs) {
        std::vector<IntMatrix> autos;
        if (f.size() == 1) {
            for (std::int64_t u = 1; u < f[0]; ++u) {
                if (std::gcd(u, f[0]) == 1) autos.push_back(IntMatrix::scalar(u));
            }
        } else {
            for (int bits = 0; bits < 16; ++bits) {
                IntMatrix m(2, 2);
                for (int i = 0; i < 4; ++i) m.data[i] = (bits >> i) & 1;
                if ((m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0)) % 2 == 1) autos.push_back(m);
            }
        }
        const std::size_t r = g->generators().size();
        std::vector<std::size_t> choice(r, 0);
        while (true) {
            std::vector<IntMatrix> mats;
            for (auto c : choice) mats.push_back(autos[c]);
            try {
                out.push_back(make_module(g, f, mats));
            } catch (const InputError&) {
            }
            std::size_t i = 0;
            while (i < r && ++choice[i] == autos.size()) choice[i++] = 0;
            if (i == r) break;
        }
    }
    return out;
}

Cochain random_cochain(const ModulePtr& m, int degree, std::mt19937_64& rng) {
    Cochain c(m, degree);
    std::uniform_int_distribution<std::int64_t> dist(0, 1 << 20);
    for (std::size_t i = 0; i < c.num_tuples(); ++i) {
        ModElem v(m->rank());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = dist(rng) % m->factors()[j];
        c.set_at(i, v);
    }
    return c;
}

mpq_class frac(long n, long d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

GaussMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> small(-3, 3), unit(1, 3), coin(0, 1);
    GaussMatrix upper = GaussMatrix::identity(n), lower = GaussMatrix::identity(n), diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag(i, i) = GaussRat(mpq_class(unit(rng) * (coin(rng) ? 1 : -1)), mpq_class(small(rng)));
        for (std::size_t j = i + 1; j < n; ++j) {
            upper(i, j) = GaussRat(mpq_class(small(rng)), frac(small(rng), 2));
            lower(j, i) = GaussRat(frac(small(rng), 3), mpq_class(small(rng)));
        }
    }
    // a random transposition keeps the pivots from always sitting on the diagonal
    GaussMatrix perm = GaussMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    const std::size_t i = idx(rng), j = idx(rng);
    if (i != j) {
        perm(i, i) = perm(j, j) = GaussRat(0);
        perm(i, j) = perm(j, i) = GaussRat(1);
    }
    return perm * lower * diag * upper;
}

std::string check_properties(std::mt19937_64& rng) {
    std::vector<std::string> parts;
    const std::vector<GroupPtr> small{make_cyclic(1), make_cyclic(2), make_cyclic(3), make_cyclic(4), make_abelian({2, 2})};

    // d o d = 0
    std::size_t dd_failures = 0, dd_cases = 0;
    for (const auto& g : small) {
        for (const auto& m : small_modules(g)) {
            for (int deg = 0; deg <= 1; ++deg) {
                Cochain c(m, deg);
                const std::size_t A = m->coefficients().cardinality();
                std::size_t total = 1;
                for (std::size_t i = 0; i < c.num_tuples(); ++i) total *= A;
                for (std::size_t code = 0; code < total && code < 4096; ++code) {
                    std::size_t x = code;
                    for (std::size_t i = 0; i < c.num_tuples(); ++i) {
                        c.set_at(i, m->coefficients().element(x % A));
                        x /= A;
                    }
                    ++dd_cases;
                    if (!coboundary(coboundary(c)).is_zero()) ++dd_failures;
                }
            }
        }
    }
    {
        const GroupPtr big = make_abelian({2, 4, 4});
        const std::vector<ModulePtr> mods{make_module(big, {4}, {IntMatrix::scalar(3), IntMatrix::scalar(1), IntMatrix::scalar(1)}),
                                          make_trivial_module(make_d8(), {2, 4})};
        for (const auto& m : mods) {
            for (int deg = 0; deg <= 1; ++deg) {
                for (int t = 0; t < 20; ++t) {
                    ++dd_cases;
                    if (!coboundary(coboundary(random_cochain(m, deg, rng))).is_zero()) ++dd_failures;
                }
            }
        }
    }
    parts.push_back("d(d(c)) nonzero=" + std::to_string(dd_failures));

    // |H^n| against enumeration
    std::size_t count_failures = 0;
    for (const auto& g : small) {
        for (const auto& m : small_modules(g)) {
            for (int n = 0; n <= 2; ++n) {
                if (cohomology_group(m, n).order() != brute_force_order(*m, n)) ++count_failures;
            }
        }
    }
    parts.push_back("|H^n| enumeration mismatches=" + std::to_string(count_failures));

    // cup products over Gal(C/R) and Gal(C/R) x Gal(C/R)
    const GroupPtr gal = real_galois_group();
    const ModulePtr z2 = make_trivial_module(gal, {2});
    std::vector<CohomologyGroup> h;
    for (int n = 0; n <= 2; ++n) h.push_back(cohomology_group(z2, n));
    auto all_classes = [](const CohomologyGroup& grp) {
        std::vector<CohomologyClass> out;
        for (std::uint64_t i = 0; i < grp.order(); ++i) {
            std::vector<std::int64_t> coords;
            std::uint64_t x = i;
            for (auto f : grp.invariant_factors()) {
                coords.push_back(static_cast<std::int64_t>(x % static_cast<std::uint64_t>(f)));
                x /= static_cast<std::uint64_t>(f);
            }
            out.push_back(grp.from_coordinates(coords));
        }
        return out;
    };
    std::size_t cup_failures = 0;
    for (int p = 0; p <= 2; ++p) {
        for (int q = 0; p + q <= 2; ++q) {
            for (const auto& a : all_classes(h[p])) {
                for (const auto& a2 : all_classes(h[p])) {
                    for (const auto& b : all_classes(h[q])) {
                        if (!(cup_product(a + a2, b, h[p + q]) == cup_product(a, b, h[p + q]) + cup_product(a2, b, h[p + q]))) ++cup_failures;
                        if (!(cup_product(b, a + a2, h[p + q]) == cup_product(b, a, h[p + q]) + cup_product(b, a2, h[p + q]))) ++cup_failures;
                        if (!(cup_product(a, b, h[p + q]) == cup_product(b, a, h[p + q]))) ++cup_failures;
                    }
                }
            }
        }
    }
    parts.push_back("cup bilinearity/commutativity failures=" + std::to_string(cup_failures));

    const DirectProduct prod = make_direct_product(gal, gal);
    const ModulePtr z2prod = make_trivial_module(prod.group, {2});
    std::vector<CohomologyGroup> hp;
    for (int n = 0; n <= 2; ++n) hp.push_back(cohomology_group(z2prod, n));
    std::size_t diagram_failures = 0;
    for (int p = 0; p <= 2; ++p) {
        for (int q = 0; p + q <= 2; ++q) {
            for (const auto& a : all_classes(h[p])) {
                for (const auto& b : all_classes(h[q])) {
                    const CohomologyClass cross = cup_product(pullback_class(prod.proj_left, a, hp[p]),
                                                              pullback_class(prod.proj_right, b, hp[q]), hp[p + q]);
                    // the external product on cochains represents p1^* a u p2^* b
                    if (!(hp[p + q].class_of(external_cup(prod, a.representative(), b.representative(), z2prod)) == cross)) {
                        ++diagram_failures;
                    }
                    // s^* (p1^* a u p2^* b) = (p1 s)^* a u (p2 s)^* b for every s: Gal -> Gal x Gal
                    for (Elem t = 0; t < prod.group->order(); ++t) {
                        const GroupHom s(gal, prod.group, {prod.group->identity(), t});
                        const CohomologyClass lhs = pullback_class(s, cross, h[p + q]);
                        const CohomologyClass rhs = cup_product(pullback_class(compose(prod.proj_left, s), a, h[p]),
                                                                pullback_class(compose(prod.proj_right, s), b, h[q]), h[p + q]);
                        if (!(lhs == rhs)) ++diagram_failures;
                    }
                }
            }
        }
    }
    parts.push_back("product diagram failures=" + std::to_string(diagram_failures));

    const GroupPtr z4 = make_cyclic(4);
    const KunnethBasis kb = kunneth_basis(z4, z4);
    const std::size_t direct = cohomology_group(make_trivial_module(make_abelian({4, 4}), {2}), 2).num_generators();
    parts.push_back("Kunneth (Z/4)^2: terms " + std::to_string(kb.terms.size()) + " direct " + std::to_string(direct));

    std::size_t sig_changes = 0;
    std::uniform_int_distribution<std::size_t> size(2, 4);
    std::uniform_int_distribution<long> entry(-3, 3);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = size(rng);
        std::vector<long> d(n);
        for (auto& x : d) {
            while (x == 0) x = entry(rng);
        }
        const HermitianForm m = HermitianForm::diagonal(d).congruent(random_invertible(n, rng));
        const HermitianForm moved = m.congruent(random_invertible(n, rng));
        if (hermitian_signature(m) != hermitian_signature(moved)) ++sig_changes;
    }
    parts.push_back("signature changes under congruence=" + std::to_string(sig_changes) + " of 50");
    return join(parts, "; ");
}

struct CheckDef {
    std::string id;
    std::function<std::string(std::mt19937_64&)> run;
};

const std::vector<CheckDef>& check_defs() {
    static const std::vector<CheckDef> defs{
        {"h2-pi1-mu4", [](std::mt19937_64&) { return check_magma(); }},
        {"d8-extension", [](std::mt19937_64&) { return check_d8(); }},
        {"delta-image", [](std::mt19937_64&) { return check_delta_image(); }},
        {"alpha-evaluation", [](std::mt19937_64&) { return check_alpha(); }},
        {"t4-linearity", [](std::mt19937_64&) { return check_t4(); }},
        {"su21-uniqueness", [](std::mt19937_64&) { return check_su21(); }},
        {"conditions", [](std::mt19937_64&) { return check_conditions(); }},
        {"local-symbols", check_local_symbols},
        {"properties", check_properties},
    };
    return defs;
}

std::string fmt_ms(double ms) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << ms;
    return os.str();
}

} // namespace

std::vector<std::string> verification_check_ids() {
    std::vector<std::string> ids;
    for (const auto& d : check_defs()) ids.push_back(d.id);
    return ids;
}

std::string default_expectations_path() { return GALCOH_DEFAULT_EXPECTATIONS; }

std::vector<Expectation> load_expectations(const std::string& path) {
    const json doc = read_json_file(path);
    if (!doc.is_object() || !doc.contains("checks") || !doc["checks"].is_array()) {
        throw InputError(path + ": expected an object with a 'checks' array");
    }
    std::vector<Expectation> out;
    std::set<std::string> seen;
    const auto ids = verification_check_ids();
    for (std::size_t i = 0; i < doc["checks"].size(); ++i) {
        const json& c = doc["checks"][i];
        const std::string where = path + ": checks[" + std::to_string(i) + "]";
        if (!c.is_object()) throw InputError(where + ": expected an object");
        Expectation e;
        for (const char* key : {"id", "anchor", "expected"}) {
            if (!c.contains(key) || !c[key].is_string()) throw InputError(where + ": missing string field '" + key + "'");
        }
        e.id = c["id"].get<std::string>();
        e.anchor = c["anchor"].get<std::string>();
        e.expected = c["expected"].get<std::string>();
        if (c.contains("tags")) {
            if (!c["tags"].is_array()) throw InputError(where + ".tags: expected an array of strings");
            for (const auto& t : c["tags"]) {
                if (!t.is_string()) throw InputError(where + ".tags: expected an array of strings");
                e.tags.push_back(t.get<std::string>());
            }
        }
        if (std::find(ids.begin(), ids.end(), e.id) == ids.end()) throw InputError(where + ": unknown check '" + e.id + "'");
        if (!seen.insert(e.id).second) throw InputError(where + ": duplicate check '" + e.id + "'");
        out.push_back(std::move(e));
    }
    for (const auto& id : ids) {
        if (!seen.count(id)) throw InputError(path + ": no expectation for check '" + id + "'");
    }
    return out;
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationReport run_verification(const std::vector<Expectation>& expectations, const std::string& filter,
                                    std::uint64_t seed) {
    std::map<std::string, const Expectation*> by_id;
    for (const auto& e : expectations) by_id[e.id] = &e;
    VerificationReport report;
    for (const auto& def : check_defs()) {
        auto it = by_id.find(def.id);
        if (it == by_id.end()) throw InputError("no expectation for check '" + def.id + "'");
        const Expectation& e = *it->second;
        if (!filter.empty() && def.id != filter && std::find(e.tags.begin(), e.tags.end(), filter) == e.tags.end()) continue;
        // each check gets its own stream so that filtering does not shift the random inputs
        std::mt19937_64 rng(seed + 7919 * static_cast<std::uint64_t>(&def - check_defs().data()));
        CheckResult r{def.id, e.tags, e.anchor, false, "", e.expected, 0};
        const auto start = std::chrono::steady_clock::now();
        try {
            r.computed = def.run(rng);
        } catch (const ResourceError&) {
            throw;
        } catch (const std::exception& ex) {
            r.computed = std::string("error: ") + ex.what();
        }
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        r.passed = r.computed == r.expected;
        report.checks.push_back(std::move(r));
    }
    return report;
}

std::string report_json(const VerificationReport& r, bool timings) {
    json checks = json::array();
    std::size_t passed = 0;
    for (const auto& c : r.checks) {
        json j = {{"id", c.id},
                  {"tags", c.tags},
                  {"anchor", c.anchor},
                  {"status", c.passed ? "pass" : "fail"},
                  {"computed", c.computed},
                  {"expected", c.expected}};
        if (timings) j["elapsed_ms"] = std::stod(fmt_ms(c.elapsed_ms));
        checks.push_back(std::move(j));
        passed += c.passed;
    }
    json doc = {{"checks", checks},
                {"passed", passed},
                {"failed", r.checks.size() - passed},
                {"status", r.all_passed() ? "pass" : "fail"}};
    return doc.dump(2) + "\n";
}

std::string report_human(const VerificationReport& r, bool timings) {
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& c : r.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.id;
        if (timings) os << " (" << fmt_ms(c.elapsed_ms) << " ms)";
        os << "\n  " << c.anchor << "\n  computed: " << c.computed << "\n";
        if (!c.passed) os << "  expected: " << c.expected << "\n";
        passed += c.passed;
    }
    os << passed << "/" << r.checks.size() << " checks passed\n";
    return os.str();
}

} // namespace galcoh
