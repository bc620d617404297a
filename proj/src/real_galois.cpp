#include "galcoh/real_galois.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "galcoh/errors.hpp"

namespace galcoh {

// ---------------------------------------------------------------- sign sequences

SignSequence::SignSequence(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InputError("sign sequence must be nonempty");
    int prod = 1;
    for (int a : entries_) {
        if (a != 1 && a != -1) throw InputError("sign sequence entries must be +1 or -1");
        prod *= a;
    }
    if (prod != 1) throw InputError("sign sequence entries must multiply to +1");
}

SignSequence SignSequence::identity(std::size_t n) { return SignSequence(std::vector<int>(n, 1)); }

SignSequence SignSequence::from_bits(std::size_t n, const std::vector<std::int64_t>& bits) {
    if (n < 1 || bits.size() != n - 1) throw InputError("sign sequence of size n needs n-1 bits");
    std::vector<int> e(n, 1);
    int prod = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        e[i] = mod_floor(bits[i], 2) ? -1 : 1;
        prod *= e[i];
    }
    e[n - 1] = prod;
    return SignSequence(std::move(e));
}

std::vector<std::int64_t> SignSequence::bits() const {
    std::vector<std::int64_t> b;
    for (std::size_t i = 0; i + 1 < entries_.size(); ++i) b.push_back(entries_[i] == -1 ? 1 : 0);
    return b;
}

std::string SignSequence::label() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) s += (i ? "," : "") + std::to_string(entries_[i]);
    return s + ")";
}

bool SignSequence::is_identity() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int a) { return a == 1; });
}

SignSequence SignSequence::operator*(const SignSequence& other) const {
    if (size() != other.size()) throw InputError("sign sequences of different sizes");
    std::vector<int> e(size());
    for (std::size_t i = 0; i < size(); ++i) e[i] = entries_[i] * other.entries_[i];
    return SignSequence(std::move(e));
}

std::vector<SignSequence> h1_real_torsion(std::size_t n, std::int64_t m) {
    if (n < 2) throw InputError("h1_real_torsion needs n >= 2");
    if (m < 2) throw InputError("h1_real_torsion needs m >= 2");
    if (m % 2 != 0) return {SignSequence::identity(n)};
    if (n > 21) throw ResourceError("too many sign sequences to enumerate");
    std::vector<SignSequence> out;
    const std::size_t k = n - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<std::int64_t> bits(k);
        for (std::size_t i = 0; i < k; ++i) bits[i] = static_cast<std::int64_t>((mask >> (k - 1 - i)) & 1u);
        out.push_back(SignSequence::from_bits(n, bits));
    }
    return out;
}

// ---------------------------------------------------------------- hermitian forms

GaussRat GaussRat::inverse() const {
    const mpq_class nrm = norm();
    if (nrm == 0) throw InputError("division by zero Gaussian rational");
    return GaussRat(re / nrm, -im / nrm);
}

std::string GaussRat::str() const {
    std::ostringstream os;
    os << re.get_str();
    if (im != 0) os << (im > 0 ? "+" : "-") << mpq_class(abs(im)).get_str() << "i";
    return os.str();
}

GaussMatrix GaussMatrix::identity(std::size_t size) {
    GaussMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = GaussRat(1);
    return m;
}

GaussMatrix GaussMatrix::diagonal(const std::vector<long>& d) {
    GaussMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = GaussRat(d[i]);
    return m;
}

GaussMatrix GaussMatrix::conjugate_transpose() const {
    GaussMatrix t(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) t(j, i) = (*this)(i, j).conj();
    }
    return t;
}

GaussMatrix operator*(const GaussMatrix& x, const GaussMatrix& y) {
    if (x.n != y.n) throw InputError("matrix sizes differ");
    GaussMatrix r(x.n);
    for (std::size_t i = 0; i < x.n; ++i) {
        for (std::size_t k = 0; k < x.n; ++k) {
            if (x(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < x.n; ++j) r(i, j) = r(i, j) + x(i, k) * y(k, j);
        }
    }
    return r;
}

HermitianForm::HermitianForm(GaussMatrix m) : m_(std::move(m)) {
    for (std::size_t i = 0; i < m_.n; ++i) {
        for (std::size_t j = 0; j < m_.n; ++j) {
            if (!(m_(i, j) == m_(j, i).conj())) {
                throw InputError("matrix is not hermitian at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

HermitianForm HermitianForm::congruent(const GaussMatrix& s) const {
    return HermitianForm(s * m_ * s.conjugate_transpose());
}

Signature hermitian_signature(const HermitianForm& h) {
    // Work on the trailing block `idx` of remaining indices.
    GaussMatrix a = h.matrix();
    std::vector<std::size_t> idx(a.n);
    for (std::size_t i = 0; i < a.n; ++i) idx[i] = i;
    Signature sig;

    auto eliminate = [&](const std::vector<std::size_t>& piv, const std::vector<std::vector<GaussRat>>& inv) {
        std::vector<std::size_t> rest;
        for (std::size_t x : idx) {
            if (std::find(piv.begin(), piv.end(), x) == piv.end()) rest.push_back(x);
        }
        const std::size_t k = piv.size();
        for (std::size_t r : rest) {
            // t = A[r, piv] * inv
            std::vector<GaussRat> t(k);
            for (std::size_t c = 0; c < k; ++c) {
                for (std::size_t l = 0; l < k; ++l) t[c] = t[c] + a(r, piv[l]) * inv[l][c];
            }
            for (std::size_t s : rest) {
                GaussRat acc;
                for (std::size_t c = 0; c < k; ++c) acc = acc + t[c] * a(piv[c], s);
                a(r, s) = a(r, s) - acc;
            }
        }
        idx = rest;
    };

    while (!idx.empty()) {
        std::optional<std::size_t> diag;
        for (std::size_t i : idx) {
            if (!a(i, i).is_zero()) {
                diag = i;
                break;
            }
        }
        if (diag) {
            const mpq_class d = a(*diag, *diag).re;
            (d > 0 ? sig.n_plus : sig.n_minus) += 1;
            eliminate({*diag}, {{a(*diag, *diag).inverse()}});
            continue;
        }
        std::optional<std::pair<std::size_t, std::size_t>> off;
        for (std::size_t i : idx) {
            for (std::size_t j : idx) {
                if (i != j && !a(i, j).is_zero()) {
                    off = std::make_pair(i, j);
                    break;
                }
            }
            if (off) break;
        }
        if (!off) throw InputError("hermitian form is singular");
        const auto [i, j] = *off;
        // [[0, b], [conj b, 0]] has inverse [[0, 1/conj b], [1/b, 0]] and inertia (1,1)
        const GaussRat b = a(i, j);
        sig.n_plus += 1;
        sig.n_minus += 1;
        eliminate({i, j}, {{GaussRat(), b.conj().inverse()}, {b.inverse(), GaussRat()}});
    }
    return sig;
}

Signature reference_signature(std::size_t p, std::size_t q) { return Signature{q, p}; }

Signature su_class_of_cocycle(const SignSequence& m, std::size_t p, std::size_t q) {
    if (p + q != m.size()) throw InputError("su_class_of_cocycle: p + q must equal the sequence length");
    std::vector<long> d(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) d[i] = (i < p ? -1 : 1) * m[i];
    const Signature s = hermitian_signature(HermitianForm::diagonal(d));
    // det(J_{p,q} m) = (-1)^p det(m) = (-1)^p, so the number of negative entries has the parity of p
    if (s.n_minus % 2 != p % 2) throw InternalError("signature violates the determinant parity constraint");
    return s;
}

std::vector<SignSequence> delta_image(std::size_t p, std::size_t q, std::int64_t m) {
    if (p < 1 || q < 1) throw InputError("delta_image needs p, q >= 1");
    const Signature trivial = reference_signature(p, q);
    std::vector<SignSequence> out;
    for (const auto& s : h1_real_torsion(p + q, m)) {
        if (su_class_of_cocycle(s, p, q) == trivial) out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- subgroups

bool is_subgroup(const std::vector<ModElem>& subset, const FiniteAbelianGroup& h) {
    if (subset.empty()) return false;
    std::set<std::size_t> members;
    for (const auto& x : subset) members.insert(h.index(h.reduce(x)));
    for (std::size_t x : members) {
        const ModElem ex = h.element(x);
        if (!members.count(h.index(h.neg(ex)))) return false;
        for (std::size_t y : members) {
            if (!members.count(h.index(h.add(ex, h.element(y))))) return false;
        }
    }
    return true;
}

bool is_subgroup(const std::vector<SignSequence>& subset) {
    if (subset.empty()) return false;
    const std::set<std::vector<int>> members = [&] {
        std::set<std::vector<int>> s;
        for (const auto& x : subset) s.insert(x.entries());
        return s;
    }();
    for (const auto& x : subset) {
        for (const auto& y : subset) {
            if (!members.count((x * y).entries())) return false;
        }
    }
    return true;  // every element is its own inverse
}

std::vector<ModElem> generated_subgroup(const std::vector<ModElem>& subset, const FiniteAbelianGroup& h) {
    std::vector<bool> in(h.cardinality(), false);
    std::vector<std::size_t> frontier{h.index(h.zero())};
    in[frontier[0]] = true;
    std::vector<ModElem> gens;
    for (const auto& x : subset) gens.push_back(h.reduce(x));
    while (!frontier.empty()) {
        const std::size_t cur = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            const std::size_t nx = h.index(h.add(h.element(cur), g));
            if (!in[nx]) {
                in[nx] = true;
                frontier.push_back(nx);
            }
        }
    }
    std::vector<ModElem> out;
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i]) out.push_back(h.element(i));
    }
    return out;
}

// ---------------------------------------------------------------- condition checkers

PlaceData place_from_sign_sequences(const std::string& name, std::size_t n, std::int64_t m,
                                    const std::vector<SignSequence>& delta) {
    const bool even = m % 2 == 0;
    PlaceData pd{name, FiniteAbelianGroup(even ? std::vector<std::int64_t>(n - 1, 2) : std::vector<std::int64_t>{}), {}};
    for (const auto& s : delta) {
        if (s.size() != n) throw InputError("sign sequence has the wrong length for this place");
        pd.delta_image.push_back(even ? s.bits() : ModElem{});
    }
    return pd;
}

namespace {

constexpr std::size_t kMaxProductSize = std::size_t{1} << 22;

// The product of the place groups, flattened to one FiniteAbelianGroup.
FiniteAbelianGroup product_group(const ConditionInput& in) {
    std::vector<std::int64_t> f;
    std::size_t card = 1;
    for (const auto& pd : in.places) {
        for (std::int64_t d : pd.group.factors()) f.push_back(d);
        card *= pd.group.cardinality();
        if (card > kMaxProductSize) throw ResourceError("product of local cohomology groups is too large");
    }
    return FiniteAbelianGroup(f);
}

std::vector<ModElem> split_element(const ConditionInput& in, const ModElem& flat) {
    std::vector<ModElem> parts;
    std::size_t pos = 0;
    for (const auto& pd : in.places) {
        parts.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                           flat.begin() + static_cast<std::ptrdiff_t>(pos + pd.group.rank()));
        pos += pd.group.rank();
    }
    return parts;
}

// All sums r + (d_v)_v, as a membership table of the product group.
std::vector<bool> reachable(const ConditionInput& in, const FiniteAbelianGroup& prod) {
    std::vector<ModElem> partial{ModElem{}};
    for (const auto& pd : in.places) {
        std::vector<ModElem> next;
        for (const auto& base : partial) {
            for (const auto& d : pd.delta_image) {
                ModElem e = base;
                const ModElem r = pd.group.reduce(d);
                e.insert(e.end(), r.begin(), r.end());
                next.push_back(std::move(e));
            }
        }
        partial = std::move(next);
    }
    std::vector<ModElem> rs = in.sha_image;
    if (rs.empty()) rs.push_back(prod.zero());
    std::vector<bool> hit(prod.cardinality(), false);
    for (const auto& r : rs) {
        for (const auto& d : partial) hit[prod.index(prod.add(prod.reduce(r), d))] = true;
    }
    return hit;
}

std::string certificate_string(const ConditionInput& in, const std::vector<ModElem>& parts) {
    std::ostringstream os;
    for (std::size_t v = 0; v < parts.size(); ++v) {
        os << (v ? ", " : "") << in.places[v].name << ":(";
        for (std::size_t i = 0; i < parts[v].size(); ++i) os << (i ? "," : "") << parts[v][i];
        os << ")";
    }
    return os.str();
}

} // namespace

void validate_condition_input(const ConditionInput& in) {
    for (const auto& pd : in.places) {
        if (pd.delta_image.empty()) throw InputError("place " + pd.name + ": delta image is empty");
        bool has_zero = false;
        for (const auto& d : pd.delta_image) {
            if (d.size() != pd.group.rank()) throw InputError("place " + pd.name + ": delta image element has the wrong length");
            if (pd.group.is_zero(pd.group.reduce(d))) has_zero = true;
        }
        if (!has_zero) throw InputError("place " + pd.name + ": delta image must contain the neutral element");
    }
    if (in.sha_image.empty()) return;
    const FiniteAbelianGroup prod = product_group(in);
    for (const auto& r : in.sha_image) {
        if (r.size() != prod.rank()) throw InputError("sha image element has the wrong length");
    }
    if (!is_subgroup(in.sha_image, prod)) throw InputError("sha image is not a subgroup of the product");
}

ConditionResult check_condition_star(const ConditionInput& in) {
    validate_condition_input(in);
    const FiniteAbelianGroup prod = product_group(in);
    const auto hit = reachable(in, prod);
    for (std::size_t i = 0; i < hit.size(); ++i) {
        if (!hit[i]) {
            const auto parts = split_element(in, prod.element(i));
            return ConditionResult{false, parts, "unreachable element " + certificate_string(in, parts)};
        }
    }
    return ConditionResult{true, std::nullopt, "every element of the product is reached"};
}

ConditionResult check_condition_double_star(const ConditionInput& in) {
    validate_condition_input(in);
    const FiniteAbelianGroup prod = product_group(in);
    const auto hit = reachable(in, prod);
    std::vector<ModElem> partial{ModElem{}};
    for (const auto& pd : in.places) {
        const auto gen = generated_subgroup(pd.delta_image, pd.group);
        std::vector<ModElem> next;
        for (const auto& base : partial) {
            for (const auto& d : gen) {
                ModElem e = base;
                e.insert(e.end(), d.begin(), d.end());
                next.push_back(std::move(e));
            }
        }
        partial = std::move(next);
    }
    std::vector<std::size_t> idx;
    for (const auto& e : partial) idx.push_back(prod.index(e));
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) {
        if (!hit[i]) {
            const auto parts = split_element(in, prod.element(i));
            return ConditionResult{false, parts, "generated element not reached " + certificate_string(in, parts)};
        }
    }
    return ConditionResult{true, std::nullopt, "the generated subgroups are covered"};
}

} // namespace galcoh
