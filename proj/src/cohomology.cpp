#include "galcoh/cohomology.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "galcoh/detail/chain_ring.hpp"
#include "galcoh/errors.hpp"

namespace galcoh {

using detail::ChainRing;
using detail::DenseMat;
using detail::SparseRow;

namespace {

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::string tuple_string(const FiniteGroup& g, const std::vector<Elem>& t) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) os << ",";
        os << g.label(t[i]);
    }
    os << ")";
    return os.str();
}

std::string elem_string(const ModElem& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << "]";
    return os.str();
}

std::vector<std::pair<std::uint32_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::uint32_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(static_cast<std::uint32_t>(p), e);
    }
    if (n > 1) out.emplace_back(static_cast<std::uint32_t>(n), 1);
    return out;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t r0 = m, r1 = mod_floor(a, m), t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (r0 != 1) throw InternalError("inverse_mod: not invertible");
    return mod_floor(t0, m);
}

// Idempotent lifting Z/p^e -> Z/d along the CRT decomposition.
std::int64_t crt_embed(std::int64_t x, std::int64_t pe, std::int64_t d) {
    const std::int64_t m = d / pe;
    const std::int64_t inv = inverse_mod(m % pe, pe);
    return mod_floor(x, pe) * inv % pe * m % d;
}

} // namespace

// ---------------------------------------------------------------- Cochain

Cochain::Cochain(ModulePtr module, int degree) : module_(std::move(module)), degree_(degree) {
    if (!module_) throw InputError("cochain needs a module");
    if (degree < 0 || degree > 3) throw InputError("cochain degree must be in 0..3");
    rank_ = module_->rank();
    tuples_ = ipow(module_->group().order(), degree);
    values_.assign(tuples_ * rank_, 0);
}

Cochain Cochain::from_function(ModulePtr module, int degree,
                               const std::function<ModElem(const std::vector<Elem>&)>& f) {
    Cochain c(std::move(module), degree);
    for (std::size_t i = 0; i < c.tuples_; ++i) c.set_at(i, f(c.tuple_of(i)));
    return c;
}

std::vector<Elem> Cochain::tuple_of(std::size_t index) const {
    const std::size_t n = group().order();
    std::vector<Elem> t(static_cast<std::size_t>(degree_));
    for (int k = degree_ - 1; k >= 0; --k) {
        t[static_cast<std::size_t>(k)] = static_cast<Elem>(index % n);
        index /= n;
    }
    return t;
}

std::size_t Cochain::index_of(const std::vector<Elem>& args) const {
    if (args.size() != static_cast<std::size_t>(degree_)) throw InputError("cochain argument count does not match degree");
    const std::size_t n = group().order();
    std::size_t idx = 0;
    for (Elem g : args) {
        if (g >= n) throw InputError("cochain argument is not a group element");
        idx = idx * n + g;
    }
    return idx;
}

ModElem Cochain::value_at(std::size_t index) const {
    return ModElem(values_.begin() + static_cast<std::ptrdiff_t>(index * rank_),
                   values_.begin() + static_cast<std::ptrdiff_t>((index + 1) * rank_));
}

void Cochain::set_at(std::size_t index, const ModElem& v) {
    if (v.size() != rank_) throw InputError("cochain value has wrong number of coordinates");
    if (index >= tuples_) throw InputError("cochain index out of range");
    const auto& f = module_->factors();
    for (std::size_t j = 0; j < rank_; ++j) values_[index * rank_ + j] = mod_floor(v[j], f[j]);
}

bool Cochain::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](std::int64_t x) { return x == 0; });
}

bool Cochain::is_normalized() const {
    const Elem e = group().identity();
    for (std::size_t i = 0; i < tuples_; ++i) {
        const auto t = tuple_of(i);
        if (std::find(t.begin(), t.end(), e) == t.end()) continue;
        for (std::size_t j = 0; j < rank_; ++j) {
            if (values_[i * rank_ + j] != 0) return false;
        }
    }
    return true;
}

void Cochain::check_compatible(const Cochain& other) const {
    if (degree_ != other.degree_) throw InputError("cochain degrees differ");
    if (module_ != other.module_ && !(*module_ == *other.module_)) throw InputError("cochains live over different modules");
}

Cochain Cochain::operator+(const Cochain& other) const {
    check_compatible(other);
    Cochain r = *this;
    const auto& f = module_->factors();
    for (std::size_t i = 0; i < values_.size(); ++i) {
        r.values_[i] = mod_floor(values_[i] + other.values_[i], f[i % rank_]);
    }
    return r;
}

Cochain Cochain::operator-(const Cochain& other) const { return *this + other.scaled(-1); }

Cochain Cochain::scaled(std::int64_t k) const {
    Cochain r = *this;
    const auto& f = module_->factors();
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const std::int64_t d = f[i % rank_];
        r.values_[i] = mod_floor(mod_floor(k, d) * values_[i], d);
    }
    return r;
}

bool Cochain::operator==(const Cochain& other) const {
    if (degree_ != other.degree_) return false;
    if (module_ != other.module_ && !(*module_ == *other.module_)) return false;
    return values_ == other.values_;
}

Cochain coboundary(const Cochain& c) {
    const int n = c.degree();
    if (n > 2) throw InputError("coboundary accepts cochains of degree <= 2");
    const auto& m = *c.module();
    const auto& g = c.group();
    Cochain out(c.module(), n + 1);
    const auto& coeffs = m.coefficients();
    std::vector<Elem> sub(static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < out.num_tuples(); ++idx) {
        const auto t = out.tuple_of(idx);
        // g_1 . c(g_2, ..., g_{n+1})
        std::copy(t.begin() + 1, t.end(), sub.begin());
        ModElem acc = m.act(t[0], c.value(sub));
        for (int s = 1; s <= n; ++s) {
            std::size_t w = 0;
            for (int k = 0; k <= n; ++k) {
                if (k == s) continue;
                sub[w++] = (k == s - 1) ? g.mul(t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(k) + 1])
                                        : t[static_cast<std::size_t>(k)];
            }
            ModElem v = c.value(sub);
            acc = (s % 2) ? coeffs.add(acc, coeffs.neg(v)) : coeffs.add(acc, v);
        }
        std::copy(t.begin(), t.end() - 1, sub.begin());
        ModElem last = c.value(sub);
        acc = ((n + 1) % 2) ? coeffs.add(acc, coeffs.neg(last)) : coeffs.add(acc, last);
        out.set_at(idx, acc);
    }
    return out;
}

void require_cocycle(const Cochain& c) {
    if (c.degree() > 2) throw InputError("cocycle check supports degree <= 2");
    const Cochain dc = coboundary(c);
    for (std::size_t i = 0; i < dc.num_tuples(); ++i) {
        const ModElem v = dc.value_at(i);
        if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; })) {
            throw InputError("not a cocycle: dc" + tuple_string(c.group(), dc.tuple_of(i)) + " = " + elem_string(v));
        }
    }
}

Cochain pullback_cochain(const GroupHom& f, const Cochain& c) {
    if (!(*f.target() == c.group())) throw InputError("pullback: cochain group is not the target of the homomorphism");
    const ModulePtr pulled = pullback_module(f, c.module());
    Cochain out(pulled, c.degree());
    std::vector<Elem> img(static_cast<std::size_t>(c.degree()));
    for (std::size_t i = 0; i < out.num_tuples(); ++i) {
        const auto t = out.tuple_of(i);
        for (std::size_t k = 0; k < t.size(); ++k) img[k] = f(t[k]);
        out.set_at(i, c.value(img));
    }
    return out;
}

// ---------------------------------------------------------------- solver

namespace detail {

namespace {

// Normalized tuples: sequences of non-identity elements, first entry major.
struct Layout {
    std::size_t order = 0;
    std::size_t m = 0;
    std::vector<Elem> nonid;
    std::vector<std::int64_t> pos;  // element -> index in nonid, -1 for identity

    explicit Layout(const FiniteGroup& g) : order(g.order()) {
        pos.assign(order, -1);
        for (Elem x = 0; x < order; ++x) {
            if (x == g.identity()) continue;
            pos[x] = static_cast<std::int64_t>(nonid.size());
            nonid.push_back(x);
        }
        m = nonid.size();
    }

    // full cochain index of the normalized tuple `ti` of length n
    std::size_t full_index(std::size_t ti, int n) const {
        std::vector<Elem> t(static_cast<std::size_t>(n));
        for (int k = n - 1; k >= 0; --k) {
            t[static_cast<std::size_t>(k)] = nonid[ti % m];
            ti /= m;
        }
        std::size_t idx = 0;
        for (Elem x : t) idx = idx * order + x;
        return idx;
    }
};

} // namespace

// The p-primary part of one cohomology computation.
struct PrimePart {
    std::uint32_t p = 0;
    int E = 0;
    std::vector<std::size_t> coords;  // module coordinates with p | d_j
    std::vector<int> exps;            // v_p(d_j) for those coordinates
    std::unique_ptr<ChainRing> ring;
    std::size_t ncols = 0;  // lift dimension of normalized n-cochains
    std::size_t nprev = 0;  // lift dimension of normalized (n-1)-cochains
    DenseMat L;             // row transform of the kernel generators
    std::vector<int> s;     // pivot valuations; z_i lives in R / p^(E - s_i)
    DenseMat KR;            // ncols x nz, column i maps to z = e_i
    DenseMat U, Uinv;       // nz x nz
    std::vector<int> t;     // cokernel exponent per z row
    std::size_t rank2 = 0;
    DenseMat Wtop;          // nprev x rank2
    std::vector<std::size_t> gens;  // rows with t > 0, by decreasing t

    std::size_t nz() const { return s.size(); }
};

struct CohomologyData {
    ModulePtr module;
    int degree = 0;
    std::vector<std::int64_t> factors;  // ascending
    std::vector<Cochain> basis;
    std::vector<PrimePart> primes;
    // combined[i][k] = generator index in primes[k].gens for invariant factor i, or -1
    std::vector<std::vector<std::int64_t>> combined;
};

namespace {

// Emits the rows of the lifted differential d^n: normalized (n+1)-tuples by
// normalized n-tuples, restricted to the p-primary coordinates.
template <class Emit>
void differential_rows(const Layout& lay, const GModule& mod, const FiniteGroup& g, const PrimePart& pp, int n,
                       bool scaled, Emit&& emit) {
    const ChainRing& ring = *pp.ring;
    const std::size_t kl = pp.coords.size();
    const std::size_t m = lay.m;
    const std::size_t rows = ipow(m, n + 1);
    const std::size_t mn = ipow(m, n);
    const std::uint32_t minus_one = ring.neg(1);
    std::vector<Elem> tup(static_cast<std::size_t>(n) + 1);
    SparseRow row;
    for (std::size_t ti = 0; ti < rows; ++ti) {
        std::size_t r = ti;
        for (int k = n; k >= 0; --k) {
            tup[static_cast<std::size_t>(k)] = lay.nonid[r % m];
            r /= m;
        }
        const IntMatrix& act = mod.action(tup[0]);
        const std::size_t tail = ti % mn;
        const std::size_t head = ti / m;
        // merged faces are shared by every coordinate i
        std::vector<std::pair<std::size_t, std::uint32_t>> faces;
        for (int s = 1; s <= n; ++s) {
            const Elem h = g.mul(tup[static_cast<std::size_t>(s) - 1], tup[static_cast<std::size_t>(s)]);
            if (h == g.identity()) continue;
            std::size_t idx = 0;
            for (int k = 0; k <= n; ++k) {
                if (k == s) continue;
                const Elem x = (k == s - 1) ? h : tup[static_cast<std::size_t>(k)];
                idx = idx * m + static_cast<std::size_t>(lay.pos[x]);
            }
            faces.emplace_back(idx, (s % 2) ? minus_one : 1u);
        }
        for (std::size_t i = 0; i < kl; ++i) {
            row.clear();
            for (std::size_t j = 0; j < kl; ++j) {
                const std::uint32_t a = ring.reduce(act(pp.coords[i], pp.coords[j]));
                if (a) row.emplace_back(tail * kl + j, a);
            }
            for (const auto& [idx, sgn] : faces) row.emplace_back(idx * kl + i, sgn);
            row.emplace_back(head * kl + i, ((n + 1) % 2) ? minus_one : 1u);
            std::sort(row.begin(), row.end());
            SparseRow merged;
            for (const auto& [col, v] : row) {
                if (!merged.empty() && merged.back().first == col) {
                    merged.back().second = ring.add(merged.back().second, v);
                } else {
                    merged.emplace_back(col, v);
                }
            }
            const std::uint32_t sc = scaled ? ring.power(pp.E - pp.exps[i]) : 1u;
            SparseRow out;
            for (const auto& [col, v] : merged) {
                const std::uint32_t w = ring.mul(v, sc);
                if (w) out.emplace_back(col, w);
            }
            emit(ti * kl + i, out);
        }
    }
}

// y = L x restricted to rows [0, nz), with a sanity check that rows >= nz vanish.
std::vector<std::uint32_t> apply_left(const PrimePart& pp, const std::vector<std::uint32_t>& x, bool check_tail) {
    const ChainRing& ring = *pp.ring;
    const std::size_t c = pp.ncols;
    const std::size_t limit = check_tail ? c : pp.nz();
    std::vector<std::uint32_t> y(limit, 0);
    std::vector<std::pair<std::size_t, std::uint32_t>> nzx;
    for (std::size_t r = 0; r < c; ++r) {
        if (x[r]) nzx.emplace_back(r, x[r]);
    }
    for (std::size_t i = 0; i < limit; ++i) {
        const std::uint32_t* lr = pp.L.row(i);
        std::uint64_t acc = 0;
        std::uint32_t v = 0;
        for (const auto& [r, xv] : nzx) {
            acc += std::uint64_t{lr[r]} * xv;
            if (acc >= (std::uint64_t{1} << 62)) {
                v = ring.add(v, ring.reduce(static_cast<std::int64_t>(acc % ring.modulus())));
                acc = 0;
            }
        }
        y[i] = ring.add(v, static_cast<std::uint32_t>(acc % ring.modulus()));
    }
    if (check_tail) {
        for (std::size_t i = pp.nz(); i < c; ++i) {
            if (y[i] != 0) throw InternalError("lifted cocycle is outside the computed kernel");
        }
        y.resize(pp.nz());
    }
    return y;
}

std::vector<std::uint32_t> z_of_y(const PrimePart& pp, const std::vector<std::uint32_t>& y) {
    const ChainRing& ring = *pp.ring;
    std::vector<std::uint32_t> z(pp.nz());
    for (std::size_t i = 0; i < pp.nz(); ++i) {
        if (pp.s[i] > 0 && y[i] % ring.power(pp.s[i]) != 0) throw InternalError("kernel coordinate not divisible by its pivot");
        z[i] = ring.shift_down(y[i], pp.s[i]);
    }
    return z;
}

void build_prime_part(PrimePart& pp, const Layout& lay, const GModule& mod, int n) {
    const FiniteGroup& g = mod.group();
    const ChainRing& ring = *pp.ring;
    const std::size_t kl = pp.coords.size();
    pp.ncols = ipow(lay.m, n) * kl;
    pp.nprev = n >= 1 ? ipow(lay.m, n - 1) * kl : 0;
    const std::size_t c = pp.ncols;

    // Stage 1: cocycles in the lift, as the column span of K.
    detail::KernelBuilder kb(ring, c);
    differential_rows(lay, mod, g, pp, n, true, [&](std::size_t, const SparseRow& row) { kb.add_form(row); });
    const DenseMat K = kb.generators();
    const std::size_t k = K.cols;

    DenseMat work = K;
    pp.L = DenseMat::identity(c);
    DenseMat R = DenseMat::identity(k);
    const auto sf = detail::smith_reduce(ring, work, &pp.L, nullptr, &R);
    pp.s = sf.valuations;
    const std::size_t nz = pp.nz();

    pp.KR = DenseMat(c, nz);
    for (std::size_t r = 0; r < c; ++r) {
        const std::uint32_t* kr = K.row(r);
        std::uint32_t* out = pp.KR.row(r);
        for (std::size_t a = 0; a < k; ++a) {
            if (kr[a]) ring.add_scaled(out, R.row(a), kr[a], nz);
        }
    }

    // Stage 2: presentation of H as z-space modulo boundaries, relations and pivot moduli.
    std::vector<std::vector<std::uint32_t>> qcols;
    if (n >= 1) {
        std::vector<std::vector<std::uint32_t>> dcols(pp.nprev, std::vector<std::uint32_t>(c, 0));
        differential_rows(lay, mod, g, pp, n - 1, false, [&](std::size_t ri, const SparseRow& row) {
            for (const auto& [col, v] : row) dcols[col][ri] = ring.add(dcols[col][ri], v);
        });
        for (auto& x : dcols) qcols.push_back(z_of_y(pp, apply_left(pp, x, true)));
    }
    const std::size_t tuples = ipow(lay.m, n);
    for (std::size_t j = 0; j < kl; ++j) {
        if (pp.exps[j] >= pp.E) continue;
        const std::uint32_t pe = ring.power(pp.exps[j]);
        for (std::size_t ti = 0; ti < tuples; ++ti) {
            std::vector<std::uint32_t> x(c, 0);
            x[ti * kl + j] = pe;
            qcols.push_back(z_of_y(pp, apply_left(pp, x, true)));
        }
    }
    for (std::size_t i = 0; i < nz; ++i) {
        if (pp.s[i] == 0) continue;
        std::vector<std::uint32_t> col(nz, 0);
        col[i] = ring.power(pp.E - pp.s[i]);
        qcols.push_back(std::move(col));
    }

    DenseMat Q(nz, qcols.size());
    for (std::size_t a = 0; a < qcols.size(); ++a) {
        for (std::size_t i = 0; i < nz; ++i) Q(i, a) = qcols[a][i];
    }
    pp.U = DenseMat::identity(nz);
    pp.Uinv = DenseMat::identity(nz);
    DenseMat W = DenseMat::identity(Q.cols);
    const auto sf2 = detail::smith_reduce(ring, Q, &pp.U, &pp.Uinv, &W);
    pp.rank2 = sf2.rank();
    pp.t.assign(nz, pp.E);
    for (std::size_t i = 0; i < pp.rank2; ++i) pp.t[i] = sf2.valuations[i];

    pp.Wtop = DenseMat(pp.nprev, pp.rank2);
    for (std::size_t r = 0; r < pp.nprev; ++r) {
        for (std::size_t a = 0; a < pp.rank2; ++a) pp.Wtop(r, a) = W(r, a);
    }

    for (std::size_t i = 0; i < nz; ++i) {
        if (pp.t[i] > 0) pp.gens.push_back(i);
    }
    std::stable_sort(pp.gens.begin(), pp.gens.end(), [&](std::size_t a, std::size_t b) { return pp.t[a] > pp.t[b]; });
}

// Lifted p-primary coordinates of a normalized cochain.
std::vector<std::uint32_t> lift_cochain(const PrimePart& pp, const Layout& lay, const Cochain& c) {
    const std::size_t kl = pp.coords.size();
    const std::size_t tuples = ipow(lay.m, c.degree());
    std::vector<std::uint32_t> x(pp.ncols, 0);
    for (std::size_t ti = 0; ti < tuples; ++ti) {
        const std::size_t full = lay.full_index(ti, c.degree());
        for (std::size_t j = 0; j < kl; ++j) {
            const auto pe = static_cast<std::int64_t>(ipow(pp.p, pp.exps[j]));
            x[ti * kl + j] = static_cast<std::uint32_t>(mod_floor(c.entry(full, pp.coords[j]), pe));
        }
    }
    return x;
}

// Adds the p-primary lifted vector x (normalized tuples of length n) into `out`.
void embed_lift(const PrimePart& pp, const Layout& lay, const std::vector<std::uint32_t>& x, Cochain& out) {
    const std::size_t kl = pp.coords.size();
    const std::size_t tuples = ipow(lay.m, out.degree());
    const auto& f = out.module()->factors();
    for (std::size_t ti = 0; ti < tuples; ++ti) {
        const std::size_t full = lay.full_index(ti, out.degree());
        ModElem v = out.value_at(full);
        for (std::size_t j = 0; j < kl; ++j) {
            const std::size_t coord = pp.coords[j];
            const auto pe = static_cast<std::int64_t>(ipow(pp.p, pp.exps[j]));
            v[coord] = mod_floor(v[coord] + crt_embed(x[ti * kl + j], pe, f[coord]), f[coord]);
        }
        out.set_at(full, v);
    }
}

std::shared_ptr<const CohomologyData> compute(const ModulePtr& mod, int n) {
    auto d = std::make_shared<CohomologyData>();
    d->module = mod;
    d->degree = n;
    const Layout lay(mod->group());

    std::map<std::uint32_t, PrimePart> parts;
    const auto& f = mod->factors();
    for (std::size_t j = 0; j < f.size(); ++j) {
        for (const auto& [p, e] : factorize(f[j])) {
            auto& pp = parts[p];
            pp.p = p;
            pp.coords.push_back(j);
            pp.exps.push_back(e);
            pp.E = std::max(pp.E, e);
        }
    }
    for (auto& [p, pp] : parts) {
        pp.ring = std::make_unique<ChainRing>(p, pp.E);
        build_prime_part(pp, lay, *mod, n);
        d->primes.push_back(std::move(pp));
    }

    std::size_t count = 0;
    for (const auto& pp : d->primes) count = std::max(count, pp.gens.size());
    // descending factors first, reversed below
    std::vector<std::vector<std::int64_t>> combo(count, std::vector<std::int64_t>(d->primes.size(), -1));
    std::vector<std::int64_t> desc(count, 1);
    for (std::size_t k = 0; k < d->primes.size(); ++k) {
        const auto& pp = d->primes[k];
        for (std::size_t i = 0; i < pp.gens.size(); ++i) {
            combo[i][k] = static_cast<std::int64_t>(i);
            desc[i] *= static_cast<std::int64_t>(ipow(pp.p, pp.t[pp.gens[i]]));
        }
    }
    for (std::size_t i = count; i-- > 0;) {
        d->factors.push_back(desc[i]);
        d->combined.push_back(combo[i]);
    }

    for (std::size_t i = 0; i < d->factors.size(); ++i) {
        Cochain rep(mod, n);
        for (std::size_t k = 0; k < d->primes.size(); ++k) {
            const std::int64_t gi = d->combined[i][k];
            if (gi < 0) continue;
            const auto& pp = d->primes[k];
            const std::size_t row = pp.gens[static_cast<std::size_t>(gi)];
            std::vector<std::uint32_t> z(pp.nz());
            for (std::size_t a = 0; a < pp.nz(); ++a) z[a] = pp.Uinv(a, row);
            std::vector<std::uint32_t> x(pp.ncols, 0);
            for (std::size_t r = 0; r < pp.ncols; ++r) {
                const std::uint32_t* kr = pp.KR.row(r);
                std::uint64_t acc = 0;
                for (std::size_t a = 0; a < pp.nz(); ++a) acc = (acc + std::uint64_t{kr[a]} * z[a]) % pp.ring->modulus();
                x[r] = static_cast<std::uint32_t>(acc);
            }
            embed_lift(pp, lay, x, rep);
        }
        d->basis.push_back(std::move(rep));
    }
    return d;
}

struct CacheKey {
    const GModule* module;
    int degree;
    bool operator<(const CacheKey& o) const { return std::tie(module, degree) < std::tie(o.module, o.degree); }
};

std::mutex cache_mutex;
std::map<CacheKey, std::weak_ptr<const CohomologyData>> cache;

} // namespace

} // namespace detail

CohomologyGroup cohomology_group(const ModulePtr& m, int degree) {
    if (!m) throw InputError("cohomology_group needs a module");
    if (degree < 0 || degree > 2) throw InputError("cohomology degree must be 0, 1 or 2");
    if (m->group().order() > kMaxCohomologyGroupOrder) {
        throw ResourceError("cohomology_group: group order " + std::to_string(m->group().order()) +
                            " exceeds the limit of " + std::to_string(kMaxCohomologyGroupOrder));
    }
    const detail::CacheKey key{m.get(), degree};
    {
        std::lock_guard<std::mutex> lock(detail::cache_mutex);
        auto it = detail::cache.find(key);
        if (it != detail::cache.end()) {
            if (auto sp = it->second.lock()) return CohomologyGroup(sp);
        }
    }
    auto data = detail::compute(m, degree);
    std::lock_guard<std::mutex> lock(detail::cache_mutex);
    detail::cache[key] = data;
    return CohomologyGroup(data);
}

CohomologyGroup cohomology_group(const GroupPtr& g, const ModulePtr& m, int degree) {
    if (!g || !m || !(*g == m->group())) throw InputError("cohomology_group: module is not defined over the given group");
    return cohomology_group(m, degree);
}

// ---------------------------------------------------------------- CohomologyGroup

const ModulePtr& CohomologyGroup::module() const { return d_->module; }
const FiniteGroup& CohomologyGroup::group() const { return d_->module->group(); }
int CohomologyGroup::degree() const { return d_->degree; }
const std::vector<std::int64_t>& CohomologyGroup::invariant_factors() const { return d_->factors; }
const std::vector<Cochain>& CohomologyGroup::basis() const { return d_->basis; }

std::uint64_t CohomologyGroup::order() const {
    std::uint64_t r = 1;
    for (std::int64_t f : d_->factors) {
        const auto uf = static_cast<std::uint64_t>(f);
        if (r > std::numeric_limits<std::uint64_t>::max() / uf) return std::numeric_limits<std::uint64_t>::max();
        r *= uf;
    }
    return r;
}

bool CohomologyGroup::compatible_with(const CohomologyGroup& other) const {
    if (d_ == other.d_) return true;
    return d_->degree == other.d_->degree &&
           (d_->module == other.d_->module || *d_->module == *other.d_->module);
}

std::string CohomologyGroup::describe() const {
    const auto& f = d_->factors;
    if (f.empty()) return "0";
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < f.size();) {
        std::size_t j = i;
        while (j < f.size() && f[j] == f[i]) ++j;
        const std::size_t mult = j - i;
        const std::string base = "Z/" + std::to_string(f[i]);
        parts.push_back(mult == 1 ? base : "(" + base + ")^" + std::to_string(mult));
        i = j;
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " x " : "") + parts[i];
    return out;
}

Reduction CohomologyGroup::reduce(const Cochain& c_in) const {
    const auto& d = *d_;
    const int n = d.degree;
    if (c_in.degree() != n) throw InputError("reduce: cochain degree does not match the cohomology group");
    if (c_in.module() != d.module && !(*c_in.module() == *d.module)) throw InputError("reduce: cochain lives over a different module");
    Cochain c(d.module, n);
    for (std::size_t i = 0; i < c.num_tuples(); ++i) c.set_at(i, c_in.value_at(i));
    require_cocycle(c);

    // normalize
    std::optional<Cochain> fix;
    if (n == 2) {
        const ModElem a = c.value({c.group().identity(), c.group().identity()});
        Cochain b(d.module, 1);
        for (std::size_t i = 0; i < b.num_tuples(); ++i) b.set_at(i, a);
        c = c - coboundary(b);
        fix = b;
    }
    if (!c.is_normalized()) throw InternalError("normalization left a nonzero value on an identity tuple");

    const detail::Layout lay(c.group());
    Reduction out;
    out.coordinates.assign(d.factors.size(), 0);
    bool all_zero = true;
    std::vector<std::vector<std::uint32_t>> w_per(d.primes.size());
    for (std::size_t k = 0; k < d.primes.size(); ++k) {
        const auto& pp = d.primes[k];
        const auto x = detail::lift_cochain(pp, lay, c);
        const auto z = detail::z_of_y(pp, detail::apply_left(pp, x, true));
        std::vector<std::uint32_t> w(pp.nz(), 0);
        for (std::size_t i = 0; i < pp.nz(); ++i) {
            std::uint64_t acc = 0;
            for (std::size_t a = 0; a < pp.nz(); ++a) acc = (acc + std::uint64_t{pp.U(i, a)} * z[a]) % pp.ring->modulus();
            w[i] = static_cast<std::uint32_t>(acc);
            const std::uint32_t pt = pp.t[i] >= pp.E ? 0u : pp.ring->power(pp.t[i]);
            if (pt != 1 && (pt == 0 ? w[i] != 0 : w[i] % pt != 0)) all_zero = false;
        }
        w_per[k] = std::move(w);
    }
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
        std::int64_t value = 0, modulus = 1;
        for (std::size_t k = 0; k < d.primes.size(); ++k) {
            const std::int64_t gi = d.combined[i][k];
            if (gi < 0) continue;
            const auto& pp = d.primes[k];
            const std::size_t row = pp.gens[static_cast<std::size_t>(gi)];
            const std::int64_t pt = static_cast<std::int64_t>(ipow(pp.p, pp.t[row]));
            const std::int64_t ci = w_per[k][row] % pt;
            // CRT merge of value mod modulus with ci mod pt
            const std::int64_t inv = inverse_mod(modulus % pt, pt);
            const std::int64_t step = mod_floor((ci - value) % pt * inv, pt);
            value += step * modulus;
            modulus *= pt;
        }
        out.coordinates[i] = mod_floor(value, d.factors[i]);
    }

    if (all_zero) {
        Cochain b(d.module, std::max(n - 1, 0));
        if (n >= 1) {
            for (std::size_t k = 0; k < d.primes.size(); ++k) {
                const auto& pp = d.primes[k];
                std::vector<std::uint32_t> mu(pp.rank2);
                for (std::size_t i = 0; i < pp.rank2; ++i) mu[i] = pp.ring->shift_down(w_per[k][i], pp.t[i]);
                std::vector<std::uint32_t> lam(pp.nprev, 0);
                for (std::size_t r = 0; r < pp.nprev; ++r) {
                    std::uint64_t acc = 0;
                    for (std::size_t a = 0; a < pp.rank2; ++a) acc = (acc + std::uint64_t{pp.Wtop(r, a)} * mu[a]) % pp.ring->modulus();
                    lam[r] = static_cast<std::uint32_t>(acc);
                }
                detail::embed_lift(pp, lay, lam, b);
            }
            if (fix) b = b + *fix;
        }
        out.witness = std::move(b);
    }
    return out;
}

CohomologyClass CohomologyGroup::class_of(const Cochain& c) const {
    Reduction r = reduce(c);
    Cochain rep(d_->module, d_->degree);
    for (std::size_t i = 0; i < rep.num_tuples(); ++i) rep.set_at(i, c.value_at(i));
    return CohomologyClass(*this, std::move(r.coordinates), std::move(rep));
}

CohomologyClass CohomologyGroup::zero() const {
    return CohomologyClass(*this, std::vector<std::int64_t>(d_->factors.size(), 0), Cochain(d_->module, d_->degree));
}

CohomologyClass CohomologyGroup::basis_class(std::size_t i) const {
    if (i >= d_->basis.size()) throw InputError("basis index out of range");
    std::vector<std::int64_t> coords(d_->factors.size(), 0);
    coords[i] = 1;
    return CohomologyClass(*this, std::move(coords), d_->basis[i]);
}

CohomologyClass CohomologyGroup::from_coordinates(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != d_->factors.size()) throw InputError("coordinate vector has the wrong length");
    Cochain rep(d_->module, d_->degree);
    std::vector<std::int64_t> red(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        red[i] = mod_floor(coords[i], d_->factors[i]);
        if (red[i]) rep = rep + d_->basis[i].scaled(red[i]);
    }
    return CohomologyClass(*this, std::move(red), std::move(rep));
}

Reduction reduce_class(const CohomologyGroup& h, const Cochain& c) { return h.reduce(c); }

// ---------------------------------------------------------------- CohomologyClass

CohomologyClass::CohomologyClass(CohomologyGroup parent, std::vector<std::int64_t> coordinates, Cochain representative)
    : parent_(std::move(parent)), coords_(std::move(coordinates)), rep_(std::move(representative)) {
    const auto& f = parent_.invariant_factors();
    if (coords_.size() != f.size()) throw InputError("coordinate vector has the wrong length");
    for (std::size_t i = 0; i < f.size(); ++i) coords_[i] = mod_floor(coords_[i], f[i]);
}

bool CohomologyClass::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t x) { return x == 0; });
}

CohomologyClass CohomologyClass::operator+(const CohomologyClass& other) const {
    if (!parent_.compatible_with(other.parent_)) throw InputError("adding classes from different cohomology groups");
    std::vector<std::int64_t> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + other.coords_[i];
    return CohomologyClass(parent_, std::move(c), rep_ + other.rep_);
}

CohomologyClass CohomologyClass::scaled(std::int64_t k) const {
    std::vector<std::int64_t> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * mod_floor(k, parent_.invariant_factors()[i]);
    return CohomologyClass(parent_, std::move(c), rep_.scaled(k));
}

bool CohomologyClass::operator==(const CohomologyClass& other) const {
    return parent_.compatible_with(other.parent_) && coords_ == other.coords_;
}

// ---------------------------------------------------------------- functoriality

CohomologyClass pullback_class(const GroupHom& f, const CohomologyClass& x, const CohomologyGroup& target) {
    if (!(*f.source() == target.group())) throw InputError("pullback_class: target group is not the source of the homomorphism");
    if (target.degree() != x.parent().degree()) throw InputError("pullback_class: degree mismatch");
    const Cochain pc = pullback_cochain(f, x.representative());
    if (!(*pc.module() == *target.module())) throw InputError("pullback_class: target module is not the pulled-back module");
    return target.class_of(pc);
}

CohomologyClass change_coefficients(const ModuleHom& phi, const CohomologyClass& x, const CohomologyGroup& target) {
    if (!(*phi.source() == *x.parent().module())) throw InputError("change_coefficients: class module is not the source of the map");
    if (!(*phi.target() == *target.module())) throw InputError("change_coefficients: target group has a different module");
    if (target.degree() != x.parent().degree()) throw InputError("change_coefficients: degree mismatch");
    const Cochain& rep = x.representative();
    Cochain out(target.module(), rep.degree());
    for (std::size_t i = 0; i < out.num_tuples(); ++i) out.set_at(i, phi(rep.value_at(i)));
    return target.class_of(out);
}

namespace {

void require_ring_module(const GModule& m) {
    if (m.rank() != 1 || !m.is_trivial_action()) {
        throw UnsupportedError("cup products need a single-factor coefficient ring with trivial action");
    }
}

} // namespace

Cochain cup_cochains(const Cochain& a, const Cochain& b) {
    require_ring_module(*a.module());
    if (!(*a.module() == *b.module())) throw InputError("cup product of cochains over different modules");
    const int p = a.degree(), q = b.degree();
    if (p + q > 3) throw InputError("cup product degree exceeds 3");
    const std::int64_t d = a.module()->factors()[0];
    Cochain out(a.module(), p + q);
    for (std::size_t i = 0; i < out.num_tuples(); ++i) {
        const auto t = out.tuple_of(i);
        const std::vector<Elem> ta(t.begin(), t.begin() + p), tb(t.begin() + p, t.end());
        out.set_at(i, {mod_floor(a.value(ta)[0] * b.value(tb)[0], d)});
    }
    return out;
}

CohomologyClass cup_product(const CohomologyClass& a, const CohomologyClass& b, const CohomologyGroup& target) {
    require_ring_module(*a.parent().module());
    if (target.degree() != a.parent().degree() + b.parent().degree()) throw InputError("cup_product: target degree mismatch");
    if (!(*target.module() == *a.parent().module())) throw InputError("cup_product: target module mismatch");
    return target.class_of(cup_cochains(a.representative(), b.representative()));
}

Cochain external_cup(const DirectProduct& prod, const Cochain& a, const Cochain& b, const ModulePtr& product_module) {
    require_ring_module(*a.module());
    require_ring_module(*b.module());
    require_ring_module(*product_module);
    if (!(product_module->group() == *prod.group)) throw InputError("external_cup: module is not over the product group");
    if (!(a.group() == *prod.proj_left.target()) || !(b.group() == *prod.proj_right.target())) {
        throw InputError("external_cup: cochains do not live over the product factors");
    }
    const std::int64_t d = product_module->factors()[0];
    if (a.module()->factors()[0] != d || b.module()->factors()[0] != d) throw InputError("external_cup: coefficient rings differ");
    const int p = a.degree(), q = b.degree();
    Cochain out(product_module, p + q);
    std::vector<Elem> ta(static_cast<std::size_t>(p)), tb(static_cast<std::size_t>(q));
    for (std::size_t i = 0; i < out.num_tuples(); ++i) {
        const auto t = out.tuple_of(i);
        for (int k = 0; k < p; ++k) ta[static_cast<std::size_t>(k)] = prod.proj_left(t[static_cast<std::size_t>(k)]);
        for (int k = 0; k < q; ++k) tb[static_cast<std::size_t>(k)] = prod.proj_right(t[static_cast<std::size_t>(p + k)]);
        out.set_at(i, {mod_floor(a.value(ta)[0] * b.value(tb)[0], d)});
    }
    return out;
}

std::size_t rank_mod_p(const std::vector<std::vector<std::int64_t>>& rows_in, std::int64_t p) {
    auto rows = rows_in;
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (auto& r : rows) {
        for (auto& x : r) x = mod_floor(x, p);
    }
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const std::int64_t inv = inverse_mod(rows[rank][c], p);
        for (auto& x : rows[rank]) x = x * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const std::int64_t f = rows[r][c];
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] = mod_floor(rows[r][k] - f * rows[rank][k], p);
        }
        ++rank;
    }
    return rank;
}

KunnethBasis kunneth_basis(const GroupPtr& g, const GroupPtr& h) {
    DirectProduct prod = make_direct_product(g, h);
    const ModulePtr mg = make_trivial_module(g, {2});
    const ModulePtr mh = make_trivial_module(h, {2});
    const ModulePtr mp = make_trivial_module(prod.group, {2});
    KunnethBasis kb{prod, cohomology_group(mp, 2), {}, {}, {}};
    for (int n = 0; n <= 2; ++n) {
        kb.left.push_back(cohomology_group(mg, n));
        kb.right.push_back(cohomology_group(mh, n));
    }
    for (int p = 0; p <= 2; ++p) {
        const int q = 2 - p;
        const auto& hl = kb.left[static_cast<std::size_t>(p)];
        const auto& hr = kb.right[static_cast<std::size_t>(q)];
        for (std::size_t i = 0; i < hl.num_generators(); ++i) {
            for (std::size_t j = 0; j < hr.num_generators(); ++j) {
                const Cochain c = external_cup(prod, hl.basis()[i], hr.basis()[j], mp);
                kb.terms.push_back(KunnethTerm{p, q, i, j, kb.total.class_of(c)});
            }
        }
    }
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& t : kb.terms) rows.push_back(t.cls.coordinates());
    const std::size_t dim = kb.total.num_generators();
    if (kb.terms.size() != dim || rank_mod_p(rows, 2) != dim) {
        throw InternalError("Kunneth products do not form a basis: " + std::to_string(kb.terms.size()) + " products of rank " +
                            std::to_string(rank_mod_p(rows, 2)) + ", dim H^2 = " + std::to_string(dim));
    }
    return kb;
}

} // namespace galcoh
