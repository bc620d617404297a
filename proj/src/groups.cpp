#include "galcoh/groups.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "galcoh/errors.hpp"

namespace galcoh {

namespace {

std::string pair_text(Elem a, Elem b) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ")";
    return os.str();
}

} // namespace

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Elem> cayley, std::vector<Elem> generators,
                         std::vector<std::string> labels)
    : order_(order), cayley_(std::move(cayley)), generators_(std::move(generators)),
      labels_(std::move(labels)) {
    if (order_ == 0) throw InputError("group order must be positive");
    if (order_ > kMaxGroupOrder) {
        throw ResourceError("group order " + std::to_string(order_) + " exceeds the supported bound " +
                            std::to_string(kMaxGroupOrder));
    }
    if (cayley_.size() != order_ * order_) throw InputError("Cayley table has the wrong size");
    for (Elem x : cayley_) {
        if (x >= order_) throw InputError("Cayley table entry out of range");
    }
    if (!labels_.empty() && labels_.size() != order_) throw InputError("label list has the wrong size");

    bool found = false;
    for (Elem e = 0; e < order_ && !found; ++e) {
        bool ok = true;
        for (Elem x = 0; x < order_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) throw InputError("Cayley table has no two-sided identity");

    for (Elem a = 0; a < order_; ++a) {
        for (Elem b = 0; b < order_; ++b) {
            const Elem ab = mul(a, b);
            for (Elem c = 0; c < order_; ++c) {
                if (mul(ab, c) != mul(a, mul(b, c))) {
                    throw InputError("Cayley table is not associative at " + pair_text(a, b) + " with " +
                                     std::to_string(c));
                }
            }
        }
    }

    inverse_.assign(order_, 0);
    for (Elem a = 0; a < order_; ++a) {
        bool ok = false;
        for (Elem b = 0; b < order_ && !ok; ++b) {
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inverse_[a] = b;
                ok = true;
            }
        }
        if (!ok) throw InputError("element " + std::to_string(a) + " has no inverse");
    }

    for (Elem g : generators_) {
        if (g >= order_) throw InputError("generator out of range");
    }
    if (generated_subgroup(*this, generators_).size() != order_) {
        throw InputError("generators do not generate the group");
    }
}

Elem FiniteGroup::pow(Elem a, long long k) const {
    if (k < 0) {
        a = inv(a);
        k = -k;
    }
    Elem result = identity_;
    Elem base = a;
    while (k > 0) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::size_t FiniteGroup::element_order(Elem a) const {
    std::size_t n = 1;
    Elem x = a;
    while (x != identity_) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

std::string FiniteGroup::label(Elem a) const {
    if (!labels_.empty()) return labels_[a];
    return std::to_string(a);
}

bool FiniteGroup::is_abelian() const {
    for (Elem a = 0; a < order_; ++a) {
        for (Elem b = a + 1; b < order_; ++b) {
            if (mul(a, b) != mul(b, a)) return false;
        }
    }
    return true;
}

std::map<std::size_t, std::size_t> FiniteGroup::order_statistics() const {
    std::map<std::size_t, std::size_t> stats;
    for (Elem a = 0; a < order_; ++a) ++stats[element_order(a)];
    return stats;
}

std::vector<Elem> generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& gens) {
    std::vector<bool> seen(g.order(), false);
    std::vector<Elem> out{g.identity()};
    seen[g.identity()] = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (Elem s : gens) {
            const Elem x = g.mul(out[i], s);
            if (!seen[x]) {
                seen[x] = true;
                out.push_back(x);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (!source_ || !target_) throw InputError("homomorphism needs a source and a target");
    if (images_.size() != source_->order()) throw InputError("image table has the wrong size");
    for (Elem x : images_) {
        if (x >= target_->order()) throw InputError("image out of range");
    }
    for (Elem a = 0; a < source_->order(); ++a) {
        for (Elem b = 0; b < source_->order(); ++b) {
            if (images_[source_->mul(a, b)] != target_->mul(images_[a], images_[b])) {
                throw InputError("map is not a homomorphism; witness pair " + pair_text(a, b));
            }
        }
    }
}

GroupHom identity_hom(const GroupPtr& g) {
    std::vector<Elem> img(g->order());
    std::iota(img.begin(), img.end(), Elem{0});
    return GroupHom(g, g, std::move(img));
}

GroupHom trivial_hom(const GroupPtr& source, const GroupPtr& target) {
    return GroupHom(source, target, std::vector<Elem>(source->order(), target->identity()));
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
    if (!(*inner.target() == *outer.source())) throw InputError("cannot compose: group mismatch");
    std::vector<Elem> img(inner.source()->order());
    for (Elem a = 0; a < img.size(); ++a) img[a] = outer(inner(a));
    return GroupHom(inner.source(), outer.target(), std::move(img));
}

GroupPtr make_cyclic(std::size_t n) {
    if (n == 0) throw InputError("cyclic group order must be at least 1");
    if (n > kMaxGroupOrder) throw ResourceError("cyclic group order too large");
    std::vector<Elem> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>((a + b) % n);
    }
    std::vector<Elem> gens;
    if (n > 1) gens.push_back(1);
    return std::make_shared<const FiniteGroup>(n, std::move(table), std::move(gens));
}

DirectProduct make_direct_product(const GroupPtr& g, const GroupPtr& h) {
    const std::size_t m = g->order();
    const std::size_t n = h->order();
    if (m * n > kMaxGroupOrder) throw ResourceError("direct product order too large");
    std::vector<Elem> table(m * n * m * n);
    for (std::size_t a = 0; a < m * n; ++a) {
        for (std::size_t b = 0; b < m * n; ++b) {
            const Elem x = g->mul(static_cast<Elem>(a / n), static_cast<Elem>(b / n));
            const Elem y = h->mul(static_cast<Elem>(a % n), static_cast<Elem>(b % n));
            table[a * m * n + b] = static_cast<Elem>(x * n + y);
        }
    }
    std::vector<Elem> gens;
    for (Elem s : g->generators()) gens.push_back(static_cast<Elem>(s * n + h->identity()));
    for (Elem s : h->generators()) gens.push_back(static_cast<Elem>(g->identity() * n + s));
    std::vector<std::string> labels;
    if (!g->labels().empty() || !h->labels().empty()) {
        for (std::size_t a = 0; a < m * n; ++a) {
            labels.push_back("(" + g->label(static_cast<Elem>(a / n)) + "," + h->label(static_cast<Elem>(a % n)) + ")");
        }
    }
    auto prod = std::make_shared<const FiniteGroup>(m * n, std::move(table), std::move(gens), std::move(labels));

    std::vector<Elem> pl(m * n), pr(m * n), il(m), ir(n);
    for (std::size_t a = 0; a < m * n; ++a) {
        pl[a] = static_cast<Elem>(a / n);
        pr[a] = static_cast<Elem>(a % n);
    }
    for (std::size_t a = 0; a < m; ++a) il[a] = static_cast<Elem>(a * n + h->identity());
    for (std::size_t b = 0; b < n; ++b) ir[b] = static_cast<Elem>(g->identity() * n + b);
    return DirectProduct{prod, GroupHom(prod, g, std::move(pl)), GroupHom(prod, h, std::move(pr)),
                         GroupHom(g, prod, std::move(il)), GroupHom(h, prod, std::move(ir))};
}

GroupPtr make_abelian(const std::vector<std::int64_t>& factors) {
    GroupPtr result = make_cyclic(1);
    bool first = true;
    for (std::int64_t f : factors) {
        if (f < 1) throw InputError("abelian factor must be positive");
        auto c = make_cyclic(static_cast<std::size_t>(f));
        result = first ? c : make_direct_product(result, c).group;
        first = false;
    }
    return result;
}

SemidirectProduct make_semidirect(const GroupPtr& normal, const GroupPtr& quotient,
                                  const std::vector<std::vector<Elem>>& action) {
    const std::size_t m = normal->order();
    const std::size_t n = quotient->order();
    if (m * n > kMaxGroupOrder) throw ResourceError("semidirect product order too large");
    if (action.size() != n) throw InputError("action must give one automorphism per quotient element");

    // Each action[q] must be a bijective homomorphism N -> N.
    for (Elem q = 0; q < n; ++q) {
        const auto& phi = action[q];
        if (phi.size() != m) throw InputError("automorphism table has the wrong size");
        std::vector<bool> hit(m, false);
        for (Elem x : phi) {
            if (x >= m) throw InputError("automorphism image out of range");
            hit[x] = true;
        }
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
            throw InputError("action of quotient element " + std::to_string(q) + " is not bijective");
        }
        for (Elem a = 0; a < m; ++a) {
            for (Elem b = 0; b < m; ++b) {
                if (phi[normal->mul(a, b)] != normal->mul(phi[a], phi[b])) {
                    throw InputError("action of quotient element " + std::to_string(q) +
                                     " is not an automorphism; witness pair " + pair_text(a, b));
                }
            }
        }
    }
    for (Elem q1 = 0; q1 < n; ++q1) {
        for (Elem q2 = 0; q2 < n; ++q2) {
            const auto& phi12 = action[quotient->mul(q1, q2)];
            for (Elem x = 0; x < m; ++x) {
                if (phi12[x] != action[q1][action[q2][x]]) {
                    throw InputError("action is not multiplicative; witness pair " + pair_text(q1, q2));
                }
            }
        }
    }

    std::vector<Elem> table(m * n * m * n);
    for (std::size_t a = 0; a < m * n; ++a) {
        const Elem na = static_cast<Elem>(a / n), qa = static_cast<Elem>(a % n);
        for (std::size_t b = 0; b < m * n; ++b) {
            const Elem nb = static_cast<Elem>(b / n), qb = static_cast<Elem>(b % n);
            const Elem nn = normal->mul(na, action[qa][nb]);
            table[a * m * n + b] = static_cast<Elem>(nn * n + quotient->mul(qa, qb));
        }
    }
    std::vector<Elem> gens;
    for (Elem s : normal->generators()) gens.push_back(static_cast<Elem>(s * n + quotient->identity()));
    for (Elem s : quotient->generators()) gens.push_back(static_cast<Elem>(normal->identity() * n + s));
    auto group = std::make_shared<const FiniteGroup>(m * n, std::move(table), std::move(gens));

    std::vector<Elem> proj(m * n), in(m), iq(n);
    for (std::size_t a = 0; a < m * n; ++a) proj[a] = static_cast<Elem>(a % n);
    for (std::size_t a = 0; a < m; ++a) in[a] = static_cast<Elem>(a * n + quotient->identity());
    for (std::size_t b = 0; b < n; ++b) iq[b] = static_cast<Elem>(normal->identity() * n + b);
    return SemidirectProduct{group, GroupHom(group, quotient, std::move(proj)),
                             GroupHom(normal, group, std::move(in)), GroupHom(quotient, group, std::move(iq))};
}

GroupPtr make_d8() {
    auto z4 = make_cyclic(4);
    auto z2 = make_cyclic(2);
    std::vector<std::vector<Elem>> action{{0, 1, 2, 3}, {0, 3, 2, 1}};
    auto sd = make_semidirect(z4, z2, action);
    std::vector<std::string> labels{"1", "s", "r", "rs", "r2", "r2s", "r3", "r3s"};
    return std::make_shared<const FiniteGroup>(8, sd.group->cayley(), sd.group->generators(), std::move(labels));
}

GroupHom make_hom(const GroupPtr& source, const GroupPtr& target, const std::vector<Elem>& generator_images) {
    const auto& gens = source->generators();
    if (generator_images.size() != gens.size()) {
        throw InputError("expected " + std::to_string(gens.size()) + " generator images, got " +
                         std::to_string(generator_images.size()));
    }
    for (Elem x : generator_images) {
        if (x >= target->order()) throw InputError("generator image out of range");
    }
    constexpr Elem kUnset = static_cast<Elem>(-1);
    std::vector<Elem> img(source->order(), kUnset);
    img[source->identity()] = target->identity();
    std::queue<Elem> todo;
    todo.push(source->identity());
    while (!todo.empty()) {
        const Elem x = todo.front();
        todo.pop();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const Elem y = source->mul(x, gens[i]);
            const Elem fy = target->mul(img[x], generator_images[i]);
            if (img[y] == kUnset) {
                img[y] = fy;
                todo.push(y);
            } else if (img[y] != fy) {
                throw InputError("generator assignment violates a relation; witness pair " + pair_text(x, gens[i]));
            }
        }
    }
    return GroupHom(source, target, std::move(img));
}

namespace {

std::vector<std::int64_t> abelian_invariants(const FiniteGroup& g) {
    // Primary decomposition from counts of elements killed by p^k.
    std::size_t n = g.order();
    std::vector<std::vector<std::int64_t>> primary;  // per prime, exponents descending
    std::vector<std::int64_t> primes;
    std::size_t rest = n;
    for (std::size_t p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        std::vector<int> logs{0};
        std::size_t pk = 1;
        for (int k = 1;; ++k) {
            pk *= p;
            std::size_t count = 0;
            for (Elem a = 0; a < n; ++a) {
                if (g.pow(a, static_cast<long long>(pk)) == g.identity()) ++count;
            }
            int lg = 0;
            for (std::size_t c = count; c > 1; c /= p) ++lg;
            if (lg == logs.back()) break;
            logs.push_back(lg);
        }
        // number of cyclic factors with exponent >= k is logs[k] - logs[k-1]
        std::vector<std::int64_t> exps;
        const int kmax = static_cast<int>(logs.size()) - 1;
        for (int k = kmax; k >= 1; --k) {
            const int ge_k = logs[k] - logs[k - 1];
            const int ge_k1 = (k + 1 <= kmax) ? logs[k + 1] - logs[k] : 0;
            for (int i = 0; i < ge_k - ge_k1; ++i) exps.push_back(k);
        }
        primes.push_back(static_cast<std::int64_t>(p));
        primary.push_back(exps);
    }
    std::size_t len = 0;
    for (const auto& e : primary) len = std::max(len, e.size());
    std::vector<std::int64_t> factors(len, 1);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (std::size_t j = 0; j < primary[i].size(); ++j) {
            for (int t = 0; t < primary[i][j]; ++t) factors[j] *= primes[i];
        }
    }
    return factors;  // descending
}

std::string stats_text(const std::map<std::size_t, std::size_t>& stats) {
    std::ostringstream os;
    bool first = true;
    for (auto [ord, cnt] : stats) {
        os << (first ? "" : ",") << ord << ":" << cnt;
        first = false;
    }
    return os.str();
}

} // namespace

std::string fingerprint_small_group(const FiniteGroup& g) {
    if (g.order() == 1) return "trivial";
    if (g.order() > 16 && !g.is_abelian()) {
        throw UnsupportedError("fingerprint supports nonabelian groups of order <= 16, got " + std::to_string(g.order()));
    }
    const auto stats = g.order_statistics();
    if (g.is_abelian()) {
        const auto f = abelian_invariants(g);
        const bool elementary2 = std::all_of(f.begin(), f.end(), [](std::int64_t x) { return x == 2; });
        if (elementary2 && f.size() == 2) return "V4";
        if (elementary2 && f.size() >= 3) return "E" + std::to_string(g.order());
        std::string out;
        for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "xZ" : "Z") + std::to_string(f[i]);
        return out;
    }
    static const std::map<std::pair<std::size_t, std::string>, std::string> known{
        {{6, "1:1,2:3,3:2"}, "S3"},
        {{8, "1:1,2:5,4:2"}, "D8"},
        {{8, "1:1,2:1,4:6"}, "Q8"},
        {{10, "1:1,2:5,5:4"}, "D10"},
        {{12, "1:1,2:3,3:8"}, "A4"},
        {{12, "1:1,2:7,3:2,6:2"}, "D12"},
        {{12, "1:1,2:1,3:2,4:6,6:2"}, "Dic12"},
        {{14, "1:1,2:7,7:6"}, "D14"},
    };
    const auto key = std::make_pair(g.order(), stats_text(stats));
    if (auto it = known.find(key); it != known.end()) return it->second;
    return "nonabelian" + std::to_string(g.order()) + "[" + key.second + "]";
}

} // namespace galcoh
