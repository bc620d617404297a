#include "galcoh/extensions.hpp"

#include <algorithm>

#include "galcoh/errors.hpp"

namespace galcoh {

namespace {

void require_central_coefficients(const GModule& m) {
    if (!m.is_trivial_action()) throw InputError("central extensions need coefficients with trivial action");
}

} // namespace

Extension extension_from_cocycle(const Cochain& c) {
    if (c.degree() != 2) throw InputError("extension_from_cocycle needs a 2-cochain");
    const ModulePtr& mod = c.module();
    require_central_coefficients(*mod);
    require_cocycle(c);
    if (!c.is_normalized()) throw InputError("extension_from_cocycle needs a normalized cocycle");

    const GroupPtr& g = mod->group_ptr();
    const FiniteAbelianGroup& a = mod->coefficients();
    const std::size_t ng = g->order();
    const std::size_t na = a.cardinality();
    if (na * ng > kMaxGroupOrder) throw ResourceError("extension group would exceed the maximal group order");
    const std::size_t n = na * ng;

    std::vector<Elem> table(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        const ModElem ax = a.element(x / ng);
        const Elem gx = static_cast<Elem>(x % ng);
        for (std::size_t y = 0; y < n; ++y) {
            const ModElem ay = a.element(y / ng);
            const Elem gy = static_cast<Elem>(y % ng);
            const ModElem s = a.add(a.add(ax, ay), c.value({gx, gy}));
            table[x * n + y] = static_cast<Elem>(a.index(s) * ng + g->mul(gx, gy));
        }
    }
    const GroupPtr kernel = abelian_group_of(a);
    std::vector<Elem> gens;
    for (Elem k : kernel->generators()) gens.push_back(static_cast<Elem>(k * ng + g->identity()));
    for (Elem h : g->generators()) gens.push_back(static_cast<Elem>(a.index(a.zero()) * ng + h));
    std::vector<std::string> labels(n);
    for (std::size_t x = 0; x < n; ++x) labels[x] = "(" + kernel->label(static_cast<Elem>(x / ng)) + "," + g->label(static_cast<Elem>(x % ng)) + ")";
    auto total = std::make_shared<const FiniteGroup>(n, std::move(table), std::move(gens), std::move(labels));

    std::vector<Elem> emb(na), quo(n), sec(ng);
    for (std::size_t k = 0; k < na; ++k) emb[k] = static_cast<Elem>(k * ng + g->identity());
    for (std::size_t x = 0; x < n; ++x) quo[x] = static_cast<Elem>(x % ng);
    for (std::size_t h = 0; h < ng; ++h) sec[h] = static_cast<Elem>(a.index(a.zero()) * ng + h);
    Extension e{total, kernel, mod, GroupHom(kernel, total, emb), GroupHom(total, g, quo), sec};
    validate_extension(e);
    return e;
}

void validate_extension(const Extension& e) {
    const FiniteGroup& t = *e.total;
    const FiniteGroup& g = *e.quotient_map.target();
    if (!(*e.kernel_embedding.target() == t) || !(*e.quotient_map.source() == t)) throw InputError("extension maps do not meet at the total group");
    if (!(e.coefficients->group() == g)) throw InputError("extension coefficients are not a module over the quotient");
    if (e.kernel->order() != e.coefficients->coefficients().cardinality()) throw InputError("kernel group does not match the coefficient module");
    if (e.section.size() != g.order()) throw InputError("section must assign an element to every quotient element");
    for (Elem x = 0; x < g.order(); ++x) {
        if (e.section[x] >= t.order() || e.quotient_map(e.section[x]) != x) {
            throw InputError("section is not a right inverse of the quotient map at " + g.label(x));
        }
    }
    std::vector<bool> in_image(t.order(), false);
    for (Elem k = 0; k < e.kernel->order(); ++k) {
        const Elem x = e.kernel_embedding(k);
        if (in_image[x]) throw InputError("kernel embedding is not injective");
        in_image[x] = true;
        for (Elem y = 0; y < t.order(); ++y) {
            if (t.mul(x, y) != t.mul(y, x)) throw InputError("kernel is not central: " + t.label(x) + " vs " + t.label(y));
        }
    }
    for (Elem x = 0; x < t.order(); ++x) {
        const bool in_kernel = e.quotient_map(x) == g.identity();
        if (in_kernel != in_image[x]) throw InputError("kernel of the quotient map differs from the embedded group at " + t.label(x));
    }
}

Cochain cocycle_of_extension(const Extension& e) {
    validate_extension(e);
    const FiniteGroup& t = *e.total;
    const FiniteGroup& g = *e.quotient_map.target();
    const FiniteAbelianGroup& a = e.coefficients->coefficients();
    std::vector<std::int64_t> preimage(t.order(), -1);
    for (Elem k = 0; k < e.kernel->order(); ++k) preimage[e.kernel_embedding(k)] = k;
    // kernel ids follow the FiniteAbelianGroup enumeration (abelian_group_of)
    Cochain c(e.coefficients, 2);
    for (Elem x = 0; x < g.order(); ++x) {
        for (Elem y = 0; y < g.order(); ++y) {
            const Elem v = t.mul(t.mul(e.section[x], e.section[y]), t.inv(e.section[g.mul(x, y)]));
            if (preimage[v] < 0) throw InputError("invalid extension: s(g)s(h)s(gh)^-1 lies outside the kernel");
            c.set({x, y}, a.element(static_cast<std::size_t>(preimage[v])));
        }
    }
    return c;
}

bool is_split(const CohomologyClass& x) {
    if (x.parent().degree() != 2) throw InputError("is_split needs a degree-2 class");
    require_central_coefficients(*x.parent().module());
    return x.is_zero();
}

Extension d8_extension() {
    const GroupPtr d8 = make_d8();
    const GroupPtr v4 = make_abelian({2, 2});
    const ModulePtr z2 = make_trivial_module(v4, {2});
    const GroupPtr kernel = abelian_group_of(z2->coefficients());
    // r^i s^j has id 2i + j; (a, b) in V4 has id 2a + b
    std::vector<Elem> quo(8);
    for (Elem x = 0; x < 8; ++x) quo[x] = static_cast<Elem>(2 * ((x / 2) % 2) + x % 2);
    const std::vector<Elem> emb{0, 4};
    const std::vector<Elem> sec{0, 1, 2, 3};  // 1, s, r, rs
    Extension e{d8, kernel, z2, GroupHom(kernel, d8, emb), GroupHom(d8, v4, quo), sec};
    validate_extension(e);
    return e;
}

CohomologyClass d8_class() {
    const Extension e = d8_extension();
    return cohomology_group(e.coefficients, 2).class_of(cocycle_of_extension(e));
}

} // namespace galcoh
