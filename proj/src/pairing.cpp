#include "galcoh/pairing.hpp"

#include <map>

#include "galcoh/errors.hpp"
#include "galcoh/extensions.hpp"

namespace galcoh {

Pi1Real pi1_real(const ModulePtr& mu) {
    if (!mu) throw InputError("pi1_real needs a module");
    const GroupPtr gal = mu->group_ptr();
    if (gal->order() != 2) throw InputError("pi1_real needs a module over the group of order 2");
    const FiniteAbelianGroup& a = mu->coefficients();
    const GroupPtr n = abelian_group_of(a);
    std::vector<std::vector<Elem>> action(2, std::vector<Elem>(n->order()));
    for (Elem q = 0; q < 2; ++q) {
        for (Elem x = 0; x < n->order(); ++x) action[q][x] = static_cast<Elem>(a.index(mu->act(q, a.element(x))));
    }
    SemidirectProduct sd = make_semidirect(n, gal, action);
    Pi1Real pi{mu, n, sd.group, sd.projection, sd.incl_normal, std::nullopt};
    if (mu->is_trivial_action()) {
        std::vector<Elem> img(sd.group->order());
        for (Elem x = 0; x < sd.group->order(); ++x) img[x] = x / 2;
        pi.lambda_o = GroupHom(sd.group, n, img);
    }
    return pi;
}

std::vector<Section> real_sections(const Pi1Real& pi, const SectionLabeler& label) {
    const FiniteAbelianGroup& a = pi.mu->coefficients();
    const FiniteGroup& gal = pi.mu->group();
    const Elem e = gal.identity();
    const Elem xi = e == 0 ? 1 : 0;
    std::vector<Section> out;
    for (std::size_t i = 0; i < a.cardinality(); ++i) {
        const ModElem u = a.element(i);
        if (!a.is_zero(a.add(u, pi.mu->act(xi, u)))) continue;
        std::vector<Elem> img(2);
        img[e] = static_cast<Elem>(a.index(a.zero()) * 2 + e);
        img[xi] = static_cast<Elem>(i * 2 + xi);
        GroupHom hom(pi.mu->group_ptr(), pi.group, img);
        std::string name;
        if (label) {
            name = label(u);
        } else {
            name = "(";
            for (std::size_t j = 0; j < u.size(); ++j) name += (j ? "," : "") + std::to_string(u[j]);
            name += ")";
        }
        out.push_back(Section{u, std::move(hom), std::move(name)});
    }
    return out;
}

CohomologyClass evaluate(const CohomologyClass& beta, const Section& s) {
    if (!(beta.parent().group() == *s.hom.target())) throw InputError("evaluate: class does not live over the section's target group");
    const ModulePtr pulled = pullback_module(s.hom, beta.parent().module());
    return pullback_class(s.hom, beta, cohomology_group(pulled, beta.parent().degree()));
}

int local_value(const CohomologyClass& x) {
    const auto& f = x.parent().invariant_factors();
    if (f.size() != 1 || f[0] != 2) throw UnsupportedError("local values are defined for H^2(Gal(C/R), Z/2) only");
    return static_cast<int>(x.coordinates()[0]);
}

EvaluationTable evaluation_table(const CohomologyClass& beta, const std::vector<Section>& sections) {
    EvaluationTable t;
    for (const auto& s : sections) {
        t.labels.push_back(s.label);
        t.points.push_back(s.value);
        t.values.push_back(local_value(evaluate(beta, s)));
    }
    return t;
}

namespace {

// index of u + u' among the sections, by module enumeration index
std::map<std::size_t, std::size_t> section_index(const Pi1Real& pi, const std::vector<Section>& sections) {
    std::map<std::size_t, std::size_t> m;
    for (std::size_t i = 0; i < sections.size(); ++i) m[pi.mu->coefficients().index(sections[i].value)] = i;
    return m;
}

// A violation of ev(y+y') + ev(0) = ev(y) + ev(y'), as (i, j, k). Violations
// whose summands both evaluate like the trivial section are reported first.
std::optional<std::array<std::size_t, 3>> affine_violation(const std::vector<int>& values, const Pi1Real& pi,
                                                           const std::vector<Section>& sections) {
    const auto idx = section_index(pi, sections);
    const FiniteAbelianGroup& a = pi.mu->coefficients();
    const auto zero = idx.find(a.index(a.zero()));
    if (zero == idx.end()) throw InternalError("the trivial section is missing");
    const int v0 = values[zero->second];
    std::optional<std::array<std::size_t, 3>> best;
    int best_score = 3;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        for (std::size_t j = 0; j < sections.size(); ++j) {
            const auto k = idx.find(a.index(a.add(sections[i].value, sections[j].value)));
            if (k == idx.end()) throw InternalError("sections are not closed under addition");
            if ((values[k->second] + v0) % 2 == (values[i] + values[j]) % 2) continue;
            const int score = (values[i] != v0) + (values[j] != v0);
            if (score < best_score) {
                best_score = score;
                best = std::array<std::size_t, 3>{i, j, k->second};
            }
        }
    }
    return best;
}

std::vector<int> values_of(const CohomologyClass& beta, const std::vector<Section>& sections) {
    std::vector<int> v;
    for (const auto& s : sections) v.push_back(local_value(evaluate(beta, s)));
    return v;
}

} // namespace

LinearityResult is_left_linear(const std::vector<CohomologyClass>& classes, const Pi1Real& pi,
                               const std::vector<Section>& sections) {
    LinearityResult r;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto bad = affine_violation(values_of(classes[c], sections), pi, sections);
        if (bad) {
            r.linear = false;
            r.class_index = c;
            r.violation = std::array<std::string, 3>{sections[(*bad)[0]].label, sections[(*bad)[1]].label,
                                                     sections[(*bad)[2]].label};
            return r;
        }
    }
    return r;
}

SignSequence t2_sign_sequence(const ModElem& u, bool alternative) {
    if (u.size() != 2) throw InputError("T[2] points have two coordinates");
    SignSequence s = SignSequence::identity(3);
    if (mod_floor(u[0], 2)) s = s * SignSequence({-1, -1, 1});
    if (mod_floor(u[1], 2)) s = s * (alternative ? SignSequence({1, -1, -1}) : SignSequence({-1, 1, -1}));
    return s;
}

SignSequence torus_sign_sequence(const ModElem& u, std::int64_t m) {
    if (u.size() != 2) throw InputError("torus points have two coordinates");
    if (m % 2 != 0) throw InputError("torus_sign_sequence needs even m");
    std::vector<int> e(3, 1);
    for (std::size_t i = 0; i < 2; ++i) {
        const std::int64_t x = mod_floor(u[i], m);
        if (x != 0 && x != m / 2) throw InputError("torus point is not 2-torsion");
        e[i] = x == 0 ? 1 : -1;
    }
    e[2] = e[0] * e[1];
    return SignSequence(std::move(e));
}

ModulePtr torus_torsion_module(std::int64_t m) { return make_trivial_module(real_galois_group(), {m, m}); }

AlphaData alpha_class_T2() {
    Pi1Real pi = pi1_real(torus_torsion_module(2));
    const CohomologyClass d8 = d8_class();
    const GroupHom& lam = *pi.lambda_o;
    const CohomologyGroup target = cohomology_group(pullback_module(lam, d8.parent().module()), 2);
    return AlphaData{pi, pullback_class(lam, d8, target)};
}

KunnethPairingReport kunneth_pairing_analysis(const ModulePtr& mu) {
    if (!mu->is_trivial_action()) throw UnsupportedError("Kunneth pairing analysis needs a trivial Galois action");
    const Pi1Real pi = pi1_real(mu);
    const auto sections = real_sections(pi);
    const KunnethBasis kb = kunneth_basis(pi.mu_group, mu->group_ptr());
    if (!(*kb.product.group == *pi.group)) throw InternalError("product group does not match pi_1");
    const ModulePtr z2 = make_trivial_module(pi.group, {2});
    const CohomologyGroup h2 = cohomology_group(z2, 2);

    KunnethPairingReport rep;
    const std::vector<std::pair<int, const char*>> comps{{0, "H^2(Gal)"}, {1, "H^1(mu) x H^1(Gal)"}, {2, "H^2(mu)"}};
    for (const auto& [p, name] : comps) {
        ComponentReport cr;
        cr.p = p;
        cr.q = 2 - p;
        cr.name = name;
        for (const auto& t : kb.terms) {
            if (t.p != p) continue;
            ++cr.classes;
            const CohomologyClass cls = h2.class_of(t.cls.representative());
            const auto v = values_of(cls, sections);
            for (int x : v) {
                if (x) cr.all_zero = false;
                if (x != v[0]) cr.constant = false;
            }
            if (affine_violation(v, pi, sections)) cr.linear = false;
        }
        rep.linear = rep.linear && cr.linear;
        rep.components.push_back(cr);
    }

    if (mu->rank() == 2) {
        const auto& f = mu->factors();
        const KunnethBasis inner = kunneth_basis(make_cyclic(static_cast<std::size_t>(f[0])), make_cyclic(static_cast<std::size_t>(f[1])));
        std::size_t count = 0;
        for (const auto& t : inner.terms) {
            if (t.p != 1 || t.q != 1) continue;
            ++count;
            const Cochain pulled = pullback_cochain(*pi.lambda_o, t.cls.representative());
            const CohomologyClass cls = h2.class_of(pulled);
            for (int x : values_of(cls, sections)) {
                if (x) rep.inner_zero = false;
            }
        }
        rep.inner_classes = count;
    }
    return rep;
}

} // namespace galcoh
