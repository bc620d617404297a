#include <doctest.h>

#include <map>
#include <random>

#include "galcoh/errors.hpp"
#include "galcoh/extensions.hpp"
#include "galcoh/pairing.hpp"
#include "oracles.hpp"

using namespace galcoh;

namespace {

std::map<std::string, int> table_map(const EvaluationTable& t) {
    std::map<std::string, int> out;
    for (std::size_t i = 0; i < t.labels.size(); ++i) out[t.labels[i]] = t.values[i];
    return out;
}

// Affine check done by hand on a table indexed by module elements.
bool affine(const FiniteAbelianGroup& a, const std::map<ModElem, int>& ev) {
    for (const auto& [y, vy] : ev) {
        for (const auto& [z, vz] : ev) {
            if ((ev.at(a.add(y, z)) + ev.at(a.zero())) % 2 != (vy + vz) % 2) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("pi_1 of a real torus") {
    SUBCASE("T[2]") {
        const Pi1Real pi = pi1_real(torus_torsion_module(2));
        CHECK(pi.group->order() == 8);
        CHECK(fingerprint_small_group(*pi.group) == "E8");
        CHECK(pi.lambda_o.has_value());
    }
    SUBCASE("T[4]") {
        const Pi1Real pi = pi1_real(torus_torsion_module(4));
        CHECK(pi.group->order() == 32);
        CHECK(fingerprint_small_group(*pi.group) == "Z4xZ4xZ2");
        CHECK(real_sections(pi).size() == 4);
    }
    SUBCASE("mu_4 with complex conjugation") {
        const Pi1Real pi = pi1_real(mu_m_real(4));
        CHECK(fingerprint_small_group(*pi.group) == "D8");
        CHECK_FALSE(pi.lambda_o.has_value());
        // u + xi.u = u - u = 0 for every u
        CHECK(real_sections(pi).size() == 4);
    }
    SUBCASE("trivial mu") {
        const Pi1Real pi = pi1_real(make_trivial_module(real_galois_group(), {}));
        CHECK(pi.group->order() == 2);
        CHECK(real_sections(pi).size() == 1);
    }
    SUBCASE("the exact sequence mu -> pi_1 -> Gal") {
        for (const auto& mu : {torus_torsion_module(2), torus_torsion_module(3), mu_m_real(4), mu_m_real(3)}) {
            const Pi1Real pi = pi1_real(mu);
            CHECK(pi.group->order() == 2 * mu->coefficients().cardinality());
            for (Elem u = 0; u < pi.mu_group->order(); ++u) CHECK(pi.p2(pi.incl_mu(u)) == 0);
            for (const auto& s : real_sections(pi)) {
                CHECK(compose(pi.p2, s.hom).images() == identity_hom(real_galois_group()).images());
            }
        }
    }
}

TEST_CASE("evaluation basics") {
    const Pi1Real pi = pi1_real(torus_torsion_module(2));
    const auto sections = real_sections(pi);
    const CohomologyGroup h2 = cohomology_group(make_trivial_module(pi.group, {2}), 2);
    CHECK(h2.describe() == "(Z/2)^6");
    SUBCASE("beta = 0") {
        const auto t = evaluation_table(h2.zero(), sections);
        for (int v : t.values) CHECK(v == 0);
    }
    SUBCASE("classes pulled back along p_2 give constant tables") {
        const auto hg = cohomology_group(make_trivial_module(real_galois_group(), {2}), 2);
        REQUIRE(hg.order() == 2);
        const auto x = pullback_class(pi.p2, hg.basis_class(0), h2);
        const auto t = evaluation_table(x, sections);
        for (int v : t.values) CHECK(v == 1);
        CHECK(is_left_linear({x}, pi, sections).linear);
    }
    SUBCASE("the value does not depend on the cocycle") {
        std::mt19937_64 rng(8);
        for (std::size_t i = 0; i < h2.num_generators(); ++i) {
            const auto x = h2.basis_class(i);
            const Cochain b = Cochain::from_function(x.representative().module(), 1, [&](const std::vector<Elem>& g) {
                return ModElem{g[0] == pi.group->identity() ? 0 : static_cast<std::int64_t>(rng() % 2)};
            });
            const Cochain moved = x.representative() + coboundary(b);
            for (const auto& s : sections) {
                const auto hg = evaluate(x, s).parent();
                CHECK(hg.class_of(pullback_cochain(s.hom, moved)) == evaluate(x, s));
            }
        }
    }
}

TEST_CASE("alpha on T[2]") {
    const AlphaData a = alpha_class_T2();
    const auto sections = real_sections(a.pi, [](const ModElem& u) { return t2_sign_sequence(u).label(); });
    CHECK_FALSE(a.alpha.is_zero());
    const auto t = evaluation_table(a.alpha, sections);
    const auto m = table_map(t);
    CHECK(m.at("(1,1,1)") == 0);
    CHECK(m.at("(-1,1,-1)") == 0);
    CHECK(m.at("(1,-1,-1)") == 0);
    CHECK(m.at("(-1,-1,1)") == 1);

    // Oracle: s_y^* alpha is the D8 extension pulled back along xi -> y, which
    // is nonsplit exactly when the lifts of y in D8 have order 4.
    const Extension d8 = d8_extension();
    const FiniteAbelianGroup mu = a.pi.mu->coefficients();
    std::map<ModElem, int> oracle_ev;
    for (const auto& s : sections) {
        const Elem y = (*a.pi.lambda_o)(s.hom(1));
        int value = 0;
        for (Elem x = 0; x < d8.total->order(); ++x) {
            if (y != 0 && d8.quotient_map(x) == y) value = d8.total->element_order(x) == 4;
        }
        oracle_ev[s.value] = value;
        CHECK(m.at(s.label) == value);
    }
    CHECK_FALSE(affine(mu, oracle_ev));

    const LinearityResult lin = is_left_linear({a.alpha}, a.pi, sections);
    CHECK_FALSE(lin.linear);
    REQUIRE(lin.violation);
    CHECK((*lin.violation)[2] == "(-1,-1,1)");

    SUBCASE("alpha pairs trivially with the delta-image of SU(2,1)") {
        for (const auto& d : delta_image(2, 1, 2)) CHECK(m.at(d.label()) == 0);
    }
    SUBCASE("the other labeling of H^1(R, T[2])") {
        const auto alt = real_sections(a.pi, [](const ModElem& u) { return t2_sign_sequence(u, true).label(); });
        const auto ma = table_map(evaluation_table(a.alpha, alt));
        int ones = 0;
        for (const auto& [label, v] : ma) ones += v;
        CHECK(ones == 1);
        CHECK(ma.at("(1,1,1)") == 0);
        CHECK_FALSE(is_left_linear({a.alpha}, a.pi, alt).linear);
    }
}

TEST_CASE("sign sequence labels") {
    CHECK(t2_sign_sequence({0, 0}).is_identity());
    CHECK(t2_sign_sequence({1, 0}).label() == "(-1,-1,1)");
    CHECK(t2_sign_sequence({0, 1}).label() == "(-1,1,-1)");
    CHECK(t2_sign_sequence({0, 1}, true).label() == "(1,-1,-1)");
    CHECK(t2_sign_sequence({1, 1}).label() == "(1,-1,-1)");
    CHECK(torus_sign_sequence({2, 0}, 4).label() == "(-1,1,-1)");
    CHECK(torus_sign_sequence({2, 2}, 4).label() == "(-1,-1,1)");
}

TEST_CASE("T[4] is linear where T[2] is not") {
    const ModulePtr mu4 = torus_torsion_module(4);
    const Pi1Real pi = pi1_real(mu4);
    const auto sections = real_sections(pi);
    const CohomologyGroup h2 = cohomology_group(make_trivial_module(pi.group, {2}), 2);
    CHECK(h2.describe() == "(Z/2)^6");
    std::vector<CohomologyClass> basis;
    for (std::size_t i = 0; i < h2.num_generators(); ++i) basis.push_back(h2.basis_class(i));
    CHECK(is_left_linear(basis, pi, sections).linear);

    // every class, checked by hand
    const FiniteAbelianGroup mu = mu4->coefficients();
    std::vector<std::int64_t> c(6, 0);
    for (int code = 0; code < 64; ++code) {
        for (int i = 0; i < 6; ++i) c[i] = (code >> i) & 1;
        const auto x = h2.from_coordinates(c);
        std::map<ModElem, int> ev;
        for (const auto& s : sections) ev[s.value] = local_value(evaluate(x, s));
        CHECK(affine(mu, ev));
    }

    const KunnethPairingReport rep = kunneth_pairing_analysis(mu4);
    CHECK(rep.linear);
    REQUIRE(rep.components.size() == 3);
    CHECK(rep.components[0].classes == 1);
    CHECK(rep.components[1].classes == 2);
    CHECK(rep.components[2].classes == 3);
    CHECK(rep.inner_classes == std::optional<std::size_t>(1));
    CHECK(rep.inner_zero);

    const KunnethPairingReport rep2 = kunneth_pairing_analysis(torus_torsion_module(2));
    CHECK_FALSE(rep2.linear);
    CHECK_FALSE(is_left_linear({alpha_class_T2().alpha}, alpha_class_T2().pi, real_sections(alpha_class_T2().pi)).linear);
}

TEST_CASE("nontrivial action is not supported for the Kunneth analysis") {
    CHECK_THROWS_AS(kunneth_pairing_analysis(mu_m_real(4)), UnsupportedError);
}
