#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galcoh/cohomology.hpp"
#include "galcoh/gmodules.hpp"
#include "galcoh/groups.hpp"
#include "galcoh/real_galois.hpp"

namespace galcoh {

/// pi_1 = mu ⋊ Gal(C/R) for a finite Galois module mu. Element (u, g) has
/// id index(u)*2 + g.
struct Pi1Real {
    ModulePtr mu;                  // mu over Gal(C/R)
    GroupPtr mu_group;             // mu as a FiniteGroup
    GroupPtr group;                // pi_1
    GroupHom p2;                   // pi_1 -> Gal(C/R)
    GroupHom incl_mu;              // mu -> pi_1
    std::optional<GroupHom> lambda_o;  // pi_1 -> mu, only when the action is trivial
};

Pi1Real pi1_real(const ModulePtr& mu);

/// The section Gal(C/R) -> pi_1, xi -> (u, xi), attached to a cocycle with
/// value u at complex conjugation.
struct Section {
    ModElem value;
    GroupHom hom;
    std::string label;
};

/// Labels a point of H^1(R, mu) for display.
using SectionLabeler = std::function<std::string(const ModElem&)>;

/// All real sections: u with u + xi.u = 0, in enumeration order of mu.
std::vector<Section> real_sections(const Pi1Real& pi, const SectionLabeler& label = {});

/// s_y^* beta, a class in H^2(Gal(C/R), A).
CohomologyClass evaluate(const CohomologyClass& beta, const Section& s);

/// Value of a class in H^2(Gal(C/R), Z/2) as 0 or 1 (meaning 1/2 in Q/Z).
int local_value(const CohomologyClass& x);

struct EvaluationTable {
    std::vector<std::string> labels;
    std::vector<ModElem> points;
    std::vector<int> values;  // 0 or 1 (= 1/2)
};

/// Evaluates beta (Z/2 coefficients) at every section.
EvaluationTable evaluation_table(const CohomologyClass& beta, const std::vector<Section>& sections);

struct LinearityResult {
    bool linear = true;
    /// First violation: y, y', y + y' (as labels) and the class index.
    std::optional<std::array<std::string, 3>> violation;
    std::size_t class_index = 0;
};

/// Checks ev(y + y') + ev(0) = ev(y) + ev(y') over all pairs of sections and
/// all given classes. The ev(0) term discards the constant part coming from
/// H^2(Gal(C/R)).
LinearityResult is_left_linear(const std::vector<CohomologyClass>& classes, const Pi1Real& pi,
                               const std::vector<Section>& sections);

/// H^1(R, T[2]) = (Z/2)^2 labeled so that (1,0) is diag(-1,-1,1) and
/// (0,1) is diag(-1,1,-1); `alternative` uses diag(1,-1,-1) for (0,1).
SignSequence t2_sign_sequence(const ModElem& u, bool alternative = false);
/// Torus coordinates (u, v) in (Z/m)^2 of 2-torsion points -> (s(u), s(v), s(u)s(v)).
SignSequence torus_sign_sequence(const ModElem& u, std::int64_t m);

/// mu = T[m](C) = (Z/m)^2 with trivial Galois action.
ModulePtr torus_torsion_module(std::int64_t m);

struct AlphaData {
    Pi1Real pi;
    CohomologyClass alpha;  // in H^2(pi_1, Z/2)
};

/// The D8 class pulled back along lambda_o for mu = T[2].
AlphaData alpha_class_T2();

struct ComponentReport {
    int p = 0;  // degree on mu
    int q = 0;  // degree on Gal(C/R)
    std::string name;
    std::size_t classes = 0;
    bool linear = true;
    bool all_zero = true;
    bool constant = true;
};

struct KunnethPairingReport {
    std::vector<ComponentReport> components;
    bool linear = true;
    /// Only when mu has two cyclic factors: products p_1^* a ∪ p_2^* b of
    /// degree-one classes inside H^2(mu), pulled back to pi_1.
    std::optional<std::size_t> inner_classes;
    bool inner_zero = true;
};

/// Per-component evaluation analysis of H^2(pi_1, Z/2); mu must have trivial action.
KunnethPairingReport kunneth_pairing_analysis(const ModulePtr& mu);

} // namespace galcoh
