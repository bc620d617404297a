#pragma once

#include <vector>

#include "galcoh/cohomology.hpp"
#include "galcoh/gmodules.hpp"
#include "galcoh/groups.hpp"

namespace galcoh {

/// A central extension 1 -> A -> E -> G -> 1 with a chosen set-theoretic section.
struct Extension {
    GroupPtr total;
    GroupPtr kernel;            // A as a FiniteGroup (abelian_group_of)
    ModulePtr coefficients;     // A as a trivial G-module
    GroupHom kernel_embedding;  // A -> E
    GroupHom quotient_map;      // E -> G
    std::vector<Elem> section;  // G -> E, quotient_map(section[g]) = g
};

/// E = A x G as a set with (a,g)(a',g') = (a + a' + c(g,g'), gg'); element
/// (a, g) has id index(a)*|G| + g. The section is g -> (0, g).
/// c must be a normalized 2-cocycle with trivial-action coefficients.
Extension extension_from_cocycle(const Cochain& c);

/// c(g,h) = s(g) s(h) s(gh)^{-1}, read back through the kernel embedding.
Cochain cocycle_of_extension(const Extension& e);

/// Validates the structural invariants (centrality, exactness, section).
void validate_extension(const Extension& e);

/// True iff x (degree 2, trivial action) is the zero class.
bool is_split(const CohomologyClass& x);

/// D8 -> (Z/2)^2 with kernel <r^2>, where (1,0) is the image of r and
/// (0,1) that of s. Section: 1, r, s, rs.
Extension d8_extension();

/// The class of d8_extension() in H^2((Z/2)^2, Z/2).
CohomologyClass d8_class();

} // namespace galcoh
