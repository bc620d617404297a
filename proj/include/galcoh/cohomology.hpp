#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galcoh/gmodules.hpp"
#include "galcoh/groups.hpp"

namespace galcoh {

/// cohomology_group refuses groups larger than this.
inline constexpr std::size_t kMaxCohomologyGroupOrder = 64;

/// An inhomogeneous n-cochain G^n -> M, stored on all |G|^n tuples.
/// Tuple (g_1, ..., g_n) has index sum g_i |G|^(n-i) (g_1 most significant).
class Cochain {
public:
    Cochain(ModulePtr module, int degree);

    static Cochain from_function(ModulePtr module, int degree,
                                 const std::function<ModElem(const std::vector<Elem>&)>& f);

    const ModulePtr& module() const { return module_; }
    const FiniteGroup& group() const { return module_->group(); }
    int degree() const { return degree_; }
    std::size_t num_tuples() const { return tuples_; }

    std::vector<Elem> tuple_of(std::size_t index) const;
    std::size_t index_of(const std::vector<Elem>& args) const;

    ModElem value(const std::vector<Elem>& args) const { return value_at(index_of(args)); }
    ModElem value_at(std::size_t index) const;
    std::int64_t entry(std::size_t index, std::size_t coord) const { return values_[index * rank_ + coord]; }
    void set(const std::vector<Elem>& args, const ModElem& v) { set_at(index_of(args), v); }
    void set_at(std::size_t index, const ModElem& v);

    bool is_zero() const;
    /// Vanishes whenever some argument is the identity (degree 0: always true).
    bool is_normalized() const;

    Cochain operator+(const Cochain& other) const;
    Cochain operator-(const Cochain& other) const;
    Cochain scaled(std::int64_t k) const;
    bool operator==(const Cochain& other) const;

private:
    void check_compatible(const Cochain& other) const;

    ModulePtr module_;
    int degree_;
    std::size_t rank_;
    std::size_t tuples_;
    std::vector<std::int64_t> values_;
};

/// The inhomogeneous differential; accepts degree <= 2.
Cochain coboundary(const Cochain& c);

/// Throws InputError naming the first nonzero entry of dc when c is not a cocycle.
void require_cocycle(const Cochain& c);

/// c ∘ (f × ... × f), living over pullback_module(f, c.module()).
Cochain pullback_cochain(const GroupHom& f, const Cochain& c);

namespace detail {
struct CohomologyData;
}

class CohomologyClass;

/// Result of reducing a cocycle: coordinates in the basis and, when the
/// class is zero, a cochain b of one degree lower with db = c.
struct Reduction {
    std::vector<std::int64_t> coordinates;
    std::optional<Cochain> witness;
    bool is_zero() const { return witness.has_value(); }
};

/// H^n(G, M) with invariant factors d_1 | d_2 | ... (all > 1), one basis
/// cocycle per factor, and a solver for arbitrary cocycles.
class CohomologyGroup {
public:
    const ModulePtr& module() const;
    const FiniteGroup& group() const;
    int degree() const;
    const std::vector<std::int64_t>& invariant_factors() const;
    std::size_t num_generators() const { return invariant_factors().size(); }
    /// |H^n|, saturating at UINT64_MAX.
    std::uint64_t order() const;
    const std::vector<Cochain>& basis() const;

    Reduction reduce(const Cochain& c) const;
    CohomologyClass class_of(const Cochain& c) const;
    CohomologyClass zero() const;
    CohomologyClass basis_class(std::size_t i) const;
    CohomologyClass from_coordinates(const std::vector<std::int64_t>& coords) const;

    /// "0", "Z/2", "(Z/2)^6", "Z/2 x Z/4".
    std::string describe() const;

    /// Same module (structurally) and degree.
    bool compatible_with(const CohomologyGroup& other) const;

private:
    explicit CohomologyGroup(std::shared_ptr<const detail::CohomologyData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::CohomologyData> d_;
    friend CohomologyGroup cohomology_group(const ModulePtr& m, int degree);
};

/// Computes H^n(G, M) for n in {0, 1, 2}. Throws ResourceError when |G| > 64.
CohomologyGroup cohomology_group(const ModulePtr& m, int degree);
/// As above, after checking that m lives over g.
CohomologyGroup cohomology_group(const GroupPtr& g, const ModulePtr& m, int degree);

/// Same as H.reduce(c).
Reduction reduce_class(const CohomologyGroup& h, const Cochain& c);

class CohomologyClass {
public:
    CohomologyClass(CohomologyGroup parent, std::vector<std::int64_t> coordinates, Cochain representative);

    const CohomologyGroup& parent() const { return parent_; }
    const std::vector<std::int64_t>& coordinates() const { return coords_; }
    const Cochain& representative() const { return rep_; }
    bool is_zero() const;

    CohomologyClass operator+(const CohomologyClass& other) const;
    CohomologyClass scaled(std::int64_t k) const;
    /// Equal coordinates in compatible groups.
    bool operator==(const CohomologyClass& other) const;

private:
    CohomologyGroup parent_;
    std::vector<std::int64_t> coords_;
    Cochain rep_;
};

/// f^* x, reduced in `target` (which must be H^n of the pulled-back module).
CohomologyClass pullback_class(const GroupHom& f, const CohomologyClass& x, const CohomologyGroup& target);

/// phi_* x, reduced in `target` (H^n of phi's target module).
CohomologyClass change_coefficients(const ModuleHom& phi, const CohomologyClass& x, const CohomologyGroup& target);

/// (a ∪ b)(g_1..g_{p+q}) = a(g_1..g_p) b(g_{p+1}..g_{p+q}) for a trivial
/// single-factor coefficient ring.
Cochain cup_cochains(const Cochain& a, const Cochain& b);
CohomologyClass cup_product(const CohomologyClass& a, const CohomologyClass& b, const CohomologyGroup& target);

/// p_1^* a ∪ p_2^* b on G × H, as a cochain over `product_module` (Z/m
/// trivial over the product group).
Cochain external_cup(const DirectProduct& prod, const Cochain& a, const Cochain& b, const ModulePtr& product_module);

struct KunnethTerm {
    int p = 0;  // degree on G
    int q = 0;  // degree on H
    std::size_t left_index = 0;   // basis index in H^p(G)
    std::size_t right_index = 0;  // basis index in H^q(H)
    CohomologyClass cls;
};

struct KunnethBasis {
    DirectProduct product;
    CohomologyGroup total;  // H^2(G x H, Z/2)
    std::vector<CohomologyGroup> left;   // H^0, H^1, H^2 of G
    std::vector<CohomologyGroup> right;  // H^0, H^1, H^2 of H
    std::vector<KunnethTerm> terms;
};

/// Basis of H^2(G x H, Z/2) made of products p_1^* a ∪ p_2^* b, tagged by
/// bidegree. Throws InternalError if these fail to form a basis.
KunnethBasis kunneth_basis(const GroupPtr& g, const GroupPtr& h);

/// Rank over Z/p of a list of coordinate vectors in (Z/p)^k.
std::size_t rank_mod_p(const std::vector<std::vector<std::int64_t>>& rows, std::int64_t p);

} // namespace galcoh
