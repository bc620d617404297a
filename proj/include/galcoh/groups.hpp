#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace galcoh {

/// Element id inside a FiniteGroup; ids run over 0..order-1.
using Elem = std::uint32_t;

/// Groups are stored as explicit Cayley tables; tables above this order are refused.
inline constexpr std::size_t kMaxGroupOrder = 256;

/// A finite group given by its Cayley table and an ordered generating list.
///
/// Construction validates associativity, the identity, inverses and that the
/// generators generate (all by exhaustive loops). Instances are immutable.
class FiniteGroup {
public:
    FiniteGroup(std::size_t order, std::vector<Elem> cayley, std::vector<Elem> generators,
                std::vector<std::string> labels = {});

    std::size_t order() const { return order_; }
    Elem identity() const { return identity_; }
    Elem mul(Elem a, Elem b) const { return cayley_[a * order_ + b]; }
    Elem inv(Elem a) const { return inverse_[a]; }
    Elem pow(Elem a, long long k) const;
    std::size_t element_order(Elem a) const;

    const std::vector<Elem>& cayley() const { return cayley_; }
    const std::vector<Elem>& generators() const { return generators_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(Elem a) const;

    bool is_abelian() const;
    /// Multiset of element orders as order -> count.
    std::map<std::size_t, std::size_t> order_statistics() const;

    /// Structural equality: same order and identical Cayley table.
    bool operator==(const FiniteGroup& other) const {
        return order_ == other.order_ && cayley_ == other.cayley_;
    }

private:
    std::size_t order_;
    std::vector<Elem> cayley_;
    std::vector<Elem> generators_;
    std::vector<std::string> labels_;
    Elem identity_ = 0;
    std::vector<Elem> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A homomorphism between two finite groups, stored as the full image table.
class GroupHom {
public:
    /// Validates images[a*b] = images[a]*images[b] for every pair.
    GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> images);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    const std::vector<Elem>& images() const { return images_; }
    Elem operator()(Elem a) const { return images_[a]; }

private:
    GroupPtr source_;
    GroupPtr target_;
    std::vector<Elem> images_;
};

GroupHom identity_hom(const GroupPtr& g);
GroupHom trivial_hom(const GroupPtr& source, const GroupPtr& target);
/// Returns outer ∘ inner.
GroupHom compose(const GroupHom& outer, const GroupHom& inner);

GroupPtr make_cyclic(std::size_t n);

struct DirectProduct {
    GroupPtr group;
    GroupHom proj_left;
    GroupHom proj_right;
    GroupHom incl_left;
    GroupHom incl_right;
};

/// Element (g, h) gets id g*|H| + h. Generators: those of G, then those of H.
DirectProduct make_direct_product(const GroupPtr& g, const GroupPtr& h);

/// Product of cyclic groups Z/f0 x Z/f1 x ..., ids in lexicographic order
/// of coordinate vectors (first coordinate most significant).
GroupPtr make_abelian(const std::vector<std::int64_t>& factors);

struct SemidirectProduct {
    GroupPtr group;
    GroupHom projection;     // N ⋊ Q -> Q
    GroupHom incl_normal;    // N -> N ⋊ Q
    GroupHom incl_quotient;  // Q -> N ⋊ Q
};

/// N ⋊ Q with (n,q)(n',q') = (n * action[q](n'), q q'); element (n, q) has
/// id n*|Q| + q. `action[q]` is the image table of the automorphism for q.
SemidirectProduct make_semidirect(const GroupPtr& normal, const GroupPtr& quotient,
                                  const std::vector<std::vector<Elem>>& action);

/// Z/4 ⋊ Z/2 with the inversion action: element r^i s^j has id 2i + j.
GroupPtr make_d8();

/// Extends an assignment on the source generators to a homomorphism.
/// Throws InputError naming a witness pair when no extension exists.
GroupHom make_hom(const GroupPtr& source, const GroupPtr& target,
                  const std::vector<Elem>& generator_images);

/// Isomorphism-type label from (order, abelian?, element-order multiset).
/// Abelian groups of any order get their invariants; nonabelian ones must
/// have order <= 16. Examples: "Z4", "V4", "D8", "Q8", "Z4xZ2", "E8".
std::string fingerprint_small_group(const FiniteGroup& g);

/// Closure of a subset under multiplication (the generated subgroup).
std::vector<Elem> generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& gens);

} // namespace galcoh
