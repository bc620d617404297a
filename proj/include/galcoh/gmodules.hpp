#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "galcoh/groups.hpp"

namespace galcoh {

/// Coordinate vector of a module element; entry j lives in Z/d_j.
using ModElem = std::vector<std::int64_t>;

/// Small dense integer matrix (row-major).
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int64_t> data;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
    static IntMatrix identity(std::size_t n);
    static IntMatrix scalar(std::int64_t s) {
        IntMatrix m(1, 1);
        m.data[0] = s;
        return m;
    }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// A finite abelian group Z/d_1 + ... + Z/d_k with elements enumerated in
/// lexicographic order of coordinate vectors (first coordinate major).
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<std::int64_t> factors);

    const std::vector<std::int64_t>& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    std::size_t cardinality() const { return card_; }

    ModElem element(std::size_t index) const;
    std::size_t index(const ModElem& x) const;
    ModElem add(const ModElem& a, const ModElem& b) const;
    ModElem neg(const ModElem& a) const;
    ModElem zero() const { return ModElem(factors_.size(), 0); }
    ModElem reduce(ModElem a) const;
    bool is_zero(const ModElem& a) const;

private:
    std::vector<std::int64_t> factors_;
    std::size_t card_ = 1;
};

/// A finite abelian group with an action of a FiniteGroup, given by one
/// integer matrix per group generator acting on coordinate column vectors
/// (entry i of an image is read mod d_i). Immutable after construction.
class GModule {
public:
    GModule(GroupPtr group, std::vector<std::int64_t> factors, std::vector<IntMatrix> generator_matrices);

    const GroupPtr& group_ptr() const { return group_; }
    const FiniteGroup& group() const { return *group_; }
    const std::vector<std::int64_t>& factors() const { return coeffs_.factors(); }
    const FiniteAbelianGroup& coefficients() const { return coeffs_; }
    std::size_t rank() const { return coeffs_.rank(); }
    const std::vector<IntMatrix>& generator_matrices() const { return gen_matrices_; }

    /// Action matrix of an arbitrary group element (entries reduced mod the row factor).
    const IntMatrix& action(Elem g) const { return element_matrices_[g]; }
    ModElem act(Elem g, const ModElem& x) const;
    bool is_trivial_action() const;

    /// Same group table, same factors, same action on every element.
    bool operator==(const GModule& other) const;

private:
    GroupPtr group_;
    FiniteAbelianGroup coeffs_;
    std::vector<IntMatrix> gen_matrices_;
    std::vector<IntMatrix> element_matrices_;
};

using ModulePtr = std::shared_ptr<const GModule>;

/// Validated module. Throws InputError on a matrix that is not an automorphism
/// or when the induced map from the group is not a homomorphism.
ModulePtr make_module(const GroupPtr& group, const std::vector<std::int64_t>& factors,
                      const std::vector<IntMatrix>& generator_matrices);
ModulePtr make_trivial_module(const GroupPtr& group, const std::vector<std::int64_t>& factors);

/// Z/m over the two-element Galois group of C/R, with complex conjugation
/// acting by -1 on the m-th roots of unity.
ModulePtr mu_m_real(std::int64_t m);

/// The group Gal(C/R) as the cyclic group of order 2 (element 1 is conjugation).
GroupPtr real_galois_group();

/// Restriction of M along f: the action of h is the action of f(h).
ModulePtr pullback_module(const GroupHom& f, const ModulePtr& m);

/// A homomorphism of coefficient groups A -> B given by an integer matrix
/// (rows indexed by the factors of B, columns by those of A).
class ModuleHom {
public:
    /// Validates well-definedness and equivariance for every generator of the group.
    ModuleHom(ModulePtr source, ModulePtr target, IntMatrix matrix);

    const ModulePtr& source() const { return source_; }
    const ModulePtr& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }
    ModElem operator()(const ModElem& x) const;

private:
    ModulePtr source_;
    ModulePtr target_;
    IntMatrix matrix_;
};

/// The underlying finite abelian group of a module as a FiniteGroup
/// (same element order as FiniteAbelianGroup).
GroupPtr abelian_group_of(const FiniteAbelianGroup& a);

std::int64_t mod_floor(std::int64_t a, std::int64_t m);

} // namespace galcoh
