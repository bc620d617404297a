#pragma once

// Exact linear algebra over the chain rings Z/p^E (E >= 1, p prime).
//
// Every ideal of Z/p^E is p^k (Z/p^E), so an entry of minimal valuation
// divides every other entry. That makes Smith reduction a pure pivoting
// procedure and lets kernels be maintained one linear form at a time.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace galcoh::detail {

class ChainRing {
public:
    ChainRing(std::uint32_t p, int exponent);

    std::uint32_t prime() const { return p_; }
    int exponent() const { return e_; }
    std::uint32_t modulus() const { return q_; }

    std::uint32_t reduce(std::int64_t a) const;
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return reduce64(std::uint64_t{a} + b); }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return reduce64(std::uint64_t{a} + q_ - b); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return reduce64(std::uint64_t{a} * b); }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }

    /// p-adic valuation of a nonzero residue; exponent() for zero.
    int valuation(std::uint32_t a) const;
    /// p^k reduced mod p^E (so p^E is 0).
    std::uint32_t power(int k) const { return k >= e_ ? 0 : pow_[static_cast<std::size_t>(k)]; }
    std::uint32_t unit_inverse(std::uint32_t u) const;
    /// a / p^k as integers; a must be divisible by p^k.
    std::uint32_t shift_down(std::uint32_t a, int k) const { return a / pow_[static_cast<std::size_t>(k)]; }

    /// dst[i] -= f * src[i]
    void sub_scaled(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n) const;
    /// dst[i] += f * src[i]
    void add_scaled(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n) const;
    void scale(std::uint32_t* v, std::uint32_t f, std::size_t n) const;

private:
    std::uint32_t reduce64(std::uint64_t a) const { return pow2_ ? static_cast<std::uint32_t>(a) & mask_ : static_cast<std::uint32_t>(a % q_); }

    std::uint32_t p_;
    int e_;
    std::uint32_t q_;
    bool pow2_;
    std::uint32_t mask_;
    std::vector<std::uint32_t> pow_;
};

struct DenseMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> a;

    DenseMat() = default;
    DenseMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    static DenseMat identity(std::size_t n);
    std::uint32_t* row(std::size_t i) { return a.data() + i * cols; }
    const std::uint32_t* row(std::size_t i) const { return a.data() + i * cols; }
    std::uint32_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Diagonal form L * A * R = diag(p^{v_0}, p^{v_1}, ...), valuations
/// non-decreasing. Pivots are normalized to exact powers of p.
struct SmithForm {
    std::vector<int> valuations;  // one per nonzero pivot
    std::size_t rank() const { return valuations.size(); }
};

/// Reduces A in place. Optional outputs accumulate the transforms:
/// `left` (rows x rows) and `right` (cols x cols) start as given (normally
/// identity); `left_inverse` tracks the inverse of `left`.
SmithForm smith_reduce(const ChainRing& ring, DenseMat& a, DenseMat* left, DenseMat* left_inverse, DenseMat* right);

using SparseRow = std::vector<std::pair<std::size_t, std::uint32_t>>;

/// Maintains generators of {x in R^n : f(x) = 0 for every added form f}.
/// Generators are stored as the columns of an n x k row-major matrix.
class KernelBuilder {
public:
    KernelBuilder(const ChainRing& ring, std::size_t n);
    void add_form(const SparseRow& form);
    /// n x k matrix whose columns generate the kernel.
    DenseMat generators() const;
    std::size_t count() const { return k_; }

private:
    void drop_column(std::size_t t);

    const ChainRing& ring_;
    std::size_t n_;
    std::size_t k_;
    std::size_t stride_;
    std::vector<std::uint32_t> g_;
    std::vector<std::uint32_t> acc_;
    std::vector<std::uint32_t> factor_;
};

} // namespace galcoh::detail
