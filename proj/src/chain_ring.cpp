#include "galcoh/detail/chain_ring.hpp"

#include <algorithm>

#include "galcoh/errors.hpp"

namespace galcoh::detail {

ChainRing::ChainRing(std::uint32_t p, int exponent) : p_(p), e_(exponent) {
    if (p < 2 || exponent < 1) throw InternalError("chain ring needs p >= 2 and exponent >= 1");
    std::uint64_t q = 1;
    pow_.push_back(1);
    for (int i = 0; i < exponent; ++i) {
        q *= p;
        if (q > (1u << 16)) throw ResourceError("coefficient prime power too large (limit 65536)");
        pow_.push_back(static_cast<std::uint32_t>(q));
    }
    q_ = static_cast<std::uint32_t>(q);
    pow2_ = (p == 2);
    mask_ = q_ - 1;
}

std::uint32_t ChainRing::reduce(std::int64_t a) const {
    std::int64_t r = a % static_cast<std::int64_t>(q_);
    if (r < 0) r += q_;
    return static_cast<std::uint32_t>(r);
}

int ChainRing::valuation(std::uint32_t a) const {
    if (a == 0) return e_;
    int v = 0;
    while (a % p_ == 0) {
        a /= p_;
        ++v;
    }
    return v;
}

std::uint32_t ChainRing::unit_inverse(std::uint32_t u) const {
    // extended Euclid on (u, q)
    std::int64_t r0 = q_, r1 = u, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t qt = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
    }
    if (r0 != 1) throw InternalError("unit_inverse called on a non-unit");
    return reduce(t0);
}

void ChainRing::sub_scaled(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n) const {
    add_scaled(dst, src, neg(f), n);
}

void ChainRing::add_scaled(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n) const {
    if (f == 0) return;
    if (pow2_) {
        // wrap-around mod 2^32 is harmless for a power-of-two modulus
        const std::uint32_t m = mask_;
        for (std::size_t i = 0; i < n; ++i) dst[i] = (dst[i] + f * src[i]) & m;
    } else {
        const std::uint64_t q = q_;
        for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<std::uint32_t>((dst[i] + std::uint64_t{f} * src[i]) % q);
    }
}

void ChainRing::scale(std::uint32_t* v, std::uint32_t f, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) v[i] = mul(v[i], f);
}

DenseMat DenseMat::identity(std::size_t n) {
    DenseMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

namespace {

void swap_rows(DenseMat& m, std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap_ranges(m.row(i), m.row(i) + m.cols, m.row(j));
}

void swap_cols(DenseMat& m, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}

// col_dst += f * col_src
void add_col(const ChainRing& ring, DenseMat& m, std::size_t dst, std::size_t src, std::uint32_t f) {
    for (std::size_t r = 0; r < m.rows; ++r) {
        if (m(r, src) != 0) m(r, dst) = ring.add(m(r, dst), ring.mul(f, m(r, src)));
    }
}

} // namespace

SmithForm smith_reduce(const ChainRing& ring, DenseMat& a, DenseMat* left, DenseMat* left_inverse, DenseMat* right) {
    SmithForm out;
    const std::size_t steps = std::min(a.rows, a.cols);
    const int e = ring.exponent();
    for (std::size_t t = 0; t < steps; ++t) {
        // pivot of minimal valuation in the trailing block
        int best = e;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < a.rows && best > 0; ++i) {
            const std::uint32_t* row = a.row(i);
            for (std::size_t j = t; j < a.cols; ++j) {
                if (row[j] == 0) continue;
                const int v = ring.valuation(row[j]);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        }
        if (best == e) break;

        swap_rows(a, t, bi);
        if (left) swap_rows(*left, t, bi);
        if (left_inverse) swap_cols(*left_inverse, t, bi);
        swap_cols(a, t, bj);
        if (right) swap_cols(*right, t, bj);

        const std::uint32_t unit = ring.shift_down(a(t, t), best);
        const std::uint32_t uinv = ring.unit_inverse(unit);
        if (uinv != 1) {
            ring.scale(a.row(t), uinv, a.cols);
            if (left) ring.scale(left->row(t), uinv, left->cols);
            if (left_inverse) {
                for (std::size_t r = 0; r < left_inverse->rows; ++r) {
                    (*left_inverse)(r, t) = ring.mul((*left_inverse)(r, t), unit);
                }
            }
        }

        for (std::size_t i = t + 1; i < a.rows; ++i) {
            const std::uint32_t x = a(i, t);
            if (x == 0) continue;
            const std::uint32_t f = ring.shift_down(x, best);
            ring.sub_scaled(a.row(i) + t, a.row(t) + t, f, a.cols - t);
            if (left) ring.sub_scaled(left->row(i), left->row(t), f, left->cols);
            if (left_inverse) add_col(ring, *left_inverse, t, i, f);
        }
        // column t is now clear below the pivot, so these column operations only touch row t
        for (std::size_t j = t + 1; j < a.cols; ++j) {
            const std::uint32_t x = a(t, j);
            if (x == 0) continue;
            const std::uint32_t f = ring.shift_down(x, best);
            a(t, j) = 0;
            if (right) add_col(ring, *right, j, t, ring.neg(f));
        }
        out.valuations.push_back(best);
    }
    return out;
}

KernelBuilder::KernelBuilder(const ChainRing& ring, std::size_t n)
    : ring_(ring), n_(n), k_(n), stride_(n), g_(n * n, 0), acc_(n, 0), factor_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) g_[i * stride_ + i] = 1;
}

void KernelBuilder::drop_column(std::size_t t) {
    const std::size_t last = k_ - 1;
    if (t != last) {
        for (std::size_t r = 0; r < n_; ++r) g_[r * stride_ + t] = g_[r * stride_ + last];
    }
    for (std::size_t r = 0; r < n_; ++r) g_[r * stride_ + last] = 0;
    --k_;
}

void KernelBuilder::add_form(const SparseRow& form) {
    if (k_ == 0) return;
    std::fill(acc_.begin(), acc_.begin() + static_cast<std::ptrdiff_t>(k_), 0u);
    for (const auto& [col, coef] : form) ring_.add_scaled(acc_.data(), g_.data() + col * stride_, coef, k_);

    const int e = ring_.exponent();
    int best = e;
    std::size_t t0 = 0;
    for (std::size_t t = 0; t < k_ && best > 0; ++t) {
        if (acc_[t] == 0) continue;
        const int v = ring_.valuation(acc_[t]);
        if (v < best) {
            best = v;
            t0 = t;
        }
    }
    if (best == e) return;

    const std::uint32_t uinv = ring_.unit_inverse(ring_.shift_down(acc_[t0], best));
    for (std::size_t t = 0; t < k_; ++t) {
        factor_[t] = (t == t0 || acc_[t] == 0) ? 0 : ring_.mul(ring_.shift_down(acc_[t], best), uinv);
    }
    const std::uint32_t scale = ring_.power(e - best);
    for (std::size_t r = 0; r < n_; ++r) {
        std::uint32_t* row = g_.data() + r * stride_;
        const std::uint32_t x = row[t0];
        if (x == 0) continue;
        ring_.sub_scaled(row, factor_.data(), x, k_);
        row[t0] = ring_.mul(x, scale);
    }
    if (best == 0) drop_column(t0);
}

DenseMat KernelBuilder::generators() const {
    DenseMat out(n_, k_);
    for (std::size_t r = 0; r < n_; ++r) {
        std::copy(g_.begin() + static_cast<std::ptrdiff_t>(r * stride_),
                  g_.begin() + static_cast<std::ptrdiff_t>(r * stride_ + k_), out.row(r));
    }
    return out;
}

} // namespace galcoh::detail
