#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "galcoh/gmodules.hpp"

namespace galcoh {

/// diag(a_1, ..., a_{n-1}, a_1 ... a_{n-1}) with a_i = ±1: an element of
/// H^1(R, T[m]) for m even.
class SignSequence {
public:
    /// Validates entries (all ±1, product +1).
    explicit SignSequence(std::vector<int> entries);
    static SignSequence identity(std::size_t n);
    /// Inverse of bits(): bit 1 means a_i = -1.
    static SignSequence from_bits(std::size_t n, const std::vector<std::int64_t>& bits);

    std::size_t size() const { return entries_.size(); }
    const std::vector<int>& entries() const { return entries_; }
    int operator[](std::size_t i) const { return entries_[i]; }
    /// Coordinates in (Z/2)^(n-1): a_1, ..., a_{n-1} with -1 -> 1.
    std::vector<std::int64_t> bits() const;
    /// "(1,-1,-1)"
    std::string label() const;
    bool is_identity() const;

    SignSequence operator*(const SignSequence& other) const;
    bool operator==(const SignSequence& other) const { return entries_ == other.entries_; }
    bool operator<(const SignSequence& other) const { return bits() < other.bits(); }

private:
    std::vector<int> entries_;
};

/// H^1(R, T[m]) for the diagonal torus of SU(n): every sign sequence when m
/// is even (in lexicographic order, +1 before -1), only the identity when m is odd.
std::vector<SignSequence> h1_real_torsion(std::size_t n, std::int64_t m);

/// Exact Gaussian rational re + im*i.
struct GaussRat {
    mpq_class re;
    mpq_class im;

    GaussRat() : re(0), im(0) {}
    GaussRat(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long r) : re(r), im(0) {}

    GaussRat conj() const { return GaussRat(re, -im); }
    bool is_zero() const { return re == 0 && im == 0; }
    mpq_class norm() const { return re * re + im * im; }
    GaussRat inverse() const;
    std::string str() const;

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return GaussRat(a.re + b.re, a.im + b.im); }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return GaussRat(a.re - b.re, a.im - b.im); }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
};

/// Square matrix over the Gaussian rationals, row-major.
struct GaussMatrix {
    std::size_t n = 0;
    std::vector<GaussRat> a;

    GaussMatrix() = default;
    explicit GaussMatrix(std::size_t size) : n(size), a(size * size) {}
    static GaussMatrix identity(std::size_t size);
    static GaussMatrix diagonal(const std::vector<long>& d);
    GaussRat& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const GaussRat& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    GaussMatrix conjugate_transpose() const;
    friend GaussMatrix operator*(const GaussMatrix& x, const GaussMatrix& y);
};

/// A matrix equal to its conjugate transpose.
class HermitianForm {
public:
    /// Throws InputError when m is not hermitian.
    explicit HermitianForm(GaussMatrix m);
    static HermitianForm diagonal(const std::vector<long>& d) { return HermitianForm(GaussMatrix::diagonal(d)); }

    std::size_t size() const { return m_.n; }
    const GaussMatrix& matrix() const { return m_; }
    /// S h S^*
    HermitianForm congruent(const GaussMatrix& s) const;

private:
    GaussMatrix m_;
};

struct Signature {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    bool operator==(const Signature& o) const { return n_plus == o.n_plus && n_minus == o.n_minus; }
    bool operator!=(const Signature& o) const { return !(*this == o); }
    std::string str() const { return "(" + std::to_string(n_plus) + "," + std::to_string(n_minus) + ")"; }
};

/// Inertia by exact diagonalization; a 2x2 block with zero diagonal counts
/// as (1,1). Throws InputError for singular forms.
Signature hermitian_signature(const HermitianForm& h);

/// Signature of J_{p,q} = diag(-1 x p, +1 x q).
Signature reference_signature(std::size_t p, std::size_t q);

/// Class in H^1(R, SU_{p,q}) of the torsion cocycle m: the signature of J_{p,q} * diag(m).
Signature su_class_of_cocycle(const SignSequence& m, std::size_t p, std::size_t q);

/// Elements of H^1(R, T[m]) whose class in H^1(R, SU_{p,q}) is trivial.
std::vector<SignSequence> delta_image(std::size_t p, std::size_t q, std::int64_t m);

/// Nonempty and closed under addition and negation inside h.
bool is_subgroup(const std::vector<ModElem>& subset, const FiniteAbelianGroup& h);
/// The same test for a set of sign sequences (a subgroup of (±1)^n).
bool is_subgroup(const std::vector<SignSequence>& subset);

/// Subgroup generated by `subset`, in enumeration order of h.
std::vector<ModElem> generated_subgroup(const std::vector<ModElem>& subset, const FiniteAbelianGroup& h);

/// Finite data for one real place: H^1 as a finite abelian group and the
/// image of the connecting map as a subset.
struct PlaceData {
    std::string name;
    FiniteAbelianGroup group;
    std::vector<ModElem> delta_image;
};

/// Per-place data plus the image R of the Sha group inside the product of
/// the H_v. Elements of R are concatenated coordinate vectors; an empty R
/// stands for the zero subgroup.
struct ConditionInput {
    std::vector<PlaceData> places;
    std::vector<ModElem> sha_image;
};

/// Place data from sign sequences, coordinates as in SignSequence::bits().
PlaceData place_from_sign_sequences(const std::string& name, std::size_t n, std::int64_t m,
                                    const std::vector<SignSequence>& delta);

struct ConditionResult {
    bool holds = false;
    /// An element of the product not reachable, one vector per place.
    std::optional<std::vector<ModElem>> certificate;
    std::string summary;
};

/// Throws InputError if D_v lacks 0, elements are malformed, or R is not a subgroup.
void validate_condition_input(const ConditionInput& in);

/// Prod H_v = R + Prod D_v ?
ConditionResult check_condition_star(const ConditionInput& in);
/// Prod <D_v> inside R + Prod D_v ?
ConditionResult check_condition_double_star(const ConditionInput& in);

} // namespace galcoh
