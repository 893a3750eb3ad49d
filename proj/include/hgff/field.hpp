#pragma once

// Concrete finite fields F_q, q = p^n with n <= 3, and their multiplicative
// character groups.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace hgff {

/// An element of F_q stored as its code sum_i c_i p^i over the polynomial
/// basis 1, x, ..., x^{n-1}. The owning Field interprets it.
struct FieldElement {
    std::uint32_t code = 0;

    friend bool operator==(FieldElement, FieldElement) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_q = F_p[x]/(modulus). Immutable after construction; the log/antilog
/// tables make multiplication, inversion and character evaluation O(1).
class Field {
public:
    /// Builds F_{p^n} with the lexicographically least monic irreducible
    /// modulus (constant term compared first) and the least primitive root
    /// under the same ordering of coordinate vectors.
    static FieldPtr make(std::int64_t p, int n);

    std::int64_t p() const { return p_; }
    int degree() const { return n_; }
    std::int64_t q() const { return q_; }
    /// Number of nonzero elements, q - 1.
    std::int64_t order() const { return q_ - 1; }

    /// Monic modulus as coefficients c_0..c_n (c_n = 1).
    const std::vector<std::int64_t>& modulus() const { return modulus_; }
    FieldElement generator() const { return exp_[1 % exp_.size()]; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    /// Image of an integer in the prime subfield.
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_coords(const std::vector<std::int64_t>& coords) const;
    std::vector<std::int64_t> coords(FieldElement x) const;
    /// Element with the given code; codes run over 0..q-1.
    FieldElement element(std::int64_t code) const { return {static_cast<std::uint32_t>(code)}; }

    bool is_zero(FieldElement x) const { return x.code == 0; }
    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
    FieldElement pow(FieldElement a, std::int64_t e) const;

    /// Index of x on the generator, 0..q-2. x must be nonzero.
    std::int64_t dlog(FieldElement x) const;
    FieldElement exp(std::int64_t k) const;

    /// Absolute trace to F_p as a residue 0..p-1.
    std::int64_t trace(FieldElement x) const { return trace_[x.code]; }

    /// x^p computed by polynomial arithmetic (independent of the log tables).
    FieldElement frobenius(FieldElement x) const;
    /// Polynomial-basis product, independent of the log tables.
    FieldElement mul_poly(FieldElement a, FieldElement b) const;

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    Field(std::int64_t p, int n, std::vector<std::int64_t> modulus);

    std::int64_t p_;
    int n_;
    std::int64_t q_;
    std::vector<std::int64_t> modulus_;
    std::vector<FieldElement> exp_;        // exp_[k] = g^k, k in [0, q-1)
    std::vector<std::int64_t> log_;        // log_[code], -1 for zero
    std::vector<std::int64_t> trace_;      // trace_[code]
};

/// Shared, cached instance of Field::make(p, n). Characters compare fields by
/// pointer, so code that mixes characters should build fields through here.
FieldPtr make_field(std::int64_t p, int n);

std::int64_t trace_to_prime(const Field& fld, FieldElement x);

/// chi(g^t) = zeta_{q-1}^{index * t}, and chi(0) = 0 for every chi
/// including the trivial character.
struct MultChar {
    FieldPtr field;
    std::int64_t index = 0;

    bool is_trivial() const { return index == 0; }
    std::int64_t order() const;
    MultChar conj() const;
    MultChar pow(std::int64_t e) const;
    MultChar operator*(const MultChar& other) const;

    friend bool operator==(const MultChar& a, const MultChar& b) {
        return a.field == b.field && a.index == b.index;
    }
};

MultChar make_char(FieldPtr fld, std::int64_t index);
MultChar trivial_char(FieldPtr fld);

/// The canonical character of order k: index (q-1)/k on the fixed generator.
MultChar canonical_char(FieldPtr fld, std::int64_t k);
/// The quadratic character, canonical_char(fld, 2).
MultChar quadratic_char(FieldPtr fld);
/// The character written t/k in hypergeometric parameter tables, chi_k^t.
MultChar char_from_fraction(FieldPtr fld, std::int64_t t, std::int64_t k);

/// chi(x) as an exponent of zeta_{q-1}, or nullopt when x = 0.
std::optional<std::int64_t> char_eval(const MultChar& chi, FieldElement x);

/// chi(x) for a quadratic-valued character as -1, 0 or 1. Requires the
/// character's order to divide 2.
int char_sign(const MultChar& chi, FieldElement x);

}  // namespace hgff
