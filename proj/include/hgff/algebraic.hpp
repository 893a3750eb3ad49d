#pragma once

// Exact cyclotomic integers and error-tracked multiprecision complex numbers.

#include <cstdint>
#include <string>
#include <vector>

#include <mpfr.h>

#include "hgff/arith.hpp"

namespace hgff {

/// Default working precision in bits, and the escalation ladder used when a
/// certified rounding is inconclusive.
inline constexpr int kDefaultPrecision = 128;
inline constexpr int kPrecisionLadder[] = {128, 256, 512};

/// Owning wrapper over an mpfr_t with a fixed precision.
class Real {
public:
    explicit Real(int precision = kDefaultPrecision);
    Real(double v, int precision);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Upper bound on |x| as a double.
    double abs_upper() const;
    std::string to_string(int digits = 20) const;

private:
    mpfr_t v_;
    bool owns_ = true;
};

/// re + i*im together with err, an upper bound on the distance from the
/// stored value to the exact quantity it approximates.
class ComplexValue {
public:
    explicit ComplexValue(int precision = kDefaultPrecision);
    ComplexValue(double re, double im, double err, int precision);

    static ComplexValue from_integer(const BigInt& v, int precision);
    static ComplexValue from_rational(const Rational& v, int precision);
    /// Copies (rounding to precision) the given coordinates; err is widened
    /// by the rounding.
    static ComplexValue from_parts(mpfr_srcptr re, mpfr_srcptr im, double err, int precision);
    /// e^{2 pi i j / m}.
    static ComplexValue root_of_unity(std::int64_t j, std::int64_t m, int precision);

    int precision() const { return re_.precision(); }
    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    double err() const { return err_; }
    void widen(double extra) { err_ += extra; }

    double re_double() const { return re_.to_double(); }
    double im_double() const { return im_.to_double(); }
    /// Upper bound on |re| + |im| of the stored value.
    double l1_upper() const { return re_.abs_upper() + im_.abs_upper(); }

    ComplexValue& operator+=(const ComplexValue& o);
    ComplexValue& operator-=(const ComplexValue& o);
    ComplexValue& operator*=(const ComplexValue& o);
    ComplexValue& operator/=(const ComplexValue& o);
    ComplexValue& mul_int(std::int64_t k);
    /// this += a * b without temporaries.
    void add_product(const ComplexValue& a, const ComplexValue& b);

    ComplexValue conj() const;
    ComplexValue operator-() const;
    ComplexValue inverse() const;

    friend ComplexValue operator+(ComplexValue a, const ComplexValue& b) { return a += b; }
    friend ComplexValue operator-(ComplexValue a, const ComplexValue& b) { return a -= b; }
    friend ComplexValue operator*(ComplexValue a, const ComplexValue& b) { return a *= b; }
    friend ComplexValue operator/(ComplexValue a, const ComplexValue& b) { return a /= b; }

    std::string to_string(int digits = 12) const;

private:
    Real re_;
    Real im_;
    double err_ = 0.0;
};

/// Unit roundoff bound 2^{1-precision}.
double unit_roundoff(int precision);

/// True when the certified discs around a and b intersect, i.e. the exact
/// values may coincide. With working precision in the hundreds of bits this
/// is the equality test used to match algebraic values.
bool certified_equal(const ComplexValue& a, const ComplexValue& b);

/// Nearest rational integer, certified: both |im| + err and the distance
/// from re to that integer plus err must be below 1/4.
BigInt round_to_integer(const ComplexValue& z);

/// Element of Z[zeta_m] in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
struct CyclotomicInteger {
    std::int64_t m = 1;
    std::vector<std::int64_t> coords{0};

    static CyclotomicInteger zero(std::int64_t m);
    static CyclotomicInteger from_int(std::int64_t v, std::int64_t m = 1);
    /// zeta_m^j.
    static CyclotomicInteger root(std::int64_t j, std::int64_t m);
    /// Reduce sum_j counts[j] zeta_m^j (counts of length m) to the power basis.
    static CyclotomicInteger from_exponent_counts(const std::vector<std::int64_t>& counts, std::int64_t m);

    CyclotomicInteger operator+(const CyclotomicInteger& o) const;
    CyclotomicInteger operator-(const CyclotomicInteger& o) const;
    CyclotomicInteger operator-() const;
    /// Applies the automorphism zeta -> zeta^a, gcd(a, m) = 1.
    CyclotomicInteger galois(std::int64_t a) const;
    CyclotomicInteger conj() const { return galois(-1); }
    /// Absolute norm to Z.
    std::int64_t norm() const;

    bool is_rational_integer() const;

    friend bool operator==(const CyclotomicInteger&, const CyclotomicInteger&) = default;
};

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t m);
std::int64_t euler_phi(std::int64_t m);

/// Exact product; both operands must share the conductor.
CyclotomicInteger cyc_mul(const CyclotomicInteger& a, const CyclotomicInteger& b);
/// Re-express a in Z[zeta_target], target a multiple of a.m.
CyclotomicInteger cyc_lift(const CyclotomicInteger& a, std::int64_t target);

ComplexValue embed_complex(const CyclotomicInteger& a, int precision = kDefaultPrecision);

}  // namespace hgff
