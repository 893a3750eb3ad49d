#include "hgff/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gmp.h>

#include "hgff/errors.hpp"

namespace hgff {

namespace {

// Slack for the double-precision arithmetic used on error bounds.
constexpr double kErrSlack = 1.0 + 1e-12;

double up(double x) { return x * kErrSlack; }

int guard_precision(int precision) { return precision + 64; }

BigInt mpfr_to_bigint(mpfr_srcptr x) {
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, x, MPFR_RNDN);
    char* s = mpz_get_str(nullptr, 10, z);
    BigInt out(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, std::char_traits<char>::length(s) + 1);
    mpz_clear(z);
    return out;
}

void set_bigint(mpfr_ptr out, const BigInt& v) {
    const std::string s = v.str();
    mpfr_set_str(out, s.c_str(), 10, MPFR_RNDN);
}

double lower_abs(const Real& x) {
    if (mpfr_sgn(x.get()) >= 0) return mpfr_get_d(x.get(), MPFR_RNDD);
    return -mpfr_get_d(x.get(), MPFR_RNDU);
}

}  // namespace

double unit_roundoff(int precision) { return std::ldexp(1.0, 1 - precision); }

// ---------------------------------------------------------------------------
// Real

Real::Real(int precision) {
    mpfr_init2(v_, precision);
    mpfr_set_zero(v_, 1);
}

Real::Real(double v, int precision) {
    mpfr_init2(v_, precision);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    // steal the limbs, leave other as a valid zero-precision-owning husk
    *v_ = *other.v_;
    other.owns_ = false;
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        if (!owns_) {
            mpfr_init2(v_, mpfr_get_prec(other.v_));
            owns_ = true;
        } else {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        }
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) {
        if (owns_) mpfr_clear(v_);
        *v_ = *other.v_;
        owns_ = other.owns_;
        other.owns_ = false;
    }
    return *this;
}

Real::~Real() {
    if (owns_) mpfr_clear(v_);
}

double Real::abs_upper() const {
    if (mpfr_sgn(v_) >= 0) return mpfr_get_d(v_, MPFR_RNDU);
    return -mpfr_get_d(v_, MPFR_RNDD);
}

std::string Real::to_string(int digits) const {
    char* buf = nullptr;
    const std::string fmt = "%." + std::to_string(digits) + "Rg";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

// ---------------------------------------------------------------------------
// ComplexValue

ComplexValue::ComplexValue(int precision) : re_(precision), im_(precision) {}

ComplexValue::ComplexValue(double re, double im, double err, int precision)
    : re_(re, precision), im_(im, precision), err_(err) {}

ComplexValue ComplexValue::from_integer(const BigInt& v, int precision) {
    ComplexValue z(precision);
    set_bigint(z.re_.get(), v);
    if (boost::multiprecision::msb(boost::multiprecision::abs(v) + 1) + 1 >= static_cast<unsigned>(precision))
        z.err_ = up(unit_roundoff(precision) * z.re_.abs_upper());
    return z;
}

ComplexValue ComplexValue::from_rational(const Rational& v, int precision) {
    ComplexValue z(precision);
    if (v.denominator() == 1) return from_integer(BigInt(v.numerator()), precision);
    mpfr_set_si(z.re_.get(), v.numerator(), MPFR_RNDN);
    mpfr_div_si(z.re_.get(), z.re_.get(), v.denominator(), MPFR_RNDN);
    z.err_ = up(unit_roundoff(precision) * z.re_.abs_upper());
    return z;
}

ComplexValue ComplexValue::from_parts(mpfr_srcptr re, mpfr_srcptr im, double err, int precision) {
    ComplexValue z(precision);
    const int exact_re = mpfr_set(z.re_.get(), re, MPFR_RNDN);
    const int exact_im = mpfr_set(z.im_.get(), im, MPFR_RNDN);
    z.err_ = err;
    if (exact_re != 0 || exact_im != 0) z.err_ = up(err + unit_roundoff(precision) * z.l1_upper());
    return z;
}

ComplexValue ComplexValue::root_of_unity(std::int64_t j, std::int64_t m, int precision) {
    ComplexValue z(precision);
    const std::int64_t r = mod(j, m);
    if (r == 0) {
        mpfr_set_ui(z.re_.get(), 1, MPFR_RNDN);
        return z;
    }
    if (2 * r == m) {
        mpfr_set_si(z.re_.get(), -1, MPFR_RNDN);
        return z;
    }
    if (4 * r == m) {
        mpfr_set_ui(z.im_.get(), 1, MPFR_RNDN);
        return z;
    }
    if (4 * r == 3 * m) {
        mpfr_set_si(z.im_.get(), -1, MPFR_RNDN);
        return z;
    }
    mpfr_t angle;
    mpfr_init2(angle, precision + 16);
    mpfr_const_pi(angle, MPFR_RNDN);
    mpfr_mul_si(angle, angle, 2 * r, MPFR_RNDN);
    mpfr_div_si(angle, angle, m, MPFR_RNDN);
    mpfr_sin_cos(z.im_.get(), z.re_.get(), angle, MPFR_RNDN);
    mpfr_clear(angle);
    // argument error <= 3 * 2^{-prec-16} * 2pi, plus final rounding of each coordinate
    z.err_ = 2.0 * unit_roundoff(precision);
    return z;
}

ComplexValue& ComplexValue::operator+=(const ComplexValue& o) {
    mpfr_add(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_add(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    err_ = up(err_ + o.err_ + unit_roundoff(precision()) * l1_upper());
    return *this;
}

ComplexValue& ComplexValue::operator-=(const ComplexValue& o) {
    mpfr_sub(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_sub(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    err_ = up(err_ + o.err_ + unit_roundoff(precision()) * l1_upper());
    return *this;
}

ComplexValue& ComplexValue::operator*=(const ComplexValue& o) {
    const double la = l1_upper();
    const double lb = o.l1_upper();
    const int prec = precision();
    mpfr_t t1, t2, t3;
    mpfr_inits2(prec, t1, t2, t3, static_cast<mpfr_ptr>(nullptr));
    mpfr_mul(t1, re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_mul(t2, im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_mul(t3, re_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_mul(im_.get(), im_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_add(im_.get(), im_.get(), t3, MPFR_RNDN);
    mpfr_sub(re_.get(), t1, t2, MPFR_RNDN);
    mpfr_clears(t1, t2, t3, static_cast<mpfr_ptr>(nullptr));
    err_ = up(la * o.err_ + lb * err_ + err_ * o.err_ + 2.0 * unit_roundoff(prec) * la * lb);
    return *this;
}

void ComplexValue::add_product(const ComplexValue& a, const ComplexValue& b) {
    const double la = a.l1_upper();
    const double lb = b.l1_upper();
    const int prec = precision();
    thread_local mpfr_t t1, t2;
    thread_local int scratch_prec = 0;
    if (scratch_prec == 0) {
        mpfr_inits2(prec, t1, t2, static_cast<mpfr_ptr>(nullptr));
        scratch_prec = prec;
    } else if (scratch_prec != prec) {
        mpfr_set_prec(t1, prec);
        mpfr_set_prec(t2, prec);
        scratch_prec = prec;
    }
    mpfr_mul(t1, a.re_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_mul(t2, a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_add(re_.get(), re_.get(), t1, MPFR_RNDN);
    mpfr_mul(t1, a.re_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_mul(t2, a.im_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    mpfr_add(im_.get(), im_.get(), t1, MPFR_RNDN);
    const double u = unit_roundoff(prec);
    err_ = up(err_ + la * b.err_ + lb * a.err_ + a.err_ * b.err_ + 2.0 * u * la * lb + u * l1_upper());
}

ComplexValue& ComplexValue::mul_int(std::int64_t k) {
    mpfr_mul_si(re_.get(), re_.get(), k, MPFR_RNDN);
    mpfr_mul_si(im_.get(), im_.get(), k, MPFR_RNDN);
    err_ = up(err_ * static_cast<double>(std::llabs(k)) + unit_roundoff(precision()) * l1_upper());
    return *this;
}

ComplexValue ComplexValue::conj() const {
    ComplexValue z(*this);
    mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
    return z;
}

ComplexValue ComplexValue::operator-() const {
    ComplexValue z(*this);
    mpfr_neg(z.re_.get(), z.re_.get(), MPFR_RNDN);
    mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
    return z;
}

ComplexValue ComplexValue::inverse() const {
    const int prec = precision();
    const double lower = std::max(lower_abs(re_), lower_abs(im_));
    if (!(lower > up(err_)))
        throw Error(ErrorCode::PrecisionExhausted, "division by a value indistinguishable from zero");
    ComplexValue z(prec);
    mpfr_t n, t;
    mpfr_inits2(prec, n, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_sqr(n, re_.get(), MPFR_RNDN);
    mpfr_sqr(t, im_.get(), MPFR_RNDN);
    mpfr_add(n, n, t, MPFR_RNDN);
    mpfr_div(z.re_.get(), re_.get(), n, MPFR_RNDN);
    mpfr_div(z.im_.get(), im_.get(), n, MPFR_RNDN);
    mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
    mpfr_clears(n, t, static_cast<mpfr_ptr>(nullptr));
    z.err_ = up(err_ / (lower * (lower - err_)) + 6.0 * unit_roundoff(prec) / lower);
    return z;
}

ComplexValue& ComplexValue::operator/=(const ComplexValue& o) { return *this *= o.inverse(); }

std::string ComplexValue::to_string(int digits) const {
    std::string out = re_.to_string(digits);
    if (!mpfr_zero_p(im_.get())) {
        const bool neg = mpfr_sgn(im_.get()) < 0;
        Real a(im_);
        mpfr_abs(a.get(), a.get(), MPFR_RNDN);
        out += (neg ? " - " : " + ") + a.to_string(digits) + "i";
    }
    return out;
}

bool certified_equal(const ComplexValue& a, const ComplexValue& b) {
    const int prec = std::max(a.precision(), b.precision());
    ComplexValue d(prec);
    d += a;
    d -= b;
    const double lower = std::max(lower_abs(d.re()), lower_abs(d.im()));
    return lower <= d.err();
}

BigInt round_to_integer(const ComplexValue& z) {
    const int prec = z.precision();
    Real n(prec), dist(prec);
    mpfr_rint(n.get(), z.re().get(), MPFR_RNDN);
    mpfr_sub(dist.get(), z.re().get(), n.get(), MPFR_RNDN);
    const double slack = unit_roundoff(prec) * (z.re().abs_upper() + 1.0);
    if (!(z.im().abs_upper() + z.err() < 0.25) || !(dist.abs_upper() + z.err() + slack < 0.25))
        throw Error(ErrorCode::RoundingUncertain, "value " + z.to_string() + " is not certifiably an integer");
    return mpfr_to_bigint(n.get());
}

// ---------------------------------------------------------------------------
// Cyclotomic integers

std::int64_t euler_phi(std::int64_t m) {
    std::int64_t result = m;
    for (std::int64_t ell : prime_divisors(m)) result -= result / ell;
    return result;
}

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t m) {
    if (m <= 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
    // x^m - 1 divided by Phi_d for every proper divisor d.
    std::vector<std::int64_t> num(static_cast<std::size_t>(m + 1), 0);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (std::int64_t d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const auto den = cyclotomic_polynomial(d);
        // exact division by a monic polynomial
        const std::size_t dn = den.size() - 1;
        std::vector<std::int64_t> quot(num.size() - dn, 0);
        for (std::size_t i = num.size() - 1; i + 1 > dn; --i) {
            const std::int64_t c = num[i];
            quot[i - dn] = c;
            for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
            if (i == dn) break;
        }
        num = std::move(quot);
    }
    return num;
}

namespace {

// Reduce a polynomial (constant first) modulo the monic Phi_m.
std::vector<std::int64_t> reduce_mod_phi(std::vector<std::int64_t> poly, std::int64_t m) {
    const auto phi = cyclotomic_polynomial(m);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
        const std::int64_t c = poly[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
    }
    poly.resize(deg, 0);
    return poly;
}

}  // namespace

CyclotomicInteger CyclotomicInteger::zero(std::int64_t m) {
    return {m, std::vector<std::int64_t>(static_cast<std::size_t>(euler_phi(m)), 0)};
}

CyclotomicInteger CyclotomicInteger::from_int(std::int64_t v, std::int64_t m) {
    CyclotomicInteger z = zero(m);
    z.coords[0] = v;
    return z;
}

CyclotomicInteger CyclotomicInteger::root(std::int64_t j, std::int64_t m) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
    counts[static_cast<std::size_t>(mod(j, m))] = 1;
    return from_exponent_counts(counts, m);
}

CyclotomicInteger CyclotomicInteger::from_exponent_counts(const std::vector<std::int64_t>& counts, std::int64_t m) {
    if (static_cast<std::int64_t>(counts.size()) != m)
        throw Error(ErrorCode::InvalidArgument, "exponent counts must have length m");
    return {m, reduce_mod_phi(counts, m)};
}

CyclotomicInteger CyclotomicInteger::operator+(const CyclotomicInteger& o) const {
    if (m != o.m) throw Error(ErrorCode::ConductorMismatch, "conductors differ");
    CyclotomicInteger r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
}

CyclotomicInteger CyclotomicInteger::operator-(const CyclotomicInteger& o) const { return *this + (-o); }

CyclotomicInteger CyclotomicInteger::operator-() const {
    CyclotomicInteger r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
}

CyclotomicInteger CyclotomicInteger::galois(std::int64_t a) const {
    if (std::gcd(mod(a, m), m) != 1) throw Error(ErrorCode::InvalidArgument, "galois exponent not a unit");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
    for (std::size_t j = 0; j < coords.size(); ++j)
        counts[static_cast<std::size_t>(mod(static_cast<std::int64_t>(j) * a, m))] += coords[j];
    return from_exponent_counts(counts, m);
}

std::int64_t CyclotomicInteger::norm() const {
    CyclotomicInteger acc = from_int(1, m);
    for (std::int64_t a = 1; a <= m; ++a)
        if (std::gcd(a, m) == 1) acc = cyc_mul(acc, galois(a));
    if (!acc.is_rational_integer()) throw Error(ErrorCode::InternalError, "norm is not rational");
    return acc.coords[0];
}

bool CyclotomicInteger::is_rational_integer() const {
    return std::all_of(coords.begin() + 1, coords.end(), [](std::int64_t c) { return c == 0; });
}

CyclotomicInteger cyc_mul(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    if (a.m != b.m) throw Error(ErrorCode::ConductorMismatch, "conductors differ");
    std::vector<std::int64_t> prod(a.coords.size() + b.coords.size(), 0);
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        for (std::size_t j = 0; j < b.coords.size(); ++j) prod[i + j] += a.coords[i] * b.coords[j];
    return {a.m, reduce_mod_phi(std::move(prod), a.m)};
}

CyclotomicInteger cyc_lift(const CyclotomicInteger& a, std::int64_t target) {
    if (target % a.m != 0) throw Error(ErrorCode::ConductorMismatch, "target conductor is not a multiple");
    const std::int64_t step = target / a.m;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(target), 0);
    for (std::size_t j = 0; j < a.coords.size(); ++j)
        counts[static_cast<std::size_t>(static_cast<std::int64_t>(j) * step % target)] += a.coords[j];
    return CyclotomicInteger::from_exponent_counts(counts, target);
}

ComplexValue embed_complex(const CyclotomicInteger& a, int precision) {
    const int guard = guard_precision(precision);
    ComplexValue acc(guard);
    for (std::size_t j = 0; j < a.coords.size(); ++j) {
        if (a.coords[j] == 0) continue;
        ComplexValue term = ComplexValue::root_of_unity(static_cast<std::int64_t>(j), a.m, guard);
        term.mul_int(a.coords[j]);
        acc += term;
    }
    // round down to the requested precision
    ComplexValue out(precision);
    out += acc;
    return out;
}

}  // namespace hgff
