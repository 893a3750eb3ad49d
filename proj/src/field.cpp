#include "hgff/field.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "hgff/arith.hpp"
#include "hgff/errors.hpp"

namespace hgff {

namespace {

using Poly = std::vector<std::int64_t>;

// Coordinates of the idx-th vector when vectors are ordered
// lexicographically with the constant coordinate most significant.
Poly lex_vector(std::int64_t idx, std::int64_t p, int n) {
    Poly c(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        c[static_cast<std::size_t>(i)] = idx % p;
        idx /= p;
    }
    return c;
}

bool has_root(const Poly& monic, std::int64_t p) {
    for (std::int64_t a = 0; a < p; ++a) {
        std::int64_t v = 0;
        for (auto it = monic.rbegin(); it != monic.rend(); ++it) v = mod(v * a + *it, p);
        if (v == 0) return true;
    }
    return false;
}

}  // namespace

Field::Field(std::int64_t p, int n, std::vector<std::int64_t> modulus)
    : p_(p), n_(n), q_(ipow(p, n)), modulus_(std::move(modulus)) {}

FieldPtr Field::make(std::int64_t p, int n) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
    if (n < 1 || n > 3) throw Error(ErrorCode::InvalidArgument, "extension degree must be 1, 2 or 3");
    const std::int64_t q = ipow(p, n);

    // Least monic irreducible of degree n. For n <= 3 root-freeness is
    // equivalent to irreducibility.
    Poly modulus;
    for (std::int64_t idx = 0; idx < q; ++idx) {
        Poly cand = lex_vector(idx, p, n);
        cand.push_back(1);
        if (n == 1 || !has_root(cand, p)) {
            modulus = std::move(cand);
            break;
        }
    }
    if (modulus.empty()) throw Error(ErrorCode::InternalError, "no irreducible modulus found");

    std::shared_ptr<Field> fld(new Field(p, n, std::move(modulus)));
    const std::int64_t order = q - 1;
    const auto primes = prime_divisors(order);

    auto is_primitive = [&](FieldElement g) {
        if (fld->is_zero(g)) return false;
        for (std::int64_t ell : primes) {
            FieldElement r = fld->one();
            FieldElement b = g;
            for (std::int64_t e = order / ell; e > 0; e >>= 1) {
                if (e & 1) r = fld->mul_poly(r, b);
                b = fld->mul_poly(b, b);
            }
            if (r == fld->one()) return false;
        }
        return true;
    };

    std::optional<FieldElement> gen;
    for (std::int64_t idx = 1; idx < q && !gen; ++idx) {
        FieldElement cand = fld->from_coords(lex_vector(idx, p, n));
        if (is_primitive(cand)) gen = cand;
    }
    if (!gen) throw Error(ErrorCode::InternalError, "no primitive root found");

    fld->exp_.resize(static_cast<std::size_t>(order));
    fld->log_.assign(static_cast<std::size_t>(q), -1);
    FieldElement cur = fld->one();
    for (std::int64_t k = 0; k < order; ++k) {
        fld->exp_[static_cast<std::size_t>(k)] = cur;
        if (fld->log_[cur.code] != -1) throw Error(ErrorCode::InternalError, "generator is not primitive");
        fld->log_[cur.code] = k;
        cur = fld->mul_poly(cur, *gen);
    }

    fld->trace_.assign(static_cast<std::size_t>(q), 0);
    for (std::int64_t code = 1; code < q; ++code) {
        FieldElement x{static_cast<std::uint32_t>(code)};
        FieldElement acc = fld->zero();
        FieldElement conj = x;
        for (int i = 0; i < n; ++i) {
            acc = fld->add(acc, conj);
            conj = fld->pow(conj, p);
        }
        const auto c = fld->coords(acc);
        for (int i = 1; i < n; ++i)
            if (c[static_cast<std::size_t>(i)] != 0) throw Error(ErrorCode::InternalError, "trace left F_p");
        fld->trace_[static_cast<std::size_t>(code)] = c[0];
    }
    return fld;
}

FieldPtr make_field(std::int64_t p, int n) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, int>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, n});
    if (it != cache.end()) return it->second;
    FieldPtr fld = Field::make(p, n);
    cache.emplace(std::make_pair(p, n), fld);
    return fld;
}

FieldElement Field::from_int(std::int64_t v) const {
    return {static_cast<std::uint32_t>(mod(v, p_))};
}

FieldElement Field::from_coords(const std::vector<std::int64_t>& coords) const {
    std::int64_t code = 0;
    std::int64_t scale = 1;
    for (int i = 0; i < n_; ++i) {
        const std::int64_t c = i < static_cast<int>(coords.size()) ? coords[static_cast<std::size_t>(i)] : 0;
        code += mod(c, p_) * scale;
        scale *= p_;
    }
    return {static_cast<std::uint32_t>(code)};
}

std::vector<std::int64_t> Field::coords(FieldElement x) const {
    std::vector<std::int64_t> c(static_cast<std::size_t>(n_));
    std::int64_t code = x.code;
    for (int i = 0; i < n_; ++i) {
        c[static_cast<std::size_t>(i)] = code % p_;
        code /= p_;
    }
    return c;
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
    if (n_ == 1) return {static_cast<std::uint32_t>((a.code + b.code) % p_)};
    std::int64_t x = a.code, y = b.code, code = 0, scale = 1;
    for (int i = 0; i < n_; ++i) {
        code += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return {static_cast<std::uint32_t>(code)};
}

FieldElement Field::neg(FieldElement a) const {
    std::int64_t x = a.code, code = 0, scale = 1;
    for (int i = 0; i < n_; ++i) {
        code += ((p_ - x % p_) % p_) * scale;
        x /= p_;
        scale *= p_;
    }
    return {static_cast<std::uint32_t>(code)};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement Field::mul(FieldElement a, FieldElement b) const {
    if (a.code == 0 || b.code == 0) return zero();
    return exp((log_[a.code] + log_[b.code]) % order());
}

FieldElement Field::inv(FieldElement a) const {
    if (a.code == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
    return exp(mod(-log_[a.code], order()));
}

FieldElement Field::pow(FieldElement a, std::int64_t e) const {
    if (a.code == 0) {
        if (e == 0) return one();
        if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative power of zero");
        return zero();
    }
    if (exp_.empty()) {  // during construction: square-and-multiply
        FieldElement r = one();
        FieldElement b = a;
        for (std::int64_t k = e; k > 0; k >>= 1) {
            if (k & 1) r = mul_poly(r, b);
            b = mul_poly(b, b);
        }
        return r;
    }
    const std::int64_t m = order();
    const std::int64_t k = static_cast<std::int64_t>(
        (static_cast<__int128>(log_[a.code]) * mod(e, m)) % m);
    return exp(k);
}

std::int64_t Field::dlog(FieldElement x) const {
    if (x.code == 0 || x.code >= static_cast<std::uint32_t>(q_))
        throw Error(ErrorCode::InvalidArgument, "discrete log of zero");
    return log_[x.code];
}

FieldElement Field::exp(std::int64_t k) const { return exp_[static_cast<std::size_t>(mod(k, order()))]; }

FieldElement Field::mul_poly(FieldElement a, FieldElement b) const {
    const auto x = coords(a);
    const auto y = coords(b);
    std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * n_ - 1), 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            prod[static_cast<std::size_t>(i + j)] =
                (prod[static_cast<std::size_t>(i + j)] + x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)]) % p_;
    for (int d = 2 * n_ - 2; d >= n_; --d) {
        const std::int64_t lead = prod[static_cast<std::size_t>(d)];
        if (lead == 0) continue;
        for (int i = 0; i <= n_; ++i) {
            auto& slot = prod[static_cast<std::size_t>(d - n_ + i)];
            slot = mod(slot - lead * modulus_[static_cast<std::size_t>(i)], p_);
        }
    }
    prod.resize(static_cast<std::size_t>(n_));
    return from_coords(prod);
}

FieldElement Field::frobenius(FieldElement x) const {
    FieldElement r = one();
    FieldElement b = x;
    for (std::int64_t k = p_; k > 0; k >>= 1) {
        if (k & 1) r = mul_poly(r, b);
        b = mul_poly(b, b);
    }
    return r;
}

std::int64_t trace_to_prime(const Field& fld, FieldElement x) { return fld.trace(x); }

// ---------------------------------------------------------------------------

std::int64_t MultChar::order() const {
    const std::int64_t m = field->order();
    return m / std::gcd(index, m);
}

MultChar MultChar::conj() const { return {field, mod(-index, field->order())}; }

MultChar MultChar::pow(std::int64_t e) const {
    const std::int64_t m = field->order();
    return {field, static_cast<std::int64_t>((static_cast<__int128>(index) * mod(e, m)) % m)};
}

MultChar MultChar::operator*(const MultChar& other) const {
    if (field != other.field) throw Error(ErrorCode::InvalidArgument, "characters on different fields");
    return {field, (index + other.index) % field->order()};
}

MultChar make_char(FieldPtr fld, std::int64_t index) {
    const std::int64_t m = fld->order();
    return {std::move(fld), mod(index, m)};
}

MultChar trivial_char(FieldPtr fld) { return {std::move(fld), 0}; }

MultChar canonical_char(FieldPtr fld, std::int64_t k) {
    const std::int64_t m = fld->order();
    if (k <= 0 || m % k != 0)
        throw Error(ErrorCode::OrderUnavailable,
                    "no character of order " + std::to_string(k) + " on F_" + std::to_string(fld->q()));
    return {std::move(fld), (m / k) % m};
}

MultChar quadratic_char(FieldPtr fld) { return canonical_char(std::move(fld), 2); }

MultChar char_from_fraction(FieldPtr fld, std::int64_t t, std::int64_t k) {
    return canonical_char(std::move(fld), k).pow(t);
}

std::optional<std::int64_t> char_eval(const MultChar& chi, FieldElement x) {
    if (x.code == 0) return std::nullopt;
    const std::int64_t m = chi.field->order();
    return static_cast<std::int64_t>((static_cast<__int128>(chi.index) * chi.field->dlog(x)) % m);
}

int char_sign(const MultChar& chi, FieldElement x) {
    if (2 % chi.order() != 0) throw Error(ErrorCode::InvalidArgument, "character is not quadratic");
    const auto e = char_eval(chi, x);
    if (!e) return 0;
    return *e == 0 ? 1 : -1;
}

}  // namespace hgff
