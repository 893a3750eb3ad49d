#include "hgff/padic.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "hgff/errors.hpp"

namespace hgff {

namespace {

using Poly = std::vector<std::uint64_t>;  // coefficients mod p^K, degree < K

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    const std::uint64_t s = a + b;
    return s >= m ? s - m : s;
}

Poly poly_mul(const Poly& f, const Poly& g, std::size_t K, std::uint64_t M) {
    Poly out(K, 0);
    for (std::size_t i = 0; i < K; ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; i + j < K; ++j) out[i + j] = addmod(out[i + j], mulmod(f[i], g[j], M), M);
    }
    return out;
}

// f(y + h), truncated.
Poly taylor_shift(const Poly& f, std::uint64_t h, std::size_t K, std::uint64_t M) {
    Poly g(K, 0);
    for (std::size_t t = K; t-- > 0;) {
        // g = g * (y + h) + f_t
        Poly next(K, 0);
        for (std::size_t i = 0; i < K; ++i) {
            if (g[i] == 0) continue;
            next[i] = addmod(next[i], mulmod(g[i], h, M), M);
            if (i + 1 < K) next[i + 1] = addmod(next[i + 1], g[i], M);
        }
        next[0] = addmod(next[0], f[t], M);
        g = std::move(next);
    }
    return g;
}

std::uint64_t poly_eval(const Poly& f, std::uint64_t y, std::uint64_t M) {
    std::uint64_t acc = 0;
    for (std::size_t t = f.size(); t-- > 0;) acc = addmod(mulmod(acc, y, M), f[t], M);
    return acc;
}

// blocks[s] = prod_{0 <= i < p^s, p does not divide i} (y + i) truncated to
// degree < K, for s = 1..K-1. Evaluated only at multiples of p, where the
// truncation is exact mod p^K.
struct GammaBlocks {
    std::uint64_t M;
    std::vector<Poly> blocks;
};

std::shared_ptr<const GammaBlocks> gamma_blocks(std::int64_t p, int K) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const GammaBlocks>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, K});
        if (it != cache.end()) return it->second;
    }
    auto gb = std::make_shared<GammaBlocks>();
    const std::uint64_t M = padic_modulus(p, K);
    const auto k = static_cast<std::size_t>(K);
    gb->M = M;
    gb->blocks.resize(k);
    if (K >= 2) {
        Poly f(k, 0);
        f[0] = 1;
        for (std::int64_t i = 1; i < p; ++i) {
            Poly lin(k, 0);
            lin[0] = static_cast<std::uint64_t>(i) % M;
            if (k > 1) lin[1] = 1;
            f = poly_mul(f, lin, k, M);
        }
        gb->blocks[1] = f;
        std::uint64_t ps = static_cast<std::uint64_t>(p);
        for (int s = 1; s + 1 < K; ++s) {
            Poly acc(k, 0);
            acc[0] = 1;
            for (std::int64_t c = 0; c < p; ++c)
                acc = poly_mul(acc, taylor_shift(gb->blocks[static_cast<std::size_t>(s)],
                                                 mulmod(static_cast<std::uint64_t>(c), ps, M), k, M),
                               k, M);
            gb->blocks[static_cast<std::size_t>(s + 1)] = acc;
            ps *= static_cast<std::uint64_t>(p);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(p, K), gb);
    return gb;
}

std::uint64_t rational_residue(const Rational& x, std::int64_t p, std::uint64_t M) {
    if (x.denominator() % p == 0) throw Error(ErrorCode::NotPadicInteger, "denominator divisible by p");
    const auto num = static_cast<std::uint64_t>(mod(x.numerator(), static_cast<std::int64_t>(M)));
    const auto den = static_cast<std::uint64_t>(mod(x.denominator(), static_cast<std::int64_t>(M)));
    return mulmod(num, invmod(den, M), M);
}

}  // namespace

std::uint64_t padic_modulus(std::int64_t p, int k) {
    if (p < 2 || k < 1) throw Error(ErrorCode::InvalidArgument, "bad p-adic precision");
    unsigned __int128 m = 1;
    for (int i = 0; i < k; ++i) {
        m *= static_cast<unsigned __int128>(p);
        if (m >= (static_cast<unsigned __int128>(1) << 62))
            throw Error(ErrorCode::PrecisionExhausted, "p^k exceeds the 62-bit residue range");
    }
    return static_cast<std::uint64_t>(m);
}

Rational frac(const Rational& x) { return x - Rational(floor_rational(x)); }

std::int64_t floor_rational(const Rational& x) {
    const std::int64_t n = x.numerator(), d = x.denominator();  // d > 0
    return n >= 0 ? n / d : -((-n + d - 1) / d);
}

PadicResidue teichmuller(std::int64_t p, std::int64_t x, int k) {
    if (mod(x, p) == 0) throw Error(ErrorCode::InvalidArgument, "Teichmuller lift of zero");
    const std::uint64_t M = padic_modulus(p, k);
    std::uint64_t t = static_cast<std::uint64_t>(mod(x, static_cast<std::int64_t>(M)));
    for (int i = 0; i < k; ++i) t = powmod(t, static_cast<std::uint64_t>(p), M);
    return {p, k, t};
}

std::uint64_t padic_gamma_int(std::int64_t p, std::uint64_t n, int k) {
    const auto gb = gamma_blocks(p, k);
    const std::uint64_t M = gb->M;
    if (n >= M) throw Error(ErrorCode::InvalidArgument, "gamma argument out of range");
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(k));
    std::uint64_t rest = n;
    for (int s = 0; s < k; ++s) {
        digits[static_cast<std::size_t>(s)] = rest % static_cast<std::uint64_t>(p);
        rest /= static_cast<std::uint64_t>(p);
    }
    std::vector<std::uint64_t> pw(static_cast<std::size_t>(k));
    pw[0] = 1;
    for (int s = 1; s < k; ++s) pw[static_cast<std::size_t>(s)] = pw[static_cast<std::size_t>(s - 1)] * static_cast<std::uint64_t>(p);

    std::uint64_t acc = 1 % M, offset = 0;
    for (int s = k - 1; s >= 1; --s) {
        const auto& f = gb->blocks[static_cast<std::size_t>(s)];
        for (std::uint64_t c = 0; c < digits[static_cast<std::size_t>(s)]; ++c) {
            acc = mulmod(acc, poly_eval(f, offset % M, M), M);
            offset += pw[static_cast<std::size_t>(s)];
        }
    }
    for (std::uint64_t c = 1; c < digits[0]; ++c) acc = mulmod(acc, (offset + c) % M, M);
    return (n % 2 == 1) ? (M - acc) % M : acc;
}

PadicResidue padic_gamma(std::int64_t p, const Rational& x, int k) {
    const std::uint64_t M = padic_modulus(p, k);
    return {p, k, padic_gamma_int(p, rational_residue(x, p, M), k)};
}

PadicResidue eval_G(std::int64_t p, const GParams& params, int k, int scale) {
    if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidPrime, "mGm needs an odd prime");
    if (params.a.size() != params.b.size() || params.a.empty())
        throw Error(ErrorCode::InvalidArgument, "parameter lists must be non-empty and of equal length");
    for (const auto& r : params.a)
        if (r.denominator() % p == 0) throw Error(ErrorCode::NotPadicInteger, "parameter not in Z_p");
    for (const auto& r : params.b)
        if (r.denominator() % p == 0) throw Error(ErrorCode::NotPadicInteger, "parameter not in Z_p");
    const std::uint64_t Mk = padic_modulus(p, k);
    if (mod(params.x, p) == 0) return {p, k, 0};

    const std::size_t m = params.a.size();
    std::vector<Rational> A(m), Bm(m);
    for (std::size_t i = 0; i < m; ++i) {
        A[i] = frac(params.a[i]);
        Bm[i] = frac(-params.b[i]);
    }

    std::vector<int> expo(static_cast<std::size_t>(p - 1));
    int min_expo = 0;
    for (std::int64_t j = 0; j < p - 1; ++j) {
        const Rational r(j, p - 1);
        int e = scale;
        for (std::size_t i = 0; i < m; ++i)
            e += static_cast<int>(-floor_rational(A[i] - r) - floor_rational(Bm[i] + r));
        expo[static_cast<std::size_t>(j)] = e;
        min_expo = std::min(min_expo, e);
    }
    const int V = -min_expo;
    const int K = k + V;
    const std::uint64_t M = padic_modulus(p, K);

    std::uint64_t denom = 1;
    for (std::size_t i = 0; i < m; ++i) {
        denom = mulmod(denom, padic_gamma_int(p, rational_residue(A[i], p, M), K), M);
        denom = mulmod(denom, padic_gamma_int(p, rational_residue(Bm[i], p, M), K), M);
    }
    const std::uint64_t inv_denom = invmod(denom, M);
    const std::uint64_t omega_bar = invmod(teichmuller(p, params.x, K).value, M);

    std::uint64_t sum = 0, omega_pow = 1;
    for (std::int64_t j = 0; j < p - 1; ++j) {
        const int e = expo[static_cast<std::size_t>(j)] + V;  // >= 0
        if (e < K) {
            const Rational r(j, p - 1);
            std::uint64_t term = mulmod(omega_pow, inv_denom, M);
            for (std::size_t i = 0; i < m; ++i) {
                term = mulmod(term, padic_gamma_int(p, rational_residue(frac(A[i] - r), p, M), K), M);
                term = mulmod(term, padic_gamma_int(p, rational_residue(frac(Bm[i] + r), p, M), K), M);
            }
            // (-1)^{jm} times the sign of (-p)^{e - V - scale}
            const std::int64_t sign_exp = j * static_cast<std::int64_t>(m) + (e - V - scale);
            if (mod(sign_exp, 2) == 1) term = (M - term) % M;
            term = mulmod(term, static_cast<std::uint64_t>(ipow(p, e)), M);
            sum = addmod(sum, term, M);
        }
        omega_pow = mulmod(omega_pow, omega_bar, M);
    }
    // times -1/(p-1)
    sum = mulmod(sum, invmod(static_cast<std::uint64_t>(p - 1), M), M);
    sum = (M - sum) % M;

    const auto pv = static_cast<std::uint64_t>(ipow(p, V));
    if (sum % pv != 0) throw Error(ErrorCode::NotPadicInteger, "scaled G value is not p-integral");
    return {p, k, (sum / pv) % Mk};
}

BigInt lift_symmetric(const PadicResidue& r, const BigInt& bound) {
    const BigInt M = BigInt(r.modulus());
    if (M <= 2 * bound) throw Error(ErrorCode::LiftOutOfRange, "p^k too small for the requested bound");
    BigInt v = BigInt(r.value);
    if (2 * v > M) v -= M;
    if (boost::multiprecision::abs(v) > bound)
        throw Error(ErrorCode::LiftOutOfRange, "no representative within the bound");
    return v;
}

BigInt weil_bound(std::int64_t p, int weight) {
    const BigInt pw = bigpow(BigInt(p), static_cast<unsigned>(weight - 1));
    BigInt root = boost::multiprecision::sqrt(pw);
    if (root * root < pw) root += 1;
    return 4 * root * (1 + p);
}

int default_precision(std::int64_t p, int weight) {
    const BigInt target = 2 * weil_bound(p, weight);
    int k = 1;
    BigInt pk = p;
    while (pk <= target || k < 3) {
        pk *= p;
        ++k;
    }
    return k;
}

}  // namespace hgff
