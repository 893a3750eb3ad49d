#include "hgff/trace_formula.hpp"

#include <map>
#include <mutex>

#include "hgff/errors.hpp"
#include "hgff/hypergeometric.hpp"
#include "hgff/quadratic_signs.hpp"

namespace hgff {

namespace {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void require_weight(int k) {
    if (k < 4 || k % 2 != 0) throw Error(ErrorCode::InvalidArgument, "weight must be even and at least 4");
}

void require_odd_prime(std::int64_t p) {
    if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not an odd prime");
}

std::pair<std::int64_t, std::int64_t> ab_for(std::int64_t p) {
    if (p % 4 == 3) return {0, 0};
    return two_square(p);
}

}  // namespace

BigInt g_poly(int k, const BigInt& s, std::int64_t p) {
    require_weight(k);
    BigInt total = 0;
    for (int j = 0; j <= k / 2 - 1; ++j) {
        BigInt term = binomial(k - 2 - j, j) * bigpow(BigInt(p), static_cast<unsigned>(j)) *
                      bigpow(s, static_cast<unsigned>(k - 2 * j - 2));
        total += (j % 2 == 0) ? term : BigInt(-term);
    }
    return total;
}

BigInt c_coeff(int d, int r) {
    if (d < 0 || r < 0) throw Error(ErrorCode::InvalidArgument, "indices must be non-negative");
    if (r < d) return 0;
    const int n = r - d;  // coefficient wanted
    // 1/(1 + x + x^2) truncated, then raised to d+1, then times (1 + x).
    std::vector<BigInt> inv(static_cast<std::size_t>(n + 1), 0);
    inv[0] = 1;
    for (int i = 1; i <= n; ++i) {
        inv[static_cast<std::size_t>(i)] = -inv[static_cast<std::size_t>(i - 1)];
        if (i >= 2) inv[static_cast<std::size_t>(i)] -= inv[static_cast<std::size_t>(i - 2)];
    }
    std::vector<BigInt> acc(static_cast<std::size_t>(n + 1), 0);
    acc[0] = 1;
    for (int t = 0; t <= d; ++t) {
        std::vector<BigInt> next(static_cast<std::size_t>(n + 1), 0);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
                next[static_cast<std::size_t>(i + j)] += acc[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(j)];
        acc = std::move(next);
    }
    return acc[static_cast<std::size_t>(n)] + (n >= 1 ? acc[static_cast<std::size_t>(n - 1)] : BigInt(0));
}

BigInt r_poly(int k, std::int64_t p, const BigInt& x) {
    require_weight(k);
    const int top = k / 2 - 1;
    BigInt total = 0;
    for (int d = 0; d <= top; ++d)
        total += c_coeff(d, top) * bigpow(BigInt(p), static_cast<unsigned>(top - d)) * bigpow(x, static_cast<unsigned>(d));
    return total;
}

BigInt delta(int k, std::int64_t p) {
    require_weight(k);
    require_odd_prime(p);
    if (p % 4 == 3) return bigpow(BigInt(-p), static_cast<unsigned>(k / 2 - 1));
    const auto [a, b] = ab_for(p);
    const BigInt twice = g_poly(k, BigInt(2 * a), p) + g_poly(k, BigInt(2 * b), p);
    if (twice % 2 != 0) throw Error(ErrorCode::InternalError, "delta is not an integer");
    return twice / 2;
}

std::vector<BigInt> lambda_sweep(std::int64_t p, const GaussTable& gt) {
    require_odd_prime(p);
    const FieldPtr& fld = gt.field;
    if (fld->p() != p || fld->degree() != 1) throw Error(ErrorCode::InvalidArgument, "Gauss table is not over F_p");
    const MultChar phi = quadratic_char(fld);
    const MultChar eps = trivial_char(fld);
    std::vector<BigInt> out;
    auto run = [&](const GaussTable& table) {
        const HypergeometricSum f3({phi, phi, phi}, {eps, eps, eps}, table);
        std::vector<BigInt> vals;
        for (std::int64_t lambda = 2; lambda <= p - 1; ++lambda) {
            const FieldElement l = fld->from_int(lambda);
            const int s = char_sign(phi, fld->sub(fld->one(), l));
            vals.push_back(s * round_to_integer(f3(l)));
        }
        return vals;
    };
    try {
        return run(gt);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::RoundingUncertain) throw;
    }
    for (int prec : kPrecisionLadder) {
        if (prec <= gt.precision) continue;
        try {
            return run(*gauss_table(fld, prec, gt.additive_scale));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RoundingUncertain) throw;
        }
    }
    throw Error(ErrorCode::PrecisionExhausted, "3F2 sweep values not certified");
}

const std::vector<BigInt>& lambda_sweep(std::int64_t p) {
    static std::mutex mu;
    static std::map<std::int64_t, std::vector<BigInt>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    auto vals = lambda_sweep(p, *gauss_table(make_field(p, 1)));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(p, std::move(vals)).first->second;
}

namespace {

BigInt trace_from_sweep(int k, std::int64_t p, const std::vector<BigInt>& sweep) {
    BigInt total = -2 - delta(k, p);
    for (const auto& v : sweep) total -= r_poly(k, p, v);
    return total;
}

BigInt tau_from_sweep(std::int64_t p, const std::vector<BigInt>& sweep) {
    const auto [a, b] = ab_for(p);
    const BigInt P = p;
    const int phi_m1 = p % 4 == 1 ? 1 : -1;
    const BigInt a2b2 = BigInt(a * a) * (b * b);
    BigInt twice = -2 - (2 + 3 * phi_m1) * bigpow(P, 5) + 80 * bigpow(P, 3) * a2b2 - 256 * P * a2b2 * a2b2;
    for (const auto& x : sweep) {
        twice -= bigpow(x, 5) - 4 * P * bigpow(x, 4) + 2 * P * P * bigpow(x, 3) + 5 * bigpow(P, 3) * x * x -
                 2 * bigpow(P, 4) * x - bigpow(P, 5);
    }
    if (twice % 2 != 0) throw Error(ErrorCode::InternalError, "tau formula produced a half-integer");
    return twice / 2;
}

}  // namespace

BigInt trace_gamma0_2(int k, std::int64_t p, const GaussTable& gt) {
    require_weight(k);
    return trace_from_sweep(k, p, lambda_sweep(p, gt));
}

BigInt trace_gamma0_2(int k, std::int64_t p) {
    require_weight(k);
    require_odd_prime(p);
    return trace_from_sweep(k, p, lambda_sweep(p));
}

BigInt tau_via_hypergeometric(std::int64_t p, const GaussTable& gt) {
    return tau_from_sweep(p, lambda_sweep(p, gt));
}

BigInt tau_via_hypergeometric(std::int64_t p) {
    require_odd_prime(p);
    return tau_from_sweep(p, lambda_sweep(p));
}

}  // namespace hgff
