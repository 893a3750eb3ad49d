#include "hgff/eta.hpp"

#include <map>
#include <mutex>

#include "hgff/errors.hpp"

namespace hgff {

Rational EtaProduct::weight() const {
    std::int64_t s = 0;
    for (const auto& [delta, r] : factors) s += r;
    return Rational(s, 2);
}

std::int64_t EtaProduct::offset_numerator() const {
    std::int64_t s = 0;
    for (const auto& [delta, r] : factors) s += static_cast<std::int64_t>(delta) * r;
    return s;
}

std::string EtaProduct::to_string() const {
    std::string out;
    for (const auto& [delta, r] : factors) {
        out += "eta(";
        if (delta != 1) out += std::to_string(delta);
        out += "z)^" + std::to_string(r);
    }
    return out;
}

std::vector<BigInt> euler_power(int r, int D) {
    // prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}, k over all integers
    std::vector<std::int64_t> f(static_cast<std::size_t>(D + 1), 0);
    for (std::int64_t k = 0;; ++k) {
        bool any = false;
        for (std::int64_t kk : {k, -k}) {
            const std::int64_t e = kk * (3 * kk - 1) / 2;
            if (e <= D) {
                f[static_cast<std::size_t>(e)] = (k % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any) break;
    }
    // g = f^r with f_0 = 1: n g_n = sum_{k=1}^n ((r + 1) k - n) f_k g_{n-k}
    std::vector<BigInt> g(static_cast<std::size_t>(D + 1), 0);
    g[0] = 1;
    for (int n = 1; n <= D; ++n) {
        BigInt acc = 0;
        for (int k = 1; k <= n; ++k) {
            const std::int64_t fk = f[static_cast<std::size_t>(k)];
            if (fk == 0) continue;
            acc += BigInt((static_cast<std::int64_t>(r) + 1) * k - n) * fk * g[static_cast<std::size_t>(n - k)];
        }
        if (acc % n != 0) throw Error(ErrorCode::InternalError, "power recurrence lost integrality");
        g[static_cast<std::size_t>(n)] = acc / n;
    }
    return g;
}

std::vector<BigInt> eta_expansion(const EtaProduct& prod, int N) {
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "negative truncation");
    const std::int64_t num = prod.offset_numerator();
    if (num % 24 != 0) throw Error(ErrorCode::NotAnIntegralForm, prod.to_string() + " has a fractional leading power");
    const std::int64_t offset = num / 24;
    std::vector<BigInt> out(static_cast<std::size_t>(N + 1), 0);
    if (offset < 0) throw Error(ErrorCode::NotAnIntegralForm, prod.to_string() + " has a pole at infinity");
    if (offset > N) return out;
    const int D = N - static_cast<int>(offset);

    std::vector<BigInt> series(static_cast<std::size_t>(D + 1), 0);
    series[0] = 1;
    for (const auto& [delta, r] : prod.factors) {
        if (delta <= 0) throw Error(ErrorCode::InvalidArgument, "eta multiplier must be positive");
        const auto base = euler_power(r, D / delta);
        std::vector<BigInt> next(static_cast<std::size_t>(D + 1), 0);
        for (int i = 0; i <= D; ++i) {
            if (series[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; i + j * delta <= D; ++j)
                next[static_cast<std::size_t>(i + j * delta)] += series[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(j)];
        }
        series = std::move(next);
    }
    for (int i = 0; i <= D; ++i) out[static_cast<std::size_t>(i + offset)] = series[static_cast<std::size_t>(i)];
    return out;
}

std::vector<BigInt> eta_expansion(const EtaCombination& comb, int N) {
    std::vector<BigInt> out(static_cast<std::size_t>(N + 1), 0);
    for (const auto& [c, prod] : comb.terms) {
        const auto part = eta_expansion(prod, N);
        for (int i = 0; i <= N; ++i) out[static_cast<std::size_t>(i)] += c * part[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace hgff
