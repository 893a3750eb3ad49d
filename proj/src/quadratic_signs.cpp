#include "hgff/quadratic_signs.hpp"

#include <algorithm>
#include <cmath>

#include "hgff/arith.hpp"
#include "hgff/errors.hpp"

namespace hgff {

namespace {

std::int64_t isqrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
}

}  // namespace

int kronecker(std::int64_t n, std::int64_t m) {
    if (m == 0) return (n == 1 || n == -1) ? 1 : 0;
    int result = 1;
    if (m < 0) {
        m = -m;
        if (n < 0) result = -result;
    }
    int twos = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (n % 2 == 0) return 0;
        const std::int64_t r8 = mod(n, 8);
        if ((twos % 2 == 1) && (r8 == 3 || r8 == 5)) result = -result;
    }
    // Jacobi symbol (n / m), m odd positive
    std::int64_t a = mod(n, m);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r8 = m % 8;
            if (r8 == 3 || r8 == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

std::pair<std::int64_t, std::int64_t> two_square(std::int64_t p) {
    require_prime(p);
    if (p % 4 != 1) throw Error(ErrorCode::NotRepresentable, std::to_string(p) + " is not 1 mod 4");
    for (std::int64_t x = 1; x * x < p; x += 2) {
        const std::int64_t y = isqrt(p - x * x);
        if (y * y == p - x * x && y % 2 == 0) return {x, y};
    }
    throw Error(ErrorCode::InternalError, "no two-square representation found");
}

std::pair<std::int64_t, std::int64_t> u2v2(std::int64_t p) {
    require_prime(p);
    if (p % 8 != 1) throw Error(ErrorCode::NotRepresentable, std::to_string(p) + " is not 1 mod 8");
    for (std::int64_t v = 0; 2 * v * v < p; v += 2) {
        const std::int64_t u = isqrt(p - 2 * v * v);
        if (u * u == p - 2 * v * v) return {mod(u, 4) == 3 ? u : -u, v};
    }
    throw Error(ErrorCode::InternalError, "no representation u^2 + 2v^2 found");
}

std::vector<std::array<std::int64_t, 4>> quinary_all(std::int64_t p) {
    std::vector<std::array<std::int64_t, 4>> out;
    const std::int64_t amax = isqrt(p);
    const std::int64_t bmax = isqrt(p / 5);
    for (std::int64_t a = -amax; a <= amax; ++a) {
        if (mod(a, 5) != 4) continue;
        const std::int64_t rest = p - a * a;
        if (rest < 0 || rest % 5 != 0) continue;
        const std::int64_t s = rest / 5;
        for (std::int64_t b = -bmax; b <= bmax; ++b) {
            if (b * b > s) continue;
            for (std::int64_t c = -bmax; c <= bmax; ++c) {
                const std::int64_t dd = s - b * b - c * c;
                if (dd < 0) continue;
                const std::int64_t d0 = isqrt(dd);
                if (d0 * d0 != dd) continue;
                for (int sgn : {-1, 1}) {
                    if (d0 == 0 && sgn > 0) continue;
                    const std::int64_t d = sgn * d0;
                    if (a * b == d * d - c * c - c * d) out.push_back({a, b, c, d});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::array<std::int64_t, 4> quinary(std::int64_t p) {
    require_prime(p);
    if (p % 10 != 1) throw Error(ErrorCode::NotRepresentable, std::to_string(p) + " is not 1 mod 10");
    const auto all = quinary_all(p);
    if (all.empty()) throw Error(ErrorCode::NotRepresentable, "no quinary representation of " + std::to_string(p));
    return all.front();
}

bool sign_defined(SignKind kind, std::int64_t p) {
    switch (kind) {
        case SignKind::Sx: return p % 12 == 1;
        case SignKind::S20: return p % 20 == 1;
        case SignKind::S6: return p % 6 == 1;
        case SignKind::S4: return p % 4 == 1;
        case SignKind::Su: return p % 24 == 1;
        case SignKind::S12: return p % 12 == 1;
        case SignKind::S10: return p % 10 == 1;
    }
    return false;
}

SignValue sign(SignKind kind, std::int64_t p) {
    require_prime(p);
    if (!sign_defined(kind, p))
        throw Error(ErrorCode::ClassMismatch, to_string(kind) + " is not defined at p = " + std::to_string(p));
    switch (kind) {
        case SignKind::Sx:
        case SignKind::S20: {
            const std::int64_t ell = kind == SignKind::Sx ? 3 : 5;
            const auto [x, y] = two_square(p);
            if (y % ell == 0) return SignValue::Plus;
            if (x % ell == 0) return SignValue::Minus;
            throw Error(ErrorCode::InternalError, "neither coordinate divisible");
        }
        case SignKind::S6:
            return p % 12 == 1 ? sign(SignKind::Sx, p) : SignValue::Ambiguous;
        case SignKind::S4: {
            if (p % 8 == 1) {
                const auto v = u2v2(p).second;
                return v % 4 == 0 ? SignValue::Plus : SignValue::Minus;
            }
            return p % 16 == 13 ? SignValue::Plus : SignValue::Minus;
        }
        case SignKind::Su: {
            const auto u = u2v2(p).first;
            return mod(u, 3) == 2 ? SignValue::Plus : SignValue::Minus;
        }
        case SignKind::S12:
            return p % 24 == 1 ? sign(SignKind::Su, p) : SignValue::Ambiguous;
        case SignKind::S10: {
            const auto a = quinary(p)[0];
            return a % 4 != 0 ? SignValue::Plus : SignValue::Minus;
        }
    }
    throw Error(ErrorCode::InternalError, "unknown sign kind");
}

int to_int(SignValue v) {
    switch (v) {
        case SignValue::Plus: return 1;
        case SignValue::Minus: return -1;
        case SignValue::Ambiguous: return 0;
    }
    return 0;
}

std::string to_string(SignKind kind) {
    switch (kind) {
        case SignKind::Sx: return "Sx";
        case SignKind::Su: return "Su";
        case SignKind::S4: return "S4";
        case SignKind::S6: return "S6";
        case SignKind::S10: return "S10";
        case SignKind::S12: return "S12";
        case SignKind::S20: return "S20";
    }
    return "?";
}

std::string to_string(SignValue v) {
    switch (v) {
        case SignValue::Plus: return "+1";
        case SignValue::Minus: return "-1";
        case SignValue::Ambiguous: return "ambiguous";
    }
    return "?";
}

}  // namespace hgff
