#include <doctest.h>

#include "helpers.hpp"
#include "hgff/arith.hpp"
#include "hgff/quadratic_signs.hpp"

using namespace hgff;

namespace {

// Legendre symbol by Euler's criterion.
int euler_symbol(std::int64_t a, std::int64_t p) {
    const auto r = powmod(static_cast<std::uint64_t>(mod(a, p)), static_cast<std::uint64_t>((p - 1) / 2), p);
    return r == 0 ? 0 : r == 1 ? 1 : -1;
}

std::vector<std::array<std::int64_t, 4>> quinary_search(std::int64_t p) {
    std::vector<std::array<std::int64_t, 4>> out;
    const std::int64_t r = 20;
    for (std::int64_t a = -r; a <= r; ++a)
        for (std::int64_t b = -r; b <= r; ++b)
            for (std::int64_t c = -r; c <= r; ++c)
                for (std::int64_t d = -r; d <= r; ++d)
                    if (mod(a, 5) == 4 && a * a + 5 * (b * b + c * c + d * d) == p && a * b == d * d - c * c - c * d)
                        out.push_back({a, b, c, d});
    return out;
}

}  // namespace

TEST_SUITE("signs") {

TEST_CASE("Kronecker symbols") {
    CHECK(kronecker(-3, 7) == 1);
    CHECK(kronecker(5, 1) == 1);
    CHECK(kronecker(-4, 1) == 1);
    CHECK(kronecker(5, 11) == 1);
    CHECK(kronecker(6, 3) == 0);
    for (std::int64_t p : {3, 5, 7, 11, 13, 97, 193})
        for (std::int64_t a : {-7, -4, -3, -1, 2, 3, 5, 8, 12})
            CHECK(kronecker(a, p) == euler_symbol(a, p));
    // (-4/p) and (8/p) by congruence
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23}) {
        CHECK(kronecker(-4, p) == (p % 4 == 1 ? 1 : -1));
        CHECK(kronecker(8, p) == (p % 8 == 1 || p % 8 == 7 ? 1 : -1));
    }
}

TEST_CASE("two squares") {
    CHECK(two_square(13) == std::pair<std::int64_t, std::int64_t>{3, 2});
    CHECK(two_square(5) == std::pair<std::int64_t, std::int64_t>{1, 2});
    CHECK(error_of([] { two_square(7); }) == ErrorCode::NotRepresentable);
    for (std::int64_t p = 5; p < 400; p += 4) {
        if (!is_prime(p)) continue;
        const auto [x, y] = two_square(p);
        CHECK(x * x + y * y == p);
        CHECK(x % 2 == 1);
        CHECK(y % 2 == 0);
        CHECK(x > 0);
        CHECK(y > 0);
    }
}

TEST_CASE("u^2 + 2v^2") {
    CHECK(u2v2(17) == std::pair<std::int64_t, std::int64_t>{3, 2});
    CHECK(u2v2(41) == std::pair<std::int64_t, std::int64_t>{3, 4});
    CHECK(error_of([] { u2v2(13); }) == ErrorCode::NotRepresentable);
    for (std::int64_t p = 17; p < 600; p += 8) {
        if (!is_prime(p)) continue;
        const auto [u, v] = u2v2(p);
        CHECK(u * u + 2 * v * v == p);
        CHECK(mod(u, 4) == 3);
        CHECK(v >= 0);
    }
}

TEST_CASE("quinary representations") {
    for (std::int64_t p : {11, 31, 41, 61, 71, 101, 131, 151, 181, 191}) {
        const auto expect = quinary_search(p);
        REQUIRE_FALSE(expect.empty());
        CHECK(quinary_all(p) == expect);
        CHECK(quinary(p) == expect.front());
    }
    CHECK(error_of([] { quinary(13); }) == ErrorCode::NotRepresentable);
}

TEST_CASE("sign functions") {
    CHECK(sign(SignKind::Sx, 13) == SignValue::Minus);
    CHECK(sign(SignKind::S4, 17) == SignValue::Minus);
    CHECK(sign(SignKind::S6, 19) == SignValue::Ambiguous);
    CHECK(sign(SignKind::S12, 13) == SignValue::Ambiguous);
    CHECK(error_of([] { sign(SignKind::Sx, 7); }) == ErrorCode::ClassMismatch);
    CHECK(error_of([] { sign(SignKind::S10, 13); }) == ErrorCode::ClassMismatch);
    CHECK(error_of([] { sign(SignKind::S4, 9); }) == ErrorCode::InvalidPrime);
    for (std::int64_t p = 3; p < 200; ++p) {
        if (!is_prime(p)) continue;
        for (SignKind k : {SignKind::Sx, SignKind::Su, SignKind::S4, SignKind::S6, SignKind::S10, SignKind::S12,
                           SignKind::S20}) {
            if (!sign_defined(k, p)) continue;
            const SignValue v = sign(k, p);
            const bool ambiguous_class = (k == SignKind::S6 && p % 12 == 7) || (k == SignKind::S12 && p % 24 == 13);
            CHECK((v == SignValue::Ambiguous) == ambiguous_class);
        }
    }
    CHECK(to_int(SignValue::Plus) == 1);
    CHECK(to_int(SignValue::Minus) == -1);
    CHECK(to_int(SignValue::Ambiguous) == 0);
    CHECK(to_string(SignKind::S10) == "S10");
}

}  // TEST_SUITE
