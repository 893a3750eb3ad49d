#include <doctest.h>

#include "helpers.hpp"
#include "hgff/eta.hpp"
#include "hgff/trace_formula.hpp"

using namespace hgff;

namespace {

// G_k(s, p) = U_{k-1} with U_1 = 1, U_2 = s, U_n = s U_{n-1} - p U_{n-2}.
BigInt g_recurrence(int k, const BigInt& s, std::int64_t p) {
    BigInt u0 = 0, u1 = 1;
    for (int n = 2; n <= k - 1; ++n) {
        BigInt u2 = s * u1 - BigInt(p) * u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

// Coefficients of (x + 1) / (x^2 + x + 1)^{d+1} by long division.
std::vector<BigInt> series(int d, int terms) {
    std::vector<BigInt> num(static_cast<std::size_t>(terms), 0);
    num[0] = 1;
    if (terms > 1) num[1] = 1;
    for (int t = 0; t <= d; ++t) {
        std::vector<BigInt> q(static_cast<std::size_t>(terms), 0);
        for (int i = 0; i < terms; ++i) {
            BigInt c = num[static_cast<std::size_t>(i)];
            if (i >= 1) c -= q[static_cast<std::size_t>(i - 1)];
            if (i >= 2) c -= q[static_cast<std::size_t>(i - 2)];
            q[static_cast<std::size_t>(i)] = c;
        }
        num = q;
    }
    return num;
}

}  // namespace

TEST_SUITE("trace") {

TEST_CASE("G_k polynomials") {
    CHECK(g_poly(4, 3, 5) == 4);
    CHECK(g_poly(4, 0, 7) == -7);
    CHECK(g_poly(6, 1, 2) == -1);
    for (int k = 4; k <= 24; k += 2)
        for (std::int64_t p : {3, 5, 13})
            for (int s = -6; s <= 6; ++s) CHECK(g_poly(k, s, p) == g_recurrence(k, s, p));
    CHECK(error_of([] { g_poly(5, 1, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("c_d(r) coefficients") {
    CHECK(c_coeff(0, 0) == 1);
    CHECK(c_coeff(0, 1) == 0);
    CHECK(c_coeff(0, 2) == -1);
    CHECK(c_coeff(2, 1) == 0);
    for (int d = 0; d <= 6; ++d) {
        const auto s = series(d, 12);
        for (int r = d; r < d + 12; ++r) CHECK(c_coeff(d, r) == s[static_cast<std::size_t>(r - d)]);
    }
}

TEST_CASE("R_k polynomials") {
    for (int k = 4; k <= 12; k += 2)
        for (std::int64_t p : {3, 5, 7})
            CHECK(r_poly(k, p, 0) == c_coeff(0, k / 2 - 1) * bigpow(BigInt(p), static_cast<unsigned>(k / 2 - 1)));
    // R_4 is linear in x
    for (std::int64_t p : {5, 11}) {
        const BigInt r0 = r_poly(4, p, 0), r1 = r_poly(4, p, 1);
        for (int x = -5; x <= 5; ++x) CHECK(r_poly(4, p, x) == r0 + (r1 - r0) * x);
    }
}

TEST_CASE("delta") {
    for (int k = 4; k <= 12; k += 2)
        for (std::int64_t p : {3, 7, 11, 19})
            CHECK(delta(k, p) == bigpow(BigInt(-p), static_cast<unsigned>(k / 2 - 1)));
    // 5 = 1 + 4: (G_4(2) + G_4(4)) / 2 = ((4 - 5) + (16 - 5)) / 2
    CHECK(delta(4, 5) == 5);
    CHECK(error_of([] { delta(4, 9); }) == ErrorCode::InvalidPrime);
}

TEST_CASE("traces on Gamma_0(2)") {
    const auto eta8 = eta_expansion(EtaProduct{{{1, 8}, {2, 8}}}, 40);
    const auto tau = eta_expansion(EtaProduct{{{1, 24}}}, 40);
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        CHECK(trace_gamma0_2(4, p) == 0);
        CHECK(trace_gamma0_2(6, p) == 0);
        CHECK(trace_gamma0_2(8, p) == eta8[static_cast<std::size_t>(p)]);
        CHECK(trace_gamma0_2(12, p) == 2 * tau[static_cast<std::size_t>(p)]);
    }
}

TEST_CASE("tau from the hypergeometric formula") {
    CHECK(tau_via_hypergeometric(3) == 252);
    CHECK(tau_via_hypergeometric(5) == 4830);
    CHECK(tau_via_hypergeometric(7) == -16744);
    const auto tau = eta_expansion(EtaProduct{{{1, 24}}}, 40);
    for (std::int64_t p : {11, 13, 17, 19, 23, 29, 31, 37})
        CHECK(tau_via_hypergeometric(p) == tau[static_cast<std::size_t>(p)]);
}

TEST_CASE("sweep is shared and independent of precision") {
    const auto& a = lambda_sweep(13);
    CHECK(&a == &lambda_sweep(13));
    CHECK(a.size() == 11);
    const auto b = lambda_sweep(13, *gauss_table(make_field(13, 1), 256));
    CHECK(a == b);
}

}  // TEST_SUITE
