#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "hgff/algebraic.hpp"

using namespace hgff;

namespace {

CyclotomicInteger random_cyc(std::mt19937_64& rng, std::int64_t m) {
    std::uniform_int_distribution<std::int64_t> d(-5, 5);
    CyclotomicInteger z = CyclotomicInteger::zero(m);
    for (auto& c : z.coords) c = d(rng);
    return z;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_SUITE("algebraic") {

TEST_CASE("cyclotomic products") {
    const auto i = CyclotomicInteger::root(1, 4);
    CHECK(i.coords == std::vector<std::int64_t>{0, 1});
    CHECK(cyc_mul(i, i).coords == std::vector<std::int64_t>{-1, 0});

    const auto one = CyclotomicInteger::from_int(1, 3);
    const auto z = CyclotomicInteger::root(1, 3);
    const auto z2 = CyclotomicInteger::root(2, 3);
    CHECK(z2.coords == std::vector<std::int64_t>{-1, -1});
    CHECK(cyc_mul(one + z, one + z2) == one);

    std::mt19937_64 rng(7);
    for (std::int64_t m : {1, 3, 4, 5, 8, 12, 24}) {
        const auto a = random_cyc(rng, m);
        CHECK(cyc_mul(a, CyclotomicInteger::from_int(1, m)) == a);
    }
}

TEST_CASE("conductor mismatch") {
    const auto a = CyclotomicInteger::root(1, 3);
    const auto b = CyclotomicInteger::root(1, 4);
    CHECK(error_of([&] { cyc_mul(a, b); }) == ErrorCode::ConductorMismatch);
    CHECK(error_of([&] { (void)(a + b); }) == ErrorCode::ConductorMismatch);
    CHECK(error_of([&] { cyc_lift(a, 8); }) == ErrorCode::ConductorMismatch);
    CHECK(cyc_mul(cyc_lift(a, 12), cyc_lift(b, 12)) == CyclotomicInteger::root(7, 12));
}

TEST_CASE("cyclotomic ring laws on random inputs") {
    std::mt19937_64 rng(20240601);
    for (std::int64_t m : {3, 4, 5, 8, 12, 24}) {
        for (int t = 0; t < 20; ++t) {
            const auto a = random_cyc(rng, m), b = random_cyc(rng, m), c = random_cyc(rng, m);
            CHECK(cyc_mul(a, b) == cyc_mul(b, a));
            CHECK(cyc_mul(cyc_mul(a, b), c) == cyc_mul(a, cyc_mul(b, c)));
            CHECK(cyc_mul(a, b + c) == cyc_mul(a, b) + cyc_mul(a, c));
            const ComplexValue lhs = embed_complex(cyc_mul(a, b), 128);
            const ComplexValue rhs = embed_complex(a, 128) * embed_complex(b, 128);
            CHECK(certified_equal(lhs, rhs));
            CHECK(certified_equal(embed_complex(a.conj(), 128), embed_complex(a, 128).conj()));
        }
    }
}

TEST_CASE("cyclotomic polynomials and norms") {
    CHECK(cyclotomic_polynomial(3) == std::vector<std::int64_t>{1, 1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<std::int64_t>{1, 0, 1});
    CHECK(cyclotomic_polynomial(8) == std::vector<std::int64_t>{1, 0, 0, 0, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
    CHECK(euler_phi(24) == 8);
    // 3 + 2i has norm 13
    CyclotomicInteger g = CyclotomicInteger::zero(4);
    g.coords = {3, 2};
    CHECK(g.norm() == 13);
    CHECK(CyclotomicInteger::root(5, 24).norm() == 1);
}

TEST_CASE("complex embeddings") {
    const ComplexValue i = embed_complex(CyclotomicInteger::root(1, 4), 53);
    CHECK(near(i.re_double(), 0, 1e-15));
    CHECK(near(i.im_double(), 1, 1e-15));
    CHECK(i.err() <= 1e-14);
    const auto w = CyclotomicInteger::from_int(1, 3) + CyclotomicInteger::root(1, 3);
    const ComplexValue v = embed_complex(w, 53);
    CHECK(near(v.re_double(), 0.5, 1e-14));
    CHECK(near(v.im_double(), std::sqrt(3.0) / 2, 1e-14));
    const ComplexValue m1 = embed_complex(CyclotomicInteger::from_int(-1, 1), 53);
    CHECK(m1.re_double() == -1.0);
    CHECK(m1.im_double() == 0.0);
}

TEST_CASE("roots of unity have modulus one") {
    for (std::int64_t m : {3, 5, 8, 12, 24, 48}) {
        for (std::int64_t j = 0; j < m; ++j) {
            const ComplexValue z = ComplexValue::root_of_unity(j, m, 128);
            const ComplexValue n = z * z.conj();
            CHECK(certified_equal(n, ComplexValue::from_integer(1, 128)));
            CHECK(certified_equal(z, embed_complex(CyclotomicInteger::root(j, m), 128)));
        }
    }
}

TEST_CASE("certified rounding") {
    CHECK(round_to_integer(ComplexValue(-2.0000001, 1e-9, 1e-6, 128)) == -2);
    CHECK(error_of([] { round_to_integer(ComplexValue(0.3, 0, 0, 128)); }) == ErrorCode::RoundingUncertain);
    CHECK(error_of([] { round_to_integer(ComplexValue(3, 0.3, 0, 128)); }) == ErrorCode::RoundingUncertain);
    CHECK(error_of([] { round_to_integer(ComplexValue(3, 0, 0.5, 128)); }) == ErrorCode::RoundingUncertain);
    for (std::int64_t n = -1000000; n <= 1000000; n += 9973)
        CHECK(round_to_integer(embed_complex(CyclotomicInteger::from_int(n, 1), 128)) == n);
    const BigInt big = bigpow(BigInt(199), 9);
    CHECK(round_to_integer(ComplexValue::from_integer(big, 256)) == big);
}

TEST_CASE("arithmetic tracks error") {
    ComplexValue a(1.5, -2, 1e-20, 128);
    ComplexValue b(0.25, 4, 1e-20, 128);
    const ComplexValue q = (a * b) / b;
    CHECK(certified_equal(q, a));
    CHECK(q.err() > 0);
    CHECK(near((a - a).re_double(), 0, 1e-30));
    const ComplexValue r = ComplexValue::from_rational(Rational(1, 3), 128);
    CHECK(certified_equal(r * ComplexValue::from_integer(3, 128), ComplexValue::from_integer(1, 128)));
}

}  // TEST_SUITE
