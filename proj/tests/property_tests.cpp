// Property suites: identities that must hold exactly (residues, integers) or
// within the propagated error (complex values).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "hgff/elliptic.hpp"
#include "hgff/hypergeometric.hpp"
#include "hgff/padic.hpp"
#include "hgff/relations.hpp"

using namespace hgff;

namespace {

const std::pair<std::int64_t, int> kSmallFields[] = {
    {3, 1},  {5, 1},  {7, 1},  {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}, {29, 1}, {31, 1},
    {37, 1}, {41, 1}, {43, 1}, {47, 1}, {3, 2},  {5, 2},  {7, 2},  {3, 3},
};

ComplexValue minus_one_value(const MultChar& chi, int prec) {
    return ComplexValue::root_of_unity(*char_eval(chi, chi.field->from_int(-1)), chi.field->order(), prec);
}

std::uint64_t residue(std::int64_t v, std::uint64_t M) {
    return static_cast<std::uint64_t>(mod(v, static_cast<std::int64_t>(M)));
}

const char* const kTable1[] = {
    "1/2,1/2,1/2",     "1/2,1/3,2/3",     "1/2,1/4,3/4",     "1/2,1/6,5/6",         "1/2,1/2,1/2,1/2",
    "1/2,1/2,1/3,2/3", "1/2,1/2,1/4,3/4", "1/2,1/2,1/6,5/6", "1/3,2/3,1/3,2/3",     "1/3,2/3,1/4,3/4",
    "1/3,2/3,1/6,5/6", "1/4,3/4,1/4,3/4", "1/4,3/4,1/6,5/6", "1/6,5/6,1/6,5/6",     "1/5,2/5,3/5,4/5",
    "1/8,3/8,5/8,7/8", "1/10,3/10,7/10,9/10",                "1/12,5/12,7/12,11/12",
};

const char* const kTable2[] = {
    "1/3,1/2,1/2", "1/6,1/2,1/2",  "1/8,1/2,1/2",  "1/3,1/3,2/3",   "1/4,1/3,2/3",
    "1/6,1/3,2/3", "1/3,1/4,3/4",  "1/4,1/4,3/4",  "1/6,1/4,3/4",   "1/3,1/6,5/6",
    "1/4,1/6,5/6", "1/6,1/6,5/6",  "1/5,1/5,4/5",  "1/2,1/10,9/10", "1/2,1/12,11/12",
};

std::string trivial_lower(std::size_t m) {
    std::string s;
    for (std::size_t i = 0; i < m; ++i) s += i ? ",1" : "1";
    return s;
}

}  // namespace

TEST_CASE("Gauss sums: magnitude and product, q <= 49") {
    for (auto [p, n] : kSmallFields) {
        const auto f = make_field(p, n);
        const auto gt = gauss_table(f);
        const ComplexValue q = ComplexValue::from_integer(f->q(), gt->precision);
        CHECK(certified_equal((*gt)[0], ComplexValue::from_integer(-1, gt->precision)));
        for (std::int64_t t = 1; t < f->order(); ++t) {
            const MultChar chi = make_char(f, t);
            const ComplexValue& g = gt->of(chi);
            CHECK(certified_equal(g * g.conj(), q));
            CHECK(certified_equal(g * gt->of(chi.conj()), minus_one_value(chi, gt->precision) * q));
        }
    }
}

TEST_CASE("Jacobi sums are Gauss quotients, q <= 49") {
    for (auto [p, n] : kSmallFields) {
        const auto f = make_field(p, n);
        const auto gt = gauss_table(f);
        for (std::int64_t a = 0; a < f->order(); ++a)
            for (std::int64_t b = 0; b < f->order(); ++b) {
                const MultChar chi = make_char(f, a), psi = make_char(f, b);
                if ((chi * psi).is_trivial()) continue;
                const auto J = jacobi_sum(chi, psi);
                CHECK(certified_equal(embed_complex(J), gt->of(chi) * gt->of(psi) / gt->of(chi * psi)));
                if (!chi.is_trivial() && !psi.is_trivial()) {
                    const ComplexValue j = embed_complex(J);
                    CHECK(certified_equal(j * j.conj(), ComplexValue::from_integer(f->q(), 128)));
                }
            }
    }
}

TEST_CASE("p-adic gamma: functional equation and reflection, p <= 13, k <= 6") {
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        for (int k = 1; k <= 6; ++k) {
            const std::uint64_t M = padic_modulus(p, k);
            std::vector<Rational> xs;
            for (std::int64_t n = -2 * p; n <= 2 * p; ++n) xs.emplace_back(n);
            for (std::int64_t d : {2, 3, 4, 5, 6, 7, 8, 10, 12})
                if (d % p != 0)
                    for (std::int64_t t = -d; t <= 2 * d; ++t) xs.emplace_back(t, d);
            for (const Rational& x : xs) {
                const std::uint64_t gx = padic_gamma(p, x, k).value;
                const std::uint64_t gx1 = padic_gamma(p, x + 1, k).value;
                // Gamma_p(x + 1) = -x Gamma_p(x) for units x, -Gamma_p(x) otherwise
                const std::uint64_t xr = mulmod(residue(x.numerator(), M), invmod(residue(x.denominator(), M), M), M);
                const bool unit = x.numerator() % p != 0;
                const std::uint64_t factor = unit ? (M - xr) % M : M - 1;
                CHECK(gx1 == mulmod(factor, gx, M));
                // Gamma_p(x) Gamma_p(1 - x) = (-1)^{x0}, x0 in {1..p}, x0 = x mod p
                const std::uint64_t x_mod_p = xr % static_cast<std::uint64_t>(p);
                const std::uint64_t x0 = x_mod_p == 0 ? static_cast<std::uint64_t>(p) : x_mod_p;
                const std::uint64_t refl = mulmod(gx, padic_gamma(p, 1 - x, k).value, M);
                CHECK(refl == (x0 % 2 ? M - 1 : 1));
            }
        }
    }
}

TEST_CASE("Teichmuller character: fixed points and congruences") {
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 31}) {
        for (int k = 1; k <= 6; ++k) {
            const std::uint64_t M = padic_modulus(p, k);
            for (std::int64_t x = 1; x < p; ++x) {
                const std::uint64_t w = teichmuller(p, x, k).value;
                CHECK(powmod(w, p, M) == w);
                CHECK(w % p == static_cast<std::uint64_t>(x));
                CHECK(w == powmod(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(ipow(p, k - 1)), M));
                for (std::int64_t y = 1; y < p; ++y) {
                    const std::uint64_t wy = teichmuller(p, y, k).value;
                    CHECK(mulmod(w, wy, M) == teichmuller(p, x * y % p, k).value);
                }
            }
        }
    }
}

TEST_CASE("backend equivalence on Table 1, p <= 61") {
    std::size_t compared = 0;
    for (const char* row : kTable1) {
        const std::string upper(row);
        const auto m = static_cast<std::size_t>(std::count(upper.begin(), upper.end(), ',') + 1);
        const RationalParams lab = parse_params(upper + ";" + trivial_lower(m));
        const std::int64_t order = required_order(lab);
        const int weight = lab.upper.size() == 3 ? 3 : 4;
        for (std::int64_t p = 3; p <= 61; ++p) {
            if (!is_prime(p) || (p - 1) % order != 0) continue;
            const auto f = make_field(p, 1);
            for (std::int64_t t : {std::int64_t{1}, std::int64_t{2}, p - 1}) {
                const FieldElement x = f->from_int(t);
                const BigInt F = eval_F_integer(params_from_labels(f, lab, x));
                GParams g;
                for (const auto& a : lab.upper) g.a.push_back(frac(-a));
                for (const auto& b : lab.lower) g.b.push_back(frac(-b));
                g.x = static_cast<std::int64_t>(f->inv(x).code);
                const BigInt G = lift_symmetric(eval_G(p, g, default_precision(p, weight)), weil_bound(p, weight));
                CHECK(F == G);
                ++compared;
            }
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("a(E, p)^2 = a(E, p^2) + 2p for three curves, p <= 61") {
    for (auto [a, b] : {std::pair{1, 1}, std::pair{-1, 1}, std::pair{-3, 5}}) {
        const EllipticCurve E = EllipticCurve::weierstrass(a, b);
        std::size_t good = 0;
        for (std::int64_t p = 3; p <= 61; ++p) {
            if (!is_prime(p)) continue;
            const std::int64_t disc = 4 * a * a * a + 27 * b * b;
            if (disc % p == 0) continue;
            const std::int64_t ap = ec_ap(E, make_field(p, 1));
            CHECK(ap * ap == ec_ap(E, make_field(p, 2)) + 2 * p);
            ++good;
        }
        CHECK(good >= 15);
    }
}

TEST_CASE("conjugating every parameter conjugates eval_F, q <= 49") {
    std::mt19937_64 rng(0x5eed);
    for (auto [p, n] : kSmallFields) {
        const auto f = make_field(p, n);
        const auto gt = gauss_table(f);
        std::uniform_int_distribution<std::int64_t> idx(0, f->order() - 1), code(0, f->q() - 1);
        std::uniform_int_distribution<int> arity(1, 4);
        for (int trial = 0; trial < 6; ++trial) {
            const int m = arity(rng);
            HypParams hp{{}, {}, f->element(code(rng))};
            for (int i = 0; i < m; ++i) {
                hp.upper.push_back(make_char(f, idx(rng)));
                hp.lower.push_back(make_char(f, idx(rng)));
            }
            HypParams bar = hp;
            for (auto& c : bar.upper) c = c.conj();
            for (auto& c : bar.lower) c = c.conj();
            CHECK(certified_equal(eval_F(bar, *gt), eval_F(hp, *gt).conj()));
        }
    }
}

TEST_CASE("Table 2 values under conjugate characters, p <= 199") {
    for (const char* row : kTable2) {
        const RationalParams lab = parse_params(std::string(row) + ";1,1");
        RationalParams bar = lab;
        for (auto& a : bar.upper) a = frac(-a);
        const std::int64_t order = required_order(lab);
        for (std::int64_t p = 3; p <= 199; ++p) {
            if (!is_prime(p) || (p - 1) % order != 0) continue;
            const auto f = make_field(p, 1);
            const auto gt = gauss_table(f);
            const ComplexValue v = eval_F(params_from_labels(f, lab, f->one()), *gt);
            const ComplexValue w = eval_F(params_from_labels(f, bar, f->one()), *gt);
            CHECK(certified_equal(w, v.conj()));
        }
    }
}

TEST_CASE("reports are deterministic") {
    const SuiteOptions serial{"*", 3, 43, 1, false, false};
    SuiteOptions parallel = serial;
    parallel.jobs = 6;
    const std::string a = report_json(run_suite(serial), serial);
    const std::string b = report_json(run_suite(parallel), parallel);
    const std::string c = report_json(run_suite(parallel), parallel);
    CHECK(a == b);
    CHECK(b == c);
}
