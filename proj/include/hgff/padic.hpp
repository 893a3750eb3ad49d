#pragma once

// Residues mod p^k, the Teichmuller character, Morita's p-adic gamma
// function and the p-adic hypergeometric function mGm.

#include <cstdint>
#include <optional>
#include <vector>

#include "hgff/arith.hpp"

namespace hgff {

struct PadicResidue {
    std::int64_t p = 0;
    int k = 0;
    std::uint64_t value = 0;  // in [0, p^k)

    std::uint64_t modulus() const { return static_cast<std::uint64_t>(ipow(p, k)); }
    friend bool operator==(const PadicResidue&, const PadicResidue&) = default;
};

/// p^k, throwing PrecisionExhausted if it does not fit comfortably in 63 bits.
std::uint64_t padic_modulus(std::int64_t p, int k);

/// The (p-1)-th root of unity congruent to x mod p, to precision k.
PadicResidue teichmuller(std::int64_t p, std::int64_t x, int k);

/// Gamma_p(x) mod p^k for x in Q with denominator prime to p.
PadicResidue padic_gamma(std::int64_t p, const Rational& x, int k);

/// Gamma_p(n) mod p^k for a non-negative integer n < p^k.
std::uint64_t padic_gamma_int(std::int64_t p, std::uint64_t n, int k);

struct GParams {
    std::vector<Rational> a;
    std::vector<Rational> b;
    std::int64_t x = 1;  // residue mod p
};

/// p^scale * mGm[a; b | x]_p mod p^k. Intermediate negative powers of p are
/// carried exactly by working modulo p^{k+V}; throws NotPadicInteger if the
/// scaled value is not p-integral and PrecisionExhausted if the working
/// modulus overflows.
PadicResidue eval_G(std::int64_t p, const GParams& params, int k, int scale = 0);

/// The unique integer in [-bound, bound] congruent to r; requires
/// p^k > 2 bound, else (or when no such integer exists) LiftOutOfRange.
BigInt lift_symmetric(const PadicResidue& r, const BigInt& bound);

/// Default Weil-type bound B = 4 p^{(w-1)/2} (1 + p) for a weight-w relation
/// (rounded up) and the smallest k >= 3 with p^k > 2B.
BigInt weil_bound(std::int64_t p, int weight);
int default_precision(std::int64_t p, int weight);

/// Fractional part <x> in [0, 1).
Rational frac(const Rational& x);
/// Greatest integer <= x.
std::int64_t floor_rational(const Rational& x);

}  // namespace hgff
