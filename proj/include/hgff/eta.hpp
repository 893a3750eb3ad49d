#pragma once

// q-expansions of eta products prod_delta eta(delta z)^{r_delta}.

#include <string>
#include <utility>
#include <vector>

#include "hgff/arith.hpp"

namespace hgff {

struct EtaProduct {
    std::vector<std::pair<int, int>> factors;  // (delta, r)

    Rational weight() const;
    /// sum delta * r; the leading q-power is this over 24.
    std::int64_t offset_numerator() const;
    std::string to_string() const;
};

/// Integer combination sum_i c_i * P_i of eta products of equal weight.
struct EtaCombination {
    std::vector<std::pair<std::int64_t, EtaProduct>> terms;
};

/// Coefficients a(0..N) of the expansion sum a(n) q^n (a(0) included so
/// that a[n] is the q^n coefficient). Throws NotAnIntegralForm when the
/// leading offset is not an integer.
std::vector<BigInt> eta_expansion(const EtaProduct& prod, int N);
std::vector<BigInt> eta_expansion(const EtaCombination& comb, int N);

/// prod_{n >= 1} (1 - q^n)^r to degree D (inclusive), by the power
/// recurrence applied to the pentagonal-number series.
std::vector<BigInt> euler_power(int r, int D);

}  // namespace hgff
