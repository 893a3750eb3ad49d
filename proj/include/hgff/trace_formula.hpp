#pragma once

// Traces of Hecke operators on S_k(Gamma_0(2)) from 3F2 values, and the
// resulting formula for Ramanujan's tau at primes.

#include <cstdint>
#include <vector>

#include "hgff/char_sums.hpp"

namespace hgff {

/// G_k(s, p) = sum_{j=0}^{k/2-1} (-1)^j C(k-2-j, j) p^j s^{k-2j-2}.
BigInt g_poly(int k, const BigInt& s, std::int64_t p);

/// c_d(r): coefficient of x^{r-d} in (x+1)/(x^2+x+1)^{d+1} (0 when r < d).
BigInt c_coeff(int d, int r);

/// R_k(p, x) = sum_{d=0}^{k/2-1} c_d(k/2-1) p^{k/2-1-d} x^d.
BigInt r_poly(int k, std::int64_t p, const BigInt& x);

/// The correction term delta_k(p), with G_k evaluated at s = 2a and s = 2b
/// when p = a^2 + b^2.
BigInt delta(int k, std::int64_t p);

/// phi(1 - lambda) * 3F2(phi, phi, phi; eps, eps | lambda)_p for
/// lambda = 2..p-1 (index lambda - 2). Cached per p and shared by all
/// weights.
std::vector<BigInt> lambda_sweep(std::int64_t p, const GaussTable& gt);
const std::vector<BigInt>& lambda_sweep(std::int64_t p);

/// Tr_k(Gamma_0(2), p) for even k >= 4 and odd p.
BigInt trace_gamma0_2(int k, std::int64_t p, const GaussTable& gt);
BigInt trace_gamma0_2(int k, std::int64_t p);

/// tau(p) for odd p through the weight-12 specialisation.
BigInt tau_via_hypergeometric(std::int64_t p, const GaussTable& gt);
BigInt tau_via_hypergeometric(std::int64_t p);

}  // namespace hgff
