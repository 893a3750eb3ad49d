#pragma once

// Point counts on elliptic curves over F_q.

#include <cstdint>
#include <optional>

#include "hgff/arith.hpp"
#include "hgff/field.hpp"

namespace hgff {

/// y^2 = x^3 + a x + b, or y^2 = x(x-1)(x-lambda) when lambda is set (a and
/// b are then ignored).
struct EllipticCurve {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::optional<Rational> lambda;

    static EllipticCurve weierstrass(std::int64_t a, std::int64_t b) { return {a, b, std::nullopt}; }
    static EllipticCurve legendre(Rational lambda) { return {0, 0, lambda}; }
};

/// a = q + 1 - #E(F_q), from the quadratic character of the right-hand side.
/// Throws SingularReduction when the reduction is not an elliptic curve.
std::int64_t ec_ap(const EllipticCurve& E, const FieldPtr& fld);

/// Same quantity by enumerating all (x, y) pairs; used as a test oracle.
std::int64_t ec_ap_naive(const EllipticCurve& E, const FieldPtr& fld);

/// -sum_x phi(x^3 + a x + b) with no reduction check. At a prime of bad
/// reduction where the model is minimal this is the coefficient a(p) of the
/// associated newform (0 or +-1).
std::int64_t ec_ap_any_reduction(const EllipticCurve& E, const FieldPtr& fld);

/// j = 1728 * 4a^3 / (4a^3 + 27b^2) in fld (Weierstrass models only).
FieldElement j_invariant(const EllipticCurve& E, const FieldPtr& fld);

}  // namespace hgff
