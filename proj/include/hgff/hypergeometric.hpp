#pragma once

// The finite-field hypergeometric function mFm(A; B | x)_q.

#include <string>
#include <vector>

#include "hgff/char_sums.hpp"

namespace hgff {

struct HypParams {
    std::vector<MultChar> upper;  // A_1..A_m
    std::vector<MultChar> lower;  // B_1..B_m
    FieldElement x;

    const FieldPtr& field() const { return upper.front().field; }
    std::size_t arity() const { return upper.size(); }
};

/// Checks equal lengths and a common field; throws InvalidArgument.
void validate(const HypParams& params);

/// mFm with fixed characters and the per-character weights
///   W_chi = prod_i g(A_i chi)/g(A_i) * g(conj(B_i chi))/g(conj(B_i)) * chi(-1)^m
/// precomputed, so that each argument costs one pass over the characters.
class HypergeometricSum {
public:
    HypergeometricSum(std::vector<MultChar> upper, std::vector<MultChar> lower, const GaussTable& gt);

    ComplexValue operator()(FieldElement x) const;
    int precision() const { return precision_; }
    const FieldPtr& field() const { return field_; }

private:
    FieldPtr field_;
    int precision_;
    std::vector<ComplexValue> weights_;  // already scaled by -1/(q-1)
    std::vector<ComplexValue> roots_;    // zeta_{q-1}^j
};

ComplexValue eval_F(const HypParams& params, const GaussTable& gt);

/// Certified integer value of eval_F, retrying along the precision ladder.
/// Throws PrecisionExhausted if no precision certifies an integer.
BigInt eval_F_integer(const HypParams& params, const GaussTable& gt);
BigInt eval_F_integer(const HypParams& params);

/// (-q)^{m-1}: the factor taking Greene's function to mF_{m-1} when every
/// lower parameter is trivial.
BigInt greene_conversion_factor(int m, std::int64_t q);

/// Parameters written as rational labels: "t/k" is chi_k^t. Upper and lower
/// lists are separated by ';', entries by ','. A lower list one shorter
/// than the upper list gets a leading trivial character.
struct RationalParams {
    std::vector<Rational> upper;
    std::vector<Rational> lower;
};

RationalParams parse_params(const std::string& text);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// Smallest k such that every label's character exists: the lcm of the
/// denominators.
std::int64_t required_order(const RationalParams& params);

/// chi_k^t on fld for the label t/k; throws OrderUnavailable when k does not
/// divide q - 1.
MultChar char_from_label(const FieldPtr& fld, const Rational& label);

HypParams params_from_labels(const FieldPtr& fld, const RationalParams& labels, FieldElement x);

/// Image of a rational in F_q; throws InvalidArgument if the denominator
/// vanishes mod p.
FieldElement field_element_from_rational(const FieldPtr& fld, const Rational& value);

}  // namespace hgff
