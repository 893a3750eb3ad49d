#include "hgff/hypergeometric.hpp"

#include <sstream>

#include <boost/algorithm/string.hpp>

#include "hgff/errors.hpp"

namespace hgff {

void validate(const HypParams& params) {
    if (params.upper.empty()) throw Error(ErrorCode::InvalidArgument, "no upper parameters");
    if (params.upper.size() != params.lower.size())
        throw Error(ErrorCode::InvalidArgument, "upper and lower parameter lists differ in length");
    const FieldPtr& fld = params.field();
    for (const auto& c : params.upper)
        if (c.field != fld) throw Error(ErrorCode::InvalidArgument, "parameters on different fields");
    for (const auto& c : params.lower)
        if (c.field != fld) throw Error(ErrorCode::InvalidArgument, "parameters on different fields");
}

HypergeometricSum::HypergeometricSum(std::vector<MultChar> upper, std::vector<MultChar> lower,
                                     const GaussTable& gt)
    : field_(gt.field), precision_(gt.precision) {
    HypParams check{upper, lower, FieldElement{}};
    validate(check);
    if (upper.front().field != gt.field)
        throw Error(ErrorCode::InvalidArgument, "Gauss table built on another field");

    const std::int64_t order = field_->order();
    const auto m = static_cast<std::int64_t>(upper.size());

    // -1/(q-1) / prod_i g(A_i) g(conj B_i)
    ComplexValue scale = ComplexValue::from_rational(Rational(-1, order), precision_);
    ComplexValue denom = ComplexValue::from_integer(1, precision_);
    for (std::size_t i = 0; i < upper.size(); ++i) {
        denom *= gt[upper[i].index];
        denom *= gt[-lower[i].index];
    }
    scale *= denom.inverse();

    weights_.reserve(static_cast<std::size_t>(order));
    roots_.reserve(static_cast<std::size_t>(order));
    for (std::int64_t c = 0; c < order; ++c) {
        ComplexValue w = scale;
        for (std::size_t i = 0; i < upper.size(); ++i) {
            w *= gt[upper[i].index + c];
            w *= gt[-(lower[i].index + c)];
        }
        // chi_c(-1) = (-1)^c since -1 = g^{(q-1)/2}
        if ((c * m) % 2 != 0) w = -w;
        weights_.push_back(std::move(w));
        roots_.push_back(ComplexValue::root_of_unity(c, order, precision_));
    }
}

ComplexValue HypergeometricSum::operator()(FieldElement x) const {
    ComplexValue acc(precision_);
    if (field_->is_zero(x)) return acc;  // chi(0) = 0 for every chi
    const std::int64_t order = field_->order();
    const std::int64_t L = field_->dlog(x);
    std::int64_t e = 0;
    for (std::int64_t c = 0; c < order; ++c) {
        acc.add_product(weights_[static_cast<std::size_t>(c)], roots_[static_cast<std::size_t>(e)]);
        e += L;
        if (e >= order) e -= order;
    }
    return acc;
}

ComplexValue eval_F(const HypParams& params, const GaussTable& gt) {
    validate(params);
    return HypergeometricSum(params.upper, params.lower, gt)(params.x);
}

BigInt eval_F_integer(const HypParams& params, const GaussTable& gt) {
    try {
        return round_to_integer(eval_F(params, gt));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::RoundingUncertain && e.code() != ErrorCode::PrecisionExhausted) throw;
    }
    for (int prec : kPrecisionLadder) {
        if (prec <= gt.precision) continue;
        auto table = gauss_table(gt.field, prec, gt.additive_scale);
        try {
            return round_to_integer(eval_F(params, *table));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RoundingUncertain && e.code() != ErrorCode::PrecisionExhausted) throw;
        }
    }
    throw Error(ErrorCode::PrecisionExhausted, "hypergeometric value is not certifiably an integer");
}

BigInt eval_F_integer(const HypParams& params) {
    validate(params);
    return eval_F_integer(params, *gauss_table(params.field(), kDefaultPrecision));
}

BigInt greene_conversion_factor(int m, std::int64_t q) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "arity must be positive");
    return bigpow(BigInt(-q), static_cast<unsigned>(m - 1));
}

// ---------------------------------------------------------------------------
// Labels

Rational parse_rational(const std::string& raw) {
    const std::string text = boost::algorithm::trim_copy(raw);
    if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty rational");
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        const std::int64_t num = std::stoll(text.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? text.size() : slash)) throw std::invalid_argument(text);
        std::int64_t den = 1;
        if (slash != std::string::npos) {
            const std::string tail = text.substr(slash + 1);
            den = std::stoll(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(text);
        }
        if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidArgument, "cannot parse rational '" + text + "'");
    }
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

RationalParams parse_params(const std::string& text) {
    std::vector<std::string> halves;
    boost::algorithm::split(halves, text, boost::is_any_of(";"));
    if (halves.size() != 2) throw Error(ErrorCode::InvalidArgument, "expected 'upper;lower' parameter lists");
    auto parse_list = [](const std::string& s) {
        std::vector<Rational> out;
        if (boost::algorithm::trim_copy(s).empty()) return out;
        std::vector<std::string> items;
        boost::algorithm::split(items, s, boost::is_any_of(","));
        for (const auto& item : items) out.push_back(parse_rational(item));
        return out;
    };
    RationalParams params{parse_list(halves[0]), parse_list(halves[1])};
    if (params.upper.empty()) throw Error(ErrorCode::InvalidArgument, "no upper parameters");
    if (params.lower.size() + 1 == params.upper.size()) params.lower.insert(params.lower.begin(), Rational(0));
    if (params.lower.size() != params.upper.size())
        throw Error(ErrorCode::InvalidArgument, "upper and lower parameter lists differ in length");
    return params;
}

std::int64_t required_order(const RationalParams& params) {
    std::int64_t k = 1;
    for (const auto& r : params.upper) k = std::lcm(k, r.denominator());
    for (const auto& r : params.lower) k = std::lcm(k, r.denominator());
    return k;
}

MultChar char_from_label(const FieldPtr& fld, const Rational& label) {
    return char_from_fraction(fld, label.numerator(), label.denominator());
}

HypParams params_from_labels(const FieldPtr& fld, const RationalParams& labels, FieldElement x) {
    HypParams params;
    for (const auto& r : labels.upper) params.upper.push_back(char_from_label(fld, r));
    for (const auto& r : labels.lower) params.lower.push_back(char_from_label(fld, r));
    params.x = x;
    validate(params);
    return params;
}

FieldElement field_element_from_rational(const FieldPtr& fld, const Rational& value) {
    const FieldElement den = fld->from_int(value.denominator());
    if (fld->is_zero(den))
        throw Error(ErrorCode::InvalidArgument, "denominator of " + to_string(value) + " vanishes mod p");
    return fld->div(fld->from_int(value.numerator()), den);
}

}  // namespace hgff
