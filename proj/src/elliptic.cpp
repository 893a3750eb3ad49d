#include "hgff/elliptic.hpp"

#include "hgff/errors.hpp"

namespace hgff {

namespace {

int quadratic(const Field& fld, FieldElement y) {
    if (fld.is_zero(y)) return 0;
    return fld.dlog(y) % 2 == 0 ? 1 : -1;
}

FieldElement reduce(const Field& fld, const Rational& r) {
    const FieldElement den = fld.from_int(r.denominator());
    if (fld.is_zero(den)) throw Error(ErrorCode::SingularReduction, "parameter has p in its denominator");
    return fld.div(fld.from_int(r.numerator()), den);
}

// Right-hand side as a function of x, after checking good reduction.
struct Model {
    const Field& fld;
    FieldElement a, b, lambda;
    bool legendre;

    FieldElement rhs(FieldElement x) const {
        if (legendre) return fld.mul(fld.mul(x, fld.sub(x, fld.one())), fld.sub(x, lambda));
        return fld.add(fld.mul(x, fld.add(fld.mul(x, x), a)), b);
    }
};

Model reduce_model(const EllipticCurve& E, const Field& fld) {
    if (fld.p() == 2) throw Error(ErrorCode::SingularReduction, "models are singular in characteristic 2");
    Model m{fld, fld.zero(), fld.zero(), fld.zero(), E.lambda.has_value()};
    if (m.legendre) {
        m.lambda = reduce(fld, *E.lambda);
        if (fld.is_zero(m.lambda) || m.lambda == fld.one())
            throw Error(ErrorCode::SingularReduction, "lambda reduces to 0 or 1");
    } else {
        m.a = fld.from_int(E.a);
        m.b = fld.from_int(E.b);
        const FieldElement disc = fld.add(fld.mul(fld.from_int(4), fld.pow(m.a, 3)),
                                          fld.mul(fld.from_int(27), fld.mul(m.b, m.b)));
        if (fld.is_zero(disc)) throw Error(ErrorCode::SingularReduction, "discriminant vanishes");
    }
    return m;
}

}  // namespace

std::int64_t ec_ap(const EllipticCurve& E, const FieldPtr& fld) {
    const Model m = reduce_model(E, *fld);
    std::int64_t s = 0;
    for (std::int64_t code = 0; code < fld->q(); ++code) s += quadratic(*fld, m.rhs(fld->element(code)));
    return -s;
}

std::int64_t ec_ap_naive(const EllipticCurve& E, const FieldPtr& fld) {
    const Model m = reduce_model(E, *fld);
    std::vector<std::int64_t> squares(static_cast<std::size_t>(fld->q()), 0);
    for (std::int64_t code = 0; code < fld->q(); ++code) {
        const FieldElement y = fld->element(code);
        ++squares[fld->mul_poly(y, y).code];
    }
    std::int64_t count = 1;  // point at infinity
    for (std::int64_t code = 0; code < fld->q(); ++code)
        count += squares[m.rhs(fld->element(code)).code];
    return fld->q() + 1 - count;
}

std::int64_t ec_ap_any_reduction(const EllipticCurve& E, const FieldPtr& fld) {
    if (E.lambda || fld->p() == 2) throw Error(ErrorCode::InvalidArgument, "needs a short Weierstrass model, p odd");
    const Model m{*fld, fld->from_int(E.a), fld->from_int(E.b), fld->zero(), false};
    std::int64_t s = 0;
    for (std::int64_t code = 0; code < fld->q(); ++code) s += quadratic(*fld, m.rhs(fld->element(code)));
    return -s;
}

FieldElement j_invariant(const EllipticCurve& E, const FieldPtr& fld) {
    if (E.lambda) throw Error(ErrorCode::InvalidArgument, "j-invariant needs a short Weierstrass model");
    const Model m = reduce_model(E, *fld);
    const FieldElement a3 = fld->mul(fld->from_int(4), fld->pow(m.a, 3));
    const FieldElement disc = fld->add(a3, fld->mul(fld->from_int(27), fld->mul(m.b, m.b)));
    return fld->div(fld->mul(fld->from_int(1728), a3), disc);
}

}  // namespace hgff
