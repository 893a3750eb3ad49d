#include "hgff/char_sums.hpp"

#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "hgff/errors.hpp"

namespace hgff {

GaussTable compute_gauss_table(const FieldPtr& fld, int precision, std::int64_t additive_scale) {
    if (precision < 53) throw Error(ErrorCode::InvalidArgument, "precision below 53 bits");
    const std::int64_t p = fld->p();
    if (mod(additive_scale, p) == 0) throw Error(ErrorCode::InvalidArgument, "additive character is trivial");
    const std::int64_t order = fld->order();
    const int guard = precision + 32;
    const double u = unit_roundoff(guard);

    // tr_k = c * Tr(g^k) mod p
    std::vector<std::int64_t> tr(static_cast<std::size_t>(order));
    for (std::int64_t k = 0; k < order; ++k)
        tr[static_cast<std::size_t>(k)] = mod(additive_scale * fld->trace(fld->exp(k)), p);

    std::vector<ComplexValue> roots;
    roots.reserve(static_cast<std::size_t>(order));
    double root_err = 0.0;
    for (std::int64_t j = 0; j < order; ++j) {
        roots.push_back(ComplexValue::root_of_unity(j, order, guard));
        root_err = std::max(root_err, roots.back().err());
    }
    std::vector<ComplexValue> zeta_p;
    for (std::int64_t r = 0; r < p; ++r) zeta_p.push_back(ComplexValue::root_of_unity(r, p, guard));

    std::vector<std::int64_t> bucket_size(static_cast<std::size_t>(p), 0);
    for (auto r : tr) ++bucket_size[static_cast<std::size_t>(r)];

    GaussTable table;
    table.field = fld;
    table.precision = precision;
    table.additive_scale = additive_scale;
    table.values.reserve(static_cast<std::size_t>(order));

    std::vector<__mpfr_struct> bre(static_cast<std::size_t>(p)), bim(static_cast<std::size_t>(p));
    for (std::int64_t r = 0; r < p; ++r) {
        mpfr_init2(&bre[static_cast<std::size_t>(r)], guard);
        mpfr_init2(&bim[static_cast<std::size_t>(r)], guard);
    }
    for (std::int64_t t = 0; t < order; ++t) {
        for (std::int64_t r = 0; r < p; ++r) {
            mpfr_set_zero(&bre[static_cast<std::size_t>(r)], 1);
            mpfr_set_zero(&bim[static_cast<std::size_t>(r)], 1);
        }
        // bucket_r = sum over k with c Tr(g^k) = r of zeta_{q-1}^{t k}
        std::int64_t e = 0;
        for (std::int64_t k = 0; k < order; ++k) {
            const auto r = static_cast<std::size_t>(tr[static_cast<std::size_t>(k)]);
            const ComplexValue& z = roots[static_cast<std::size_t>(e)];
            mpfr_add(&bre[r], &bre[r], z.re().get(), MPFR_RNDN);
            mpfr_add(&bim[r], &bim[r], z.im().get(), MPFR_RNDN);
            e += t;
            if (e >= order) e -= order;
        }
        ComplexValue g(guard);
        for (std::int64_t r = 0; r < p; ++r) {
            const auto n = static_cast<double>(bucket_size[static_cast<std::size_t>(r)]);
            if (n == 0) continue;
            // n root errors plus the rounding of n additions of partial sums
            // bounded by 2i in l1.
            const double err = n * root_err + u * n * (n + 1.0);
            const ComplexValue b = ComplexValue::from_parts(&bre[static_cast<std::size_t>(r)],
                                                            &bim[static_cast<std::size_t>(r)], err, guard);
            g.add_product(b, zeta_p[static_cast<std::size_t>(r)]);
        }
        ComplexValue out(precision);
        out += g;
        table.values.push_back(std::move(out));
    }
    for (std::int64_t r = 0; r < p; ++r) {
        mpfr_clear(&bre[static_cast<std::size_t>(r)]);
        mpfr_clear(&bim[static_cast<std::size_t>(r)]);
    }
    return table;
}

GaussTablePtr gauss_table(const FieldPtr& fld, int precision, std::int64_t additive_scale) {
    using Key = std::tuple<std::int64_t, int, int, std::int64_t>;
    static std::mutex mu;
    static std::map<Key, std::shared_future<GaussTablePtr>> cache;
    const Key key{fld->p(), fld->degree(), precision, mod(additive_scale, fld->p())};

    std::promise<GaussTablePtr> promise;
    std::shared_future<GaussTablePtr> fut;
    bool builder = false;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            fut = it->second;
        } else {
            fut = promise.get_future().share();
            cache.emplace(key, fut);
            builder = true;
        }
    }
    if (builder) {
        try {
            promise.set_value(std::make_shared<const GaussTable>(
                compute_gauss_table(make_field(fld->p(), fld->degree()), precision, additive_scale)));
        } catch (...) {
            promise.set_exception(std::current_exception());
            std::lock_guard<std::mutex> lock(mu);
            cache.erase(key);
        }
    }
    return fut.get();
}

CyclotomicInteger char_value(const MultChar& chi, FieldElement x) {
    const std::int64_t m = chi.order();
    const auto e = char_eval(chi, x);
    if (!e) return CyclotomicInteger::zero(m);
    return CyclotomicInteger::root(*e / (chi.field->order() / m), m);
}

CyclotomicInteger jacobi_sum(const MultChar& chi, const MultChar& psi) {
    if (chi.field != psi.field) throw Error(ErrorCode::InvalidArgument, "characters on different fields");
    const FieldPtr& fld = chi.field;
    const std::int64_t m = std::lcm(chi.order(), psi.order());
    const std::int64_t step = fld->order() / m;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
    for (std::int64_t code = 2; code < fld->q(); ++code) {
        const FieldElement x = fld->element(code);
        const FieldElement y = fld->sub(fld->one(), x);
        if (fld->is_zero(y)) continue;
        const auto e1 = *char_eval(chi, x);
        const auto e2 = *char_eval(psi, y);
        ++counts[static_cast<std::size_t>(mod(e1 + e2, fld->order()) / step)];
    }
    return CyclotomicInteger::from_exponent_counts(counts, m);
}

}  // namespace hgff
