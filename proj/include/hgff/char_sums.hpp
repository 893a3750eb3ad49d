#pragma once

// Gauss sums (numeric, certified) and Jacobi sums (exact).

#include <memory>
#include <vector>

#include "hgff/algebraic.hpp"
#include "hgff/field.hpp"

namespace hgff {

/// g(chi_t) = sum_x chi_t(x) theta(x) for every character index t, with
/// theta(x) = exp(2 pi i c Tr(x) / p).
struct GaussTable {
    FieldPtr field;
    int precision = kDefaultPrecision;
    std::int64_t additive_scale = 1;
    std::vector<ComplexValue> values;

    const ComplexValue& operator[](std::int64_t index) const {
        return values[static_cast<std::size_t>(mod(index, field->order()))];
    }
    const ComplexValue& of(const MultChar& chi) const { return (*this)[chi.index]; }
};

using GaussTablePtr = std::shared_ptr<const GaussTable>;

/// All q-1 Gauss sums in one pass. Results are cached per
/// (p, n, precision, additive_scale); the cache is safe for concurrent use.
GaussTablePtr gauss_table(const FieldPtr& fld, int precision = kDefaultPrecision,
                          std::int64_t additive_scale = 1);

/// Uncached construction (used by the cache and by tests).
GaussTable compute_gauss_table(const FieldPtr& fld, int precision, std::int64_t additive_scale);

/// J(chi, psi) = sum_x chi(x) psi(1 - x) in Z[zeta_m], m = lcm of the orders.
CyclotomicInteger jacobi_sum(const MultChar& chi, const MultChar& psi);

/// chi(x) as an element of Z[zeta_m], m the order of chi (0 when x = 0).
CyclotomicInteger char_value(const MultChar& chi, FieldElement x);

}  // namespace hgff
