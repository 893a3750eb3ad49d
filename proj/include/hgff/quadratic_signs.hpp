#pragma once

// Kronecker symbols, representations of primes by binary and quinary
// forms, and the sign functions attached to the conjectural relations.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hgff {

int kronecker(std::int64_t n, std::int64_t m);

/// p = x^2 + y^2 with x odd, y even, x, y >= 0. Requires p = 1 mod 4.
std::pair<std::int64_t, std::int64_t> two_square(std::int64_t p);

/// p = u^2 + 2 v^2 with u = 3 mod 4 and v >= 0 even. Requires p = 1 mod 8.
std::pair<std::int64_t, std::int64_t> u2v2(std::int64_t p);

/// All (a, b, c, d) with p = a^2 + 5(b^2 + c^2 + d^2), a = 4 mod 5 and
/// ab = d^2 - c^2 - cd, in lexicographic order.
std::vector<std::array<std::int64_t, 4>> quinary_all(std::int64_t p);
/// The lexicographically least such tuple. Requires p = 1 mod 10.
std::array<std::int64_t, 4> quinary(std::int64_t p);

enum class SignKind { Sx, Su, S4, S6, S10, S12, S20 };
enum class SignValue { Plus, Minus, Ambiguous };

SignValue sign(SignKind kind, std::int64_t p);
/// Whether p lies in the congruence class on which kind is defined.
bool sign_defined(SignKind kind, std::int64_t p);

int to_int(SignValue v);  // +1, -1, 0 for Ambiguous
std::string to_string(SignKind kind);
std::string to_string(SignValue v);

}  // namespace hgff
