#pragma once

#include <optional>

#include "hgff/errors.hpp"

// Code of the hgff::Error raised by f, or nullopt when nothing is thrown.
template <typename F>
std::optional<hgff::ErrorCode> error_of(F&& f) {
    try {
        f();
    } catch (const hgff::Error& e) {
        return e.code();
    }
    return std::nullopt;
}
