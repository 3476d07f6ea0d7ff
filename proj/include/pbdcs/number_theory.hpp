#pragma once

#include <cstdint>
#include <optional>

namespace pbdcs {

bool is_prime(std::int64_t n);
bool is_power_of_two(std::int64_t n);

// Throws pbdcs::Error(Infeasible) on int64 overflow.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

// C(v, 2) with overflow detection.
std::int64_t binom2(std::int64_t v);

std::int64_t isqrt(std::int64_t x);

// Returns v with C(v,2) == value and v >= 2, or nullopt. value == 0 maps to v = 1.
std::optional<std::int64_t> triangular_root(std::int64_t value);

}  // namespace pbdcs
