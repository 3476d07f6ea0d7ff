#include "pbdcs/number_theory.hpp"

#include <cmath>

#include "pbdcs/error.hpp"

namespace pbdcs {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorCode::Infeasible, "arith", "integer overflow in multiplication");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorCode::Infeasible, "arith", "integer overflow in addition");
  return out;
}

std::int64_t binom2(std::int64_t v) {
  if (v < 2) return 0;
  // one of v, v-1 is even
  return v % 2 == 0 ? checked_mul(v / 2, v - 1) : checked_mul(v, (v - 1) / 2);
}

std::int64_t isqrt(std::int64_t x) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "arith", "isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::optional<std::int64_t> triangular_root(std::int64_t value) {
  if (value < 0) return std::nullopt;
  if (value == 0) return 1;
  // v(v-1)/2 = value  <=>  (2v-1)^2 = 8 value + 1
  const std::int64_t disc = checked_add(checked_mul(8, value), 1);
  const std::int64_t s = isqrt(disc);
  if (s * s != disc) return std::nullopt;
  return (s + 1) / 2;
}

}  // namespace pbdcs
