#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace alcove {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct overflow_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};

inline auto checked_add(Int a, Int b) -> Int {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("int64 overflow in add");
  return r;
}
inline auto checked_sub(Int a, Int b) -> Int {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("int64 overflow in sub");
  return r;
}
inline auto checked_mul(Int a, Int b) -> Int {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("int64 overflow in mul");
  return r;
}

/// Floor-mod into [0, m).
inline auto mod_floor(Int a, Int m) -> Int {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

auto is_prime(Int p) -> bool;

/// p-adic valuation of a nonzero rational; throws on zero.
auto p_valuation(const Rational &x, Int p) -> Int;

/// Integer power of a rational, negative exponents allowed for nonzero base.
auto rational_pow(const Rational &x, Int e) -> Rational;

/// Deterministic seeded generator. The draw helpers avoid
/// std::uniform_int_distribution so output is identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  auto next() -> std::uint64_t { return eng_(); }
  /// Uniform integer in [0, bound).
  auto below(std::uint64_t bound) -> std::uint64_t;
  /// Uniform integer in [lo, hi].
  auto range(Int lo, Int hi) -> Int {
    return lo + static_cast<Int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

private:
  std::mt19937_64 eng_;
};

} // namespace alcove
