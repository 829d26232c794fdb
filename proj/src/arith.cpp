#include "alcove/arith.hpp"

namespace alcove {

auto is_prime(Int p) -> bool {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

auto p_valuation(const Rational &x, Int p) -> Int {
  if (x == 0) throw std::domain_error("valuation of zero");
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  Int v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

auto rational_pow(const Rational &x, Int e) -> Rational {
  if (e < 0) {
    if (x == 0) throw std::domain_error("negative power of zero");
    return rational_pow(Rational(1) / x, -e);
  }
  Rational r = 1, b = x;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

auto Rng::below(std::uint64_t bound) -> std::uint64_t {
  if (bound == 0) throw std::invalid_argument("empty range");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = eng_(); while (x >= limit);
  return x % bound;
}

} // namespace alcove
