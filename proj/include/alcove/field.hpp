#pragma once

#include "alcove/arith.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace alcove {

/// F_q = F_p[T]/(m(T)) with m the lexicographically smallest monic
/// irreducible of degree k. Elements are encoded as sum c_i p^i with
/// 0 <= c_i < p, so F_p sits inside as 0..p-1.
class Fq {
public:
  using Elem = std::uint32_t;

  Fq(Int p, int k = 1);

  [[nodiscard]] auto p() const -> Int { return p_; }
  [[nodiscard]] auto degree() const -> int { return k_; }
  [[nodiscard]] auto q() const -> Int { return q_; }
  /// Coefficients of the modulus, constant term first (monic, length k+1).
  [[nodiscard]] auto modulus() const -> const std::vector<Int> & { return mod_; }
  [[nodiscard]] auto modulus_string() const -> std::string;

  [[nodiscard]] auto zero() const -> Elem { return 0; }
  [[nodiscard]] auto one() const -> Elem { return 1; }
  [[nodiscard]] auto from_int(Int a) const -> Elem { return static_cast<Elem>(mod_floor(a, p_)); }
  [[nodiscard]] auto generator() const -> Elem { return exp_[1]; }

  [[nodiscard]] auto add(Elem a, Elem b) const -> Elem;
  [[nodiscard]] auto sub(Elem a, Elem b) const -> Elem;
  [[nodiscard]] auto neg(Elem a) const -> Elem { return sub(0, a); }
  [[nodiscard]] auto mul(Elem a, Elem b) const -> Elem;
  [[nodiscard]] auto inv(Elem a) const -> Elem;
  [[nodiscard]] auto div(Elem a, Elem b) const -> Elem { return mul(a, inv(b)); }
  [[nodiscard]] auto pow(Elem a, Int e) const -> Elem;
  [[nodiscard]] auto random(Rng &rng) const -> Elem { return static_cast<Elem>(rng.below(static_cast<std::uint64_t>(q_))); }
  [[nodiscard]] auto random_unit(Rng &rng) const -> Elem {
    return static_cast<Elem>(1 + rng.below(static_cast<std::uint64_t>(q_ - 1)));
  }
  /// Coefficients c_0..c_{k-1} of the polynomial representative.
  [[nodiscard]] auto coeffs(Elem a) const -> std::vector<Int>;

private:
  Int p_;
  int k_;
  Int q_;
  std::vector<Int> mod_;
  std::vector<Elem> exp_;         // exp_[i] = g^i, i in [0, 2(q-1))
  std::vector<std::uint32_t> log_; // log_[a] for a != 0
};

} // namespace alcove
