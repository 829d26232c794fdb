#pragma once

#include "alcove/field.hpp"
#include "alcove/weyl.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alcove {

struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Truncated Laurent series over F_q: exact for degrees < prec, unknown above.
class LaurentSeries {
public:
  using Elem = Fq::Elem;

  LaurentSeries() = default;
  LaurentSeries(const Fq *field, Int prec) : f_(field), prec_(prec), start_(prec) {}
  static auto monomial(const Fq *field, Elem c, Int deg, Int prec) -> LaurentSeries;
  /// sum_k coeffs[k] v^{start + k}
  static auto from_coeffs(const Fq *field, Int start, const std::vector<Elem> &coeffs, Int prec) -> LaurentSeries;

  [[nodiscard]] auto field() const -> const Fq * { return f_; }
  [[nodiscard]] auto prec() const -> Int { return prec_; }
  [[nodiscard]] auto coeff(Int d) const -> Elem;
  /// First nonzero degree, or nullopt when zero to the known precision.
  [[nodiscard]] auto valuation() const -> std::optional<Int>;
  [[nodiscard]] auto is_unit() const -> bool { return valuation() == Int{0}; }
  [[nodiscard]] auto is_integral() const -> bool;
  /// Valuation, or prec for a series that is zero to precision.
  [[nodiscard]] auto val_or_prec() const -> Int;

  auto operator+(const LaurentSeries &o) const -> LaurentSeries;
  auto operator-(const LaurentSeries &o) const -> LaurentSeries;
  auto operator-() const -> LaurentSeries;
  auto operator*(const LaurentSeries &o) const -> LaurentSeries;
  [[nodiscard]] auto scale(Elem c) const -> LaurentSeries;
  /// v^k times this.
  [[nodiscard]] auto shift(Int k) const -> LaurentSeries;
  [[nodiscard]] auto inverse() const -> LaurentSeries;
  /// d/dv, one degree of precision lost.
  [[nodiscard]] auto derivative() const -> LaurentSeries;
  [[nodiscard]] auto truncate(Int prec) const -> LaurentSeries;
  /// Nonzero coefficients below prec as (degree, value).
  [[nodiscard]] auto terms() const -> std::vector<std::pair<Int, Elem>>;

private:
  const Fq *f_{nullptr};
  Int prec_{0};
  Int start_{0};
  std::vector<Elem> c_; // degrees start_ .. prec_-1
};

class LoopMatrix {
public:
  using Elem = Fq::Elem;

  LoopMatrix() = default;
  LoopMatrix(const Fq *field, int n, Int prec);
  static auto identity(const Fq *field, int n, Int prec) -> LoopMatrix;
  /// v^nu P_w with P_w e_i = e_{w(i)}.
  static auto monomial(const Fq *field, const std::vector<Int> &nu, const Perm &w, Int prec) -> LoopMatrix;
  static auto diagonal(const std::vector<LaurentSeries> &d) -> LoopMatrix;

  [[nodiscard]] auto n() const -> int { return n_; }
  [[nodiscard]] auto field() const -> const Fq * { return f_; }
  auto operator()(int r, int c) -> LaurentSeries & { return e_[static_cast<std::size_t>(r * n_ + c)]; }
  auto operator()(int r, int c) const -> const LaurentSeries & { return e_[static_cast<std::size_t>(r * n_ + c)]; }
  /// Least precision over all entries.
  [[nodiscard]] auto prec() const -> Int;

  auto operator*(const LoopMatrix &o) const -> LoopMatrix;
  auto operator+(const LoopMatrix &o) const -> LoopMatrix;
  auto operator-(const LoopMatrix &o) const -> LoopMatrix;
  [[nodiscard]] auto det() const -> LaurentSeries;
  [[nodiscard]] auto adjugate() const -> LoopMatrix;
  [[nodiscard]] auto inverse() const -> LoopMatrix;
  [[nodiscard]] auto derivative() const -> LoopMatrix;
  /// X this X^{-1}
  [[nodiscard]] auto conjugate(const LoopMatrix &x) const -> LoopMatrix;
  /// Minor on the given rows and columns.
  [[nodiscard]] auto minor(const std::vector<int> &rows, const std::vector<int> &cols) const -> LaurentSeries;
  [[nodiscard]] auto swap_columns(int a, int b) const -> LoopMatrix;
  /// Constant terms (requires integral entries).
  [[nodiscard]] auto mod_v() const -> std::vector<std::vector<Elem>>;

private:
  const Fq *f_{nullptr};
  int n_{0};
  std::vector<LaurentSeries> e_;
};

/// Default precision 4 n (1 + max input degree).
auto default_precision(int n, Int max_degree) -> Int;

/// Integral entries, upper triangular mod v, invertible diagonal mod v.
auto iwahori_member(const LoopMatrix &a) -> bool;
/// Random element of the Iwahori subgroup with polynomial entries of degree <= deg.
auto random_iwahori(const Fq *field, int n, Int deg, Int prec, Rng &rng) -> LoopMatrix;

struct BruhatCell {
  std::vector<Int> nu;
  Perm w;
  Int certified_prec{0};
  auto operator==(const BruhatCell &o) const -> bool { return nu == o.nu && w == o.w; }
};
/// The unique (nu, w) with A in I v^nu w I.
auto affine_bruhat_decompose(const LoopMatrix &a) -> BruhatCell;

/// E = v (v A' A^{-1} + A diag(a) A^{-1}) integral and upper triangular mod v.
auto nabla_check(const LoopMatrix &a, const std::vector<Fq::Elem> &diag_a) -> bool;

struct RowOp {
  int target, source; // R_target += factor * R_source
  LaurentSeries factor;
};
struct RowReduction {
  std::vector<RowOp> ops;
  std::vector<LaurentSeries> pivots; // diagonal before the final scaling
  LoopMatrix result;                 // lower unipotent
};
/// Clears everything above the diagonal by adding lower rows to upper rows,
/// then scales rows by the inverse diagonal. Each operation u_beta(f) is
/// checked against v^{-m_{u^diamond, beta}} F[[v]].
auto iwahori_row_reduce(const LoopMatrix &m, const ExtAffine &u_diamond) -> RowReduction;
/// Conditions (unit A_{-alpha}, unit minors of A s_alpha) then the reduction of A s_alpha.
auto open_locus_reduce(const LoopMatrix &a, const ExtAffine &u_diamond, int i0, int k0) -> RowReduction;

// ---------------------------------------------------------------- exact rationals

using QMatrix = std::vector<std::vector<Rational>>;
auto q_identity(int n) -> QMatrix;
auto q_mul(const QMatrix &a, const QMatrix &b) -> QMatrix;
auto q_det(QMatrix a) -> Rational;
auto q_inverse(const QMatrix &a) -> QMatrix;
auto q_leading_minor(const QMatrix &a, int i) -> Rational;

/// Polynomial in v over Q, constant term first.
struct QPoly {
  std::vector<Rational> c;
  [[nodiscard]] auto constant() const -> Rational { return c.empty() ? Rational(0) : c[0]; }
};
auto operator+(const QPoly &a, const QPoly &b) -> QPoly;
auto operator*(const QPoly &a, const QPoly &b) -> QPoly;

/// n x n matrix of polynomials in v over Q with a fixed prime.
struct RationalPMatrix {
  int n{0};
  Int p{0};
  std::vector<QPoly> e;

  static auto identity(int n, Int p) -> RationalPMatrix;
  static auto permutation(const Perm &w, Int p) -> RationalPMatrix;
  /// (v + p)^eta
  static auto v_plus_p_eta(int n, Int p) -> RationalPMatrix;
  auto operator()(int r, int c) -> QPoly & { return e[static_cast<std::size_t>(r * n + c)]; }
  auto operator()(int r, int c) const -> const QPoly & { return e[static_cast<std::size_t>(r * n + c)]; }
  auto operator*(const RationalPMatrix &o) const -> RationalPMatrix;
  [[nodiscard]] auto mod_v() const -> QMatrix;
};

/// (valuation, unit part mod p); valuation nullopt for zero.
struct PAdicValue {
  std::optional<Int> valuation;
  Int residue{0};
};
auto padic_value(const Rational &x, Int p) -> PAdicValue;

} // namespace alcove
