#pragma once

#include "alcove/arith.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace alcove {

/// One-line permutation of {0,...,n-1}: p[i] is the image of i.
using Perm = std::vector<int>;

auto perm_identity(int n) -> Perm;
auto perm_compose(const Perm &a, const Perm &b) -> Perm; // a after b
auto perm_inverse(const Perm &a) -> Perm;
auto perm_is_valid(const Perm &a) -> bool;
auto all_perms(int n) -> std::vector<Perm>; // lexicographic
auto cycle_power(int n, int k) -> Perm;     // (1 2 ... n)^k
auto transposition(int n, int a, int b) -> Perm;
auto inversions(const Perm &a) -> int;

/// The root e_i - e_k (0-based, i != k).
struct Root {
  int i{0}, k{1};
  [[nodiscard]] auto positive() const -> bool { return i < k; }
  [[nodiscard]] auto operator-() const -> Root { return {k, i}; }
  auto operator<=>(const Root &) const = default;
};
auto positive_roots(int n) -> std::vector<Root>;
auto negative_roots(int n) -> std::vector<Root>;
auto act(const Perm &w, Root a) -> Root;

class Weight {
public:
  Weight() = default;
  Weight(int n, int f) : n_(n), f_(f), e_(static_cast<std::size_t>(n * f), 0) {}
  Weight(int n, int f, std::vector<Int> entries);
  static auto eta(int n, int f) -> Weight;
  static auto from_rows(const std::vector<std::vector<Int>> &rows) -> Weight;

  [[nodiscard]] auto n() const -> int { return n_; }
  [[nodiscard]] auto f() const -> int { return f_; }
  auto operator()(int j, int i) -> Int & { return e_[static_cast<std::size_t>(j * n_ + i)]; }
  auto operator()(int j, int i) const -> Int { return e_[static_cast<std::size_t>(j * n_ + i)]; }
  [[nodiscard]] auto pair(int j, Root a) const -> Int {
    return checked_sub((*this)(j, a.i), (*this)(j, a.k));
  }
  [[nodiscard]] auto row(int j) const -> std::vector<Int>;
  [[nodiscard]] auto rows() const -> std::vector<std::vector<Int>>;
  [[nodiscard]] auto entries() const -> const std::vector<Int> & { return e_; }
  /// pi(x)_j = x_{j+shift}
  [[nodiscard]] auto pi(int shift = 1) const -> Weight;

  auto operator+(const Weight &o) const -> Weight;
  auto operator-(const Weight &o) const -> Weight;
  auto operator-() const -> Weight;
  auto operator*(Int c) const -> Weight;
  auto operator<=>(const Weight &) const = default;
  auto operator==(const Weight &) const -> bool = default;

private:
  int n_{0}, f_{0};
  std::vector<Int> e_;
};

class PermTuple {
public:
  PermTuple() = default;
  PermTuple(int n, int f);
  explicit PermTuple(std::vector<Perm> perms);
  static auto single(int n, int f, int j, Perm p) -> PermTuple;

  [[nodiscard]] auto n() const -> int { return n_; }
  [[nodiscard]] auto f() const -> int { return static_cast<int>(p_.size()); }
  auto operator[](int j) -> Perm & { return p_[static_cast<std::size_t>(j)]; }
  auto operator[](int j) const -> const Perm & { return p_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] auto perms() const -> const std::vector<Perm> & { return p_; }

  auto operator*(const PermTuple &o) const -> PermTuple;
  [[nodiscard]] auto inverse() const -> PermTuple;
  [[nodiscard]] auto pi(int shift = 1) const -> PermTuple;
  /// (w lambda)_{w(i)} = lambda_i, componentwise.
  [[nodiscard]] auto act(const Weight &x) const -> Weight;
  auto operator<=>(const PermTuple &) const = default;
  auto operator==(const PermTuple &) const -> bool = default;

private:
  int n_{0};
  std::vector<Perm> p_;
};

/// t_nu w, componentwise over the embeddings.
struct ExtAffine {
  Weight nu;
  PermTuple w;

  [[nodiscard]] auto n() const -> int { return nu.n(); }
  [[nodiscard]] auto f() const -> int { return nu.f(); }
  static auto identity(int n, int f) -> ExtAffine;
  static auto translation(const Weight &nu) -> ExtAffine;
  static auto permutation(const PermTuple &w) -> ExtAffine;
  [[nodiscard]] auto component(int j) const -> ExtAffine;
  auto operator<=>(const ExtAffine &) const = default;
  auto operator==(const ExtAffine &) const -> bool = default;
};

struct ExtAffineHash {
  auto operator()(const ExtAffine &x) const -> std::size_t;
};

auto compose(const ExtAffine &x, const ExtAffine &y) -> ExtAffine;
auto inverse(const ExtAffine &x) -> ExtAffine;
/// (t_nu w)^* = w^{-1} t_nu
auto star(const ExtAffine &x) -> ExtAffine;
/// pi(x)_j = x_{j+shift}
auto pi_twist(const ExtAffine &x, int shift = 1) -> ExtAffine;
auto from_components(const std::vector<ExtAffine> &parts) -> ExtAffine;

/// Affine reflection s_{beta,m} = t_{m beta} s_beta at embedding j.
auto affine_reflection(int n, int f, int j, Root beta, Int m) -> ExtAffine;
/// Affine simple reflection: i = 0 is t_theta s_theta, i >= 1 swaps i-1 and i.
auto affine_simple(int n, int f, int j, int i) -> ExtAffine;

/// m_{x_j, beta} for any root beta.
auto m_value(const ExtAffine &x, int j, Root beta) -> Int;

struct AlcoveProfile {
  int n{0}, f{0};
  std::vector<Root> roots;    // positive roots, fixed order
  std::vector<Int> m;         // m[j * roots.size() + r]
  std::vector<bool> restricted, regular;
  [[nodiscard]] auto at(int j, Root a) const -> Int;
};

auto alcove_profile(const ExtAffine &x) -> AlcoveProfile;
/// Hashable key for the alcove x A_0 modulo X^0 (the m-profile itself).
auto alcove_key(const ExtAffine &x) -> std::vector<Int>;
auto length(const ExtAffine &x) -> Int;
auto is_restricted(const ExtAffine &x) -> bool;

/// Canonical restricted lift w^diamond with nu_w normalized to last coordinate 0.
auto restricted_lift(const PermTuple &w) -> ExtAffine;
auto dot_action(const ExtAffine &x, const Weight &lam, Int p) -> Weight;

/// Left descent test for the affine simple reflection (j, i).
auto is_left_descent(const ExtAffine &x, int j, int i) -> bool;

struct ReducedWord {
  std::vector<std::pair<int, int>> letters; // (embedding, affine simple index)
  ExtAffine omega;                          // length-zero right factor
};
auto reduced_word(const ExtAffine &x) -> ReducedWord;
auto random_reduced_word(const ExtAffine &x, Rng &rng) -> ReducedWord;
auto word_product(const ReducedWord &word) -> ExtAffine;

auto bruhat_leq_word(const ExtAffine &x, const ReducedWord &y_word) -> bool;
auto bruhat_leq(const ExtAffine &x, const ExtAffine &y) -> bool;
auto bruhat_interval_below(const ExtAffine &y) -> std::vector<ExtAffine>;

/// Breadth-first distances from omega under left multiplication by affine
/// simple reflections, up to max_len.
auto coxeter_ball(const ExtAffine &omega, Int max_len)
    -> std::unordered_map<ExtAffine, Int, ExtAffineHash>;

/// Reflexive-transitive closure of the upward move A -> s_{alpha,m} A
/// (A below H_{alpha,m}), searched inside a bounded box around a and b.
auto up_arrow_leq(const ExtAffine &a, const ExtAffine &b, int margin = 2) -> bool;

enum class ColengthClass { Extremal, ColengthOne, Deeper };
auto to_string(ColengthClass c) -> const char *;

auto is_dominant(const Weight &lam) -> bool;
auto admissible_set(const Weight &lam) -> std::vector<ExtAffine>;
auto classify_colength(const ExtAffine &x, const Weight &lam) -> ColengthClass;

/// Number of distinct restricted alcoves w^diamond A_0 modulo X^0 as w runs over W.
auto restricted_alcove_count(int n) -> std::size_t;

} // namespace alcove
