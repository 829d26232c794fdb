#pragma once

#include "alcove/loopmat.hpp"
#include "alcove/serre.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace alcove {

/// delta_{w^{-1}(beta) > 0}
auto delta_pos(const Perm &w, Root beta) -> int;

struct PathSets {
  Root beta;
  std::vector<std::pair<Root, Root>> D; // (alpha_{t i}, alpha_{k t}), i < t < k
  std::vector<std::vector<Root>> P;     // chains i = t_0 < ... < t_s = k
  std::vector<std::vector<Root>> I;     // chains with the delta-sum of beta
};
/// beta = alpha_{ki} with k > i, i.e. Root{k, i}.
auto path_sets(Root beta, const Perm &w) -> PathSets;

struct RootData {
  Int degree{0}; // deg A_beta = m_{u^diamond, -beta}
  Int sigma{0}, kappa{0};
  Int m{0}, m_prime{0}; // m_beta is taken to be m'_beta
  bool bad{false};
};

/// Combinatorial chart data at embedding j0 for a case (a) special pair.
struct ChartData {
  int n{0}, j0{0}, i0{0}, k0{0};
  Int p{0};
  Perm w, u;
  ExtAffine w_diamond, u_diamond; // f = 1 components at j0
  std::vector<Int> eta, nu_u, nu_w;
  std::vector<Int> a_tau; // residues mod p
  std::vector<Int> D;     // nu_u + eta - nu_w + w(a_tau)
  Int m_alpha{0};         // m_{u^diamond, alpha}
  std::map<Root, RootData> roots;
};

/// a_tau = -(mu_tau + eta) at j0. Throws invalid_argument for case (b).
auto chart_data(const SetupData &setup) -> ChartData;
auto chart_data(const ExtAffine &w_diamond, const ExtAffine &u_diamond, const std::vector<Int> &a_tau, Int p)
    -> ChartData;

/// Polynomial entries A_beta, constant term first; c_beta is the last coefficient.
struct ChartPoint {
  const Fq *field{nullptr};
  ChartData data;
  std::map<Root, std::vector<Fq::Elem>> coeffs;

  [[nodiscard]] auto c(Root beta) const -> Fq::Elem;
  [[nodiscard]] auto a(Root beta) const -> Fq::Elem;
  [[nodiscard]] auto c_values() const -> std::map<Root, Fq::Elem>;
  [[nodiscard]] auto a_values() const -> std::map<Root, Fq::Elem>;
};

struct MinorIdentity {
  Fq::Elem direct{0}, recursive{0}, path_form{0};
  Fq::Elem x_direct{0}, x_path{0}; // X_{beta_2} as det(M'_{i-1}) and as a path sum
  int epsilon{1};                  // direct = epsilon * path_form
  Fq::Elem plus_x_i2{0};        // a_{-alpha} + a_{(k0-1) i0} X_{k0 (k0-1)}, i = 2 only
};
/// M_i: rows k0-i+1..k0, columns i0, k0-i+1..k0-1 of the lower unipotent matrix of a-values.
auto minor_identities(const Fq &field, const std::map<Root, Fq::Elem> &a, int i0, int k0, int i) -> MinorIdentity;
auto det_M(const Fq &field, const std::map<Root, Fq::Elem> &a, int i0, int k0, int i) -> Fq::Elem;

/// Coefficient of c_{-alpha}: m_{-alpha} - <a_tau, -w^{-1}(alpha)>.
auto z_leading_coefficient(const ChartData &data) -> Int;
/// Coefficient of c_{beta_2}: m + kappa - <a_tau, w^{-1}(beta_2)>.
auto z_pair_coefficient(const ChartData &data, Root beta2) -> Int;
/// Throws domain_error when a bracket vanishes mod p.
auto z_minus_alpha(const Fq &field, const ChartData &data, const std::map<Root, Fq::Elem> &c) -> Fq::Elem;

using Monomial = std::vector<Root>; // sorted, multilinear
using SparsePoly = std::map<Monomial, Fq::Elem>;
auto z_polynomial(const Fq &field, const ChartData &data) -> SparsePoly;
auto evaluate(const Fq &field, const SparsePoly &poly, const std::map<Root, Fq::Elem> &values) -> Fq::Elem;
/// Coefficient of prod_{x in S} x by inclusion-exclusion over subsets of S.
auto multilinear_coefficient(const Fq &field, const Monomial &s,
                             const std::function<Fq::Elem(const std::map<Root, Fq::Elem> &)> &fn) -> Fq::Elem;
/// c_{alpha_{k0 (k0-1)}} ... c_{alpha_{(i0+1) i0}}
auto simple_chain(const ChartData &data) -> Monomial;

/// Y_{alpha_{k0 t}} with chain sign (-1)^{t+k0-s}.
auto y_value(const Fq &field, const ChartData &data, const std::map<Root, Fq::Elem> &a, int t) -> Fq::Elem;

struct PartitionResult {
  bool precondition{false};
  std::string precondition_message;
  int kase{0}; // 1 when m_{u^diamond, alpha} > 0, else 2
  bool holds{false};
};
/// Case 2 is checked on every tuple of P_{beta_1}, i.e. I_{beta_1} = P_{beta_1}.
auto partition_lemma_check(const ExtAffine &u_diamond, const ExtAffine &w_diamond, int j0) -> PartitionResult;

/// Fills every coefficient below the top ones from the monodromy condition.
auto nabla_solve(const Fq &field, const ChartData &data, const std::map<Root, Fq::Elem> &top) -> ChartPoint;
/// The lower unipotent A with A_beta as stored.
auto chart_matrix(const ChartPoint &point, Int prec) -> LoopMatrix;
/// u^{-1} v^{nu_u} A v^{eta - nu_w} w; throws naming beta on a degree bound violation.
auto build_Vc_matrix(const ChartPoint &point, Int prec) -> LoopMatrix;
/// nabla_check of build_Vc_matrix against a_tau.
auto chart_nabla_ok(const ChartPoint &point, Int prec) -> bool;

/// (valuation, residue) for f_1..f_n.
struct FValues {
  std::vector<PAdicValue> f;
  [[nodiscard]] auto is_ordinary() const -> bool;
  [[nodiscard]] auto is_supersingular() const -> bool;
};
/// f_i = p^{f i (2n-i-1)/2} times the leading i x i minor of (prod_{j=f-1}^{0} w_j Abar_j w_j^{-1})^{-1},
/// Abar_j the diagonal of A_j mod v.
auto frobenius_minors_f(const std::vector<RationalPMatrix> &charts, const PermTuple &w) -> FValues;
/// A_j = u_j^{-1} D_j (v+p)^eta V_j u_j with random units D_j and random lower unipotent V_j.
auto random_extremal_chart(int n, int f, Int p, Rng &rng) -> std::pair<std::vector<RationalPMatrix>, PermTuple>;

struct WitnessChecks {
  bool c_zero{false}, z_zero{false}, a_minus_alpha_unit{false};
  std::vector<bool> minors_unit; // i = 2..k0-i0
  bool schubert_membership{false}, nabla{false}, open_cell{false};
  bool independence{true}; // m = 0 branch: Z and det(M_2) independent in a_{(k0-1) i0}
  [[nodiscard]] auto all() const -> bool;
};

struct Witness {
  std::shared_ptr<const Fq> field;
  Int q{0};
  std::string modulus;
  Int branch_m{0}; // m_{u^diamond, alpha}
  ChartPoint point;
  WitnessChecks checks;
  FValues f_sigma;
  HeckeCharacter chi_sigma_prime;
};

/// f = 1 only. Fields F_{p^k} are tried for k in `degrees`; error when none works.
auto witness_triple_intersection(const SetupData &setup, Int t, const std::vector<int> &degrees = {1, 2, 3})
    -> Witness;

} // namespace alcove
