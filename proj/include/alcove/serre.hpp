#pragma once

#include "alcove/field.hpp"
#include "alcove/weyl.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alcove {

struct no_presentation_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct depth_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Representative of lam modulo (p - pi)X^0: the last coordinates are the
/// base-p digits of sum_j lam_{j,n-1} p^{f-1-j} mod (p^f - 1).
auto canonical_weight(const Weight &lam, Int p) -> Weight;
auto is_p_restricted(const Weight &lam, Int p) -> bool;
auto same_serre_weight(const Weight &a, const Weight &b, Int p) -> bool;

struct SerreWeightLAP {
  ExtAffine wtilde; // restricted at every embedding
  Weight omega;     // omega - eta in the base p-alcove
  Int p{0};
};

/// pi^{-1}(wtilde) . (omega - eta), without normalization.
auto presentation_raw_weight(const SerreWeightLAP &lap) -> Weight;
/// canonical_weight(presentation_raw_weight(lap)).
auto presentation_to_weight(const SerreWeightLAP &lap) -> Weight;
/// First presentation found scanning W in lexicographic order at each embedding.
auto lowest_alcove_presentation(const Weight &lam, Int p) -> SerreWeightLAP;
auto is_valid_lap(const SerreWeightLAP &lap) -> bool;

/// First (embedding, positive root) with <x, alpha^vee> outside (m, p - m), if any.
auto depth_violation(const Weight &x, Int m, Int p) -> std::optional<std::pair<int, Root>>;
auto is_deep(const SerreWeightLAP &lap, Int m) -> bool;

struct TameTypePresentation {
  PermTuple s;
  Weight mu;
  Int p{0};

  /// t_{mu + eta} s
  [[nodiscard]] auto wtilde() const -> ExtAffine;
  auto operator==(const TameTypePresentation &) const -> bool = default;
};

auto is_generic(const TameTypePresentation &tp, Int m) -> bool;
/// (s', mu') = x . (s, mu) = (w s pi(w)^{-1}, x . mu - w s pi(w)^{-1} pi(x)(0)) for x = t_nu w.
auto change_presentation(const TameTypePresentation &tp, const ExtAffine &x) -> TameTypePresentation;
/// wtilde(tau)^{-1} wtilde(rhobar)
auto relative_shape(const TameTypePresentation &rhobar, const TameTypePresentation &tau) -> ExtAffine;
/// Search x with l(x) <= max_len, any length-zero part and X^0 shifts in
/// [-shift, shift], such that x . a == b.
auto types_related(const TameTypePresentation &a, const TameTypePresentation &b, Int max_len, Int shift = 1)
    -> std::optional<ExtAffine>;

enum class SpecialCase { A, B };
auto to_string(SpecialCase c) -> const char *;

struct SpecialityCertificate {
  int j0{0};
  Root alpha{0, 1}; // alpha_{1n}
  ExtAffine w_diamond, u_diamond;
  SpecialCase kase{SpecialCase::A};
  std::optional<PermTuple> delta_used;
  bool bruhat_leq{false}; // u^diamond <= w^diamond in the Bruhat order, for comparison
};

/// Certificates for every embedding j0 at which w^diamond is special.
auto special_certificates(const ExtAffine &w_diamond) -> std::vector<SpecialityCertificate>;
auto is_special(const ExtAffine &w_diamond) -> std::optional<SpecialityCertificate>;

/// The f = 1 closed criterion: case (a) sends {1, n} to {t0, t0+1} in order,
/// case (b) interchanges 1 and n. With use_inverse the criterion is read on w^{-1}.
auto closed_special_criterion(const Perm &w, bool use_inverse) -> bool;

struct SpecialCount {
  std::size_t special_tuples{0}, total_tuples{0};
  std::size_t special_classes{0}, total_classes{0};
  Rational proportion;
};
/// Exhaustive over W^J; classes are cosets of S^J.
auto enumerate_special(int n, int f) -> SpecialCount;

struct SpecialPair {
  PermTuple w, u;
  int j0{0};
};
/// Every (w, u) with w^diamond special at j0 and u^diamond its certificate partner.
auto special_pairs(int n, int f) -> std::vector<SpecialPair>;
/// omega with <omega, alpha^vee> = 3n - 3 on every simple root.
auto deep_omega(int n, int f) -> Weight;

/// Requires w = s_alpha u at j0 (alpha = alpha_{i0 k0}) and equality elsewhere.
auto classify_case(const PermTuple &w, const PermTuple &u, int j0, int i0, int k0) -> SpecialCase;

struct CaseNormalization {
  PermTuple w, u, delta;
  Weight omega; // pi^{-1}(delta^diamond)^{-1} . (omega - eta) + eta
  bool cycle_power_delta{true}; // false when the cycle power failed and S was searched
};
auto normalize_to_case_a(const PermTuple &w, const PermTuple &u, int j0, const Weight &omega, Int p)
    -> CaseNormalization;

struct SetupData {
  int j0{0};
  Root alpha{0, 1};
  SpecialCase kase{SpecialCase::A};
  SerreWeightLAP sigma, sigma_prime;
  TameTypePresentation tau, tau_prime, rhobar, rhobar_prime;
  ExtAffine shape, shape_prime;   // wtilde(rhobar, tau), wtilde(rhobar', tau')
  ExtAffine ztilde, ztilde_prime; // their stars
  bool shape_formula{false};      // shape == w^{-1} t_{eta + nu_u - nu_w} u
  bool shape_prime_formula{false}; // shape' == t_{u^{-1}(eta)}
  bool tau_generic{false}, tau_prime_generic{false}; // (2n-3)-generic
  bool presentation_check{false}; // pi^{-1}(w^diamond) . tau = (e, lambda - eta)
  std::vector<ColengthClass> shape_classes; // per embedding, relative to eta
  ColengthClass shape_prime_class{ColengthClass::Deeper};
};

/// Builds the chart data for sigma = F(w^diamond, omega), sigma' = F(u^diamond, omega).
/// Throws depth_error naming the root when sigma is not (3n-4)-deep.
auto build_setup(const PermTuple &w, const PermTuple &u, int j0, const Weight &omega, Int p) -> SetupData;

struct LeviDatum {
  std::vector<int> blocks;
  Weight highest_weight;
};
/// Standard Levi of P_{-omega_i}: blocks (i, n - i).
auto levi_restriction(const Weight &lam, int i) -> LeviDatum;

struct Gl2Constituents {
  Weight lambda, s0, s1, s0s1; // canonical p-restricted representatives
  std::vector<Weight> socle;   // C_1(sigma) socle: s0, s1
  Weight cosocle;              // s0s1
};
/// (x lambda)^diamond = x(lambda) + (p - pi) nu_x, dot action for s_0, s_1 and
/// linear action for s_0 s_1.
auto gl2_f2_jh(const Weight &lam, Int p) -> Gl2Constituents;

/// Images of x_1, ..., x_n.
struct HeckeCharacter {
  std::vector<Fq::Elem> values;
  auto operator==(const HeckeCharacter &) const -> bool = default;
};
/// chi_i(p) = chi(T_i) / chi(T_{i-1}) with T_0 = 1.
auto ps_parameters(const Fq &field, const HeckeCharacter &chi) -> std::vector<Fq::Elem>;

} // namespace alcove
