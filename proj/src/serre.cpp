#include "alcove/serre.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace alcove {

namespace {

auto row_weight(const Weight &x, int j) -> Weight { return Weight(x.n(), 1, x.row(j)); }

auto in_base_alcove(const Weight &omega, Int p) -> bool { return !depth_violation(omega, 0, p); }

auto p_minus_pi(const Weight &nu, Int p) -> Weight { return nu * p - nu.pi(1); }

auto x0_part(const Weight &d, int j) -> bool {
  for (int i = 1; i < d.n(); ++i)
    if (d(j, i) != d(j, 0)) return false;
  return true;
}

} // namespace

// ---------------------------------------------------------------- Serre weights

auto canonical_weight(const Weight &lam, Int p) -> Weight {
  int n = lam.n(), f = lam.f();
  BigInt modulus = 1;
  for (int j = 0; j < f; ++j) modulus *= p;
  modulus -= 1;
  BigInt inv = 0;
  for (int j = 0; j < f; ++j) inv = inv * p + lam(j, n - 1);
  inv %= modulus;
  if (inv < 0) inv += modulus;
  std::vector<Int> digits(static_cast<std::size_t>(f));
  for (int j = f - 1; j >= 0; --j) {
    digits[static_cast<std::size_t>(j)] = static_cast<Int>(inv % p);
    inv /= p;
  }
  Weight out(n, f);
  for (int j = 0; j < f; ++j)
    for (int i = 0; i < n; ++i)
      out(j, i) = checked_add(checked_sub(lam(j, i), lam(j, n - 1)), digits[static_cast<std::size_t>(j)]);
  return out;
}

auto is_p_restricted(const Weight &lam, Int p) -> bool {
  for (int j = 0; j < lam.f(); ++j)
    for (int i = 0; i + 1 < lam.n(); ++i) {
      Int d = lam(j, i) - lam(j, i + 1);
      if (d < 0 || d > p - 1) return false;
    }
  return true;
}

auto same_serre_weight(const Weight &a, const Weight &b, Int p) -> bool {
  return canonical_weight(a, p) == canonical_weight(b, p);
}

auto presentation_raw_weight(const SerreWeightLAP &lap) -> Weight {
  Weight eta = Weight::eta(lap.omega.n(), lap.omega.f());
  return dot_action(pi_twist(lap.wtilde, -1), lap.omega - eta, lap.p);
}

auto presentation_to_weight(const SerreWeightLAP &lap) -> Weight {
  return canonical_weight(presentation_raw_weight(lap), lap.p);
}

auto is_valid_lap(const SerreWeightLAP &lap) -> bool {
  return is_restricted(lap.wtilde) && in_base_alcove(lap.omega, lap.p);
}

auto lowest_alcove_presentation(const Weight &lam, Int p) -> SerreWeightLAP {
  int n = lam.n(), f = lam.f();
  if (!is_p_restricted(lam, p)) throw std::invalid_argument("weight is not p-restricted");
  Weight eta1 = Weight::eta(n, 1);
  std::vector<ExtAffine> parts(static_cast<std::size_t>(f));
  Weight omega(n, f);
  for (int j = 0; j < f; ++j) {
    bool found = false;
    for (const auto &w : all_perms(n)) {
      ExtAffine x = restricted_lift(PermTuple({w}));
      Weight om = dot_action(inverse(x), row_weight(lam, j), p) + eta1;
      if (!in_base_alcove(om, p)) continue;
      parts[static_cast<std::size_t>(mod_floor(j - 1, f))] = x;
      for (int i = 0; i < n; ++i) omega(j, i) = om(0, i);
      found = true;
      break;
    }
    if (!found) {
      std::ostringstream os;
      os << "no lowest alcove presentation: embedding " << j << " lies on a p-alcove wall";
      throw no_presentation_error(os.str());
    }
  }
  return {from_components(parts), omega, p};
}

auto depth_violation(const Weight &x, Int m, Int p) -> std::optional<std::pair<int, Root>> {
  for (int j = 0; j < x.f(); ++j)
    for (auto a : positive_roots(x.n())) {
      Int v = x.pair(j, a);
      if (!(m < v && v < p - m)) return std::make_pair(j, a);
    }
  return std::nullopt;
}

auto is_deep(const SerreWeightLAP &lap, Int m) -> bool { return !depth_violation(lap.omega, m, lap.p); }

// ---------------------------------------------------------------- tame types

auto TameTypePresentation::wtilde() const -> ExtAffine {
  return compose(ExtAffine::translation(mu + Weight::eta(mu.n(), mu.f())), ExtAffine::permutation(s));
}

auto is_generic(const TameTypePresentation &tp, Int m) -> bool {
  return !depth_violation(tp.mu + Weight::eta(tp.mu.n(), tp.mu.f()), m, tp.p);
}

auto change_presentation(const TameTypePresentation &tp, const ExtAffine &x) -> TameTypePresentation {
  PermTuple s2 = x.w * tp.s * x.w.pi(1).inverse();
  Weight mu2 = dot_action(x, tp.mu, tp.p) - s2.act(x.nu.pi(1));
  return {s2, mu2, tp.p};
}

auto relative_shape(const TameTypePresentation &rhobar, const TameTypePresentation &tau) -> ExtAffine {
  return compose(inverse(tau.wtilde()), rhobar.wtilde());
}

auto types_related(const TameTypePresentation &a, const TameTypePresentation &b, Int max_len, Int shift)
    -> std::optional<ExtAffine> {
  int n = a.mu.n(), f = a.mu.f();
  Int span = 2 * shift + 1;
  Int combos = 1;
  for (int j = 0; j < f; ++j) combos = checked_mul(combos, n * span);
  for (Int code = 0; code < combos; ++code) {
    std::vector<ExtAffine> parts;
    Int c = code;
    for (int j = 0; j < f; ++j) {
      int k = static_cast<int>(c % n);
      c /= n;
      Int sh = c % span - shift;
      c /= span;
      ExtAffine o = restricted_lift(PermTuple({cycle_power(n, k)}));
      o = compose(ExtAffine::translation(Weight(n, 1, std::vector<Int>(static_cast<std::size_t>(n), sh))), o);
      parts.push_back(o);
    }
    ExtAffine omega = from_components(parts);
    auto ball = coxeter_ball(omega, max_len);
    std::vector<ExtAffine> xs;
    for (const auto &[x, d] : ball) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    for (const auto &x : xs)
      if (change_presentation(a, x) == b) return x;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- special alcoves

auto to_string(SpecialCase c) -> const char * { return c == SpecialCase::A ? "A" : "B"; }

auto classify_case(const PermTuple &w, const PermTuple &u, int j0, int i0, int k0) -> SpecialCase {
  int n = w.n();
  if (u.n() != n || u.f() != w.f()) throw std::invalid_argument("dimension mismatch");
  for (int j = 0; j < w.f(); ++j) {
    Perm expect = j == j0 ? perm_compose(transposition(n, i0, k0), u[j]) : u[j];
    if (w[j] != expect) throw std::invalid_argument("w is not s_alpha u at j0");
  }
  Weight d = restricted_lift(w).nu - restricted_lift(u).nu;
  if (x0_part(d, j0)) return SpecialCase::A;
  d(j0, i0) -= 1;
  d(j0, k0) += 1;
  if (x0_part(d, j0)) return SpecialCase::B;
  throw std::domain_error("pair is in neither case (a) nor case (b)");
}

namespace {

auto special_at(const ExtAffine &wd, int j0) -> std::optional<SpecialityCertificate> {
  int n = wd.n();
  Root alpha{0, n - 1};
  PermTuple u = wd.w;
  u[j0] = perm_compose(transposition(n, 0, n - 1), wd.w[j0]);
  ExtAffine ud = restricted_lift(u);
  if (length(wd) != length(ud) + 1) return std::nullopt;
  if (!up_arrow_leq(ud, wd)) return std::nullopt;
  SpecialityCertificate c;
  c.j0 = j0;
  c.alpha = alpha;
  c.w_diamond = wd;
  c.u_diamond = ud;
  c.kase = classify_case(wd.w, u, j0, 0, n - 1);
  c.bruhat_leq = bruhat_leq(ud, restricted_lift(wd.w));
  return c;
}

} // namespace

auto special_certificates(const ExtAffine &w_diamond) -> std::vector<SpecialityCertificate> {
  if (!is_restricted(w_diamond)) throw std::invalid_argument("is_special: input is not restricted");
  std::vector<SpecialityCertificate> out;
  if (w_diamond.n() < 2) return out;
  for (int j0 = 0; j0 < w_diamond.f(); ++j0)
    if (auto c = special_at(w_diamond, j0)) out.push_back(*c);
  return out;
}

auto is_special(const ExtAffine &w_diamond) -> std::optional<SpecialityCertificate> {
  auto all = special_certificates(w_diamond);
  if (all.empty()) return std::nullopt;
  return all.front();
}

auto closed_special_criterion(const Perm &w0, bool use_inverse) -> bool {
  Perm w = use_inverse ? perm_inverse(w0) : w0;
  int n = static_cast<int>(w.size());
  if (n < 3) return false;
  int a = w[0], b = w[static_cast<std::size_t>(n - 1)];
  if (b == a + 1) return true;
  return a == n - 1 && b == 0;
}

auto enumerate_special(int n, int f) -> SpecialCount {
  if (n < 2 || f < 1) throw std::invalid_argument("enumerate_special: need n >= 2, f >= 1");
  auto perms = all_perms(n);
  // Lengths and the up-arrow relation are computed embedding by embedding,
  // and u agrees with w away from j0, so one table per permutation suffices.
  std::vector<bool> comp_special(perms.size());
  for (std::size_t t = 0; t < perms.size(); ++t)
    comp_special[t] = special_at(restricted_lift(PermTuple({perms[t]})), 0).has_value();
  std::map<Perm, std::size_t> index;
  for (std::size_t t = 0; t < perms.size(); ++t) index[perms[t]] = t;

  SpecialCount out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(f), 0);
  while (true) {
    bool special = false;
    for (auto t : idx) special = special || comp_special[t];
    ++out.total_tuples;
    out.special_tuples += special;
    // Class representative: lexicographically least tuple in the S^J coset.
    bool is_rep = true;
    for (std::size_t j = 0; j < idx.size() && is_rep; ++j)
      for (int k = 1; k < n; ++k) {
        auto moved = index[perm_compose(perms[idx[j]], cycle_power(n, k))];
        if (moved < idx[j]) {
          is_rep = false;
          break;
        }
      }
    if (is_rep) {
      ++out.total_classes;
      out.special_classes += special;
    }
    std::size_t j = idx.size();
    bool done = true;
    while (j > 0) {
      --j;
      if (++idx[j] < perms.size()) {
        done = false;
        break;
      }
      idx[j] = 0;
    }
    if (done) break;
  }
  out.proportion = Rational(static_cast<long long>(out.special_classes)) /
                   Rational(static_cast<long long>(out.total_classes));
  return out;
}

auto normalize_to_case_a(const PermTuple &w, const PermTuple &u, int j0, const Weight &omega, Int p)
    -> CaseNormalization {
  int n = w.n(), f = w.f();
  SerreWeightLAP lap{restricted_lift(w), omega, p};
  Weight lam = presentation_raw_weight(lap);
  auto finish = [&](const PermTuple &delta, bool cycle_power) {
    PermTuple w2 = w * delta, u2 = u * delta;
    ExtAffine x = inverse(pi_twist(restricted_lift(w2), -1));
    Weight om2 = dot_action(x, lam, p) + Weight::eta(n, f);
    return CaseNormalization{w2, u2, delta, om2, cycle_power};
  };
  if (classify_case(w, u, j0, 0, n - 1) == SpecialCase::A) return finish(PermTuple(n, f), true);
  int k = n - perm_inverse(w[j0])[0]; // 0-based form of n - w^{-1}(i0) + 1
  PermTuple delta = PermTuple::single(n, f, j0, cycle_power(n, k));
  if (classify_case(w * delta, u * delta, j0, 0, n - 1) == SpecialCase::A) return finish(delta, true);
  for (int t = 0; t < n; ++t) {
    PermTuple d = PermTuple::single(n, f, j0, cycle_power(n, t));
    try {
      if (classify_case(w * d, u * d, j0, 0, n - 1) == SpecialCase::A) return finish(d, false);
    } catch (const std::domain_error &) {
    }
  }
  throw std::domain_error("no element of S moves the pair into case (a)");
}

// ---------------------------------------------------------------- setup

auto special_pairs(int n, int f) -> std::vector<SpecialPair> {
  std::vector<SpecialPair> out;
  auto perms = all_perms(n);
  std::vector<std::size_t> idx(static_cast<std::size_t>(f), 0);
  while (true) {
    std::vector<Perm> ws;
    for (auto t : idx) ws.push_back(perms[t]);
    PermTuple w(ws);
    for (const auto &c : special_certificates(restricted_lift(w))) out.push_back({w, c.u_diamond.w, c.j0});
    std::size_t j = idx.size();
    while (true) {
      if (j == 0) return out;
      --j;
      if (++idx[j] < perms.size()) break;
      idx[j] = 0;
    }
  }
}

auto deep_omega(int n, int f) -> Weight {
  Weight om(n, f);
  for (int j = 0; j < f; ++j)
    for (int i = 0; i < n; ++i) om(j, i) = static_cast<Int>(3 * n - 3) * (n - 1 - i);
  return om;
}

auto build_setup(const PermTuple &w, const PermTuple &u, int j0, const Weight &omega, Int p) -> SetupData {
  int n = w.n(), f = w.f();
  SetupData s;
  s.j0 = j0;
  s.alpha = {0, n - 1};
  s.kase = classify_case(w, u, j0, 0, n - 1);
  if (!in_base_alcove(omega, p)) throw std::invalid_argument("omega - eta is not in the base p-alcove");
  if (auto bad = depth_violation(omega, 3 * n - 4, p)) {
    std::ostringstream os;
    os << "sigma is not " << 3 * n - 4 << "-deep: <omega, alpha^vee> = " << omega.pair(bad->first, bad->second)
       << " for alpha = e_" << bad->second.i + 1 << " - e_" << bad->second.k + 1 << " at embedding "
       << bad->first << ", need " << 3 * n - 4 << " < . < " << p - (3 * n - 4);
    throw depth_error(os.str());
  }
  Weight eta = Weight::eta(n, f);
  ExtAffine wd = restricted_lift(w), ud = restricted_lift(u);
  s.sigma = {wd, omega, p};
  s.sigma_prime = {ud, omega, p};
  PermTuple pw = w.pi(-1).inverse(), pu = u.pi(-1).inverse();
  s.tau = {pw * w, omega + pw.act(wd.nu - eta) - eta, p};
  s.rhobar = {pw * u, omega + pw.act(ud.nu) - eta, p};
  s.tau_prime = {pu * u, omega + pu.act(ud.nu - eta) - eta, p};
  s.rhobar_prime = {pu * u, omega + pu.act(ud.nu) - eta, p};

  s.shape = relative_shape(s.rhobar, s.tau);
  s.shape_prime = relative_shape(s.rhobar_prime, s.tau_prime);
  s.ztilde = star(s.shape);
  s.ztilde_prime = star(s.shape_prime);
  ExtAffine formula = compose(ExtAffine::permutation(w.inverse()),
                              compose(ExtAffine::translation(eta + ud.nu - wd.nu), ExtAffine::permutation(u)));
  s.shape_formula = s.shape == formula;
  s.shape_prime_formula = s.shape_prime == ExtAffine::translation(u.inverse().act(eta));

  s.tau_generic = is_generic(s.tau, 2 * n - 3);
  s.tau_prime_generic = is_generic(s.tau_prime, 2 * n - 3);
  Weight lam = presentation_raw_weight(s.sigma);
  s.presentation_check = change_presentation(s.tau, pi_twist(wd, -1)) == TameTypePresentation{PermTuple(n, f), lam - eta, p};

  Weight eta1 = Weight::eta(n, 1);
  for (int j = 0; j < f; ++j) s.shape_classes.push_back(classify_colength(s.shape.component(j), eta1));
  s.shape_prime_class = classify_colength(s.shape_prime, eta);
  return s;
}

// ---------------------------------------------------------------- finite data

auto levi_restriction(const Weight &lam, int i) -> LeviDatum {
  if (i < 1 || i > lam.n() - 1) throw std::invalid_argument("levi_restriction: index out of range");
  return {{i, lam.n() - i}, lam};
}

auto gl2_f2_jh(const Weight &lam, Int p) -> Gl2Constituents {
  if (lam.n() != 2 || lam.f() != 2) throw std::invalid_argument("gl2_f2_jh: need n = 2, f = 2");
  if (depth_violation(lam + Weight::eta(2, 2), 2, p)) throw std::invalid_argument("gl2_f2_jh: weight is not 2-deep");
  Perm s{1, 0};
  auto diamond = [&](const PermTuple &x, bool dot) {
    Weight moved = dot ? dot_action(ExtAffine::permutation(x), lam, p) : x.act(lam);
    Weight r = canonical_weight(moved + p_minus_pi(restricted_lift(x).nu, p), p);
    if (!is_p_restricted(r, p)) throw std::logic_error("gl2_f2_jh: constituent is not p-restricted");
    return r;
  };
  Gl2Constituents c;
  c.lambda = canonical_weight(lam, p);
  c.s0 = diamond(PermTuple::single(2, 2, 0, s), true);
  c.s1 = diamond(PermTuple::single(2, 2, 1, s), true);
  c.s0s1 = diamond(PermTuple({s, s}), false);
  c.socle = {c.s0, c.s1};
  c.cosocle = c.s0s1;
  return c;
}

auto ps_parameters(const Fq &field, const HeckeCharacter &chi) -> std::vector<Fq::Elem> {
  std::vector<Fq::Elem> out;
  for (std::size_t i = 0; i < chi.values.size(); ++i) {
    Fq::Elem den = i == 0 ? field.one() : chi.values[i - 1];
    if (den == 0) {
      std::ostringstream os;
      os << "non-ordinary character: chi(T_" << i << ") = 0";
      throw std::domain_error(os.str());
    }
    out.push_back(field.div(chi.values[i], den));
  }
  return out;
}

} // namespace alcove
