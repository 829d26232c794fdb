#include "alcove/charts.hpp"

#include <algorithm>
#include <sstream>

namespace alcove {

namespace {

using Elem = Fq::Elem;

auto name(Root b) -> std::string {
  std::ostringstream os;
  os << "alpha_{" << b.i + 1 << b.k + 1 << "}";
  return os.str();
}

auto sz(int i) -> std::size_t { return static_cast<std::size_t>(i); }

auto signed_elem(const Fq &f, Elem x, int sign) -> Elem { return sign >= 0 ? x : f.neg(x); }

auto parity_sign(Int e) -> int { return mod_floor(e, 2) == 0 ? 1 : -1; }

auto lookup(const std::map<Root, Elem> &m, Root b) -> Elem {
  auto it = m.find(b);
  return it == m.end() ? 0 : it->second;
}

auto product(const Fq &f, const std::vector<Root> &tuple, const std::map<Root, Elem> &vals) -> Elem {
  Elem r = 1;
  for (Root b : tuple) r = f.mul(r, lookup(vals, b));
  return r;
}

// Leibniz expansion over F_q.
auto field_det(const Fq &f, const std::vector<std::vector<Elem>> &m) -> Elem {
  int k = static_cast<int>(m.size());
  if (k == 0) return 1;
  Elem total = 0;
  for (const Perm &s : all_perms(k)) {
    Elem term = 1;
    for (int r = 0; r < k && term != 0; ++r) term = f.mul(term, m[sz(r)][sz(s[sz(r)])]);
    total = inversions(s) % 2 == 0 ? f.add(total, term) : f.sub(total, term);
  }
  return total;
}

auto unipotent_entry(const std::map<Root, Elem> &a, int r, int c) -> Elem {
  if (r == c) return 1;
  if (r < c) return 0;
  return lookup(a, Root{r, c});
}

auto submatrix_det(const Fq &f, const std::map<Root, Elem> &a, const std::vector<int> &rows,
                   const std::vector<int> &cols) -> Elem {
  std::vector<std::vector<Elem>> m(rows.size(), std::vector<Elem>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m[r][c] = unipotent_entry(a, rows[r], cols[c]);
  return field_det(f, m);
}

auto range(int lo, int hi) -> std::vector<int> {
  std::vector<int> r;
  for (int x = lo; x <= hi; ++x) r.push_back(x);
  return r;
}

// det(M'_{i-1}): rows k0-i+2..k0, columns k0-i+1..k0-1.
auto det_M_prime(const Fq &f, const std::map<Root, Elem> &a, int k0, int i) -> Elem {
  return submatrix_det(f, a, range(k0 - i + 2, k0), range(k0 - i + 1, k0 - 1));
}

// sum over P_beta of (-1)^{span - s} prod a
auto signed_path_sum(const Fq &f, const std::map<Root, Elem> &a, Root beta) -> Elem {
  int span = beta.i - beta.k;
  Elem total = 0;
  for (const auto &tuple : path_sets(beta, perm_identity(beta.i + 1)).P)
    total = f.add(total, signed_elem(f, product(f, tuple, a), parity_sign(span - static_cast<Int>(tuple.size()))));
  return total;
}

auto pair_a(const ChartData &d, Root beta) -> Int {
  Perm wi = perm_inverse(d.w);
  // <a_tau, w^{-1}(beta)> with w^{-1}(e_i - e_k) = e_{w^{-1} i} - e_{w^{-1} k}
  return d.a_tau[sz(wi[sz(beta.i)])] - d.a_tau[sz(wi[sz(beta.k)])];
}

auto root_bracket(const ChartData &d, Root beta) -> Int {
  const auto &rd = d.roots.at(beta);
  return mod_floor(rd.m + rd.kappa - pair_a(d, beta), d.p);
}

auto act_vec(const Perm &w, const std::vector<Int> &x) -> std::vector<Int> {
  std::vector<Int> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[sz(w[i])] = x[i];
  return r;
}

} // namespace

auto delta_pos(const Perm &w, Root beta) -> int {
  Perm wi = perm_inverse(w);
  return wi[sz(beta.i)] < wi[sz(beta.k)] ? 1 : 0;
}

auto path_sets(Root beta, const Perm &w) -> PathSets {
  if (beta.positive()) throw std::invalid_argument("path_sets: " + name(beta) + " is not a negative root");
  int k = beta.i, i = beta.k;
  PathSets out;
  out.beta = beta;
  for (int t = i + 1; t < k; ++t) out.D.emplace_back(Root{t, i}, Root{k, t});
  int inner = k - i - 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inner); ++mask) {
    std::vector<Root> tuple;
    int prev = i;
    for (int b = 0; b < inner; ++b)
      if ((mask >> b) & 1U) {
        tuple.push_back(Root{i + 1 + b, prev});
        prev = i + 1 + b;
      }
    tuple.push_back(Root{k, prev});
    out.P.push_back(tuple);
  }
  int target = delta_pos(w, beta);
  for (const auto &tuple : out.P) {
    int s = 0;
    for (Root b : tuple) s += delta_pos(w, b);
    if (s == target) out.I.push_back(tuple);
  }
  return out;
}

auto chart_data(const ExtAffine &w_diamond, const ExtAffine &u_diamond, const std::vector<Int> &a_tau, Int p)
    -> ChartData {
  if (w_diamond.f() != 1 || u_diamond.f() != 1) throw std::invalid_argument("chart_data: expects single components");
  ChartData d;
  d.n = w_diamond.n();
  d.i0 = 0;
  d.k0 = d.n - 1;
  d.p = p;
  d.w = w_diamond.w[0];
  d.u = u_diamond.w[0];
  d.w_diamond = w_diamond;
  d.u_diamond = u_diamond;
  if (d.w != perm_compose(transposition(d.n, d.i0, d.k0), d.u))
    throw std::invalid_argument("chart_data: w is not s_alpha u");
  d.nu_u = u_diamond.nu.row(0);
  d.nu_w = w_diamond.nu.row(0);
  if (d.nu_u != d.nu_w) throw std::invalid_argument("chart_data: case (b) pair, normalize to case (a) first");
  d.a_tau.clear();
  for (Int x : a_tau) d.a_tau.push_back(mod_floor(x, p));
  for (int i = 0; i < d.n; ++i) d.eta.push_back(d.n - 1 - i);
  std::vector<Int> wa = act_vec(d.w, d.a_tau);
  for (int i = 0; i < d.n; ++i) d.D.push_back(mod_floor(d.nu_u[sz(i)] + d.eta[sz(i)] - d.nu_w[sz(i)] + wa[sz(i)], p));
  Root alpha{d.i0, d.k0};
  d.m_alpha = m_value(u_diamond, 0, alpha);
  Perm ui = perm_inverse(d.u), wi = perm_inverse(d.w);
  auto pos = [](const Perm &inv, Root b) { return inv[sz(b.i)] < inv[sz(b.k)]; };
  Perm sa = transposition(d.n, d.i0, d.k0);
  for (Root beta : negative_roots(d.n)) {
    RootData rd;
    rd.degree = m_value(u_diamond, 0, -beta);
    int du = pos(ui, beta) ? 1 : 0;
    rd.bad = !pos(ui, beta) && pos(wi, beta);
    Root sb = act(sa, beta);
    bool column_case = beta.k == d.i0 && beta.i > d.k0 && !sb.positive() && !pos(ui, sb) && pos(wi, sb);
    if (rd.bad) rd.sigma = 0;
    else if (column_case) rd.sigma = -1;
    else rd.sigma = -1;
    rd.kappa = -du - rd.sigma;
    rd.m_prime = rd.sigma + (beta.i - beta.k);
    rd.m = rd.m_prime;
    d.roots[beta] = rd;
  }
  return d;
}

auto chart_data(const SetupData &setup) -> ChartData {
  int j0 = setup.j0;
  const TameTypePresentation &tau = setup.tau;
  int n = tau.mu.n();
  std::vector<Int> a(sz(n));
  for (int i = 0; i < n; ++i) a[sz(i)] = -(tau.mu(j0, i) + (n - 1 - i));
  ChartData d = chart_data(setup.sigma.wtilde.component(j0), setup.sigma_prime.wtilde.component(j0), a, setup.sigma.p);
  d.j0 = j0;
  return d;
}

// ---------------------------------------------------------------- points

auto ChartPoint::c(Root beta) const -> Elem {
  auto it = coeffs.find(beta);
  return it == coeffs.end() || it->second.empty() ? 0 : it->second.back();
}

auto ChartPoint::a(Root beta) const -> Elem {
  auto it = coeffs.find(beta);
  return it == coeffs.end() || it->second.empty() ? 0 : it->second.front();
}

auto ChartPoint::c_values() const -> std::map<Root, Elem> {
  std::map<Root, Elem> r;
  for (const auto &[b, cs] : coeffs) r[b] = c(b);
  return r;
}

auto ChartPoint::a_values() const -> std::map<Root, Elem> {
  std::map<Root, Elem> r;
  for (const auto &[b, cs] : coeffs) r[b] = a(b);
  return r;
}

// ---------------------------------------------------------------- minors

auto det_M(const Fq &field, const std::map<Root, Elem> &a, int i0, int k0, int i) -> Elem {
  std::vector<int> cols{i0};
  for (int c = k0 - i + 1; c <= k0 - 1; ++c) cols.push_back(c);
  return submatrix_det(field, a, range(k0 - i + 1, k0), cols);
}

auto minor_identities(const Fq &field, const std::map<Root, Elem> &a, int i0, int k0, int i) -> MinorIdentity {
  if (i < 2 || i > k0 - i0) throw std::invalid_argument("minor_identities: i out of range");
  MinorIdentity out;
  out.direct = det_M(field, a, i0, k0, i);
  out.x_direct = det_M_prime(field, a, k0, i);
  out.recursive = field.sub(field.mul(lookup(a, Root{k0 - i + 1, i0}), out.x_direct), det_M(field, a, i0, k0, i - 1));
  out.x_path = signed_path_sum(field, a, Root{k0, k0 - i + 1});
  if (i == k0 - i0) {
    out.path_form = signed_path_sum(field, a, Root{k0, i0});
  } else {
    Elem s = lookup(a, Root{k0, i0});
    for (int ip = 2; ip <= i; ++ip) {
      Elem x = signed_path_sum(field, a, Root{k0, k0 - ip + 1});
      s = field.add(s, signed_elem(field, field.mul(lookup(a, Root{k0 - ip + 1, i0}), x), parity_sign(ip - 1)));
    }
    out.path_form = signed_elem(field, s, parity_sign(i - 1));
  }
  if (out.direct == out.path_form) out.epsilon = 1;
  else if (out.direct == field.neg(out.path_form)) out.epsilon = -1;
  else out.epsilon = 0;
  if (i == 2)
    out.plus_x_i2 = field.add(lookup(a, Root{k0, i0}),
                                 field.mul(lookup(a, Root{k0 - 1, i0}), signed_path_sum(field, a, Root{k0, k0 - 1})));
  return out;
}

// ---------------------------------------------------------------- Z_{-alpha}

auto z_leading_coefficient(const ChartData &d) -> Int {
  Root ma{d.k0, d.i0};
  // -w^{-1}(alpha) = w^{-1}(-alpha)
  return mod_floor(d.roots.at(ma).m - pair_a(d, ma), d.p);
}

auto z_pair_coefficient(const ChartData &d, Root beta2) -> Int { return root_bracket(d, beta2); }

auto z_polynomial(const Fq &field, const ChartData &d) -> SparsePoly {
  SparsePoly poly;
  auto add = [&](Monomial m, Elem c) {
    std::sort(m.begin(), m.end());
    Elem &slot = poly[m];
    slot = field.add(slot, c);
    if (slot == 0) poly.erase(m);
  };
  Int c0 = z_leading_coefficient(d);
  if (c0 == 0) throw std::domain_error("a_tau is not generic: the coefficient of c_{-alpha} vanishes");
  add({Root{d.k0, d.i0}}, field.from_int(c0));
  for (int t = d.i0 + 1; t < d.k0; ++t) {
    Root b1{t, d.i0}, b2{d.k0, t};
    int i = d.k0 - t + 1;
    Int cb = z_pair_coefficient(d, b2);
    if (cb == 0) throw std::domain_error("a_tau is not generic: the coefficient of c_" + name(b2) + " vanishes");
    for (const auto &tuple : path_sets(b1, d.w).I) {
      Monomial m = tuple;
      m.push_back(b2);
      add(m, signed_elem(field, field.from_int(cb), parity_sign(i - 1 - static_cast<Int>(tuple.size()))));
    }
  }
  return poly;
}

auto evaluate(const Fq &field, const SparsePoly &poly, const std::map<Root, Elem> &values) -> Elem {
  Elem total = 0;
  for (const auto &[m, c] : poly) total = field.add(total, field.mul(c, product(field, m, values)));
  return total;
}

auto z_minus_alpha(const Fq &field, const ChartData &d, const std::map<Root, Elem> &c) -> Elem {
  Int c0 = z_leading_coefficient(d);
  if (c0 == 0) throw std::domain_error("a_tau is not generic: the coefficient of c_{-alpha} vanishes");
  Elem total = field.mul(field.from_int(c0), lookup(c, Root{d.k0, d.i0}));
  for (int t = d.i0 + 1; t < d.k0; ++t) {
    Root b1{t, d.i0}, b2{d.k0, t};
    int i = d.k0 - t + 1;
    Int cb = z_pair_coefficient(d, b2);
    if (cb == 0) throw std::domain_error("a_tau is not generic: the coefficient of c_" + name(b2) + " vanishes");
    Elem inner = 0;
    for (const auto &tuple : path_sets(b1, d.w).I)
      inner = field.add(inner, signed_elem(field, product(field, tuple, c),
                                           parity_sign(i - 1 - static_cast<Int>(tuple.size()))));
    total = field.add(total, field.mul(field.mul(field.from_int(cb), lookup(c, b2)), inner));
  }
  return total;
}

auto multilinear_coefficient(const Fq &field, const Monomial &s,
                             const std::function<Elem(const std::map<Root, Elem> &)> &fn) -> Elem {
  Elem total = 0;
  std::size_t k = s.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::map<Root, Elem> vals;
    int size = 0;
    for (std::size_t b = 0; b < k; ++b)
      if ((mask >> b) & 1U) {
        vals[s[b]] = 1;
        ++size;
      }
    total = field.add(total, signed_elem(field, fn(vals), parity_sign(static_cast<Int>(k) - size)));
  }
  return total;
}

auto simple_chain(const ChartData &d) -> Monomial {
  Monomial m;
  for (int t = d.i0; t < d.k0; ++t) m.push_back(Root{t + 1, t});
  std::sort(m.begin(), m.end());
  return m;
}

auto y_value(const Fq &field, const ChartData &d, const std::map<Root, Elem> &a, int t) -> Elem {
  Root b2{d.k0, t};
  Elem c0inv = field.inv(field.from_int(z_leading_coefficient(d)));
  Elem total = 0;
  for (const auto &tuple : path_sets(b2, d.w).P) {
    Elem coef = field.mul(field.from_int(root_bracket(d, tuple.back())), c0inv);
    Elem term = field.mul(coef, product(field, tuple, a));
    total = field.add(total, signed_elem(field, term, parity_sign(t + d.k0 - static_cast<Int>(tuple.size()))));
  }
  return total;
}

// ---------------------------------------------------------------- partition lemma

auto partition_lemma_check(const ExtAffine &u_diamond, const ExtAffine &w_diamond, int j0) -> PartitionResult {
  PartitionResult r;
  int n = w_diamond.n();
  if (j0 < 0 || j0 >= w_diamond.f() || u_diamond.n() != n || u_diamond.f() != w_diamond.f()) {
    r.precondition_message = "embedding or rank mismatch";
    return r;
  }
  if (!(w_diamond == restricted_lift(w_diamond.w)) || !(u_diamond == restricted_lift(u_diamond.w))) {
    r.precondition_message = "w^diamond or u^diamond is not the restricted lift of its permutation";
    return r;
  }
  bool certified = false;
  for (const auto &cert : special_certificates(w_diamond))
    if (cert.j0 == j0 && cert.u_diamond == u_diamond) certified = true;
  if (!certified) {
    r.precondition_message = "no speciality certificate for (w, u) at this embedding";
    return r;
  }
  r.precondition = true;
  int i0 = 0, k0 = n - 1;
  const Perm &w = w_diamond.w[j0];
  Int m = m_value(u_diamond, j0, Root{i0, k0});
  if (m > 0) {
    r.kase = 1;
    int lhs = 0;
    for (int t = 1; t <= k0 - i0 - 1; ++t) lhs += delta_pos(w, Root{i0 + t, i0 + t - 1});
    r.holds = lhs > delta_pos(w, Root{k0 - 1, i0});
  } else {
    r.kase = 2;
    r.holds = true;
    for (int t = i0 + 1; t < k0; ++t) {
      Root b1{t, i0};
      int target = delta_pos(w, b1);
      for (const auto &tuple : path_sets(b1, w).P) {
        int s = 0;
        for (Root b : tuple) s += delta_pos(w, b);
        if (s != target) r.holds = false;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- monodromy

auto nabla_solve(const Fq &field, const ChartData &d, const std::map<Root, Elem> &top) -> ChartPoint {
  int n = d.n;
  ChartPoint pt;
  pt.field = &field;
  pt.data = d;
  Int maxdeg = 0;
  for (const auto &[b, rd] : d.roots) {
    if (rd.degree < 0) throw std::logic_error("negative degree bound at " + name(b));
    maxdeg = std::max(maxdeg, rd.degree);
    std::vector<Elem> cs(sz(static_cast<int>(rd.degree)) + 1, 0);
    cs.back() = lookup(top, b);
    pt.coeffs[b] = cs;
  }
  Int prec = 8 * n * (2 + maxdeg);
  auto e = [&](int k, int i) { return d.nu_u[sz(k)] - d.nu_u[sz(i)]; };
  auto entry = [&](int k, int i) { return LaurentSeries::from_coeffs(&field, e(k, i), pt.coeffs[Root{k, i}], prec); };
  Perm ui = perm_inverse(d.u);
  for (int span = 1; span < n; ++span) {
    LoopMatrix l(&field, n, prec);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < k; ++i)
        if (k - i < span) l(k, i) = entry(k, i);
    LoopMatrix neg_l(&field, n, prec);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < k; ++i) neg_l(k, i) = -l(k, i);
    LoopMatrix xinv = LoopMatrix::identity(&field, n, prec), power = LoopMatrix::identity(&field, n, prec);
    for (int r = 1; r < n; ++r) {
      power = power * neg_l;
      xinv = xinv + power;
    }
    for (int i = 0; i + span < n; ++i) {
      int k = i + span;
      Root beta{k, i};
      LaurentSeries s(&field, prec);
      for (int m = i + 1; m < k; ++m) {
        LaurentSeries lkm = entry(k, m);
        Elem dd = field.from_int(d.D[sz(m)] - d.D[sz(k)]);
        s = s + (lkm.derivative().shift(1) + lkm.scale(dd)) * xinv(m, i);
      }
      Int tmax = ui[sz(k)] > ui[sz(i)] ? -1 : -2;
      Int ee = e(k, i), deg = d.roots.at(beta).degree;
      if (ee + deg != tmax + 1) throw std::logic_error("degree bound does not meet the monodromy threshold at " + name(beta));
      Int lo = std::min(s.val_or_prec(), ee);
      for (Int t = lo; t <= tmax; ++t) {
        Elem known = s.coeff(t);
        if (t < ee) {
          if (known != 0) throw std::domain_error("monodromy equations inconsistent at " + name(beta));
          continue;
        }
        Int br = mod_floor(t + d.D[sz(i)] - d.D[sz(k)], d.p);
        if (br == 0) throw std::domain_error("a_tau is not generic: monodromy bracket vanishes at " + name(beta));
        pt.coeffs[beta][sz(static_cast<int>(t - ee))] = field.neg(field.div(known, field.from_int(br)));
      }
    }
  }
  return pt;
}

auto chart_matrix(const ChartPoint &point, Int prec) -> LoopMatrix {
  const Fq *f = point.field;
  int n = point.data.n;
  LoopMatrix a = LoopMatrix::identity(f, n, prec);
  for (const auto &[b, cs] : point.coeffs) a(b.i, b.k) = LaurentSeries::from_coeffs(f, 0, cs, prec);
  return a;
}

auto build_Vc_matrix(const ChartPoint &point, Int prec) -> LoopMatrix {
  const ChartData &d = point.data;
  for (const auto &[b, cs] : point.coeffs) {
    auto it = d.roots.find(b);
    if (it == d.roots.end()) throw std::invalid_argument("chart point has an entry off the negative roots");
    if (static_cast<Int>(cs.size()) > it->second.degree + 1) {
      bool nonzero_above = false;
      for (std::size_t s = sz(static_cast<int>(it->second.degree)) + 1; s < cs.size(); ++s)
        if (cs[s] != 0) nonzero_above = true;
      if (nonzero_above)
        throw std::domain_error("degree bound violated at " + name(b) + ": bound " + std::to_string(it->second.degree));
    }
  }
  const Fq *f = point.field;
  Perm ui = perm_inverse(d.u);
  std::vector<Int> right(sz(d.n));
  for (int i = 0; i < d.n; ++i) right[sz(i)] = d.eta[sz(i)] - d.nu_w[sz(i)];
  LoopMatrix left = LoopMatrix::monomial(f, act_vec(ui, d.nu_u), ui, prec);
  return left * chart_matrix(point, prec) * LoopMatrix::monomial(f, right, d.w, prec);
}

auto chart_nabla_ok(const ChartPoint &point, Int prec) -> bool {
  std::vector<Elem> a;
  for (Int x : point.data.a_tau) a.push_back(point.field->from_int(x));
  return nabla_check(build_Vc_matrix(point, prec), a);
}

// ---------------------------------------------------------------- f_i

auto FValues::is_ordinary() const -> bool {
  return std::all_of(f.begin(), f.end(), [](const PAdicValue &x) { return x.valuation == Int{0}; });
}

auto FValues::is_supersingular() const -> bool {
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    if (f[i].valuation && *f[i].valuation <= 0) return false;
  return true;
}

auto frobenius_minors_f(const std::vector<RationalPMatrix> &charts, const PermTuple &w) -> FValues {
  if (charts.empty() || static_cast<int>(charts.size()) != w.f())
    throw std::invalid_argument("frobenius_minors_f: one chart per embedding required");
  int n = charts[0].n, f = static_cast<int>(charts.size());
  Int p = charts[0].p;
  QMatrix prod = q_identity(n);
  for (int j = f - 1; j >= 0; --j) {
    QMatrix abar = charts[sz(j)].mod_v();
    QMatrix conj(sz(n), std::vector<Rational>(sz(n), Rational(0)));
    for (int i = 0; i < n; ++i) conj[sz(w[j][sz(i)])][sz(w[j][sz(i)])] = abar[sz(i)][sz(i)];
    prod = q_mul(prod, conj);
  }
  if (q_det(prod) == 0) throw std::domain_error("frobenius_minors_f: singular product");
  QMatrix inv = q_inverse(prod);
  FValues out;
  for (int i = 1; i <= n; ++i) {
    Int e = static_cast<Int>(f) * i * (2 * n - i - 1) / 2;
    out.f.push_back(padic_value(rational_pow(Rational(p), e) * q_leading_minor(inv, i), p));
  }
  return out;
}

auto random_extremal_chart(int n, int f, Int p, Rng &rng) -> std::pair<std::vector<RationalPMatrix>, PermTuple> {
  auto perms = all_perms(n);
  std::vector<Perm> us;
  std::vector<RationalPMatrix> charts;
  for (int j = 0; j < f; ++j) {
    Perm u = perms[rng.below(perms.size())];
    us.push_back(u);
    RationalPMatrix dm = RationalPMatrix::identity(n, p), v = RationalPMatrix::identity(n, p);
    for (int i = 0; i < n; ++i) {
      Int unit = rng.range(1, p - 1) * (rng.below(2) == 0 ? 1 : -1);
      dm(i, i).c = {Rational(unit)};
      for (int c = 0; c < i; ++c) {
        QPoly q;
        for (int k = 0; k < 3; ++k) q.c.push_back(Rational(rng.range(-p, p)));
        v(i, c) = q;
      }
    }
    charts.push_back(RationalPMatrix::permutation(perm_inverse(u), p) * dm * RationalPMatrix::v_plus_p_eta(n, p) * v *
                     RationalPMatrix::permutation(u, p));
  }
  return {charts, PermTuple(us)};
}

// ---------------------------------------------------------------- witness

auto WitnessChecks::all() const -> bool {
  return c_zero && z_zero && a_minus_alpha_unit && schubert_membership && nabla && open_cell && independence &&
         std::all_of(minors_unit.begin(), minors_unit.end(), [](bool b) { return b; });
}

namespace {

auto integer_lift(const Fq &f, Elem x) -> Int {
  if (f.degree() == 1) return static_cast<Int>(x);
  return x == 0 ? 0 : 1;
}

// B = u_{-alpha}(c~) s_alpha (v+p)^eta V~ with V = Ad_{v^{-eta}} Ad_{v^{nu_u}} A, A_sigma = w^{-1} B w.
auto sigma_f_values(const ChartPoint &pt) -> FValues {
  const ChartData &d = pt.data;
  const Fq &f = *pt.field;
  int n = d.n;
  Int p = d.p;
  RationalPMatrix v = RationalPMatrix::identity(n, p);
  for (const auto &[b, cs] : pt.coeffs) {
    int k = b.i, i = b.k;
    Int shift = (k - i) + d.nu_u[sz(k)] - d.nu_u[sz(i)];
    if (shift < 0) throw std::logic_error("V has a negative power of v at " + name(b));
    QPoly q;
    q.c.assign(sz(static_cast<int>(shift)) + cs.size(), Rational(0));
    for (std::size_t s = 0; s < cs.size(); ++s) q.c[sz(static_cast<int>(shift)) + s] = Rational(integer_lift(f, cs[s]));
    v(k, i) = q;
  }
  QPoly &corner = v(d.k0, d.i0);
  if (corner.c.empty()) corner.c.push_back(Rational(0));
  if (corner.c[0] == 0) corner.c[0] = Rational(p);
  Rational dt = corner.c[0];
  Rational ct = rational_pow(Rational(p), n - 1) / dt;
  RationalPMatrix u = RationalPMatrix::identity(n, p);
  u(d.k0, d.i0).c = {ct};
  RationalPMatrix b = u * RationalPMatrix::permutation(transposition(n, d.i0, d.k0), p) *
                      RationalPMatrix::v_plus_p_eta(n, p) * v;
  RationalPMatrix a_sigma = RationalPMatrix::permutation(perm_inverse(d.w), p) * b * RationalPMatrix::permutation(d.w, p);
  return frobenius_minors_f({a_sigma}, PermTuple(std::vector<Perm>{d.w}));
}

auto try_field(const SetupData &setup, Int t, const std::shared_ptr<const Fq> &fp) -> std::optional<Witness> {
  const Fq &f = *fp;
  ChartData d = chart_data(setup);
  int n = d.n, i0 = d.i0, k0 = d.k0;
  Elem tt = f.from_int(t);
  if (tt == 0) throw std::invalid_argument("witness parameter t must be nonzero mod p");
  Root ma{k0, i0}, first{i0 + 1, i0};
  Int prec = 8 * n * (2 + d.m_alpha);

  // Free coordinates: simple roots when m > 0, every a-value except a_{-alpha} when m = 0.
  std::vector<Root> free;
  for (const auto &[b, rd] : d.roots) {
    if (b == first || b == ma) continue;
    if (d.m_alpha > 0 && b.i - b.k != 1) continue;
    free.push_back(b);
  }
  std::vector<Elem> vals(free.size(), 1);
  const std::size_t budget = 4096;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    std::map<Root, Elem> top;
    top[first] = tt;
    for (std::size_t k = 0; k < free.size(); ++k) top[free[k]] = vals[k];
    ChartPoint pt;
    if (d.m_alpha > 0) {
      pt = nabla_solve(f, d, top);
    } else {
      top[ma] = 0;
      Elem rest = z_minus_alpha(f, d, top);
      top[ma] = f.neg(f.div(rest, f.from_int(z_leading_coefficient(d))));
      pt = nabla_solve(f, d, top);
    }
    auto avals = pt.a_values();
    WitnessChecks ch;
    ch.a_minus_alpha_unit = avals[ma] != 0;
    bool minors_ok = ch.a_minus_alpha_unit;
    for (int i = 2; i <= k0 - i0; ++i) {
      bool unit = det_M(f, avals, i0, k0, i) != 0;
      ch.minors_unit.push_back(unit);
      minors_ok = minors_ok && unit;
    }
    if (d.m_alpha == 0 && k0 - i0 >= 2) {
      Root b1{k0 - 1, i0};
      auto with = [&](Elem x) {
        auto c = avals;
        c[ma] = 0;
        c[b1] = x;
        return z_minus_alpha(f, d, c);
      };
      Elem y = f.div(f.sub(with(1), with(0)), f.from_int(z_leading_coefficient(d)));
      Elem x = f.neg(lookup(avals, Root{k0, k0 - 1}));
      ch.independence = x != y;
    }
    if (minors_ok && ch.independence) {
      Witness wt;
      wt.field = fp;
      wt.q = f.q();
      wt.modulus = f.modulus_string();
      wt.branch_m = d.m_alpha;
      wt.point = pt;
      ch.z_zero = z_minus_alpha(f, d, pt.c_values()) == 0;
      LoopMatrix m = build_Vc_matrix(pt, prec);
      std::vector<Int> zeros(sz(n), 0);
      LoopMatrix conj = LoopMatrix::monomial(&f, zeros, d.w, prec) * m *
                        LoopMatrix::monomial(&f, zeros, perm_inverse(d.w), prec);
      ch.c_zero = !conj(n - 1, n - 1).valuation().has_value();
      try {
        auto red = open_locus_reduce(chart_matrix(pt, prec), d.u_diamond, i0, k0);
        ch.schubert_membership = true;
        Elem acc = 1;
        for (const auto &piv : red.pivots) {
          acc = f.mul(acc, f.inv(piv.coeff(0)));
          wt.chi_sigma_prime.values.push_back(acc);
        }
      } catch (const std::domain_error &) {
        ch.schubert_membership = false;
      }
      ch.nabla = chart_nabla_ok(pt, prec);
      auto cell = affine_bruhat_decompose(m);
      ExtAffine z = setup.ztilde.component(setup.j0);
      ch.open_cell = cell.nu == z.nu.row(0) && cell.w == z.w[0];
      wt.checks = ch;
      wt.f_sigma = sigma_f_values(pt);
      wt.point.field = fp.get();
      return wt;
    }
    // next candidate
    std::size_t k = 0;
    while (k < vals.size()) {
      vals[k] = vals[k] + 1 < static_cast<Elem>(f.q()) ? vals[k] + 1 : 1;
      if (vals[k] != 1) break;
      ++k;
    }
    if (k == vals.size() && !vals.empty()) break;
    if (vals.empty()) break;
  }
  return std::nullopt;
}

} // namespace

auto witness_triple_intersection(const SetupData &setup, Int t, const std::vector<int> &degrees) -> Witness {
  if (setup.sigma.wtilde.f() != 1) throw std::invalid_argument("witness_triple_intersection: f = 1 only");
  for (int k : degrees) {
    auto fp = std::make_shared<const Fq>(setup.sigma.p, k);
    if (auto w = try_field(setup, t, fp)) return *w;
  }
  throw std::domain_error("no witness point found in the configured fields; try a larger q");
}

} // namespace alcove
