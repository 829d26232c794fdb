#include "alcove/weyl.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace alcove {

namespace {

void require_same_shape(int n1, int f1, int n2, int f2) {
  if (n1 != n2 || f1 != f2) throw std::invalid_argument("dimension mismatch");
}

struct KeyHash {
  auto operator()(const std::vector<Int> &v) const -> std::size_t {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Int x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

} // namespace

// ---------------------------------------------------------------- permutations

auto perm_identity(int n) -> Perm {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

auto perm_compose(const Perm &a, const Perm &b) -> Perm {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

auto perm_inverse(const Perm &a) -> Perm {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return r;
}

auto perm_is_valid(const Perm &a) -> bool {
  std::vector<bool> seen(a.size(), false);
  for (int x : a) {
    if (x < 0 || x >= static_cast<int>(a.size()) || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

auto all_perms(int n) -> std::vector<Perm> {
  std::vector<Perm> out;
  Perm p = perm_identity(n);
  do out.push_back(p); while (std::next_permutation(p.begin(), p.end()));
  return out;
}

auto cycle_power(int n, int k) -> Perm {
  Perm p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = static_cast<int>(mod_floor(i + k, n));
  return p;
}

auto transposition(int n, int a, int b) -> Perm {
  Perm p = perm_identity(n);
  std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]);
  return p;
}

auto inversions(const Perm &a) -> int {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = i + 1; k < a.size(); ++k) c += a[i] > a[k];
  return c;
}

auto positive_roots(int n) -> std::vector<Root> {
  std::vector<Root> r;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) r.push_back({i, k});
  return r;
}

auto negative_roots(int n) -> std::vector<Root> {
  std::vector<Root> r;
  for (auto a : positive_roots(n)) r.push_back(-a);
  return r;
}

auto act(const Perm &w, Root a) -> Root {
  return {w[static_cast<std::size_t>(a.i)], w[static_cast<std::size_t>(a.k)]};
}

// ---------------------------------------------------------------- weights

Weight::Weight(int n, int f, std::vector<Int> entries) : n_(n), f_(f), e_(std::move(entries)) {
  if (static_cast<int>(e_.size()) != n * f) throw std::invalid_argument("weight size mismatch");
}

auto Weight::eta(int n, int f) -> Weight {
  Weight w(n, f);
  for (int j = 0; j < f; ++j)
    for (int i = 0; i < n; ++i) w(j, i) = n - 1 - i;
  return w;
}

auto Weight::from_rows(const std::vector<std::vector<Int>> &rows) -> Weight {
  if (rows.empty()) throw std::invalid_argument("empty weight");
  int n = static_cast<int>(rows[0].size());
  Weight w(n, static_cast<int>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (static_cast<int>(rows[j].size()) != n) throw std::invalid_argument("ragged weight");
    for (int i = 0; i < n; ++i) w(static_cast<int>(j), i) = rows[j][static_cast<std::size_t>(i)];
  }
  return w;
}

auto Weight::row(int j) const -> std::vector<Int> {
  auto b = e_.begin() + static_cast<std::ptrdiff_t>(j * n_);
  return {b, b + n_};
}

auto Weight::rows() const -> std::vector<std::vector<Int>> {
  std::vector<std::vector<Int>> r;
  for (int j = 0; j < f_; ++j) r.push_back(row(j));
  return r;
}

auto Weight::pi(int shift) const -> Weight {
  Weight r(n_, f_);
  for (int j = 0; j < f_; ++j)
    for (int i = 0; i < n_; ++i) r(j, i) = (*this)(static_cast<int>(mod_floor(j + shift, f_)), i);
  return r;
}

auto Weight::operator+(const Weight &o) const -> Weight {
  require_same_shape(n_, f_, o.n_, o.f_);
  Weight r(n_, f_);
  for (std::size_t t = 0; t < e_.size(); ++t) r.e_[t] = checked_add(e_[t], o.e_[t]);
  return r;
}

auto Weight::operator-(const Weight &o) const -> Weight {
  require_same_shape(n_, f_, o.n_, o.f_);
  Weight r(n_, f_);
  for (std::size_t t = 0; t < e_.size(); ++t) r.e_[t] = checked_sub(e_[t], o.e_[t]);
  return r;
}

auto Weight::operator-() const -> Weight { return Weight(n_, f_) - *this; }

auto Weight::operator*(Int c) const -> Weight {
  Weight r(n_, f_);
  for (std::size_t t = 0; t < e_.size(); ++t) r.e_[t] = checked_mul(e_[t], c);
  return r;
}

// ---------------------------------------------------------------- permutation tuples

PermTuple::PermTuple(int n, int f) : n_(n), p_(static_cast<std::size_t>(f), perm_identity(n)) {}

PermTuple::PermTuple(std::vector<Perm> perms) : p_(std::move(perms)) {
  if (p_.empty()) throw std::invalid_argument("empty permutation tuple");
  n_ = static_cast<int>(p_[0].size());
  for (const auto &p : p_)
    if (static_cast<int>(p.size()) != n_ || !perm_is_valid(p))
      throw std::invalid_argument("invalid permutation");
}

auto PermTuple::single(int n, int f, int j, Perm p) -> PermTuple {
  PermTuple t(n, f);
  t[j] = std::move(p);
  return t;
}

auto PermTuple::operator*(const PermTuple &o) const -> PermTuple {
  require_same_shape(n_, f(), o.n_, o.f());
  PermTuple r(n_, f());
  for (int j = 0; j < f(); ++j) r[j] = perm_compose((*this)[j], o[j]);
  return r;
}

auto PermTuple::inverse() const -> PermTuple {
  PermTuple r(n_, f());
  for (int j = 0; j < f(); ++j) r[j] = perm_inverse((*this)[j]);
  return r;
}

auto PermTuple::pi(int shift) const -> PermTuple {
  PermTuple r(n_, f());
  for (int j = 0; j < f(); ++j) r[j] = (*this)[static_cast<int>(mod_floor(j + shift, f()))];
  return r;
}

auto PermTuple::act(const Weight &x) const -> Weight {
  require_same_shape(n_, f(), x.n(), x.f());
  Weight r(x.n(), x.f());
  for (int j = 0; j < f(); ++j)
    for (int i = 0; i < n_; ++i) r(j, (*this)[j][static_cast<std::size_t>(i)]) = x(j, i);
  return r;
}

// ---------------------------------------------------------------- extended affine Weyl group

auto ExtAffine::identity(int n, int f) -> ExtAffine { return {Weight(n, f), PermTuple(n, f)}; }
auto ExtAffine::translation(const Weight &nu) -> ExtAffine { return {nu, PermTuple(nu.n(), nu.f())}; }
auto ExtAffine::permutation(const PermTuple &w) -> ExtAffine { return {Weight(w.n(), w.f()), w}; }

auto ExtAffine::component(int j) const -> ExtAffine {
  return {Weight(n(), 1, nu.row(j)), PermTuple(std::vector<Perm>{w[j]})};
}

auto from_components(const std::vector<ExtAffine> &parts) -> ExtAffine {
  if (parts.empty()) throw std::invalid_argument("no components");
  int n = parts[0].n();
  Weight nu(n, static_cast<int>(parts.size()));
  std::vector<Perm> ps;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].n() != n || parts[j].f() != 1) throw std::invalid_argument("dimension mismatch");
    for (int i = 0; i < n; ++i) nu(static_cast<int>(j), i) = parts[j].nu(0, i);
    ps.push_back(parts[j].w[0]);
  }
  return {nu, PermTuple(ps)};
}

auto ExtAffineHash::operator()(const ExtAffine &x) const -> std::size_t {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Int v : x.nu.entries()) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
  for (const auto &p : x.w.perms())
    for (int v : p) h = (h ^ static_cast<std::size_t>(v + 1000)) * 0x100000001b3ULL;
  return h;
}

auto compose(const ExtAffine &x, const ExtAffine &y) -> ExtAffine {
  require_same_shape(x.n(), x.f(), y.n(), y.f());
  return {x.nu + x.w.act(y.nu), x.w * y.w};
}

auto inverse(const ExtAffine &x) -> ExtAffine {
  PermTuple wi = x.w.inverse();
  return {-wi.act(x.nu), wi};
}

auto star(const ExtAffine &x) -> ExtAffine {
  // w^{-1} t_nu = t_{w^{-1} nu} w^{-1}
  PermTuple wi = x.w.inverse();
  return {wi.act(x.nu), wi};
}

auto pi_twist(const ExtAffine &x, int shift) -> ExtAffine { return {x.nu.pi(shift), x.w.pi(shift)}; }

auto affine_reflection(int n, int f, int j, Root beta, Int m) -> ExtAffine {
  ExtAffine r = ExtAffine::identity(n, f);
  r.w[j] = transposition(n, beta.i, beta.k);
  r.nu(j, beta.i) = m;
  r.nu(j, beta.k) = -m;
  return r;
}

auto affine_simple(int n, int f, int j, int i) -> ExtAffine {
  if (i == 0) return affine_reflection(n, f, j, {0, n - 1}, 1);
  return affine_reflection(n, f, j, {i - 1, i}, 0);
}

auto m_value(const ExtAffine &x, int j, Root beta) -> Int {
  const Perm &w = x.w[j];
  // w^{-1}(beta) < 0  <=>  w^{-1}(i) > w^{-1}(k)
  Perm wi = perm_inverse(w);
  Int neg = wi[static_cast<std::size_t>(beta.i)] > wi[static_cast<std::size_t>(beta.k)] ? 1 : 0;
  return checked_sub(x.nu.pair(j, beta), neg);
}

auto AlcoveProfile::at(int j, Root a) const -> Int {
  if (a.positive()) {
    auto it = std::find(roots.begin(), roots.end(), a);
    return m[static_cast<std::size_t>(j) * roots.size() + static_cast<std::size_t>(it - roots.begin())];
  }
  return -at(j, -a) - 1;
}

auto alcove_profile(const ExtAffine &x) -> AlcoveProfile {
  AlcoveProfile pr;
  pr.n = x.n();
  pr.f = x.f();
  pr.roots = positive_roots(x.n());
  for (int j = 0; j < x.f(); ++j) {
    Perm wi = perm_inverse(x.w[j]);
    bool restricted = true, regular = true;
    for (auto a : pr.roots) {
      Int neg = wi[static_cast<std::size_t>(a.i)] > wi[static_cast<std::size_t>(a.k)] ? 1 : 0;
      Int m = checked_sub(x.nu.pair(j, a), neg);
      pr.m.push_back(m);
      if (a.k == a.i + 1) {
        if (m != 0) restricted = false;
        else regular = false;
      }
    }
    pr.restricted.push_back(restricted);
    pr.regular.push_back(regular);
  }
  return pr;
}

auto alcove_key(const ExtAffine &x) -> std::vector<Int> { return alcove_profile(x).m; }

auto length(const ExtAffine &x) -> Int {
  Int s = 0;
  for (Int m : alcove_key(x)) s = checked_add(s, m < 0 ? -m : m);
  return s;
}

auto is_restricted(const ExtAffine &x) -> bool {
  auto pr = alcove_profile(x);
  return std::all_of(pr.restricted.begin(), pr.restricted.end(), [](bool b) { return b; });
}

auto restricted_lift(const PermTuple &w) -> ExtAffine {
  int n = w.n();
  Weight nu(n, w.f());
  for (int j = 0; j < w.f(); ++j) {
    Perm wi = perm_inverse(w[j]);
    for (int i = n - 2; i >= 0; --i)
      nu(j, i) = nu(j, i + 1) + (wi[static_cast<std::size_t>(i)] > wi[static_cast<std::size_t>(i + 1)] ? 1 : 0);
  }
  return {nu, w};
}

auto dot_action(const ExtAffine &x, const Weight &lam, Int p) -> Weight {
  Weight eta = Weight::eta(x.n(), x.f());
  return x.nu * p + x.w.act(lam + eta) - eta;
}

auto is_left_descent(const ExtAffine &x, int j, int i) -> bool {
  int n = x.n();
  if (i == 0) return m_value(x, j, {0, n - 1}) >= 1;
  return m_value(x, j, {i - 1, i}) < 0;
}

namespace {

auto reduce(const ExtAffine &x, Rng *rng) -> ReducedWord {
  ReducedWord out;
  ExtAffine cur = x;
  int n = x.n(), f = x.f();
  while (true) {
    std::vector<std::pair<int, int>> desc;
    for (int j = 0; j < f; ++j)
      for (int i = 0; i < n; ++i)
        if (is_left_descent(cur, j, i)) desc.emplace_back(j, i);
    if (desc.empty()) break;
    auto pick = rng ? desc[static_cast<std::size_t>(rng->below(desc.size()))] : desc.front();
    out.letters.push_back(pick);
    cur = compose(affine_simple(n, f, pick.first, pick.second), cur);
  }
  out.omega = cur;
  return out;
}

} // namespace

auto reduced_word(const ExtAffine &x) -> ReducedWord { return reduce(x, nullptr); }
auto random_reduced_word(const ExtAffine &x, Rng &rng) -> ReducedWord { return reduce(x, &rng); }

auto word_product(const ReducedWord &word) -> ExtAffine {
  ExtAffine r = word.omega;
  int n = r.n(), f = r.f();
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it)
    r = compose(affine_simple(n, f, it->first, it->second), r);
  return r;
}

auto bruhat_leq_word(const ExtAffine &x, const ReducedWord &y_word) -> bool {
  ExtAffine cur = x;
  int n = x.n(), f = x.f();
  require_same_shape(n, f, y_word.omega.n(), y_word.omega.f());
  for (auto [j, i] : y_word.letters)
    if (is_left_descent(cur, j, i)) cur = compose(affine_simple(n, f, j, i), cur);
  return cur == y_word.omega;
}

auto bruhat_leq(const ExtAffine &x, const ExtAffine &y) -> bool {
  return bruhat_leq_word(x, reduced_word(y));
}

auto bruhat_interval_below(const ExtAffine &y) -> std::vector<ExtAffine> {
  ReducedWord word = reduced_word(y);
  int n = y.n(), f = y.f();
  std::unordered_set<ExtAffine, ExtAffineHash> cur{word.omega};
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    ExtAffine s = affine_simple(n, f, it->first, it->second);
    std::vector<ExtAffine> add;
    add.reserve(cur.size());
    for (const auto &b : cur) add.push_back(compose(s, b));
    cur.insert(add.begin(), add.end());
  }
  std::vector<ExtAffine> out(cur.begin(), cur.end());
  std::sort(out.begin(), out.end());
  return out;
}

auto coxeter_ball(const ExtAffine &omega, Int max_len)
    -> std::unordered_map<ExtAffine, Int, ExtAffineHash> {
  std::unordered_map<ExtAffine, Int, ExtAffineHash> dist{{omega, 0}};
  std::deque<ExtAffine> queue{omega};
  int n = omega.n(), f = omega.f();
  std::vector<ExtAffine> gens;
  for (int j = 0; j < f; ++j)
    for (int i = 0; i < n; ++i) gens.push_back(affine_simple(n, f, j, i));
  while (!queue.empty()) {
    ExtAffine x = std::move(queue.front());
    queue.pop_front();
    Int d = dist[x];
    if (d == max_len) continue;
    for (const auto &s : gens) {
      ExtAffine y = compose(s, x);
      if (dist.try_emplace(y, d + 1).second) queue.push_back(std::move(y));
    }
  }
  return dist;
}

namespace {

auto up_arrow_component(const ExtAffine &a, const ExtAffine &b, int margin) -> bool {
  auto ka = alcove_key(a), kb = alcove_key(b);
  if (ka == kb) return true;
  int n = a.n();
  auto roots = positive_roots(n);
  std::vector<Int> lo(roots.size()), hi(roots.size());
  Int height_b = 0;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    lo[r] = std::min(ka[r], kb[r]) - margin;
    hi[r] = std::max(ka[r], kb[r]) + margin;
    height_b += kb[r];
  }
  auto in_box = [&](const std::vector<Int> &k) {
    Int h = 0;
    for (std::size_t r = 0; r < k.size(); ++r) {
      if (k[r] < lo[r] || k[r] > hi[r]) return false;
      h += k[r];
    }
    // upward moves raise <x, 2 rho^vee>; the floor sum tracks it up to |Phi^+|
    return h <= height_b + static_cast<Int>(roots.size());
  };
  std::unordered_set<std::vector<Int>, KeyHash> seen{ka};
  std::deque<ExtAffine> queue{a};
  while (!queue.empty()) {
    ExtAffine x = std::move(queue.front());
    queue.pop_front();
    auto kx = alcove_key(x);
    for (std::size_t r = 0; r < roots.size(); ++r) {
      Int mx = kx[r];
      // reflected alcove lands in (2m - mx - 1, 2m - mx)
      for (Int m = mx + 1; 2 * m - mx - 1 <= hi[r]; ++m) {
        ExtAffine y = compose(affine_reflection(n, 1, 0, roots[r], m), x);
        auto ky = alcove_key(y);
        if (ky == kb) return true;
        if (!in_box(ky)) continue;
        if (seen.insert(ky).second) queue.push_back(std::move(y));
      }
    }
  }
  return false;
}

} // namespace

auto up_arrow_leq(const ExtAffine &a, const ExtAffine &b, int margin) -> bool {
  require_same_shape(a.n(), a.f(), b.n(), b.f());
  for (int j = 0; j < a.f(); ++j)
    if (!up_arrow_component(a.component(j), b.component(j), margin)) return false;
  return true;
}

auto to_string(ColengthClass c) -> const char * {
  switch (c) {
  case ColengthClass::Extremal: return "extremal";
  case ColengthClass::ColengthOne: return "colength_one";
  default: return "deeper";
  }
}

auto is_dominant(const Weight &lam) -> bool {
  for (int j = 0; j < lam.f(); ++j)
    for (int i = 0; i + 1 < lam.n(); ++i)
      if (lam(j, i) < lam(j, i + 1)) return false;
  return true;
}

auto admissible_set(const Weight &lam) -> std::vector<ExtAffine> {
  if (!is_dominant(lam)) throw std::invalid_argument("admissible_set: weight is not dominant");
  if (length(ExtAffine::translation(lam)) > 24)
    throw std::invalid_argument("admissible_set: l(t_lambda) exceeds the enumeration bound 24");
  int n = lam.n();
  std::vector<std::vector<ExtAffine>> per;
  for (int j = 0; j < lam.f(); ++j) {
    Weight lj(n, 1, lam.row(j));
    std::set<ExtAffine> acc;
    for (const auto &w : all_perms(n)) {
      auto below = bruhat_interval_below(ExtAffine::translation(PermTuple({w}).act(lj)));
      acc.insert(below.begin(), below.end());
    }
    per.emplace_back(acc.begin(), acc.end());
  }
  std::vector<ExtAffine> out;
  std::vector<std::size_t> idx(per.size(), 0);
  while (true) {
    std::vector<ExtAffine> parts;
    for (std::size_t j = 0; j < per.size(); ++j) parts.push_back(per[j][idx[j]]);
    out.push_back(from_components(parts));
    std::size_t j = per.size();
    while (j > 0) {
      --j;
      if (++idx[j] < per[j].size()) break;
      idx[j] = 0;
      if (j == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }
}

auto classify_colength(const ExtAffine &x, const Weight &lam) -> ColengthClass {
  require_same_shape(x.n(), x.f(), lam.n(), lam.f());
  bool extremal = true;
  for (int j = 0; j < x.f() && extremal; ++j) {
    auto xj = x.component(j);
    Weight lj(x.n(), 1, lam.row(j));
    bool hit = false;
    for (const auto &w : all_perms(x.n()))
      if (xj == ExtAffine::translation(PermTuple({w}).act(lj))) hit = true;
    extremal = hit;
  }
  if (extremal) return ColengthClass::Extremal;
  if (length(x) == length(ExtAffine::translation(lam)) - 1) return ColengthClass::ColengthOne;
  return ColengthClass::Deeper;
}

auto restricted_alcove_count(int n) -> std::size_t {
  std::unordered_set<std::vector<Int>, KeyHash> keys;
  for (const auto &w : all_perms(n)) keys.insert(alcove_key(restricted_lift(PermTuple({w}))));
  return keys.size();
}

} // namespace alcove
