#include "alcove/loopmat.hpp"

#include <algorithm>
#include <sstream>

namespace alcove {

// ---------------------------------------------------------------- LaurentSeries

auto LaurentSeries::monomial(const Fq *field, Elem c, Int deg, Int prec) -> LaurentSeries {
  LaurentSeries r(field, prec);
  if (c != 0 && deg < prec) {
    r.start_ = deg;
    r.c_.assign(static_cast<std::size_t>(prec - deg), 0);
    r.c_[0] = c;
  }
  return r;
}

auto LaurentSeries::from_coeffs(const Fq *field, Int start, const std::vector<Elem> &coeffs, Int prec)
    -> LaurentSeries {
  LaurentSeries r(field, prec);
  if (start < prec) {
    r.start_ = start;
    r.c_.assign(static_cast<std::size_t>(prec - start), 0);
    for (std::size_t k = 0; k < coeffs.size() && start + static_cast<Int>(k) < prec; ++k) r.c_[k] = coeffs[k];
  }
  return r;
}

auto LaurentSeries::coeff(Int d) const -> Elem {
  if (d >= prec_) {
    std::ostringstream os;
    os << "coefficient of v^" << d << " requested beyond precision " << prec_;
    throw precision_error(os.str());
  }
  if (d < start_) return 0;
  return c_[static_cast<std::size_t>(d - start_)];
}

auto LaurentSeries::valuation() const -> std::optional<Int> {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return start_ + static_cast<Int>(k);
  return std::nullopt;
}

auto LaurentSeries::val_or_prec() const -> Int {
  auto v = valuation();
  return v ? *v : prec_;
}

auto LaurentSeries::is_integral() const -> bool {
  if (prec_ <= 0) throw precision_error("integrality undecidable at precision <= 0");
  return val_or_prec() >= 0;
}

auto LaurentSeries::operator+(const LaurentSeries &o) const -> LaurentSeries {
  const Fq *fld = f_ ? f_ : o.f_;
  Int prec = std::min(prec_, o.prec_);
  Int start = std::min(start_, o.start_);
  LaurentSeries r(fld, prec);
  if (start >= prec) return r;
  r.start_ = start;
  r.c_.assign(static_cast<std::size_t>(prec - start), 0);
  for (Int d = start; d < prec; ++d) r.c_[static_cast<std::size_t>(d - start)] = fld->add(coeff(d), o.coeff(d));
  return r;
}

auto LaurentSeries::operator-() const -> LaurentSeries {
  LaurentSeries r = *this;
  for (auto &c : r.c_) c = f_->neg(c);
  return r;
}

auto LaurentSeries::operator-(const LaurentSeries &o) const -> LaurentSeries { return *this + (-o); }

auto LaurentSeries::operator*(const LaurentSeries &o) const -> LaurentSeries {
  const Fq *fld = f_ ? f_ : o.f_;
  Int va = val_or_prec(), vb = o.val_or_prec();
  Int prec = std::min(checked_add(va, o.prec_), checked_add(vb, prec_));
  LaurentSeries r(fld, prec);
  Int start = va + vb;
  if (start >= prec) return r;
  r.start_ = start;
  r.c_.assign(static_cast<std::size_t>(prec - start), 0);
  for (Int i = va; i < prec_; ++i) {
    Elem a = coeff(i);
    if (a == 0) continue;
    for (Int j = vb; j < o.prec_ && i + j < prec; ++j) {
      Elem b = o.coeff(j);
      if (b == 0) continue;
      auto &slot = r.c_[static_cast<std::size_t>(i + j - start)];
      slot = fld->add(slot, fld->mul(a, b));
    }
  }
  return r;
}

auto LaurentSeries::scale(Elem c) const -> LaurentSeries {
  LaurentSeries r = *this;
  for (auto &x : r.c_) x = f_->mul(x, c);
  return r;
}

auto LaurentSeries::shift(Int k) const -> LaurentSeries {
  LaurentSeries r = *this;
  r.start_ += k;
  r.prec_ += k;
  return r;
}

auto LaurentSeries::inverse() const -> LaurentSeries {
  auto v = valuation();
  if (!v) throw precision_error("inverse of a series that is zero to precision");
  Int rel = prec_ - *v;
  Elem c0inv = f_->inv(coeff(*v));
  std::vector<Elem> w(static_cast<std::size_t>(rel), 0);
  w[0] = c0inv;
  for (Int k = 1; k < rel; ++k) {
    Elem s = 0;
    for (Int i = 1; i <= k; ++i) s = f_->add(s, f_->mul(coeff(*v + i), w[static_cast<std::size_t>(k - i)]));
    w[static_cast<std::size_t>(k)] = f_->neg(f_->mul(c0inv, s));
  }
  return from_coeffs(f_, -*v, w, prec_ - 2 * *v);
}

auto LaurentSeries::derivative() const -> LaurentSeries {
  LaurentSeries r(f_, prec_ - 1);
  if (start_ - 1 >= prec_ - 1) return r;
  r.start_ = start_ - 1;
  r.c_.assign(static_cast<std::size_t>(prec_ - start_), 0);
  for (Int d = start_; d < prec_; ++d)
    r.c_[static_cast<std::size_t>(d - start_)] = f_->mul(f_->from_int(mod_floor(d, f_->p())), coeff(d));
  return r;
}

auto LaurentSeries::truncate(Int prec) const -> LaurentSeries {
  if (prec >= prec_) return *this;
  std::vector<Elem> cs;
  for (Int d = start_; d < prec; ++d) cs.push_back(coeff(d));
  return from_coeffs(f_, start_, cs, prec);
}

auto LaurentSeries::terms() const -> std::vector<std::pair<Int, Elem>> {
  std::vector<std::pair<Int, Elem>> out;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) out.emplace_back(start_ + static_cast<Int>(k), c_[k]);
  return out;
}

// ---------------------------------------------------------------- LoopMatrix

LoopMatrix::LoopMatrix(const Fq *field, int n, Int prec)
    : f_(field), n_(n), e_(static_cast<std::size_t>(n * n), LaurentSeries(field, prec)) {}

auto LoopMatrix::identity(const Fq *field, int n, Int prec) -> LoopMatrix {
  LoopMatrix r(field, n, prec);
  for (int i = 0; i < n; ++i) r(i, i) = LaurentSeries::monomial(field, 1, 0, prec);
  return r;
}

auto LoopMatrix::monomial(const Fq *field, const std::vector<Int> &nu, const Perm &w, Int prec) -> LoopMatrix {
  int n = static_cast<int>(w.size());
  LoopMatrix r(field, n, prec);
  for (int c = 0; c < n; ++c) {
    int row = w[static_cast<std::size_t>(c)];
    r(row, c) = LaurentSeries::monomial(field, 1, nu[static_cast<std::size_t>(row)], prec);
  }
  return r;
}

auto LoopMatrix::diagonal(const std::vector<LaurentSeries> &d) -> LoopMatrix {
  int n = static_cast<int>(d.size());
  Int prec = d.empty() ? 0 : d[0].prec();
  for (const auto &x : d) prec = std::min(prec, x.prec());
  LoopMatrix r(d.empty() ? nullptr : d[0].field(), n, prec);
  for (int i = 0; i < n; ++i) r(i, i) = d[static_cast<std::size_t>(i)];
  return r;
}

auto LoopMatrix::prec() const -> Int {
  Int p = e_.empty() ? 0 : e_[0].prec();
  for (const auto &x : e_) p = std::min(p, x.prec());
  return p;
}

auto LoopMatrix::operator*(const LoopMatrix &o) const -> LoopMatrix {
  LoopMatrix r(f_, n_, std::max(prec(), o.prec()) * 4 + 64);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      LaurentSeries s = (*this)(i, 0) * o(0, j);
      for (int k = 1; k < n_; ++k) s = s + (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

auto LoopMatrix::operator+(const LoopMatrix &o) const -> LoopMatrix {
  LoopMatrix r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
  return r;
}

auto LoopMatrix::operator-(const LoopMatrix &o) const -> LoopMatrix {
  LoopMatrix r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
  return r;
}

auto LoopMatrix::minor(const std::vector<int> &rows, const std::vector<int> &cols) const -> LaurentSeries {
  int m = static_cast<int>(rows.size());
  LaurentSeries total(f_, prec() * 4 + 64);
  for (const Perm &s : all_perms(m)) {
    LaurentSeries term = LaurentSeries::monomial(f_, 1, 0, total.prec());
    for (int i = 0; i < m; ++i)
      term = term * (*this)(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])]);
    total = (inversions(s) % 2 == 0) ? total + term : total - term;
  }
  return total;
}

auto LoopMatrix::det() const -> LaurentSeries {
  std::vector<int> all(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) all[static_cast<std::size_t>(i)] = i;
  return minor(all, all);
}

auto LoopMatrix::adjugate() const -> LoopMatrix {
  LoopMatrix r(f_, n_, prec());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::vector<int> rows, cols;
      for (int k = 0; k < n_; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      LaurentSeries c = n_ == 1 ? LaurentSeries::monomial(f_, 1, 0, prec()) : minor(rows, cols);
      r(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  return r;
}

auto LoopMatrix::inverse() const -> LoopMatrix {
  LaurentSeries dinv = det().inverse();
  LoopMatrix adj = adjugate();
  for (auto &x : adj.e_) x = x * dinv;
  return adj;
}

auto LoopMatrix::derivative() const -> LoopMatrix {
  LoopMatrix r = *this;
  for (auto &x : r.e_) x = x.derivative();
  return r;
}

auto LoopMatrix::conjugate(const LoopMatrix &x) const -> LoopMatrix { return x * *this * x.inverse(); }

auto LoopMatrix::swap_columns(int a, int b) const -> LoopMatrix {
  LoopMatrix r = *this;
  for (int i = 0; i < n_; ++i) std::swap(r(i, a), r(i, b));
  return r;
}

auto LoopMatrix::mod_v() const -> std::vector<std::vector<Elem>> {
  std::vector<std::vector<Elem>> out(static_cast<std::size_t>(n_), std::vector<Elem>(static_cast<std::size_t>(n_)));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (!(*this)(i, j).is_integral()) throw std::domain_error("mod_v of a non-integral matrix");
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j).coeff(0);
    }
  return out;
}

auto default_precision(int n, Int max_degree) -> Int { return 4 * n * (1 + max_degree); }

auto iwahori_member(const LoopMatrix &a) -> bool {
  int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto &x = a(i, j);
      if (x.prec() < 2) throw precision_error("Iwahori membership needs precision >= 2");
      Int v = x.val_or_prec();
      if (v < 0) return false;
      if (i > j && v < 1) return false;
      if (i == j && v != 0) return false;
    }
  return true;
}

auto random_iwahori(const Fq *field, int n, Int deg, Int prec, Rng &rng) -> LoopMatrix {
  LoopMatrix r(field, n, prec);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Fq::Elem> cs(static_cast<std::size_t>(deg + 1));
      for (auto &c : cs) c = field->random(rng);
      if (i == j) cs[0] = field->random_unit(rng);
      if (i > j) cs[0] = 0;
      r(i, j) = LaurentSeries::from_coeffs(field, 0, cs, prec);
    }
  return r;
}

auto affine_bruhat_decompose(const LoopMatrix &a) -> BruhatCell {
  int n = a.n();
  LoopMatrix m = a;
  std::vector<bool> row_used(static_cast<std::size_t>(n), false), col_used(static_cast<std::size_t>(n), false);
  BruhatCell out;
  out.nu.assign(static_cast<std::size_t>(n), 0);
  out.w.assign(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    std::optional<Int> best;
    int pr = -1, pc = -1;
    for (int c = 0; c < n; ++c) {
      if (col_used[static_cast<std::size_t>(c)]) continue;
      for (int r = 0; r < n; ++r) {
        if (row_used[static_cast<std::size_t>(r)]) continue;
        auto v = m(r, c).valuation();
        if (!v) continue;
        // minimum valuation, then smallest column, then largest row
        if (!best || *v < *best || (*v == *best && c == pc)) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (!best) throw precision_error("Bruhat decomposition: remaining block is zero to precision");
    LaurentSeries pinv = m(pr, pc).inverse();
    for (int c = 0; c < n; ++c) {
      if (c == pc || col_used[static_cast<std::size_t>(c)]) continue;
      LaurentSeries f = m(pr, c) * pinv;
      for (int r = 0; r < n; ++r)
        if (!row_used[static_cast<std::size_t>(r)]) m(r, c) = m(r, c) - f * m(r, pc);
    }
    // Row operations against the pivot row only touch column pc.
    row_used[static_cast<std::size_t>(pr)] = true;
    col_used[static_cast<std::size_t>(pc)] = true;
    out.nu[static_cast<std::size_t>(pr)] = *best;
    out.w[static_cast<std::size_t>(pc)] = pr;
  }
  out.certified_prec = m.prec();
  return out;
}

auto nabla_check(const LoopMatrix &a, const std::vector<Fq::Elem> &diag_a) -> bool {
  int n = a.n();
  const Fq *f = a.field();
  Int prec = a.prec();
  LoopMatrix ainv = a.inverse();
  std::vector<LaurentSeries> d;
  for (int i = 0; i < n; ++i) d.push_back(LaurentSeries::monomial(f, diag_a[static_cast<std::size_t>(i)], 0, prec));
  LoopMatrix e = a.derivative() * ainv;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = e(i, j).shift(1);
  e = e + a * LoopMatrix::diagonal(d) * ainv;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LaurentSeries x = e(i, j).shift(1);
      Int need = i > j ? 1 : 0;
      if (x.prec() <= need) throw precision_error("nabla check needs more precision");
      if (x.val_or_prec() < need) return false;
    }
  return true;
}

auto iwahori_row_reduce(const LoopMatrix &m, const ExtAffine &u_diamond) -> RowReduction {
  int n = m.n();
  const Fq *f = m.field();
  RowReduction out;
  LoopMatrix b = m;
  for (int k = n - 1; k >= 0; --k) {
    if (!b(k, k).is_unit()) {
      std::ostringstream os;
      os << "trailing minor on rows/cols " << k + 1 << ".." << n << " is not a unit";
      throw std::domain_error(os.str());
    }
    LaurentSeries pinv = b(k, k).inverse();
    for (int t = 0; t < k; ++t) {
      if (!b(t, k).valuation()) continue;
      LaurentSeries fac = -(b(t, k) * pinv);
      Int bound = -m_value(u_diamond, 0, Root{t, k});
      if (fac.val_or_prec() < bound) {
        std::ostringstream os;
        os << "row operation u_(" << t + 1 << "," << k + 1 << ") leaves v^" << bound << " F[[v]]";
        throw std::domain_error(os.str());
      }
      for (int c = 0; c < n; ++c) b(t, c) = b(t, c) + fac * b(k, c);
      out.ops.push_back({t, k, fac});
    }
  }
  for (int k = 0; k < n; ++k) {
    out.pivots.push_back(b(k, k));
    LaurentSeries s = b(k, k).inverse();
    for (int c = 0; c < n; ++c) b(k, c) = b(k, c) * s;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < j && b(i, j).valuation()) throw std::logic_error("row reduction left an upper entry");
      if (i > j && !b(i, j).is_integral()) throw std::domain_error("row reduction produced a non-integral entry");
    }
  (void)f;
  out.result = b;
  return out;
}

auto open_locus_reduce(const LoopMatrix &a, const ExtAffine &u_diamond, int i0, int k0) -> RowReduction {
  if (!a(k0, i0).is_unit()) throw std::domain_error("A_{-alpha} is not a unit");
  LoopMatrix b = a.swap_columns(i0, k0);
  for (int i = 2; i <= k0 - i0; ++i) {
    std::vector<int> idx;
    for (int r = k0 - i + 1; r <= k0; ++r) idx.push_back(r);
    if (!b.minor(idx, idx).is_unit()) {
      std::ostringstream os;
      os << "minor M_" << i << " is not a unit";
      throw std::domain_error(os.str());
    }
  }
  return iwahori_row_reduce(b, u_diamond);
}

// ---------------------------------------------------------------- rationals

auto q_identity(int n) -> QMatrix {
  QMatrix r(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return r;
}

auto q_mul(const QMatrix &a, const QMatrix &b) -> QMatrix {
  std::size_t n = a.size();
  QMatrix r(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

auto q_det(QMatrix a) -> Rational {
  std::size_t n = a.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational fac = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= fac * a[c][k];
    }
  }
  return d;
}

auto q_inverse(const QMatrix &a) -> QMatrix {
  std::size_t n = a.size();
  QMatrix m = a, r = q_identity(static_cast<int>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular rational matrix");
    std::swap(m[piv], m[c]);
    std::swap(r[piv], r[c]);
    Rational s = 1 / m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] *= s;
      r[c][k] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational fac = m[i][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[i][k] -= fac * m[c][k];
        r[i][k] -= fac * r[c][k];
      }
    }
  }
  return r;
}

auto q_leading_minor(const QMatrix &a, int i) -> Rational {
  QMatrix s(static_cast<std::size_t>(i), std::vector<Rational>(static_cast<std::size_t>(i)));
  for (int r = 0; r < i; ++r)
    for (int c = 0; c < i; ++c) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return q_det(s);
}

auto operator+(const QPoly &a, const QPoly &b) -> QPoly {
  QPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

auto operator*(const QPoly &a, const QPoly &b) -> QPoly {
  QPoly r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != 0)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

auto RationalPMatrix::identity(int n, Int p) -> RationalPMatrix {
  RationalPMatrix r{n, p, std::vector<QPoly>(static_cast<std::size_t>(n * n))};
  for (int i = 0; i < n; ++i) r(i, i).c = {Rational(1)};
  return r;
}

auto RationalPMatrix::permutation(const Perm &w, Int p) -> RationalPMatrix {
  int n = static_cast<int>(w.size());
  RationalPMatrix r{n, p, std::vector<QPoly>(static_cast<std::size_t>(n * n))};
  for (int c = 0; c < n; ++c) r(w[static_cast<std::size_t>(c)], c).c = {Rational(1)};
  return r;
}

auto RationalPMatrix::v_plus_p_eta(int n, Int p) -> RationalPMatrix {
  RationalPMatrix r = identity(n, p);
  for (int i = 0; i < n; ++i) {
    QPoly acc{{Rational(1)}};
    for (int k = 0; k < n - 1 - i; ++k) acc = acc * QPoly{{Rational(p), Rational(1)}};
    r(i, i) = acc;
  }
  return r;
}

auto RationalPMatrix::operator*(const RationalPMatrix &o) const -> RationalPMatrix {
  RationalPMatrix r{n, p, std::vector<QPoly>(static_cast<std::size_t>(n * n))};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r(i, j) = r(i, j) + (*this)(i, k) * o(k, j);
  return r;
}

auto RationalPMatrix::mod_v() const -> QMatrix {
  QMatrix r(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j).constant();
  return r;
}

auto padic_value(const Rational &x, Int p) -> PAdicValue {
  if (x == 0) return {};
  Int v = p_valuation(x, p);
  Rational u = x * rational_pow(Rational(p), -v);
  BigInt num = boost::multiprecision::numerator(u), den = boost::multiprecision::denominator(u);
  Int nm = static_cast<Int>(num % p), dm = static_cast<Int>(den % p);
  nm = mod_floor(nm, p);
  dm = mod_floor(dm, p);
  Int dinv = 1;
  for (Int e = p - 2, b = dm; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) dinv = dinv * b % p;
  return {v, nm * dinv % p};
}

} // namespace alcove
