#include "alcove/field.hpp"

#include <sstream>
#include <stdexcept>

namespace alcove {

namespace {

using Poly = std::vector<Int>; // constant term first

void trim(Poly &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

auto poly_mod(Poly a, const Poly &m, Int p) -> Poly {
  trim(a);
  Int lead_inv = 1;
  for (Int e = p - 2, b = m.back(); e > 0; e >>= 1, b = b * b % p)
    if (e & 1) lead_inv = lead_inv * b % p;
  while (a.size() >= m.size()) {
    Int c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = mod_floor(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

auto poly_mulmod(const Poly &a, const Poly &b, const Poly &m, Int p) -> Poly {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(r, m, p);
}

auto poly_powmod(Poly a, BigInt e, const Poly &m, Int p) -> Poly {
  Poly r{1};
  a = poly_mod(a, m, p);
  while (e > 0) {
    if ((e & 1) != 0) r = poly_mulmod(r, a, m, p);
    a = poly_mulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

auto poly_gcd(Poly a, Poly b, Int p) -> Poly {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test.
auto irreducible(const Poly &m, Int p) -> bool {
  int k = static_cast<int>(m.size()) - 1;
  Poly x{0, 1};
  auto frob = [&](int r) {
    BigInt e = 1;
    for (int i = 0; i < r; ++i) e *= p;
    return poly_powmod(x, e, m, p);
  };
  Poly full = frob(k);
  Poly xm = poly_mod(x, m, p);
  if (full != xm) return false;
  for (int r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime(r)) continue;
    Poly h = frob(k / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = mod_floor(h[1] - 1, p);
    trim(h);
    if (poly_gcd(m, h, p).size() != 1) return false;
  }
  return true;
}

} // namespace

Fq::Fq(Int p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (k < 1) throw std::invalid_argument("field degree must be positive");
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ = checked_mul(q_, p);
  if (q_ > (Int{1} << 24)) throw std::invalid_argument("field too large for table arithmetic");

  mod_.assign(static_cast<std::size_t>(k + 1), 0);
  mod_[static_cast<std::size_t>(k)] = 1;
  if (k > 1) {
    bool found = false;
    for (Int code = 0; code < q_ && !found; ++code) {
      Int c = code;
      for (int i = 0; i < k; ++i, c /= p) mod_[static_cast<std::size_t>(i)] = c % p;
      found = mod_[0] != 0 && irreducible(mod_, p);
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  } else {
    mod_[0] = 0; // F_p[T]/(T)
  }

  auto encode = [&](const Poly &a) {
    Elem r = 0, base = 1;
    for (std::size_t i = 0; i < a.size(); ++i, base *= static_cast<Elem>(p)) r += static_cast<Elem>(a[i]) * base;
    return r;
  };
  auto decode = [&](Elem a) {
    Poly r;
    for (int i = 0; i < k; ++i, a /= static_cast<Elem>(p)) r.push_back(a % p);
    trim(r);
    return r;
  };

  // Smallest generator of the multiplicative group.
  std::vector<Int> factors;
  Int rem = q_ - 1;
  for (Int d = 2; d * d <= rem; ++d)
    if (rem % d == 0) {
      factors.push_back(d);
      while (rem % d == 0) rem /= d;
    }
  if (rem > 1) factors.push_back(rem);
  Poly mpoly = mod_;
  if (k == 1) mpoly = {0, 1};
  Elem g = 0;
  for (Elem cand = 1; cand < static_cast<Elem>(q_) && g == 0; ++cand) {
    bool ok = true;
    for (Int fct : factors)
      if (poly_powmod(decode(cand), (q_ - 1) / fct, mpoly, p) == Poly{1}) ok = false;
    if (ok && q_ > 2) g = cand;
    if (q_ == 2) g = 1;
  }

  exp_.assign(static_cast<std::size_t>(2 * (q_ - 1)), 0);
  log_.assign(static_cast<std::size_t>(q_), 0);
  Poly cur{1};
  for (Int i = 0; i < q_ - 1; ++i) {
    Elem e = encode(cur);
    exp_[static_cast<std::size_t>(i)] = e;
    exp_[static_cast<std::size_t>(i + q_ - 1)] = e;
    log_[e] = static_cast<std::uint32_t>(i);
    cur = poly_mulmod(cur, decode(g), mpoly, p);
  }
}

auto Fq::modulus_string() const -> std::string {
  std::ostringstream os;
  bool first = true;
  for (int i = k_; i >= 0; --i) {
    Int c = mod_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) os << c;
    else {
      if (c != 1) os << c << '*';
      os << 'T';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

auto Fq::add(Elem a, Elem b) const -> Elem {
  if (k_ == 1) {
    Elem r = a + b;
    return r >= static_cast<Elem>(p_) ? r - static_cast<Elem>(p_) : r;
  }
  Elem r = 0, base = 1;
  for (int i = 0; i < k_; ++i, base *= static_cast<Elem>(p_)) {
    Elem d = (a % static_cast<Elem>(p_) + b % static_cast<Elem>(p_)) % static_cast<Elem>(p_);
    r += d * base;
    a /= static_cast<Elem>(p_);
    b /= static_cast<Elem>(p_);
  }
  return r;
}

auto Fq::sub(Elem a, Elem b) const -> Elem {
  if (k_ == 1) return a >= b ? a - b : a + static_cast<Elem>(p_) - b;
  Elem r = 0, base = 1;
  for (int i = 0; i < k_; ++i, base *= static_cast<Elem>(p_)) {
    Elem d = (a % static_cast<Elem>(p_) + static_cast<Elem>(p_) - b % static_cast<Elem>(p_)) % static_cast<Elem>(p_);
    r += d * base;
    a /= static_cast<Elem>(p_);
    b /= static_cast<Elem>(p_);
  }
  return r;
}

auto Fq::mul(Elem a, Elem b) const -> Elem {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

auto Fq::inv(Elem a) const -> Elem {
  if (a == 0) throw std::domain_error("inverse of zero in F_q");
  return exp_[static_cast<std::size_t>((q_ - 1 - log_[a]) % (q_ - 1))];
}

auto Fq::pow(Elem a, Int e) const -> Elem {
  if (a == 0) {
    if (e < 0) throw std::domain_error("negative power of zero in F_q");
    return e == 0 ? 1 : 0;
  }
  Int l = mod_floor(static_cast<Int>(log_[a]) * mod_floor(e, q_ - 1), q_ - 1);
  return exp_[static_cast<std::size_t>(l)];
}

auto Fq::coeffs(Elem a) const -> std::vector<Int> {
  std::vector<Int> r;
  for (int i = 0; i < k_; ++i, a /= static_cast<Elem>(p_)) r.push_back(a % p_);
  return r;
}

} // namespace alcove
