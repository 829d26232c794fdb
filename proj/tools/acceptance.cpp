// One line per acceptance criterion; exit status 0 iff all pass.
#include "cli.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

using namespace alcove;
using cli::RunConfig;

namespace {

struct Outcome {
  bool pass{false};
  std::string detail;
};

struct Criterion {
  int id;
  const char *name;
  double limit_seconds;
  std::function<Outcome()> body;
};

auto factorial(int n) -> std::size_t {
  std::size_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::size_t>(i);
  return r;
}

auto check_named(const cli::Report &r, const std::string &name) -> const cli::Check & {
  for (const auto &c : r.checks)
    if (c.name == name) return c;
  throw std::logic_error("report has no check " + name);
}

auto cases(const cli::Check &c) -> std::string { return std::to_string(c.detail.value("cases", 0)); }

auto setups(int n, int f, Int p) -> std::vector<SetupData> {
  std::vector<SetupData> out;
  for (const auto &[w0, u0, j0] : special_pairs(n, f)) {
    auto norm = normalize_to_case_a(w0, u0, j0, deep_omega(n, f), p);
    out.push_back(build_setup(norm.w, norm.u, j0, norm.omega, p));
  }
  return out;
}

auto restricted_count() -> Outcome {
  constexpr double kPerN = 1.0;
  std::string detail;
  bool ok = true;
  for (int n = 2; n <= 6; ++n) {
    auto start = std::chrono::steady_clock::now();
    std::size_t c = restricted_alcove_count(n);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && c == factorial(n - 1) && s < kPerN;
    detail += "n=" + std::to_string(n) + ":" + std::to_string(c) + " ";
  }
  return {ok, detail};
}

auto special_count() -> Outcome {
  bool ok = enumerate_special(2, 1).special_classes == 0;
  std::string detail;
  for (int n = 3; n <= 5; ++n) {
    auto c = enumerate_special(n, 1);
    ok = ok && c.special_classes == factorial(n - 2);
    detail += "n=" + std::to_string(n) + ":" + std::to_string(c.special_classes) + " ";
  }
  for (int n = 3; n <= 4; ++n)
    for (int f = 1; f <= 3; ++f)
      ok = ok && enumerate_special(n, f).proportion == 1 - rational_pow(Rational(n - 2, n - 1), f);
  return {ok, detail + "proportions exact for n=3,4 f=1..3"};
}

auto weyl_reports() -> std::vector<cli::Report> {
  std::vector<cli::Report> out;
  for (int n = 2; n <= 4; ++n) {
    RunConfig c;
    c.n = n;
    c.trials = 200;
    c.seed = 11;
    out.push_back(cli::run("verify weyl", c));
  }
  return out;
}

auto length_bruhat() -> Outcome {
  bool ok = true;
  std::string detail;
  for (const auto &r : weyl_reports()) {
    const auto &len = check_named(r, "length equals Coxeter distance");
    const auto &sub = check_named(r, "Bruhat subword test is independent of the reduced word");
    ok = ok && len.pass && sub.pass;
    detail += "n=" + std::to_string(r.config["n"].get<int>()) + ": " + cases(len) + " lengths, " + cases(sub) +
              " pairs x " + std::to_string(sub.detail["words_per_pair"].get<int>()) + " words; ";
  }
  return {ok, detail};
}

auto superadditivity() -> Outcome {
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 4; ++n) {
    RunConfig c;
    c.n = n;
    c.trials = 1;
    auto r = cli::run("verify weyl", c);
    const auto &sup = check_named(r, "optimal superadditivity");
    ok = ok && sup.pass && check_named(r, "restricted iff m vanishes on simple roots").pass;
    detail += "n=" + std::to_string(n) + ":" + cases(sup) + " ";
  }
  return {ok, detail + "root triples"};
}

auto setup_contract() -> Outcome {
  bool ok = true;
  std::size_t total = 0;
  for (int n = 3; n <= 4; ++n)
    for (int f = 1; f <= 2; ++f) {
      RunConfig c;
      c.n = n;
      c.f = f;
      c.p = 53;
      auto r = cli::run("setup build", c);
      ok = ok && r.all_pass();
      total += r.checks.front().detail["cases"].get<std::size_t>();
    }
  return {ok && total > 0, std::to_string(total) + " special pairs at p=53"};
}

auto minor_identities_all() -> Outcome {
  bool ok = true;
  std::string detail;
  for (int n = 3; n <= 5; ++n) {
    RunConfig c;
    c.n = n;
    c.trials = 1000;
    c.seed = 7;
    auto r = cli::run("verify minors", c);
    ok = ok && r.all_pass();
    detail += "n=" + std::to_string(n) + ":" + cases(r.checks.front()) + " ";
  }
  return {ok, detail + "minors over F_53"};
}

auto partition() -> Outcome {
  bool ok = true;
  std::size_t total = 0;
  for (int n = 3; n <= 4; ++n)
    for (int f = 1; f <= 2; ++f) {
      RunConfig c;
      c.n = n;
      c.f = f;
      auto r = cli::run("verify partition", c);
      ok = ok && r.all_pass();
      total += r.checks.front().detail["cases"].get<std::size_t>();
    }
  return {ok && total > 0, std::to_string(total) + " configurations"};
}

auto z_structure() -> Outcome {
  constexpr double kLog10FailureBound = -2.0;
  constexpr int kSamples = 10000;
  constexpr Int kQ = 101;
  bool ok = true;
  int positive = 0;
  double bound = -1e300;
  for (int n = 3; n <= 4; ++n) {
    RunConfig c;
    c.n = n;
    c.p = kQ;
    c.trials = kSamples;
    c.seed = 3;
    auto r = cli::run("verify z", c);
    ok = ok && r.all_pass();
    int here = r.data["pairs_with_positive_m"].get<int>();
    positive += here;
    if (here > 0)
      bound = std::max(bound, check_named(r, "Z vanishes on the simple-root locus").detail["log10_miss_probability_bound"].get<double>());
  }
  ok = ok && positive > 0 && bound <= kLog10FailureBound;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d pairs with m>0, %d samples each at q=%lld, miss bound 10^%.0f", positive, kSamples,
                static_cast<long long>(kQ), bound);
  return {ok, buf};
}

auto witness() -> Outcome {
  constexpr Int kP = 53;
  constexpr int kFamily = 10;
  bool ok = true;
  std::size_t min_distinct = SIZE_MAX;
  auto all = setups(3, 1, kP);
  for (const auto &s : all) {
    std::set<std::vector<Fq::Elem>> chars;
    std::set<Fq::Elem> last;
    for (Int t = 1; t <= kFamily; ++t) {
      Witness w = witness_triple_intersection(s, t);
      bool fi = w.f_sigma.f.size() == 3 && w.f_sigma.f[0].valuation.value_or(0) > 0 &&
                w.f_sigma.f[1].valuation.value_or(0) > 0 && w.f_sigma.f[2].valuation == Int{0};
      ok = ok && w.checks.all() && fi;
      (void)ps_parameters(*w.field, w.chi_sigma_prime);
      chars.insert(w.chi_sigma_prime.values);
      last.insert(w.chi_sigma_prime.values.back());
    }
    ok = ok && chars.size() >= kFamily && last.size() == 1;
    min_distinct = std::min(min_distinct, chars.size());
  }
  return {ok && !all.empty(), std::to_string(all.size()) + " pairs, >= " + std::to_string(min_distinct) +
                                  " distinct characters per family, equal chi(T_3)"};
}

auto ordinarity() -> Outcome {
  bool ok = true;
  int runs = 0;
  for (int n = 2; n <= 4; ++n)
    for (int f = 1; f <= 2; ++f) {
      RunConfig c;
      c.n = n;
      c.f = f;
      c.trials = 50;
      c.seed = 5;
      ok = ok && cli::run("predicates fi", c).all_pass();
      ++runs;
    }
  return {ok, std::to_string(runs * 50) + " extremal chart points"};
}

auto gl2_data() -> Outcome {
  constexpr Int kP = 23;
  Rng rng(19);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    Int b0 = rng.range(0, 5), b1 = rng.range(0, 5);
    Int a0 = b0 + rng.range(3, kP - 5), a1 = b1 + rng.range(3, kP - 5);
    Weight lam = Weight::from_rows({{a0, b0}, {a1, b1}});
    auto got = gl2_f2_jh(lam, kP);
    std::array<Weight, 3> want{Weight::from_rows({{b0 - 1 + kP, a0 + 1}, {a1 - 1, b1}}),
                               Weight::from_rows({{a0 - 1, b0}, {b1 - 1 + kP, a1 + 1}}),
                               Weight::from_rows({{b0 + kP - 1, a0}, {b1 + kP - 1, a1}})};
    ok = ok && got.s0 == canonical_weight(want[0], kP) && got.s1 == canonical_weight(want[1], kP) &&
         got.s0s1 == canonical_weight(want[2], kP);
    for (const auto &x : {got.s0, got.s1, got.s0s1}) ok = ok && !same_serre_weight(x, lam, kP);
  }
  return {ok, "20 random deep weights at p=23"};
}

auto coset_invariance() -> Outcome {
  RunConfig c;
  c.n = 4;
  c.p = 7;
  c.trials = 500;
  c.seed = 2;
  auto r = cli::run("verify bruhat", c);
  return {r.all_pass(), cases(r.checks.front()) + " bi-multiplications, n <= 4"};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "restricted alcove count (n-1)!", 5.0, restricted_count},
      {2, "special alcove count and proportion", 30.0, special_count},
      {3, "length and Bruhat oracles", 120.0, length_bruhat},
      {4, "optimal superadditivity on Adm(2 eta)", 120.0, superadditivity},
      {5, "setup shape contract", 120.0, setup_contract},
      {6, "minor identities", 60.0, minor_identities_all},
      {7, "partition lemma", 60.0, partition},
      {8, "Z_{-alpha} structure", 60.0, z_structure},
      {9, "triple intersection witness", 120.0, witness},
      {10, "ordinarity of extremal charts", 60.0, ordinarity},
      {11, "GL2 f=2 constituents", 30.0, gl2_data},
      {12, "Bruhat coset invariance", 120.0, coset_invariance},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass && s < c.limit_seconds;
    if (!pass) ++failed;
    std::printf("[%s] %2d %s (%.2f s, limit %.0f s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, s,
                c.limit_seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
