#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace alcove::cli {

using json = nlohmann::ordered_json;

namespace {

auto factorial(int n) -> std::size_t {
  std::size_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::size_t>(i);
  return r;
}

auto rational_string(const Rational &r) -> std::string {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

auto elem_json(const Fq &field, Fq::Elem a) -> json {
  if (field.degree() == 1) return field.coeffs(a).front();
  return field.coeffs(a);
}

auto values_json(const Fq &field, const std::map<Root, Fq::Elem> &values) -> json {
  json j = json::object();
  for (const auto &[r, x] : values) j[root_name(r)] = elem_json(field, x);
  return j;
}

auto perm_json(const Perm &w) -> json {
  json j = json::array();
  for (int x : w) j.push_back(x + 1);
  return j;
}

auto class_name(ColengthClass c) -> std::string { return to_string(c); }

auto case_a_setups(int n, int f, Int p) -> std::vector<SetupData> {
  std::vector<SetupData> out;
  for (const auto &[w0, u0, j0] : special_pairs(n, f)) {
    auto norm = normalize_to_case_a(w0, u0, j0, deep_omega(n, f), p);
    out.push_back(build_setup(norm.w, norm.u, j0, norm.omega, p));
  }
  return out;
}

auto setup_json(const SetupData &s) -> json {
  json j;
  j["j0"] = s.j0;
  j["case"] = to_string(s.kase);
  j["sigma"] = {{"wtilde", to_json(s.sigma.wtilde)}, {"omega", to_json(s.sigma.omega)}};
  j["sigma_prime"] = {{"wtilde", to_json(s.sigma_prime.wtilde)}, {"omega", to_json(s.sigma_prime.omega)}};
  auto type_json = [](const TameTypePresentation &t) {
    json x = json::array();
    for (const auto &w : t.s.perms()) x.push_back(perm_json(w));
    return json{{"s", x}, {"mu", to_json(t.mu)}};
  };
  j["tau"] = type_json(s.tau);
  j["tau_prime"] = type_json(s.tau_prime);
  j["rhobar"] = type_json(s.rhobar);
  j["rhobar_prime"] = type_json(s.rhobar_prime);
  j["shape"] = to_json(s.shape);
  j["shape_prime"] = to_json(s.shape_prime);
  j["ztilde"] = to_json(s.ztilde);
  j["ztilde_prime"] = to_json(s.ztilde_prime);
  json classes = json::array();
  for (auto c : s.shape_classes) classes.push_back(class_name(c));
  j["shape_classes"] = classes;
  j["shape_prime_class"] = class_name(s.shape_prime_class);
  return j;
}

auto pair_json(const SpecialPair &sp) -> json {
  json w = json::array(), u = json::array();
  for (const auto &x : sp.w.perms()) w.push_back(perm_json(x));
  for (const auto &x : sp.u.perms()) u.push_back(perm_json(x));
  return json{{"w", w}, {"u", u}, {"j0", sp.j0}};
}

auto fvalues_json(const FValues &fv) -> json {
  json j = json::array();
  for (const auto &v : fv.f) {
    json x;
    if (v.valuation)
      x["valuation"] = *v.valuation;
    else
      x["valuation"] = nullptr;
    x["residue"] = v.residue;
    j.push_back(x);
  }
  return j;
}

void require(bool ok, const std::string &msg) {
  if (!ok) throw usage_error(msg);
}

/// First failing case wins the counterexample slot.
struct Tally {
  Check check;
  std::size_t cases{0}, failures{0};

  explicit Tally(std::string name) { check.name = std::move(name); }
  void record(bool ok, const std::function<json()> &witness) {
    ++cases;
    if (ok) return;
    ++failures;
    if (!check.counterexample) check.counterexample = witness();
  }
  auto done(json extra = json::object()) -> Check {
    check.pass = failures == 0;
    check.detail = json{{"cases", cases}, {"failures", failures}};
    for (auto &[k, v] : extra.items()) check.detail[k] = v;
    return check;
  }
};

// ------------------------------------------------------------------ commands

auto cmd_alcoves_enumerate(const RunConfig &c, Report &r) {
  std::set<std::vector<Int>> seen;
  json alcoves = json::array();
  for (const auto &w : all_perms(c.n)) {
    auto x = restricted_lift(PermTuple(std::vector<Perm>{w}));
    if (seen.insert(alcove_key(x)).second) alcoves.push_back(to_json(x));
  }
  std::size_t count = restricted_alcove_count(c.n);
  r.data["count"] = count;
  r.data["alcoves"] = alcoves;
  Check ch{"restricted alcove count is (n-1)!", count == factorial(c.n - 1) && seen.size() == count,
           json{{"count", count}, {"expected", factorial(c.n - 1)}}, std::nullopt};
  if (!ch.pass) ch.counterexample = json{{"n", c.n}, {"count", count}};
  r.checks.push_back(ch);
}

auto cmd_alcoves_special(const RunConfig &c, Report &r) {
  auto count = enumerate_special(c.n, c.f);
  r.data["count"] = count.special_classes;
  r.data["total_classes"] = count.total_classes;
  r.data["special_tuples"] = count.special_tuples;
  r.data["total_tuples"] = count.total_tuples;
  r.data["proportion"] = rational_string(count.proportion);
  if (c.f == 1) {
    std::size_t want = c.n >= 3 ? factorial(c.n - 2) : 0;
    Check ch{"special class count is (n-2)!", count.special_classes == want,
             json{{"count", count.special_classes}, {"expected", want}}, std::nullopt};
    if (!ch.pass) ch.counterexample = json{{"n", c.n}, {"count", count.special_classes}};
    r.checks.push_back(ch);
  }
  if (c.n >= 3) {
    Rational want = 1 - rational_pow(Rational(c.n - 2, c.n - 1), c.f);
    Check ch{"special proportion is 1-((n-2)/(n-1))^f", count.proportion == want,
             json{{"proportion", rational_string(count.proportion)}, {"expected", rational_string(want)}}, std::nullopt};
    if (!ch.pass) ch.counterexample = json{{"n", c.n}, {"f", c.f}};
    r.checks.push_back(ch);
  }
  json pairs = json::array();
  for (const auto &sp : special_pairs(c.n, c.f)) pairs.push_back(pair_json(sp));
  r.data["pairs"] = pairs;
}

auto cmd_shapes_classify(const RunConfig &c, Report &r) {
  Weight eta = Weight::eta(c.n, c.f);
  std::map<std::string, std::size_t> counts{{"extremal", 0}, {"colength-one", 0}, {"deeper", 0}};
  auto adm = admissible_set(eta);
  Tally t("extremal elements have length l(t_eta)");
  Int l_eta = length(ExtAffine::translation(eta));
  for (const auto &x : adm) {
    auto cls = classify_colength(x, eta);
    counts[class_name(cls)] += 1;
    if (cls == ColengthClass::Extremal)
      t.record(length(x) == l_eta, [&] { return json{{"x", to_json(x)}}; });
    if (cls == ColengthClass::ColengthOne)
      t.record(length(x) == l_eta - 1, [&] { return json{{"x", to_json(x)}}; });
  }
  std::size_t want = 1;
  for (int j = 0; j < c.f; ++j) want *= factorial(c.n);
  r.data["admissible"] = adm.size();
  r.data["classes"] = counts;
  Check ch{"extremal count is (n!)^f", counts["extremal"] == want,
           json{{"count", counts["extremal"]}, {"expected", want}}, std::nullopt};
  if (!ch.pass) ch.counterexample = json{{"n", c.n}, {"f", c.f}};
  r.checks.push_back(ch);
  r.checks.push_back(t.done());
}

auto cmd_setup_build(const RunConfig &c, Report &r) {
  Tally t("setup shape contract");
  json setups = json::array();
  Int l_eta = length(ExtAffine::translation(Weight::eta(c.n, 1)));
  for (const auto &s : case_a_setups(c.n, c.f, c.p)) {
    bool ok = s.kase == SpecialCase::A && s.shape_formula && s.shape_prime_formula && s.tau_generic &&
              s.tau_prime_generic && s.presentation_check && s.shape_prime_class == ColengthClass::Extremal &&
              length(star(s.ztilde).component(s.j0)) == l_eta - 1;
    for (int j = 0; j < c.f; ++j)
      ok = ok && s.shape_classes[static_cast<std::size_t>(j)] ==
                     (j == s.j0 ? ColengthClass::ColengthOne : ColengthClass::Extremal);
    t.record(ok, [&] { return setup_json(s); });
    setups.push_back(setup_json(s));
  }
  r.data["setups"] = setups;
  r.checks.push_back(t.done());
}

auto cmd_verify_weyl(const RunConfig &c, Report &r) {
  require(c.f == 1 && c.n <= 4, "verify weyl runs on Adm(2 eta) with n <= 4, f = 1");
  Weight two_eta = Weight::eta(c.n, 1) * 2;
  auto adm = admissible_set(two_eta);
  r.data["admissible"] = adm.size();

  Tally len("length equals Coxeter distance");
  std::map<ExtAffine, std::unordered_map<ExtAffine, Int, ExtAffineHash>> balls;
  Int max_len = length(ExtAffine::translation(two_eta));
  for (const auto &x : adm) {
    ExtAffine omega = reduced_word(x).omega;
    auto it = balls.find(omega);
    if (it == balls.end()) it = balls.emplace(omega, coxeter_ball(omega, max_len)).first;
    auto d = it->second.find(x);
    bool ok = d != it->second.end() && d->second == length(x);
    len.record(ok, [&] { return json{{"x", to_json(x)}, {"length", length(x)}}; });
  }
  r.checks.push_back(len.done());

  Tally sub("Bruhat subword test is independent of the reduced word");
  Rng rng(c.seed);
  constexpr int kWords = 5;
  for (int trial = 0; trial < c.trials; ++trial) {
    const auto &x = adm[rng.below(adm.size())];
    const auto &y = adm[rng.below(adm.size())];
    bool ref = bruhat_leq(x, y);
    bool ok = true;
    for (int k = 0; k < kWords; ++k) ok = ok && bruhat_leq_word(x, random_reduced_word(y, rng)) == ref;
    sub.record(ok, [&] { return json{{"x", to_json(x)}, {"y", to_json(y)}}; });
  }
  r.checks.push_back(sub.done(json{{"words_per_pair", kWords}}));

  Tally sup("optimal superadditivity");
  Tally res("restricted iff m vanishes on simple roots");
  for (const auto &x : adm) {
    for (int i = 0; i < c.n; ++i)
      for (int k = 0; k < c.n; ++k)
        for (int l = 0; l < c.n; ++l) {
          if (i == k || k == l || i == l) continue;
          Int m1 = m_value(x, 0, Root{i, k}), m2 = m_value(x, 0, Root{k, l}), m12 = m_value(x, 0, Root{i, l});
          sup.record(m1 + m2 <= m12 && m12 <= m1 + m2 + 1, [&] {
            return json{{"x", to_json(x)}, {"alpha1", root_name(Root{i, k})}, {"alpha2", root_name(Root{k, l})}};
          });
        }
    bool simple_zero = true;
    for (int i = 0; i + 1 < c.n; ++i) simple_zero = simple_zero && m_value(x, 0, Root{i, i + 1}) == 0;
    res.record(simple_zero == is_restricted(x), [&] { return json{{"x", to_json(x)}}; });
  }
  r.checks.push_back(sup.done());
  r.checks.push_back(res.done());
}

auto cmd_verify_minors(const RunConfig &c, Report &r) {
  require(c.n >= 3, "verify minors needs n >= 3");
  Fq field(c.p);
  Rng rng(c.seed);
  Tally t("minor identities");
  std::set<int> eps;
  for (int trial = 0; trial < c.trials; ++trial) {
    std::map<Root, Fq::Elem> a;
    for (Root b : negative_roots(c.n)) a[b] = field.random(rng);
    for (int i = 2; i <= c.n - 1; ++i) {
      auto mi = minor_identities(field, a, 0, c.n - 1, i);
      eps.insert(mi.epsilon);
      Fq::Elem signed_path = mi.epsilon > 0 ? mi.path_form : field.neg(mi.path_form);
      bool ok = mi.direct == mi.recursive && mi.direct == signed_path && mi.x_direct == mi.x_path;
      t.record(ok, [&] { return json{{"i", i}, {"a", values_json(field, a)}}; });
    }
  }
  r.checks.push_back(t.done(json{{"epsilon", std::vector<int>(eps.begin(), eps.end())}}));
}

auto cmd_verify_z(const RunConfig &c, Report &r) {
  require(c.f == 1, "verify z runs at f = 1");
  Fq field(c.p);
  Rng rng(c.seed);
  Tally formula("symbolic Z equals direct evaluation");
  Tally absent("simple-chain monomial is absent");
  Tally locus("Z vanishes on the simple-root locus");
  int positive = 0;
  double worst_single = 0;
  for (const auto &s : case_a_setups(c.n, 1, c.p)) {
    ChartData d = chart_data(s);
    auto poly = z_polynomial(field, d);
    for (int trial = 0; trial < c.trials; ++trial) {
      std::map<Root, Fq::Elem> v;
      for (Root b : negative_roots(c.n)) v[b] = field.random(rng);
      formula.record(evaluate(field, poly, v) == z_minus_alpha(field, d, v),
                     [&] { return json{{"c", values_json(field, v)}}; });
    }
    if (d.m_alpha <= 0) continue;
    ++positive;
    auto chain = simple_chain(d);
    auto fn = [&](const std::map<Root, Fq::Elem> &v) { return z_minus_alpha(field, d, v); };
    absent.record(poly.count(chain) == 0 && multilinear_coefficient(field, chain, fn) == 0,
                  [&] { return json{{"m_alpha", d.m_alpha}}; });
    worst_single = std::max(worst_single, static_cast<double>(chain.size()) / static_cast<double>(field.q()));
    for (int trial = 0; trial < c.trials; ++trial) {
      std::map<Root, Fq::Elem> v;
      for (Root b : chain) v[b] = field.random(rng);
      locus.record(fn(v) == 0, [&] { return json{{"c", values_json(field, v)}}; });
    }
  }
  r.data["pairs_with_positive_m"] = positive;
  r.checks.push_back(formula.done());
  r.checks.push_back(absent.done());
  // Schwartz-Zippel: a nonzero restriction of degree d survives one sample with probability <= d/q.
  double log_bound = positive == 0 ? 0.0 : c.trials * std::log10(worst_single);
  r.checks.push_back(locus.done(json{{"single_sample_bound", worst_single}, {"log10_miss_probability_bound", log_bound}}));
}

auto cmd_verify_partition(const RunConfig &c, Report &r) {
  Tally t("partition lemma");
  for (const auto &sp : special_pairs(c.n, c.f)) {
    auto res = partition_lemma_check(restricted_lift(sp.u), restricted_lift(sp.w), sp.j0);
    t.record(res.precondition && res.holds, [&] {
      json j = pair_json(sp);
      j["precondition"] = res.precondition_message;
      return j;
    });
  }
  r.checks.push_back(t.done());
}

auto cmd_verify_nabla(const RunConfig &c, Report &r) {
  require(c.f == 1, "verify nabla runs at f = 1");
  Fq field(c.p);
  Rng rng(c.seed);
  Tally nab("monodromy condition after solving");
  Tally cell("chart lands in the cell of ztilde");
  for (const auto &s : case_a_setups(c.n, 1, c.p)) {
    ChartData d = chart_data(s);
    ExtAffine z = s.ztilde.component(s.j0);
    Int prec = 8 * c.n * (2 + d.m_alpha);
    for (int trial = 0; trial < c.trials; ++trial) {
      std::map<Root, Fq::Elem> top;
      for (Root b : negative_roots(c.n)) top[b] = field.random(rng);
      ChartPoint pt = nabla_solve(field, d, top);
      nab.record(chart_nabla_ok(pt, prec), [&] { return json{{"top", values_json(field, top)}}; });
      auto bc = affine_bruhat_decompose(build_Vc_matrix(pt, prec));
      cell.record(bc.nu == z.nu.row(0) && bc.w == z.w[0], [&] { return json{{"top", values_json(field, top)}}; });
    }
  }
  r.checks.push_back(nab.done());
  r.checks.push_back(cell.done());
}

auto cmd_verify_bruhat(const RunConfig &c, Report &r) {
  require(c.n >= 2, "verify bruhat needs n >= 2");
  Fq field(c.p);
  Rng rng(c.seed);
  Tally t("affine Bruhat cell is invariant under Iwahori bi-multiplication");
  for (int trial = 0; trial < c.trials; ++trial) {
    int n = static_cast<int>(rng.range(2, c.n));
    auto perms = all_perms(n);
    Perm w = perms[rng.below(perms.size())];
    std::vector<Int> nu(static_cast<std::size_t>(n));
    for (auto &x : nu) x = rng.range(-2, 2);
    Int prec = default_precision(n, 4);
    auto mono = LoopMatrix::monomial(&field, nu, w, prec);
    auto a = random_iwahori(&field, n, 2, prec, rng) * mono * random_iwahori(&field, n, 2, prec, rng);
    auto bc = affine_bruhat_decompose(a);
    t.record(bc.nu == nu && bc.w == w, [&] { return json{{"nu", nu}, {"w", perm_json(w)}}; });
  }
  r.checks.push_back(t.done());
}

auto witness_json(const Witness &w) -> json {
  const Fq &field = *w.field;
  json j;
  j["q"] = w.q;
  j["modulus"] = w.modulus;
  j["m_alpha"] = w.branch_m;
  json coeffs = json::object();
  for (const auto &[b, cs] : w.point.coeffs) {
    json x = json::array();
    for (auto e : cs) x.push_back(elem_json(field, e));
    coeffs[root_name(b)] = x;
  }
  j["coefficients"] = coeffs;
  json minors = json::array();
  for (bool b : w.checks.minors_unit) minors.push_back(b);
  j["checks"] = {{"c_zero", w.checks.c_zero},
                 {"z_zero", w.checks.z_zero},
                 {"a_minus_alpha_unit", w.checks.a_minus_alpha_unit},
                 {"minors_unit", minors},
                 {"schubert_membership", w.checks.schubert_membership},
                 {"nabla", w.checks.nabla},
                 {"open_cell", w.checks.open_cell},
                 {"independence", w.checks.independence}};
  j["f"] = fvalues_json(w.f_sigma);
  json chi = json::array();
  for (auto e : w.chi_sigma_prime.values) chi.push_back(elem_json(field, e));
  j["chi"] = chi;
  return j;
}

auto cmd_witness_triple(const RunConfig &c, Report &r) {
  require(c.f == 1, "witness triple runs at f = 1");
  json out = json::array();
  Tally checks("witness passes every check");
  Tally ss("f_1..f_{n-1} have positive valuation and f_n is a unit");
  for (const auto &s : case_a_setups(c.n, 1, c.p)) {
    Witness w = witness_triple_intersection(s, c.t, c.q_degrees());
    json wj = witness_json(w);
    checks.record(w.checks.all(), [&] { return wj; });
    ss.record(w.f_sigma.is_supersingular() && w.f_sigma.f.back().valuation == Int{0}, [&] { return wj; });
    out.push_back(wj);
  }
  r.data["witnesses"] = out;
  r.checks.push_back(checks.done());
  r.checks.push_back(ss.done());
}

auto cmd_predicates_fi(const RunConfig &c, Report &r) {
  Rng rng(c.seed);
  Tally t("extremal charts are ordinary");
  for (int trial = 0; trial < c.trials; ++trial) {
    auto [charts, w] = random_extremal_chart(c.n, c.f, c.p, rng);
    auto fv = frobenius_minors_f(charts, w);
    t.record(fv.is_ordinary(), [&] { return json{{"trial", trial}, {"f", fvalues_json(fv)}}; });
  }
  r.checks.push_back(t.done());
}

using Handler = void (*)(const RunConfig &, Report &);

auto handlers() -> const std::vector<std::pair<std::string, Handler>> & {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"alcoves enumerate", cmd_alcoves_enumerate},
      {"alcoves special", cmd_alcoves_special},
      {"shapes classify", cmd_shapes_classify},
      {"setup build", cmd_setup_build},
      {"verify weyl", cmd_verify_weyl},
      {"verify minors", cmd_verify_minors},
      {"verify z", cmd_verify_z},
      {"verify partition", cmd_verify_partition},
      {"verify nabla", cmd_verify_nabla},
      {"verify bruhat", cmd_verify_bruhat},
      {"witness triple", cmd_witness_triple},
      {"predicates fi", cmd_predicates_fi},
  };
  return h;
}

auto csv_field(const std::string &s) -> std::string {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

} // namespace

auto RunConfig::q_degrees() const -> std::vector<int> {
  Int cap = q_max > 0 ? q_max : p * p * p;
  std::vector<int> out;
  Int q = p;
  for (int k = 1; q <= cap; ++k) {
    out.push_back(k);
    if (q > cap / p) break;
    q *= p;
  }
  return out;
}

void RunConfig::validate() const {
  require(n >= 2, "n must be at least 2");
  require(f >= 1, "f must be at least 1");
  require(is_prime(p), "p must be prime");
  require(trials >= 1, "trials must be at least 1");
  require(format == "json" || format == "csv", "format must be json or csv");
  require(!q_degrees().empty(), "q-max is smaller than p");
}

auto Report::all_pass() const -> bool {
  return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

auto known_commands() -> const std::vector<std::string> & {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto &[name, h] : handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

auto run(const std::string &command, const RunConfig &config) -> Report {
  config.validate();
  auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto &h) { return h.first == command; });
  if (it == handlers().end()) throw usage_error("unknown command: " + command);
  Report r;
  r.command = command;
  r.config = json{{"n", config.n},       {"f", config.f},   {"p", config.p},
                  {"q_max", config.q_max}, {"trials", config.trials}, {"seed", config.seed},
                  {"t", config.t}};
  r.data = json::object();
  auto start = std::chrono::steady_clock::now();
  it->second(config, r);
  if (config.timing)
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

auto emit_report(const Report &report, Format format) -> std::string {
  if (format == Format::CsvSummary) {
    std::string out = "check,pass,cases,failures\n";
    for (const auto &c : report.checks) {
      auto num = [&](const char *k) { return c.detail.contains(k) ? c.detail[k].dump() : std::string(); };
      out += csv_field(c.name) + "," + (c.pass ? "true" : "false") + "," + num("cases") + "," + num("failures") + "\n";
    }
    return out;
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = report.command;
  j["config"] = report.config;
  j["pass"] = report.all_pass();
  json checks = json::array();
  for (const auto &c : report.checks) {
    json x{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
    if (c.counterexample) x["counterexample"] = *c.counterexample;
    checks.push_back(x);
  }
  j["checks"] = checks;
  j["data"] = report.data.is_null() ? json::object() : report.data;
  if (report.seconds) j["seconds"] = *report.seconds;
  return j.dump(2) + "\n";
}

auto merge_config_file(RunConfig base, const nlohmann::json &file) -> RunConfig {
  require(file.is_object(), "config file must hold a JSON object");
  static const std::set<std::string> keys{"n", "f", "p", "q_max", "trials", "seed", "t", "out", "format", "timing"};
  for (const auto &[k, v] : file.items()) require(keys.count(k) == 1, "unknown config key: " + k);
  try {
    if (file.contains("n")) base.n = file["n"].get<int>();
    if (file.contains("f")) base.f = file["f"].get<int>();
    if (file.contains("p")) base.p = file["p"].get<Int>();
    if (file.contains("q_max")) base.q_max = file["q_max"].get<Int>();
    if (file.contains("trials")) base.trials = file["trials"].get<int>();
    if (file.contains("seed")) base.seed = file["seed"].get<std::uint64_t>();
    if (file.contains("t")) base.t = file["t"].get<Int>();
    if (file.contains("out")) base.out = file["out"].get<std::string>();
    if (file.contains("format")) base.format = file["format"].get<std::string>();
    if (file.contains("timing")) base.timing = file["timing"].get<bool>();
  } catch (const nlohmann::json::exception &e) {
    throw usage_error(std::string("bad config value: ") + e.what());
  }
  return base;
}

auto to_json(const Weight &x) -> json { return x.rows(); }

auto to_json(const ExtAffine &x) -> json {
  json w = json::array();
  for (const auto &p : x.w.perms()) w.push_back(perm_json(p));
  return json{{"nu", to_json(x.nu)}, {"w", w}};
}

auto root_name(Root r) -> std::string { return "e" + std::to_string(r.i + 1) + "-e" + std::to_string(r.k + 1); }

} // namespace alcove::cli
