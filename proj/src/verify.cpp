#include "fkit/verify.hpp"

#include <chrono>
#include <functional>
#include <map>

namespace fkit {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<std::string> kSuites = {
    "composition-law", "adjoint",          "cross-duality", "sextic",      "rank1-special",
    "rank1-criterion", "similitude",       "conjugation",   "flat-duality", "fiber-cardinality",
    "rank0-fiber",     "dimensions",       "rank-invariance", "quadform",   "all"};

std::uint64_t default_trials(const std::string& suite) {
  if (suite == "fiber-cardinality") return 4;
  if (suite == "rank0-fiber" || suite == "dimensions") return 1;
  if (suite == "rank1-criterion" || suite == "rank-invariance" || suite == "rank1-special") return 200;
  return 1000;
}

std::vector<FieldDescriptor> default_fields(const std::string& suite) {
  if (suite == "fiber-cardinality") return {FieldDescriptor::prime(5), FieldDescriptor::prime(7)};
  if (suite == "rank0-fiber") return {FieldDescriptor::prime(5)};
  return {FieldDescriptor::rationals(), FieldDescriptor::prime(5)};
}

std::vector<AlgebraSpec> default_algebras(const std::string& suite) {
  auto spec = [](AlgebraTag t) { return AlgebraSpec{t, {}}; };
  if (suite == "sextic" || suite == "fiber-cardinality")
    return {spec(AlgebraTag::quaternion), spec(AlgebraTag::matrix2x2)};
  if (suite == "rank0-fiber") return {spec(AlgebraTag::matrix2x2)};
  return {spec(AlgebraTag::unarion),   spec(AlgebraTag::binarion_split), spec(AlgebraTag::binarion_quadratic),
          spec(AlgebraTag::quaternion), spec(AlgebraTag::matrix2x2),     spec(AlgebraTag::octonion),
          spec(AlgebraTag::octonion_split)};
}

/// Calls fn(values) for every point of values^m, first coordinate fastest.
template <class S, class F>
void for_each_point(const std::vector<S>& values, int m, F&& fn) {
  const std::size_t q = values.size();
  std::vector<std::size_t> idx(m, 0);
  std::vector<S> point(m, values[0]);
  for (;;) {
    fn(point);
    int i = 0;
    for (; i < m; ++i) {
      if (++idx[i] < q) {
        point[i] = values[idx[i]];
        break;
      }
      idx[i] = 0;
      point[i] = values[0];
    }
    if (i == m) return;
  }
}

struct Context {
  const SuiteDescriptor& suite;
  std::uint64_t trials;
  SuiteReport& report;
};

/// One check: accumulate trials, keep the first counterexample.
struct Tally {
  CheckResult r;
  Clock::time_point t0 = Clock::now();
  void record(bool ok, const std::function<json()>& witness) {
    ++r.trials;
    if (!ok && r.failures++ == 0) r.counterexample = witness();
  }
  void finish(SuiteReport& rep) {
    r.seconds = since(t0);
    rep.checks.push_back(std::move(r));
  }
};

template <class S>
Tally start(const std::string& check, const std::string& statement, const CompositionAlgebra<S>* alg,
            const FieldDescriptor& f) {
  Tally t;
  t.r.check = check;
  t.r.statement = statement;
  t.r.field = field_spec(f);
  if (alg) {
    AlgebraSpec s{alg->tag(), {}};
    for (const auto& p : alg->params()) s.params.push_back(to_string(p));
    t.r.algebra = algebra_spec(s);
  }
  return t;
}

// Elements of every rank: representatives moved by random words, random
// elements, and perturbed rank-one elements.
template <class S>
WElem<S> mixed_element(const CompositionAlgebra<S>& alg, Rng& rng, std::uint64_t t) {
  switch (t % 4) {
    case 0: return apply_word(random_word(alg, rng, 3), special_rank1(random_jordan(alg, rng)));
    case 1: return apply_word(random_word(alg, rng, 4), rank_representative(alg, static_cast<int>(rng() % 5)));
    case 2: return random_w(alg, rng);
    default: {
      auto v = special_rank1(random_jordan(alg, rng));
      if (rng() % 2) {
        v.d += alg.one_scalar();
      } else {
        v.c.c[rng() % 3] += alg.one_scalar();
      }
      return v;
    }
  }
}

template <class S>
bool criterion_with_levis(const WElem<S>& v, Rng& rng, int levis) {
  // Conditions (1), (2) and the identity Levi first; the sample only matters
  // when those pass.
  if (!rank1_criterion(v, std::vector<Levi<S>>{})) return false;
  return rank1_criterion(v, random_levis(v.algebra(), levis, rng));
}

// ---------------------------------------------------------------------------

template <class S>
void suite_composition(const Context& cx, const CompositionAlgebra<S>& alg) {
  const auto& f = alg.field();
  const bool exhaustive = cx.suite.exhaustive && f.finite() && alg.dim() <= 2;
  auto t = start("composition-law", "n(xy) = n(x) n(y)", &alg, f);
  auto rep = verify_composition_law(alg, exhaustive, cx.trials, cx.suite.seed);
  t.r.trials = rep.checked;
  t.r.failures = rep.failures;
  if (!rep.ok()) t.r.counterexample = rep.counterexample;
  t.r.details = {{"exhaustive", exhaustive}};
  t.finish(cx.report);

  // Tr(xy) = -B(x, y) holds on the trace-zero part; for general x, y the
  // identity is Tr(xy) = B(x, conj y), so only a count is reported there.
  auto u = start("trace-form", "Tr(xy) = -B(x, y) for x, y in C0", &alg, f);
  const auto basis = alg.trace0_basis();
  Rng rng(cx.suite.seed ^ 0x7f4a7c15u);
  auto random_trace0 = [&] {
    Coords<S> v = Coords<S>::Constant(alg.dim(), alg.zero_scalar());
    for (const auto& e : basis) v += FieldTraits<S>::random(f, rng) * e.v;
    return alg.element(v);
  };
  std::uint64_t general_differ = 0, general_conj_fail = 0;
  for (std::uint64_t i = 0; i < cx.trials; ++i) {
    const auto x = random_trace0(), y = random_trace0();
    u.record(alg.trace(x * y) == -alg.bilinear(x, y),
             [&] { return json{{"x", coords_to_json(x.v)}, {"y", coords_to_json(y.v)}}; });
    const auto a = random_element(alg, rng), b = random_element(alg, rng);
    const S tr = alg.trace(a * b);
    if (tr != -alg.bilinear(a, b)) ++general_differ;
    if (tr != alg.bilinear(a, alg.conj(b))) ++general_conj_fail;
  }
  u.r.details = {{"general_pairs", cx.trials},
                 {"general_pairs_where_minus_B_differs", general_differ},
                 {"general_pairs_where_B_conj_differs", general_conj_fail}};
  if (general_conj_fail) ++u.r.failures;
  u.finish(cx.report);
}

template <class S>
void suite_adjoint(const Context& cx, const CompositionAlgebra<S>& alg) {
  auto t = start("adjoint", "X## = N(X) X", &alg, alg.field());
  Rng rng(cx.suite.seed);
  for (std::uint64_t i = 0; i < cx.trials; ++i) {
    auto X = random_jordan(alg, rng);
    t.record(sharp(sharp(X)) == jordan_norm(X) * X, [&] { return jordan_to_json(X); });
  }
  t.finish(cx.report);
}

template <class S>
void suite_cross(const Context& cx, const CompositionAlgebra<S>& alg) {
  auto t = start("cross-duality", "<X x Y, Z> = (X, Y, Z) and (X, X, X) = 6 N(X)", &alg, alg.field());
  Rng rng(cx.suite.seed);
  const S six = alg.scalar(6);
  for (std::uint64_t i = 0; i < cx.trials; ++i) {
    auto X = random_jordan(alg, rng), Y = random_jordan(alg, rng), Z = random_jordan(alg, rng);
    bool ok = trace_pairing(cross(X, Y), Z) == trilinear(X, Y, Z) && trilinear(X, X, X) == six * jordan_norm(X);
    t.record(ok, [&] {
      return json{{"X", jordan_to_json(X)}, {"Y", jordan_to_json(Y)}, {"Z", jordan_to_json(Z)}};
    });
  }
  t.finish(cx.report);
}

template <class S>
void suite_sextic(const Context& cx, const CompositionAlgebra<S>& alg) {
  if (alg.dim() != 4) return;
  const auto& f = alg.field();
  auto t = start("sextic", "-4 det(Tr(x_i x_j)/2) = Tr(x1 x2 x3)^2", &alg, f);
  auto check = [&](const Triple<S>& x) {
    t.record(sextic_check(x).equal, [&] { return triple_to_json(x); });
  };
  if (cx.suite.exhaustive && f.finite()) {
    detail::checked_power(f.order(), 9, kExhaustiveLimit, "(C0)^3");
    const auto c0 = trace0_elements(alg);
    for (const auto& a : c0)
      for (const auto& b : c0)
        for (const auto& c : c0) check(Triple<S>{a, b, c});
    t.r.details = {{"exhaustive", true}};
  } else {
    Rng rng(cx.suite.seed);
    const auto basis = alg.trace0_basis();
    for (std::uint64_t i = 0; i < cx.trials; ++i) {
      Triple<S> x{alg.zero(), alg.zero(), alg.zero()};
      for (auto& xi : x)
        for (const auto& e : basis) xi.v += FieldTraits<S>::random(f, rng) * e.v;
      check(x);
    }
  }
  t.finish(cx.report);
}

template <class S>
void suite_rank1_special(const Context& cx, const CompositionAlgebra<S>& alg) {
  const auto& f = alg.field();
  {
    auto t = start("rank1-special", "rank (1, b, b#, N(b)) = 1", &alg, f);
    Rng rng(cx.suite.seed);
    for (std::uint64_t i = 0; i < cx.trials; ++i) {
      auto b = random_jordan(alg, rng);
      auto v = special_rank1(b);
      t.record(rank_w(v) == 1, [&] { return w_to_json(v); });
    }
    t.finish(cx.report);
  }
  {
    // (1, b, c, d) = n(b) (1, 0, c', d') with c = c' + b#, d = d' + Tr(c' * b) + N(b),
    // so the converse reduces to rank (1, 0, c', d') = 1 iff c' = 0 and d' = 0.
    auto t = start("rank1-special-converse", "rank (1, b, c, d) = 1 only if (c, d) = (b#, N(b))", &alg, f);
    Rng rng(cx.suite.seed + 1);
    for (std::uint64_t i = 0; i < cx.trials; ++i) {
      auto b = random_jordan(alg, rng);
      auto v = special_rank1(b);
      auto dc = random_jordan(alg, rng);
      S dd = FieldTraits<S>::random(f, rng);
      if (dc.is_zero() && is_zero(dd)) dd = alg.one_scalar();
      v.c += dc;
      v.d += dd;
      t.record(rank_w(v) != 1, [&] { return w_to_json(v); });
    }
    t.finish(cx.report);
  }
  if (!cx.suite.exhaustive || !f.finite() || alg.dim() > 2) return;
  const auto values = enumerate<S>(f);
  const S one = alg.one_scalar(), zero = alg.zero_scalar();
  {
    auto t = start("rank1-special-slice", "diagonal slice (1, b, c, d): rank 1 iff (c, d) = (b#, N(b))", &alg, f);
    for_each_point(values, 7, [&](const std::vector<S>& p) {
      WElem<S> v{one, jordan_diag(alg, p[0], p[1], p[2]), jordan_diag(alg, p[3], p[4], p[5]), p[6] + zero};
      const bool special = v.c == sharp(v.b) && v.d == jordan_norm(v.b);
      t.record((rank_w(v) == 1) == special, [&] { return w_to_json(v); });
    });
    t.finish(cx.report);
  }
  {
    const int m = jordan_dim(alg.dim()) + 1;
    detail::checked_power(f.order(), m, kExhaustiveLimit, "(1, 0, c, d) slice");
    auto t = start("rank1-special-reduced", "rank (1, 0, c, d) = 1 iff c = 0 and d = 0", &alg, f);
    VecX<S> cc(m - 1);
    for_each_point(values, m, [&](const std::vector<S>& p) {
      for (int i = 0; i + 1 < m; ++i) cc[i] = p[i];
      WElem<S> v{one, jordan_zero(alg), jordan_from_coords(alg, cc), p[m - 1] + zero};
      const bool origin = v.c.is_zero() && is_zero(v.d);
      t.record((rank_w(v) == 1) == origin, [&] { return w_to_json(v); });
    });
    t.finish(cx.report);
  }
}

template <class S>
void suite_rank1_criterion(const Context& cx, const CompositionAlgebra<S>& alg) {
  const auto& f = alg.field();
  constexpr int kLevis = 64;
  {
    auto t = start("rank1-criterion", "rank-one criterion agrees with the intrinsic rank", &alg, f);
    Rng rng(cx.suite.seed);
    std::uint64_t rank1 = 0;
    for (std::uint64_t i = 0; i < cx.trials; ++i) {
      auto v = mixed_element(alg, rng, i);
      const bool intrinsic = rank_w(v) == 1;
      rank1 += intrinsic;
      t.record(criterion_with_levis(v, rng, kLevis) == intrinsic, [&] { return w_to_json(v); });
    }
    t.r.details = {{"rank1", rank1}, {"levi_samples", kLevis}};
    t.finish(cx.report);
  }
  if (!cx.suite.exhaustive || !f.finite() || alg.dim() > 2) return;
  auto t = start("rank1-criterion-slice", "criterion = intrinsic rank on the diagonal slice", &alg, f);
  detail::checked_power(f.order(), 8, kExhaustiveLimit, "diagonal slice");
  Rng rng(cx.suite.seed + 1);
  const S zero = alg.zero_scalar();
  std::uint64_t rank1 = 0;
  for_each_point(enumerate<S>(f), 8, [&](const std::vector<S>& p) {
    WElem<S> v{p[0], jordan_diag(alg, p[1], p[2], p[3]), jordan_diag(alg, p[4], p[5], p[6]), p[7] + zero};
    const bool intrinsic = rank_w(v) == 1;
    rank1 += intrinsic;
    t.record(criterion_with_levis(v, rng, kLevis) == intrinsic, [&] { return w_to_json(v); });
  });
  t.r.details = {{"rank1", rank1}, {"levi_samples", kLevis}};
  t.finish(cx.report);
}

template <class S>
void suite_similitude(const Context& cx, const CompositionAlgebra<S>& alg) {
  const auto& f = alg.field();
  Rng rng(cx.suite.seed);
  using K = typename Atom<S>::Kind;
  const std::pair<K, const char*> kinds[] = {{K::n, "n(x)"},       {K::nbar, "nbar(x)"}, {K::s, "s_lambda"},
                                             {K::sstar, "s*_lambda"}, {K::involution, "involution"},
                                             {K::levi, "levi"}};
  for (auto [kind, name] : kinds) {
    auto t = start(std::string("similitude-") + name, "<gv, gw> = nu <v, w> and q(gv) = nu^2 q(v)", &alg, f);
    for (std::uint64_t i = 0; i < cx.trials; ++i) {
      Atom<S> atom = Atom<S>::involution();
      switch (kind) {
        case K::n: atom = Atom<S>::n(random_jordan(alg, rng)); break;
        case K::nbar: atom = Atom<S>::nbar(random_jordan(alg, rng)); break;
        case K::s: atom = Atom<S>::s(random_nonzero<S>(f, rng)); break;
        case K::sstar: atom = Atom<S>::sstar(random_nonzero<S>(f, rng)); break;
        case K::levi: atom = Atom<S>::make_levi(random_levi(alg, rng)); break;
        default: break;
      }
      const Word<S> word{atom};
      const S nu = nominal_factor(word, f);
      auto v = random_w(alg, rng), w = random_w(alg, rng);
      auto gv = apply_atom(atom, v), gw = apply_atom(atom, w);
      bool ok = symplectic(gv, gw) == nu * symplectic(v, w) && quartic(gv) == nu * nu * quartic(v);
      t.record(ok, [&] { return json{{"word", word_to_json(word)}, {"v", w_to_json(v)}, {"w", w_to_json(w)}}; });
    }
    t.finish(cx.report);
  }
}

template <class S>
void suite_conjugation(const Context& cx, const CompositionAlgebra<S>& alg) {
  auto t = start("conjugation", "iota n(x) iota^-1 = nbar(-x)", &alg, alg.field());
  Rng rng(cx.suite.seed);
  const auto iota = Atom<S>::involution();
  for (std::uint64_t i = 0; i < cx.trials; ++i) {
    auto x = random_jordan(alg, rng);
    auto v = random_w(alg, rng);
    // iota^-1 = iota^3; words act first atom first
    const Word<S> word{iota, iota, iota, Atom<S>::n(x), iota};
    t.record(apply_word(word, v) == apply_atom(Atom<S>::nbar(-x), v),
             [&] { return json{{"x", jordan_to_json(x)}, {"v", w_to_json(v)}}; });
  }
  t.finish(cx.report);
}

template <class S>
void suite_flat(const Context& cx, const CompositionAlgebra<S>& alg) {
  auto t = start("flat-duality", "<flat v, w> = kappa (v, v, v, w) for one kappa", &alg, alg.field());
  Rng rng(cx.suite.seed);
  std::optional<S> kappa;
  const Word<S> iota{Atom<S>::involution()};
  for (std::uint64_t i = 0; i < cx.trials; ++i) {
    auto v = random_w(alg, rng), w = random_w(alg, rng);
    const S lhs = symplectic(flat(v), w), T = fourlinear_vvvw(v, w);
    if (!kappa && !is_zero(T)) kappa = lhs / T;
    bool ok = kappa ? lhs == *kappa * T : is_zero(lhs);
    ok = ok && flat(apply_word(iota, v)) == apply_word(iota, flat(v));
    t.record(ok, [&] { return json{{"v", w_to_json(v)}, {"w", w_to_json(w)}}; });
  }
  if (kappa) t.r.details = {{"kappa", to_string(*kappa)}};
  t.finish(cx.report);
}

template <class S>
void suite_fiber_cardinality(const Context& cx, const CompositionAlgebra<S>& alg) {
  const auto& f = alg.field();
  if (alg.dim() != 4 || !f.finite()) return;
  auto t = start("fiber-cardinality", "|fiber over (1, 0, c, d)| = |SO(3, c)| = q(q^2 - 1), or 0 when d^2 != -4 det c",
                 &alg, f);
  Rng rng(cx.suite.seed);
  const std::uint64_t q = f.order();
  const auto basis = alg.trace0_basis();
  json sizes = json::array();
  std::uint64_t done = 0;
  for (int attempt = 0; done < cx.trials && attempt < 1000; ++attempt) {
    Triple<S> x{alg.zero(), alg.zero(), alg.zero()};
    for (auto& xi : x)
      for (const auto& e : basis) xi.v += FieldTraits<S>::random(f, rng) * e.v;
    auto xi = F_map(rank1_lift(x));
    const Mat3<S> c = sym_matrix(xi.c);
    if (is_zero(det3(c))) continue;
    ++done;
    const auto n = fiber_census(xi, alg, cx.suite.workers);
    const auto so = so3_order(TernaryForm<S>{c}, f);
    sizes.push_back(n);
    t.record(n == so && so == q * (q * q - 1), [&] { return json{{"xi", w_to_json(xi)}, {"fiber", n}, {"so3", so}}; });
    auto off = xi;
    off.d += alg.one_scalar();
    if (off.d * off.d != alg.scalar(-4) * det3(c)) {
      const auto zero = fiber_census(off, alg, cx.suite.workers);
      t.record(zero == 0, [&] { return json{{"xi", w_to_json(off)}, {"fiber", zero}}; });
    }
  }
  t.r.details = {{"fiber_sizes", sizes}};
  t.finish(cx.report);
}

template <class S>
void suite_rank0(const Context& cx, const CompositionAlgebra<S>& alg) {
  const auto& f = alg.field();
  if (alg.dim() != 4 || !f.finite()) return;
  {
    auto t = start("rank0-fiber", "rank-one elements over 0 are pure tensors x (x) v with x^2 = 0", &alg, f);
    auto rep = rank0_fiber_scan(alg, cx.suite.workers);
    t.r.trials = rep.rank1;
    t.r.failures = rep.violations + (rep.rank1 == rep.expected ? 0 : 1);
    if (!rep.certificate.empty()) t.r.counterexample = rep.certificate;
    t.r.details = {{"null_triples", rep.null_triples}, {"pairs", rep.pairs},         {"rank1", rep.rank1},
                   {"pure_tensors", rep.pure_tensors}, {"expected", rep.expected}};
    t.finish(cx.report);
  }
  auto t = start<S>("nilpotent-pairs", "2x2 beta, gamma with beta^2 = gamma^2 = 0 = beta gamma + gamma beta are proportional",
                    nullptr, f);
  if constexpr (std::is_same_v<S, Fp>) {
    auto rep = nilpotent_pair_oracle<S>(f);
    t.r.trials = rep.pairs;
    t.r.failures = rep.counterexamples;
    t.r.details = {{"nilpotents", rep.nilpotents}, {"anticommuting", rep.anticommuting}};
  }
  t.finish(cx.report);
}

template <class S>
void suite_rank_invariance(const Context& cx, const CompositionAlgebra<S>& alg) {
  auto t = start("rank-invariance", "rank(g v) = rank(v) for generator words g", &alg, alg.field());
  Rng rng(cx.suite.seed);
  std::map<int, std::uint64_t> seen;
  for (std::uint64_t i = 0; i < cx.trials; ++i) {
    auto v = mixed_element(alg, rng, i);
    auto word = random_word(alg, rng);
    const int r = rank_w(v);
    ++seen[r];
    auto gv = apply_word(word, v);
    t.record(rank_w(gv) == r, [&] { return json{{"word", word_to_json(word)}, {"v", w_to_json(v)}}; });
  }
  json by_rank = json::object();
  for (auto [r, n] : seen) by_rank[std::to_string(r)] = n;
  t.r.details = {{"ranks", by_rank}};
  t.finish(cx.report);
}

template <class S>
void run_for_algebra(const std::string& name, const Context& cx, const CompositionAlgebra<S>& alg) {
  if (name == "composition-law") suite_composition(cx, alg);
  else if (name == "adjoint") suite_adjoint(cx, alg);
  else if (name == "cross-duality") suite_cross(cx, alg);
  else if (name == "sextic") suite_sextic(cx, alg);
  else if (name == "rank1-special") suite_rank1_special(cx, alg);
  else if (name == "rank1-criterion") suite_rank1_criterion(cx, alg);
  else if (name == "similitude") suite_similitude(cx, alg);
  else if (name == "conjugation") suite_conjugation(cx, alg);
  else if (name == "flat-duality") suite_flat(cx, alg);
  else if (name == "fiber-cardinality") suite_fiber_cardinality(cx, alg);
  else if (name == "rank0-fiber") suite_rank0(cx, alg);
  else if (name == "rank-invariance") suite_rank_invariance(cx, alg);
}

void suite_dimensions(SuiteReport& rep) {
  Tally t;
  t.r.check = "dimensions";
  t.r.statement = "dim J_C = 3 + 3 dim C and dim W_C = 8 + 6 dim C: 20, 32, 56 for dim C = 2, 4, 8";
  const std::pair<int, int> table[] = {{2, 20}, {4, 32}, {8, 56}};
  auto F5 = FieldDescriptor::prime(5);
  using A = CompositionAlgebra<Fp>;
  const std::pair<A::Ptr, int> algs[] = {{A::binarion_split(F5), 20}, {A::matrix2x2(F5), 32}, {A::octonion_split(F5), 56}};
  for (auto [dim, expect] : table) t.record(w_dim(dim) == expect, [&, dim = dim] { return json{{"dimC", dim}}; });
  for (const auto& [alg, expect] : algs) {
    auto v = w_zero(*alg);
    t.record(w_coords(v).size() == expect && jordan_coords(v.b).size() == 3 + 3 * alg->dim(),
             [&, expect = expect] { return json{{"algebra", std::string(to_string(alg->tag()))}, {"expected", expect}}; });
  }
  t.finish(rep);
}

void suite_quadform(const Context& cx) {
  {
    Tally t;
    t.r.check = "hilbert-reciprocity";
    t.r.statement = "product over all places of (a, b)_v = 1";
    t.r.field = "Q";
    Rng rng(cx.suite.seed);
    auto rnd = [&] {
      long num = static_cast<long>(rng() % 199) - 99;
      if (num == 0) num = 1;
      long den = static_cast<long>(rng() % 40) + 1;
      return Rational(mpq_class(num, den));
    };
    for (std::uint64_t i = 0; i < cx.trials; ++i) {
      Rational a = rnd(), b = rnd();
      int prod = 1;
      for (Place v : relevant_places({a, b})) prod *= hilbert_symbol(a, b, v);
      t.record(prod == 1, [&] { return json{{"a", a.str()}, {"b", b.str()}}; });
    }
    t.finish(cx.report);
  }
  Tally t;
  t.r.check = "ternary-similarity";
  t.r.statement = "<1,1,1> and <1,1,-1> are not similar; split norm forms on C0 are similar";
  t.r.field = "Q";
  const Rational one(1);
  auto I = ternary_diag(one, one, one), H = ternary_diag(one, one, Rational(-1));
  t.record(!ternary_similar(I, H), [] { return json("<1,1,1> ~ <1,1,-1>"); });
  t.record(ternary_similar(I, ternary_diag(Rational(2), Rational(2), Rational(2))), [] { return json("<1,1,1> !~ <2,2,2>"); });
  auto Q = FieldDescriptor::rationals();
  using A = CompositionAlgebra<Rational>;
  auto split = {A::matrix2x2(Q), A::quaternion(one, one, Q), A::quaternion(one, Rational(-3), Q),
                A::quaternion(Rational(2), Rational(7), Q)};
  for (const auto& a : split)
    for (const auto& b : split)
      t.record(ternary_similar(norm_form_on_trace0(*a), norm_form_on_trace0(*b)),
               [&] { return json{{"a", algebra_to_json(*a)}, {"b", algebra_to_json(*b)}}; });
  auto Ham = A::quaternion(Rational(-1), Rational(-1), Q);
  t.record(!ternary_similar(norm_form_on_trace0(*Ham), norm_form_on_trace0(*A::matrix2x2(Q))),
           [] { return json("Hamilton ~ split"); });
  t.record(ternary_similar(norm_form_on_trace0(*Ham), I), [] { return json("Hamilton !~ <1,1,1>"); });
  t.finish(cx.report);
}

void run_one(const std::string& name, const SuiteDescriptor& suite, SuiteReport& report) {
  Context cx{suite, suite.trials ? suite.trials : default_trials(name), report};
  if (name == "dimensions") return suite_dimensions(report);
  if (name == "quadform") return suite_quadform(cx);
  const auto fields = suite.fields.empty() ? default_fields(name) : suite.fields;
  const auto algebras = suite.algebras.empty() ? default_algebras(name) : suite.algebras;
  for (const auto& f : fields)
    with_scalar(f, [&](auto tag) {
      using S = decltype(tag);
      for (const auto& spec : algebras) {
        auto alg = build_algebra<S>(spec, f);
        run_for_algebra<S>(name, cx, *alg);
      }
    });
}

}  // namespace

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

const std::vector<std::string>& suite_names() { return kSuites; }

SuiteReport run_suite(const SuiteDescriptor& suite) {
  if (std::find(kSuites.begin(), kSuites.end(), suite.name) == kSuites.end())
    throw ParseError("unknown suite '" + suite.name + "'");
  SuiteReport report;
  report.suite = suite.name;
  report.seed = suite.seed;
  if (suite.name == "all") {
    for (const auto& n : kSuites)
      if (n != "all") run_one(n, suite, report);
  } else {
    run_one(suite.name, suite, report);
  }
  return report;
}

json suite_report_to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"check", c.check}, {"statement", c.statement}, {"trials", c.trials},
           {"failures", c.failures}, {"pass", c.ok()}, {"seconds", c.seconds}};
    if (!c.field.empty()) j["field"] = c.field;
    if (!c.algebra.empty()) j["algebra"] = c.algebra;
    if (!c.counterexample.is_null()) j["counterexample"] = c.counterexample;
    if (!c.details.is_null()) j["details"] = c.details;
    checks.push_back(j);
  }
  return {{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass()}, {"checks", checks}};
}

}  // namespace fkit
