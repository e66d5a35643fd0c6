// fkit: command-line front end.
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage or parse
// error, 3 domain error or size overflow.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "fkit/verify.hpp"

using namespace fkit;

namespace {

struct Options {
  std::string field = "Q";
  std::string algebra;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  int workers = default_workers();
  std::string out;
  std::string input;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--field", o.field, "Q, Fp:<p> or Fp2:<p>:<eps>");
  app->add_option("--algebra", o.algebra, "tag[:params], e.g. quaternion:1,1");
  app->add_option("--trials", o.trials, "trial count (suite default if omitted)");
  app->add_option("--seed", o.seed, "random seed");
  app->add_flag("--exhaustive", o.exhaustive, "exhaustive scans where feasible");
  app->add_option("--workers", o.workers, "worker threads (default FKIT_WORKERS or 1)")->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "write the report to this file (.csv for CSV)");
  app->add_option("--input", o.input, "JSON text, a file path, or - for stdin");
}

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

/// Inline JSON, a file path, or "-" for stdin.
json read_json(const std::string& text, const char* what) {
  std::string body = text;
  if (text == "-") {
    body = slurp(std::cin);
  } else if (!text.empty() && text.front() != '{' && text.front() != '[' && std::filesystem::exists(text)) {
    std::ifstream f(text);
    body = slurp(f);
  }
  if (body.empty()) throw ParseError(std::string("missing ") + what);
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON in ") + what + ": " + e.what());
  }
}

void emit(const json& j, const Options& o) {
  std::cout << j.dump(2) << '\n';
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw ParseError("cannot write " + o.out);
    f << j.dump(2) << '\n';
  }
}

/// Field and algebra from the input document when present, else the flags.
struct Setup {
  FieldDescriptor field;
  AlgebraSpec algebra;
};

Setup resolve(const Options& o, const json* doc, AlgebraTag fallback = AlgebraTag::unarion) {
  Setup s{parse_field_spec(o.field), AlgebraSpec{fallback, {}}};
  if (!o.algebra.empty()) s.algebra = parse_algebra_spec(o.algebra);
  if (doc && doc->is_object()) {
    if (doc->contains("field")) s.field = field_from_json(doc->at("field"));
    if (doc->contains("algebra")) s.algebra = algebra_spec_from_json(doc->at("algebra"), &s.field);
  }
  return s;
}

// ---------------------------------------------------------------------------

template <class S>
json compute(const std::string& what, const json& doc, const CompositionAlgebra<S>& alg, const std::string& method) {
  // A single argument may be given bare: {"c": [...], "x": [...]} or {"a": ..., ...}.
  const bool bare_jordan = doc.contains("c") || (doc.contains("x") && doc.at("x").is_array());
  const bool bare_w = doc.contains("a") || doc.contains("b") || doc.contains("c") || doc.contains("d");
  auto jordan_arg = [&](const char* key) {
    if (std::string(key) == "x" && bare_jordan) return jordan_from_json(doc, alg);
    if (doc.contains(key)) return jordan_from_json(doc.at(key), alg);
    throw ParseError(std::string("input needs a Jordan element \"") + key + "\"");
  };
  auto w_arg = [&](const char* key) {
    if (std::string(key) == "v" && bare_w) return w_from_json(doc, alg);
    if (doc.contains(key)) return w_from_json(doc.at(key), alg);
    throw ParseError(std::string("input needs a Freudenthal element \"") + key + "\"");
  };
  json r;
  if (what == "norm") r["norm"] = scalar_to_json(jordan_norm(jordan_arg("x")));
  else if (what == "trace") r["trace"] = scalar_to_json(jordan_trace(jordan_arg("x")));
  else if (what == "sharp") r["sharp"] = jordan_to_json(sharp(jordan_arg("x")));
  else if (what == "cross") r["cross"] = jordan_to_json(cross(jordan_arg("x"), jordan_arg("y")));
  else if (what == "rank") r["rank"] = rank_jordan(jordan_arg("x"));
  else if (what == "quartic") r["q"] = scalar_to_json(quartic(w_arg("v")));
  else if (what == "symplectic") r["symplectic"] = scalar_to_json(symplectic(w_arg("v"), w_arg("w")));
  else if (what == "flat") r["flat"] = w_to_json(flat(w_arg("v")));
  else if (what == "rankw") {
    RankMethod m = RankMethod::fast;
    if (method == "reference") m = RankMethod::reference;
    else if (method != "fast") throw ParseError("--method must be fast or reference");
    r["rank"] = rank_w(w_arg("v"), m);
  } else {
    throw ParseError("unknown computation '" + what + "'");
  }
  return r;
}

template <class S>
json act(const json& word_doc, const json& doc, const CompositionAlgebra<S>& alg, std::uint64_t seed) {
  auto word = word_from_json(word_doc, alg);
  auto v = doc.contains("v") ? w_from_json(doc.at("v"), alg) : w_from_json(doc, alg);
  json r{{"word", word_to_json(word)}, {"input", w_to_json(v)}, {"result", w_to_json(apply_word(word, v))}};
  r["nu"] = scalar_to_json(nominal_factor(word, alg.field()));
  Rng rng(seed);
  r["nu_measured"] = scalar_to_json(similitude_factor(word, alg, rng, 8));
  return r;
}

template <class S>
json fiber(const json& xi_doc, const json* triple_doc, bool count, const CompositionAlgebra<S>& alg, int workers) {
  auto xi = target_from_json(xi_doc, alg.scalars());
  if (triple_doc) {
    auto x = triple_from_json(*triple_doc, alg);
    check_triple(x);
    return {{"xi", w_to_json(xi)},
            {"triple", triple_to_json(x)},
            {"member", fiber_membership(xi, x)},
            {"gram", matrix_to_json<S, 3, 3>(fiber_gram(x))},
            {"triple_trace", scalar_to_json(triple_trace(x))}};
  }
  if (alg.dim() == 2) return fiber_report_to_json(xi, quadratic_fiber_test(xi, alg));
  if (alg.dim() != 4) throw DomainError("fiber queries need dim C = 2 or 4");
  if (xi.is_zero()) {
    if (!alg.field().finite()) throw DomainError("the fiber over 0 is scanned over finite fields only");
    auto rep = rank0_fiber_scan(alg, workers);
    return {{"xi", w_to_json(xi)},
            {"rank1", rep.rank1},
            {"pure_tensors", rep.pure_tensors},
            {"violations", rep.violations},
            {"expected", rep.expected},
            {"pass", rep.ok()}};
  }
  return fiber_report_to_json(xi, rank3_fiber_test(xi, alg, count, workers));
}

template <class S>
json algebra_info(const CompositionAlgebra<S>& alg) {
  json table = json::array();
  for (int i = 0; i < alg.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < alg.dim(); ++j) row.push_back(coords_to_json(alg.mul(alg.basis(i), alg.basis(j)).v));
    table.push_back(row);
  }
  json norm = json::array();
  for (int i = 0; i < alg.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < alg.dim(); ++j)
      row.push_back(scalar_to_json(alg.bilinear(alg.basis(i), alg.basis(j))));
    norm.push_back(row);
  }
  json trace0 = json::array();
  for (const auto& e : alg.trace0_basis()) trace0.push_back(coords_to_json(e.v));
  json j{{"algebra", algebra_to_json(alg)}, {"dim", alg.dim()},       {"labels", alg.labels()},
         {"products", table},               {"bilinear", norm}, {"trace0_basis", trace0},
         {"dim_J", jordan_dim(alg.dim())},  {"dim_W", w_dim(alg.dim())}};
  if (alg.dim() == 4) j["split"] = is_split_quaternionic(alg);
  return j;
}

int run_census(const std::vector<std::string>& args, const Options& o, const std::string& xi_text,
               const std::string& form_text, std::uint64_t samples) {
  if (args.empty()) throw ParseError("census needs a space: jordan, freudenthal, fiber or so3");
  const std::string space = args[0];
  std::string field = o.field, algebra = o.algebra;
  CensusMode mode = CensusMode::exhaustive;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "Q" || a.rfind("Fp:", 0) == 0 || a.rfind("Fp2:", 0) == 0) field = a;
    else if (a == "exhaustive" || a == "sampled" || a == "diagonal-slice" || a == "diagonal_slice") mode = parse_census_mode(a);
    else algebra = a;
  }
  const auto f = parse_field_spec(field);
  if (space == "jordan" || space == "freudenthal") {
    const auto spec = algebra.empty() ? AlgebraSpec{} : parse_algebra_spec(algebra);
    CensusReport rep = with_scalar(f, [&](auto tag) {
      using S = decltype(tag);
      auto alg = build_algebra<S>(spec, f);
      return space == "jordan" ? jordan_census(*alg, mode, samples, o.seed, o.workers)
                               : freudenthal_census(*alg, mode, samples, o.seed, o.workers);
    });
    std::cout << census_to_json(rep).dump(2) << '\n';
    if (!o.out.empty()) {
      std::ofstream out(o.out);
      if (!out) throw ParseError("cannot write " + o.out);
      const bool csv = o.out.size() >= 4 && o.out.substr(o.out.size() - 4) == ".csv";
      out << (csv ? census_to_csv(rep) : census_to_json(rep).dump(2) + "\n");
    }
    return 0;
  }
  if (space == "fiber" || space == "so3") {
    json r = with_scalar(f, [&](auto tag) -> json {
      using S = decltype(tag);
      if constexpr (std::is_same_v<S, Rational>) {
        throw DomainError("census needs a finite field");
      } else {
        if (space == "so3") {
          TernaryForm<S> form;
          if (!form_text.empty()) {
            form = form_from_json<S>(read_json(form_text, "--form"), f);
          } else {
            auto U = CompositionAlgebra<S>::unarion(f);
            form.gram = sym_matrix(target_from_json(read_json(xi_text, "--xi or --form"), *U).c);
          }
          return {{"form", form_to_json(form)}, {"field", field_to_json(f)}, {"so3_order", so3_order(form, f)}};
        }
        const auto spec = algebra.empty() ? AlgebraSpec{AlgebraTag::matrix2x2, {}} : parse_algebra_spec(algebra);
        auto alg = build_algebra<S>(spec, f);
        auto xi = target_from_json(read_json(xi_text, "--xi"), alg->scalars());
        const auto n = fiber_census(xi, *alg, o.workers);
        json j{{"xi", w_to_json(xi)}, {"algebra", algebra_to_json(*alg)}, {"cardinality", n}};
        const Mat3<S> c = sym_matrix(xi.c);
        if (!is_zero(det3(c))) j["so3_order"] = so3_order(TernaryForm<S>{c}, f);
        return j;
      }
    });
    emit(r, o);
    return 0;
  }
  throw ParseError("unknown census space '" + space + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in composition algebras, cubic Jordan algebras and Freudenthal spaces"};
  app.require_subcommand(1);
  Options o;

  std::string what, method = "fast";
  auto* c_compute = app.add_subcommand("compute", "norm|trace|sharp|cross|rank|quartic|symplectic|flat|rankw");
  c_compute->add_option("what", what)->required();
  c_compute->add_option("--method", method, "rankw method: fast or reference");
  add_common(c_compute, o);

  std::string word_text;
  auto* c_act = app.add_subcommand("act", "apply a generator word to an element of W_C");
  c_act->add_option("--word", word_text, "JSON array of atoms")->required();
  add_common(c_act, o);

  std::string xi_text, triple_text, form_text;
  bool count = false;
  auto* c_fiber = app.add_subcommand("fiber", "fiber of F over xi = (1, 0, c, d)");
  c_fiber->add_option("--xi", xi_text, "target: {\"c\": 3x3, \"d\": scalar} or a full element")->required();
  c_fiber->add_option("--triple", triple_text, "test membership of this triple");
  c_fiber->add_flag("--count", count, "count the fiber (finite fields)");
  add_common(c_fiber, o);

  std::string suite;
  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("suite", suite)->required();
  add_common(c_verify, o);

  std::vector<std::string> census_args;
  std::uint64_t samples = 10000;
  auto* c_census = app.add_subcommand("census", "census <jordan|freudenthal|fiber|so3> [algebra] [field] [mode]");
  c_census->add_option("args", census_args)->required();
  c_census->add_option("--xi", xi_text, "fiber target for census fiber");
  c_census->add_option("--form", form_text, "3x3 Gram matrix for census so3");
  c_census->add_option("--samples", samples, "sample count in sampled mode");
  add_common(c_census, o);

  auto* c_info = app.add_subcommand("algebra-info", "structure constants and invariants of an algebra");
  add_common(c_info, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_compute->parsed()) {
      json doc = read_json(o.input, "--input");
      auto s = resolve(o, &doc);
      json r = with_scalar(s.field, [&](auto tag) {
        using S = decltype(tag);
        auto alg = build_algebra<S>(s.algebra, s.field);
        json out = compute<S>(what, doc, *alg, method);
        out["what"] = what;
        out["algebra"] = algebra_to_json(*alg);
        out["input"] = doc;
        return out;
      });
      emit(r, o);
    } else if (c_act->parsed()) {
      json doc = read_json(o.input, "--input");
      json word = read_json(word_text, "--word");
      auto s = resolve(o, &doc);
      json r = with_scalar(s.field, [&](auto tag) {
        using S = decltype(tag);
        auto alg = build_algebra<S>(s.algebra, s.field);
        json out = act<S>(word, doc, *alg, o.seed);
        out["algebra"] = algebra_to_json(*alg);
        return out;
      });
      emit(r, o);
    } else if (c_fiber->parsed()) {
      json xi = read_json(xi_text, "--xi");
      std::optional<json> triple;
      if (!triple_text.empty()) triple = read_json(triple_text, "--triple");
      auto s = resolve(o, nullptr, AlgebraTag::matrix2x2);
      json r = with_scalar(s.field, [&](auto tag) {
        using S = decltype(tag);
        auto alg = build_algebra<S>(s.algebra, s.field);
        json out = fiber<S>(xi, triple ? &*triple : nullptr, count, *alg, o.workers);
        out["algebra"] = algebra_to_json(*alg);
        return out;
      });
      emit(r, o);
    } else if (c_verify->parsed()) {
      SuiteDescriptor d;
      d.name = suite;
      d.trials = o.trials;
      d.seed = o.seed;
      d.exhaustive = o.exhaustive;
      d.workers = o.workers;
      if (c_verify->count("--field")) d.fields = {parse_field_spec(o.field)};
      if (!o.algebra.empty()) d.algebras = {parse_algebra_spec(o.algebra)};
      auto rep = run_suite(d);
      emit(suite_report_to_json(rep), o);
      std::cerr << suite << ": " << (rep.pass() ? "pass" : "FAIL") << " (seed " << o.seed << ")\n";
      return rep.pass() ? 0 : 1;
    } else if (c_census->parsed()) {
      return run_census(census_args, o, xi_text, form_text, samples);
    } else if (c_info->parsed()) {
      auto s = resolve(o, nullptr);
      json r = with_scalar(s.field, [&](auto tag) {
        using S = decltype(tag);
        return algebra_info(*build_algebra<S>(s.algebra, s.field));
      });
      emit(r, o);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
