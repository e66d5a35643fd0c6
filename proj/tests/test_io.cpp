#include "doctest.h"

#include "algebras.hpp"
#include "fkit/verify.hpp"

using namespace fkit;
using fkit::testing::zoo;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F5 = FieldDescriptor::prime(5);

template <class S>
void element_round_trips(const FieldDescriptor& f, std::uint64_t seed) {
  Rng rng(seed);
  for (const auto& alg : zoo<S>(f)) {
    for (int i = 0; i < 20; ++i) {
      auto v = random_w(*alg, rng);
      // through text, as the CLI would see it
      auto back = w_from_json(json::parse(w_to_json(v).dump()), *alg);
      CHECK(back == v);
      auto w = random_word(*alg, rng);
      auto w2 = word_from_json(json::parse(word_to_json(w).dump()), *alg);
      CHECK(apply_word(w2, v) == apply_word(w, v));
    }
  }
}

}  // namespace

TEST_CASE("field and algebra specs round trip") {
  for (std::string s : {"Q", "Fp:5", "Fp:101", "Fp2:5:2"}) {
    CHECK(field_spec(parse_field_spec(s)) == s);
    CHECK(field_spec(field_from_json(field_to_json(parse_field_spec(s)))) == s);
  }
  for (std::string s : {"unarion", "quaternion:1,1", "octonion-split", "binarion-quadratic:2"})
    CHECK(algebra_spec(parse_algebra_spec(s)) == s);
  CHECK_THROWS_AS(parse_field_spec("Fp:4"), InvalidParameter);
  CHECK_THROWS_AS(parse_field_spec("R"), ParseError);
  CHECK_THROWS_AS(parse_algebra_spec("sedenion"), ParseError);
}

TEST_CASE("elements and words round trip through JSON") {
  element_round_trips<Rational>(Q, 1);
  element_round_trips<Fp>(F5, 2);
}

TEST_CASE("malformed element input is a parse error") {
  auto alg = CompositionAlgebra<Rational>::unarion(Q);
  CHECK_THROWS_AS(w_from_json(json::array(), *alg), ParseError);
  CHECK_THROWS_AS(scalar_from_json<Rational>(json(1.5), Q), ParseError);
  CHECK_THROWS_AS(atom_from_json(json{{"atom", "twist"}}, *alg), ParseError);
  CHECK_THROWS_AS(atom_from_json(json{{"atom", "s"}, {"lambda", "0"}}, *alg), InvalidParameter);
}

TEST_CASE("omitted components are zero and scalars stand for multiples of e") {
  auto H = CompositionAlgebra<Rational>::quaternion(Rational(-1), Rational(-1), Q);
  auto v = w_from_json(json::parse(R"({"a": 1, "c": {"x": [0, "1/2", [0, 1, 0, 0]]}})"), *H);
  CHECK(v.a == Rational(1));
  CHECK(v.d == Rational(0));
  CHECK(v.b == jordan_zero(*H));
  CHECK(v.c.c[0] == Rational(0));
  CHECK(v.c.x[1] == Rational(1, 2) * H->one().v);
  CHECK(v.c.x[2] == H->basis(1).v);
  CHECK_THROWS_AS(w_from_json(json::parse(R"({"a": 1, "e": 2})"), *H), ParseError);
  CHECK_THROWS_AS(jordan_from_json(json::parse(R"({"c": [1, 2]})"), *H), ParseError);
}

TEST_CASE("every verify suite passes at a small trial count") {
  for (const auto& name : suite_names()) {
    if (name == "all") continue;
    SuiteDescriptor d;
    d.name = name;
    d.trials = 5;
    d.seed = 3;
    d.fields = {F5};
    auto r = run_suite(d);
    CAPTURE(name);
    CHECK(r.pass());
    CHECK(!r.checks.empty());
    auto j = suite_report_to_json(r);
    CHECK(j.dump().find(name) != std::string::npos);
  }
  SuiteDescriptor bad;
  bad.name = "no-such-suite";
  CHECK_THROWS_AS(run_suite(bad), ParseError);
}
