#include "doctest.h"

#include "algebras.hpp"
#include "fkit/fibers.hpp"

using namespace fkit;
using fkit::testing::zoo;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F5 = FieldDescriptor::prime(5);
const FieldDescriptor F7 = FieldDescriptor::prime(7);

template <class S>
CompElem<S> random_trace0(const CompositionAlgebra<S>& alg, Rng& rng) {
  auto x = random_element(alg, rng);
  return x - alg.embed(alg.scalar_part(x.v));
}

template <class S>
Triple<S> random_triple(const CompositionAlgebra<S>& alg, Rng& rng) {
  return {random_trace0(alg, rng), random_trace0(alg, rng), random_trace0(alg, rng)};
}

// Quaternion units i, j, k = ij.
template <class S>
Triple<S> ijk(const CompositionAlgebra<S>& H) {
  auto i = H.basis(1), j = H.basis(2);
  return {i, j, i * j};
}

// Count triples over xi by testing every point of (C0)^3 directly.
template <class S>
std::uint64_t brute_fiber_count(const WElem<S>& xi, const CompositionAlgebra<S>& alg) {
  const auto c0 = trace0_elements(alg);
  std::uint64_t n = 0;
  for (const auto& a : c0)
    for (const auto& b : c0)
      for (const auto& c : c0)
        if (fiber_membership(xi, Triple<S>{a, b, c})) ++n;
  return n;
}

template <class S>
void restriction_props(const FieldDescriptor& f, int trials, std::uint64_t seed) {
  for (auto alg : zoo<S>(f)) {
    CAPTURE(to_string(alg->tag()));
    Rng rng(seed);
    const auto& F = alg->scalars();
    for (int t = 0; t < trials; ++t) {
      auto w = random_w(F, rng);
      CHECK(F_map(embed_w(w, *alg)) == w);
      CHECK(F_map(w) == w);
      if (alg->dim() == 1) continue;
      auto x = random_triple(*alg, rng), y = random_triple(*alg, rng);
      WElem<S> strips{alg->zero_scalar(), jordan_J(x[0], x[1], x[2]), jordan_J(y[0], y[1], y[2]), alg->zero_scalar()};
      CHECK(F_map(strips).is_zero());
      // F of the lift is (1, 0, c, d) with the fiber conditions
      auto lifted = F_map(rank1_lift(x));
      CHECK(is_normalized_target(lifted));
      CHECK(fiber_membership(lifted, x));
    }
  }
}

}  // namespace

TEST_CASE("restriction map") {
  restriction_props<Fp>(F5, 40, 1);
  restriction_props<Fp>(F7, 40, 2);
  restriction_props<Rational>(Q, 20, 3);
  restriction_props<Fp2>(FieldDescriptor::quadratic_ext(5, 2), 20, 4);
}

TEST_CASE("rank1_lift") {
  auto H = CompositionAlgebra<Rational>::quaternion(Rational(1), Rational(1), Q);
  auto zero = Triple<Rational>{H->zero(), H->zero(), H->zero()};
  CHECK(rank1_lift(zero) == w_make(Rational(1), jordan_zero(*H), jordan_zero(*H), Rational(0)));

  Mat3<Rational> c = Mat3<Rational>::Zero();
  c.diagonal() << 1, 1, -1;
  auto xi = fiber_target(H->scalars(), c, Rational(-2));
  CHECK(F_map(rank1_lift(ijk(*H))) == xi);
  CHECK(fiber_membership(xi, ijk(*H)));
  CHECK_FALSE(fiber_membership(fiber_target(H->scalars(), c, Rational(2)), ijk(*H)));

  for (const auto& f : {F5, F7}) {
    for (auto alg : zoo<Fp>(f)) {
      if (alg->dim() == 1) continue;
      Rng rng(7);
      for (int t = 0; t < 30; ++t) CHECK(rank_w(rank1_lift(random_triple(*alg, rng))) == 1);
    }
  }
  Rng rng(8);
  auto M = CompositionAlgebra<Rational>::matrix2x2(Q);
  for (int t = 0; t < 5; ++t) CHECK(rank_w(rank1_lift(random_triple(*M, rng))) == 1);

  auto bad = ijk(*H);
  bad[0] = H->one();
  CHECK_THROWS_AS(rank1_lift(bad), DomainError);
}

TEST_CASE("membership needs a normalized target") {
  auto H = CompositionAlgebra<Fp>::quaternion(Fp(1, 5), Fp(1, 5), F5);
  auto x = ijk(*H);
  auto xi = F_map(rank1_lift(x));
  CHECK(fiber_membership(xi, x));
  auto shifted = xi;
  shifted.a = Fp(2, 5);
  CHECK_THROWS_AS(fiber_membership(shifted, x), DomainError);
  CHECK_THROWS_AS(fiber_membership(rank1_lift(x), x), DomainError);
  // Gram 0 with d = 1 is never hit: the sextic identity forces Tr(x1x2x3) = 0.
  auto one = fiber_target(H->scalars(), Mat3<Fp>(Mat3<Fp>::Constant(Fp(0, 5))), Fp(1, 5));
  CHECK(brute_fiber_count(one, *H) == 0);
}

TEST_CASE("sextic identity") {
  auto H = CompositionAlgebra<Rational>::quaternion(Rational(1), Rational(1), Q);
  auto r = sextic_check(ijk(*H));
  CHECK(r.lhs == Rational(4));
  CHECK(r.rhs == Rational(4));
  CHECK(r.equal);
  auto dep = ijk(*H);
  dep[2] = Rational(3) * dep[0] - dep[1];
  auto r0 = sextic_check(dep);
  CHECK(is_zero(r0.lhs));
  CHECK(is_zero(r0.rhs));

  Rng rng(11);
  for (auto alg : zoo<Rational>(Q)) {
    if (alg->dim() != 4) continue;
    for (int t = 0; t < 300; ++t) CHECK(sextic_check(random_triple(*alg, rng)).equal);
  }
  for (auto alg : zoo<Fp>(F7)) {
    if (alg->dim() != 4) continue;
    for (int t = 0; t < 300; ++t) CHECK(sextic_check(random_triple(*alg, rng)).equal);
  }
  auto C = CompositionAlgebra<Fp>::binarion_split(F5);
  auto u = C->trace0_basis()[0];
  CHECK_THROWS_AS(sextic_check(Triple<Fp>{u, u, u}), DomainError);
}

TEST_CASE("sextic identity, exhaustive over F5") {
  auto H = CompositionAlgebra<Fp>::quaternion(Fp(1, 5), Fp(1, 5), F5);
  const auto c0 = trace0_elements(*H);
  REQUIRE(c0.size() == 125);
  std::uint64_t failures = 0;
  for (const auto& a : c0)
    for (const auto& b : c0)
      for (const auto& c : c0)
        if (!sextic_check(Triple<Fp>{a, b, c}).equal) ++failures;
  CHECK(failures == 0);
}

TEST_CASE("rank-3 fibers over Q") {
  using A = CompositionAlgebra<Rational>;
  auto H = A::quaternion(Rational(1), Rational(1), Q);
  Mat3<Rational> c = Mat3<Rational>::Zero();
  c.diagonal() << 1, 1, -1;
  auto rep = rank3_fiber_test(fiber_target(H->scalars(), c, Rational(-2)), *H);
  CHECK(rep.status == FiberStatus::nonempty);
  REQUIRE(rep.witness);
  CHECK(fiber_membership(fiber_target(H->scalars(), c, Rational(-2)), *rep.witness));

  auto bad = rank3_fiber_test(fiber_target(H->scalars(), c, Rational(1)), *H);
  CHECK(bad.status == FiberStatus::empty);

  // Hamilton quaternions: n on C0 is definite, so an indefinite c is never a Gram.
  auto Ham = A::quaternion(Rational(-1), Rational(-1), Q);
  CHECK(rank3_fiber_test(fiber_target(Ham->scalars(), c, Rational(2)), *Ham).status == FiberStatus::empty);
  Mat3<Rational> neg = -Mat3<Rational>::Identity();
  auto hrep = rank3_fiber_test(fiber_target(Ham->scalars(), neg, Rational(-2)), *Ham);
  CHECK(hrep.status == FiberStatus::nonempty);
  REQUIRE(hrep.witness);
  CHECK(fiber_membership(fiber_target(Ham->scalars(), neg, Rational(-2)), *hrep.witness));

  Mat3<Rational> degenerate = Mat3<Rational>::Zero();
  degenerate(0, 0) = 1;
  CHECK_THROWS_AS(rank3_fiber_test(fiber_target(H->scalars(), degenerate, Rational(0)), *H), DomainError);
  auto B = A::binarion_split(Q);
  CHECK_THROWS_AS(rank3_fiber_test(fiber_target(B->scalars(), c, Rational(-2)), *B), DomainError);
}

TEST_CASE("rank-3 fibers over F5 and F7") {
  for (const auto& f : {F5, F7}) {
    const std::uint64_t q = f.order();
    for (auto alg : zoo<Fp>(f)) {
      if (alg->dim() != 4) continue;
      CAPTURE(to_string(alg->tag()));
      const auto& F = alg->scalars();
      Rng rng(21);
      int nonempty = 0;
      for (int t = 0; t < 6; ++t) {
        // a random nondegenerate Gram from a random triple
        auto x = random_triple(*alg, rng);
        auto xi = F_map(rank1_lift(x));
        if (is_zero(det3(sym_matrix(xi.c)))) continue;
        auto rep = rank3_fiber_test(xi, *alg, true, 2);
        CHECK(rep.status == FiberStatus::nonempty);
        REQUIRE(rep.cardinality);
        CHECK(*rep.cardinality == q * (q * q - 1));
        CHECK(fiber_membership(xi, *rep.witness));
        // negation carries the fiber over d onto the fiber over -d
        auto flipped = xi;
        flipped.d = -xi.d;
        auto neg = rank3_fiber_test(flipped, *alg, true);
        CHECK(neg.cardinality == rep.cardinality);
        Triple<Fp> mx{-(*rep.witness)[0], -(*rep.witness)[1], -(*rep.witness)[2]};
        CHECK(fiber_membership(flipped, mx));
        // any other d with d^2 != -4 det c is empty
        auto off = xi;
        off.d = xi.d + F.one_scalar();
        if (off.d * off.d != alg->scalar(-4) * det3(sym_matrix(xi.c))) {
          auto e = rank3_fiber_test(off, *alg, true);
          CHECK(e.status == FiberStatus::empty);
          CHECK(e.cardinality == std::uint64_t{0});
        }
        ++nonempty;
      }
      CHECK(nonempty > 0);
    }
  }
}

TEST_CASE("scan_fiber agrees with brute force") {
  auto M = CompositionAlgebra<Fp>::matrix2x2(F5);
  Rng rng(5);
  for (int t = 0; t < 2; ++t) {
    auto xi = F_map(rank1_lift(random_triple(*M, rng)));
    CHECK(scan_fiber(xi, trace0_elements(*M), 1, false).count == brute_fiber_count(xi, *M));
  }
}

TEST_CASE("quadratic fibers") {
  auto B = CompositionAlgebra<Fp>::binarion_split(F5);
  const auto& F = B->scalars();
  const Fp z(0, 5);
  auto origin = fiber_target(F, Mat3<Fp>(Mat3<Fp>::Constant(z)), z);
  auto rep = quadratic_fiber_test(origin, *B);
  CHECK(rep.status == FiberStatus::nonempty);
  CHECK(rep.cardinality == brute_fiber_count(origin, *B));
  CHECK(rep.cardinality == std::uint64_t{1});
  CHECK(quadratic_fiber_test(fiber_target(F, Mat3<Fp>(Mat3<Fp>::Constant(z)), Fp(1, 5)), *B).status == FiberStatus::empty);
  Mat3<Fp> rank2 = Mat3<Fp>(Mat3<Fp>::Constant(z));
  rank2(0, 0) = rank2(1, 1) = Fp(1, 5);
  CHECK(quadratic_fiber_test(fiber_target(F, rank2, z), *B).status == FiberStatus::empty);

  // every rank <= 1 symmetric c, against direct enumeration
  for (auto alg : {B, CompositionAlgebra<Fp>::binarion_quadratic(Fp(2, 5), F5)}) {
    const auto vals = enumerate<Fp>(F5);
    for (const Fp& s : vals)
      for (const Fp& a : vals)
        for (const Fp& b : vals)
          for (const Fp& c : {z, Fp(1, 5)}) {
            Eigen::Matrix<Fp, 3, 1> t(a, b, c);
            Mat3<Fp> g = s * t * t.transpose();
            auto xi = fiber_target(alg->scalars(), g, z);
            auto r = quadratic_fiber_test(xi, *alg);
            CHECK(r.cardinality == brute_fiber_count(xi, *alg));
            if (r.witness) CHECK(fiber_membership(xi, *r.witness));
          }
  }
  auto H = CompositionAlgebra<Fp>::matrix2x2(F5);
  CHECK_THROWS_AS(quadratic_fiber_test(origin, *H), DomainError);
}

TEST_CASE("rank-0 fiber predicate") {
  auto M = CompositionAlgebra<Fp>::matrix2x2(F5);
  const Fp z(0, 5), one(1, 5);
  // basis (1, h, E12, E21)
  auto x = M->basis(2);
  REQUIRE(is_zero(M->trace(x)));
  auto zero = M->zero();
  WElem<Fp> w{z, jordan_J(x, zero, zero), jordan_zero(*M), z};
  auto r = rank0_fiber_predicate(w);
  CHECK(r.kind == Rank0Kind::pure_tensor);
  REQUIRE(r.x);
  CHECK(*r.x == x);
  CHECK(r.v == std::array<Fp, 6>{one, z, z, z, z, z});

  auto off = w;
  off.a = one;
  CHECK(rank0_fiber_predicate(off).kind == Rank0Kind::not_in_fiber);

  // random nilpotent pure tensors are rank one and factor back
  Rng rng(31);
  const auto c0 = trace0_elements(*M);
  std::vector<CompElem<Fp>> nil;
  for (const auto& y : c0)
    if (!y.is_zero() && is_zero(M->norm(y))) nil.push_back(y);
  REQUIRE(nil.size() == 24);
  for (int t = 0; t < 40; ++t) {
    const auto& n = nil[rng() % nil.size()];
    std::array<Fp, 6> v;
    do {
      for (auto& s : v) s = FieldTraits<Fp>::random(F5, rng);
    } while (std::all_of(v.begin(), v.end(), [](const Fp& s) { return is_zero(s); }));
    WElem<Fp> p{z, jordan_J(v[0] * n, v[1] * n, v[2] * n), jordan_J(v[3] * n, v[4] * n, v[5] * n), z};
    auto f = rank0_fiber_predicate(p);
    CHECK(f.kind == Rank0Kind::pure_tensor);
    // not nilpotent: a tensor with a semisimple x is not rank one
    auto s = c0[rng() % c0.size()];
    if (!is_zero(M->norm(s))) {
      WElem<Fp> q{z, jordan_J(v[0] * s, v[1] * s, v[2] * s), jordan_J(v[3] * s, v[4] * s, v[5] * s), z};
      CHECK(rank0_fiber_predicate(q).kind == Rank0Kind::not_in_fiber);
    }
  }

  auto Ham = CompositionAlgebra<Rational>::quaternion(Rational(-1), Rational(-1), Q);
  CHECK_THROWS_AS(rank0_fiber_predicate(w_zero(*Ham)), DomainError);
  auto MQ = CompositionAlgebra<Rational>::matrix2x2(Q);
  CHECK(rank0_fiber_predicate(w_zero(*MQ)).kind == Rank0Kind::not_in_fiber);
  CHECK(is_split_quaternionic(*CompositionAlgebra<Rational>::quaternion(Rational(1), Rational(-3), Q)));
}

TEST_CASE("flat derivatives behind the rank-0 prefilter") {
  // For v = (0, b, c, 0): D flat along (1,0,0,0) is (-l, 2c#, 0, 0) and along
  // (0,0,0,1) is (0, 0, -2b#, l).
  for (auto alg : zoo<Fp>(F7)) {
    Rng rng(41);
    const Fp two(2, 7);
    for (int t = 0; t < 20; ++t) {
      auto v = random_w(*alg, rng);
      v.a = v.d = alg->zero_scalar();
      FlatJet<Fp> jet(v);
      const Fp l = -trace_pairing(v.b, v.c);
      auto e_a = w_zero(*alg), e_d = w_zero(*alg);
      e_a.a = e_d.d = alg->one_scalar();
      CHECK(is_zero(symplectic(v, e_a)));
      CHECK(is_zero(symplectic(v, e_d)));
      CHECK(flat_derivative(jet, e_a) == w_make(-l, two * sharp(v.c), jordan_zero(*alg), Fp(0, 7)));
      CHECK(flat_derivative(jet, e_d) == w_make(Fp(0, 7), jordan_zero(*alg), -two * sharp(v.b), l));
    }
  }
}

TEST_CASE("nilpotent pairs") {
  auto rep = nilpotent_pair_oracle<Fp>(F5);
  CHECK(rep.nilpotents == 25);
  CHECK(rep.pairs == 625);
  CHECK(rep.counterexamples == 0);
  CHECK(rep.anticommuting > 25);
  CHECK(nilpotent_pair_oracle<Fp>(F7).counterexamples == 0);
}
