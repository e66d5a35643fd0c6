#include "doctest.h"

#include "fkit/composition.hpp"

using namespace fkit;

namespace {

template <class S>
using Alg = CompositionAlgebra<S>;

const FieldDescriptor F5 = FieldDescriptor::prime(5);
const FieldDescriptor F7 = FieldDescriptor::prime(7);
const FieldDescriptor Q = FieldDescriptor::rationals();

Fp f5(long k) { return Fp(k, 5); }

}  // namespace

TEST_CASE("quaternion multiplication table") {
  Rational a(2), b(-3);
  auto H = Alg<Rational>::quaternion(a, b, Q);
  auto one = H->one(), i = H->basis(1), j = H->basis(2), k = H->basis(3);
  CHECK(i * i == H->embed(a));
  CHECK(j * j == H->embed(b));
  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(k * k == H->embed(-a * b));
  CHECK(one * k == k);
  // n(x) = x0^2 - a x1^2 - b x2^2 + ab x3^2
  Coords<Rational> v(4);
  v << Rational(1), Rational(2), Rational(3), Rational(4);
  auto x = H->element(v);
  CHECK(H->norm(x) == Rational(1) - a * 4 - b * 9 + a * b * 16);
  CHECK(x * H->conj(x) == H->embed(H->norm(x)));
  CHECK(x * H->inverse(x) == one);
}

TEST_CASE("octonions are alternative but not associative") {
  auto O = Alg<Rational>::octonion(Rational(-1), Rational(-1), Rational(-1), Q);
  Rng rng(7);
  bool found_nonassoc = false;
  for (int t = 0; t < 50; ++t) {
    auto x = random_element(*O, rng), y = random_element(*O, rng), z = random_element(*O, rng);
    CHECK((x * x) * y == x * (x * y));
    CHECK((y * x) * x == y * (x * x));
    if ((x * y) * z != x * (y * z)) found_nonassoc = true;
    CHECK(O->norm(x * y) == O->norm(x) * O->norm(y));
    CHECK(O->conj(x * y) == O->conj(y) * O->conj(x));
  }
  CHECK(found_nonassoc);
}

TEST_CASE("matrix algebra: norm is the determinant") {
  auto M = Alg<Fp>::matrix2x2(F7);
  for (const Fp& al : enumerate<Fp>(F7))
    for (const Fp& be : enumerate<Fp>(F7)) {
      Coords<Fp> v(4);
      v << al, be, Fp(3, 7), Fp(5, 7);
      // [[al+be, 3],[5, al-be]]
      CHECK(M->norm(M->element(v)) == (al + be) * (al - be) - Fp(15, 7));
    }
  CHECK(M->basis(2) * M->basis(3) == M->element((Coords<Fp>(4) << Fp(4, 7), Fp(4, 7), Fp(0, 7), Fp(0, 7)).finished()));
}

TEST_CASE("binarion-split") {
  auto B = Alg<Fp>::binarion_split(F5);
  auto x = B->element((Coords<Fp>(2) << f5(2), f5(3)).finished());
  CHECK(B->norm(x) == f5(6));
  CHECK(B->conj(x).v[0] == f5(3));
  auto t0 = B->trace0_basis();
  REQUIRE(t0.size() == 1);
  CHECK(t0[0].v[0] == f5(1));
  CHECK(t0[0].v[1] == f5(-1));
}

TEST_CASE("binarion-quadratic rejects squares") {
  CHECK_THROWS_AS(Alg<Fp>::binarion_quadratic(f5(4), F5), InvalidParameter);
  CHECK_THROWS_AS(Alg<Fp>::binarion_quadratic(f5(0), F5), InvalidParameter);
  auto B = Alg<Fp>::binarion_quadratic(f5(2), F5);
  // anisotropic: only 0 has norm 0
  int null = 0;
  for (const Fp& s : enumerate<Fp>(F5))
    for (const Fp& t : enumerate<Fp>(F5))
      if (B->norm(B->element((Coords<Fp>(2) << s, t).finished())).is_zero()) ++null;
  CHECK(null == 1);
}

TEST_CASE("composition law holds exhaustively over F5 up to dimension 4") {
  for (auto alg : {Alg<Fp>::unarion(F5), Alg<Fp>::binarion_split(F5), Alg<Fp>::binarion_quadratic(f5(2), F5),
                   Alg<Fp>::quaternion(f5(1), f5(1), F5), Alg<Fp>::quaternion(f5(2), f5(3), F5),
                   Alg<Fp>::matrix2x2(F5)}) {
    auto rep = verify_composition_law(*alg, true, 0, 0);
    CHECK(rep.ok());
    CHECK(rep.checked == static_cast<std::uint64_t>(std::pow(5, 2 * alg->dim())));
  }
}

TEST_CASE("composition law on random octonions over F7 and F25") {
  auto O = Alg<Fp>::octonion(Fp(3, 7), Fp(5, 7), Fp(6, 7), F7);
  CHECK(verify_composition_law(*O, false, 2000, 1).ok());
  auto E = FieldDescriptor::quadratic_ext(5, 2);
  auto O2 = Alg<Fp2>::octonion_split(E);
  CHECK(verify_composition_law(*O2, false, 2000, 2).ok());
}

TEST_CASE("trace-zero basis of quaternions is i, j, k") {
  auto H = Alg<Rational>::quaternion(Rational(1), Rational(1), Q);
  auto t0 = H->trace0_basis();
  REQUIRE(t0.size() == 3);
  for (int n = 0; n < 3; ++n) CHECK(t0[n] == H->basis(n + 1));
}

TEST_CASE("trace of a product against the norm form") {
  // quaternion(a, b): i^2 = a, so Tr(i i) = 2a and B(i, i) = 2 n(i) = -2a
  auto H = Alg<Rational>::quaternion(Rational(-1), Rational(-3), Q);
  auto i = H->basis(1), j = H->basis(2), one = H->basis(0);
  CHECK(H->trace(i * i) == Rational(-2));
  CHECK(H->bilinear(i, i) == Rational(2));
  CHECK(H->trace(i * j) == -H->bilinear(i, j));
  // off C0 the sign flips: Tr(1 1) = 2 but -B(1, 1) = -2
  CHECK(H->trace(one * one) == Rational(2));
  CHECK(-H->bilinear(one, one) == Rational(-2));
  CHECK(H->trace(one * one) == H->bilinear(one, H->conj(one)));
}

TEST_CASE("automorphisms") {
  auto H = Alg<Fp>::quaternion(f5(2), f5(3), F5);
  Coords<Fp> u(4);
  u << f5(1), f5(1), f5(0), f5(2);
  auto g = H->inner_automorphism(u);
  CHECK(H->is_automorphism(g));
  CHECK(H->is_automorphism(H->identity_map()));
  CHECK(!H->is_automorphism(H->conjugation_map()));  // anti-automorphism

  auto B = Alg<Fp>::binarion_quadratic(f5(2), F5);
  CHECK(B->is_automorphism(B->conjugation_map()));

  auto O = Alg<Fp>::octonion(f5(2), f5(3), f5(2), F5);
  CHECK(O->is_automorphism(O->inner_automorphism(u)));
  // w = z^2 / n(z) has norm 1
  const auto& half = *O->half();
  auto z = half.element(u);
  auto w = half.norm(z).inverse() * (z * z);
  CHECK(half.norm(w) == f5(1));
  CHECK(O->is_automorphism(O->doubling_twist(w.v)));
  CHECK_THROWS_AS(O->doubling_twist(u), InvalidParameter);
}

TEST_CASE("elements of different algebras do not mix") {
  auto A = Alg<Fp>::quaternion(f5(1), f5(1), F5);
  auto B = Alg<Fp>::quaternion(f5(1), f5(1), F5);
  CHECK_THROWS_AS(A->one() + B->one(), DomainError);
  CHECK_THROWS_AS(Alg<Fp>::quaternion(Fp(1, 7), Fp(1, 7), F5), DescriptorMismatch);
}
