#include "doctest.h"

#include <unordered_set>

#include "fkit/linalg.hpp"
#include "fkit/scalar.hpp"

using namespace fkit;

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(FieldDescriptor::prime(4), InvalidParameter);
  CHECK_THROWS_AS(FieldDescriptor::prime(3), InvalidParameter);
  CHECK_NOTHROW(FieldDescriptor::prime(5));
  CHECK_THROWS_AS(FieldDescriptor::quadratic_ext(5, 4), InvalidParameter);
  CHECK_NOTHROW(FieldDescriptor::quadratic_ext(5, 2));
  CHECK(FieldDescriptor::quadratic_ext(7, 3).order() == 49);
  CHECK_THROWS_AS(FieldDescriptor::rationals().order(), SizeOverflow);
}

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  CHECK_THROWS_AS(Rational(0).inverse(), DivisionByZero);
  CHECK(FieldTraits<Rational>::is_square(Rational(9, 4)));
  CHECK(!FieldTraits<Rational>::is_square(Rational(2)));
  CHECK(!FieldTraits<Rational>::is_square(Rational(-1)));
  CHECK(*FieldTraits<Rational>::sqrt(Rational(9, 4)) * *FieldTraits<Rational>::sqrt(Rational(9, 4)) == Rational(9, 4));
}

TEST_CASE("rational inline and GMP representations agree with mpq") {
  // Operands near the 64-bit boundary force spills to GMP and back.
  const long big = std::numeric_limits<long>::max();
  std::vector<mpq_class> pool = {mpq_class(0), mpq_class(1), mpq_class(-1), mpq_class(big), mpq_class(-big),
                                 mpq_class(big - 1, 3), mpq_class(3, big), mpq_class(-2, 7)};
  mpq_class huge(mpz_class("123456789012345678901234567890"), mpz_class(7));
  huge.canonicalize();
  pool.push_back(huge);
  pool.push_back(1 / huge);
  for (auto& q : pool) q.canonicalize();
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    mpq_class q(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 50) + 1);
    q.canonicalize();
    pool.push_back(q);
  }
  auto same = [](const Rational& r, const mpq_class& q) { return r.to_mpq() == q && r.str() == q.get_str(); };
  for (const auto& x : pool) {
    for (const auto& y : pool) {
      const Rational a(x), b(y);
      CHECK(same(a + b, x + y));
      CHECK(same(a - b, x - y));
      CHECK(same(a * b, x * y));
      if (y != 0) CHECK(same(a / b, x / y));
      CHECK((a == b) == (x == y));
      CHECK((a < b) == (x < y));
      // canonical form: a value that fits inline compares equal to its inline construction
      const mpq_class s = x * y;
      if (s.get_den() == 1 && s.get_num().fits_slong_p() && s.get_num() != std::numeric_limits<long>::min())
        CHECK(a * b == Rational(s.get_num().get_si()));
    }
  }
  CHECK(Rational(std::numeric_limits<long>::min()).to_mpq() == mpq_class(std::numeric_limits<long>::min()));
  CHECK(-Rational(std::numeric_limits<long>::min()) == Rational(mpq_class(std::numeric_limits<long>::min()) * -1));
}

TEST_CASE("prime field inverses and square roots, exhaustively") {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 101u}) {
    auto f = FieldDescriptor::prime(p);
    auto els = enumerate<Fp>(f);
    CHECK(els.size() == p);
    int squares = 0;
    for (const Fp& x : els) {
      if (!x.is_zero()) CHECK(x * x.inverse() == Fp(1, p));
      // independent oracle: brute-force search for a root
      bool brute = false;
      for (const Fp& y : els) brute |= (y * y == x);
      CHECK(FieldTraits<Fp>::is_square(x) == brute);
      if (brute) {
        ++squares;
        auto r = FieldTraits<Fp>::sqrt(x);
        REQUIRE(r);
        CHECK(*r * *r == x);
      }
    }
    CHECK(squares == static_cast<int>((p + 1) / 2));
  }
  CHECK_THROWS_AS(Fp(0, 5).inverse(), DivisionByZero);
}

TEST_CASE("unbound integer constants adopt the modulus") {
  Fp x(3, 7);
  CHECK(Fp(1) + x == Fp(4, 7));
  CHECK((Fp(10) * x).modulus() == 7u);
  CHECK(Fp(10) * x == Fp(2, 7));
  CHECK(Fp(-4) == Fp(3, 7));
  CHECK_THROWS_AS(Fp(1, 5) + Fp(1, 7), DescriptorMismatch);
}

TEST_CASE("quadratic extension is a field") {
  auto f = FieldDescriptor::quadratic_ext(5, 2);
  auto els = enumerate<Fp2>(f);
  CHECK(els.size() == 25);
  int squares = 0;
  for (const Fp2& x : els) {
    if (!x.is_zero()) CHECK(x * x.inverse() == from_int<Fp2>(f, 1));
    bool brute = false;
    for (const Fp2& y : els) brute |= (y * y == x);
    CHECK(FieldTraits<Fp2>::is_square(x) == brute);
    if (brute) {
      ++squares;
      auto r = FieldTraits<Fp2>::sqrt(x);
      REQUIRE(r);
      CHECK(*r * *r == x);
    }
  }
  CHECK(squares == 13);
  std::unordered_set<Fp2> distinct(els.begin(), els.end());
  CHECK(distinct.size() == 25);
  // every element of F5 is a square in F25
  for (int k = 0; k < 5; ++k) CHECK(FieldTraits<Fp2>::is_square(from_int<Fp2>(f, k)));
  Fp2 s = FieldTraits<Fp2>::parse(f, "1+3*sqrt(2)");
  CHECK(s.re() == 1);
  CHECK(s.im() == 3);
  CHECK(FieldTraits<Fp2>::parse(f, s.str()) == s);
}

TEST_CASE("exact linear algebra") {
  auto f = FieldDescriptor::prime(7);
  MatX<Fp> m(3, 3);
  m << Fp(1, 7), Fp(2, 7), Fp(3, 7), Fp(2, 7), Fp(4, 7), Fp(6, 7), Fp(0, 7), Fp(1, 7), Fp(1, 7);
  CHECK(rank(m) == 2);
  CHECK(determinant(m, from_int<Fp>(f, 1)).is_zero());
  MatX<Fp> k = kernel_basis(m, from_int<Fp>(f, 1));
  REQUIRE(k.cols() == 1);
  CHECK(all_zero(MatX<Fp>(m * k)));

  MatX<Rational> r(2, 2);
  r << Rational(1), Rational(2), Rational(3), Rational(4);
  CHECK(determinant(r, Rational(1)) == Rational(-2));
}
