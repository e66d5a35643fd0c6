#pragma once

// Ternary quadratic forms f(x) = x^T G x over Q and finite fields.

#include <array>
#include <cstdint>
#include <vector>

#include "fkit/composition.hpp"
#include "fkit/jordan.hpp"

namespace fkit {

template <class S>
struct TernaryForm {
  Mat3<S> gram;

  bool is_symmetric() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j)
        if (gram(i, j) != gram(j, i)) return false;
    return true;
  }
  S det() const {
    const S one = gram(0, 0) - gram(0, 0) + S(1);
    return determinant(MatX<S>(gram), one);
  }
  bool nondegenerate() const { return !is_zero(det()); }
  S value(const Eigen::Matrix<S, 3, 1>& x) const { return (x.transpose() * gram * x)(0, 0); }
};

template <class S>
TernaryForm<S> ternary_diag(const S& a, const S& b, const S& c) {
  const S z = a - a;
  Mat3<S> g;
  g << a, z, z, z, b + z, z, z, z, c + z;
  return {g};
}

template <class S>
struct Diagonalization {
  std::array<S, 3> diag;
  Mat3<S> P;  // P^T G P = diag
};

/// Squarefree integer in the square class of a nonzero rational (0 stays 0).
Rational squarefree_class(const Rational& q);

/// Diagonalize by symmetric elimination; over Q the entries are then
/// rescaled to squarefree integers.
template <class S>
Diagonalization<S> diagonalize(const TernaryForm<S>& f) {
  if (!f.is_symmetric()) throw DomainError("Gram matrix is not symmetric");
  Mat3<S> G = f.gram;
  const S zero = G(0, 0) - G(0, 0), one = zero + S(1);
  Mat3<S> P = Mat3<S>::Constant(zero);
  for (int i = 0; i < 3; ++i) P(i, i) = one;
  auto congruence = [&](const Mat3<S>& E) {
    G = (E.transpose() * G * E).eval();
    P = (P * E).eval();
  };
  for (int i = 0; i < 3; ++i) {
    if (is_zero(G(i, i))) {
      int j = i + 1;
      while (j < 3 && is_zero(G(j, j))) ++j;
      Mat3<S> E = Mat3<S>::Constant(zero);
      for (int k = 0; k < 3; ++k) E(k, k) = one;
      if (j < 3) {
        E(i, i) = E(j, j) = zero;
        E(i, j) = E(j, i) = one;
        congruence(E);
      } else {
        j = i + 1;
        while (j < 3 && is_zero(G(i, j))) ++j;
        if (j == 3) continue;  // row i is zero
        E(j, i) = one;         // e_i -> e_i + e_j
        congruence(E);
      }
    }
    Mat3<S> E = Mat3<S>::Constant(zero);
    for (int k = 0; k < 3; ++k) E(k, k) = one;
    const S inv = G(i, i).inverse();
    for (int j = i + 1; j < 3; ++j) E(i, j) = -G(i, j) * inv;
    congruence(E);
  }
  Diagonalization<S> out{{G(0, 0), G(1, 1), G(2, 2)}, P};
  if constexpr (std::is_same_v<S, Rational>) {
    for (int i = 0; i < 3; ++i) {
      if (is_zero(out.diag[i])) continue;
      // d = s m^2 with s squarefree: scale column i by 1/m
      Rational s = squarefree_class(out.diag[i]);
      Rational m2 = out.diag[i] / s;
      mpz_class num, den;
      mpz_sqrt(num.get_mpz_t(), m2.num().get_mpz_t());
      mpz_sqrt(den.get_mpz_t(), m2.den().get_mpz_t());
      Rational minv(mpq_class(den, num));
      out.P.col(i) *= minv;
      out.diag[i] = s;
    }
  }
  return out;
}

/// A completion of Q: a prime p, or 0 for the real place.
using Place = std::uint64_t;
inline constexpr Place kInfinity = 0;

/// (a,b)_v in {+1,-1}; a, b nonzero rationals. Throws DomainError on zero input.
int hilbert_symbol(const Rational& a, const Rational& b, Place v);

/// Prime divisors of a nonzero integer (trial division; throws SizeOverflow
/// if a cofactor beyond 10^12 cannot be certified prime).
std::vector<mpz_class> prime_factors(mpz_class n);

/// Hasse invariant prod_{i<j} (a_i, a_j)_v of a nondegenerate diagonal form.
int hasse_invariant(const std::array<Rational, 3>& diag, Place v);

/// 2, infinity and every prime dividing a numerator or denominator.
std::vector<Place> relevant_places(const std::vector<Rational>& values);

/// Isometry of nondegenerate ternary forms over Q: equal discriminant classes
/// and equal Hasse invariants at every relevant place.
bool ternary_isometric(const TernaryForm<Rational>& f1, const TernaryForm<Rational>& f2);

/// Isotropy of a nondegenerate ternary form over Q: c_v = (-1, -det)_v at
/// every place.
bool ternary_isotropic(const TernaryForm<Rational>& f);

/// Similarity: lambda f1 isometric to f2 for some lambda. Over Q only the
/// class lambda = det(f1) det(f2) can match discriminants, and both it and
/// lambda = 1 are tried. Over finite fields every two nondegenerate ternary
/// forms are similar. Throws DomainError on degenerate input.
template <class S>
bool ternary_similar(const TernaryForm<S>& f1, const TernaryForm<S>& f2) {
  if (!f1.nondegenerate() || !f2.nondegenerate()) throw DomainError("ternary_similar needs nondegenerate forms");
  if constexpr (std::is_same_v<S, Rational>) {
    for (const Rational& lambda : {Rational(1), f1.det() * f2.det()}) {
      TernaryForm<Rational> scaled{lambda * f1.gram};
      if (ternary_isometric(scaled, f2)) return true;
    }
    return false;
  } else {
    return true;
  }
}

/// Gram matrix of n_C on the trace-zero basis, f(x) = n(sum x_i e_i).
template <class S>
TernaryForm<S> norm_form_on_trace0(const CompositionAlgebra<S>& alg) {
  if (alg.dim() != 4) throw DomainError("norm_form_on_trace0 needs a 4-dimensional algebra");
  auto basis = alg.trace0_basis();
  const S half = from_int<S>(alg.field(), 2).inverse();
  Mat3<S> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = half * alg.bilinear(basis[i], basis[j]);
  return {g};
}

}  // namespace fkit
