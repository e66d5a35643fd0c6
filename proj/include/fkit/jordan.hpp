#pragma once

// The cubic Jordan algebra J_C of Hermitian 3x3 matrices
//
//   [ c1      x3      conj(x2) ]
//   [ conj(x3) c2     x1       ]
//   [ x2      conj(x1) c3      ]
//
// with A*B = (AB + BA)/2, cubic norm N, sharp map and the GL3 x Aut(C) action.

#include <Eigen/Core>

#include <array>

#include "fkit/composition.hpp"

namespace fkit {

template <class S>
using Mat3 = Eigen::Matrix<S, 3, 3>;

template <class S>
struct JordanElem {
  const CompositionAlgebra<S>* alg = nullptr;
  std::array<S, 3> c;
  std::array<Coords<S>, 3> x;

  bool is_zero() const {
    for (int i = 0; i < 3; ++i)
      if (!fkit::is_zero(c[i]) || !all_zero(x[i])) return false;
    return true;
  }

  friend JordanElem operator+(const JordanElem& a, const JordanElem& b) {
    check_same(a, b);
    JordanElem r = a;
    for (int i = 0; i < 3; ++i) {
      r.c[i] += b.c[i];
      r.x[i] += b.x[i];
    }
    return r;
  }
  friend JordanElem operator-(const JordanElem& a, const JordanElem& b) {
    check_same(a, b);
    JordanElem r = a;
    for (int i = 0; i < 3; ++i) {
      r.c[i] -= b.c[i];
      r.x[i] -= b.x[i];
    }
    return r;
  }
  friend JordanElem operator-(const JordanElem& a) {
    JordanElem r = a;
    for (int i = 0; i < 3; ++i) {
      r.c[i] = -r.c[i];
      r.x[i] = -r.x[i];
    }
    return r;
  }
  friend JordanElem operator*(const S& s, const JordanElem& a) {
    JordanElem r = a;
    for (int i = 0; i < 3; ++i) {
      r.c[i] = s * r.c[i];
      r.x[i] = s * r.x[i];
    }
    return r;
  }
  JordanElem& operator+=(const JordanElem& o) { return *this = *this + o; }
  JordanElem& operator-=(const JordanElem& o) { return *this = *this - o; }

  friend bool operator==(const JordanElem& a, const JordanElem& b) {
    if (a.alg != b.alg) return false;
    for (int i = 0; i < 3; ++i)
      if (a.c[i] != b.c[i] || !exactly_equal(a.x[i], b.x[i])) return false;
    return true;
  }
  friend bool operator!=(const JordanElem& a, const JordanElem& b) { return !(a == b); }

  static void check_same(const JordanElem& a, const JordanElem& b) {
    if (a.alg != b.alg) throw DomainError("Jordan elements over different composition algebras");
  }
};

template <class S>
JordanElem<S> jordan_zero(const CompositionAlgebra<S>& alg) {
  const S z = alg.zero_scalar();
  JordanElem<S> r{&alg, {z, z, z}, {}};
  for (auto& xi : r.x) xi = Coords<S>::Constant(alg.dim(), z);
  return r;
}

template <class S>
JordanElem<S> jordan_diag(const CompositionAlgebra<S>& alg, const S& c1, const S& c2, const S& c3) {
  JordanElem<S> r = jordan_zero(alg);
  r.c = {c1 + alg.zero_scalar(), c2 + alg.zero_scalar(), c3 + alg.zero_scalar()};
  return r;
}

template <class S>
JordanElem<S> jordan_identity(const CompositionAlgebra<S>& alg) {
  const S one = alg.one_scalar();
  return jordan_diag(alg, one, one, one);
}

/// J(x): zero diagonal, off-diagonal strip (x1, x2, x3).
template <class S>
JordanElem<S> jordan_J(const CompElem<S>& x1, const CompElem<S>& x2, const CompElem<S>& x3) {
  CompElem<S>::check_same(x1, x2);
  CompElem<S>::check_same(x1, x3);
  JordanElem<S> r = jordan_zero(*x1.alg);
  r.x = {x1.v, x2.v, x3.v};
  return r;
}

template <class S>
JordanElem<S> random_jordan(const CompositionAlgebra<S>& alg, Rng& rng) {
  JordanElem<S> r = jordan_zero(alg);
  for (int i = 0; i < 3; ++i) {
    r.c[i] = FieldTraits<S>::random(alg.field(), rng);
    r.x[i] = random_element(alg, rng).v;
  }
  return r;
}

/// dim J_C = 3 + 3 dim C
inline int jordan_dim(int comp_dim) { return 3 + 3 * comp_dim; }

/// Flat coordinates (c1,c2,c3,x1,x2,x3).
template <class S>
VecX<S> jordan_coords(const JordanElem<S>& X) {
  const int n = X.alg->dim();
  VecX<S> v(3 + 3 * n);
  for (int i = 0; i < 3; ++i) v[i] = X.c[i];
  for (int i = 0; i < 3; ++i) v.segment(3 + i * n, n) = X.x[i];
  return v;
}

template <class S>
JordanElem<S> jordan_from_coords(const CompositionAlgebra<S>& alg, const VecX<S>& v) {
  const int n = alg.dim();
  if (v.size() != 3 + 3 * n) throw DomainError("Jordan coordinate vector has wrong length");
  JordanElem<S> r = jordan_zero(alg);
  for (int i = 0; i < 3; ++i) r.c[i] = v[i];
  for (int i = 0; i < 3; ++i) r.x[i] = v.segment(3 + i * n, n);
  return r;
}

namespace detail {

/// Row-major 3x3 matrix with entries in C.
template <class S>
using Herm = std::array<Coords<S>, 9>;

template <class S>
Herm<S> to_matrix(const JordanElem<S>& X) {
  const auto& A = *X.alg;
  Herm<S> m;
  m[0] = A.embed(X.c[0]).v;
  m[4] = A.embed(X.c[1]).v;
  m[8] = A.embed(X.c[2]).v;
  m[1] = X.x[2];
  m[3] = A.conj(X.x[2]);
  m[5] = X.x[0];
  m[7] = A.conj(X.x[0]);
  m[6] = X.x[1];
  m[2] = A.conj(X.x[1]);
  return m;
}

template <class S>
JordanElem<S> from_matrix(const CompositionAlgebra<S>& A, const Herm<S>& m) {
  JordanElem<S> r{&A, {A.scalar_part(m[0]), A.scalar_part(m[4]), A.scalar_part(m[8])}, {m[5], m[6], m[1]}};
  return r;
}

template <class S>
Herm<S> matmul(const CompositionAlgebra<S>& A, const Herm<S>& x, const Herm<S>& y) {
  Herm<S> r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      Coords<S> s = A.mul(x[3 * i], y[k]);
      for (int j = 1; j < 3; ++j) s += A.mul(x[3 * i + j], y[3 * j + k]);
      r[3 * i + k] = std::move(s);
    }
  return r;
}

}  // namespace detail

/// A*B = (AB + BA)/2 via the literal matrix expansion over C.
template <class S>
JordanElem<S> jordan_mul(const JordanElem<S>& A, const JordanElem<S>& B) {
  JordanElem<S>::check_same(A, B);
  const auto& C = *A.alg;
  auto ma = detail::to_matrix(A), mb = detail::to_matrix(B);
  auto ab = detail::matmul(C, ma, mb), ba = detail::matmul(C, mb, ma);
  const S half = from_int<S>(C.field(), 2).inverse();
  for (int i = 0; i < 9; ++i) ab[i] = half * (ab[i] + ba[i]);
  return detail::from_matrix(C, ab);
}

template <class S>
S jordan_trace(const JordanElem<S>& X) {
  return X.c[0] + X.c[1] + X.c[2];
}

/// <X,Y> = Tr(X*Y) = sum c_i c'_i + sum B(x_i, x'_i)
template <class S>
S trace_pairing(const JordanElem<S>& X, const JordanElem<S>& Y) {
  JordanElem<S>::check_same(X, Y);
  const auto& C = *X.alg;
  S s = X.c[0] * Y.c[0] + X.c[1] * Y.c[1] + X.c[2] * Y.c[2];
  for (int i = 0; i < 3; ++i) s += C.bilinear(X.x[i], Y.x[i]);
  return s;
}

template <class S>
S jordan_norm(const JordanElem<S>& X) {
  const auto& C = *X.alg;
  S n = X.c[0] * X.c[1] * X.c[2] - X.c[0] * C.norm(X.x[0]) - X.c[1] * C.norm(X.x[1]) - X.c[2] * C.norm(X.x[2]);
  return n + C.trace(C.mul(C.mul(X.x[0], X.x[1]), X.x[2]));
}

template <class S>
JordanElem<S> sharp(const JordanElem<S>& X) {
  const auto& C = *X.alg;
  const auto &c = X.c, x1 = X.x[0], x2 = X.x[1], x3 = X.x[2];
  const Coords<S> b1 = C.conj(x1), b2 = C.conj(x2), b3 = C.conj(x3);
  JordanElem<S> r{&C,
                  {c[1] * c[2] - C.norm(x1), c[0] * c[2] - C.norm(x2), c[0] * c[1] - C.norm(x3)},
                  {C.mul(b3, b2) - c[0] * x1, C.mul(b1, b3) - c[1] * x2, C.mul(b2, b1) - c[2] * x3}};
  return r;
}

/// X x Y = (X+Y)# - X# - Y#, expanded as a bilinear formula.
template <class S>
JordanElem<S> cross(const JordanElem<S>& X, const JordanElem<S>& Y) {
  JordanElem<S>::check_same(X, Y);
  const auto& C = *X.alg;
  const auto &c = X.c, &d = Y.c;
  const auto &x = X.x, &y = Y.x;
  const Coords<S> bx1 = C.conj(x[0]), bx2 = C.conj(x[1]), bx3 = C.conj(x[2]);
  const Coords<S> by1 = C.conj(y[0]), by2 = C.conj(y[1]), by3 = C.conj(y[2]);
  JordanElem<S> r{&C,
                  {c[1] * d[2] + d[1] * c[2] - C.bilinear(x[0], y[0]), c[0] * d[2] + d[0] * c[2] - C.bilinear(x[1], y[1]),
                   c[0] * d[1] + d[0] * c[1] - C.bilinear(x[2], y[2])},
                  {C.mul(bx3, by2) + C.mul(by3, bx2) - c[0] * y[0] - d[0] * x[0],
                   C.mul(bx1, by3) + C.mul(by1, bx3) - c[1] * y[1] - d[1] * x[1],
                   C.mul(bx2, by1) + C.mul(by2, bx1) - c[2] * y[2] - d[2] * x[2]}};
  return r;
}

/// Symmetric trilinear form with (X,X,X) = 6 N(X), by polarization of N.
template <class S>
S trilinear(const JordanElem<S>& X, const JordanElem<S>& Y, const JordanElem<S>& Z) {
  return jordan_norm(X + Y + Z) - jordan_norm(X + Y) - jordan_norm(X + Z) - jordan_norm(Y + Z) + jordan_norm(X) +
         jordan_norm(Y) + jordan_norm(Z);
}

template <class S>
int rank_jordan(const JordanElem<S>& X) {
  if (X.is_zero()) return 0;
  if (sharp(X).is_zero()) return 1;
  if (is_zero(jordan_norm(X))) return 2;
  return 3;
}

/// f: J_C -> J_F, x_j -> Tr(x_j)/2. The target lives over `scalars`, the
/// unarion over the same field.
template <class S>
JordanElem<S> f_map(const JordanElem<S>& X, const CompositionAlgebra<S>& scalars) {
  if (scalars.dim() != 1 || scalars.field() != X.alg->field())
    throw DomainError("f_map target must be the unarion over the same field");
  JordanElem<S> r = jordan_zero(scalars);
  r.c = X.c;
  for (int i = 0; i < 3; ++i) r.x[i][0] = X.alg->scalar_part(X.x[i]);
  return r;
}

/// J_F inside J_C: x_j -> x_j e.
template <class S>
JordanElem<S> embed_jordan(const JordanElem<S>& X, const CompositionAlgebra<S>& target) {
  if (X.alg->dim() != 1) throw DomainError("embed_jordan expects an element over the unarion");
  JordanElem<S> r = jordan_zero(target);
  r.c = X.c;
  for (int i = 0; i < 3; ++i) r.x[i] = target.embed(X.x[i][0]).v;
  return r;
}

/// (g, h) in Aut(C) x GL3(F), validated once. g acts on entries, h by
/// X -> det(h) h^{-T} X h^{-1}; the dual action is Y -> det(h)^{-1} h Y h^T.
template <class S>
class Levi {
 public:
  /// Throws InvalidParameter if g is not an automorphism or h is singular.
  Levi(const CompositionAlgebra<S>& alg, AlgMatrix<S> g, Mat3<S> h);
  static Levi identity(const CompositionAlgebra<S>& alg);

  const CompositionAlgebra<S>& algebra() const { return *alg_; }
  const AlgMatrix<S>& g() const { return g_; }
  const Mat3<S>& h() const { return h_; }
  const S& det() const { return det_; }

  JordanElem<S> act(const JordanElem<S>& X) const { return congruence(apply_g(X), hinv_, det_); }
  JordanElem<S> dual(const JordanElem<S>& Y) const {
    Mat3<S> ht = h_.transpose();
    return congruence(apply_g(Y), ht, det_.inverse());
  }

 private:
  JordanElem<S> apply_g(const JordanElem<S>& X) const {
    if (X.alg != alg_) throw DomainError("Levi element and Jordan element over different algebras");
    JordanElem<S> r = X;
    for (auto& xi : r.x) xi = g_ * xi;
    return r;
  }
  struct Trusted {};
  /// g is known to be an automorphism; skips the check.
  Levi(const CompositionAlgebra<S>& alg, AlgMatrix<S> g, Mat3<S> h, Trusted);
  template <class T>
  friend Levi<T> random_levi(const CompositionAlgebra<T>& alg, Rng& rng);

  /// s * P^T X P
  JordanElem<S> congruence(const JordanElem<S>& X, const Mat3<S>& P, const S& s) const;

  const CompositionAlgebra<S>* alg_;
  AlgMatrix<S> g_;
  Mat3<S> h_, hinv_;
  S det_;
};

template <class S>
JordanElem<S> act(const Levi<S>& levi, const JordanElem<S>& X) {
  return levi.act(X);
}

template <class S>
Mat3<S> inverse3(const Mat3<S>& m) {
  MatX<S> a(3, 6);
  const S zero = m(0, 0) - m(0, 0), one = zero + S(1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a(i, j) = m(i, j);
      a(i, 3 + j) = i == j ? one : zero;
    }
  auto piv = row_reduce(a);
  if (piv.size() < 3 || piv[2] != 2) throw DivisionByZero();
  return a.block(0, 3, 3, 3);
}

template <class S>
Levi<S>::Levi(const CompositionAlgebra<S>& alg, AlgMatrix<S> g, Mat3<S> h)
    : Levi(alg, std::move(g), std::move(h), Trusted{}) {
  if (!alg.is_automorphism(g_)) throw InvalidParameter("g is not an automorphism of the composition algebra");
}

template <class S>
Levi<S>::Levi(const CompositionAlgebra<S>& alg, AlgMatrix<S> g, Mat3<S> h, Trusted)
    : alg_(&alg), g_(std::move(g)), h_(std::move(h)) {
  const S zero = alg.zero_scalar();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h_(i, j) += zero;
  det_ = determinant(MatX<S>(h_), alg.one_scalar());
  if (is_zero(det_)) throw InvalidParameter("h is singular");
  hinv_ = inverse3(h_);
}

template <class S>
Levi<S> Levi<S>::identity(const CompositionAlgebra<S>& alg) {
  Mat3<S> h;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(i, j) = i == j ? alg.one_scalar() : alg.zero_scalar();
  return Levi(alg, alg.identity_map(), h);
}

template <class S>
JordanElem<S> Levi<S>::congruence(const JordanElem<S>& X, const Mat3<S>& P, const S& s) const {
  const auto& C = *alg_;
  auto m = detail::to_matrix(X);
  // t = X P
  detail::Herm<S> t, r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      Coords<S> acc = P(0, k) * m[3 * i];
      for (int j = 1; j < 3; ++j) acc += P(j, k) * m[3 * i + j];
      t[3 * i + k] = std::move(acc);
    }
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      Coords<S> acc = P(0, i) * t[k];
      for (int j = 1; j < 3; ++j) acc += P(j, i) * t[3 * j + k];
      r[3 * i + k] = s * acc;
    }
  return detail::from_matrix(C, r);
}

/// Random invertible h and random automorphism g of C, built from conjugation
/// (dim 2), inner automorphisms (dim 4) and inner/twist maps (dim 8).
template <class S>
Levi<S> random_levi(const CompositionAlgebra<S>& alg, Rng& rng);

template <class S>
AlgMatrix<S> random_automorphism(const CompositionAlgebra<S>& alg, Rng& rng) {
  auto invertible = [&](const CompositionAlgebra<S>& A) {
    for (;;) {
      auto u = random_element(A, rng);
      if (!is_zero(A.norm(u))) return u;
    }
  };
  switch (alg.dim()) {
    case 1:
      return alg.identity_map();
    case 2:
      return rng() % 2 ? alg.conjugation_map() : alg.identity_map();
    case 4:
      return alg.inner_automorphism(invertible(alg).v);
    default:
      break;
  }
  const auto& q = *alg.half();
  auto u = invertible(q);
  AlgMatrix<S> g = alg.inner_automorphism(u.v);
  auto z = invertible(q);
  auto w = q.norm(z).inverse() * (z * z);
  return alg.doubling_twist(w.v) * g;
}

template <class S>
Mat3<S> random_gl3(const FieldDescriptor& f, Rng& rng) {
  for (;;) {
    Mat3<S> h;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) h(i, j) = FieldTraits<S>::random(f, rng);
    if (!is_zero(determinant(MatX<S>(h), from_int<S>(f, 1)))) return h;
  }
}

template <class S>
Levi<S> random_levi(const CompositionAlgebra<S>& alg, Rng& rng) {
  auto g = random_automorphism(alg, rng);
  return Levi<S>(alg, std::move(g), random_gl3<S>(alg.field(), rng), typename Levi<S>::Trusted{});
}

}  // namespace fkit
