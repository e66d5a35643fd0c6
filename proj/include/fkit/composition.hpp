#pragma once

// Composition algebras of dimension 1, 2, 4, 8 as structure-constant algebras.
// Quaternion and octonion algebras are built by Cayley-Dickson doubling
//   (p, q)(r, s) = (p r + g conj(s) q,  s p + q conj(r)),
// so that i^2 = a, j^2 = b, k = ij, k^2 = -ab and l^2 = c.

#include <Eigen/Core>

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fkit/linalg.hpp"
#include "fkit/scalar.hpp"

namespace fkit {

enum class AlgebraTag { unarion, binarion_split, binarion_quadratic, quaternion, matrix2x2, octonion, octonion_split };

std::string_view to_string(AlgebraTag tag);
/// Accepts the hyphenated names used on the command line ("binarion-split").
AlgebraTag parse_algebra_tag(std::string_view name);
/// Number of scalar parameters the construction takes (eps; a,b; a,b,c).
int parameter_count(AlgebraTag tag);

template <class S>
using Coords = Eigen::Matrix<S, Eigen::Dynamic, 1, 0, 8, 1>;
template <class S>
using AlgMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;

template <class S>
class CompositionAlgebra;

/// An element of a composition algebra. Non-owning reference to the algebra,
/// which must outlive the element.
template <class S>
struct CompElem {
  const CompositionAlgebra<S>* alg = nullptr;
  Coords<S> v;

  int dim() const { return static_cast<int>(v.size()); }
  bool is_zero() const { return all_zero(v); }

  friend CompElem operator+(const CompElem& x, const CompElem& y) {
    check_same(x, y);
    return {x.alg, x.v + y.v};
  }
  friend CompElem operator-(const CompElem& x, const CompElem& y) {
    check_same(x, y);
    return {x.alg, x.v - y.v};
  }
  friend CompElem operator-(const CompElem& x) { return {x.alg, -x.v}; }
  friend CompElem operator*(const S& s, const CompElem& x) { return {x.alg, s * x.v}; }
  friend CompElem operator*(const CompElem& x, const CompElem& y) { return x.alg->mul(x, y); }
  CompElem& operator+=(const CompElem& o) { return *this = *this + o; }
  CompElem& operator-=(const CompElem& o) { return *this = *this - o; }

  friend bool operator==(const CompElem& x, const CompElem& y) { return x.alg == y.alg && exactly_equal(x.v, y.v); }
  friend bool operator!=(const CompElem& x, const CompElem& y) { return !(x == y); }

  static void check_same(const CompElem& x, const CompElem& y) {
    if (x.alg != y.alg) throw DomainError("elements of different composition algebras");
  }
};

template <class S>
class CompositionAlgebra : public std::enable_shared_from_this<CompositionAlgebra<S>> {
 public:
  using Ptr = std::shared_ptr<const CompositionAlgebra>;
  using Elem = CompElem<S>;

  /// Structure constant: basis[i] * basis[j] has coefficient `coef` on basis[k].
  struct Term {
    int i, j, k;
    S coef;
  };

  static Ptr unarion(const FieldDescriptor& f);
  static Ptr binarion_split(const FieldDescriptor& f);
  static Ptr binarion_quadratic(const S& eps, const FieldDescriptor& f);
  static Ptr quaternion(const S& a, const S& b, const FieldDescriptor& f);
  static Ptr matrix2x2(const FieldDescriptor& f);
  static Ptr octonion(const S& a, const S& b, const S& c, const FieldDescriptor& f);
  static Ptr octonion_split(const FieldDescriptor& f);
  /// Dispatch on tag; `params` must have parameter_count(tag) entries.
  static Ptr construct(AlgebraTag tag, const std::vector<S>& params, const FieldDescriptor& f);

  const FieldDescriptor& field() const { return field_; }
  AlgebraTag tag() const { return tag_; }
  const std::vector<S>& params() const { return params_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Term>& terms() const { return terms_; }
  /// The algebra this one was doubled from (quaternion/octonion tags only).
  const Ptr& half() const { return half_; }
  /// The unarion over the same field (this algebra itself when dim = 1).
  const CompositionAlgebra& scalars() const { return scalars_ ? *scalars_ : *this; }

  S zero_scalar() const { return from_int<S>(field_, 0); }
  S one_scalar() const { return from_int<S>(field_, 1); }
  S scalar(long long k) const { return from_int<S>(field_, k); }

  Elem element(Coords<S> v) const {
    if (v.size() != dim_) throw DomainError("coordinate vector has wrong length");
    return {this, std::move(v)};
  }
  Elem zero() const { return {this, Coords<S>::Constant(dim_, zero_scalar())}; }
  Elem one() const { return {this, unit_}; }
  Elem basis(int i) const {
    Elem e = zero();
    e.v[i] = one_scalar();
    return e;
  }
  /// s * e
  Elem embed(const S& s) const { return {this, s * unit_}; }

  Elem mul(const Elem& x, const Elem& y) const {
    check(x);
    check(y);
    return {this, mul(x.v, y.v)};
  }
  Coords<S> mul(const Coords<S>& x, const Coords<S>& y) const {
    Coords<S> z = Coords<S>::Constant(dim_, zero_scalar());
    for (const Term& t : terms_)
      if (!fkit::is_zero(x[t.i]) && !fkit::is_zero(y[t.j])) z[t.k] += t.coef * (x[t.i] * y[t.j]);
    return z;
  }

  Elem conj(const Elem& x) const {
    check(x);
    return {this, conj(x.v)};
  }
  Coords<S> conj(const Coords<S>& x) const {
    Coords<S> z = Coords<S>::Constant(dim_, zero_scalar());
    for (const Term& t : conj_terms_) z[t.i] += t.coef * x[t.j];
    return z;
  }

  S trace(const Elem& x) const { return trace(x.v); }
  S trace(const Coords<S>& x) const {
    S s = zero_scalar();
    for (int i = 0; i < dim_; ++i)
      if (!fkit::is_zero(trace_[i])) s += trace_[i] * x[i];
    return s;
  }

  S norm(const Elem& x) const {
    S n = norm(x.v);
#ifdef FKIT_CHECK_POSTCONDITIONS
    if (mul(x, conj(x)) != embed(n)) throw std::logic_error("norm postcondition x*conj(x) = n(x)e violated");
#endif
    return n;
  }
  S norm(const Coords<S>& x) const {
    S s = zero_scalar();
    for (const Term& t : norm_terms_) s += t.coef * (x[t.i] * x[t.j]);
    return s;
  }

  /// B(x,y) = n(x+y) - n(x) - n(y)
  S bilinear(const Elem& x, const Elem& y) const { return bilinear(x.v, y.v); }
  S bilinear(const Coords<S>& x, const Coords<S>& y) const {
    S s = zero_scalar();
    for (const Term& t : norm_terms_) {
      if (t.i == t.j)
        s += (t.coef + t.coef) * (x[t.i] * y[t.i]);
      else
        s += t.coef * (x[t.i] * y[t.j] + x[t.j] * y[t.i]);
    }
    return s;
  }

  /// The scalar s with z = s e, for z in F e (read through the trace).
  S scalar_part(const Coords<S>& z) const { return trace(z) * half_scalar_; }

  Elem inverse(const Elem& x) const {
    S n = norm(x);
    if (fkit::is_zero(n)) throw DivisionByZero();
    return n.inverse() * conj(x);
  }

  /// Basis of the trace-zero subspace C^0; empty for dim 1. Each vector is
  /// scaled so that its first nonzero coordinate is 1.
  std::vector<Elem> trace0_basis() const;

  /// True if g (columns = images of basis vectors) is an invertible linear map
  /// fixing e and preserving every product of basis elements.
  bool is_automorphism(const AlgMatrix<S>& g) const;
  Elem apply(const AlgMatrix<S>& g, const Elem& x) const {
    check(x);
    return {this, g * x.v};
  }
  AlgMatrix<S> identity_map() const {
    AlgMatrix<S> g = AlgMatrix<S>::Constant(dim_, dim_, zero_scalar());
    for (int i = 0; i < dim_; ++i) g(i, i) = one_scalar();
    return g;
  }
  /// The conjugation map as a matrix.
  AlgMatrix<S> conjugation_map() const;
  /// x -> u x u^{-1} (dim 4), or (p,q) -> (u p u^{-1}, u q u^{-1}) for u in the
  /// quaternion half (dim 8). u must be invertible.
  AlgMatrix<S> inner_automorphism(const Coords<S>& u) const;
  /// (p,q) -> (p, w q) for w in the quaternion half with n(w) = 1 (dim 8 only).
  AlgMatrix<S> doubling_twist(const Coords<S>& w) const;

  void check(const Elem& x) const {
    if (x.alg != this) throw DomainError("element belongs to a different composition algebra");
  }

  // Public for make_shared; use the named constructors.
  struct Table {
    int dim;
    std::vector<std::string> labels;
    std::vector<Term> terms;
    Coords<S> unit;
    std::vector<Term> conj;  // (i, j, -, coef): conj(x)[i] += coef * x[j]
  };
  CompositionAlgebra(AlgebraTag tag, std::vector<S> params, const FieldDescriptor& f, Table table, Ptr half);

 private:
  static Table doubled(const CompositionAlgebra& base, const S& gamma);

  FieldDescriptor field_;
  AlgebraTag tag_;
  std::vector<S> params_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<Term> terms_;
  std::vector<Term> conj_terms_;
  std::vector<Term> norm_terms_;  // n(x) = sum coef * x_i x_j over i <= j
  Coords<S> unit_;
  Coords<S> trace_;
  S half_scalar_;
  Ptr half_;
  Ptr scalars_;
};

struct CompositionReport {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::string counterexample;  // first failing pair, if any
  bool ok() const { return failures == 0; }
};

/// Checks n(xy) = n(x) n(y). Exhaustive over all pairs when `exhaustive` (finite
/// fields only, throws SizeOverflow beyond 10^9 pairs), else `trials` random pairs.
template <class S>
CompositionReport verify_composition_law(const CompositionAlgebra<S>& alg, bool exhaustive, std::uint64_t trials,
                                         std::uint64_t seed);

template <class S>
CompElem<S> random_element(const CompositionAlgebra<S>& alg, Rng& rng) {
  CompElem<S> x = alg.zero();
  for (int i = 0; i < alg.dim(); ++i) x.v[i] = FieldTraits<S>::random(alg.field(), rng);
  return x;
}

// ---------------------------------------------------------------------------
// Implementation

template <class S>
CompositionAlgebra<S>::CompositionAlgebra(AlgebraTag tag, std::vector<S> params, const FieldDescriptor& f, Table table,
                                          Ptr half)
    : field_(f),
      tag_(tag),
      params_(std::move(params)),
      dim_(table.dim),
      labels_(std::move(table.labels)),
      terms_(std::move(table.terms)),
      conj_terms_(std::move(table.conj)),
      unit_(std::move(table.unit)),
      half_(std::move(half)) {
  check_kind<S>(f);
  half_scalar_ = from_int<S>(f, 2).inverse();
  if (dim_ > 1) scalars_ = unarion(f);
  // Bind every structure constant to the field.
  const S zero = zero_scalar();
  for (auto& t : terms_) t.coef += zero;
  for (auto& t : conj_terms_) t.coef += zero;
  for (int i = 0; i < dim_; ++i) unit_[i] += zero;

  int pivot = 0;
  while (fkit::is_zero(unit_[pivot])) ++pivot;
  auto scalar_of = [&](const Coords<S>& z) {
    S s = z[pivot] / unit_[pivot];
    if (!exactly_equal(z, Coords<S>(s * unit_))) throw std::logic_error("composition table: value not in F e");
    return s;
  };
  trace_ = Coords<S>::Constant(dim_, zero);
  for (int i = 0; i < dim_; ++i) {
    Coords<S> b = Coords<S>::Constant(dim_, zero);
    b[i] = one_scalar();
    trace_[i] = scalar_of(b + conj(b));
  }
  auto raw_norm = [&](const Coords<S>& x) { return scalar_of(mul(x, conj(x))); };
  std::vector<S> diag(dim_);
  for (int i = 0; i < dim_; ++i) {
    Coords<S> b = Coords<S>::Constant(dim_, zero);
    b[i] = one_scalar();
    diag[i] = raw_norm(b);
    if (!fkit::is_zero(diag[i])) norm_terms_.push_back({i, i, 0, diag[i]});
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      Coords<S> b = Coords<S>::Constant(dim_, zero);
      b[i] = one_scalar();
      b[j] = one_scalar();
      S c = raw_norm(b) - diag[i] - diag[j];
      if (!fkit::is_zero(c)) norm_terms_.push_back({i, j, 0, c});
    }
}

template <class S>
typename CompositionAlgebra<S>::Table CompositionAlgebra<S>::doubled(const CompositionAlgebra& base, const S& gamma) {
  const int n = base.dim();
  Table t;
  t.dim = 2 * n;
  const S zero = base.zero_scalar();
  t.unit = Coords<S>::Constant(2 * n, zero);
  t.unit.head(n) = base.unit_;
  auto basis = [&](int i) {
    Coords<S> b = Coords<S>::Constant(n, zero);
    b[i] = base.one_scalar();
    return b;
  };
  auto emit = [&](int i, int j, const Coords<S>& first, const Coords<S>& second) {
    for (int k = 0; k < n; ++k) {
      if (!fkit::is_zero(first[k])) t.terms.push_back({i, j, k, first[k]});
      if (!fkit::is_zero(second[k])) t.terms.push_back({i, j, n + k, second[k]});
    }
  };
  const Coords<S> none = Coords<S>::Constant(n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Coords<S> bi = basis(i), bj = basis(j);
      // (b_i,0)(b_j,0) = (b_i b_j, 0)
      emit(i, j, base.mul(bi, bj), none);
      // (b_i,0)(0,b_j) = (0, b_j b_i)
      emit(i, n + j, none, base.mul(bj, bi));
      // (0,b_i)(b_j,0) = (0, b_i conj(b_j))
      emit(n + i, j, none, base.mul(bi, base.conj(bj)));
      // (0,b_i)(0,b_j) = (g conj(b_j) b_i, 0)
      emit(n + i, n + j, Coords<S>(gamma * base.mul(base.conj(bj), bi)), none);
    }
  // conj(p, q) = (conj p, -q)
  for (const Term& c : base.conj_terms_) t.conj.push_back(c);
  for (int i = 0; i < n; ++i) t.conj.push_back({n + i, n + i, 0, -base.one_scalar()});
  return t;
}

template <class S>
typename CompositionAlgebra<S>::Ptr CompositionAlgebra<S>::unarion(const FieldDescriptor& f) {
  Table t;
  t.dim = 1;
  t.labels = {"1"};
  t.terms = {{0, 0, 0, from_int<S>(f, 1)}};
  t.unit = Coords<S>::Constant(1, from_int<S>(f, 1));
  t.conj = {{0, 0, 0, from_int<S>(f, 1)}};
  return std::make_shared<const CompositionAlgebra>(AlgebraTag::unarion, std::vector<S>{}, f, std::move(t), nullptr);
}

template <class S>
typename CompositionAlgebra<S>::Ptr CompositionAlgebra<S>::binarion_split(const FieldDescriptor& f) {
  const S one = from_int<S>(f, 1);
  Table t;
  t.dim = 2;
  t.labels = {"e1", "e2"};
  t.terms = {{0, 0, 0, one}, {1, 1, 1, one}};
  t.unit = Coords<S>::Constant(2, one);
  t.conj = {{0, 1, 0, one}, {1, 0, 0, one}};
  return std::make_shared<const CompositionAlgebra>(AlgebraTag::binarion_split, std::vector<S>{}, f, std::move(t),
                                                    nullptr);
}

template <class S>
typename CompositionAlgebra<S>::Ptr CompositionAlgebra<S>::binarion_quadratic(const S& eps, const FieldDescriptor& f) {
  if (fkit::is_zero(eps) || is_square(eps + from_int<S>(f, 0)))
    throw InvalidParameter("binarion-quadratic needs a nonsquare eps, got " + to_string(eps));
  auto base = unarion(f);
  Table t = doubled(*base, eps);
  t.labels = {"1", "u"};
  return std::make_shared<const CompositionAlgebra>(AlgebraTag::binarion_quadratic, std::vector<S>{eps}, f,
                                                    std::move(t), base);
}

template <class S>
typename CompositionAlgebra<S>::Ptr CompositionAlgebra<S>::quaternion(const S& a, const S& b, const FieldDescriptor& f) {
  if (fkit::is_zero(a) || fkit::is_zero(b)) throw InvalidParameter("quaternion parameters must be nonzero");
  auto unar = unarion(f);
  Table tq = doubled(*unar, a);
  tq.labels = {"1", "i"};
  auto bin = std::make_shared<const CompositionAlgebra>(AlgebraTag::binarion_quadratic, std::vector<S>{a}, f,
                                                        std::move(tq), unar);
  Table t = doubled(*bin, b);
  t.labels = {"1", "i", "j", "k"};
  return std::make_shared<const CompositionAlgebra>(AlgebraTag::quaternion, std::vector<S>{a, b}, f, std::move(t), bin);
}

template <class S>
typename CompositionAlgebra<S>::Ptr CompositionAlgebra<S>::matrix2x2(const FieldDescriptor& f) {
  // basis 1 = I, h = diag(1,-1), e = E12, f = E21
  using M2 = std::array<long, 4>;  // row-major
  const std::array<M2, 4> mats = {M2{1, 0, 0, 1}, M2{1, 0, 0, -1}, M2{0, 1, 0, 0}, M2{0, 0, 1, 0}};
  auto mm = [](const M2& x, const M2& y) {
    return M2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
              x[2] * y[1] + x[3] * y[3]};
  };
  const S half = from_int<S>(f, 2).inverse();
  Table t;
  t.dim = 4;
  t.labels = {"1", "h", "e", "f"};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      M2 m = mm(mats[i], mats[j]);
      const S c[4] = {from_int<S>(f, m[0] + m[3]) * half, from_int<S>(f, m[0] - m[3]) * half, from_int<S>(f, m[1]),
                      from_int<S>(f, m[2])};
      for (int k = 0; k < 4; ++k)
        if (!fkit::is_zero(c[k])) t.terms.push_back({i, j, k, c[k]});
    }
  const S one = from_int<S>(f, 1);
  t.unit = Coords<S>::Constant(4, from_int<S>(f, 0));
  t.unit[0] = one;
  t.conj = {{0, 0, 0, one}, {1, 1, 0, -one}, {2, 2, 0, -one}, {3, 3, 0, -one}};
  return std::make_shared<const CompositionAlgebra>(AlgebraTag::matrix2x2, std::vector<S>{}, f, std::move(t), nullptr);
}

template <class S>
typename CompositionAlgebra<S>::Ptr CompositionAlgebra<S>::octonion(const S& a, const S& b, const S& c,
                                                                    const FieldDescriptor& f) {
  if (fkit::is_zero(c)) throw InvalidParameter("octonion parameters must be nonzero");
  auto quat = quaternion(a, b, f);
  Table t = doubled(*quat, c);
  t.labels = {"1", "i", "j", "k", "l", "il", "jl", "kl"};
  return std::make_shared<const CompositionAlgebra>(AlgebraTag::octonion, std::vector<S>{a, b, c}, f, std::move(t),
                                                    quat);
}

template <class S>
typename CompositionAlgebra<S>::Ptr CompositionAlgebra<S>::octonion_split(const FieldDescriptor& f) {
  const S one = from_int<S>(f, 1);
  auto quat = quaternion(one, one, f);
  Table t = doubled(*quat, one);
  t.labels = {"1", "i", "j", "k", "l", "il", "jl", "kl"};
  return std::make_shared<const CompositionAlgebra>(AlgebraTag::octonion_split, std::vector<S>{}, f, std::move(t),
                                                    quat);
}

template <class S>
typename CompositionAlgebra<S>::Ptr CompositionAlgebra<S>::construct(AlgebraTag tag, const std::vector<S>& params,
                                                                     const FieldDescriptor& f) {
  if (static_cast<int>(params.size()) != parameter_count(tag))
    throw InvalidParameter(std::string(to_string(tag)) + " takes " + std::to_string(parameter_count(tag)) +
                           " parameters, got " + std::to_string(params.size()));
  switch (tag) {
    case AlgebraTag::unarion:
      return unarion(f);
    case AlgebraTag::binarion_split:
      return binarion_split(f);
    case AlgebraTag::binarion_quadratic:
      return binarion_quadratic(params[0], f);
    case AlgebraTag::quaternion:
      return quaternion(params[0], params[1], f);
    case AlgebraTag::matrix2x2:
      return matrix2x2(f);
    case AlgebraTag::octonion:
      return octonion(params[0], params[1], params[2], f);
    case AlgebraTag::octonion_split:
      break;
  }
  return octonion_split(f);
}

template <class S>
std::vector<CompElem<S>> CompositionAlgebra<S>::trace0_basis() const {
  std::vector<Elem> out;
  if (dim_ == 1) return out;
  MatX<S> row(1, dim_);
  for (int i = 0; i < dim_; ++i) row(0, i) = trace_[i];
  MatX<S> k = kernel_basis(row, one_scalar());
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    Coords<S> v(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = k(i, c);
    int first = 0;
    while (fkit::is_zero(v[first])) ++first;
    S inv = v[first].inverse();
    out.push_back({this, Coords<S>(inv * v)});
  }
  return out;
}

template <class S>
bool CompositionAlgebra<S>::is_automorphism(const AlgMatrix<S>& g) const {
  if (g.rows() != dim_ || g.cols() != dim_) return false;
  MatX<S> gm = g;
  if (fkit::is_zero(determinant(gm, one_scalar()))) return false;
  if (!exactly_equal(Coords<S>(g * unit_), unit_)) return false;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      Coords<S> bi = basis(i).v, bj = basis(j).v;
      Coords<S> lhs = g * mul(bi, bj);
      Coords<S> rhs = mul(Coords<S>(g.col(i)), Coords<S>(g.col(j)));
      if (!exactly_equal(lhs, rhs)) return false;
    }
  return true;
}

template <class S>
AlgMatrix<S> CompositionAlgebra<S>::conjugation_map() const {
  AlgMatrix<S> g(dim_, dim_);
  for (int j = 0; j < dim_; ++j) g.col(j) = conj(basis(j).v);
  return g;
}

template <class S>
AlgMatrix<S> CompositionAlgebra<S>::inner_automorphism(const Coords<S>& u) const {
  AlgMatrix<S> g(dim_, dim_);
  if (dim_ == 4) {
    Elem ue{this, u};
    Elem uinv = inverse(ue);
    for (int j = 0; j < dim_; ++j) g.col(j) = mul(mul(ue, basis(j)), uinv).v;
    return g;
  }
  if (dim_ == 8 && half_) {
    const auto& q = *half_;
    CompElem<S> ue{&q, u};
    CompElem<S> uinv = q.inverse(ue);
    g.setConstant(zero_scalar());
    for (int j = 0; j < 4; ++j) {
      Coords<S> img = q.mul(q.mul(ue, q.basis(j)), uinv).v;
      g.block(0, j, 4, 1) = img;
      g.block(4, 4 + j, 4, 1) = img;
    }
    return g;
  }
  throw DomainError("inner automorphisms need a quaternion or doubled octonion algebra");
}

template <class S>
AlgMatrix<S> CompositionAlgebra<S>::doubling_twist(const Coords<S>& w) const {
  if (dim_ != 8 || !half_) throw DomainError("doubling twist needs a doubled octonion algebra");
  const auto& q = *half_;
  if (q.norm(w) != one_scalar()) throw InvalidParameter("doubling twist needs n(w) = 1");
  AlgMatrix<S> g = AlgMatrix<S>::Constant(8, 8, zero_scalar());
  for (int j = 0; j < 4; ++j) {
    g(j, j) = one_scalar();
    g.block(4, 4 + j, 4, 1) = q.mul(w, q.basis(j).v);
  }
  return g;
}

template <class S>
CompositionReport verify_composition_law(const CompositionAlgebra<S>& alg, bool exhaustive, std::uint64_t trials,
                                         std::uint64_t seed) {
  CompositionReport rep;
  auto test = [&](const CompElem<S>& x, const CompElem<S>& y) {
    ++rep.checked;
    if (alg.norm(alg.mul(x, y)) != alg.norm(x) * alg.norm(y)) {
      if (rep.failures++ == 0) {
        std::string s = "x=(";
        for (int i = 0; i < x.dim(); ++i) s += (i ? "," : "") + to_string(x.v[i]);
        s += ") y=(";
        for (int i = 0; i < y.dim(); ++i) s += (i ? "," : "") + to_string(y.v[i]);
        rep.counterexample = s + ")";
      }
    }
  };
  if (exhaustive) {
    const auto elems = enumerate<S>(alg.field());
    const std::uint64_t q = elems.size();
    std::uint64_t count = 1;
    for (int i = 0; i < alg.dim(); ++i) count *= q;
    if (count > 31623) throw SizeOverflow("exhaustive composition check beyond 10^9 pairs");
    std::vector<CompElem<S>> all;
    all.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      CompElem<S> x = alg.zero();
      std::uint64_t r = idx;
      for (int i = 0; i < alg.dim(); ++i) {
        x.v[i] = elems[r % q];
        r /= q;
      }
      all.push_back(std::move(x));
    }
    for (const auto& x : all)
      for (const auto& y : all) test(x, y);
    return rep;
  }
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto x = random_element(alg, rng);
    auto y = random_element(alg, rng);
    test(x, y);
  }
  return rep;
}

}  // namespace fkit
