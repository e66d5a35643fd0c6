#pragma once

// W_C = F + J + J + F with symplectic form, quartic form q, the flat map and
// the rank stratification 0..4, plus the generators n(x), nbar(x), s, s*,
// the involution and the Levi elements.

#include <optional>
#include <vector>

#include "fkit/jordan.hpp"

namespace fkit {

template <class S>
struct WElem {
  S a;
  JordanElem<S> b, c;
  S d;

  const CompositionAlgebra<S>& algebra() const { return *b.alg; }
  bool is_zero() const { return fkit::is_zero(a) && fkit::is_zero(d) && b.is_zero() && c.is_zero(); }

  friend WElem operator+(const WElem& v, const WElem& w) { return {v.a + w.a, v.b + w.b, v.c + w.c, v.d + w.d}; }
  friend WElem operator-(const WElem& v, const WElem& w) { return {v.a - w.a, v.b - w.b, v.c - w.c, v.d - w.d}; }
  friend WElem operator-(const WElem& v) { return {-v.a, -v.b, -v.c, -v.d}; }
  friend WElem operator*(const S& s, const WElem& v) { return {s * v.a, s * v.b, s * v.c, s * v.d}; }
  friend bool operator==(const WElem& v, const WElem& w) {
    return v.a == w.a && v.d == w.d && v.b == w.b && v.c == w.c;
  }
  friend bool operator!=(const WElem& v, const WElem& w) { return !(v == w); }
};

/// dim W_C = 8 + 6 dim C
inline int w_dim(int comp_dim) { return 2 + 2 * jordan_dim(comp_dim); }

template <class S>
WElem<S> w_zero(const CompositionAlgebra<S>& alg) {
  return {alg.zero_scalar(), jordan_zero(alg), jordan_zero(alg), alg.zero_scalar()};
}

template <class S>
WElem<S> w_make(const S& a, const JordanElem<S>& b, const JordanElem<S>& c, const S& d) {
  JordanElem<S>::check_same(b, c);
  const S z = b.alg->zero_scalar();
  return {a + z, b, c, d + z};
}

template <class S>
WElem<S> random_w(const CompositionAlgebra<S>& alg, Rng& rng) {
  const auto& f = alg.field();
  S a = FieldTraits<S>::random(f, rng);
  auto b = random_jordan(alg, rng);
  auto c = random_jordan(alg, rng);
  return {a, b, c, FieldTraits<S>::random(f, rng)};
}

/// Coordinates (a, b, c, d) with b, c in jordan_coords order.
template <class S>
VecX<S> w_coords(const WElem<S>& v) {
  const Eigen::Index m = jordan_dim(v.algebra().dim());
  VecX<S> r(2 + 2 * m);
  r[0] = v.a;
  r.segment(1, m) = jordan_coords(v.b);
  r.segment(1 + m, m) = jordan_coords(v.c);
  r[1 + 2 * m] = v.d;
  return r;
}

template <class S>
WElem<S> w_from_coords(const CompositionAlgebra<S>& alg, const VecX<S>& r) {
  const Eigen::Index m = jordan_dim(alg.dim());
  if (r.size() != 2 + 2 * m) throw DomainError("W coordinate vector has wrong length");
  return {r[0], jordan_from_coords(alg, VecX<S>(r.segment(1, m))), jordan_from_coords(alg, VecX<S>(r.segment(1 + m, m))),
          r[1 + 2 * m]};
}

/// <v,w> = a d' - Tr(b*c') + Tr(c*b') - d a'
template <class S>
S symplectic(const WElem<S>& v, const WElem<S>& w) {
  return v.a * w.d - trace_pairing(v.b, w.c) + trace_pairing(v.c, w.b) - v.d * w.a;
}

/// q(v) = (ad - Tr(b*c))^2 + 4aN(c) + 4dN(b) - 4Tr(b# * c#)
template <class S>
S quartic(const WElem<S>& v) {
  const S four = from_int<S>(v.algebra().field(), 4);
  const S l = v.a * v.d - trace_pairing(v.b, v.c);
  return l * l + four * (v.a * jordan_norm(v.c) + v.d * jordan_norm(v.b) - trace_pairing(sharp(v.b), sharp(v.c)));
}

/// Symmetric 4-linear form with (v,v,v,v) = 2q(v): one twelfth of the full
/// inclusion-exclusion polarization of q.
template <class S>
S fourlinear(const WElem<S>& v1, const WElem<S>& v2, const WElem<S>& v3, const WElem<S>& v4) {
  const WElem<S>* vs[4] = {&v1, &v2, &v3, &v4};
  S total = v1.algebra().zero_scalar();
  for (int mask = 1; mask < 16; ++mask) {
    WElem<S> s = w_zero(v1.algebra());
    int bits = 0;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) {
        s = s + *vs[i];
        ++bits;
      }
    S qs = quartic(s);
    total += (bits % 2 == 0) ? qs : -qs;
  }
  return total * from_int<S>(v1.algebra().field(), 12).inverse();
}

/// (v,v,v,w), read off the linear coefficient of t -> q(v + t w).
template <class S>
S fourlinear_vvvw(const WElem<S>& v, const WElem<S>& w) {
  const auto& f = v.algebra().field();
  auto at = [&](long t) { return quartic(v + from_int<S>(f, t) * w); };
  const S A = at(1) - at(-1), B = at(2) - at(-2);  // 2(c1 + c3), 2(2c1 + 8c3)
  // c1 = (8A - B) / 12 and (v,v,v,w) = c1 / 2
  return (from_int<S>(f, 8) * A - B) * from_int<S>(f, 24).inverse();
}

template <class S>
WElem<S> flat(const WElem<S>& v) {
  const auto& f = v.algebra().field();
  const S two = from_int<S>(f, 2);
  const S l = v.a * v.d - trace_pairing(v.b, v.c);
  const auto bs = sharp(v.b), cs = sharp(v.c);
  WElem<S> r;
  r.a = -v.a * l - two * jordan_norm(v.b);
  r.b = two * (v.a * cs - cross(v.c, bs)) - l * v.b;
  // the d-term is read as -2 d b#
  r.c = two * (cross(v.b, cs) - v.d * bs) + l * v.c;
  r.d = v.d * l + two * jordan_norm(v.c);
  return r;
}

/// Cached quadratic data of v for repeated flat derivatives.
template <class S>
struct FlatJet {
  explicit FlatJet(const WElem<S>& v)
      : v(v), l(v.a * v.d - trace_pairing(v.b, v.c)), bs(sharp(v.b)), cs(sharp(v.c)),
        two(from_int<S>(v.algebra().field(), 2)) {}
  WElem<S> v;
  S l;
  JordanElem<S> bs, cs;
  S two;
};

/// Directional derivative of flat at v along w (linear in w). Equals
/// (flat(v+w) - flat(v-w))/2 - flat(w).
template <class S>
WElem<S> flat_derivative(const FlatJet<S>& jet, const WElem<S>& w) {
  const auto& v = jet.v;
  const S& two = jet.two;
  const S dl = v.a * w.d + w.a * v.d - trace_pairing(w.b, v.c) - trace_pairing(v.b, w.c);
  const auto bxb = cross(v.b, w.b), cxc = cross(v.c, w.c);
  WElem<S> r;
  r.a = -(w.a * jet.l) - v.a * dl - two * trace_pairing(jet.bs, w.b);
  r.b = two * (w.a * jet.cs + v.a * cxc - cross(w.c, jet.bs) - cross(v.c, bxb)) - dl * v.b - jet.l * w.b;
  r.c = two * (cross(w.b, jet.cs) + cross(v.b, cxc) - w.d * jet.bs - v.d * bxb) + dl * v.c + jet.l * w.c;
  r.d = w.d * jet.l + v.d * dl + two * trace_pairing(jet.cs, w.c);
  return r;
}

/// The symplectic pairing with v as a coordinate row: row . w_coords(w) = <v,w>.
template <class S>
VecX<S> symplectic_row(const WElem<S>& v) {
  const auto& alg = v.algebra();
  const int n = w_dim(alg.dim());
  VecX<S> row(n);
  VecX<S> e = VecX<S>::Constant(n, alg.zero_scalar());
  for (int i = 0; i < n; ++i) {
    e[i] = alg.one_scalar();
    row[i] = symplectic(v, w_from_coords(alg, e));
    e[i] = alg.zero_scalar();
  }
  return row;
}

/// Basis of v-perp (columns), v nonzero.
template <class S>
MatX<S> perp_basis(const WElem<S>& v) {
  VecX<S> row = symplectic_row(v);
  MatX<S> m(1, row.size());
  m.row(0) = row.transpose();
  return kernel_basis(m, v.algebra().one_scalar());
}

enum class RankMethod {
  /// (v,v,w,w') = 0 on all pairs of a v-perp basis, from the polarized quartic.
  reference,
  /// The same condition read through the flat map: (v,v,w,.) vanishes on
  /// v-perp iff the derivative of flat at v along w lies in span(v).
  fast
};

/// True iff (v,v,w,w') = 0 for all w, w' in v-perp. v must be nonzero.
template <class S>
bool rank_at_most_one_test(const WElem<S>& v, RankMethod method) {
  const auto& alg = v.algebra();
  MatX<S> basis = perp_basis(v);
  std::vector<WElem<S>> perp;
  perp.reserve(basis.cols());
  for (Eigen::Index j = 0; j < basis.cols(); ++j) perp.push_back(w_from_coords(alg, VecX<S>(basis.col(j))));

  if (method == RankMethod::reference) {
    for (std::size_t i = 0; i < perp.size(); ++i)
      for (std::size_t j = i; j < perp.size(); ++j)
        if (!is_zero(fourlinear(v, v, perp[i], perp[j]))) return false;
    return true;
  }

  const VecX<S> vc = w_coords(v);
  Eigen::Index pivot = 0;
  while (is_zero(vc[pivot])) ++pivot;
  const S inv = vc[pivot].inverse();
  FlatJet<S> jet(v);
  for (const auto& w : perp) {
    VecX<S> dc = w_coords(flat_derivative(jet, w));
    const S t = dc[pivot] * inv;
    for (Eigen::Index k = 0; k < dc.size(); ++k)
      if (dc[k] != t * vc[k]) return false;
  }
  return true;
}

/// Rank 0..4: the minimal k whose defining condition holds, tested from the
/// strongest condition (v = 0) to the weakest.
template <class S>
int rank_w(const WElem<S>& v, RankMethod method = RankMethod::fast) {
  if (v.is_zero()) return 0;
  if (method == RankMethod::fast) {
    // Each condition implies the weaker ones, so the cheap tests can go first.
    if (!is_zero(quartic(v))) return 4;
    if (!flat(v).is_zero()) return 3;
    return rank_at_most_one_test(v, method) ? 1 : 2;
  }
  if (rank_at_most_one_test(v, method)) return 1;
  if (flat(v).is_zero()) return 2;
  if (is_zero(quartic(v))) return 3;
  return 4;
}

/// (1, b, b#, N(b))
template <class S>
WElem<S> special_rank1(const JordanElem<S>& b) {
  return {b.alg->one_scalar(), b, sharp(b), jordan_norm(b)};
}

/// Conditions (1)-(3) of the rank-one criterion; (3) is checked on the given
/// Levi elements as the Jordan identity h(b) * h~(c) = ad I.
template <class S>
bool rank1_criterion(const WElem<S>& v, const std::vector<Levi<S>>& levis) {
  if (v.is_zero()) return false;
  if (sharp(v.b) != v.a * v.c) return false;
  if (sharp(v.c) != v.d * v.b) return false;
  const auto& alg = v.algebra();
  const auto adI = (v.a * v.d) * jordan_identity(alg);
  if (jordan_mul(v.b, v.c) != adI) return false;
  for (const auto& L : levis)
    if (jordan_mul(L.act(v.b), L.dual(v.c)) != adI) return false;
  return true;
}

template <class S>
std::vector<Levi<S>> random_levis(const CompositionAlgebra<S>& alg, int count, Rng& rng) {
  std::vector<Levi<S>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_levi(alg, rng));
  return out;
}

// ---------------------------------------------------------------------------
// Generators

template <class S>
struct Atom {
  enum class Kind { n, nbar, s, sstar, involution, levi };
  Kind kind;
  std::optional<JordanElem<S>> x;
  S lambda{};
  std::optional<Levi<S>> levi;

  static Atom n(JordanElem<S> x) { return {Kind::n, std::move(x), {}, std::nullopt}; }
  static Atom nbar(JordanElem<S> x) { return {Kind::nbar, std::move(x), {}, std::nullopt}; }
  static Atom s(const S& lambda) { return {Kind::s, std::nullopt, nonzero(lambda), std::nullopt}; }
  static Atom sstar(const S& lambda) { return {Kind::sstar, std::nullopt, nonzero(lambda), std::nullopt}; }
  static Atom involution() { return {Kind::involution, std::nullopt, {}, std::nullopt}; }
  static Atom make_levi(Levi<S> l) { return {Kind::levi, std::nullopt, {}, std::move(l)}; }

  static const S& nonzero(const S& lambda) {
    if (fkit::is_zero(lambda)) throw InvalidParameter("lambda must be nonzero");
    return lambda;
  }
};

/// Atoms are applied in order: the first atom acts first.
template <class S>
using Word = std::vector<Atom<S>>;

template <class S>
WElem<S> apply_atom(const Atom<S>& atom, const WElem<S>& v) {
  using K = typename Atom<S>::Kind;
  const auto& [a, b, c, d] = v;
  switch (atom.kind) {
    case K::n: {
      const auto& x = *atom.x;
      const auto xs = sharp(x);
      return {a, b + a * x, c + cross(b, x) + a * xs,
              d + trace_pairing(c, x) + trace_pairing(b, xs) + a * jordan_norm(x)};
    }
    case K::nbar: {
      const auto& x = *atom.x;
      const auto xs = sharp(x);
      return {a + trace_pairing(b, x) + trace_pairing(c, xs) + d * jordan_norm(x), b + cross(c, x) + d * xs,
              c + d * x, d};
    }
    case K::s: {
      const S& l = atom.lambda;
      return {l * l * a, l * b, c, l.inverse() * d};
    }
    case K::sstar: {
      const S& l = atom.lambda;
      return {l.inverse() * a, b, l * c, l * l * d};
    }
    case K::involution:
      return {-d, c, -b, a};
    case K::levi: {
      const auto& L = *atom.levi;
      return {L.det() * a, L.act(b), L.dual(c), L.det().inverse() * d};
    }
  }
  throw std::logic_error("unknown generator atom");
}

template <class S>
WElem<S> apply_word(const Word<S>& word, WElem<S> v) {
  for (const auto& atom : word) v = apply_atom(atom, v);
  return v;
}

/// The factor each atom is expected to carry: lambda for s and s*, 1 otherwise.
template <class S>
S nominal_factor(const Word<S>& word, const FieldDescriptor& f) {
  S nu = from_int<S>(f, 1);
  for (const auto& atom : word)
    if (atom.kind == Atom<S>::Kind::s || atom.kind == Atom<S>::Kind::sstar) nu *= atom.lambda;
  return nu;
}

/// nu with <gv,gw> = nu <v,w> and q(gv) = nu^2 q(v) on `probes` random
/// vectors. Throws DomainError if no single nu fits.
template <class S>
S similitude_factor(const Word<S>& word, const CompositionAlgebra<S>& alg, Rng& rng, int probes = 32) {
  std::vector<WElem<S>> vs, gvs;
  for (int i = 0; i < probes; ++i) {
    vs.push_back(random_w(alg, rng));
    gvs.push_back(apply_word(word, vs.back()));
  }
  std::optional<S> nu;
  for (int i = 0; i + 1 < probes && !nu; ++i) {
    S base = symplectic(vs[i], vs[i + 1]);
    if (!is_zero(base)) nu = symplectic(gvs[i], gvs[i + 1]) / base;
  }
  if (!nu) throw DomainError("similitude factor: probes are degenerate");
  for (int i = 0; i < probes; ++i) {
    const int j = (i + 1) % probes;
    if (symplectic(gvs[i], gvs[j]) != *nu * symplectic(vs[i], vs[j]))
      throw DomainError("word does not scale the symplectic form by a constant");
    if (quartic(gvs[i]) != *nu * *nu * quartic(vs[i])) throw DomainError("word does not scale q by nu^2");
  }
  return *nu;
}

template <class S>
S random_nonzero(const FieldDescriptor& f, Rng& rng) {
  for (;;) {
    S s = FieldTraits<S>::random(f, rng);
    if (!is_zero(s)) return s;
  }
}

template <class S>
Atom<S> random_atom(const CompositionAlgebra<S>& alg, Rng& rng) {
  switch (rng() % 6) {
    case 0:
      return Atom<S>::n(random_jordan(alg, rng));
    case 1:
      return Atom<S>::nbar(random_jordan(alg, rng));
    case 2:
      return Atom<S>::s(random_nonzero<S>(alg.field(), rng));
    case 3:
      return Atom<S>::sstar(random_nonzero<S>(alg.field(), rng));
    case 4:
      return Atom<S>::involution();
    default:
      return Atom<S>::make_levi(random_levi(alg, rng));
  }
}

template <class S>
Word<S> random_word(const CompositionAlgebra<S>& alg, Rng& rng, int max_len = 6) {
  Word<S> w;
  const int len = 1 + static_cast<int>(rng() % max_len);
  for (int i = 0; i < len; ++i) w.push_back(random_atom(alg, rng));
  return w;
}

/// (0,0,0,0), (1,0,0,0), (1,0,diag(1,0,0),0), (1,0,diag(1,1,0),0), (1,0,0,1) for ranks 0..4.
template <class S>
WElem<S> rank_representative(const CompositionAlgebra<S>& alg, int rank) {
  const S one = alg.one_scalar(), zero = alg.zero_scalar();
  WElem<S> v = w_zero(alg);
  switch (rank) {
    case 0:
      break;
    case 1:
      v.a = one;
      break;
    case 2:
      v.a = one;
      v.c = jordan_diag(alg, one, zero, zero);
      break;
    case 3:
      v.a = one;
      v.c = jordan_diag(alg, one, one, zero);
      break;
    default:
      v.a = one;
      v.d = one;
      break;
  }
  return v;
}

}  // namespace fkit
