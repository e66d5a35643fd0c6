#pragma once

// The restriction F: W_C -> W_F and its fibers over normalized targets
// xi = (1, 0, c, d). A triple x in (C0)^3 lies over xi when
//
//   c = (Tr(x_i x_j) / 2)_ij,   d = Tr(x1 x2 x3).

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fkit/freudenthal.hpp"
#include "fkit/parallel.hpp"
#include "fkit/quadform.hpp"

namespace fkit {

template <class S>
using Triple = std::array<CompElem<S>, 3>;

/// (a, b, c, d) -> (a, f(b), f(c), d), landing in W_F.
template <class S>
WElem<S> F_map(const WElem<S>& w) {
  const auto& alg = w.algebra();
  if (alg.dim() == 1) return w;
  const auto& F = alg.scalars();
  return {w.a, f_map(w.b, F), f_map(w.c, F), w.d};
}

/// W_F inside W_C; F_map is a left inverse.
template <class S>
WElem<S> embed_w(const WElem<S>& w, const CompositionAlgebra<S>& target) {
  return {w.a, embed_jordan(w.b, target), embed_jordan(w.c, target), w.d};
}

/// Symmetric matrix of an element of J_F.
template <class S>
Mat3<S> sym_matrix(const JordanElem<S>& c) {
  if (c.alg->dim() != 1) throw DomainError("sym_matrix expects an element of J_F");
  Mat3<S> m;
  m(0, 0) = c.c[0];
  m(1, 1) = c.c[1];
  m(2, 2) = c.c[2];
  m(1, 2) = m(2, 1) = c.x[0][0];
  m(0, 2) = m(2, 0) = c.x[1][0];
  m(0, 1) = m(1, 0) = c.x[2][0];
  return m;
}

template <class S>
JordanElem<S> jordan_from_sym(const Mat3<S>& m, const CompositionAlgebra<S>& scalars) {
  if (scalars.dim() != 1) throw DomainError("jordan_from_sym needs the unarion");
  JordanElem<S> r = jordan_zero(scalars);
  r.c = {m(0, 0), m(1, 1), m(2, 2)};
  r.x[0][0] = m(1, 2);
  r.x[1][0] = m(0, 2);
  r.x[2][0] = m(0, 1);
  return r;
}

/// (1, 0, c, d) in W_F from a symmetric c.
template <class S>
WElem<S> fiber_target(const CompositionAlgebra<S>& scalars, const Mat3<S>& c, const S& d) {
  const auto one = scalars.one_scalar();
  return {one, jordan_zero(scalars), jordan_from_sym(c, scalars), d + scalars.zero_scalar()};
}

template <class S>
bool is_normalized_target(const WElem<S>& xi) {
  return xi.algebra().dim() == 1 && xi.a == xi.algebra().one_scalar() && xi.b.is_zero();
}

template <class S>
void check_normalized_target(const WElem<S>& xi) {
  if (xi.algebra().dim() != 1) throw DomainError("fiber target must lie in W_F");
  if (!is_normalized_target(xi)) throw DomainError("fiber target must have the form (1, 0, c, d)");
}

template <class S>
void check_triple(const Triple<S>& x) {
  CompElem<S>::check_same(x[0], x[1]);
  CompElem<S>::check_same(x[0], x[2]);
  for (const auto& xi : x)
    if (!is_zero(xi.alg->trace(xi))) throw DomainError("triple entries must have trace zero");
}

/// (Tr(x_i x_j) / 2)_ij
template <class S>
Mat3<S> fiber_gram(const Triple<S>& x) {
  const auto& A = *x[0].alg;
  Mat3<S> g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) g(i, j) = g(j, i) = A.scalar_part(A.mul(x[i].v, x[j].v));
  return g;
}

/// Tr(x1 x2 x3)
template <class S>
S triple_trace(const Triple<S>& x) {
  const auto& A = *x[0].alg;
  return A.trace(A.mul(A.mul(x[0].v, x[1].v), x[2].v));
}

/// (1, J(x), J(x)#, N(J(x)))
template <class S>
WElem<S> rank1_lift(const Triple<S>& x) {
  check_triple(x);
  auto w = special_rank1(jordan_J(x[0], x[1], x[2]));
#ifdef FKIT_CHECK_POSTCONDITIONS
  if (rank_w(w) != 1) throw std::logic_error("rank1_lift produced an element of rank != 1");
#endif
  return w;
}

template <class S>
bool fiber_membership(const WElem<S>& xi, const Triple<S>& x) {
  check_normalized_target(xi);
  check_triple(x);
  if (x[0].alg->field() != xi.algebra().field()) throw DescriptorMismatch("target and triple over different fields");
  return exactly_equal(fiber_gram(x), sym_matrix(xi.c)) && triple_trace(x) == xi.d;
}

template <class S>
struct SexticResult {
  S lhs, rhs;
  bool equal;
};

/// -4 det(Tr(x_i x_j)/2) against Tr(x1 x2 x3)^2.
template <class S>
SexticResult<S> sextic_check(const Triple<S>& x) {
  if (x[0].alg->dim() != 4) throw DomainError("sextic_check needs a 4-dimensional algebra");
  check_triple(x);
  const auto& A = *x[0].alg;
  S lhs = A.scalar(-4) * det3(fiber_gram(x));
  S t = triple_trace(x);
  S rhs = t * t;
  return {lhs, rhs, lhs == rhs};
}

/// All of C0 over a finite field, as combinations of trace0_basis() in
/// odometer order (first coefficient fastest).
template <class S>
std::vector<CompElem<S>> trace0_elements(const CompositionAlgebra<S>& alg) {
  const auto values = enumerate<S>(alg.field());
  const auto basis = alg.trace0_basis();
  const std::size_t q = values.size(), m = basis.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= q;
  std::vector<CompElem<S>> out;
  out.reserve(total);
  std::vector<std::size_t> idx(m, 0);
  for (std::size_t n = 0; n < total; ++n) {
    CompElem<S> e = alg.zero();
    for (std::size_t i = 0; i < m; ++i) e.v += values[idx[i]] * basis[i].v;
    out.push_back(std::move(e));
    for (std::size_t i = 0; i < m; ++i) {
      if (++idx[i] < q) break;
      idx[i] = 0;
    }
  }
  return out;
}

/// C0 combinations with integer coefficients in [-bound, bound].
template <class S>
std::vector<CompElem<S>> trace0_box(const CompositionAlgebra<S>& alg, int bound) {
  const auto basis = alg.trace0_basis();
  const std::size_t m = basis.size(), side = 2 * static_cast<std::size_t>(bound) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= side;
  std::vector<CompElem<S>> out;
  out.reserve(total);
  std::vector<std::size_t> idx(m, 0);
  for (std::size_t n = 0; n < total; ++n) {
    CompElem<S> e = alg.zero();
    for (std::size_t i = 0; i < m; ++i)
      e.v += alg.scalar(static_cast<long long>(idx[i]) - bound) * basis[i].v;
    out.push_back(std::move(e));
    for (std::size_t i = 0; i < m; ++i) {
      if (++idx[i] < side) break;
      idx[i] = 0;
    }
  }
  return out;
}

template <class S>
struct FiberScan {
  std::uint64_t count = 0;
  std::optional<Triple<S>> witness;
};

/// Filtered scan of pool^3 for triples over xi, chunked by x1. With
/// `stop_at_first` each chunk stops at its first hit.
template <class S>
FiberScan<S> scan_fiber(const WElem<S>& xi, const std::vector<CompElem<S>>& pool, int workers, bool stop_at_first) {
  check_normalized_target(xi);
  const Mat3<S> c = sym_matrix(xi.c);
  const S d = xi.d;
  if (pool.empty()) return {};
  const auto& A = *pool[0].alg;
  std::vector<S> self(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) self[i] = A.scalar_part(A.mul(pool[i].v, pool[i].v));
  std::vector<std::size_t> rows[3];
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (int r = 0; r < 3; ++r)
      if (self[i] == c(r, r)) rows[r].push_back(i);

  auto chunk = [&](std::size_t k) {
    FiberScan<S> out;
    const auto& x1 = pool[rows[0][k]];
    for (std::size_t j : rows[1]) {
      const auto& x2 = pool[j];
      if (A.scalar_part(A.mul(x1.v, x2.v)) != c(0, 1)) continue;
      const auto x12 = A.mul(x1.v, x2.v);
      for (std::size_t l : rows[2]) {
        const auto& x3 = pool[l];
        if (A.scalar_part(A.mul(x1.v, x3.v)) != c(0, 2)) continue;
        if (A.scalar_part(A.mul(x2.v, x3.v)) != c(1, 2)) continue;
        if (A.trace(A.mul(x12, x3.v)) != d) continue;
        ++out.count;
        if (!out.witness) out.witness = Triple<S>{x1, x2, x3};
        if (stop_at_first) return out;
      }
    }
    return out;
  };
  FiberScan<S> total;
  if (stop_at_first) {
    // Sequential so the reported witness is the first in scan order.
    for (std::size_t k = 0; k < rows[0].size(); ++k) {
      auto r = chunk(k);
      if (r.witness) return r;
    }
    return total;
  }
  auto parts = run_chunks<FiberScan<S>>(rows[0].size(), workers, chunk);
  for (auto& p : parts) {
    total.count += p.count;
    if (!total.witness && p.witness) total.witness = p.witness;
  }
  return total;
}

enum class FiberStatus { empty, nonempty };

inline const char* to_string(FiberStatus s) { return s == FiberStatus::empty ? "empty" : "nonempty"; }

template <class S>
struct FiberReport {
  FiberStatus status = FiberStatus::empty;
  std::optional<Triple<S>> witness;
  std::optional<std::uint64_t> cardinality;
  std::string reason;
};

/// Fibers over rank-3 targets, dim C = 4. Over Q the answer comes from
/// d^2 = -4 det c and the similarity of c with n on C0, plus a witness search
/// over small coordinates. Over finite fields the fiber is scanned; with
/// `count` the scan is complete and the cardinality is reported.
template <class S>
FiberReport<S> rank3_fiber_test(const WElem<S>& xi, const CompositionAlgebra<S>& alg, bool count = false,
                                int workers = 1, int rational_bound = 2) {
  if (alg.dim() != 4) throw DomainError("rank3_fiber_test needs a 4-dimensional algebra");
  check_normalized_target(xi);
  if (alg.field() != xi.algebra().field()) throw DescriptorMismatch("target and algebra over different fields");
  const Mat3<S> c = sym_matrix(xi.c);
  const S det = det3(c);
  if (is_zero(det)) throw DomainError("c must have rank 3");
  FiberReport<S> rep;
  if (xi.d * xi.d != alg.scalar(-4) * det) {
    rep.reason = "d^2 != -4 det(c)";
    if (count) rep.cardinality = 0;
    return rep;
  }
  if constexpr (std::is_same_v<S, Rational>) {
    if (!ternary_similar(TernaryForm<S>{c}, norm_form_on_trace0(alg))) {
      rep.reason = "c is not similar to the norm form on C0";
      return rep;
    }
    rep.status = FiberStatus::nonempty;
    auto scan = scan_fiber(xi, trace0_box(alg, rational_bound), 1, true);
    rep.witness = scan.witness;
    if (!rep.witness) rep.reason = "no witness with small coordinates";
    return rep;
  } else {
    auto scan = scan_fiber(xi, trace0_elements(alg), workers, !count);
    rep.witness = scan.witness;
    if (scan.witness) rep.status = FiberStatus::nonempty;
    if (count) rep.cardinality = scan.count;
    if (!scan.witness) rep.reason = "scan found no triple";
    return rep;
  }
}

/// dim C = 2: C0 is a line F u, so x = t u and the conditions become
/// c = u^2 t t^T and d = 0. Returns every solution (at most two when c != 0).
template <class S>
FiberReport<S> quadratic_fiber_test(const WElem<S>& xi, const CompositionAlgebra<S>& alg) {
  if (alg.dim() != 2) throw DomainError("quadratic_fiber_test needs a 2-dimensional algebra");
  check_normalized_target(xi);
  if (alg.field() != xi.algebra().field()) throw DescriptorMismatch("target and algebra over different fields");
  const Mat3<S> c = sym_matrix(xi.c);
  FiberReport<S> rep;
  std::vector<Triple<S>> sols;
  const auto u = alg.trace0_basis().at(0);
  const S s = alg.scalar_part(alg.mul(u.v, u.v));
  auto triple = [&](const std::array<S, 3>& t) { return Triple<S>{t[0] * u, t[1] * u, t[2] * u}; };
  if (!is_zero(xi.d)) {
    rep.reason = "d != 0";
  } else if (all_zero(c)) {
    sols.push_back(triple({alg.zero_scalar(), alg.zero_scalar(), alg.zero_scalar()}));
  } else {
    int i = 0;
    while (is_zero(c(i, i)) && i < 2) ++i;
    const S ti2 = c(i, i) / s;
    if (is_zero(c(i, i)) || !is_square(ti2)) {
      rep.reason = is_zero(c(i, i)) ? "c has zero diagonal" : "c is not u^2 t t^T";
    } else {
      const S ti = *FieldTraits<S>::sqrt(ti2);
      for (const S& sign : {alg.one_scalar(), -alg.one_scalar()}) {
        std::array<S, 3> t;
        for (int j = 0; j < 3; ++j) t[j] = c(i, j) / (s * sign * ti);
        auto x = triple(t);
        if (exactly_equal(fiber_gram(x), c)) sols.push_back(x);
      }
      if (sols.empty()) rep.reason = "c has rank above one";
    }
  }
  if (!sols.empty()) {
    rep.status = FiberStatus::nonempty;
    rep.witness = sols.front();
    rep.cardinality = sols.size();
  } else {
    rep.cardinality = 0;
  }
  return rep;
}

/// Split 4-dimensional algebras: n is isotropic on C0.
template <class S>
bool is_split_quaternionic(const CompositionAlgebra<S>& alg) {
  if (alg.dim() != 4) return false;
  if constexpr (std::is_same_v<S, Rational>) {
    return ternary_isotropic(norm_form_on_trace0(alg));
  } else {
    return true;
  }
}

enum class Rank0Kind { not_in_fiber, pure_tensor, violation };

inline const char* to_string(Rank0Kind k) {
  switch (k) {
    case Rank0Kind::not_in_fiber: return "not-in-fiber";
    case Rank0Kind::pure_tensor: return "pure-tensor";
    default: return "violation";
  }
}

template <class S>
struct Rank0Result {
  Rank0Kind kind = Rank0Kind::not_in_fiber;
  std::optional<CompElem<S>> x;
  std::array<S, 6> v;
};

/// Strip coordinates (beta1, beta2, beta3, gamma1, gamma2, gamma3) as x (x) v,
/// x the first nonzero entry, with x^2 = 0.
template <class S>
Rank0Result<S> factor_pure_tensor(const std::array<CompElem<S>, 6>& strips) {
  const auto& A = *strips[0].alg;
  Rank0Result<S> r;
  r.kind = Rank0Kind::violation;
  int first = 0;
  while (first < 6 && strips[first].is_zero()) ++first;
  if (first == 6) return r;
  const auto& x = strips[first];
  Eigen::Index pivot = 0;
  while (is_zero(x.v[pivot])) ++pivot;
  const S inv = x.v[pivot].inverse();
  for (int k = 0; k < 6; ++k) {
    r.v[k] = strips[k].v[pivot] * inv;
    if (!exactly_equal(strips[k].v, r.v[k] * x.v)) return r;
  }
  if (!all_zero(A.mul(x.v, x.v))) return r;
  r.kind = Rank0Kind::pure_tensor;
  r.x = x;
  return r;
}

template <class S>
std::array<CompElem<S>, 6> strips_of(const WElem<S>& w) {
  const auto* A = &w.algebra();
  return {CompElem<S>{A, w.b.x[0]}, CompElem<S>{A, w.b.x[1]}, CompElem<S>{A, w.b.x[2]},
          CompElem<S>{A, w.c.x[0]}, CompElem<S>{A, w.c.x[1]}, CompElem<S>{A, w.c.x[2]}};
}

/// Rank-one elements over xi = 0 factor as pure tensors x (x) v with x^2 = 0.
/// Anything else in the fiber is returned as a violation.
template <class S>
Rank0Result<S> rank0_fiber_predicate(const WElem<S>& w) {
  const auto& alg = w.algebra();
  if (!is_split_quaternionic(alg)) throw DomainError("rank0_fiber_predicate needs a split 4-dimensional algebra");
  Rank0Result<S> r;
  if (!F_map(w).is_zero() || rank_w(w) != 1) return r;
  return factor_pure_tensor(strips_of(w));
}

struct Rank0ScanReport {
  std::uint64_t null_triples = 0;  // beta in (C0)^3 with J(beta)# = 0, zero included
  std::uint64_t pairs = 0;
  std::uint64_t rank1 = 0;
  std::uint64_t pure_tensors = 0;
  std::uint64_t violations = 0;
  std::string certificate;  // first violation, if any
  std::uint64_t expected = 0;  // (q^2-1)(q^6-1)/(q-1)
  bool ok() const { return violations == 0 && rank1 == expected && pure_tensors == rank1; }
};

/// Every rank-one element of F^{-1}(0) over a finite field. Such elements are
/// (0, J(beta), J(gamma), 0) with beta, gamma in (C0)^3. (1,0,0,0) and
/// (0,0,0,1) lie in v-perp and the flat derivatives along them are
/// (-l, 2 c#, 0, 0) and (0, 0, -2 b#, l); rank one forces both into span(v),
/// hence b# = c# = 0, so only those beta, gamma are paired.
template <class S>
Rank0ScanReport rank0_fiber_scan(const CompositionAlgebra<S>& alg, int workers) {
  if (!is_split_quaternionic(alg)) throw DomainError("rank0_fiber_scan needs a split 4-dimensional algebra");
  const std::uint64_t q = alg.field().order();
  const auto c0 = trace0_elements(alg);
  std::vector<CompElem<S>> null;
  for (const auto& x : c0)
    if (is_zero(alg.norm(x))) null.push_back(x);
  std::vector<JordanElem<S>> jb;
  for (const auto& b1 : null)
    for (const auto& b2 : null)
      for (const auto& b3 : null) {
        auto J = jordan_J(b1, b2, b3);
        if (sharp(J).is_zero()) jb.push_back(J);
      }
  Rank0ScanReport rep;
  rep.null_triples = jb.size();
  rep.expected = (q * q - 1) * (q * q * q * q * q * q - 1) / (q - 1);
  const S zero = alg.zero_scalar();
  auto chunk = [&](std::size_t i) {
    Rank0ScanReport part;
    for (std::size_t j = 0; j < jb.size(); ++j) {
      WElem<S> w{zero, jb[i], jb[j], zero};
      if (w.is_zero()) continue;
      ++part.pairs;
      if (rank_w(w) != 1) continue;
      ++part.rank1;
      auto f = factor_pure_tensor(strips_of(w));
      if (f.kind == Rank0Kind::pure_tensor) {
        ++part.pure_tensors;
      } else {
        ++part.violations;
        if (part.certificate.empty()) {
          std::ostringstream os;
          os << "pair (" << i << ", " << j << ") has rank 1 but does not factor";
          part.certificate = os.str();
        }
      }
    }
    return part;
  };
  for (const auto& p : run_chunks<Rank0ScanReport>(jb.size(), workers, chunk)) {
    rep.pairs += p.pairs;
    rep.rank1 += p.rank1;
    rep.pure_tensors += p.pure_tensors;
    rep.violations += p.violations;
    if (rep.certificate.empty()) rep.certificate = p.certificate;
  }
  return rep;
}

struct NilpotentPairReport {
  std::uint64_t nilpotents = 0;
  std::uint64_t pairs = 0;
  std::uint64_t anticommuting = 0;
  std::uint64_t counterexamples = 0;
};

/// 2x2 matrices beta, gamma over F_p with beta^2 = gamma^2 = 0 and
/// beta gamma + gamma beta = 0 are proportional.
template <class S>
NilpotentPairReport nilpotent_pair_oracle(const FieldDescriptor& f) {
  using M2 = Eigen::Matrix<S, 2, 2>;
  const auto values = enumerate<S>(f);
  const S zero = from_int<S>(f, 0);
  std::vector<M2> nil;
  for (const S& a : values)
    for (const S& b : values)
      for (const S& c : values)
        for (const S& d : values) {
          M2 m;
          m << a, b, c, d;
          if (all_zero(M2(m * m))) nil.push_back(m);
        }
  NilpotentPairReport rep;
  rep.nilpotents = nil.size();
  for (const auto& x : nil)
    for (const auto& y : nil) {
      ++rep.pairs;
      if (!all_zero(M2(x * y + y * x))) continue;
      ++rep.anticommuting;
      // proportional iff the 2x4 matrix of entries has rank <= 1
      const S e[2][4] = {{x(0, 0), x(0, 1), x(1, 0), x(1, 1)}, {y(0, 0), y(0, 1), y(1, 0), y(1, 1)}};
      bool prop = true;
      for (int i = 0; i < 4 && prop; ++i)
        for (int j = i + 1; j < 4 && prop; ++j)
          if (e[0][i] * e[1][j] - e[0][j] * e[1][i] != zero) prop = false;
      if (!prop) ++rep.counterexamples;
    }
  return rep;
}

}  // namespace fkit
