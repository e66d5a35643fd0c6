#include "fkit/quadform.hpp"

#include <algorithm>

namespace fkit {

namespace {

mpz_class squarefree_int(mpz_class n) {
  if (n == 0) return 0;
  mpz_class out = sgn(n) < 0 ? -1 : 1;
  n = abs(n);
  for (const mpz_class& p : prime_factors(n)) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return out;
}

/// v_p(n) and the p-free part of a nonzero integer.
int split_valuation(mpz_class& n, const mpz_class& p) {
  int e = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++e;
  }
  return e;
}

int legendre(const mpz_class& u, const mpz_class& p) { return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()); }

int mod8(const mpz_class& u) {
  mpz_class r = u % 8;
  if (r < 0) r += 8;
  return static_cast<int>(r.get_si());
}

}  // namespace

std::vector<mpz_class> prime_factors(mpz_class n) {
  if (n == 0) throw DomainError("prime_factors of zero");
  n = abs(n);
  std::vector<mpz_class> out;
  for (unsigned long p = 2; p <= 1000000 && n > 1; p += (p == 2 ? 1 : 2)) {
    if (static_cast<unsigned long>(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
  }
  if (n > 1) {
    if (n > mpz_class("1000000000000") && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      throw SizeOverflow("integer too large to factor by trial division");
    out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational squarefree_class(const Rational& q) {
  if (q.is_zero()) return Rational(0);
  return Rational(mpq_class(squarefree_int(q.num() * q.den())));
}

int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  if (a.is_zero() || b.is_zero()) throw DomainError("Hilbert symbol of zero");
  if (v == kInfinity) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
  const mpz_class p(static_cast<unsigned long>(v));
  // r/s is in the square class of r*s
  mpz_class u = a.num() * a.den(), w = b.num() * b.den();
  const int alpha = split_valuation(u, p), beta = split_valuation(w, p);
  if (v == 2) {
    auto eps = [](int r) { return ((r - 1) / 2) % 2; };
    auto omega = [](int r) { return ((r * r - 1) / 8) % 2; };
    const int ru = mod8(u), rw = mod8(w);
    const int e = eps(ru) * eps(rw) + alpha * omega(rw) + beta * omega(ru);
    return e % 2 ? -1 : 1;
  }
  int sign = 1;
  if ((alpha * beta) % 2 && mod8(p) % 4 == 3) sign = -sign;
  if (beta % 2) sign *= legendre(u, p);
  if (alpha % 2) sign *= legendre(w, p);
  return sign;
}

int hasse_invariant(const std::array<Rational, 3>& diag, Place v) {
  return hilbert_symbol(diag[0], diag[1], v) * hilbert_symbol(diag[0], diag[2], v) *
         hilbert_symbol(diag[1], diag[2], v);
}

std::vector<Place> relevant_places(const std::vector<Rational>& values) {
  std::vector<Place> out{kInfinity, 2};
  for (const Rational& q : values) {
    if (q.is_zero()) continue;
    for (const mpz_class& n : {q.num(), q.den()})
      for (const mpz_class& p : prime_factors(n)) {
        if (!p.fits_ulong_p()) throw SizeOverflow("prime too large for a place");
        Place pl = p.get_ui();
        if (std::find(out.begin(), out.end(), pl) == out.end()) out.push_back(pl);
      }
  }
  return out;
}

bool ternary_isometric(const TernaryForm<Rational>& f1, const TernaryForm<Rational>& f2) {
  if (!f1.nondegenerate() || !f2.nondegenerate()) throw DomainError("ternary_isometric needs nondegenerate forms");
  if (squarefree_class(f1.det()) != squarefree_class(f2.det())) return false;
  const auto d1 = diagonalize(f1).diag, d2 = diagonalize(f2).diag;
  for (Place v : relevant_places({d1[0], d1[1], d1[2], d2[0], d2[1], d2[2]}))
    if (hasse_invariant(d1, v) != hasse_invariant(d2, v)) return false;
  return true;
}

bool ternary_isotropic(const TernaryForm<Rational>& f) {
  if (!f.nondegenerate()) throw DomainError("ternary_isotropic needs a nondegenerate form");
  const auto d = diagonalize(f).diag;
  const Rational minus_det = -(d[0] * d[1] * d[2]);
  for (Place v : relevant_places({d[0], d[1], d[2], minus_det}))
    if (hasse_invariant(d, v) != hilbert_symbol(Rational(-1), minus_det, v)) return false;
  return true;
}

}  // namespace fkit
