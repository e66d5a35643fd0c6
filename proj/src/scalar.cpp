#include "fkit/scalar.hpp"

#include <charconv>
#include <numeric>

namespace fkit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::int64_t powmod(std::int64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1, x = static_cast<std::uint64_t>(Fp::reduce(b, p));
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("not an integer: '" + std::string(s) + "'");
  return v;
}

// Generic Tonelli-Shanks over a finite field of order q.
template <class S>
std::optional<S> tonelli(const S& x, std::uint64_t q, const S& one, const S& nonresidue) {
  if (x.is_zero()) return x;
  if (pow(x, (q - 1) / 2, one) != one) return std::nullopt;
  std::uint64_t m = q - 1;
  int s = 0;
  while ((m & 1) == 0) {
    m >>= 1;
    ++s;
  }
  S z = pow(nonresidue, m, one);
  S t = pow(x, m, one);
  S r = pow(x, (m + 1) / 2, one);
  int big_m = s;
  while (t != one) {
    int i = 0;
    S t2 = t;
    while (t2 != one) {
      t2 *= t2;
      ++i;
    }
    S b = z;
    for (int j = 0; j < big_m - i - 1; ++j) b *= b;
    r *= b;
    z = b * b;
    t *= z;
    big_m = i;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

FieldDescriptor FieldDescriptor::prime(std::uint32_t p) {
  if (p < 5 || !is_prime(p)) throw InvalidParameter("field characteristic must be a prime >= 5, got " + std::to_string(p));
  FieldDescriptor f;
  f.kind = Kind::prime;
  f.p = p;
  return f;
}

FieldDescriptor FieldDescriptor::quadratic_ext(std::uint32_t p, std::uint32_t eps) {
  FieldDescriptor f = prime(p);
  eps %= p;
  if (eps == 0 || powmod(eps, (p - 1) / 2, p) == 1)
    throw InvalidParameter(std::to_string(eps) + " is a square mod " + std::to_string(p));
  f.kind = Kind::quadratic_ext;
  f.eps = eps;
  return f;
}

std::uint64_t FieldDescriptor::order() const {
  switch (kind) {
    case Kind::rationals:
      throw SizeOverflow("Q is infinite");
    case Kind::prime:
      return p;
    case Kind::quadratic_ext:
      break;
  }
  return static_cast<std::uint64_t>(p) * p;
}

std::string FieldDescriptor::name() const {
  switch (kind) {
    case Kind::rationals:
      return "Q";
    case Kind::prime:
      return "F" + std::to_string(p);
    case Kind::quadratic_ext:
      break;
  }
  return "F" + std::to_string(p) + "(sqrt" + std::to_string(eps) + ")";
}

// ---------------------------------------------------------------------------
// Rational

namespace {

using u128 = unsigned __int128;

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b);
  return a << shift;
}

u128 gcd128(u128 a, u128 b) {
  while (b) {
    if ((a >> 64) == 0 && (b >> 64) == 0) return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t uabs(std::int64_t v) { return v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v); }

/// gcd(t, g) for a wide t and a 64-bit g > 0.
std::uint64_t gcd_wide(__int128 t, std::uint64_t g) {
  u128 m = t < 0 ? -static_cast<u128>(t) : static_cast<u128>(t);
  const std::uint64_t r = (m >> 64) == 0 ? static_cast<std::uint64_t>(m) % g : static_cast<std::uint64_t>(m % g);
  return gcd64(g, r);
}

mpz_class mpz_from128(__int128 v) {
  const bool neg = v < 0;
  u128 m = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
  mpz_class z = (hi << 64) + lo;
  return neg ? mpz_class(-z) : z;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  assign(num, den);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  set_big(std::move(c));
}

void Rational::assign(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    n_ = 0;
    d_ = 1;
    big_.reset();
    return;
  }
  if (den != 1) {
    const u128 g = gcd128(num < 0 ? -static_cast<u128>(num) : static_cast<u128>(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (num >= -kMax && num <= kMax && den <= kMax) {
    n_ = static_cast<std::int64_t>(num);
    d_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    big_.emplace(mpz_from128(num), mpz_from128(den));
    n_ = 0;
    d_ = 1;
  }
}

void Rational::assign_reduced(i128 num, i128 den) {
  if (num >= -kMax && num <= kMax && den <= kMax) {
    n_ = static_cast<std::int64_t>(num);
    d_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    big_.emplace(mpz_from128(num), mpz_from128(den));
    n_ = 0;
    d_ = 1;
  }
}

void Rational::set_big(mpq_class q) {
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_fits_slong_p(num.get_mpz_t()) && mpz_fits_slong_p(den.get_mpz_t())) {
    const long n = num.get_si(), d = den.get_si();
    if (n != std::numeric_limits<long>::min()) {
      n_ = n;
      d_ = d;
      big_.reset();
      return;
    }
  }
  n_ = 0;
  d_ = 1;
  big_.emplace(std::move(q));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_from(n_), mpz_from(d_));
  return q;
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (d_ == 1 && o.d_ == 1) {
      std::int64_t r;
      if (!__builtin_add_overflow(n_, o.n_, &r) && r != std::numeric_limits<std::int64_t>::min()) {
        n_ = r;
        return *this;
      }
    }
    // Knuth's form: only gcds of 64-bit quantities
    const std::uint64_t g = gcd64(static_cast<std::uint64_t>(d_), static_cast<std::uint64_t>(o.d_));
    if (g == 1) {
      assign_reduced(static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_, static_cast<i128>(d_) * o.d_);
      return *this;
    }
    const std::int64_t gi = static_cast<std::int64_t>(g);
    const i128 t = static_cast<i128>(n_) * (o.d_ / gi) + static_cast<i128>(o.n_) * (d_ / gi);
    if (t == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    const std::int64_t g2 = static_cast<std::int64_t>(gcd_wide(t, g));
    assign_reduced(t / g2, static_cast<i128>(d_ / gi) * (o.d_ / g2));
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (d_ == 1 && o.d_ == 1) {
      std::int64_t r;
      if (!__builtin_mul_overflow(n_, o.n_, &r) && r != std::numeric_limits<std::int64_t>::min()) {
        n_ = r;
        return *this;
      }
    }
    if (n_ == 0 || o.n_ == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    // cross-cancel first, so the products are already reduced
    const std::int64_t g1 = static_cast<std::int64_t>(gcd64(uabs(n_), static_cast<std::uint64_t>(o.d_)));
    const std::int64_t g2 = static_cast<std::int64_t>(gcd64(uabs(o.n_), static_cast<std::uint64_t>(d_)));
    assign_reduced(static_cast<i128>(n_ / g1) * (o.n_ / g2), static_cast<i128>(d_ / g2) * (o.d_ / g1));
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational operator-(const Rational& a) {
  Rational r = a;
  if (r.big_) {
    r.set_big(mpq_class(-*r.big_));
  } else {
    r.n_ = -r.n_;  // |n_| <= INT64_MAX, so this cannot overflow
  }
  return r;
}

int Rational::compare(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 l = static_cast<i128>(a.n_) * b.d_, r = static_cast<i128>(b.n_) * a.d_;
    return (l > r) - (l < r);
  }
  return cmp(a.to_mpq(), b.to_mpq());
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw ParseError("empty rational");
  auto slash = s.find('/');
  mpz_class num, den = 1;
  auto set = [](mpz_class& z, const std::string& part) {
    if (part.empty() || z.set_str(part, 10) != 0) throw ParseError("not a rational: '" + part + "'");
  };
  if (slash == std::string::npos) {
    set(num, s);
  } else {
    set(num, s.substr(0, slash));
    set(den, s.substr(slash + 1));
    if (den == 0) throw DivisionByZero();
  }
  return Rational(mpq_class(num, den));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Rational r;
  if (big_) {
    r.set_big(mpq_class(1 / *big_));
  } else {
    r.assign(d_, n_);
  }
  return r;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

bool FieldTraits<Rational>::is_square(const Rational& x) {
  if (x.sign() < 0) return false;
  return mpz_perfect_square_p(x.num().get_mpz_t()) && mpz_perfect_square_p(x.den().get_mpz_t());
}

std::optional<Rational> FieldTraits<Rational>::sqrt(const Rational& x) {
  if (!is_square(x)) return std::nullopt;
  mpz_class n = ::sqrt(x.num()), d = ::sqrt(x.den());
  return Rational(mpq_class(n, d));
}

Rational FieldTraits<Rational>::random(const FieldDescriptor&, Rng& rng) {
  long num = static_cast<long>(rng() % 19) - 9;
  long den = static_cast<long>(rng() % 4) + 1;
  return Rational(num, den);
}

std::vector<Rational> FieldTraits<Rational>::elements(const FieldDescriptor&) {
  throw SizeOverflow("cannot enumerate the infinite field Q");
}

// ---------------------------------------------------------------------------
// Fp

Fp Fp::inverse() const {
  if (!p_) throw DomainError("cannot invert an unbound finite-field constant");
  if (v_ == 0) throw DivisionByZero();
  // extended Euclid
  std::int64_t t = 0, nt = 1, r = p_, nr = v_;
  while (nr) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return Fp(t, p_);
}

Fp operator/(const Fp& a, const Fp& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (!b.p_) {
    if (!a.p_) throw DomainError("division of unbound finite-field constants");
    return a * Fp(b.v_, a.p_).inverse();
  }
  return a * b.inverse();
}

Fp FieldTraits<Fp>::parse(const FieldDescriptor& f, std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Fp(parse_int(text), f.p);
  return Fp(parse_int(text.substr(0, slash)), f.p) / Fp(parse_int(text.substr(slash + 1)), f.p);
}

bool FieldTraits<Fp>::is_square(const Fp& x) {
  if (x.is_zero()) return true;
  if (!x.bound()) throw DomainError("unbound finite-field constant");
  return powmod(x.residue(), (x.modulus() - 1) / 2, x.modulus()) == 1;
}

std::optional<Fp> FieldTraits<Fp>::sqrt(const Fp& x) {
  if (x.is_zero()) return x;
  std::uint32_t p = x.modulus();
  Fp one(1, p);
  Fp nr(2, p);
  while (is_square(nr)) nr += one;
  return tonelli(x, p, one, nr);
}

std::vector<Fp> FieldTraits<Fp>::elements(const FieldDescriptor& f) {
  std::vector<Fp> out;
  out.reserve(f.p);
  for (std::uint32_t i = 0; i < f.p; ++i) out.emplace_back(static_cast<std::int64_t>(i), f.p);
  return out;
}

// ---------------------------------------------------------------------------
// Fp2

struct Fp2Access {
  static void bind(const Fp2& x, const Fp2& y, std::uint32_t& p, std::uint32_t& eps) {
    if (x.p_ == y.p_ && x.eps_ == y.eps_) {
      p = x.p_;
      eps = x.eps_;
      return;
    }
    if (!x.p_) {
      p = y.p_;
      eps = y.eps_;
      return;
    }
    if (!y.p_) {
      p = x.p_;
      eps = x.eps_;
      return;
    }
    throw DescriptorMismatch();
  }
  static Fp2 make(std::int64_t a, std::int64_t b, std::uint32_t p, std::uint32_t eps) {
    if (!p) {
      Fp2 r(static_cast<long>(a));
      return r;
    }
    return Fp2(a, b, p, eps);
  }
};

Fp2 operator+(const Fp2& x, const Fp2& y) {
  std::uint32_t p, eps;
  Fp2Access::bind(x, y, p, eps);
  return Fp2Access::make(x.a_ + y.a_, x.b_ + y.b_, p, eps);
}

Fp2 operator-(const Fp2& x, const Fp2& y) {
  std::uint32_t p, eps;
  Fp2Access::bind(x, y, p, eps);
  return Fp2Access::make(x.a_ - y.a_, x.b_ - y.b_, p, eps);
}

Fp2 operator*(const Fp2& x, const Fp2& y) {
  std::uint32_t p, eps;
  Fp2Access::bind(x, y, p, eps);
  if (!p) return Fp2(static_cast<long>(x.a_ * y.a_));
  std::int64_t xa = Fp::reduce(x.a_, p), xb = Fp::reduce(x.b_, p);
  std::int64_t ya = Fp::reduce(y.a_, p), yb = Fp::reduce(y.b_, p);
  std::int64_t re = (xa * ya + static_cast<std::int64_t>(eps) * (xb * yb % p)) % p;
  std::int64_t im = (xa * yb + xb * ya) % p;
  return Fp2(re, im, p, eps);
}

Fp2 operator-(const Fp2& x) {
  if (!x.p_) return Fp2(static_cast<long>(-x.a_));
  return Fp2(-x.a_, -x.b_, x.p_, x.eps_);
}

bool operator==(const Fp2& x, const Fp2& y) {
  std::uint32_t p, eps;
  Fp2Access::bind(x, y, p, eps);
  if (!p) return x.a_ == y.a_;
  return Fp::reduce(x.a_, p) == Fp::reduce(y.a_, p) && Fp::reduce(x.b_, p) == Fp::reduce(y.b_, p);
}

Fp2 Fp2::inverse() const {
  if (!p_) throw DomainError("cannot invert an unbound finite-field constant");
  if (is_zero()) throw DivisionByZero();
  // (a + b r)^{-1} = (a - b r) / (a^2 - eps b^2)
  Fp a(a_, p_), b(b_, p_), e(eps_, p_);
  Fp n = (a * a - e * b * b).inverse();
  return Fp2((a * n).residue(), (-(b * n)).residue(), p_, eps_);
}

std::string Fp2::str() const {
  if (b_ == 0) return std::to_string(a_);
  return std::to_string(a_) + "+" + std::to_string(b_) + "*sqrt(" + std::to_string(eps_) + ")";
}

Fp2 FieldTraits<Fp2>::parse(const FieldDescriptor& f, std::string_view text) {
  auto star = text.find("*sqrt(");
  if (star == std::string_view::npos) return Fp2(parse_int(text), 0, f.p, f.eps);
  auto plus = text.rfind('+', star);
  std::int64_t re = 0;
  std::string_view im_part;
  if (plus == std::string_view::npos || plus == 0) {
    im_part = text.substr(0, star);
  } else {
    re = parse_int(text.substr(0, plus));
    im_part = text.substr(plus + 1, star - plus - 1);
  }
  auto close = text.find(')', star);
  if (close == std::string_view::npos) throw ParseError("unterminated sqrt(...) in '" + std::string(text) + "'");
  std::int64_t e = parse_int(text.substr(star + 6, close - star - 6));
  if (Fp::reduce(e, f.p) != f.eps) throw DescriptorMismatch("sqrt(" + std::to_string(e) + ") does not match field " + f.name());
  return Fp2(re, parse_int(im_part), f.p, f.eps);
}

bool FieldTraits<Fp2>::is_square(const Fp2& x) {
  if (x.is_zero()) return true;
  Fp2 one(1, 0, x.modulus(), x.eps());
  std::uint64_t q = static_cast<std::uint64_t>(x.modulus()) * x.modulus();
  return pow(x, (q - 1) / 2, one) == one;
}

std::optional<Fp2> FieldTraits<Fp2>::sqrt(const Fp2& x) {
  if (x.is_zero()) return x;
  std::uint32_t p = x.modulus();
  FieldDescriptor f = FieldDescriptor::quadratic_ext(p, x.eps());
  Fp2 one(1, 0, p, x.eps());
  Fp2 nr;
  for (const Fp2& z : elements(f))
    if (!z.is_zero() && !is_square(z)) {
      nr = z;
      break;
    }
  return tonelli(x, f.order(), one, nr);
}

std::vector<Fp2> FieldTraits<Fp2>::elements(const FieldDescriptor& f) {
  std::vector<Fp2> out;
  out.reserve(static_cast<std::size_t>(f.p) * f.p);
  for (std::uint32_t a = 0; a < f.p; ++a)
    for (std::uint32_t b = 0; b < f.p; ++b) out.emplace_back(a, b, f.p, f.eps);
  return out;
}

}  // namespace fkit
