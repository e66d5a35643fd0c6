#pragma once

// Exact coefficient fields: rationals (GMP-backed), prime fields F_p and
// quadratic extensions F_p(sqrt eps). All three scalar types are plain values
// usable as Eigen scalars.
//
// Finite-field scalars carry their modulus. A scalar constructed from a bare
// integer (as Eigen does for Zero()/Identity()) is "unbound": it behaves as an
// integer constant and adopts the modulus of the first bound operand it meets.

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fkit/error.hpp"

namespace fkit {

/// SplitMix64: a counter-based generator, cheap to seed per sample index.
class Rng {
 public:
  using result_type = std::uint64_t;
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}
  /// Independent stream for (seed, index).
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ 0x6a09e667f3bcc909ULL);
    r.state_ = r() + index * 0x9e3779b97f4a7c15ULL;
    return r;
  }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Field descriptors

struct FieldDescriptor {
  enum class Kind { rationals, prime, quadratic_ext };

  Kind kind = Kind::rationals;
  std::uint32_t p = 0;
  std::uint32_t eps = 0;

  static FieldDescriptor rationals() { return {}; }
  /// Throws InvalidParameter unless p is a prime >= 5.
  static FieldDescriptor prime(std::uint32_t p);
  /// Throws InvalidParameter unless p is a prime >= 5 and eps a nonresidue mod p.
  static FieldDescriptor quadratic_ext(std::uint32_t p, std::uint32_t eps);

  bool finite() const { return kind != Kind::rationals; }
  /// Number of elements; throws SizeOverflow for Q.
  std::uint64_t order() const;
  std::string name() const;  // "Q", "F5", "F5(sqrt2)"

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

bool is_prime(std::uint64_t n);

// ---------------------------------------------------------------------------
// Rational

/// Exact rationals. Values whose reduced numerator and denominator fit in 64
/// bits are stored inline; larger ones spill to GMP. The representation is
/// canonical: a value is stored inline whenever it fits.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : n_(n) {}
  Rational(long n) : n_(n) { if (n == std::numeric_limits<long>::min()) set_big(mpq_class(n)); }
  Rational(long num, long den);
  explicit Rational(const mpq_class& q);

  static Rational parse(std::string_view text);

  mpq_class to_mpq() const;
  mpz_class num() const { return big_ ? mpz_class(big_->get_num()) : mpz_from(n_); }
  mpz_class den() const { return big_ ? mpz_class(big_->get_den()) : mpz_from(d_); }
  int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
  bool is_zero() const { return !big_ && n_ == 0; }
  std::string str() const;

  Rational inverse() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using i128 = __int128;
  static mpz_class mpz_from(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
  static int compare(const Rational& a, const Rational& b);
  /// Reduces num/den (den != 0) and stores it inline if it fits.
  void assign(i128 num, i128 den);
  /// Stores num/den, already coprime with den > 0.
  void assign_reduced(i128 num, i128 den);
  void set_big(mpq_class q);

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;  // > 0, coprime to n_
  std::optional<mpq_class> big_;
};

// ---------------------------------------------------------------------------
// Prime field

class Fp {
 public:
  constexpr Fp() = default;
  constexpr Fp(int k) : v_(k) {}
  constexpr Fp(long k) : v_(k) {}
  /// Bound residue of `value` modulo p.
  Fp(std::int64_t value, std::uint32_t p) : v_(reduce(value, p)), p_(p) {}

  std::uint32_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }
  /// Canonical residue in [0,p) (bound) or the raw integer (unbound).
  std::int64_t residue() const { return v_; }
  bool is_zero() const { return p_ ? v_ == 0 : v_ == 0; }
  std::string str() const { return std::to_string(v_); }

  Fp inverse() const;
  Fp bound_to(std::uint32_t p) const { return p_ == p ? *this : Fp(v_, p); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    if (a.p_ == b.p_) {
      if (!a.p_) return Fp(a.v_ + b.v_);
      std::int64_t s = a.v_ + b.v_;
      return raw(s >= a.p_ ? s - a.p_ : s, a.p_);
    }
    std::uint32_t p = common(a.p_, b.p_);
    return Fp(a.v_ + b.v_, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    if (a.p_ == b.p_) {
      if (!a.p_) return Fp(a.v_ - b.v_);
      std::int64_t s = a.v_ - b.v_;
      return raw(s < 0 ? s + a.p_ : s, a.p_);
    }
    std::uint32_t p = common(a.p_, b.p_);
    return Fp(a.v_ - b.v_, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    if (a.p_ == b.p_) {
      if (!a.p_) return Fp(a.v_ * b.v_);
      return raw(static_cast<std::int64_t>(static_cast<std::uint64_t>(a.v_) *
                                           static_cast<std::uint64_t>(b.v_) % a.p_),
                 a.p_);
    }
    std::uint32_t p = common(a.p_, b.p_);
    return Fp(a.v_, p) * Fp(b.v_, p);
  }
  friend Fp operator/(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a) { return a.p_ ? raw(a.v_ ? a.p_ - a.v_ : 0, a.p_) : Fp(-a.v_); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ == b.p_) return a.v_ == b.v_;
    std::uint32_t p = common(a.p_, b.p_);
    return reduce(a.v_, p) == reduce(b.v_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

  static std::int64_t reduce(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
  }

 private:
  static Fp raw(std::int64_t v, std::uint32_t p) {
    Fp x;
    x.v_ = v;
    x.p_ = p;
    return x;
  }
  static std::uint32_t common(std::uint32_t p, std::uint32_t q) {
    if (p == q || q == 0) return p;
    if (p == 0) return q;
    throw DescriptorMismatch();
  }

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

// ---------------------------------------------------------------------------
// Quadratic extension F_p(sqrt eps): a + b*sqrt(eps)

class Fp2 {
 public:
  constexpr Fp2() = default;
  constexpr Fp2(int k) : a_(k) {}
  constexpr Fp2(long k) : a_(k) {}
  Fp2(std::int64_t a, std::int64_t b, std::uint32_t p, std::uint32_t eps)
      : a_(Fp::reduce(a, p)), b_(Fp::reduce(b, p)), p_(p), eps_(eps) {}

  std::uint32_t modulus() const { return p_; }
  std::uint32_t eps() const { return eps_; }
  bool bound() const { return p_ != 0; }
  std::int64_t re() const { return a_; }
  std::int64_t im() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  std::string str() const;

  Fp2 inverse() const;

  friend Fp2 operator+(const Fp2& x, const Fp2& y);
  friend Fp2 operator-(const Fp2& x, const Fp2& y);
  friend Fp2 operator*(const Fp2& x, const Fp2& y);
  friend Fp2 operator/(const Fp2& x, const Fp2& y) { return x * y.inverse(); }
  friend Fp2 operator-(const Fp2& x);

  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
  Fp2& operator/=(const Fp2& o) { return *this = *this / o; }

  friend bool operator==(const Fp2& x, const Fp2& y);
  friend bool operator!=(const Fp2& x, const Fp2& y) { return !(x == y); }
  friend std::ostream& operator<<(std::ostream& os, const Fp2& x) { return os << x.str(); }

 private:
  friend struct Fp2Access;
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t eps_ = 0;
};

// ---------------------------------------------------------------------------
// Per-type field operations

template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr FieldDescriptor::Kind kind = FieldDescriptor::Kind::rationals;
  static Rational from_int(const FieldDescriptor&, long long k) { return Rational(static_cast<long>(k)); }
  static Rational parse(const FieldDescriptor&, std::string_view text) { return Rational::parse(text); }
  static bool is_square(const Rational& x);
  static std::optional<Rational> sqrt(const Rational& x);
  static Rational random(const FieldDescriptor&, Rng& rng);
  static std::vector<Rational> elements(const FieldDescriptor&);
};

template <>
struct FieldTraits<Fp> {
  static constexpr FieldDescriptor::Kind kind = FieldDescriptor::Kind::prime;
  static Fp from_int(const FieldDescriptor& f, long long k) { return Fp(k, f.p); }
  static Fp parse(const FieldDescriptor& f, std::string_view text);
  static bool is_square(const Fp& x);
  static std::optional<Fp> sqrt(const Fp& x);
  static Fp random(const FieldDescriptor& f, Rng& rng) {
    return Fp(static_cast<std::int64_t>(rng() % f.p), f.p);
  }
  static std::vector<Fp> elements(const FieldDescriptor& f);
};

template <>
struct FieldTraits<Fp2> {
  static constexpr FieldDescriptor::Kind kind = FieldDescriptor::Kind::quadratic_ext;
  static Fp2 from_int(const FieldDescriptor& f, long long k) { return Fp2(k, 0, f.p, f.eps); }
  static Fp2 parse(const FieldDescriptor& f, std::string_view text);
  static bool is_square(const Fp2& x);
  static std::optional<Fp2> sqrt(const Fp2& x);
  static Fp2 random(const FieldDescriptor& f, Rng& rng) {
    return Fp2(static_cast<std::int64_t>(rng() % f.p), static_cast<std::int64_t>(rng() % f.p), f.p, f.eps);
  }
  static std::vector<Fp2> elements(const FieldDescriptor& f);
};

template <class S>
S from_int(const FieldDescriptor& f, long long k) {
  return FieldTraits<S>::from_int(f, k);
}

template <class S>
bool is_zero(const S& x) {
  return x.is_zero();
}

template <class S>
std::string to_string(const S& x) {
  return x.str();
}

template <class S>
bool is_square(const S& x) {
  return FieldTraits<S>::is_square(x);
}

/// Every element of a finite field exactly once, in a fixed order.
/// Throws SizeOverflow for Q.
template <class S>
std::vector<S> enumerate(const FieldDescriptor& f) {
  return FieldTraits<S>::elements(f);
}

/// Throws DescriptorMismatch when S cannot represent elements of f.
template <class S>
void check_kind(const FieldDescriptor& f) {
  if (f.kind != FieldTraits<S>::kind) throw DescriptorMismatch("scalar type does not match field " + f.name());
}

template <class S>
S pow(S base, std::uint64_t e, const S& one) {
  S r = one;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

/// Calls fn(S{}) with the scalar type matching the descriptor.
template <class Fn>
decltype(auto) with_scalar(const FieldDescriptor& f, Fn&& fn) {
  switch (f.kind) {
    case FieldDescriptor::Kind::rationals:
      return fn(Rational{});
    case FieldDescriptor::Kind::prime:
      return fn(Fp{});
    case FieldDescriptor::Kind::quadratic_ext:
      break;
  }
  return fn(Fp2{});
}

}  // namespace fkit

namespace std {
template <>
struct hash<fkit::Fp> {
  size_t operator()(const fkit::Fp& x) const noexcept { return std::hash<std::int64_t>{}(x.residue()); }
};
template <>
struct hash<fkit::Fp2> {
  size_t operator()(const fkit::Fp2& x) const noexcept {
    return std::hash<std::int64_t>{}(x.re()) * 0x9e3779b97f4a7c15ull ^ std::hash<std::int64_t>{}(x.im());
  }
};
template <>
struct hash<fkit::Rational> {
  size_t operator()(const fkit::Rational& x) const noexcept { return std::hash<std::string>{}(x.str()); }
};
}  // namespace std

namespace Eigen {

template <class S>
struct FkitNumTraits : GenericNumTraits<S> {
  typedef S Real;
  typedef S NonInteger;
  typedef S Literal;
  typedef S Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static S epsilon() { return S(0); }
  static S dummy_precision() { return S(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<fkit::Rational> : FkitNumTraits<fkit::Rational> {};
template <>
struct NumTraits<fkit::Fp> : FkitNumTraits<fkit::Fp> {};
template <>
struct NumTraits<fkit::Fp2> : FkitNumTraits<fkit::Fp2> {};

}  // namespace Eigen
