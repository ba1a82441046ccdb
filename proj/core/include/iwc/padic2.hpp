#pragma once

// 2-adic numbers with explicit precision, and elements of the quadratic
// extensions of Q2 that show up as completions of Q(alpha), alpha^4 = -q.

#include <stdexcept>
#include <string>
#include <vector>

#include "iwc/arith.hpp"

namespace iwc {

constexpr int kDefaultPadicPrec = 192;

/// Raised when a result cannot be resolved at the working precision.
/// Callers are expected to retry with more bits.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// x = 2^val * unit, unit odd and known modulo 2^prec.  A zero carries
/// only its absolute precision: it is known to be 0 mod 2^val.
class Z2Elem {
 public:
  Z2Elem() = default;
  static Z2Elem from_int(const Int& n, int prec = kDefaultPadicPrec);
  static Z2Elem from_rat(const Rat& r, int prec = kDefaultPadicPrec);
  static Z2Elem zero(int abs_prec);
  /// 2^val * unit with unit known mod 2^prec (unit need not be odd).
  static Z2Elem from_parts(int val, Int unit, int prec);

  bool is_zero() const { return zero_; }
  int val() const;  // throws PrecisionError on zero
  const Int& unit() const { return unit_; }
  int prec() const { return prec_; }
  int abs_prec() const { return val_ + prec_; }

  /// Residue in [0, 2^bits).  Needs val >= 0 and bits <= abs_prec().
  Int residue(int bits) const;

  Z2Elem operator+(const Z2Elem& o) const;
  Z2Elem operator-(const Z2Elem& o) const;
  Z2Elem operator*(const Z2Elem& o) const;
  Z2Elem operator-() const;
  Z2Elem inverse() const;

 private:
  bool zero_ = true;
  int val_ = 0;
  Int unit_ = 0;
  int prec_ = 0;
};

/// a must be a unit = 1 mod 8.  Returns s with s^2 = a and s = 1 mod 4;
/// s is known to one bit less than a.
Z2Elem hensel_sqrt(const Z2Elem& a);

enum class LocalKind { Rational, Unramified, Ramified };

/// Q2 itself, Q2(zeta) with zeta^2 + zeta + 1 = 0, or Q2(sqrt d) with
/// d in {3, -1, 2, -2, 6, -6}.
struct LocalField {
  LocalKind kind = LocalKind::Rational;
  int d = 0;

  static LocalField rational() { return {LocalKind::Rational, 0}; }
  static LocalField unramified() { return {LocalKind::Unramified, 0}; }
  static LocalField ramified(int d);

  int e() const { return kind == LocalKind::Ramified ? 2 : 1; }
  int f() const { return kind == LocalKind::Unramified ? 2 : 1; }
  std::string name() const;
  bool operator==(const LocalField& o) const { return kind == o.kind && d == o.d; }
};

/// 2^k (a + b g), where g is sqrt(d) or zeta, and a, b are known mod 2^prec.
/// Normalised so that a, b are not both even.
class LocalQuad {
 public:
  LocalQuad() = default;
  static LocalQuad from_rat(const LocalField& F, const Rat& r, int prec = kDefaultPadicPrec);
  static LocalQuad from_z2(const LocalField& F, const Z2Elem& x);
  static LocalQuad gen(const LocalField& F, int prec = kDefaultPadicPrec);
  static LocalQuad make(const LocalField& F, int k, const Int& a, const Int& b, int prec);
  static LocalQuad zero(const LocalField& F, int abs_prec);

  const LocalField& field() const { return F_; }
  bool is_zero() const { return zero_; }
  int k() const { return k_; }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  int prec() const { return prec_; }
  /// Absolute precision measured in ord_w.
  int abs_prec_w() const { return F_.e() * (k_ + prec_); }

  /// Normalised valuation: a uniformiser has ord_w = 1.
  int ord_w() const;
  Z2Elem norm() const;
  LocalQuad conj() const;

  LocalQuad operator+(const LocalQuad& o) const;
  LocalQuad operator-(const LocalQuad& o) const;
  LocalQuad operator*(const LocalQuad& o) const;
  LocalQuad operator-() const;
  LocalQuad inverse() const;
  LocalQuad pow(unsigned n) const;

  /// True when this - o vanishes to at least `w` in ord_w.
  bool congruent(const LocalQuad& o, int w) const;

 private:
  void check_same(const LocalQuad& o) const;
  LocalQuad normalized() const;
  LocalField F_{};
  bool zero_ = true;
  int k_ = 0;
  Int a_ = 0, b_ = 0;
  int prec_ = 0;
};

/// 2-adic logarithm of a unit u = 1 mod the maximal ideal.
LocalQuad log_2adic(const LocalQuad& u);

/// Hilbert symbols (a, b)_v for v = 2, an odd prime p, and infinity.
int hilbert2(const Rat& a, const Rat& b);
int hilbert_odd(const Rat& a, const Rat& b, const Int& p);
int hilbert_inf(const Rat& a, const Rat& b);

enum class Pattern { TwoQuadratic, QuadraticPlusTwoLinear };

struct SplittingPattern {
  Int q;
  Pattern pattern;
  LocalField ramified;    // completion at the ramified place w
  LocalField other;       // unramified w* (7 mod 16) or Q2 for each w_i* (15 mod 16)
};

SplittingPattern splitting_pattern(const Int& q);

/// A root of x^4 + q in a local field, tagged with the image of the square
/// root of -q it squares to: r^2 = sign * s where s = hensel_sqrt(-q).
struct LocalRoot {
  LocalQuad r;
  int sign = 1;
};

/// Roots of x^4 + q in the given field (empty if there are none).
std::vector<LocalRoot> local_roots_quartic(const Int& q, const LocalField& F,
                                           int prec = kDefaultPadicPrec);

struct RqRoutes {
  Int via_sqrt;  // 2^(k-2), k = max(ord2(s-1), ord2(s+1))
  Int via_q1;    // 2^(ord2(q+1)-3)
};
RqRoutes primes_above_q_routes(const Int& q, int prec = kDefaultPadicPrec);

/// Number of primes above q in the cyclotomic Z2-extension, 2^(k-2) with
/// k = max(ord2(s-1), ord2(s+1)).  Cross-checked against 2^(ord2(q+1)-3).
Int primes_above_q_count(const Int& q, int prec = kDefaultPadicPrec);

}  // namespace iwc
