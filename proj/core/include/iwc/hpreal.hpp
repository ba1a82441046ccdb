#pragma once

// MPFR-backed reals.  Mpfr is a plain RAII value; HPReal is a closed
// interval [lo, hi] whose operations round outward, so every result
// encloses the exact value.

#include <string>

#include <mpfr.h>

#include "iwc/arith.hpp"

namespace iwc {

constexpr mpfr_prec_t kDefaultFloatPrec = 128;

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = kDefaultFloatPrec);
  Mpfr(const Mpfr& o);
  Mpfr(Mpfr&& o) noexcept;
  Mpfr& operator=(const Mpfr& o);
  Mpfr& operator=(Mpfr&& o) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  std::string str(int digits = 20) const;

 private:
  mpfr_t v_;
};

class HPReal {
 public:
  explicit HPReal(mpfr_prec_t prec = kDefaultFloatPrec);
  static HPReal from_int(const Int& n, mpfr_prec_t prec = kDefaultFloatPrec);
  static HPReal from_si(long n, mpfr_prec_t prec = kDefaultFloatPrec);
  /// Decimal literal, enclosed by rounding down and up.
  static HPReal from_string(const std::string& s, mpfr_prec_t prec = kDefaultFloatPrec);
  static HPReal from_rat(const Rat& r, mpfr_prec_t prec = kDefaultFloatPrec);
  static HPReal pi(mpfr_prec_t prec = kDefaultFloatPrec);
  static HPReal euler_gamma(mpfr_prec_t prec = kDefaultFloatPrec);
  static HPReal hull(const HPReal& a, const HPReal& b);
  static HPReal from_mpfr(const Mpfr& x);  // the point interval [x, x]

  const Mpfr& lo() const { return lo_; }
  const Mpfr& hi() const { return hi_; }
  mpfr_prec_t prec() const { return lo_.prec(); }
  double lower() const { return lo_.to_double(MPFR_RNDD); }
  double upper() const { return hi_.to_double(MPFR_RNDU); }
  double mid() const;
  double width() const;
  bool contains(double x) const;
  bool positive() const { return mpfr_sgn(lo_.get()) > 0; }

  HPReal operator+(const HPReal& o) const;
  HPReal operator-(const HPReal& o) const;
  HPReal operator*(const HPReal& o) const;
  HPReal operator/(const HPReal& o) const;
  HPReal operator-() const;
  HPReal mul_si(long k) const;

  HPReal exp() const;
  HPReal log() const;    // needs lo > 0
  HPReal sqrt() const;   // needs lo >= 0
  HPReal add_error(const HPReal& bound) const;  // widen by [0, bound.hi] both ways

  /// Certain comparisons: every point of *this is below every point of o.
  bool certainly_less(const HPReal& o) const { return mpfr_less_p(hi_.get(), o.lo_.get()) != 0; }
  bool certainly_greater(const HPReal& o) const { return o.certainly_less(*this); }

  std::string str(int digits = 12) const;

 private:
  Mpfr lo_, hi_;
};

}  // namespace iwc
