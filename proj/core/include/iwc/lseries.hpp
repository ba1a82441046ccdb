#pragma once

// Interval bounds for the central derivative estimate U > |V| with W = 4q.

#include "iwc/arith.hpp"
#include "iwc/hpreal.hpp"

namespace iwc {

/// f(z) = E1(z)/z for z > 0.  Power series for z <= 4, Stieltjes continued
/// fraction beyond (hull of two consecutive convergents).
HPReal f_of_z(const HPReal& z);

/// E1(z) on the same two routes.
HPReal exp_integral_e1(const HPReal& z);

/// W (0.5235 - 0.8458 W^(-1/4) - 0.3951 W^(-1/2)) for W >= 28.  Throws if
/// the result does not certainly exceed 0.08107226 W.
HPReal u_lower_bound(const HPReal& W);

/// sum_{y >= 1} y^-4 exp(-pi y^2 / 2) with a geometric tail.  Memoised per
/// precision.
HPReal y_series(mpfr_prec_t prec = kDefaultFloatPrec);

/// sum_{x >= 1} x exp(-pi x^2 / (2q)); checked to lie below q/pi.
HPReal x_gauss_sum(const Int& q, mpfr_prec_t prec = kDefaultFloatPrec);

struct VBounds {
  HPReal truncated;  // sum over x, y >= 1 of 2x f(pi(x^2 + q y^2)/(2q)), plus tail
  HPReal chain;      // (8/pi^2) x_gauss_sum(q) y_series()
  HPReal closed;     // (2/pi^3) 0.2080 W
  long terms = 0;
};

constexpr double kDefaultCutoff = 40;

VBounds v_upper_bound(const Int& q, mpfr_prec_t prec = kDefaultFloatPrec,
                      double cutoff = kDefaultCutoff);

struct BoundReport {
  Int q;
  HPReal W;
  HPReal u_lower;
  HPReal v_upper_truncated;
  HPReal v_upper_chain;
  HPReal v_upper_closed;
  bool verdict = false;  // u_lower certainly above all three
};

BoundReport simple_zero_criterion(const Int& q, mpfr_prec_t prec = kDefaultFloatPrec);

}  // namespace iwc
