#include "iwc/lseries.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace iwc {

namespace {

HPReal e1_series(const HPReal& z) {
  // E1(z) = -gamma - log z + sum_{k>=1} (-1)^(k+1) z^k / (k k!)
  const mpfr_prec_t p = z.prec();
  HPReal sum = HPReal::from_si(0, p);
  HPReal pw = HPReal::from_si(1, p);  // z^k / k!
  const double zhi = z.upper();
  for (long k = 1;; ++k) {
    pw = pw * z / HPReal::from_si(k, p);
    HPReal term = pw / HPReal::from_si(k, p);
    sum = (k % 2 == 1) ? sum + term : sum - term;
    // Past k > z the terms decrease, so the alternating remainder is below
    // the next term.
    if (k > 2 * zhi + 2) {
      const HPReal next = pw * z / HPReal::from_si((k + 1) * (k + 1), p);
      if (next.upper() < std::ldexp(1.0, -static_cast<int>(p) - 8)) {
        sum = sum.add_error(next);
        break;
      }
    }
  }
  return -HPReal::euler_gamma(p) - z.log() + sum;
}

// Depth-n convergent of exp(z) E1(z) = 1/(z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))).
// Every level is monotone in the level below, so an upper chain and a lower
// chain with opposite rounding enclose the convergent on the whole interval z.
HPReal e1_cf_convergent(const HPReal& z, long n) {
  const mpfr_prec_t p = z.prec();
  Mpfr up(p), lo(p), tu(p), tl(p);
  auto set_b = [&](long j, Mpfr& hi_out, Mpfr& lo_out) {
    if (j % 2 == 0) {
      mpfr_set(hi_out.get(), z.hi().get(), MPFR_RNDU);
      mpfr_set(lo_out.get(), z.lo().get(), MPFR_RNDD);
    } else {
      mpfr_set_ui(hi_out.get(), 1, MPFR_RNDU);
      mpfr_set_ui(lo_out.get(), 1, MPFR_RNDD);
    }
  };
  set_b(n, up, lo);
  for (long j = n; j >= 1; --j) {
    const auto a = static_cast<unsigned long>((j + 1) / 2);
    mpfr_ui_div(tu.get(), a, lo.get(), MPFR_RNDU);
    mpfr_ui_div(tl.get(), a, up.get(), MPFR_RNDD);
    set_b(j - 1, up, lo);
    mpfr_add(up.get(), up.get(), tu.get(), MPFR_RNDU);
    mpfr_add(lo.get(), lo.get(), tl.get(), MPFR_RNDD);
  }
  HPReal r = HPReal::from_si(1, p) / HPReal::hull(HPReal::from_mpfr(lo), HPReal::from_mpfr(up));
  return r;
}

HPReal e1_cf(const HPReal& z) {
  // Positive partial quotients: consecutive convergents bracket the value.
  const mpfr_prec_t p = z.prec();
  for (long n = 16;; n *= 2) {
    const HPReal h = HPReal::hull(e1_cf_convergent(z, n), e1_cf_convergent(z, n + 1));
    if (h.width() <= std::ldexp(h.upper(), -static_cast<int>(p) + 16) || n > (1L << 16))
      return h * (-z).exp();
  }
}

}  // namespace

HPReal exp_integral_e1(const HPReal& z) {
  if (!z.positive()) throw std::domain_error("exp_integral_e1: z must be positive");
  return z.upper() <= 4 ? e1_series(z) : e1_cf(z);
}

HPReal f_of_z(const HPReal& z) {
  if (!z.positive()) throw std::domain_error("f_of_z: z must be positive");
  return exp_integral_e1(z) / z;
}

HPReal u_lower_bound(const HPReal& W) {
  const mpfr_prec_t p = W.prec();
  if (W.lower() < 28) throw std::domain_error("u_lower_bound: W must be at least 28");
  const HPReal r2 = W.sqrt();
  const HPReal r4 = r2.sqrt();
  const HPReal one = HPReal::from_si(1, p);
  const HPReal u = W * (HPReal::from_string("0.5235", p) - HPReal::from_string("0.8458", p) * (one / r4) -
                        HPReal::from_string("0.3951", p) * (one / r2));
  if (!u.certainly_greater(HPReal::from_string("0.08107226", p) * W))
    throw std::logic_error("u_lower_bound: bound does not exceed 0.08107226 W");
  return u;
}

HPReal y_series(mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<mpfr_prec_t, HPReal> memo;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = memo.find(prec); it != memo.end()) return it->second;
  const HPReal pi = HPReal::pi(prec);
  constexpr long N = 10;
  HPReal s = HPReal::from_si(0, prec);
  for (long y = 1; y <= N; ++y) {
    const HPReal e = (-(pi * HPReal::from_si(y * y, prec)) / HPReal::from_si(2, prec)).exp();
    s = s + e / HPReal::from_si(y * y * y * y, prec);
  }
  // y^-4 <= 1 and (N+1+k)^2 >= (N+1)^2 + 2(N+1)k.
  const HPReal a = HPReal::from_si(N + 1, prec);
  const HPReal tail = (-(pi * a * a) / HPReal::from_si(2, prec)).exp() /
                      (HPReal::from_si(1, prec) - (-(pi * a)).exp());
  s = s.add_error(tail);
  memo.emplace(prec, s);
  return s;
}

HPReal x_gauss_sum(const Int& q, mpfr_prec_t prec) {
  const HPReal pi = HPReal::pi(prec);
  const HPReal c = pi / HPReal::from_int(Int(2) * q, prec);
  const long X = static_cast<long>(std::ceil(std::sqrt(200.0 * q.get_d() / M_PI)));
  // term_x = x e^(-c x^2); e^(-c(x+1)^2) = e^(-c x^2) e^(-c(2x+1)).
  HPReal g = (-c).exp();                              // e^(-c x^2) at x = 1
  HPReal ratio = (-(c * HPReal::from_si(3, prec))).exp();  // e^(-c(2x+1)) at x = 1
  const HPReal step = (-(c * HPReal::from_si(2, prec))).exp();
  HPReal s = HPReal::from_si(0, prec);
  for (long x = 1; x <= X; ++x) {
    s = s + g.mul_si(x);
    g = g * ratio;
    ratio = ratio * step;
  }
  // sum_{x > X} x e^(-c x^2) <= (X + 1/(2c)) e^(-c X^2)
  const HPReal Xr = HPReal::from_si(X, prec);
  const HPReal tail =
      (Xr + HPReal::from_si(1, prec) / (c * HPReal::from_si(2, prec))) * (-(c * Xr * Xr)).exp();
  s = s.add_error(tail);
  if (!s.certainly_less(HPReal::from_int(q, prec) / pi))
    throw std::logic_error("x_gauss_sum: sum not below q/pi");
  return s;
}

VBounds v_upper_bound(const Int& q, mpfr_prec_t prec, double cutoff) {
  if (q < 7 || mpz_fdiv_ui(q.get_mpz_t(), 8) != 7) throw std::invalid_argument("v_upper_bound: q must be 7 mod 8");
  VBounds out;
  const HPReal pi = HPReal::pi(prec);
  const HPReal two = HPReal::from_si(2, prec);
  const HPReal c = pi / HPReal::from_int(Int(2) * q, prec);  // z = c x^2 + (pi/2) y^2
  const HPReal half_pi = pi / two;
  const double qd = q.get_d();
  HPReal s = HPReal::from_si(0, prec);
  for (long y = 1;; ++y) {
    const HPReal zy = half_pi * HPReal::from_si(y * y, prec);
    if (zy.lower() > cutoff) break;
    const double xmax2 = (cutoff - M_PI / 2 * static_cast<double>(y * y)) * 2 * qd / M_PI;
    for (long x = 1; static_cast<double>(x * x) <= xmax2 + 1; ++x) {
      const HPReal z = c * HPReal::from_si(x * x, prec) + zy;
      if (z.lower() > cutoff) break;
      s = s + f_of_z(z).mul_si(2 * x);
      ++out.terms;
    }
  }
  // Terms with z > Zc: f(z) < e^-z / z^2 <= e^(-Zc/2) e^(-z/2) / Zc^2, then
  // sum_x x e^(-c' x^2) <= 1/(2c') + 1/sqrt(2 e c') with c' = pi/(4q), and
  // sum_y e^(-pi y^2/4) <= 1/(e^(pi/4) - 1).
  const HPReal Zc = HPReal::from_string(std::to_string(cutoff), prec);
  const HPReal cp = pi / HPReal::from_int(Int(4) * q, prec);
  const HPReal one = HPReal::from_si(1, prec);
  const HPReal e1 = one.exp();
  const HPReal xs = one / (two * cp) + one / (two * e1 * cp).sqrt();
  const HPReal ys = one / ((pi / HPReal::from_si(4, prec)).exp() - one);
  const HPReal tail = two / (Zc * Zc) * (-(Zc / two)).exp() * xs * ys;
  out.truncated = s.add_error(tail);
  out.chain = HPReal::from_si(8, prec) / (pi * pi) * x_gauss_sum(q, prec) * y_series(prec);
  const HPReal W = HPReal::from_int(Int(4) * q, prec);
  out.closed = two / (pi * pi * pi) * HPReal::from_string("0.2080", prec) * W;
  if (!out.truncated.certainly_less(out.chain))
    throw std::logic_error("v_upper_bound: truncated sum not below the chain bound");
  return out;
}

BoundReport simple_zero_criterion(const Int& q, mpfr_prec_t prec) {
  BoundReport r;
  r.q = q;
  r.W = HPReal::from_int(Int(4) * q, prec);
  r.u_lower = u_lower_bound(r.W);
  const VBounds v = v_upper_bound(q, prec);
  r.v_upper_truncated = v.truncated;
  r.v_upper_chain = v.chain;
  r.v_upper_closed = v.closed;
  r.verdict = r.u_lower.certainly_greater(v.truncated) && r.u_lower.certainly_greater(v.chain) &&
              r.u_lower.certainly_greater(v.closed);
  return r;
}

}  // namespace iwc
