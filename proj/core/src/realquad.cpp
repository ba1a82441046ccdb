#include "iwc/realquad.hpp"

#include <functional>
#include <stdexcept>

namespace iwc {

RQInt rq_mul(const RQInt& a, const RQInt& b, const Int& q) {
  return {a.x * b.x + q * a.y * b.y, a.x * b.y + a.y * b.x};
}

CFData cf_sqrt(const Int& q) {
  if (q <= 0) throw std::invalid_argument("cf_sqrt: q must be positive");
  Int a0;
  mpz_sqrt(a0.get_mpz_t(), q.get_mpz_t());
  if (a0 * a0 == q) throw std::invalid_argument("cf_sqrt: q is a perfect square");
  CFData cf;
  cf.a0 = a0;
  Int m = 0, d = 1, a = a0;
  do {
    m = d * a - m;
    d = (q - m * m) / d;
    a = (a0 + m) / d;
    cf.period.push_back(a);
  } while (a != 2 * a0);
  return cf;
}

namespace {

// Walk the convergents p/r of sqrt(q) for `periods` full periods.  The
// callback gets the index k (p_k / r_k) and returns true to stop.
void walk_convergents(const Int& q, const CFData& cf, int periods, std::size_t max_bits,
                      const std::function<bool(std::size_t, const Int&, const Int&)>& fn) {
  Int p_prev = 1, p = cf.a0, r_prev = 0, r = 1;
  if (fn(0, p, r)) return;
  const std::size_t L = cf.period.size();
  for (std::size_t k = 1; k <= L * static_cast<std::size_t>(periods); ++k) {
    const Int& a = cf.period[(k - 1) % L];
    Int pn = a * p + p_prev, rn = a * r + r_prev;
    p_prev = p;
    p = pn;
    r_prev = r;
    r = rn;
    if (mpz_sizeinbase(p.get_mpz_t(), 2) > max_bits)
      throw BudgetExceeded("Pell coefficients exceed the bit budget");
    if (fn(k, p, r)) return;
  }
  (void)q;
}

}  // namespace

UnitResult fundamental_unit(const Int& q, std::size_t max_bits) {
  const CFData cf = cf_sqrt(q);
  const std::size_t L = cf.period.size();
  UnitResult res;
  walk_convergents(q, cf, 1, max_bits, [&](std::size_t k, const Int& p, const Int& r) {
    if (k + 1 == L) {
      res.eps = {p, r};
      res.norm = (L % 2 == 0) ? 1 : -1;
      return true;
    }
    return false;
  });
  if (res.eps.norm(q) != res.norm) throw std::logic_error("fundamental_unit: convergent norm mismatch");
  return res;
}

Norm2Result solve_norm2(const Int& q, std::size_t max_bits) {
  const CFData cf = cf_sqrt(q);
  Norm2Result res;
  bool found = false;
  walk_convergents(q, cf, 4, max_bits, [&](std::size_t, const Int& p, const Int& r) {
    if (p * p - q * r * r == 2) {
      res.theta = {p, r};
      found = true;
      return true;
    }
    return false;
  });
  if (!found) throw std::logic_error("solve_norm2: no element of norm 2 within four periods");
  const Int& x = res.theta.x;
  const Int& y = res.theta.y;
  res.eps_prime = {(x * x + q * y * y) / 2, x * y};
  if (res.eps_prime.norm(q) != 1) throw std::logic_error("solve_norm2: theta^2/2 is not a unit");
  const UnitResult u = fundamental_unit(q, max_bits);
  RQInt e = u.eps;
  int k = 1;
  while (e.y < res.eps_prime.y) {
    e = rq_mul(e, u.eps, q);
    ++k;
  }
  if (!(e == res.eps_prime)) throw std::logic_error("solve_norm2: theta^2/2 is not a power of the fundamental unit");
  res.power = k;
  return res;
}

TraceResult trace_tests(const Int& q, std::size_t max_bits) {
  const Norm2Result n2 = solve_norm2(q, max_bits);
  TraceResult t;
  const Int& y = n2.theta.y;
  t.trace = n2.eps_prime.trace();
  t.ord_trace = ord_p(t.trace, Int(2));
  Int lhs = t.trace - 2 * (1 + q);
  t.mod32_ok = mpz_divisible_ui_p(lhs.get_mpz_t(), 32) != 0;
  const bool q7 = mpz_fdiv_ui(q.get_mpz_t(), 16) == 7;
  t.ord_ok = q7 ? (t.ord_trace == 4) : (t.ord_trace > 4);
  Int y2 = y * y - 1;
  t.y2_ok = mpz_divisible_ui_p(y2.get_mpz_t(), 16) != 0;
  return t;
}

OrdLogEpsilon ord_log_epsilon(const Int& q, std::size_t max_bits, int prec) {
  OrdLogEpsilon r;
  const TraceResult t = trace_tests(q, max_bits);
  r.via_trace = t.ord_trace + 1 - 2;
  const UnitResult u = fundamental_unit(q, max_bits);
  const LocalField F = LocalField::ramified(-1);
  for (int p = prec;; p *= 2) {
    try {
      // sqrt(q) = i * sqrt(-q) in Q2(i).
      const Z2Elem s = hensel_sqrt(Z2Elem::from_int(-q, p + 2));
      const LocalQuad img =
          LocalQuad::from_rat(F, u.eps.x, p) + LocalQuad::from_rat(F, u.eps.y, p) * LocalQuad::gen(F, p) *
                                                   LocalQuad::from_z2(F, s);
      const LocalQuad lg = log_2adic(img);
      const int w = lg.ord_w();
      if (w + 8 > lg.abs_prec_w()) throw PrecisionError("ord_log_epsilon: valuation near precision limit");
      r.via_local = (w % 2 == 0) ? w / 2 : -1;
      break;
    } catch (const PrecisionError&) {
      if (p > 8 * prec) throw;
    }
  }
  r.agree = (r.via_local == r.via_trace);
  return r;
}

BiquadElem bq_mul(const BiquadElem& a, const BiquadElem& b, const Int& q) {
  // i^2 = -1, r^2 = q, basis {1, i, r, ir}.
  const Rat Q(q);
  BiquadElem c;
  c[0] = a[0] * b[0] - a[1] * b[1] + Q * a[2] * b[2] - Q * a[3] * b[3];
  c[1] = a[0] * b[1] + a[1] * b[0] + Q * a[2] * b[3] + Q * a[3] * b[2];
  c[2] = a[0] * b[2] + a[2] * b[0] - a[1] * b[3] - a[3] * b[1];
  c[3] = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
  for (auto& x : c) x.canonicalize();
  return c;
}

CMIndexResult cm_unit_index(const Int& q, std::size_t max_bits) {
  const Norm2Result n2 = solve_norm2(q, max_bits);
  const BiquadElem theta{Rat(n2.theta.x), Rat(0), Rat(n2.theta.y), Rat(0)};
  const BiquadElem inv_1pi{Rat(1, 2), Rat(-1, 2), Rat(0), Rat(0)};
  const BiquadElem i{Rat(0), Rat(1), Rat(0), Rat(0)};
  const BiquadElem u = bq_mul(theta, inv_1pi, q);
  const BiquadElem lhs = bq_mul(i, bq_mul(u, u, q), q);
  const BiquadElem eps{Rat(n2.eps_prime.x), Rat(0), Rat(n2.eps_prime.y), Rat(0)};
  CMIndexResult r;
  r.identity_exact = (lhs == eps);
  const OrdLogEpsilon o = ord_log_epsilon(q, max_bits);
  r.ord_log_eps = o.value();
  r.ord_log_xi = o.value() - 1;
  return r;
}

}  // namespace iwc
