#include "iwc/padic2.hpp"

#include <algorithm>
#include <climits>

namespace iwc {

namespace {

Int mod2k(const Int& x, int n) {
  Int r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  return r;
}

Int shl(const Int& x, int n) {
  Int r;
  mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  return r;
}

Int inv_mod2k(const Int& odd, int n) {
  if (n <= 0) return 0;
  Int m = pow2(n), r;
  if (!mpz_invert(r.get_mpz_t(), odd.get_mpz_t(), m.get_mpz_t()))
    throw std::domain_error("inv_mod2k: even argument");
  return r;
}

int scan1(const Int& x) {
  if (x == 0) return INT_MAX;
  return static_cast<int>(mpz_scan1(x.get_mpz_t(), 0));
}

}  // namespace

// ---- Z2Elem ---------------------------------------------------------------

Z2Elem Z2Elem::zero(int abs_prec) {
  Z2Elem z;
  z.zero_ = true;
  z.val_ = abs_prec;
  z.prec_ = 0;
  return z;
}

Z2Elem Z2Elem::from_parts(int val, Int unit, int prec) {
  if (prec <= 0) return zero(val + std::max(prec, 0));
  unit = mod2k(unit, prec);
  int t = scan1(unit);
  if (t >= prec) return zero(val + prec);
  Z2Elem r;
  r.zero_ = false;
  r.val_ = val + t;
  r.prec_ = prec - t;
  mpz_fdiv_q_2exp(r.unit_.get_mpz_t(), unit.get_mpz_t(), static_cast<mp_bitcnt_t>(t));
  return r;
}

Z2Elem Z2Elem::from_int(const Int& n, int prec) {
  if (n == 0) return zero(prec);
  int v = scan1(n);
  Int u;
  mpz_fdiv_q_2exp(u.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(v));
  return from_parts(v, u, prec);
}

Z2Elem Z2Elem::from_rat(const Rat& r, int prec) {
  if (r == 0) return zero(prec);
  Int num = r.get_num(), den = r.get_den();
  int vn = scan1(num), vd = scan1(den);
  mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(vn));
  mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(vd));
  return from_parts(vn - vd, mod2k(num, prec) * inv_mod2k(mod2k(den, prec), prec), prec);
}

int Z2Elem::val() const {
  if (zero_) throw PrecisionError("Z2Elem: valuation of a value indistinguishable from zero");
  return val_;
}

Int Z2Elem::residue(int bits) const {
  if (bits > abs_prec()) throw PrecisionError("Z2Elem::residue: not enough precision");
  if (zero_) return 0;
  if (val_ < 0) throw std::domain_error("Z2Elem::residue: not integral");
  return mod2k(shl(unit_, val_), bits);
}

Z2Elem Z2Elem::operator+(const Z2Elem& o) const {
  const int abs = std::min(abs_prec(), o.abs_prec());
  if (zero_ && o.zero_) return zero(abs);
  if (zero_) return from_parts(o.val_, o.unit_, abs - o.val_);
  if (o.zero_) return from_parts(val_, unit_, abs - val_);
  const int K = std::min(val_, o.val_);
  return from_parts(K, shl(unit_, val_ - K) + shl(o.unit_, o.val_ - K), abs - K);
}

Z2Elem Z2Elem::operator-() const {
  if (zero_) return *this;
  return from_parts(val_, -unit_, prec_);
}

Z2Elem Z2Elem::operator-(const Z2Elem& o) const { return *this + (-o); }

Z2Elem Z2Elem::operator*(const Z2Elem& o) const {
  if (zero_ && o.zero_) return zero(val_ + o.val_);
  if (zero_) return zero(val_ + o.val_);
  if (o.zero_) return zero(o.val_ + val_);
  return from_parts(val_ + o.val_, unit_ * o.unit_, std::min(prec_, o.prec_));
}

Z2Elem Z2Elem::inverse() const {
  if (zero_) throw PrecisionError("Z2Elem::inverse: zero");
  return from_parts(-val_, inv_mod2k(unit_, prec_), prec_);
}

Z2Elem hensel_sqrt(const Z2Elem& a) {
  if (a.is_zero() || a.val() != 0) throw std::domain_error("hensel_sqrt: argument must be a unit");
  if (a.prec() < 3) throw PrecisionError("hensel_sqrt: need at least 3 bits");
  const Int u = a.unit();
  if (mod2k(u, 3) != 1) throw std::domain_error("hensel_sqrt: unit is not 1 mod 8, no square root");
  // If s^2 = a mod 2^i (i >= 3) then s or s + 2^(i-1) works mod 2^(i+1).
  Int s = 1;
  for (int i = 3; i < a.prec(); ++i) {
    if (mod2k(s * s - u, i + 1) != 0) s += pow2(i - 1);
  }
  const int p = a.prec() - 1;
  s = mod2k(s, p);
  if (mod2k(s, 2) == 3) s = mod2k(-s, p);
  return Z2Elem::from_int(s, p);
}

// ---- LocalField -----------------------------------------------------------

LocalField LocalField::ramified(int d) {
  switch (d) {
    case 3: case -1: case 2: case -2: case 6: case -6:
      return {LocalKind::Ramified, d};
    default:
      throw std::invalid_argument("LocalField::ramified: d must be one of 3, -1, 2, -2, 6, -6");
  }
}

std::string LocalField::name() const {
  switch (kind) {
    case LocalKind::Rational: return "Q2";
    case LocalKind::Unramified: return "Q2(zeta3)";
    case LocalKind::Ramified: return "Q2(sqrt(" + std::to_string(d) + "))";
  }
  return "?";
}

// ---- LocalQuad ------------------------------------------------------------

LocalQuad LocalQuad::zero(const LocalField& F, int abs_prec) {
  LocalQuad z;
  z.F_ = F;
  z.zero_ = true;
  z.k_ = abs_prec;
  z.prec_ = 0;
  return z;
}

LocalQuad LocalQuad::make(const LocalField& F, int k, const Int& a, const Int& b, int prec) {
  LocalQuad x;
  x.F_ = F;
  x.zero_ = false;
  x.k_ = k;
  x.a_ = a;
  x.b_ = F.kind == LocalKind::Rational ? Int(0) : b;
  x.prec_ = prec;
  return x.normalized();
}

LocalQuad LocalQuad::normalized() const {
  if (zero_) return *this;
  if (prec_ <= 0) return zero(F_, k_ + std::max(prec_, 0));
  Int a = mod2k(a_, prec_), b = mod2k(b_, prec_);
  const int t = std::min(scan1(a), scan1(b));
  if (t >= prec_) return zero(F_, k_ + prec_);
  LocalQuad x;
  x.F_ = F_;
  x.zero_ = false;
  x.k_ = k_ + t;
  x.prec_ = prec_ - t;
  mpz_fdiv_q_2exp(x.a_.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(t));
  mpz_fdiv_q_2exp(x.b_.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(t));
  return x;
}

LocalQuad LocalQuad::from_z2(const LocalField& F, const Z2Elem& x) {
  if (x.is_zero()) return zero(F, x.abs_prec());
  return make(F, x.val(), x.unit(), 0, x.prec());
}

LocalQuad LocalQuad::from_rat(const LocalField& F, const Rat& r, int prec) {
  return from_z2(F, Z2Elem::from_rat(r, prec));
}

LocalQuad LocalQuad::gen(const LocalField& F, int prec) {
  if (F.kind == LocalKind::Rational) throw std::invalid_argument("LocalQuad::gen: Q2 has no generator");
  return make(F, 0, 0, 1, prec);
}

void LocalQuad::check_same(const LocalQuad& o) const {
  if (!(F_ == o.F_)) throw std::logic_error("LocalQuad: mixed-field arithmetic");
}

LocalQuad LocalQuad::operator+(const LocalQuad& o) const {
  check_same(o);
  const int abs = std::min(k_ + prec_, o.k_ + o.prec_);
  if (zero_ && o.zero_) return zero(F_, abs);
  if (zero_) return make(F_, o.k_, o.a_, o.b_, abs - o.k_);
  if (o.zero_) return make(F_, k_, a_, b_, abs - k_);
  const int K = std::min(k_, o.k_);
  return make(F_, K, shl(a_, k_ - K) + shl(o.a_, o.k_ - K), shl(b_, k_ - K) + shl(o.b_, o.k_ - K),
              abs - K);
}

LocalQuad LocalQuad::operator-() const {
  if (zero_) return *this;
  return make(F_, k_, -a_, -b_, prec_);
}

LocalQuad LocalQuad::operator-(const LocalQuad& o) const { return *this + (-o); }

LocalQuad LocalQuad::operator*(const LocalQuad& o) const {
  check_same(o);
  // A zero's k is its absolute precision; a nonzero factor has 2-order >= k.
  if (zero_ || o.zero_) return zero(F_, k_ + o.k_);
  Int a, b;
  switch (F_.kind) {
    case LocalKind::Rational:
      a = a_ * o.a_;
      b = 0;
      break;
    case LocalKind::Ramified:
      a = a_ * o.a_ + F_.d * b_ * o.b_;
      b = a_ * o.b_ + b_ * o.a_;
      break;
    case LocalKind::Unramified: {
      Int be = b_ * o.b_;
      a = a_ * o.a_ - be;
      b = a_ * o.b_ + b_ * o.a_ - be;
      break;
    }
  }
  return make(F_, k_ + o.k_, a, b, std::min(prec_, o.prec_));
}

namespace {

Int norm_coords(const LocalField& F, const Int& a, const Int& b) {
  switch (F.kind) {
    case LocalKind::Rational: return a * a;
    case LocalKind::Ramified: return a * a - F.d * b * b;
    case LocalKind::Unramified: return a * a - a * b + b * b;
  }
  return 0;
}

}  // namespace

Z2Elem LocalQuad::norm() const {
  if (zero_) return Z2Elem::zero(2 * k_);
  return Z2Elem::from_parts(2 * k_, norm_coords(F_, a_, b_), prec_);
}

LocalQuad LocalQuad::conj() const {
  if (zero_) return *this;
  switch (F_.kind) {
    case LocalKind::Rational: return *this;
    case LocalKind::Ramified: return make(F_, k_, a_, -b_, prec_);
    case LocalKind::Unramified: return make(F_, k_, a_ - b_, -b_, prec_);
  }
  return *this;
}

int LocalQuad::ord_w() const {
  if (zero_) throw PrecisionError("LocalQuad: valuation of a value indistinguishable from zero");
  const Int n = mod2k(norm_coords(F_, a_, b_), prec_);
  const int t = scan1(n);
  if (t >= prec_) throw PrecisionError("LocalQuad: norm vanishes at working precision");
  return F_.e() * k_ + t / F_.f();
}

LocalQuad LocalQuad::inverse() const {
  if (zero_) throw PrecisionError("LocalQuad::inverse: zero");
  const Int n = mod2k(norm_coords(F_, a_, b_), prec_);
  const int t = scan1(n);
  if (t >= prec_) throw PrecisionError("LocalQuad::inverse: norm vanishes at working precision");
  const int p = prec_ - t;
  Int v;
  mpz_fdiv_q_2exp(v.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(t));
  const Int vi = inv_mod2k(mod2k(v, p), p);
  const LocalQuad c = conj();
  return make(F_, -k_ - t, c.a_ * vi, c.b_ * vi, p);
}

LocalQuad LocalQuad::pow(unsigned n) const {
  LocalQuad r = from_rat(F_, 1, zero_ ? 1 : prec_);
  LocalQuad base = *this;
  while (n) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

bool LocalQuad::congruent(const LocalQuad& o, int w) const {
  const LocalQuad d = *this - o;
  if (d.is_zero()) return d.abs_prec_w() >= w;
  return d.ord_w() >= w;
}

LocalQuad log_2adic(const LocalQuad& u_in) {
  const LocalField& F = u_in.field();
  if (u_in.ord_w() != 0) throw std::domain_error("log_2adic: argument is not a unit");
  const LocalQuad one = LocalQuad::from_rat(F, 1, u_in.prec() + 8);
  LocalQuad u = u_in;
  LocalQuad x = u - one;
  if (!x.is_zero() && x.ord_w() < 1) throw std::domain_error("log_2adic: unit is not 1 mod the maximal ideal");
  // Square until u = 1 mod m^5 so that the series terms strictly improve.
  int m = 0;
  while (!x.is_zero() && x.ord_w() < 5) {
    u = u * u;
    ++m;
    x = u - one;
  }
  if (x.is_zero()) {
    LocalQuad z = LocalQuad::zero(F, x.k() - m);
    return z;
  }
  const int e = F.e();
  const int v = x.ord_w();
  const int target = x.abs_prec_w();
  LocalQuad sum = x;
  LocalQuad pw = x;
  for (long n = 2;; ++n) {
    long lg = 0;
    while ((2L << lg) <= n) ++lg;
    if (n * v - e * lg > target) break;
    pw = pw * x;
    LocalQuad term = pw * LocalQuad::from_rat(F, make_rat(1, n), pw.is_zero() ? 1 : pw.prec() + 64);
    sum = (n % 2 == 0) ? sum - term : sum + term;
  }
  if (sum.is_zero()) return LocalQuad::zero(F, sum.k() - m);
  return LocalQuad::make(F, sum.k() - m, sum.a(), sum.b(), sum.prec());
}

// ---- Hilbert symbols -------------------------------------------------------

namespace {

// Integer in the same square class as r.
Int square_class_rep(const Rat& r) {
  if (r == 0) throw std::domain_error("hilbert: zero argument");
  return Int(r.get_num()) * Int(r.get_den());
}

int eps2(const Int& u) { return mod2k(u, 2) == 3 ? 1 : 0; }
int omega2(const Int& u) {
  Int r = mod2k(u, 3);
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert2(const Rat& a_in, const Rat& b_in) {
  Int a = square_class_rep(a_in), b = square_class_rep(b_in);
  const int al = scan1(a), be = scan1(b);
  mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(al));
  mpz_fdiv_q_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(be));
  const int ex = eps2(a) * eps2(b) + al * omega2(b) + be * omega2(a);
  return ex % 2 ? -1 : 1;
}

int hilbert_odd(const Rat& a_in, const Rat& b_in, const Int& p) {
  Int a = square_class_rep(a_in), b = square_class_rep(b_in);
  int al = 0, be = 0;
  while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
    a /= p;
    ++al;
  }
  while (mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t())) {
    b /= p;
    ++be;
  }
  int s = 1;
  if ((al * be) % 2 == 1 && mod2k(p, 2) == 3) s = -s;
  if (be % 2) s *= mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
  if (al % 2) s *= mpz_legendre(b.get_mpz_t(), p.get_mpz_t());
  return s;
}

int hilbert_inf(const Rat& a, const Rat& b) { return (a < 0 && b < 0) ? -1 : 1; }

// ---- Splitting of x^4 + q over Q2 ------------------------------------------

namespace {

void require_7mod8(const Int& q) {
  if (q <= 0 || mod2k(q, 3) != 7) throw std::invalid_argument("q must be a positive integer = 7 mod 8");
}

}  // namespace

SplittingPattern splitting_pattern(const Int& q) {
  require_7mod8(q);
  const Z2Elem s = hensel_sqrt(Z2Elem::from_int(-q, 32));
  SplittingPattern sp;
  sp.q = q;
  if (s.residue(3) == 5) {
    sp.pattern = Pattern::TwoQuadratic;
    sp.ramified = LocalField::ramified(3);
    sp.other = LocalField::unramified();
  } else {
    sp.pattern = Pattern::QuadraticPlusTwoLinear;
    sp.ramified = LocalField::ramified(-1);
    sp.other = LocalField::rational();
  }
  return sp;
}

std::vector<LocalRoot> local_roots_quartic(const Int& q, const LocalField& F, int prec) {
  require_7mod8(q);
  const int work = prec + 4;
  const Z2Elem s = hensel_sqrt(Z2Elem::from_int(-q, work));
  std::vector<LocalRoot> out;
  for (int sign : {1, -1}) {
    const Z2Elem t = sign > 0 ? s : -s;
    // Try r = c * g with g^2 = d in F (d = 1 for the rational part).
    std::vector<std::pair<Int, LocalQuad>> shapes;
    shapes.emplace_back(1, LocalQuad::from_rat(F, 1, work));
    if (F.kind == LocalKind::Ramified) shapes.emplace_back(F.d, LocalQuad::gen(F, work));
    if (F.kind == LocalKind::Unramified)
      shapes.emplace_back(-3, LocalQuad::from_rat(F, 1, work) + LocalQuad::gen(F, work) * LocalQuad::from_rat(F, 2, work));
    for (const auto& [d, g] : shapes) {
      const Z2Elem c2 = t * Z2Elem::from_rat(make_rat(1, d), work);
      if (c2.is_zero() || c2.val() != 0 || c2.residue(3) != 1) continue;
      const Z2Elem c = hensel_sqrt(c2);
      const LocalQuad r = LocalQuad::from_z2(F, c) * g;
      out.push_back({r, sign});
      out.push_back({-r, sign});
    }
  }
  return out;
}

RqRoutes primes_above_q_routes(const Int& q, int prec) {
  require_7mod8(q);
  const Z2Elem s = hensel_sqrt(Z2Elem::from_int(-q, prec));
  const Z2Elem one = Z2Elem::from_int(1, prec);
  const Z2Elem sm = s - one, sp = s + one;
  if (sm.is_zero() || sp.is_zero()) throw PrecisionError("primes_above_q_count: cannot resolve ord(s +- 1)");
  const int k = std::max(sm.val(), sp.val());
  return {pow2(k - 2), pow2(ord_p(Int(q + 1), Int(2)) - 3)};
}

Int primes_above_q_count(const Int& q, int prec) {
  const RqRoutes r = primes_above_q_routes(q, prec);
  if (r.via_sqrt != r.via_q1) throw std::logic_error("primes_above_q_count: routes disagree");
  return r.via_sqrt;
}

}  // namespace iwc
