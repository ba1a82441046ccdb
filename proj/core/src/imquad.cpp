#include "iwc/imquad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "iwc/padic2.hpp"

namespace iwc {

using i128 = __int128;

namespace {

std::int64_t narrow(i128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("form coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(x);
}

// u a + v b = g >= 0
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
  std::int64_t u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (b != 0) {
    std::int64_t qt = a / b;
    std::int64_t t = a - qt * b;
    a = b;
    b = t;
    t = u0 - qt * u1; u0 = u1; u1 = t;
    t = v0 - qt * v1; v0 = v1; v1 = t;
  }
  if (a < 0) {
    a = -a; u0 = -u0; v0 = -v0;
  }
  u = u0;
  v = v0;
  return a;
}

std::int64_t floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return narrow(q);
}

void check_disc(std::int64_t D) {
  if (D >= 0) throw std::invalid_argument("form discriminant must be negative");
  if (-D > kMaxFormDisc) throw std::overflow_error("form discriminant too large for 64-bit forms");
  const std::int64_t r = ((D % 4) + 4) % 4;
  if (r != 0 && r != 1) throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
}

}  // namespace

std::int64_t Form::disc() const { return narrow(i128(b) * b - i128(4) * a * c); }

bool Form::is_reduced() const {
  if (a <= 0) return false;
  if (std::llabs(b) > a || a > c) return false;
  if ((std::llabs(b) == a || a == c) && b < 0) return false;
  return true;
}

bool Form::operator<(const Form& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return c < o.c;
}

std::string Form::str() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Form principal_form(std::int64_t D) {
  check_disc(D);
  const std::int64_t b = (D % 2 == 0) ? 0 : 1;
  return {1, b, (b * b - D) / 4};
}

Form inverse(const Form& f) { return reduce({f.a, -f.b, f.c}); }

Form reduce(const Form& f_in) {
  const std::int64_t D = f_in.disc();
  check_disc(D);
  if (f_in.a <= 0) throw std::invalid_argument("reduce: form must be positive definite");
  if (std::gcd(std::gcd(f_in.a, f_in.b), f_in.c) != 1) throw std::invalid_argument("reduce: form is not primitive");
  i128 a = f_in.a, b = f_in.b, c = f_in.c;
  for (;;) {
    // Normalise b into (-a, a].
    if (b <= -a || b > a) {
      i128 k = floor_div(a - b, 2 * a);
      i128 nb = b + 2 * k * a;
      c = c + k * b + k * k * a;
      b = nb;
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    break;
  }
  if (a == c && b < 0) b = -b;
  Form r{narrow(a), narrow(b), narrow(c)};
  if (r.disc() != D) throw std::logic_error("reduce: discriminant drifted");
  return r;
}

Form compose(const Form& f, const Form& g) {
  const std::int64_t D = f.disc();
  if (g.disc() != D) throw std::invalid_argument("compose: discriminants differ");
  // Shanks' composition (Cohen, Alg. 5.4.7), 128-bit intermediates.
  Form f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  const std::int64_t s = narrow((i128(f1.b) + f2.b) / 2);
  const std::int64_t n = f2.b - s;
  std::int64_t u, v, d, y1;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    d = xgcd(f2.a, f1.a, u, v);
    y1 = u;
  }
  std::int64_t x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    d1 = xgcd(s, d, x2, y2);
    y2 = -y2;
  }
  const std::int64_t v1 = f1.a / d1;
  const std::int64_t v2 = f2.a / d1;
  i128 r = (i128(y1) * y2 % v1 * n - i128(x2) * f2.c) % v1;
  if (r < 0) r += v1;
  const i128 b3 = i128(f2.b) + 2 * i128(v2) * r;
  const i128 a3 = i128(v1) * v2;
  const i128 num = b3 * b3 - D;
  if (num % (4 * a3) != 0) throw std::logic_error("compose: non-integral c");
  return reduce({narrow(a3), narrow(b3), narrow(num / (4 * a3))});
}

Form form_pow(const Form& f, std::int64_t n) {
  if (n < 0) return form_pow(inverse(f), -n);
  Form r = principal_form(f.disc());
  Form base = reduce(f);
  while (n) {
    if (n & 1) r = compose(r, base);
    n >>= 1;
    if (n) base = compose(base, base);
  }
  return r;
}

std::int64_t form_order(const Form& f) {
  const Form id = principal_form(f.disc());
  Form x = reduce(f);
  std::int64_t k = 1;
  while (!(x == id)) {
    x = compose(x, f);
    ++k;
    if (k > 4 * static_cast<std::int64_t>(std::sqrt(static_cast<double>(-f.disc()))) * 64 + 64)
      throw std::logic_error("form_order: runaway");
  }
  return k;
}

std::vector<Form> reduced_forms(std::int64_t D) {
  check_disc(D);
  std::vector<Form> out;
  const std::int64_t amax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
  for (std::int64_t a = 1; a <= amax; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2) != 0) continue;
      const i128 num = i128(b) * b - D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = narrow(num / (4 * a));
      if (c < a) continue;
      if ((std::llabs(b) == a || a == c) && b < 0) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

std::int64_t class_number(std::int64_t D) { return static_cast<std::int64_t>(reduced_forms(D).size()); }

std::int64_t ClassGroupData::two_part() const {
  std::int64_t p = 1;
  for (auto d : two_sylow) p *= d;
  return p;
}

ClassGroupData class_group(std::int64_t D) {
  ClassGroupData g;
  g.disc = D;
  const auto forms = reduced_forms(D);
  g.h = static_cast<std::int64_t>(forms.size());
  std::int64_t m = g.h;
  int e = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++e;
  }
  g.odd_part = m;
  if (e == 0) return g;
  // |G2[2^j]| = #{g : (g^m)^(2^j) = 1} / m.
  const Form id = principal_form(D);
  std::vector<std::int64_t> count(static_cast<std::size_t>(e + 1), 0);
  for (const Form& f : forms) {
    Form x = form_pow(f, m);
    int j = 0;
    while (!(x == id)) {
      x = compose(x, x);
      ++j;
      if (j > e) throw std::logic_error("class_group: element order exceeds 2-part");
    }
    for (int k = j; k <= e; ++k) ++count[static_cast<std::size_t>(k)];
  }
  std::vector<int> lg(static_cast<std::size_t>(e + 1), 0);
  for (int j = 0; j <= e; ++j) {
    const std::int64_t n = count[static_cast<std::size_t>(j)] / m;
    int l = 0;
    while ((std::int64_t{1} << l) < n) ++l;
    lg[static_cast<std::size_t>(j)] = l;
  }
  // Number of cyclic factors of order >= 2^j is lg[j] - lg[j-1].
  std::vector<int> atleast(static_cast<std::size_t>(e + 2), 0);
  for (int j = 1; j <= e; ++j) atleast[static_cast<std::size_t>(j)] = lg[static_cast<std::size_t>(j)] - lg[static_cast<std::size_t>(j - 1)];
  for (int j = 1; j <= e; ++j) {
    const int exact = atleast[static_cast<std::size_t>(j)] - atleast[static_cast<std::size_t>(j + 1)];
    for (int r = 0; r < exact; ++r) g.two_sylow.push_back(std::int64_t{1} << j);
  }
  if (g.two_part() != (std::int64_t{1} << e)) throw std::logic_error("class_group: 2-Sylow size mismatch");
  return g;
}

namespace {

void require_q(std::int64_t q) {
  if (q <= 0 || q % 8 != 7) throw std::invalid_argument("q must be = 7 mod 8");
}

}  // namespace

std::int64_t order_of_prime2_class(std::int64_t q) {
  require_q(q);
  return form_order(reduce({2, 1, (1 + q) / 8}));
}

PiGenerator generator_pi(std::int64_t q) {
  const std::int64_t t = order_of_prime2_class(q);
  Int m;
  mpz_ui_pow_ui(m.get_mpz_t(), 2, static_cast<unsigned long>(t + 2));
  for (const auto& [u, v] : cornacchia_coprime(Int(q), m)) {
    if (mpz_odd_p(u.get_mpz_t()) && mpz_odd_p(v.get_mpz_t())) return {u, v, t};
  }
  throw std::logic_error("generator_pi: no odd solution of u^2 + q v^2 = 2^(t+2)");
}

CorK1Result check_cor_K1(std::int64_t q) {
  CorK1Result r;
  r.q = q;
  const PiGenerator pi = generator_pi(q);
  r.t = pi.t;
  const int prec = static_cast<int>(pi.t) + 64;
  const Z2Elem s = hensel_sqrt(Z2Elem::from_int(Int(-q), prec));
  const Z2Elem half = Z2Elem::from_rat(Rat(1, 2), prec);
  const Z2Elem u = Z2Elem::from_int(pi.u, prec), v = Z2Elem::from_int(pi.v, prec);
  int unit_count = 0;
  for (int sign : {1, -1}) {
    const Z2Elem img = (u + v * (sign > 0 ? s : -s)) * half;
    if (img.is_zero()) throw PrecisionError("check_cor_K1: image of pi vanishes at working precision");
    if (img.val() == 0) {
      ++unit_count;
      r.unit_sign = sign;
      r.residue_mod8 = static_cast<int>(img.residue(3).get_si());
    } else if (img.val() != pi.t) {
      r.detail = "non-unit image has valuation " + std::to_string(img.val()) + ", expected t";
      return r;
    }
  }
  if (unit_count != 1) {
    r.detail = "pi must be a unit at exactly one prime above 2";
    return r;
  }
  r.expected_orientation = (r.unit_sign == 1);
  const bool q7 = (q % 16 == 7);
  const bool pm3 = (r.residue_mod8 == 3 || r.residue_mod8 == 5);
  const bool pm1 = (r.residue_mod8 == 1 || r.residue_mod8 == 7);
  r.ok = q7 ? pm3 : pm1;
  if (!r.ok) r.detail = "residue " + std::to_string(r.residue_mod8) + " mod 8 in the wrong class";
  return r;
}

HasseResult hasse_check(std::int64_t q) {
  require_q(q);
  HasseResult r;
  r.q = q;
  const ClassGroupData g = class_group(-8 * q);
  r.h = g.h;
  r.two_part = g.two_part();
  r.cyclic = g.two_sylow_cyclic();
  r.ok = r.cyclic && ((q % 16 == 7) ? r.two_part == 4 : r.two_part >= 8);
  return r;
}

}  // namespace iwc
