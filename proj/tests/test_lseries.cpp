#include <doctest.h>

#include <cmath>

#include "iwc/lseries.hpp"

using namespace iwc;

namespace {

HPReal num(const char* s, mpfr_prec_t p = kDefaultFloatPrec) { return HPReal::from_string(s, p); }

}  // namespace

TEST_CASE("f(z) = E1(z)/z") {
  const HPReal f1 = f_of_z(num("1"));
  CHECK(f1.mid() == doctest::Approx(0.21938393439552).epsilon(1e-13));
  CHECK(f1.width() < 1e-30);
  for (const char* z : {"0.5", "1", "2", "10", "4", "4.0001", "37.5"}) {
    const HPReal Z = num(z);
    const HPReal bound = (-Z).exp() / (Z * Z);
    CHECK(f_of_z(Z).certainly_less(bound));
    CHECK(f_of_z(Z).positive());
  }
  CHECK_THROWS(f_of_z(num("0")));
  CHECK_THROWS(f_of_z(num("-1")));

  // E1(z) = -Ei(-z)
  for (const char* z : {"5", "8", "20"}) {
    Mpfr x(200), e(200);
    mpfr_set_str(x.get(), z, 10, MPFR_RNDN);
    mpfr_neg(x.get(), x.get(), MPFR_RNDN);
    mpfr_eint(e.get(), x.get(), MPFR_RNDN);  // Ei(-z) = -E1(z)
    mpfr_neg(e.get(), e.get(), MPFR_RNDN);
    const HPReal E = exp_integral_e1(num(z));
    CHECK(E.mid() == doctest::Approx(e.to_double()).epsilon(1e-15));
  }
}

TEST_CASE("small z behaviour") {
  const HPReal g = HPReal::euler_gamma();
  for (const char* z : {"1e-3", "1e-5", "1e-8"}) {
    const HPReal Z = num(z);
    const HPReal lhs = Z * f_of_z(Z);
    const HPReal rhs = -g - Z.log();
    CHECK(std::fabs(lhs.mid() - rhs.mid()) < 2 * Z.mid());
  }
}

TEST_CASE("derivative identity") {
  // d/dz (z f(z)) = -exp(-z)/z, central differences, 128-bit
  for (const char* z : {"0.3", "1", "2.5", "3.9", "4.1", "7", "15"}) {
    const HPReal Z = num(z);
    const HPReal h = num("1e-12");
    const HPReal a = Z + h, b = Z - h;
    const HPReal fd = (a * f_of_z(a) - b * f_of_z(b)) / h.mul_si(2);
    const HPReal want = -((-Z).exp() / Z);
    CHECK(std::fabs(fd.mid() - want.mid()) < 1e-10);
  }
}

TEST_CASE("lower bound for U") {
  const HPReal w28 = num("28");
  const HPReal u28 = u_lower_bound(w28);
  CHECK((u28 / w28).certainly_greater(num("0.08107226")));
  CHECK(std::fabs((u28 / w28).mid() - 0.08114) < 1e-4);
  // direct evaluation at W = 4000 gives 0.41090 per unit of W
  const HPReal w4000 = num("4000");
  CHECK(std::fabs((u_lower_bound(w4000) / w4000).mid() - 0.410899) < 1e-5);
  double prev = 0;
  for (long W = 28; W < 100000; W = W * 3 / 2) {
    const double v = u_lower_bound(HPReal::from_si(W)).mid();
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS(u_lower_bound(num("27")));
}

TEST_CASE("y series") {
  const HPReal y = y_series();
  CHECK(y.certainly_greater(num("0.2079")));
  CHECK(y.certainly_less(num("0.2080")));
  CHECK(std::fabs(y.mid() - 0.207996300471507) < 1e-14);
  const HPReal first = (HPReal::pi() / HPReal::from_si(-2)).exp();
  CHECK(std::fabs(first.mid() - 0.20788) < 1e-5);
  // everything after y = 3 is tiny
  const HPReal three = (HPReal::pi() / HPReal::from_si(-2)).exp() +
                       (HPReal::pi().mul_si(-2)).exp() / HPReal::from_si(16) +
                       (HPReal::pi().mul_si(-9) / HPReal::from_si(2)).exp() / HPReal::from_si(81);
  CHECK((y - three).upper() < 1e-9);
}

TEST_CASE("x sums") {
  const HPReal pi = HPReal::pi();
  const HPReal x7 = x_gauss_sum(7);
  CHECK(x7.certainly_less(HPReal::from_si(7) / pi));
  double prev = 0;
  for (long q : {7L, 103L, 1999L, 9967L, 99991L}) {
    const double ratio = (x_gauss_sum(q) / (HPReal::from_si(q) / pi)).mid();
    CHECK(ratio < 1);
    CHECK(ratio > prev);
    prev = ratio;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("upper bounds for |V|") {
  const VBounds v = v_upper_bound(7);
  CHECK(v.truncated.positive());
  CHECK(v.truncated.certainly_less(v.chain));
  const HPReal W = HPReal::from_si(28);
  CHECK(std::fabs((v.closed / W).mid() - 0.01341663832) < 1e-9);
  CHECK((v.chain / W).upper() <= 0.01341663832 + 1e-9);
  for (long q : {23L, 31L, 151L, 9967L}) {
    const VBounds b = v_upper_bound(q);
    CHECK(b.truncated.certainly_less(b.chain));
    CHECK(b.chain.certainly_less(b.closed.add_error(num("1e-9"))));
  }
}

TEST_CASE("truncation independence") {
  for (long q : {7L, 31L, 199L}) {
    const VBounds a = v_upper_bound(q, kDefaultFloatPrec, 40), b = v_upper_bound(q, kDefaultFloatPrec, 80);
    CHECK(b.terms > a.terms);
    // both enclose the same infinite sum
    CHECK_FALSE(a.truncated.certainly_less(b.truncated));
    CHECK_FALSE(b.truncated.certainly_less(a.truncated));
    CHECK(b.truncated.width() <= a.truncated.width());
  }
}

TEST_CASE("simple zero criterion") {
  for (long q : {7L, 31L, 23L, 9967L}) {
    const BoundReport r = simple_zero_criterion(q);
    CHECK(r.verdict);
    CHECK(r.u_lower.certainly_greater(r.v_upper_chain));
    const double margin = (r.u_lower - r.v_upper_truncated).lower();
    CHECK(margin > r.u_lower.width() + r.v_upper_truncated.width());
  }
}
