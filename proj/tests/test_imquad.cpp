#include <doctest.h>

#include <cmath>
#include <random>

#include "iwc/imquad.hpp"

using namespace iwc;

namespace {

bool fundamental(long D) {
  const long m = -D;
  auto squarefree = [](long n) {
    for (long p = 2; p * p <= n; ++p)
      if (n % (p * p) == 0) return false;
    return true;
  };
  if (m % 4 == 3) return squarefree(m);
  if (m % 4 == 0) {
    const long k = m / 4;
    return (k % 4 == 1 || k % 4 == 2) && squarefree(k);
  }
  return false;
}

// h(D) for fundamental D < 0 from the Dirichlet series of the Kronecker
// character, with Polya-Vinogradov style partial summation for the tail.
long analytic_class_number(long D) {
  const long m = -D;
  std::vector<int> chi(m);
  for (long n = 0; n < m; ++n) chi[n] = n == 0 ? 0 : kronecker(D, n);
  const long N = 200 * m;
  double L = 0;
  for (long n = 1; n <= N; ++n) L += chi[n % m] / static_cast<double>(n);
  const double tail = static_cast<double>(m) / (N + 1);
  const int w = m == 3 ? 6 : m == 4 ? 4 : 2;
  const double scale = w * std::sqrt(static_cast<double>(m)) / (2 * M_PI);
  const double h = scale * L;
  const long r = std::lround(h);
  REQUIRE(std::fabs(h - r) + scale * tail < 0.5);
  return r;
}

// Primitive reduced forms by direct enumeration.
long enumerated_class_number(long D) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b - D) % (4 * a)) continue;
      const long c = (b * b - D) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

}  // namespace

TEST_CASE("reduction") {
  CHECK(reduce(Form{2, 1, 1}) == Form{1, 1, 2});
  const Form f = reduce(Form{3, 1, 2});
  CHECK(f.a == 2);
  CHECK(std::labs(f.b) == 1);
  CHECK(f.c == 3);
  CHECK(f.disc() == -23);
  CHECK(f.is_reduced());
}

TEST_CASE("class numbers") {
  CHECK(class_number(-7) == 1);
  CHECK(class_number(-23) == 3);
  CHECK(class_number(-56) == 4);
  CHECK(class_number(-3) == 1);
  CHECK(class_number(-4) == 1);
  for (long D = -3; D >= -500; --D) {
    if (D % 4 != 0 && (D % 4 + 4) % 4 != 1) continue;
    REQUIRE(class_number(D) == enumerated_class_number(D));
    REQUIRE(static_cast<long>(reduced_forms(D).size()) == class_number(D));
    if (fundamental(D)) REQUIRE(class_number(D) == analytic_class_number(D));
  }
}

TEST_CASE("composition laws") {
  std::mt19937_64 rng(29);
  for (long D : {-23L, -56L, -71L, -199L, -420L, -1248L, -8 * 151L, -8 * 9973L}) {
    const auto forms = reduced_forms(D);
    const long h = class_number(D);
    std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
    const Form e = principal_form(D);
    for (int i = 0; i < 60; ++i) {
      const Form f = forms[pick(rng)], g = forms[pick(rng)], k = forms[pick(rng)];
      REQUIRE(compose(f, g) == compose(g, f));
      REQUIRE(compose(compose(f, g), k) == compose(f, compose(g, k)));
      REQUIRE(compose(f, e) == reduce(f));
      REQUIRE(compose(f, inverse(f)) == e);
      REQUIRE(h % form_order(f) == 0);
      REQUIRE(form_pow(f, h) == e);
    }
  }
}

TEST_CASE("class group structure") {
  const ClassGroupData g = class_group(-56);
  CHECK(g.h == 4);
  CHECK(g.two_part() == 4);
  CHECK(g.two_sylow_cyclic());
  const ClassGroupData g2 = class_group(-420);  // (Z/2)^3
  CHECK(g2.h == 8);
  CHECK(g2.two_sylow == std::vector<std::int64_t>{2, 2, 2});
}

TEST_CASE("prime above 2 and its generator") {
  CHECK(order_of_prime2_class(7) == 1);
  CHECK(order_of_prime2_class(23) == 3);
  PiGenerator p = generator_pi(7);
  CHECK(p.t == 1);
  CHECK(abs(p.u) == 1);
  CHECK(abs(p.v) == 1);
  p = generator_pi(23);
  CHECK(p.t == 3);
  CHECK(abs(p.u) == 3);
  CHECK(abs(p.v) == 1);
  for (long q = 7; q < 3000; q += 8) {
    if (!is_prime(Int(q))) continue;
    const PiGenerator g = generator_pi(q);
    REQUIRE(g.u * g.u + q * g.v * g.v == pow2(static_cast<int>(g.t) + 2));
    REQUIRE(g.t == order_of_prime2_class(q));
    // no smaller power of the class is principal
    REQUIRE_FALSE(cornacchia_coprime(q, pow2(static_cast<int>(g.t) + 1)).size() > 0);
  }
}

TEST_CASE("pi modulo 8") {
  for (long q : {7L, 23L, 71L}) {
    const CorK1Result r = check_cor_K1(q);
    CHECK(r.ok);
    CHECK((r.residue_mod8 == 3 || r.residue_mod8 == 5));
  }
  for (long q : {31L, 47L, 79L}) {
    const CorK1Result r = check_cor_K1(q);
    CHECK(r.ok);
    CHECK((r.residue_mod8 == 1 || r.residue_mod8 == 7));
  }
}

TEST_CASE("2-part of h(-8q)") {
  const HasseResult h = hasse_check(7);
  CHECK(h.h == 4);
  CHECK(h.two_part == 4);
  CHECK(h.ok);
  CHECK(hasse_check(31).two_part >= 8);
  CHECK(hasse_check(31).cyclic);
}
