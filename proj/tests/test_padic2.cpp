#include <doctest.h>

#include <random>
#include <set>

#include "iwc/padic2.hpp"

using namespace iwc;

namespace {

std::set<long> odd_prime_divisors(long n) {
  std::set<long> s;
  n = n < 0 ? -n : n;
  for (long p = 3; p * p <= n; p += 2)
    while (n % p == 0) s.insert(p), n /= p;
  while (n % 2 == 0) n /= 2;
  if (n > 1) s.insert(n);
  return s;
}

LocalQuad random_unit(const LocalField& F, std::mt19937_64& rng, int depth, int prec) {
  // 1 + 2^depth * (a + b g)
  std::uniform_int_distribution<long> d(-1000000, 1000000);
  return LocalQuad::from_rat(F, 1, prec) + LocalQuad::make(F, depth, d(rng), d(rng), prec);
}

}  // namespace

TEST_CASE("hensel_sqrt examples") {
  const Z2Elem s = hensel_sqrt(Z2Elem::from_int(-7, 5));
  CHECK(s.residue(4) == 5);
  CHECK((s * s).residue(4) == Int(-7 + 16));
  // -7 = 25 mod 32, yet the square root is pinned down only mod 16: at
  // higher precision it is 21 mod 32
  CHECK(hensel_sqrt(Z2Elem::from_int(-7, 64)).residue(5) == 21);
  CHECK(hensel_sqrt(Z2Elem::from_int(1, 64)).residue(32) == 1);
  const Z2Elem s31 = hensel_sqrt(Z2Elem::from_int(-31, 64));
  CHECK(s31.residue(3) == 1);
  CHECK_THROWS(hensel_sqrt(Z2Elem::from_int(5, 64)));
}

TEST_CASE("hensel_sqrt round trip") {
  std::mt19937_64 rng(5);
  for (int prec : {8, 40, 192, 500}) {
    for (int i = 0; i < 200; ++i) {
      Int a(static_cast<unsigned long>(rng() >> 4));
      a = 8 * a + 1;
      const Z2Elem x = Z2Elem::from_int(a, prec);
      const Z2Elem s = hensel_sqrt(x);
      CHECK(s.residue(2) == 1);
      const Z2Elem diff = s * s - x;
      REQUIRE((diff.is_zero() ? diff.abs_prec() : diff.val()) >= prec - 1);
    }
  }
}

TEST_CASE("splitting pattern") {
  const SplittingPattern p7 = splitting_pattern(7);
  CHECK(p7.pattern == Pattern::TwoQuadratic);
  CHECK(p7.ramified == LocalField::ramified(3));
  CHECK(p7.other == LocalField::unramified());
  CHECK(splitting_pattern(31).pattern == Pattern::QuadraticPlusTwoLinear);
  CHECK(splitting_pattern(31).other == LocalField::rational());
  CHECK(splitting_pattern(23).pattern == Pattern::TwoQuadratic);
  for (long q : {47L, 79L, 127L, 191L})
    CHECK(splitting_pattern(q).pattern == Pattern::QuadraticPlusTwoLinear);
  for (long q : {71L, 103L, 151L, 167L, 199L})
    CHECK(splitting_pattern(q).pattern == Pattern::TwoQuadratic);
}

TEST_CASE("roots of x^4 + q") {
  const int prec = 120;
  struct Case {
    long q;
    LocalField F;
    std::size_t n;
  };
  for (const Case& c : {Case{7, LocalField::unramified(), 2}, Case{7, LocalField::ramified(3), 2},
                        Case{31, LocalField::rational(), 2}, Case{23, LocalField::unramified(), 2},
                        Case{151, LocalField::ramified(3), 2}}) {
    const auto roots = local_roots_quartic(c.q, c.F, prec);
    REQUIRE(roots.size() == c.n);
    for (const auto& rt : roots) {
      const LocalQuad v = rt.r.pow(4) + LocalQuad::from_rat(c.F, c.q, prec);
      CHECK((v.is_zero() || v.ord_w() >= c.F.e() * (prec - 4)));
    }
  }
  for (const auto& rt : local_roots_quartic(31, LocalField::rational(), prec)) CHECK(rt.r.b() == 0);
  CHECK(local_roots_quartic(7, LocalField::rational(), prec).empty());
}

TEST_CASE("2-adic logarithm") {
  const LocalField Qi = LocalField::ramified(-1);
  CHECK(log_2adic(LocalQuad::from_rat(Qi, 1)).is_zero());
  CHECK_THROWS(log_2adic(LocalQuad::from_rat(LocalField::rational(), 2)));

  // eps = 8 + 3 sqrt 7 for q = 7, with sqrt 7 = i * sqrt(-7) in Q2(i)
  const int prec = 160;
  const Z2Elem t = hensel_sqrt(Z2Elem::from_int(-7, prec + 2));
  const LocalQuad eps = LocalQuad::from_rat(Qi, 8, prec) + LocalQuad::from_z2(Qi, t) * LocalQuad::gen(Qi, prec) *
                                                             LocalQuad::from_rat(Qi, 3, prec);
  const LocalQuad l = log_2adic(eps.pow(4));
  CHECK(l.ord_w() == 2 * 5);

  std::mt19937_64 rng(17);
  for (const LocalField& F : {LocalField::rational(), LocalField::unramified(), LocalField::ramified(3),
                              LocalField::ramified(-1), LocalField::ramified(2), LocalField::ramified(-6)}) {
    for (int i = 0; i < 40; ++i) {
      const LocalQuad u = random_unit(F, rng, 1, prec), v = random_unit(F, rng, 1, prec);
      const LocalQuad lhs = log_2adic(u * v), rhs = log_2adic(u) + log_2adic(v);
      REQUIRE(lhs.congruent(rhs, F.e() * (prec - 40)));
      REQUIRE(log_2adic(u * u).congruent(LocalQuad::from_rat(F, 2, prec) * log_2adic(u), F.e() * (prec - 40)));
    }
  }
}

TEST_CASE("hilbert symbols") {
  CHECK(hilbert2(-1, -1) == -1);
  for (long b : {-7L, 2L, 3L, 5L, 6L, -1L}) CHECK(hilbert2(1, b) == 1);
  CHECK(hilbert2(2, 7) == 1);
  CHECK(hilbert2(2, 3) == -1);
  CHECK(hilbert_inf(-1, -1) == -1);
  CHECK(hilbert_odd(3, 5, Int(5)) == -1);

  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-300, 300);
  auto nz = [&] {
    long x;
    do x = d(rng);
    while (x == 0);
    return x;
  };
  for (int i = 0; i < 400; ++i) {
    const long a = nz(), b = nz(), c = nz();
    REQUIRE(hilbert2(Rat(a * b), c) == hilbert2(a, c) * hilbert2(b, c));
    REQUIRE(hilbert2(a, b) == hilbert2(b, a));
    REQUIRE(hilbert2(a, -a) == 1);
    int prod = hilbert2(a, b) * hilbert_inf(a, b);
    std::set<long> ps = odd_prime_divisors(a);
    for (long p : odd_prime_divisors(b)) ps.insert(p);
    for (long p : ps) prod *= hilbert_odd(a, b, Int(p));
    REQUIRE(prod == 1);
  }
  CHECK(hilbert2(Rat(3, 4), Rat(-1, 9)) == hilbert2(3, -1));
}

TEST_CASE("primes above q") {
  CHECK(primes_above_q_count(7) == 1);
  CHECK(primes_above_q_count(31) == 4);
  CHECK(primes_above_q_count(127) == 16);
  for (long q = 7; q < 3000; q += 8) {
    if (!is_prime(Int(q))) continue;
    const RqRoutes r = primes_above_q_routes(q);
    REQUIRE(r.via_sqrt == r.via_q1);
    if (q % 16 == 15) REQUIRE(r.via_sqrt >= 2);
    else REQUIRE(r.via_sqrt == 1);
  }
}

TEST_CASE("z2 arithmetic") {
  const Z2Elem a = Z2Elem::from_rat(Rat(3, 8), 64);
  CHECK(a.val() == -3);
  CHECK((a * a.inverse()).residue(60) == 1);
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(Z2Elem::zero(10).val(), PrecisionError);
}
