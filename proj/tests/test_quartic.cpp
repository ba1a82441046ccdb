#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "iwc/quartic.hpp"

using namespace iwc;

namespace {

// log |sigma_1(eta)| = regulator / 2, from an independent computer algebra run
const std::map<long, double> kLogUnit{
    {7, 0.74301106243846354623},  {23, 2.96083578767082181341},  {31, 7.77982626675465348670},
    {47, 16.4743341742378902339}, {71, 6.28433945484141340894},  {79, 35.7649360009904685067},
    {103, 14.5522327600570379716}, {127, 46.9156804317683945312}, {151, 4.44444875184586968463},
    {167, 21.8379088760962940103}, {191, 47.6543417803334156890}, {199, 40.7330066149172521641}};

struct Fixture {
  QuarticField F;
  UnitCert u;
};

const Fixture& field(long q) {
  static std::map<long, Fixture> cache;
  auto it = cache.find(q);
  if (it == cache.end()) {
    Fixture f{maximal_order(q), {}};
    f.u = find_fundamental_unit(f.F);
    it = cache.emplace(q, std::move(f)).first;
  }
  return it->second;
}

OVec integral(const QuarticElem& x) {
  OVec v;
  for (int i = 0; i < 4; ++i) {
    REQUIRE(x.c[i].get_den() == 1);
    v[i] = x.c[i].get_num();
  }
  return v;
}

// |p(sigma_1(x))| for p = charpoly(x), in 256-bit complex arithmetic.
double embedding_residual(const QuarticField& F, const QuarticElem& x) {
  const mpfr_prec_t P = 256;
  const PowVec pw = to_power(F, x);
  const auto cp = charpoly(pw, F.q);
  mpfr_t rho, ang, re, im, t, c, s, pr, pi, nr, ni;
  for (mpfr_ptr v : {rho, ang, re, im, t, c, s, pr, pi, nr, ni}) mpfr_init2(v, P);
  mpfr_set_z(rho, F.q.get_mpz_t(), MPFR_RNDN);
  mpfr_root(rho, rho, 4, MPFR_RNDN);
  mpfr_set_ui(re, 0, MPFR_RNDN);
  mpfr_set_ui(im, 0, MPFR_RNDN);
  for (int k = 0; k < 4; ++k) {
    mpfr_const_pi(ang, MPFR_RNDN);
    mpfr_mul_ui(ang, ang, k, MPFR_RNDN);
    mpfr_div_ui(ang, ang, 4, MPFR_RNDN);
    mpfr_sin_cos(s, c, ang, MPFR_RNDN);
    mpfr_pow_ui(t, rho, k, MPFR_RNDN);
    mpfr_mul_q(t, t, pw[k].get_mpq_t(), MPFR_RNDN);
    mpfr_fma(re, t, c, re, MPFR_RNDN);
    mpfr_fma(im, t, s, im, MPFR_RNDN);
  }
  // Horner on x^4 + c3 x^3 + c2 x^2 + c1 x + c0
  mpfr_set_ui(pr, 1, MPFR_RNDN);
  mpfr_set_ui(pi, 0, MPFR_RNDN);
  for (int k = 3; k >= 0; --k) {
    mpfr_mul(nr, pr, re, MPFR_RNDN);
    mpfr_mul(t, pi, im, MPFR_RNDN);
    mpfr_sub(nr, nr, t, MPFR_RNDN);
    mpfr_mul(ni, pr, im, MPFR_RNDN);
    mpfr_mul(t, pi, re, MPFR_RNDN);
    mpfr_add(ni, ni, t, MPFR_RNDN);
    mpfr_add_q(pr, nr, cp[k].get_mpq_t(), MPFR_RNDN);
    mpfr_set(pi, ni, MPFR_RNDN);
  }
  mpfr_hypot(t, pr, pi, MPFR_RNDN);
  const double out = mpfr_get_d(t, MPFR_RNDU);
  for (mpfr_ptr v : {rho, ang, re, im, t, c, s, pr, pi, nr, ni}) mpfr_clear(v);
  return out;
}

}  // namespace

TEST_CASE("maximal order") {
  for (long q : {7L, 23L, 31L, 151L, 9967L}) {
    const QuarticField F = maximal_order(q);
    CHECK(F.index == 8);
    CHECK(F.disc == 4 * Int(q) * q * q);
    for (const auto& w : F.basis) CHECK(is_integral(w, F.q));
  }
  // (1 + alpha^2)/2 = (1 + sqrt(-q))/2
  const PowVec h{Rat(1, 2), 0, Rat(1, 2), 0};
  CHECK(is_integral(h, 7));
  CHECK(charpoly(h, 7) == std::array<Rat, 4>{4, -4, 5, -2});      // (x^2 - x + 2)^2
  CHECK(charpoly(h, 23) == std::array<Rat, 4>{36, -12, 13, -2});  // (x^2 - x + 6)^2
  CHECK_FALSE(is_integral(PowVec{Rat(1, 2), Rat(1, 2), 0, 0}, 7));
  CHECK_THROWS(maximal_order(17));
}

TEST_CASE("multiplication and norms") {
  const QuarticField F = maximal_order(23);
  const QuarticElem a{{1, 2, -3, 5}}, b{{-4, 0, 7, 1}};
  CHECK(qnorm(F, qmul(F, a, b)) == qnorm(F, a) * qnorm(F, b));
  CHECK(qtrace(F, QuarticElem{{1, 0, 0, 0}}) == 4);
  CHECK(to_power(F, from_power(F, PowVec{1, 2, 3, 4})) == PowVec{1, 2, 3, 4});
  CHECK(onorm(F, integral(a)) == qnorm(F, a));
  CHECK(det(mult_matrix(F, integral(a))) == onorm(F, integral(a)));
}

TEST_CASE("rank and torsion") {
  for (long q : {7L, 23L, 31L, 47L}) {
    const UnitRankTorsion r = unit_rank_and_torsion(maximal_order(q));
    CHECK(r.rank == 1);
    CHECK(r.torsion == std::vector<int>{1, -1});
    // for q = 15 mod 16 the ramified completion can contain i; the split
    // places (copies of Q2) rule out torsion instead
    if (q % 16 == 7) CHECK(r.i_outside_Fw);
  }
}

TEST_CASE("fundamental units against reference regulators") {
  for (const auto& [q, ref] : kLogUnit) {
    const Fixture& f = field(q);
    CHECK(f.u.certified);
    CHECK(std::fabs(f.u.log_abs1 - ref) < 1e-12 * std::max(1.0, ref));
    CHECK(std::fabs(f.u.regulator - 2 * ref) < 2e-12 * std::max(1.0, ref));
    const OVec v = integral(f.u.u);
    CHECK(onorm(f.F, v) == 1);
    CHECK(std::fabs(log_abs_sigma1(f.F, f.u.u) - ref) < 1e-12 * std::max(1.0, ref));
    // not torsion
    QuarticElem p = f.u.u;
    for (int k = 2; k <= 12; ++k) {
      p = qmul(f.F, p, f.u.u);
      REQUIRE_FALSE(p == QuarticElem{{1, 0, 0, 0}});
    }
    CHECK(embedding_residual(f.F, f.u.u) < 1e-20 * std::max(1.0, std::exp(4 * ref)));
  }
  const Fixture& f7 = field(7);
  CHECK(f7.u.u == QuarticElem{{0, 0, 1, 1}});
}

TEST_CASE("T2 route agrees with the minima chain") {
  for (long q : {7L, 23L, 151L}) {
    const Fixture& f = field(q);
    UnitSearchConfig cfg;
    cfg.method = UnitMethod::T2;
    const UnitCert t = find_fundamental_unit(f.F, cfg);
    CHECK(std::fabs(t.log_abs1 - f.u.log_abs1) < 1e-12);
  }
}

TEST_CASE("unit search budget") {
  UnitSearchConfig cfg;
  cfg.max_steps = 3;
  CHECK_THROWS_AS(find_fundamental_unit(maximal_order(9967), cfg), BudgetExceeded);
}

TEST_CASE("valuations of log eta") {
  for (long q : {7L, 23L, 71L, 103L, 151L, 167L, 199L}) {
    const Fixture& f = field(q);
    const OrdLogEtaReport r = ord_log_eta(f.F, f.u.u);
    CHECK(r.inert);
    REQUIRE(r.above_p.size() == 1);
    REQUIRE(r.above_pstar.size() == 1);
    CHECK(r.above_p[0].ord_w == 2);
    CHECK(r.above_pstar[0].ord_w == 3);
    CHECK(r.above_p[0].field.e() == 2);
    CHECK(r.above_pstar[0].field.f() == 2);
  }
  for (long q : {31L, 47L, 79L, 127L, 191L}) {
    const Fixture& f = field(q);
    const OrdLogEtaReport r = ord_log_eta(f.F, f.u.u);
    CHECK_FALSE(r.inert);
    REQUIRE(r.above_pstar.size() == 2);
    CHECK(r.above_p[0].ord_w >= 6);
    for (const auto& p : r.above_pstar) CHECK(p.ord_w >= 4);
  }
}

TEST_CASE("odd powers keep the valuations") {
  for (long q : {7L, 23L, 31L, 47L}) {
    const Fixture& f = field(q);
    const QuarticElem e3 = qmul(f.F, f.u.u, qmul(f.F, f.u.u, f.u.u));
    const OrdLogEtaReport a = ord_log_eta(f.F, f.u.u), b = ord_log_eta(f.F, e3);
    CHECK(a.above_p[0].ord_w == b.above_p[0].ord_w);
    REQUIRE(a.above_pstar.size() == b.above_pstar.size());
    for (std::size_t i = 0; i < a.above_pstar.size(); ++i) CHECK(a.above_pstar[i].ord_w == b.above_pstar[i].ord_w);
  }
}

TEST_CASE("local degrees and local norms") {
  const int prec = 128;
  for (long q : {7L, 23L, 31L, 47L, 71L}) {
    const Fixture& f = field(q);
    const RamificationData rd = ramification_data(q);
    int total = rd.w_e * rd.w_f;
    for (const auto& [e, fd] : rd.wstar_ef) total += e * fd;
    CHECK(total == 4);

    // one root per non-rational completion (its conjugate gives the same
    // place), every root for Q2
    const SplittingPattern sp = splitting_pattern(q);
    Z2Elem prod = Z2Elem::from_int(1, prec);
    int places = 0;
    for (const LocalField& L : {sp.ramified, sp.other}) {
      const auto roots = local_roots_quartic(q, L, prec);
      REQUIRE_FALSE(roots.empty());
      if (L.kind == LocalKind::Rational) {
        for (const auto& r : roots) {
          const LocalQuad x = local_image(f.F, f.u.u, r.r);
          prod = prod * Z2Elem::from_parts(x.k(), x.a(), x.prec());
          ++places;
        }
      } else {
        const auto it = std::find_if(roots.begin(), roots.end(), [](const LocalRoot& r) { return r.r.b() != 0; });
        REQUIRE(it != roots.end());
        prod = prod * local_image(f.F, f.u.u, it->r).norm();
        ++places;
      }
    }
    CHECK(places == static_cast<int>(1 + rd.wstar_ef.size()));
    const Z2Elem diff = prod - Z2Elem::from_int(1, prec);
    CHECK((diff.is_zero() ? diff.abs_prec() : diff.val()) >= prec - 16);
  }
}

TEST_CASE("mirror swap") {
  for (long q : {7L, 23L, 31L, 47L}) {
    const Fixture& f = field(q);
    const MirrorResult m = mirror_check(f.F, f.u.u);
    CHECK(m.ok);
    CHECK(m.f.above_p[0].ord_w == m.f_prime.above_pstar[0].ord_w);
    // swapping twice is the identity
    const OrdLogEtaReport back = ord_log_eta(f.F, f.u.u, kDefaultPadicPrec, 1);
    CHECK(back.above_p[0].ord_w == m.f.above_p[0].ord_w);
  }
  const MirrorResult m7 = mirror_check(field(7).F, field(7).u.u);
  CHECK(m7.f_prime.above_p[0].ord_w == 3);
  CHECK(m7.f_prime.above_pstar[0].ord_w == 2);
}

TEST_CASE("ramification data") {
  const RamificationData r7 = ramification_data(7);
  CHECK(r7.inert);
  CHECK(r7.w_e == 2);
  CHECK(r7.wstar_ef == std::vector<std::pair<int, int>>{{1, 2}});
  const RamificationData r31 = ramification_data(31);
  CHECK_FALSE(r31.inert);
  CHECK(r31.wstar_ef.size() == 2);
  CHECK_THROWS(ramification_data(5));
}
