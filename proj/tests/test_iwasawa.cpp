#include <doctest.h>

#include <algorithm>
#include <random>

#include "iwc/iwasawa.hpp"

using namespace iwc;

namespace {

struct Unit {
  QuarticField F;
  UnitCert u;
};

Unit unit_for(long q) {
  Unit x{maximal_order(q), {}};
  x.u = find_fundamental_unit(x.F);
  return x;
}

}  // namespace

TEST_CASE("index formula on explicit inputs") {
  CWInputs f;
  f.ord_R = 3;
  f.ord_omega = 1;
  f.local_norm_factors = {-2};  // 1 - 1/4
  CHECK(cw_valuation(f) == 2);

  CWInputs d;
  d.ord_R = 2;
  d.ord_omega = 2;
  d.ord_sqrt_disc = 1;
  d.local_norm_factors = {-1};
  CHECK(cw_valuation(d) == 0);
  CHECK(cw_valuation(cw_inputs_D(2)) == 0);

  // ramified side of F: ord_R measured in ord_2, i.e. ord_w / e = 2 / 2
  CWInputs w;
  w.ord_R = 1;
  w.ord_omega = 1;
  w.ord_sqrt_disc = 1;
  w.local_norm_factors = {-1};
  CHECK(cw_valuation(w) == 0);

  CWInputs bad;
  bad.ord_R = Rat(1, 2);
  CHECK_THROWS(cw_valuation(bad));
}

TEST_CASE("index formula is linear and order free") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int i = 0; i < 300; ++i) {
    CWInputs in;
    in.e = d(rng);
    in.f = d(rng);
    in.ord_R = d(rng);
    in.ord_h = d(rng);
    in.ord_omega = d(rng);
    in.ord_sqrt_disc = d(rng);
    for (int k = d(rng) + 6; k > 0; --k) in.local_norm_factors.push_back(d(rng));
    const Int base = cw_valuation(in);
    CWInputs shuffled = in;
    std::shuffle(shuffled.local_norm_factors.begin(), shuffled.local_norm_factors.end(), rng);
    REQUIRE(cw_valuation(shuffled) == base);
    CWInputs bumped = in;
    bumped.ord_R += 1;
    bumped.ord_h += 2;
    bumped.ord_omega += 1;
    REQUIRE(cw_valuation(bumped) == base + 2);
    bumped = in;
    bumped.e += 1;
    bumped.f += 3;
    REQUIRE(cw_valuation(bumped) == base - 2);
  }
}

TEST_CASE("inputs read from the unit logarithm") {
  const Unit x = unit_for(7);
  const OrdLogEtaReport rep = ord_log_eta(x.F, x.u.u);
  const CWInputs s = cw_inputs_F(rep, true);
  CHECK(s.ord_R == 3);
  CHECK(s.local_norm_factors == std::vector<Rat>{-2});
  CHECK(cw_valuation(s) == 2);
  const CWInputs p = cw_inputs_F(rep, false);
  CHECK(p.ord_R == 1);
  CHECK(cw_valuation(p) == 0);
  CHECK(cw_valuation(cw_inputs_F(rep, true, 1)) == 3);
}

TEST_CASE("X* for q = 7 mod 16") {
  for (long q : {7L, 23L, 71L, 103L}) {
    const Unit x = unit_for(q);
    const InertStructure s = xstar_structure_inert(x.F, x.u.u);
    CHECK(s.xstar.free_rank == 1);
    CHECK(s.xstar.cyclic_torsion());
    CHECK(s.xstar.torsion_order() == 4);
    CHECK(s.cw == 2);
    CHECK(s.cw_xf == 0);
    CHECK(s.agree);
  }
  CHECK_THROWS(xstar_structure_inert(maximal_order(31), unit_for(31).u.u));
}

TEST_CASE("X* for q = 15 mod 16") {
  // min ord_2 log eta over the two split places, from a reference run
  const std::vector<std::pair<long, int>> ref{{31, 4}, {47, 4}, {79, 4}, {127, 6}, {191, 4}, {223, 7}, {239, 4}, {271, 4}};
  for (const auto& [q, ord] : ref) {
    const Unit x = unit_for(q);
    const SplitStructure s = xstar_structure_split(x.F, x.u.u);
    CHECK(s.r == ord - 2);
    CHECK(s.r >= 2);
    CHECK(s.norm_relation);
    CHECK(std::min(s.ord_l1, s.ord_l2) == ord);
    REQUIRE(s.xstar.elementary_divisors.size() == 2);
    CHECK(s.xstar.elementary_divisors[0] == 2);
    CHECK(s.xstar.elementary_divisors[1] == pow2(s.r));
  }
}

TEST_CASE("ambiguous class number formula") {
  CHECK(chevalley_rhs(1, {}, {{4, 1}, {2, 1}}, 4, 2) == 1);
  for (long h : {1L, 3L, 10L}) CHECK(chevalley_rhs(h, {}, {}, 1, 1) == h);
  const Rat two_ramified = chevalley_rhs(1, {2, 2}, {}, 2, 1);
  CHECK(two_ramified == 2);
  CHECK(two_ramified.get_num() % 2 == 0);
  CHECK_THROWS(chevalley_rhs(1, {2}, {}, 4, 1));
}
