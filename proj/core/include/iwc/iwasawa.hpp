#pragma once

// Index formula for the maximal abelian 2-extension unramified outside one
// prime, the structure of X*(F) from the unit quotient, and the ambiguous
// class number formula.

#include <utility>
#include <vector>

#include "iwc/arith.hpp"
#include "iwc/quartic.hpp"

namespace iwc {

/// All entries are 2-adic valuations.  Rational so that valuations taken in
/// a ramified completion can be normalised to ord_2.
struct CWInputs {
  Rat e = 0, f = 0;
  Rat ord_R = 0;
  Rat ord_h = 0;
  Rat ord_omega = 0;
  Rat ord_sqrt_disc = 0;
  std::vector<Rat> local_norm_factors;  // ord_2(1 - 1/N g)
};

/// 1 + (e - f + 1) + ord_R + ord_h - ord_omega - ord_sqrt_disc + sum(factors).
/// Throws if the result is not an integer.
Int cw_valuation(const CWInputs& in);

/// Inputs for F at the prime over p (`at_pstar` false) or over p*, read from
/// the unit-log report.  Valid for q = 7 mod 16 where each side has one place.
CWInputs cw_inputs_F(const OrdLogEtaReport& rep, bool at_pstar, const Rat& ord_h = 0);

/// Inputs for D = Q(i, sqrt(-q)) at p, given ord_2 of log of its unit.
CWInputs cw_inputs_D(int ord_log_unit);

struct GalStruct {
  int free_rank = 0;
  std::vector<Int> elementary_divisors;  // ascending powers of 2
  Int torsion_order() const;
  bool cyclic_torsion() const { return elementary_divisors.size() <= 1; }
};

struct InertStructure {
  GalStruct xstar;
  Int cw = 0;       // cw_valuation at p*
  Int cw_xf = 0;    // cw_valuation at p (the X(F) side)
  bool agree = false;
  Int coord_a, coord_b;  // log eta = 2a + 4b zeta, known mod 2^prec
};

/// q = 7 mod 16.  log(U_1) in Q2(zeta) is Z2*2 + Z2*4zeta; the torsion of
/// the quotient by log(eta) is cyclic of order 2^min(ord a, ord b).
InertStructure xstar_structure_inert(const QuarticField& F, const QuarticElem& eta,
                                     int prec = kDefaultPadicPrec);

struct SplitStructure {
  GalStruct xstar;
  int r = 0;
  int ord_l1 = 0, ord_l2 = 0;
  bool norm_relation = false;  // l1 + l2 = 0
};

/// q = 15 mod 16.  Z/2 from {+-1}^2/(-1,-1), times the torsion of
/// (4Z2)^2 / Z2 (l1, l2).
SplitStructure xstar_structure_split(const QuarticField& F, const QuarticElem& eta,
                                     int prec = kDefaultPadicPrec);

/// h_M * prod_S(e f) * prod_{ramified outside S}(e) / (degree * unit_norm_index),
/// asserted integral.
Rat chevalley_rhs(const Int& h_M, const std::vector<Int>& ramified_e,
                  const std::vector<std::pair<Int, Int>>& S_terms, const Int& degree,
                  const Int& unit_norm_index);

}  // namespace iwc
