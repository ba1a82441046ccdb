#pragma once

// F = Q(alpha), alpha^4 = -q, q = 7 mod 8 prime: maximal order, a certified
// fundamental unit, and the 2-adic valuations of its logarithm.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "iwc/arith.hpp"
#include "iwc/hpreal.hpp"
#include "iwc/lattice.hpp"
#include "iwc/padic2.hpp"

namespace iwc {

using PowVec = std::array<Rat, 4>;  // coordinates on 1, alpha, alpha^2, alpha^3
using OVec = std::array<Int, 4>;    // coordinates on the integral basis

struct QuarticField {
  Int q;
  std::array<PowVec, 4> basis;      // omega_i in the power basis; omega_0 = 1
  std::array<PowVec, 4> inv_basis;  // alpha^k in omega coordinates
  Int index;                        // [O_F : Z[alpha]]
  Int disc;                         // disc(O_F) = 256 q^3 / index^2
  std::array<std::array<OVec, 4>, 4> table;  // omega_i omega_j
};

/// Element on the integral basis (rational coordinates allowed).
struct QuarticElem {
  std::array<Rat, 4> c;
  bool operator==(const QuarticElem& o) const { return c == o.c; }
};

PowVec poly_mul(const PowVec& a, const PowVec& b, const Int& q);
/// Characteristic polynomial of multiplication by a: x^4 + c3 x^3 + ... + c0,
/// returned as {c0, c1, c2, c3}.
std::array<Rat, 4> charpoly(const PowVec& a, const Int& q);
bool is_integral(const PowVec& a, const Int& q);

QuarticField maximal_order(const Int& q);

PowVec to_power(const QuarticField& F, const QuarticElem& x);
QuarticElem from_power(const QuarticField& F, const PowVec& x);
OVec omul(const QuarticField& F, const OVec& a, const OVec& b);
QuarticElem qmul(const QuarticField& F, const QuarticElem& a, const QuarticElem& b);
IntMat mult_matrix(const QuarticField& F, const OVec& x);  // rows: omega_i * x
Int onorm(const QuarticField& F, const OVec& x);
Rat qnorm(const QuarticField& F, const QuarticElem& x);
Rat qtrace(const QuarticField& F, const QuarticElem& x);
bool is_integral_elem(const QuarticField& F, const QuarticElem& x);

struct UnitRankTorsion {
  int rank = 1;
  std::vector<int> torsion{1, -1};
  bool i_outside_Fw = false;  // x^2 + 1 has no root in the ramified completion
};

UnitRankTorsion unit_rank_and_torsion(const QuarticField& F);

enum class UnitMethod { Minima, T2 };

struct UnitSearchConfig {
  UnitMethod method = UnitMethod::Minima;
  double t2_budget = 1e7;             // largest T2 bound tried by the T2 route
  std::size_t max_points = 50'000'000;
  std::size_t max_steps = 2'000'000;  // relative minima visited
  mpfr_prec_t float_prec = 256;
};

struct UnitCert {
  QuarticElem u;                 // |sigma_1(u)| > 1
  double log_abs1 = 0;           // log |sigma_1(u)|
  double regulator = 0;          // 2 log |sigma_1(u)|
  bool certified = false;
  std::string method;
  double enumeration_radius = 0;  // final T2 bound (T2) or largest box radius (minima)
  std::size_t steps = 0;         // relative minima visited
};

UnitCert find_fundamental_unit(const QuarticField& F, const UnitSearchConfig& cfg = {});

/// log |sigma_1(x)| for x in F, evaluated in MPFR at a precision adapted to x.
double log_abs_sigma1(const QuarticField& F, const QuarticElem& x);

struct PlaceValuation {
  std::string label;  // "w", "w*", "w1*", "w2*"
  LocalField field;
  int ord_w = 0;
  LocalQuad log;  // log of eta (of eta^3 when `cubed`) in the completion
};

struct OrdLogEtaReport {
  bool inert = true;  // q = 7 mod 16
  std::vector<PlaceValuation> above_p;      // places over p (sqrt(-q) -> -s)
  std::vector<PlaceValuation> above_pstar;  // places over p* (sqrt(-q) -> s)
  int prec_used = 0;
  bool cubed = false;  // a residue degree 2 place needed eta^3
};

/// Valuations of log eta at the places above 2.  Here s = hensel_sqrt(-q),
/// p is the prime of K = Q(sqrt(-q)) where sqrt(-q) -> -s and p* the other.
/// `twist` = +1 reads F as K(alpha) with alpha^2 = sqrt(-q); -1 as F' with
/// alpha^2 = -sqrt(-q).
OrdLogEtaReport ord_log_eta(const QuarticField& F, const QuarticElem& eta,
                            int prec = kDefaultPadicPrec, int twist = 1);

/// Image of an element of F under alpha -> r.
LocalQuad local_image(const QuarticField& F, const QuarticElem& x, const LocalQuad& r);

struct MirrorResult {
  bool ok = false;
  OrdLogEtaReport f, f_prime;
  std::string detail;
};

MirrorResult mirror_check(const QuarticField& F, const QuarticElem& eta,
                          int prec = kDefaultPadicPrec);

struct RamificationData {
  bool inert = true;
  int w_e = 2, w_f = 1;
  // above p*: one place with f = 2, or two places with e = f = 1
  std::vector<std::pair<int, int>> wstar_ef;
};

RamificationData ramification_data(const Int& q);

}  // namespace iwc
