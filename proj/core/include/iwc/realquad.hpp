#pragma once

// Units of Z[sqrt q] for primes q = 7 mod 8, the norm-2 element theta, and
// the checks on eps = theta^2 / 2 inside Q(i, sqrt q).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "iwc/arith.hpp"
#include "iwc/padic2.hpp"

namespace iwc {

constexpr std::size_t kDefaultPellBits = std::size_t{1} << 20;

/// x + y sqrt(q).
struct RQInt {
  Int x, y;

  Int norm(const Int& q) const { return x * x - q * y * y; }
  Int trace() const { return 2 * x; }
  bool operator==(const RQInt& o) const { return x == o.x && y == o.y; }
};

RQInt rq_mul(const RQInt& a, const RQInt& b, const Int& q);

struct CFData {
  Int a0;
  std::vector<Int> period;
};

CFData cf_sqrt(const Int& q);

struct UnitResult {
  RQInt eps;
  int norm = 1;  // -1 would contradict the theory for q = 7 mod 8
};

/// Least unit > 1 of Z[sqrt q] from the continued-fraction period.
/// Throws BudgetExceeded when the coefficients pass `max_bits`.
UnitResult fundamental_unit(const Int& q, std::size_t max_bits = kDefaultPellBits);

struct Norm2Result {
  RQInt theta;      // x^2 - q y^2 = 2
  RQInt eps_prime;  // theta^2 / 2
  int power = 0;    // eps_prime = eps^power
};

Norm2Result solve_norm2(const Int& q, std::size_t max_bits = kDefaultPellBits);

struct TraceResult {
  Int trace;           // Tr(theta^2 / 2) = x^2 + q y^2
  int ord_trace = 0;
  bool mod32_ok = false;
  bool ord_ok = false;
  bool y2_ok = false;
  bool ok() const { return mod32_ok && ord_ok && y2_ok; }
};

TraceResult trace_tests(const Int& q, std::size_t max_bits = kDefaultPellBits);

struct OrdLogEpsilon {
  int via_trace = 0;   // ord2(Tr) + 1 - 2
  int via_local = 0;   // ord_w(log eps) / 2 in Q2(i)
  bool agree = false;
  int value() const { return via_trace; }
};

OrdLogEpsilon ord_log_epsilon(const Int& q, std::size_t max_bits = kDefaultPellBits,
                              int prec = kDefaultPadicPrec);

/// Element of Q(i, sqrt q) on the basis {1, i, sqrt q, i sqrt q}.
using BiquadElem = std::array<Rat, 4>;
BiquadElem bq_mul(const BiquadElem& a, const BiquadElem& b, const Int& q);

struct CMIndexResult {
  bool identity_exact = false;  // i (theta / (1 + i))^2 == theta^2 / 2
  int ord_log_eps = 0;
  int ord_log_xi = 0;           // ord_log_eps - 1
};

CMIndexResult cm_unit_index(const Int& q, std::size_t max_bits = kDefaultPellBits);

}  // namespace iwc
