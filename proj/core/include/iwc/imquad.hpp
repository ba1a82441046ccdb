#pragma once

// Positive definite binary quadratic forms, class groups of imaginary
// quadratic orders, and the 2-part checks built on them.

#include <cstdint>
#include <string>
#include <vector>

#include "iwc/arith.hpp"

namespace iwc {

/// a x^2 + b xy + c y^2 with b^2 - 4ac = D < 0 and a > 0.  Coefficients are
/// 64-bit; intermediate products use 128 bits, which is ample for |D| < 2^40.
struct Form {
  std::int64_t a = 1, b = 1, c = 1;

  std::int64_t disc() const;
  bool is_reduced() const;
  bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const Form& o) const;
  std::string str() const;
};

constexpr std::int64_t kMaxFormDisc = std::int64_t{1} << 40;

Form principal_form(std::int64_t D);
Form inverse(const Form& f);
Form reduce(const Form& f);
Form compose(const Form& f, const Form& g);
Form form_pow(const Form& f, std::int64_t n);
std::int64_t form_order(const Form& f);

/// All reduced primitive forms of discriminant D.
std::vector<Form> reduced_forms(std::int64_t D);
std::int64_t class_number(std::int64_t D);

struct ClassGroupData {
  std::int64_t disc = 0;
  std::int64_t h = 0;
  std::int64_t odd_part = 1;
  std::vector<std::int64_t> two_sylow;  // elementary divisors, ascending

  std::int64_t two_part() const;
  bool two_sylow_cyclic() const { return two_sylow.size() <= 1; }
};

ClassGroupData class_group(std::int64_t D);

/// Order of the class of a prime above 2 in Cl(-q), via the form (2, 1, (1+q)/8).
std::int64_t order_of_prime2_class(std::int64_t q);

/// pi = (u + v sqrt(-q)) / 2 with u^2 + q v^2 = 2^(t+2), u and v odd.
struct PiGenerator {
  Int u, v;
  std::int64_t t = 0;
};

PiGenerator generator_pi(std::int64_t q);

struct CorK1Result {
  std::int64_t q = 0;
  std::int64_t t = 0;
  int residue_mod8 = 0;   // image of pi at the place where it is a unit
  int unit_sign = 0;      // +1 if pi is a unit under sqrt(-q) -> s, -1 under -s
  bool expected_orientation = false;  // pi generates the prime at -s
  bool ok = false;
  std::string detail;
};

CorK1Result check_cor_K1(std::int64_t q);

struct HasseResult {
  std::int64_t q = 0;
  std::int64_t h = 0;
  std::int64_t two_part = 0;
  bool cyclic = false;
  bool ok = false;
};

HasseResult hasse_check(std::int64_t q);

}  // namespace iwc
