#pragma once

// Exact integer/rational arithmetic and the elementary number theory that
// every other module leans on.  Int and Rat are GMP values; everything here
// is pure and safe to call concurrently.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace iwc {

using Int = mpz_class;
using Rat = mpq_class;

/// A configured search budget (bit size, radius, ...) ran out.  Sweeps
/// report the affected q as skipped rather than failed.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Build a canonical rational num/den (den != 0).
Rat make_rat(const Int& num, const Int& den);

std::int64_t to_i64(const Int& n);  // throws std::overflow_error
std::string to_dec(const Int& n);
Int pow2(int n);  // n >= 0

/// Primality.  Deterministic Miller-Rabin below 3.3e14 (fixed witness set
/// {2,3,5,7,11,13,17}); above that, 64 random-base rounds (error < 2^-128).
bool is_prime(const Int& n);
bool is_prime(std::uint64_t n);

/// Ascending primes p in [lo, hi] with p = a mod m.  Requires 0 <= a < m.
std::vector<std::int64_t> primes_in_class(std::int64_t lo, std::int64_t hi,
                                          std::int64_t a, std::int64_t m);

/// Exponent of the prime p in the nonzero rational n.
int ord_p(const Rat& n, const Int& p);
int ord_p(const Int& n, const Int& p);

/// Jacobi symbol (a/n) for odd positive n.
int jacobi(const Int& a, const Int& n);

/// Kronecker symbol (D/n) for a discriminant D and n >= 1.
int kronecker(const Int& d, const Int& n);

/// Square roots of a modulo m: every r in [0, m) with r^2 = a mod m.
/// m is factored by trial division; a cofactor that is neither 1 nor prime
/// raises std::domain_error (general factorisation is out of scope).
std::vector<Int> sqrt_mod(const Int& a, const Int& m);

/// All solutions x, y > 0 of x^2 + d y^2 = m (primitive and imprimitive).
std::vector<std::pair<Int, Int>> cornacchia_all(const Int& d, const Int& m);

/// Only the solutions with gcd(x, y) = 1.
std::vector<std::pair<Int, Int>> cornacchia_coprime(const Int& d, const Int& m);

/// The solution of x^2 + d y^2 = m with x, y > 0 and minimal x, if any.
std::optional<std::pair<Int, Int>> cornacchia(const Int& d, const Int& m);

bool is_square(const Int& n, Int* root = nullptr);

}  // namespace iwc
