#pragma once

// Small-dimension lattice tools: exact HNF / determinants / adjugates over
// Z, and floating LLL plus Fincke-Pohst enumeration for short vectors.

#include <cstdint>
#include <functional>
#include <vector>

#include "iwc/arith.hpp"

namespace iwc {

using IntMat = std::vector<std::vector<Int>>;
using RealMat = std::vector<std::vector<long double>>;

/// Lower-triangular row HNF of the lattice spanned by `rows` (full rank in
/// dimension n = row length): row i is zero beyond column i, pivots are
/// positive, entries left of a pivot are reduced into [0, pivot).
IntMat hnf_lower(const IntMat& rows);

/// Coordinates c with v = c * H for a lower-triangular HNF H, if integral.
bool hnf_solve(const IntMat& H, const std::vector<Int>& v, std::vector<Int>* c = nullptr);

Int det(const IntMat& m);       // Bareiss
IntMat adjugate(const IntMat& m);

/// LLL (delta = 0.99) on real row vectors.  U receives the integer
/// transform: reduced = U * original.
void lll_reduce(RealMat& b, std::vector<std::vector<std::int64_t>>& U, long double delta = 0.99L);

/// Visit every nonzero x in Z^n with |sum x_i b_i|^2 <= bound.  Both x and -x
/// are visited.  The callback returns false to stop early.  Returns the
/// number of points visited; throws BudgetExceeded past `max_points`.
std::size_t fincke_pohst(const RealMat& b, long double bound,
                         const std::function<bool(const std::vector<std::int64_t>&)>& cb,
                         std::size_t max_points = SIZE_MAX);

}  // namespace iwc
