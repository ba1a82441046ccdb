#include "iwc/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace iwc {

IntMat hnf_lower(const IntMat& rows_in) {
  if (rows_in.empty()) throw std::invalid_argument("hnf_lower: no rows");
  const std::size_t n = rows_in[0].size();
  IntMat rows = rows_in;
  IntMat H(n, std::vector<Int>(n, 0));
  // Work from the last column down; after column j is processed exactly one
  // remaining row has a nonzero entry there.
  for (std::size_t jj = n; jj-- > 0;) {
    std::size_t piv = SIZE_MAX;
    for (;;) {
      piv = SIZE_MAX;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][jj] == 0) continue;
        if (piv == SIZE_MAX || abs(rows[r][jj]) < abs(rows[piv][jj])) piv = r;
      }
      if (piv == SIZE_MAX) throw std::domain_error("hnf_lower: lattice is not of full rank");
      bool cleared = true;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == piv || rows[r][jj] == 0) continue;
        Int qt;
        mpz_fdiv_q(qt.get_mpz_t(), rows[r][jj].get_mpz_t(), rows[piv][jj].get_mpz_t());
        for (std::size_t k = 0; k <= jj; ++k) rows[r][k] -= qt * rows[piv][k];
        if (rows[r][jj] != 0) cleared = false;
      }
      if (cleared) break;
    }
    std::vector<Int> prow = rows[piv];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(piv));
    if (prow[jj] < 0)
      for (auto& x : prow) x = -x;
    H[jj] = prow;
  }
  // Reduce entries left of each pivot by the rows below in the column order.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j-- > 0;) {
      Int qt;
      mpz_fdiv_q(qt.get_mpz_t(), H[i][j].get_mpz_t(), H[j][j].get_mpz_t());
      if (qt != 0)
        for (std::size_t k = 0; k <= j; ++k) H[i][k] -= qt * H[j][k];
    }
  }
  return H;
}

bool hnf_solve(const IntMat& H, const std::vector<Int>& v_in, std::vector<Int>* c) {
  const std::size_t n = H.size();
  std::vector<Int> v = v_in, out(n, 0);
  for (std::size_t jj = n; jj-- > 0;) {
    if (!mpz_divisible_p(v[jj].get_mpz_t(), H[jj][jj].get_mpz_t())) return false;
    out[jj] = v[jj] / H[jj][jj];
    for (std::size_t k = 0; k <= jj; ++k) v[k] -= out[jj] * H[jj][k];
  }
  if (c) *c = out;
  return true;
}

Int det(const IntMat& m_in) {
  const std::size_t n = m_in.size();
  if (n == 0) return 1;
  IntMat m = m_in;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMat adjugate(const IntMat& m) {
  const std::size_t n = m.size();
  IntMat adj(n, std::vector<Int>(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Int> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(row);
      }
      Int d = det(minor);
      adj[j][i] = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  return adj;
}

namespace {

long double dot(const std::vector<long double>& a, const std::vector<long double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

void lll_reduce(RealMat& b, std::vector<std::vector<std::int64_t>>& U, long double delta) {
  const std::size_t n = b.size();
  U.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
  if (n < 2) return;
  RealMat bs(n);
  std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
  std::vector<long double> B(n);
  auto gso = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      bs[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], bs[j]) / B[j];
        for (std::size_t k = 0; k < bs[i].size(); ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      B[i] = dot(bs[i], bs[i]);
      if (!(B[i] > 0)) throw std::domain_error("lll_reduce: dependent vectors");
    }
  };
  gso();
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 100000) throw std::runtime_error("lll_reduce: no convergence");
    for (std::size_t j = k; j-- > 0;) {
      const long double r = std::nearbyint(mu[k][j]);
      if (r != 0) {
        const auto ri = static_cast<std::int64_t>(r);
        for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[j][t];
        for (std::size_t t = 0; t < n; ++t) U[k][t] -= ri * U[j][t];
        gso();
      }
    }
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(U[k], U[k - 1]);
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

std::size_t fincke_pohst(const RealMat& b, long double bound,
                         const std::function<bool(const std::vector<std::int64_t>&)>& cb,
                         std::size_t max_points) {
  const std::size_t n = b.size();
  // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
  std::vector<std::vector<long double>> q(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = dot(b[i], b[j]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  std::vector<std::int64_t> x(n, 0);
  std::size_t count = 0;
  bool stop = false;
  std::function<void(std::size_t, long double)> rec = [&](std::size_t i, long double rem) {
    long double c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= q[i][j] * static_cast<long double>(x[j]);
    const long double w = std::sqrt(std::max<long double>(rem, 0) / q[i][i]);
    const auto lo = static_cast<std::int64_t>(std::ceil(c - w - 1e-12L));
    const auto hi = static_cast<std::int64_t>(std::floor(c + w + 1e-12L));
    for (std::int64_t v = lo; v <= hi && !stop; ++v) {
      x[i] = v;
      const long double t = static_cast<long double>(v) - c;
      const long double r2 = rem - q[i][i] * t * t;
      if (r2 < -1e-12L * bound) continue;
      if (i == 0) {
        bool nonzero = false;
        for (auto xv : x) nonzero |= (xv != 0);
        if (!nonzero) continue;
        if (++count > max_points) throw BudgetExceeded("fincke_pohst: point budget exceeded");
        if (!cb(x)) stop = true;
      } else {
        rec(i - 1, r2);
      }
    }
    x[i] = 0;
  };
  rec(n - 1, bound);
  return count;
}

}  // namespace iwc
