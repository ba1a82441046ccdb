#include "iwc/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace iwc {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::int64_t to_i64(const Int& n) {
  if (!mpz_fits_slong_p(n.get_mpz_t())) throw std::overflow_error("to_i64: value exceeds 64 bits");
  return static_cast<std::int64_t>(n.get_si());
}

Int pow2(int n) {
  if (n < 0) throw std::invalid_argument("pow2: negative exponent");
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return r;
}

std::string to_dec(const Int& n) { return n.get_str(10); }

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool mr_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

constexpr std::uint64_t kDeterministicLimit = 330'000'000'000'000ULL;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // {2..17} is deterministic up to 341550071728321 > 3.3e14.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL})
    if (mr_witness(n, a, d, s)) return false;
  if (n < kDeterministicLimit) return true;
  // Beyond the deterministic range fall back to the GMP test.
  Int big;
  mpz_import(big.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return mpz_probab_prime_p(big.get_mpz_t(), 64) != 0;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

std::vector<std::int64_t> primes_in_class(std::int64_t lo, std::int64_t hi, std::int64_t a,
                                          std::int64_t m) {
  if (m <= 0 || a < 0 || a >= m) throw std::invalid_argument("primes_in_class: need 0 <= a < m");
  std::vector<std::int64_t> out;
  lo = std::max<std::int64_t>(lo, 2);
  if (hi < lo) return out;
  // Segmented sieve; the ranges we sweep are small enough for one segment
  // of base primes up to sqrt(hi).
  const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(hi))) + 1;
  std::vector<char> base(static_cast<std::size_t>(root + 1), 1);
  std::vector<std::int64_t> small;
  for (std::int64_t i = 2; i <= root; ++i) {
    if (!base[static_cast<std::size_t>(i)]) continue;
    small.push_back(i);
    for (std::int64_t j = i * i; j <= root; j += i) base[static_cast<std::size_t>(j)] = 0;
  }
  constexpr std::int64_t kSegment = 1 << 20;
  for (std::int64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
    const std::int64_t seg_hi = std::min(hi, seg_lo + kSegment - 1);
    std::vector<char> mark(static_cast<std::size_t>(seg_hi - seg_lo + 1), 1);
    for (std::int64_t p : small) {
      if (p * p > seg_hi) break;
      std::int64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
      for (std::int64_t j = start; j <= seg_hi; j += p) mark[static_cast<std::size_t>(j - seg_lo)] = 0;
    }
    for (std::int64_t v = seg_lo; v <= seg_hi; ++v)
      if (mark[static_cast<std::size_t>(v - seg_lo)] && v % m == a) out.push_back(v);
  }
  return out;
}

int ord_p(const Int& n, const Int& p) {
  if (n == 0) throw std::domain_error("ord_p: valuation of zero is infinite");
  if (p < 2) throw std::invalid_argument("ord_p: p must be prime");
  if (p == 2) return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
  Int t = n;
  int v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

int ord_p(const Rat& n, const Int& p) {
  if (n == 0) throw std::domain_error("ord_p: valuation of zero is infinite");
  return ord_p(Int(n.get_num()), p) - ord_p(Int(n.get_den()), p);
}

int jacobi(const Int& a, const Int& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t())) throw std::invalid_argument("jacobi: n must be odd positive");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker(const Int& d, const Int& n) {
  if (n <= 0) throw std::invalid_argument("kronecker: n must be positive");
  return mpz_kronecker(d.get_mpz_t(), n.get_mpz_t());
}

bool is_square(const Int& n, Int* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
  return true;
}

namespace {

// Tonelli-Shanks for an odd prime p, a a quadratic residue.
Int sqrt_mod_prime(const Int& a_in, const Int& p) {
  Int a = a_in % p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) throw std::domain_error("sqrt_mod_prime: non-residue");
  Int q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++s;
  }
  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Int m_exp;
  Int c, t, r, b;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  Int e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

// All roots of x^2 = a mod p^e (p odd) or 2^e, by brute lifting of the
// root set.  Sizes here are tiny (a handful of roots).
std::vector<Int> sqrt_mod_prime_power(const Int& a, const Int& p, unsigned e) {
  Int pe;
  mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
  Int ar = a % pe;
  if (ar < 0) ar += pe;
  std::set<Int> roots;
  if (p == 2) {
    if (mpz_odd_p(ar.get_mpz_t())) {
      // Odd residues: roots exist iff a = 1 mod min(2^e, 8); then they are
      // +-s and +-s + 2^(e-1) for one lifted root s.
      if (e >= 3 && ar % 8 != 1) return {};
      if (e == 2 && ar % 4 != 1) return {};
      Int s = 1;
      for (unsigned i = 3; i < e; ++i) {
        Int m2;
        mpz_ui_pow_ui(m2.get_mpz_t(), 2, i + 1);
        Int diff = s * s - ar;
        if (!mpz_divisible_p(diff.get_mpz_t(), m2.get_mpz_t())) {
          Int step;
          mpz_ui_pow_ui(step.get_mpz_t(), 2, i - 1);
          s += step;
        }
      }
      Int half = pe / 2;
      for (const Int& r : {Int(s), Int(pe - s), Int(s + half), Int(pe - s + half)}) {
        Int rr = r % pe;
        if (rr < 0) rr += pe;
        Int diff = rr * rr - ar;
        if (mpz_divisible_p(diff.get_mpz_t(), pe.get_mpz_t())) roots.insert(rr);
      }
    } else {
      // Even residue: lift through moduli 2, 4, ..., 2^e keeping every class.
      std::vector<Int> cur;
      for (const Int& r : {Int(0), Int(1)})
        if ((r * r - ar) % 2 == 0) cur.push_back(r);
      Int mod = 2;
      for (unsigned k = 2; k <= e; ++k) {
        Int next_mod = mod * 2;
        std::vector<Int> nxt;
        for (const Int& r : cur)
          for (const Int& cand : {Int(r), Int(r + mod)}) {
            Int diff = cand * cand - ar;
            if (mpz_divisible_p(diff.get_mpz_t(), next_mod.get_mpz_t())) nxt.push_back(cand);
          }
        std::sort(nxt.begin(), nxt.end());
        nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
        if (nxt.size() > 4096) throw std::domain_error("sqrt_mod: too many roots modulo 2^e");
        cur = std::move(nxt);
        mod = next_mod;
      }
      for (const Int& r : cur) roots.insert(r % pe);
    }
  } else {
    Int ap = ar % p;
    if (ap == 0) {
      // Only needed for completeness; brute-force the (small) p-divisible case.
      if (!mpz_fits_ulong_p(pe.get_mpz_t()) || pe > 1'000'000)
        throw std::domain_error("sqrt_mod: non-coprime residue modulo large prime power");
      for (unsigned long x = 0; x < pe.get_ui(); ++x) {
        Int xx = Int(x) * x - ar;
        if (mpz_divisible_p(xx.get_mpz_t(), pe.get_mpz_t())) roots.insert(Int(x));
      }
    } else {
      if (mpz_legendre(ap.get_mpz_t(), p.get_mpz_t()) != 1) return {};
      Int r = sqrt_mod_prime(ap, p);
      Int mod = p;
      for (unsigned k = 2; k <= e; ++k) {
        // Newton step: r <- r - (r^2 - a) / (2r) mod p^k
        Int next_mod = mod * p;
        Int inv;
        Int two_r = 2 * r;
        mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), next_mod.get_mpz_t());
        r = (r - (r * r - ar) * inv) % next_mod;
        if (r < 0) r += next_mod;
        mod = next_mod;
      }
      roots.insert(r);
      roots.insert((pe - r) % pe);
    }
  }
  return {roots.begin(), roots.end()};
}

std::vector<std::pair<Int, unsigned>> factor_trial(Int m) {
  std::vector<std::pair<Int, unsigned>> f;
  auto take = [&](const Int& p) {
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e) f.emplace_back(p, e);
  };
  take(2);
  for (unsigned long p = 3; p <= 1'000'000 && Int(p) * p <= m; p += 2) take(Int(p));
  if (m > 1) {
    if (!is_prime(m)) throw std::domain_error("sqrt_mod: modulus has a large composite cofactor");
    f.emplace_back(m, 1);
  }
  return f;
}

}  // namespace

std::vector<Int> sqrt_mod(const Int& a, const Int& m) {
  if (m <= 0) throw std::invalid_argument("sqrt_mod: modulus must be positive");
  if (m == 1) return {0};
  std::vector<Int> acc{0};
  Int acc_mod = 1;
  for (const auto& [p, e] : factor_trial(m)) {
    auto local = sqrt_mod_prime_power(a, p, e);
    if (local.empty()) return {};
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    std::vector<Int> next;
    Int inv;
    mpz_invert(inv.get_mpz_t(), acc_mod.get_mpz_t(), pe.get_mpz_t());
    for (const Int& x : acc)
      for (const Int& y : local) {
        // CRT: z = x mod acc_mod, z = y mod pe
        Int t = ((y - x) % pe) * inv % pe;
        if (t < 0) t += pe;
        next.push_back(x + acc_mod * t);
      }
    acc = std::move(next);
    acc_mod *= pe;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

namespace {

// Primitive solutions (gcd(x, y) = 1) of x^2 + d y^2 = m, x, y > 0.
void cornacchia_primitive(const Int& d, const Int& m, const Int& scale,
                          std::set<std::pair<Int, Int>>& sols) {
  Int gg;
  mpz_gcd(gg.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
  if (m < 1 + d) return;  // y > 0 forces m >= 1 + d
  if (gg != 1) {
    // the descent needs gcd(d, m) = 1; scan y directly instead
    Int ymax;
    mpz_sqrt(ymax.get_mpz_t(), Int(m / d).get_mpz_t());
    if (ymax > 10'000'000) throw std::domain_error("cornacchia: gcd(d, m) > 1 and m too large to scan");
    for (Int y = 1; y <= ymax; ++y) {
      Int x;
      if (!is_square(Int(m - d * y * y), &x) || x == 0) continue;
      Int gx;
      mpz_gcd(gx.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      if (gx == 1) sols.emplace(x * scale, y * scale);
    }
    return;
  }
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), m.get_mpz_t());
  const Int md = -d;
  for (const Int& r : sqrt_mod(md, m)) {
    Int a = m, b = r;
    while (b > bound) {
      Int t = a % b;
      a = b;
      b = t;
    }
    Int rest = m - b * b;
    if (rest <= 0 || b == 0 || !mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) continue;
    Int y;
    if (!is_square(rest / d, &y) || y == 0) continue;
    Int gx;
    mpz_gcd(gx.get_mpz_t(), b.get_mpz_t(), y.get_mpz_t());
    if (gx != 1) continue;
    sols.emplace(b * scale, y * scale);
    if (d == 1) sols.emplace(y * scale, b * scale);  // x and y trade places
  }
}

}  // namespace

std::vector<std::pair<Int, Int>> cornacchia_all(const Int& d, const Int& m) {
  if (d <= 0 || m <= 0) throw std::invalid_argument("cornacchia: need d > 0 and m > 0");
  std::set<std::pair<Int, Int>> sols;
  // Imprimitive solutions come from primitive ones for m / g^2, g^2 | m.
  std::vector<Int> gs{1};
  for (const auto& [p, e] : factor_trial(m)) {
    std::vector<Int> more;
    for (const Int& g : gs) {
      Int pk = 1;
      for (unsigned k = 1; 2 * k <= e; ++k) {
        pk *= p;
        more.push_back(g * pk);
      }
    }
    gs.insert(gs.end(), more.begin(), more.end());
  }
  for (const Int& g : gs) cornacchia_primitive(d, m / (g * g), g, sols);
  return {sols.begin(), sols.end()};
}

std::vector<std::pair<Int, Int>> cornacchia_coprime(const Int& d, const Int& m) {
  if (d <= 0 || m <= 0) throw std::invalid_argument("cornacchia: need d > 0 and m > 0");
  std::set<std::pair<Int, Int>> sols;
  cornacchia_primitive(d, m, 1, sols);
  return {sols.begin(), sols.end()};
}

std::optional<std::pair<Int, Int>> cornacchia(const Int& d, const Int& m) {
  auto all = cornacchia_all(d, m);
  if (all.empty()) return std::nullopt;
  return all.front();  // set ordering puts the minimal x first
}

}  // namespace iwc
