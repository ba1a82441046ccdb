#include "iwc/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iwc {

// ---- polynomial arithmetic mod x^4 + q --------------------------------------

PowVec poly_mul(const PowVec& a, const PowVec& b, const Int& q) {
  std::array<Rat, 7> t;
  for (auto& x : t) x = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i + j] += a[i] * b[j];
  PowVec r;
  for (int k = 0; k < 4; ++k) r[k] = t[k];
  for (int k = 4; k < 7; ++k) r[k - 4] -= t[k] * Rat(q);
  return r;
}

std::array<Rat, 4> charpoly(const PowVec& a, const Int& q) {
  // Faddeev-LeVerrier on the multiplication matrix (row k = alpha^k * a).
  using Mat = std::array<std::array<Rat, 4>, 4>;
  Mat A;
  PowVec xk{Rat(1), Rat(0), Rat(0), Rat(0)};
  const PowVec alpha{Rat(0), Rat(1), Rat(0), Rat(0)};
  for (int k = 0; k < 4; ++k) {
    A[k] = poly_mul(xk, a, q);
    xk = poly_mul(xk, alpha, q);
  }
  Mat M{};
  for (auto& row : M)
    for (auto& x : row) x = 0;
  std::array<Rat, 5> c;
  c[4] = 1;
  for (int k = 1; k <= 4; ++k) {
    Mat AM{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rat s = 0;
        for (int l = 0; l < 4; ++l) s += A[i][l] * M[l][j];
        AM[i][j] = s;
      }
    for (int i = 0; i < 4; ++i) AM[i][i] += c[5 - k];
    M = AM;
    Rat tr = 0;
    for (int i = 0; i < 4; ++i)
      for (int l = 0; l < 4; ++l) tr += A[i][l] * M[l][i];
    c[4 - k] = -tr / Rat(k);
  }
  return {c[0], c[1], c[2], c[3]};
}

bool is_integral(const PowVec& a, const Int& q) {
  for (const Rat& c : charpoly(a, q))
    if (c.get_den() != 1) return false;
  return true;
}

// ---- maximal order ----------------------------------------------------------

namespace {

using RatMat = std::array<PowVec, 4>;

RatMat lower_inverse(const RatMat& B) {
  RatMat inv;
  for (auto& r : inv)
    for (auto& x : r) x = 0;
  // x = c B with B lower triangular: solve row by row for each unit vector.
  for (int k = 0; k < 4; ++k) {
    PowVec v{Rat(0), Rat(0), Rat(0), Rat(0)};
    v[k] = 1;
    PowVec c{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (int j = 3; j >= 0; --j) {
      c[j] = v[j] / B[j][j];
      for (int l = 0; l <= j; ++l) v[l] -= c[j] * B[j][l];
    }
    inv[k] = c;
  }
  return inv;
}

RatMat enlarge(const RatMat& B, const PowVec& y) {
  Int D = 1;
  auto upd = [&](const Rat& r) { mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), r.get_den_mpz_t()); };
  for (const auto& row : B)
    for (const auto& x : row) upd(x);
  for (const auto& x : y) upd(x);
  IntMat rows;
  auto push = [&](const PowVec& v) {
    std::vector<Int> r(4);
    for (int k = 0; k < 4; ++k) {
      Rat t = v[k] * Rat(D);
      r[k] = t.get_num();
    }
    rows.push_back(r);
  };
  for (const auto& row : B) push(row);
  push(y);
  const IntMat H = hnf_lower(rows);
  RatMat out;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out[i][k] = make_rat(H[i][k], D);
  return out;
}

PowVec combo(const RatMat& B, const std::array<Rat, 4>& c) {
  PowVec r{Rat(0), Rat(0), Rat(0), Rat(0)};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) r[k] += c[i] * B[i][k];
  return r;
}

}  // namespace

QuarticField maximal_order(const Int& q) {
  if (q <= 0 || q % 8 != 7 || !is_prime(q)) throw std::invalid_argument("maximal_order: q must be a prime = 7 mod 8");
  RatMat B;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) B[i][k] = (i == k) ? 1 : 0;
  const RatMat cand{PowVec{Rat(1), Rat(0), Rat(0), Rat(0)}, PowVec{Rat(0), Rat(1), Rat(0), Rat(0)},
                    PowVec{Rat(-1, 2), Rat(0), Rat(1, 2), Rat(0)},
                    PowVec{Rat(-1, 4), Rat(1, 4), Rat(-1, 4), Rat(1, 4)}};
  if (std::all_of(cand.begin(), cand.end(), [&](const PowVec& v) { return is_integral(v, q); }))
    B = cand;
  // x^4 + q is Eisenstein at q, so only 2 can divide the index.  O is
  // 2-maximal iff no (sum of a subset of the basis)/2 outside O is integral.
  for (bool grew = true; grew;) {
    grew = false;
    for (int mask = 1; mask < 16 && !grew; ++mask) {
      std::array<Rat, 4> c;
      for (int i = 0; i < 4; ++i) c[i] = (mask >> i & 1) ? Rat(1, 2) : Rat(0);
      const PowVec y = combo(B, c);
      if (is_integral(y, q)) {
        B = enlarge(B, y);
        grew = true;
      }
    }
  }
  QuarticField F;
  F.q = q;
  F.basis = B;
  F.inv_basis = lower_inverse(B);
  Rat detB = 1;
  for (int i = 0; i < 4; ++i) detB *= B[i][i];
  if (detB.get_num() != 1) throw std::logic_error("maximal_order: unexpected basis determinant");
  F.index = detB.get_den();
  F.disc = Int(256) * q * q * q / (F.index * F.index);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const QuarticElem e = from_power(F, poly_mul(B[i], B[j], q));
      for (int k = 0; k < 4; ++k) {
        if (e.c[k].get_den() != 1) throw std::logic_error("maximal_order: basis not closed under products");
        F.table[i][j][k] = e.c[k].get_num();
      }
    }
  return F;
}

// ---- element arithmetic -----------------------------------------------------

PowVec to_power(const QuarticField& F, const QuarticElem& x) {
  return combo(F.basis, x.c);
}

QuarticElem from_power(const QuarticField& F, const PowVec& x) {
  return QuarticElem{combo(F.inv_basis, x)};
}

OVec omul(const QuarticField& F, const OVec& a, const OVec& b) {
  OVec r{Int(0), Int(0), Int(0), Int(0)};
  for (int i = 0; i < 4; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (b[j] == 0) continue;
      const Int ab = a[i] * b[j];
      for (int k = 0; k < 4; ++k)
        if (F.table[i][j][k] != 0) r[k] += ab * F.table[i][j][k];
    }
  }
  return r;
}

QuarticElem qmul(const QuarticField& F, const QuarticElem& a, const QuarticElem& b) {
  QuarticElem r{{Rat(0), Rat(0), Rat(0), Rat(0)}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Rat ab = a.c[i] * b.c[j];
      if (ab == 0) continue;
      for (int k = 0; k < 4; ++k) r.c[k] += ab * Rat(F.table[i][j][k]);
    }
  return r;
}

IntMat mult_matrix(const QuarticField& F, const OVec& x) {
  IntMat M(4, std::vector<Int>(4));
  for (int i = 0; i < 4; ++i) {
    OVec e{Int(0), Int(0), Int(0), Int(0)};
    e[i] = 1;
    const OVec r = omul(F, e, x);
    for (int k = 0; k < 4; ++k) M[i][k] = r[k];
  }
  return M;
}

Int onorm(const QuarticField& F, const OVec& x) { return det(mult_matrix(F, x)); }

Rat qnorm(const QuarticField& F, const QuarticElem& x) { return charpoly(to_power(F, x), F.q)[0]; }

Rat qtrace(const QuarticField& F, const QuarticElem& x) { return -charpoly(to_power(F, x), F.q)[3]; }

bool is_integral_elem(const QuarticField& F, const QuarticElem& x) {
  return std::all_of(x.c.begin(), x.c.end(), [](const Rat& r) { return r.get_den() == 1; }) ||
         is_integral(to_power(F, x), F.q);
}

// ---- unit group shape -------------------------------------------------------

namespace {

// Field holding the roots of x^4 + q with r^2 = sign * s.
LocalField field_for_sign(const Int& q, int sign, int prec) {
  const Z2Elem s = hensel_sqrt(Z2Elem::from_int(-q, prec));
  const Z2Elem t = sign > 0 ? s : -s;
  switch (to_i64(t.residue(3))) {
    case 1: return LocalField::rational();
    case 5: return LocalField::unramified();
    case 3: return LocalField::ramified(3);
    case 7: return LocalField::ramified(-1);
    default: throw std::logic_error("field_for_sign: s is not a unit");
  }
}

bool has_sqrt(const LocalField& L, int d) {
  // Does L contain sqrt(d) for d = -1 or -3?
  if (d == -3) return L.kind == LocalKind::Unramified;
  return L.kind == LocalKind::Ramified && L.d == d;
}

}  // namespace

UnitRankTorsion unit_rank_and_torsion(const QuarticField& F) {
  UnitRankTorsion out;
  // Totally complex quartic: r1 = 0, r2 = 2, rank 1.  A root of unity other
  // than +-1 would put sqrt(-1) or sqrt(-3) in F (zeta_5 only generates the
  // field of discriminant 125).  Both are ruled out by one 2-adic completion.
  const LocalField Lw = field_for_sign(F.q, -1, 32);
  const LocalField Ls = field_for_sign(F.q, 1, 32);
  out.i_outside_Fw = !has_sqrt(Lw, -1);
  bool ruled_out = false;
  for (const LocalField& L : {Lw, Ls})
    if (!has_sqrt(L, -1) && !has_sqrt(L, -3)) ruled_out = true;
  if (!ruled_out || F.disc == 125) throw std::logic_error("unit_rank_and_torsion: torsion not decided");
  return out;
}

// ---- embeddings -------------------------------------------------------------

namespace {

// sigma_1(alpha) = q^(1/4) e^(i pi/4), sigma_2(alpha) = -sigma_1(alpha).
struct MpEmb {
  mpfr_prec_t prec;
  std::array<Mpfr, 4> re1, im1, re2, im2;  // images of omega_i
  explicit MpEmb(const QuarticField& F, mpfr_prec_t p)
      : prec(p),
        re1{Mpfr(p), Mpfr(p), Mpfr(p), Mpfr(p)},
        im1{Mpfr(p), Mpfr(p), Mpfr(p), Mpfr(p)},
        re2{Mpfr(p), Mpfr(p), Mpfr(p), Mpfr(p)},
        im2{Mpfr(p), Mpfr(p), Mpfr(p), Mpfr(p)} {
    const mpfr_prec_t w = p + 32;
    Mpfr r(w), pi(w), ang(w), c(w), s(w), t(w);
    mpfr_set_z(r.get(), F.q.get_mpz_t(), MPFR_RNDN);
    mpfr_rootn_ui(r.get(), r.get(), 4, MPFR_RNDN);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    std::array<Mpfr, 4> pr{Mpfr(w), Mpfr(w), Mpfr(w), Mpfr(w)}, pim{Mpfr(w), Mpfr(w), Mpfr(w), Mpfr(w)};
    for (int k = 0; k < 4; ++k) {
      mpfr_mul_ui(ang.get(), pi.get(), static_cast<unsigned long>(k), MPFR_RNDN);
      mpfr_div_ui(ang.get(), ang.get(), 4, MPFR_RNDN);
      mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
      mpfr_pow_ui(t.get(), r.get(), static_cast<unsigned long>(k), MPFR_RNDN);
      mpfr_mul(pr[k].get(), t.get(), c.get(), MPFR_RNDN);
      mpfr_mul(pim[k].get(), t.get(), s.get(), MPFR_RNDN);
    }
    Mpfr acc_r(w), acc_i(w), acc_r2(w), acc_i2(w), term(w);
    for (int i = 0; i < 4; ++i) {
      mpfr_set_zero(acc_r.get(), 1);
      mpfr_set_zero(acc_i.get(), 1);
      mpfr_set_zero(acc_r2.get(), 1);
      mpfr_set_zero(acc_i2.get(), 1);
      for (int k = 0; k < 4; ++k) {
        const Rat& b = F.basis[i][k];
        if (b == 0) continue;
        for (int part = 0; part < 2; ++part) {
          mpfr_mul_q(term.get(), (part ? pim[k] : pr[k]).get(), b.get_mpq_t(), MPFR_RNDN);
          mpfr_add(part ? acc_i.get() : acc_r.get(), part ? acc_i.get() : acc_r.get(), term.get(), MPFR_RNDN);
          if (k % 2) mpfr_neg(term.get(), term.get(), MPFR_RNDN);
          mpfr_add(part ? acc_i2.get() : acc_r2.get(), part ? acc_i2.get() : acc_r2.get(), term.get(), MPFR_RNDN);
        }
      }
      mpfr_set(re1[i].get(), acc_r.get(), MPFR_RNDN);
      mpfr_set(im1[i].get(), acc_i.get(), MPFR_RNDN);
      mpfr_set(re2[i].get(), acc_r2.get(), MPFR_RNDN);
      mpfr_set(im2[i].get(), acc_i2.get(), MPFR_RNDN);
    }
  }

  // |sigma_j(v)|^2 for an integral coordinate vector v.
  void abs2(const OVec& v, Mpfr& s1, Mpfr& s2) const {
    Mpfr a(prec), b(prec), c(prec), d(prec), t(prec);
    for (Mpfr* m : {&a, &b, &c, &d}) mpfr_set_zero(m->get(), 1);
    for (int i = 0; i < 4; ++i) {
      if (v[i] == 0) continue;
      mpfr_mul_z(t.get(), re1[i].get(), v[i].get_mpz_t(), MPFR_RNDN);
      mpfr_add(a.get(), a.get(), t.get(), MPFR_RNDN);
      mpfr_mul_z(t.get(), im1[i].get(), v[i].get_mpz_t(), MPFR_RNDN);
      mpfr_add(b.get(), b.get(), t.get(), MPFR_RNDN);
      mpfr_mul_z(t.get(), re2[i].get(), v[i].get_mpz_t(), MPFR_RNDN);
      mpfr_add(c.get(), c.get(), t.get(), MPFR_RNDN);
      mpfr_mul_z(t.get(), im2[i].get(), v[i].get_mpz_t(), MPFR_RNDN);
      mpfr_add(d.get(), d.get(), t.get(), MPFR_RNDN);
    }
    mpfr_sqr(s1.get(), a.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), b.get(), MPFR_RNDN);
    mpfr_add(s1.get(), s1.get(), t.get(), MPFR_RNDN);
    mpfr_sqr(s2.get(), c.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), d.get(), MPFR_RNDN);
    mpfr_add(s2.get(), s2.get(), t.get(), MPFR_RNDN);
  }
};

// Long double images (re1, im1, re2, im2) of omega_i.
std::array<std::array<long double, 4>, 4> ld_embeddings(const MpEmb& E) {
  std::array<std::array<long double, 4>, 4> out{};
  for (int i = 0; i < 4; ++i) {
    out[i][0] = mpfr_get_ld(E.re1[i].get(), MPFR_RNDN);
    out[i][1] = mpfr_get_ld(E.im1[i].get(), MPFR_RNDN);
    out[i][2] = mpfr_get_ld(E.re2[i].get(), MPFR_RNDN);
    out[i][3] = mpfr_get_ld(E.im2[i].get(), MPFR_RNDN);
  }
  return out;
}

std::size_t max_bits(const QuarticElem& x) {
  std::size_t b = 1;
  for (const Rat& c : x.c) {
    b = std::max(b, mpz_sizeinbase(c.get_num_mpz_t(), 2));
    b = std::max(b, mpz_sizeinbase(c.get_den_mpz_t(), 2));
  }
  return b;
}

// -1, 0, 1 comparing a and b, treating |a - b| <= 2^-tol * max(|a|,|b|) as equal.
int fuzzy_cmp(const Mpfr& a, const Mpfr& b, long tol) {
  Mpfr diff(a.prec()), m(a.prec());
  mpfr_sub(diff.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_abs(m.get(), a.get(), MPFR_RNDN);
  mpfr_mul_2si(m.get(), m.get(), -tol, MPFR_RNDN);
  Mpfr ad(a.prec());
  mpfr_abs(ad.get(), diff.get(), MPFR_RNDN);
  if (mpfr_lessequal_p(ad.get(), m.get())) return 0;
  return mpfr_sgn(diff.get()) < 0 ? -1 : 1;
}

OVec to_ovec(const std::vector<Int>& v) { return {v[0], v[1], v[2], v[3]}; }

bool is_identity(const IntMat& H) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (H[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

// Walk the chain of relative minima of O until the ideal returns to O.
// State: b = mu^-1 O = (1/d) L with 1 a minimum of b.
UnitCert unit_by_minima(const QuarticField& F, const UnitSearchConfig& cfg) {
  const MpEmb E(F, cfg.float_prec);
  const auto emb = ld_embeddings(E);
  const long tol = static_cast<long>(cfg.float_prec) - 56;
  // Minkowski covolume of O in R^4 = C^2.
  const long double covol_O = std::pow(static_cast<long double>(F.q.get_d()), 1.5L) / 2;

  IntMat L(4, std::vector<Int>(4, 0));
  for (int i = 0; i < 4; ++i) L[i][i] = 1;
  Int d = 1;
  OVec mu{Int(1), Int(0), Int(0), Int(0)};
  Int norm_mu = 1;
  double max_radius = 0;
  std::size_t steps = 0;
  Mpfr s1(cfg.float_prec), s2(cfg.float_prec), d2(cfg.float_prec), lim1(cfg.float_prec);
  Mpfr best1(cfg.float_prec), best2(cfg.float_prec);

  for (;;) {
    if (++steps > cfg.max_steps) throw BudgetExceeded("find_fundamental_unit: step budget exceeded");
    const long double dd = static_cast<long double>(d.get_d());
    long double detL = 1;
    for (int i = 0; i < 4; ++i) detL *= static_cast<long double>(L[i][i].get_d());
    const long double covol = covol_O * detL / (dd * dd * dd * dd);
    long double R = 4 * std::sqrt(covol) / static_cast<long double>(M_PI);
    mpfr_set_z(d2.get(), d.get_mpz_t(), MPFR_RNDN);
    mpfr_sqr(d2.get(), d2.get(), MPFR_RNDN);

    bool found = false;
    OVec best;
    std::vector<OVec> ties;
    for (int attempt = 0; !found; ++attempt) {
      if (attempt > 200) throw BudgetExceeded("find_fundamental_unit: box radius diverged");
      RealMat b(4, std::vector<long double>(4, 0));
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
          long double v = 0;
          for (int j = 0; j <= i; ++j) v += static_cast<long double>(L[i][j].get_d()) * emb[j][k];
          b[i][k] = v / dd / (k < 2 ? R : 1);
        }
      std::vector<std::vector<std::int64_t>> U;
      lll_reduce(b, U);
      // |sigma_1| <= R, |sigma_2| < 1 lies inside Q = |s1|^2/R^2 + |s2|^2 <= 2.
      mpfr_set_ld(lim1.get(), R * R, MPFR_RNDN);
      mpfr_mul(lim1.get(), lim1.get(), d2.get(), MPFR_RNDN);
      fincke_pohst(
          b, 2.0L * (1 + 1e-9L),
          [&](const std::vector<std::int64_t>& x) {
            std::vector<Int> c(4, 0);
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j)
                if (x[i] != 0 && U[i][j] != 0) c[j] += Int(static_cast<long>(x[i])) * Int(static_cast<long>(U[i][j]));
            OVec v{Int(0), Int(0), Int(0), Int(0)};
            for (int i = 0; i < 4; ++i)
              if (c[i] != 0)
                for (int k = 0; k <= i; ++k) v[k] += c[i] * L[i][k];
            E.abs2(v, s1, s2);
            if (!mpfr_less_p(s2.get(), d2.get()) || mpfr_greater_p(s1.get(), lim1.get())) return true;
            if (fuzzy_cmp(s2, d2, tol) == 0)
              throw PrecisionError("find_fundamental_unit: |sigma_2| too close to the bound");
            if (!found) {
              found = true;
              best = v;
              mpfr_set(best1.get(), s1.get(), MPFR_RNDN);
              mpfr_set(best2.get(), s2.get(), MPFR_RNDN);
              return true;
            }
            const int c1 = fuzzy_cmp(s1, best1, tol);
            const int better = c1 != 0 ? c1 : fuzzy_cmp(s2, best2, tol);
            if (better == 0) {
              // Same absolute values: the quotient has modulus 1 everywhere.
              // Both are minima at this height; keep them all.
              auto same = [&](const OVec& w) {
                return v == w || v == OVec{Int(-w[0]), Int(-w[1]), Int(-w[2]), Int(-w[3])};
              };
              if (!same(best) && std::none_of(ties.begin(), ties.end(), same)) ties.push_back(v);
            } else if (better < 0) {
              best = v;
              ties.clear();
              mpfr_set(best1.get(), s1.get(), MPFR_RNDN);
              mpfr_set(best2.get(), s2.get(), MPFR_RNDN);
            }
            return true;
          },
          cfg.max_points);
      max_radius = std::max(max_radius, static_cast<double>(R));
      if (!found) R *= 2;
    }

    // A tied minimum may close the period even when `best` does not.
    const Int d4 = d * d * d * d;
    for (const OVec& t : ties)
      if (norm_mu * onorm(F, t) == d4) {
        best = t;
        break;
      }
    // b' = nu^-1 b with nu = best / d.
    const IntMat M = mult_matrix(F, best);
    const Int N = det(M);
    if (N <= 0) throw std::logic_error("find_fundamental_unit: nonpositive norm");
    const IntMat adj = adjugate(M);
    const OVec xt = to_ovec(adj[0]);
    IntMat rows;
    for (int i = 0; i < 4; ++i) {
      const OVec r = omul(F, xt, to_ovec(L[i]));
      rows.emplace_back(r.begin(), r.end());
    }
    IntMat H = hnf_lower(rows);
    Int g = N;
    for (const auto& row : H)
      for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (auto& row : H)
      for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    L = H;
    OVec nm = omul(F, mu, best);
    for (auto& x : nm) {
      if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()))
        throw std::logic_error("find_fundamental_unit: mu left the order");
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    }
    mu = nm;
    norm_mu = norm_mu * N / d4;
    d = N / g;
    if (norm_mu == 1) {
      if (d != 1 || !is_identity(L)) throw std::logic_error("find_fundamental_unit: unit without trivial ideal");
      break;
    }
  }

  UnitCert cert;
  for (int i = 0; i < 4; ++i) cert.u.c[i] = Rat(mu[i]);
  if (onorm(F, mu) != 1) throw std::logic_error("find_fundamental_unit: chain closed on a non-unit");
  cert.log_abs1 = log_abs_sigma1(F, cert.u);
  if (!(cert.log_abs1 > 0)) throw std::logic_error("find_fundamental_unit: unit is not expanding");
  cert.regulator = 2 * cert.log_abs1;
  cert.certified = true;
  cert.method = "minima";
  cert.enumeration_radius = max_radius;
  cert.steps = steps;
  return cert;
}

// Units of T2 norm up to B found by enumeration; the smallest expanding one
// is fundamental as soon as any expanding unit shows up.
UnitCert unit_by_t2(const QuarticField& F, const UnitSearchConfig& cfg) {
  const MpEmb E(F, cfg.float_prec);
  const auto emb = ld_embeddings(E);
  const long double rt2 = std::sqrt(2.0L);
  for (double B = 8; B <= cfg.t2_budget; B *= 2) {
    RealMat b(4, std::vector<long double>(4));
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) b[i][k] = rt2 * emb[i][k];
    std::vector<std::vector<std::int64_t>> U;
    lll_reduce(b, U);
    bool found = false;
    OVec best;
    long double best1 = 0;
    fincke_pohst(
        b, static_cast<long double>(B),
        [&](const std::vector<std::int64_t>& x) {
          long double a[4] = {0, 0, 0, 0};
          for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) a[k] += static_cast<long double>(x[i]) * b[i][k] / rt2;
          const long double n1 = a[0] * a[0] + a[1] * a[1], n2 = a[2] * a[2] + a[3] * a[3];
          if (std::fabs(n1 * n2 - 1) > 1e-6L || n1 <= 1) return true;
          OVec v{Int(0), Int(0), Int(0), Int(0)};
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) v[j] += Int(static_cast<long>(x[i])) * Int(static_cast<long>(U[i][j]));
          if (onorm(F, v) != 1) return true;
          if (!found || n1 < best1) {
            found = true;
            best = v;
            best1 = n1;
          }
          return true;
        },
        cfg.max_points);
    if (found) {
      UnitCert cert;
      for (int i = 0; i < 4; ++i) cert.u.c[i] = Rat(best[i]);
      cert.log_abs1 = log_abs_sigma1(F, cert.u);
      cert.regulator = 2 * cert.log_abs1;
      cert.certified = true;
      cert.method = "t2";
      cert.enumeration_radius = B;
      return cert;
    }
  }
  throw BudgetExceeded("find_fundamental_unit: T2 budget exhausted");
}

}  // namespace

UnitCert find_fundamental_unit(const QuarticField& F, const UnitSearchConfig& cfg) {
  for (mpfr_prec_t p = cfg.float_prec;; p *= 2) {
    UnitSearchConfig c = cfg;
    c.float_prec = p;
    try {
      return cfg.method == UnitMethod::T2 ? unit_by_t2(F, c) : unit_by_minima(F, c);
    } catch (const PrecisionError&) {
      if (p > 4096) throw;
    }
  }
}

double log_abs_sigma1(const QuarticField& F, const QuarticElem& x) {
  const auto prec = static_cast<mpfr_prec_t>(2 * max_bits(x) + 128);
  const MpEmb E(F, prec);
  Int D = 1;
  for (const Rat& c : x.c) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
  OVec v;
  for (int i = 0; i < 4; ++i) v[i] = Rat(x.c[i] * Rat(D)).get_num();
  Mpfr s1(prec), s2(prec), dd(prec);
  E.abs2(v, s1, s2);
  if (mpfr_zero_p(s1.get())) throw std::domain_error("log_abs_sigma1: zero element");
  mpfr_log(s1.get(), s1.get(), MPFR_RNDN);
  mpfr_div_2ui(s1.get(), s1.get(), 1, MPFR_RNDN);
  mpfr_set_z(dd.get(), D.get_mpz_t(), MPFR_RNDN);
  mpfr_log(dd.get(), dd.get(), MPFR_RNDN);
  mpfr_sub(s1.get(), s1.get(), dd.get(), MPFR_RNDN);
  return s1.to_double();
}

// ---- local valuations -------------------------------------------------------

LocalQuad local_image(const QuarticField& F, const QuarticElem& x, const LocalQuad& r) {
  const PowVec p = to_power(F, x);
  const LocalField& L = r.field();
  const int prec = r.prec();
  // Coordinates can be huge; only their residues modulo 2^(prec + slack) matter.
  const unsigned cut = static_cast<unsigned>(prec + 16);
  auto reduce = [&](const Rat& c) {
    Int n;
    mpz_fdiv_r_2exp(n.get_mpz_t(), c.get_num_mpz_t(), cut);
    return LocalQuad::from_rat(L, make_rat(n, c.get_den()), prec + 8);
  };
  LocalQuad acc = reduce(p[3]);
  for (int k = 2; k >= 0; --k) acc = acc * r + reduce(p[k]);
  return acc;
}

namespace {

PlaceValuation place_ord(const QuarticField& F, const QuarticElem& eta, const LocalRoot& root,
                         const std::string& label, bool* cubed) {
  LocalQuad u = local_image(F, eta, root.r);
  if (u.is_zero() || u.ord_w() != 0) throw PrecisionError("ord_log_eta: image is not a unit");
  const LocalField& L = root.r.field();
  const LocalQuad one = LocalQuad::from_rat(L, 1, u.prec() + 8);
  LocalQuad x = u - one;
  if (L.kind == LocalKind::Unramified && (x.is_zero() ? false : x.ord_w() < 1)) {
    // Residue field F4: eta^3 = 1 mod m and log(eta^3) = 3 log(eta).
    u = u.pow(3);
    *cubed = true;
  }
  const LocalQuad lg = log_2adic(u);
  if (lg.is_zero()) throw PrecisionError("ord_log_eta: log vanishes at working precision");
  const int o = lg.ord_w();
  if (o + 8 > lg.abs_prec_w()) throw PrecisionError("ord_log_eta: valuation not resolved");
  return {label, L, o, lg};
}

std::vector<PlaceValuation> places_for(const QuarticField& F, const QuarticElem& eta, int sign,
                                       int prec, const std::string& base, bool* cubed) {
  const LocalField L = field_for_sign(F.q, sign, prec);
  std::vector<LocalRoot> roots;
  for (const LocalRoot& r : local_roots_quartic(F.q, L, prec))
    if (r.sign == sign) roots.push_back(r);
  std::vector<PlaceValuation> out;
  if (L.kind == LocalKind::Rational) {
    // Two distinct roots +-c, two places of degree one.
    if (roots.size() != 2) throw std::logic_error("ord_log_eta: expected two rational roots");
    out.push_back(place_ord(F, eta, roots[0], base.substr(0, 1) + "1" + base.substr(1), cubed));
    out.push_back(place_ord(F, eta, roots[1], base.substr(0, 1) + "2" + base.substr(1), cubed));
  } else {
    // +-r are conjugate over Q2: a single place.
    if (roots.empty()) throw std::logic_error("ord_log_eta: no root in the expected field");
    out.push_back(place_ord(F, eta, roots[0], base, cubed));
  }
  return out;
}

}  // namespace

OrdLogEtaReport ord_log_eta(const QuarticField& F, const QuarticElem& eta, int prec, int twist) {
  if (twist != 1 && twist != -1) throw std::invalid_argument("ord_log_eta: twist must be +-1");
  for (int p = prec;; p *= 2) {
    try {
      OrdLogEtaReport rep;
      rep.inert = mpz_tstbit(F.q.get_mpz_t(), 3) == 0;  // q = 7 mod 16
      rep.prec_used = p;
      rep.above_p = places_for(F, eta, -twist, p, "w", &rep.cubed);
      rep.above_pstar = places_for(F, eta, twist, p, "w*", &rep.cubed);
      return rep;
    } catch (const PrecisionError&) {
      if (p > 1 << 16) throw;
    }
  }
}

MirrorResult mirror_check(const QuarticField& F, const QuarticElem& eta, int prec) {
  MirrorResult m;
  m.f = ord_log_eta(F, eta, prec, 1);
  m.f_prime = ord_log_eta(F, eta, prec, -1);
  auto same = [](const std::vector<PlaceValuation>& a, const std::vector<PlaceValuation>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i].field == b[i].field) || a[i].ord_w != b[i].ord_w) return false;
    return true;
  };
  const bool a = same(m.f_prime.above_pstar, m.f.above_p);
  const bool b = same(m.f_prime.above_p, m.f.above_pstar);
  m.ok = a && b;
  if (!a) m.detail += "F'(p*) differs from F(p); ";
  if (!b) m.detail += "F'(p) differs from F(p*); ";
  return m;
}

RamificationData ramification_data(const Int& q) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), q.get_mpz_t(), 16);
  RamificationData out;
  if (r == 7) {
    out.inert = true;
    out.wstar_ef = {{1, 2}};
  } else if (r == 15) {
    out.inert = false;
    out.wstar_ef = {{1, 1}, {1, 1}};
  } else {
    throw std::invalid_argument("ramification_data: q must be 7 mod 8");
  }
  return out;
}

}  // namespace iwc
