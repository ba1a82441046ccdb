#include "iwc/hpreal.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace iwc {

Mpfr::Mpfr(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Mpfr::Mpfr(const Mpfr& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}

Mpfr& Mpfr::operator=(const Mpfr& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(v_); }

std::string Mpfr::str(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return buf.data();
}

HPReal::HPReal(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

HPReal HPReal::from_int(const Int& n, mpfr_prec_t prec) {
  HPReal r(prec);
  mpfr_set_z(r.lo_.get(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), n.get_mpz_t(), MPFR_RNDU);
  return r;
}

HPReal HPReal::from_si(long n, mpfr_prec_t prec) {
  HPReal r(prec);
  mpfr_set_si(r.lo_.get(), n, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), n, MPFR_RNDU);
  return r;
}

HPReal HPReal::from_string(const std::string& s, mpfr_prec_t prec) {
  HPReal r(prec);
  if (mpfr_set_str(r.lo_.get(), s.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_.get(), s.c_str(), 10, MPFR_RNDU) != 0)
    throw std::invalid_argument("HPReal::from_string: bad literal " + s);
  return r;
}

HPReal HPReal::from_rat(const Rat& q, mpfr_prec_t prec) {
  HPReal r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

HPReal HPReal::pi(mpfr_prec_t prec) {
  HPReal r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

HPReal HPReal::euler_gamma(mpfr_prec_t prec) {
  HPReal r(prec);
  mpfr_const_euler(r.lo_.get(), MPFR_RNDD);
  mpfr_const_euler(r.hi_.get(), MPFR_RNDU);
  return r;
}

HPReal HPReal::from_mpfr(const Mpfr& x) {
  HPReal r(x.prec());
  mpfr_set(r.lo_.get(), x.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), x.get(), MPFR_RNDU);
  return r;
}

HPReal HPReal::hull(const HPReal& a, const HPReal& b) {
  HPReal r(std::max(a.prec(), b.prec()));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

double HPReal::mid() const {
  Mpfr m(prec() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

double HPReal::width() const {
  Mpfr w(prec());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

bool HPReal::contains(double x) const {
  return mpfr_cmp_d(lo_.get(), x) <= 0 && mpfr_cmp_d(hi_.get(), x) >= 0;
}

HPReal HPReal::operator+(const HPReal& o) const {
  HPReal r(std::max(prec(), o.prec()));
  mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return r;
}

HPReal HPReal::operator-() const {
  HPReal r(prec());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

HPReal HPReal::operator-(const HPReal& o) const { return *this + (-o); }

HPReal HPReal::operator*(const HPReal& o) const {
  const mpfr_prec_t p = std::max(prec(), o.prec());
  HPReal r(p);
  Mpfr t(p);
  bool first = true;
  for (const Mpfr* x : {&lo_, &hi_})
    for (const Mpfr* y : {&o.lo_, &o.hi_}) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  return r;
}

HPReal HPReal::operator/(const HPReal& o) const {
  if (mpfr_sgn(o.lo_.get()) <= 0 && mpfr_sgn(o.hi_.get()) >= 0)
    throw std::domain_error("HPReal: division by an interval containing zero");
  const mpfr_prec_t p = std::max(prec(), o.prec());
  HPReal r(p);
  Mpfr t(p);
  bool first = true;
  for (const Mpfr* x : {&lo_, &hi_})
    for (const Mpfr* y : {&o.lo_, &o.hi_}) {
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  return r;
}

HPReal HPReal::mul_si(long k) const { return *this * from_si(k, prec()); }

HPReal HPReal::exp() const {
  HPReal r(prec());
  mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

HPReal HPReal::log() const {
  if (mpfr_sgn(lo_.get()) <= 0) throw std::domain_error("HPReal::log: interval not positive");
  HPReal r(prec());
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

HPReal HPReal::sqrt() const {
  if (mpfr_sgn(lo_.get()) < 0) throw std::domain_error("HPReal::sqrt: negative interval");
  HPReal r(prec());
  mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

HPReal HPReal::add_error(const HPReal& bound) const {
  HPReal r(prec());
  mpfr_sub(r.lo_.get(), lo_.get(), bound.hi_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), bound.hi_.get(), MPFR_RNDU);
  return r;
}

std::string HPReal::str(int digits) const {
  return "[" + lo_.str(digits) + ", " + hi_.str(digits) + "]";
}

}  // namespace iwc
