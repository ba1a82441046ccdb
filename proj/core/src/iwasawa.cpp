#include "iwc/iwasawa.hpp"

#include <algorithm>
#include <stdexcept>

namespace iwc {

Int cw_valuation(const CWInputs& in) {
  Rat v = 1 + (in.e - in.f + 1) + in.ord_R + in.ord_h - in.ord_omega - in.ord_sqrt_disc;
  for (const Rat& x : in.local_norm_factors) v += x;
  v.canonicalize();
  if (v.get_den() != 1) throw std::domain_error("cw_valuation: non-integral valuation " + v.get_str());
  return v.get_num();
}

namespace {

Rat ord2_sqrt_disc(const LocalField& L) {
  if (L.kind != LocalKind::Ramified) return 0;
  // disc Q2(sqrt d) = 4d (d odd) or 8(d/2)-ish (d even): ord 2 or 3.
  return (L.d % 2 != 0) ? Rat(1) : Rat(3, 2);
}

}  // namespace

CWInputs cw_inputs_F(const OrdLogEtaReport& rep, bool at_pstar, const Rat& ord_h) {
  const auto& places = at_pstar ? rep.above_pstar : rep.above_p;
  if (places.size() != 1) throw std::invalid_argument("cw_inputs_F: expects a single place");
  const PlaceValuation& w = places[0];
  CWInputs in;
  in.ord_R = make_rat(w.ord_w, w.field.e());
  in.ord_h = ord_h;
  in.ord_omega = 1;  // roots of unity of F are +-1
  in.ord_sqrt_disc = ord2_sqrt_disc(w.field);
  in.local_norm_factors = {Rat(-w.field.f())};  // N g = 2^f
  return in;
}

CWInputs cw_inputs_D(int ord_log_unit) {
  CWInputs in;
  in.ord_R = ord_log_unit;
  in.ord_omega = 2;  // D contains i
  in.ord_sqrt_disc = 1;
  in.local_norm_factors = {Rat(-1)};
  return in;
}

Int GalStruct::torsion_order() const {
  Int o = 1;
  for (const Int& d : elementary_divisors) o *= d;
  return o;
}

namespace {

// ord_2(2^k x) for x known mod 2^prec; returns k + prec when x vanishes there.
int ord_scaled(int k, const Int& x, int prec) {
  if (x == 0) return k + prec;
  const int o = ord_p(x, Int(2));
  return k + std::min(o, prec);
}

}  // namespace

InertStructure xstar_structure_inert(const QuarticField& F, const QuarticElem& eta, int prec) {
  for (int p = prec;; p *= 2) {
    const OrdLogEtaReport rep = ord_log_eta(F, eta, p);
    if (!rep.inert) throw std::invalid_argument("xstar_structure_inert: q must be 7 mod 16");
    const LocalQuad& lg = rep.above_pstar.at(0).log;
    // lg = 2^k (a + b zeta) = 2 A + 4 B zeta.
    const int oa = ord_scaled(lg.k() - 1, lg.a(), lg.prec());
    const int ob = ord_scaled(lg.k() - 2, lg.b(), lg.prec());
    if (oa < 0 || ob < 0) throw std::logic_error("xstar_structure_inert: log eta outside log(U_1)");
    const int m = std::min(oa, ob);
    if (m + 8 > lg.k() + lg.prec() - 2) {
      if (p > 1 << 16) throw PrecisionError("xstar_structure_inert: precision exhausted");
      continue;
    }
    InertStructure out;
    out.xstar.free_rank = 1;
    if (m > 0) out.xstar.elementary_divisors = {pow2(m)};
    out.cw = cw_valuation(cw_inputs_F(rep, true));
    out.cw_xf = cw_valuation(cw_inputs_F(rep, false));
    out.agree = out.xstar.torsion_order() == pow2(static_cast<int>(to_i64(out.cw)));
    if (!out.agree) {
      if (p > 1 << 12) throw std::logic_error("xstar_structure_inert: disagrees with the index formula");
      continue;
    }
    out.coord_a = lg.a();
    out.coord_b = lg.b();
    return out;
  }
}

SplitStructure xstar_structure_split(const QuarticField& F, const QuarticElem& eta, int prec) {
  for (int p = prec;; p *= 2) {
    const OrdLogEtaReport rep = ord_log_eta(F, eta, p);
    if (rep.inert || rep.above_pstar.size() != 2)
      throw std::invalid_argument("xstar_structure_split: q must be 15 mod 16");
    const LocalQuad& l1 = rep.above_pstar[0].log;
    const LocalQuad& l2 = rep.above_pstar[1].log;
    SplitStructure out;
    out.ord_l1 = l1.ord_w();
    out.ord_l2 = l2.ord_w();
    const int m = std::min(out.ord_l1, out.ord_l2);
    const int resolved = std::min(l1.abs_prec_w(), l2.abs_prec_w());
    if (m + 8 > resolved) {
      if (p > 1 << 16) throw PrecisionError("xstar_structure_split: precision exhausted");
      continue;
    }
    out.norm_relation = (l1 + l2).is_zero() || (l1 + l2).ord_w() >= resolved - 8;
    out.r = m - 2;
    if (out.r < 0) throw std::logic_error("xstar_structure_split: log eta outside (4Z2)^2");
    out.xstar.free_rank = 1;
    out.xstar.elementary_divisors = {Int(2)};
    if (out.r > 0) out.xstar.elementary_divisors.push_back(pow2(out.r));
    return out;
  }
}

Rat chevalley_rhs(const Int& h_M, const std::vector<Int>& ramified_e,
                  const std::vector<std::pair<Int, Int>>& S_terms, const Int& degree,
                  const Int& unit_norm_index) {
  if (degree < 1 || unit_norm_index < 1 || h_M < 1)
    throw std::invalid_argument("chevalley_rhs: degree and indices must be positive");
  Rat num = Rat(h_M);
  for (const Int& e : ramified_e) num *= Rat(e);
  for (const auto& [e, f] : S_terms) num *= Rat(e * f);
  Rat v = num / Rat(degree * unit_norm_index);
  v.canonicalize();
  if (v.get_den() != 1) throw std::domain_error("chevalley_rhs: non-integral result, inputs inconsistent");
  return v;
}

}  // namespace iwc
