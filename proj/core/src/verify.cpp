#include "iwc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <stdexcept>
#include <thread>

#include "iwc/imquad.hpp"
#include "iwc/iwasawa.hpp"
#include "iwc/lseries.hpp"
#include "iwc/quartic.hpp"
#include "iwc/unit_cache.hpp"

namespace iwc {

std::string to_string(ResidueClass c) {
  switch (c) {
    case ResidueClass::Mod16_7: return "7mod16";
    case ResidueClass::Mod16_15: return "15mod16";
    case ResidueClass::Mod8_7: return "7mod8";
  }
  return "?";
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Units: return "units";
    case Suite::ClassGroups: return "classgroups";
    case Suite::Hasse: return "hasse";
    case Suite::Iwasawa: return "iwasawa";
    case Suite::LSeries: return "lseries";
    case Suite::RealQuad: return "realquad";
  }
  return "?";
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Markdown: return "md";
  }
  return "?";
}

ResidueClass parse_residue(const std::string& s) {
  for (auto c : {ResidueClass::Mod16_7, ResidueClass::Mod16_15, ResidueClass::Mod8_7})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown residue class: " + s);
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> v{Suite::Units,   Suite::ClassGroups, Suite::Hasse,
                                    Suite::Iwasawa, Suite::LSeries,     Suite::RealQuad};
  return v;
}

Suite parse_suite(const std::string& s) {
  for (Suite x : all_suites())
    if (to_string(x) == s) return x;
  throw std::invalid_argument("unknown suite: " + s);
}

OutputFormat parse_format(const std::string& s) {
  for (auto f : {OutputFormat::Json, OutputFormat::Csv, OutputFormat::Markdown})
    if (to_string(f) == s) return f;
  if (s == "markdown") return OutputFormat::Markdown;
  throw std::invalid_argument("unknown format: " + s);
}

void RunConfig::validate() const {
  if (q_min > q_max) throw std::invalid_argument("q_min must not exceed q_max");
  if (q_max > (std::int64_t{1} << 40)) throw std::invalid_argument("q_max too large");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (padic_prec < 32 || padic_prec > (1 << 16)) throw std::invalid_argument("padic precision must be in [32, 65536]");
  if (float_prec < 64 || float_prec > (1 << 16)) throw std::invalid_argument("float precision must be in [64, 65536]");
  if (suites.empty()) throw std::invalid_argument("no suite selected");
}

std::string QRecord::status() const {
  if (!failures.empty()) return "fail";
  if (!skips.empty()) return "skip";
  return "pass";
}

namespace {

void check(QRecord& r, bool cond, const std::string& what) {
  if (!cond) r.failures.push_back(what);
}

std::string unit_text(const UnitCert& c) {
  std::string s = "[";
  for (int i = 0; i < 4; ++i) s += (i ? ", " : "") + c.u.c[i].get_str();
  return s + "]";
}

// Runs `body`, turning budget exhaustion into a skip and errors into failures.
template <class F>
void guarded(QRecord& r, const std::string& suite, F&& body) {
  try {
    body();
  } catch (const BudgetExceeded& e) {
    r.skips.push_back(suite + ": " + e.what());
  } catch (const std::exception& e) {
    r.failures.push_back(suite + ": " + e.what());
  }
}

}  // namespace

QRecord run_one(std::int64_t q, const RunConfig& cfg, UnitCache* cache) {
  const auto t0 = std::chrono::steady_clock::now();
  QRecord r;
  r.q = q;
  const bool inert = q % 16 == 7;
  r.cls = inert ? "7mod16" : "15mod16";
  const Int Q(static_cast<long>(q));
  const auto has = [&](Suite s) { return cfg.suites.count(s) > 0; };

  std::optional<QuarticField> F;
  std::optional<UnitCert> unit;
  auto need_unit = [&]() {
    if (unit) return;
    if (!F) F = maximal_order(Q);
    if (cache) unit = cache->lookup(*F);
    if (!unit) {
      UnitSearchConfig uc;
      uc.max_steps = cfg.unit_steps;
      unit = find_fundamental_unit(*F, uc);
      if (cache) cache->store(*F, *unit);
    }
  };

  if (has(Suite::Units))
    guarded(r, "units", [&] {
      need_unit();
      r.unit = unit_text(*unit);
      r.log_abs1 = unit->log_abs1;
      r.unit_method = unit->method;
      r.unit_steps = unit->steps;
      const OrdLogEtaReport rep = ord_log_eta(*F, unit->u, cfg.padic_prec);
      r.ord_w = rep.above_p.at(0).ord_w;
      for (const auto& p : rep.above_pstar) r.ord_wstar.push_back(p.ord_w);
      if (inert) {
        check(r, *r.ord_w == 2 && r.ord_wstar.size() == 1 && r.ord_wstar[0] == 3, "units: valuations are not (2, 3)");
      } else {
        check(r, *r.ord_w >= 6, "units: ord_w below 6");
        check(r, std::all_of(r.ord_wstar.begin(), r.ord_wstar.end(), [](int o) { return o >= 4; }),
              "units: split valuation below 4");
      }
      r.mirror_ok = mirror_check(*F, unit->u, cfg.padic_prec).ok;
      check(r, *r.mirror_ok, "units: mirror check failed");
    });

  if (has(Suite::Iwasawa))
    guarded(r, "iwasawa", [&] {
      need_unit();
      if (inert) {
        const InertStructure s = xstar_structure_inert(*F, unit->u, cfg.padic_prec);
        const Int order = s.xstar.torsion_order();
        r.xstar = "Z/" + order.get_str();
        r.xstar_order_or_r = to_i64(order);
        r.cw_val = to_i64(s.cw);
        r.cw_xf = to_i64(s.cw_xf);
        check(r, s.xstar.cyclic_torsion() && order == 4, "iwasawa: X* is not cyclic of order 4");
        check(r, s.cw == 2 && s.agree, "iwasawa: index formula disagrees with X*");
        check(r, s.cw_xf == 0, "iwasawa: X(F) side is not trivial");
      } else {
        const SplitStructure s = xstar_structure_split(*F, unit->u, cfg.padic_prec);
        r.xstar = "Z/2 x Z/" + pow2(s.r).get_str();
        r.xstar_order_or_r = s.r;
        check(r, s.r >= 2, "iwasawa: r below 2");
        check(r, s.norm_relation, "iwasawa: log eta at the split places does not sum to 0");
      }
    });

  if (has(Suite::ClassGroups))
    guarded(r, "classgroups", [&] {
      const ClassGroupData cg = class_group(-q);
      r.h_minus_q = cg.h;
      check(r, cg.h % 2 == 1, "classgroups: h(-q) is even");
      const RqRoutes rq = primes_above_q_routes(Q, cfg.padic_prec);
      r.r_q = to_i64(rq.via_sqrt);
      check(r, rq.via_sqrt == rq.via_q1, "classgroups: r_q routes disagree");
      const CorK1Result k = check_cor_K1(q);
      r.cor_k1_residue = k.residue_mod8;
      check(r, k.ok, "classgroups: pi mod 8 " + k.detail);
    });

  if (has(Suite::Hasse))
    guarded(r, "hasse", [&] {
      const HasseResult h = hasse_check(q);
      r.hasse_2part = h.two_part;
      r.hasse_cyclic = h.cyclic;
      check(r, h.ok, "hasse: 2-part of h(-8q) wrong");
    });

  if (has(Suite::RealQuad))
    guarded(r, "realquad", [&] {
      const TraceResult t = trace_tests(Q, cfg.pell_bits);
      r.trace_ord = t.ord_trace;
      check(r, t.ok(), "realquad: trace congruences fail");
      const OrdLogEpsilon o = ord_log_epsilon(Q, cfg.pell_bits, cfg.padic_prec);
      r.ord_log_eps = o.value();
      check(r, o.agree, "realquad: ord log eps routes disagree");
      const CMIndexResult cm = cm_unit_index(Q, cfg.pell_bits);
      r.cm_identity = cm.identity_exact;
      check(r, cm.identity_exact, "realquad: CM identity fails");
      r.cw_D = to_i64(cw_valuation(cw_inputs_D(cm.ord_log_xi)));
      if (inert) check(r, *r.cw_D == 0, "realquad: X(D) not trivial");
    });

  if (has(Suite::LSeries))
    guarded(r, "lseries", [&] {
      const BoundReport b = simple_zero_criterion(Q, cfg.float_prec);
      r.lseries_verdict = b.verdict;
      r.u_lower = b.u_lower.lower();
      r.v_truncated = b.v_upper_truncated.upper();
      r.v_chain = b.v_upper_chain.upper();
      check(r, b.verdict, "lseries: U does not exceed |V|");
    });

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

RunSummary run(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::int64_t> qs;
  const std::int64_t lo = std::max<std::int64_t>(cfg.q_min, 2);
  switch (cfg.residue) {
    case ResidueClass::Mod16_7: qs = primes_in_class(lo, cfg.q_max, 7, 16); break;
    case ResidueClass::Mod16_15: qs = primes_in_class(lo, cfg.q_max, 15, 16); break;
    case ResidueClass::Mod8_7: qs = primes_in_class(lo, cfg.q_max, 7, 8); break;
  }
  std::unique_ptr<UnitCache> cache;
  if (!cfg.cache_path.empty()) cache = std::make_unique<UnitCache>(cfg.cache_path);

  RunSummary out;
  out.records.resize(qs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < qs.size();) out.records[i] = run_one(qs[i], cfg, cache.get());
  };
  const int n = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(qs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& r : out.records) {
    const std::string s = r.status();
    if (s == "pass") ++out.passed;
    else if (s == "skip") ++out.skipped;
    else ++out.failed;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace iwc
