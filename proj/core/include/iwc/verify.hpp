#pragma once

// Prime sweeps: per-q suites run on a worker pool, records come back in
// ascending q whatever the thread count.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iwc/hpreal.hpp"
#include "iwc/padic2.hpp"
#include "iwc/realquad.hpp"

namespace iwc {

enum class ResidueClass { Mod16_7, Mod16_15, Mod8_7 };
enum class Suite { Units, ClassGroups, Hasse, Iwasawa, LSeries, RealQuad };
enum class OutputFormat { Json, Csv, Markdown };

std::string to_string(ResidueClass c);
std::string to_string(Suite s);
std::string to_string(OutputFormat f);
ResidueClass parse_residue(const std::string& s);  // "7mod16", "15mod16", "7mod8"
Suite parse_suite(const std::string& s);
OutputFormat parse_format(const std::string& s);
const std::vector<Suite>& all_suites();

struct RunConfig {
  std::int64_t q_min = 1, q_max = 200;
  ResidueClass residue = ResidueClass::Mod8_7;
  int padic_prec = kDefaultPadicPrec;
  mpfr_prec_t float_prec = kDefaultFloatPrec;
  int jobs = 1;
  std::set<Suite> suites;
  std::string cache_path;  // empty: no cache
  OutputFormat format = OutputFormat::Json;
  std::string out_path;    // empty: stdout
  std::size_t pell_bits = kDefaultPellBits;
  std::size_t unit_steps = 2'000'000;
  bool timings = false;    // timings make reports run-dependent, so off by default

  void validate() const;   // throws std::invalid_argument
};

struct QRecord {
  std::int64_t q = 0;
  std::string cls;  // "7mod16" or "15mod16"

  // units
  std::optional<int> ord_w;
  std::vector<int> ord_wstar;
  std::optional<std::string> unit;  // coordinates on the integral basis
  std::optional<double> log_abs1;
  std::optional<std::string> unit_method;
  std::optional<std::size_t> unit_steps;
  std::optional<bool> mirror_ok;

  // iwasawa
  std::optional<std::string> xstar;  // e.g. "Z/4", "Z/2 x Z/8"
  std::optional<std::int64_t> xstar_order_or_r;
  std::optional<std::int64_t> cw_val, cw_xf;

  // classgroups / hasse
  std::optional<std::int64_t> h_minus_q;
  std::optional<std::int64_t> r_q;
  std::optional<int> cor_k1_residue;
  std::optional<std::int64_t> hasse_2part;
  std::optional<bool> hasse_cyclic;

  // realquad
  std::optional<int> trace_ord;
  std::optional<int> ord_log_eps;
  std::optional<bool> cm_identity;
  std::optional<std::int64_t> cw_D;

  // lseries
  std::optional<bool> lseries_verdict;
  std::optional<double> u_lower, v_truncated, v_chain;

  std::vector<std::string> failures;
  std::vector<std::string> skips;
  double seconds = 0;

  std::string status() const;  // "fail" > "skip" > "pass"
};

struct RunSummary {
  std::vector<QRecord> records;
  std::size_t passed = 0, failed = 0, skipped = 0;
  double seconds = 0;
  int exit_code() const { return failed == 0 ? 0 : 1; }
};

class UnitCache;

/// Runs one q through the configured suites.
QRecord run_one(std::int64_t q, const RunConfig& cfg, UnitCache* cache = nullptr);

RunSummary run(const RunConfig& cfg);

}  // namespace iwc
