#include "iwc/report.hpp"

#include <sstream>

#include <json.hpp>

namespace iwc {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::int64_t kExactLimit = std::int64_t{1} << 53;

ojson big(std::int64_t v) {
  if (v > kExactLimit || v < -kExactLimit) return std::to_string(v);
  return v;
}

template <class T>
ojson opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, std::int64_t>) return big(*v);
  else return *v;
}

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
  else {
    std::ostringstream os;
    os << *v;
    return os.str();
  }
}

std::string wstar_cell(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::string> row(const QRecord& r) {
  return {std::to_string(r.q),       r.cls,          cell(r.ord_w),    wstar_cell(r.ord_wstar),
          cell(r.xstar_order_or_r),  cell(r.hasse_2part), cell(r.r_q), cell(r.trace_ord),
          cell(r.cw_val),            cell(r.lseries_verdict), r.status()};
}

const std::vector<std::string> kColumns{"q",   "class",     "ord_w",  "ord_wstar",       "xstar_order_or_r", "hasse_2part",
                                        "r_q", "trace_ord", "cw_val", "lseries_verdict", "status"};

}  // namespace

std::string report_json(const RunSummary& s, bool timings) {
  ojson arr = ojson::array();
  for (const QRecord& r : s.records) {
    ojson j;
    j["schema"] = kReportSchema;
    j["q"] = big(r.q);
    j["class"] = r.cls;
    j["status"] = r.status();
    j["units"] = {{"ord_w", opt(r.ord_w)},
                  {"ord_wstar", r.ord_wstar.empty() ? ojson(nullptr) : ojson(r.ord_wstar)},
                  {"unit", opt(r.unit)},
                  {"log_abs_sigma1", opt(r.log_abs1)},
                  {"method", opt(r.unit_method)},
                  {"minima_steps", opt(r.unit_steps)},
                  {"mirror_ok", opt(r.mirror_ok)}};
    j["iwasawa"] = {{"xstar", opt(r.xstar)},
                    {"xstar_order_or_r", opt(r.xstar_order_or_r)},
                    {"cw_val", opt(r.cw_val)},
                    {"cw_xf", opt(r.cw_xf)}};
    j["classgroups"] = {{"h_minus_q", opt(r.h_minus_q)}, {"r_q", opt(r.r_q)}, {"cor_k1_residue", opt(r.cor_k1_residue)}};
    j["hasse"] = {{"two_part", opt(r.hasse_2part)}, {"cyclic", opt(r.hasse_cyclic)}};
    j["realquad"] = {{"trace_ord", opt(r.trace_ord)},
                     {"ord_log_eps", opt(r.ord_log_eps)},
                     {"cm_identity", opt(r.cm_identity)},
                     {"cw_D", opt(r.cw_D)}};
    j["lseries"] = {{"verdict", opt(r.lseries_verdict)},
                    {"u_lower", opt(r.u_lower)},
                    {"v_truncated", opt(r.v_truncated)},
                    {"v_chain", opt(r.v_chain)}};
    j["failures"] = r.failures;
    j["skips"] = r.skips;
    if (timings) j["seconds"] = r.seconds;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string report_csv(const RunSummary& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kColumns.size(); ++i) os << (i ? "," : "") << kColumns[i];
  os << "\n";
  for (const QRecord& r : s.records) {
    const auto cells = row(r);
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  }
  return os.str();
}

std::string report_markdown(const RunSummary& s) {
  std::ostringstream os;
  os << "|";
  for (const auto& c : kColumns) os << " " << c << " |";
  os << "\n|";
  for (std::size_t i = 0; i < kColumns.size(); ++i) os << "---|";
  os << "\n";
  for (const QRecord& r : s.records) {
    os << "|";
    for (const auto& c : row(r)) os << " " << c << " |";
    os << "\n";
  }
  os << "\n" << s.passed << " passed, " << s.failed << " failed, " << s.skipped << " skipped\n";
  for (const QRecord& r : s.records) {
    for (const auto& f : r.failures) os << "- q=" << r.q << " FAIL " << f << "\n";
    for (const auto& k : r.skips) os << "- q=" << r.q << " skip " << k << "\n";
  }
  return os.str();
}

std::string render(const RunSummary& s, OutputFormat f, bool timings) {
  switch (f) {
    case OutputFormat::Json: return report_json(s, timings);
    case OutputFormat::Csv: return report_csv(s);
    case OutputFormat::Markdown: return report_markdown(s);
  }
  return {};
}

}  // namespace iwc
