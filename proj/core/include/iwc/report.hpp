#pragma once

#include <ostream>
#include <string>

#include "iwc/verify.hpp"

namespace iwc {

constexpr int kReportSchema = 1;

/// Array of records with a fixed key order; integers above 2^53 as strings.
std::string report_json(const RunSummary& s, bool timings = false);

/// Columns: q, class, ord_w, ord_wstar, xstar_order_or_r, hasse_2part, r_q,
/// trace_ord, cw_val, lseries_verdict, status.  Empty cell = not computed.
std::string report_csv(const RunSummary& s);

std::string report_markdown(const RunSummary& s);

std::string render(const RunSummary& s, OutputFormat f, bool timings = false);

}  // namespace iwc
