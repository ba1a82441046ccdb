// verify <suite|all> [options]: sweep primes q = 7 mod 8 and certify them.

#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "iwc/report.hpp"
#include "iwc/unit_cache.hpp"
#include "iwc/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Certify unit valuations, class groups and L-series bounds over primes q = 7 mod 8"};
  app.set_version_flag("--version", iwc::library_version());

  std::vector<std::string> suites{"all"};
  std::int64_t q_min = 1, q_max = 200;
  std::string residue = "7mod8", format = "json", cache, out;
  int padic_prec = iwc::kDefaultPadicPrec, jobs = 1;
  long float_prec = iwc::kDefaultFloatPrec;
  std::size_t pell_bits = iwc::kDefaultPellBits, unit_steps = 2'000'000;
  bool timings = false;

  std::vector<std::string> names{"all"};
  for (auto s : iwc::all_suites()) names.push_back(iwc::to_string(s));
  app.add_option("suite", suites, "Suites to run")->check(CLI::IsMember(names));
  app.add_option("--q-min", q_min, "Smallest q")->capture_default_str();
  app.add_option("--q-max", q_max, "Largest q")->capture_default_str();
  app.add_option("--residue", residue, "Prime family")
      ->check(CLI::IsMember({"7mod16", "15mod16", "7mod8"}))
      ->capture_default_str();
  app.add_option("--padic-prec", padic_prec, "2-adic working precision in bits")->capture_default_str();
  app.add_option("--float-prec", float_prec, "MPFR mantissa bits")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads (0 = hardware)")->capture_default_str();
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "md", "markdown"}))
      ->capture_default_str();
  app.add_option("--cache", cache, "JSON-lines unit cache");
  app.add_option("--out", out, "Report file (default stdout)");
  app.add_option("--pell-bits", pell_bits, "Bit budget for real quadratic units")->capture_default_str();
  app.add_option("--unit-steps", unit_steps, "Budget of relative minima per unit search")->capture_default_str();
  app.add_flag("--timings", timings, "Include per-q timings in JSON");
  CLI11_PARSE(app, argc, argv);

  iwc::RunConfig cfg;
  try {
    cfg.q_min = q_min;
    cfg.q_max = q_max;
    cfg.residue = iwc::parse_residue(residue);
    cfg.padic_prec = padic_prec;
    cfg.float_prec = float_prec;
    cfg.jobs = jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    cfg.format = iwc::parse_format(format);
    cfg.cache_path = cache;
    cfg.out_path = out;
    cfg.pell_bits = pell_bits;
    cfg.unit_steps = unit_steps;
    cfg.timings = timings;
    for (const auto& s : suites) {
      if (s == "all")
        cfg.suites.insert(iwc::all_suites().begin(), iwc::all_suites().end());
      else
        cfg.suites.insert(iwc::parse_suite(s));
    }
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
  }

  iwc::RunSummary summary;
  try {
    summary = iwc::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  (out.empty() ? std::cout : file) << iwc::render(summary, cfg.format, cfg.timings);
  std::cerr << summary.records.size() << " primes: " << summary.passed << " passed, " << summary.failed
            << " failed, " << summary.skipped << " skipped (" << summary.seconds << " s)\n";
  return summary.exit_code();
}
