#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "iwc/unit_cache.hpp"

using namespace iwc;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name) : path(fs::temp_directory_path() / ("iwc_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove(path);
  }
  ~TempFile() { fs::remove(path); }
};

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("store then lookup") {
  TempFile tmp("roundtrip");
  const QuarticField F = maximal_order(23);
  const UnitCert u = find_fundamental_unit(F);
  {
    UnitCache c(tmp.path.string());
    CHECK(c.size() == 0);
    CHECK_FALSE(c.lookup(F));
    c.store(F, u);
    CHECK(c.size() == 1);
  }
  UnitCache c(tmp.path.string());
  const auto hit = c.lookup(F);
  REQUIRE(hit);
  CHECK(hit->u == u.u);
  CHECK(hit->method == u.method);
  CHECK(hit->steps == u.steps);
  CHECK(hit->log_abs1 == doctest::Approx(u.log_abs1).epsilon(1e-14));
  CHECK_FALSE(c.lookup(maximal_order(7)));
}

TEST_CASE("version mismatch is a miss") {
  TempFile tmp("version");
  const QuarticField F = maximal_order(7);
  UnitCache(tmp.path.string(), "0.0.1").store(F, find_fundamental_unit(F));
  CHECK_FALSE(UnitCache(tmp.path.string(), "0.0.2").lookup(F));
  CHECK(UnitCache(tmp.path.string(), "0.0.1").lookup(F));
}

TEST_CASE("tampered records are rejected") {
  TempFile tmp("tamper");
  const QuarticField F = maximal_order(7);
  {
    std::ofstream out(tmp.path);
    out << "{\"q\":\"7\",\"version\":\"" << library_version() << "\",\"basis\":\"" << basis_signature(F)
        << "\",\"u\":[\"1\",\"1\",\"0\",\"0\"],\"method\":\"minima\",\"steps\":1,\"radius\":1.0}\n";
  }
  UnitCache c(tmp.path.string());
  CHECK(c.size() == 1);
  CHECK_FALSE(c.lookup(F));  // 1 + alpha is not a unit
}

TEST_CASE("corrupt lines are skipped") {
  TempFile tmp("corrupt");
  const QuarticField F = maximal_order(7);
  UnitCache(tmp.path.string()).store(F, find_fundamental_unit(F));
  {
    std::ofstream out(tmp.path, std::ios::app);
    out << "{not json\n";
    out << "{\"q\":\"23\"}\n";
  }
  UnitCache c(tmp.path.string());
  CHECK(c.corrupt_lines() == 2);
  CHECK(c.size() == 1);
  CHECK(c.lookup(F));
}

TEST_CASE("unwritable path") {
  CHECK_THROWS_AS(UnitCache("/nonexistent-dir/x/cache.jsonl"), std::runtime_error);
}

TEST_CASE("concurrent appends") {
  TempFile tmp("concurrent");
  const std::vector<long> qs{7, 23, 31, 47, 71, 79, 103, 127};
  std::vector<QuarticField> fields;
  std::vector<UnitCert> units;
  for (long q : qs) {
    fields.push_back(maximal_order(q));
    units.push_back(find_fundamental_unit(fields.back()));
  }
  {
    UnitCache shared(tmp.path.string());
    UnitCache other(tmp.path.string());  // a second writer on the same file
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t)
      pool.emplace_back([&, t] {
        for (int rep = 0; rep < 25; ++rep) {
          const std::size_t i = (t + rep) % qs.size();
          (t % 2 ? shared : other).store(fields[i], units[i]);
        }
      });
    for (auto& th : pool) th.join();
  }
  const auto ls = lines(tmp.path);
  CHECK(ls.size() == 200);
  UnitCache c(tmp.path.string());
  CHECK(c.corrupt_lines() == 0);
  CHECK(c.size() == qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto hit = c.lookup(fields[i]);
    REQUIRE(hit);
    CHECK(hit->u == units[i].u);
  }
}
