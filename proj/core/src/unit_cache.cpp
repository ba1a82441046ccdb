#include "iwc/unit_cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace iwc {

#ifndef IWC_VERSION
#define IWC_VERSION "dev"
#endif

std::string library_version() { return IWC_VERSION; }

std::string basis_signature(const QuarticField& F) {
  std::string s;
  for (const auto& row : F.basis) {
    for (const auto& c : row) s += c.get_str() + ",";
    s += ";";
  }
  return s;
}

namespace {

nlohmann::ordered_json to_json(const std::string& q, const std::string& version, const std::string& basis,
                               const UnitCert& c) {
  nlohmann::ordered_json j;
  j["q"] = q;
  j["version"] = version;
  j["basis"] = basis;
  j["u"] = nlohmann::ordered_json::array();
  for (const Rat& x : c.u.c) j["u"].push_back(x.get_str());
  j["method"] = c.method;
  j["steps"] = c.steps;
  j["radius"] = c.enumeration_radius;
  return j;
}

}  // namespace

UnitCache::UnitCache(std::string path, std::string version)
    : path_(std::move(path)), version_(std::move(version)) {
  const int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
  if (fd < 0) throw std::runtime_error("unit cache: cannot open " + path_ + ": " + std::strerror(errno));
  ::close(fd);
  std::ifstream in(path_);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Entry e;
      e.version = j.at("version").get<std::string>();
      e.basis = j.at("basis").get<std::string>();
      const auto& u = j.at("u");
      if (u.size() != 4) throw std::runtime_error("bad coordinate count");
      for (int i = 0; i < 4; ++i) e.cert.u.c[i] = Rat(u.at(i).get<std::string>());
      for (auto& x : e.cert.u.c) x.canonicalize();
      e.cert.method = j.at("method").get<std::string>();
      e.cert.steps = j.at("steps").get<std::size_t>();
      e.cert.enumeration_radius = j.at("radius").get<double>();
      entries_[j.at("q").get<std::string>()] = std::move(e);
    } catch (const std::exception& ex) {
      ++corrupt_;
      std::cerr << "warning: unit cache " << path_ << ":" << lineno << ": ignoring corrupt line (" << ex.what()
                << ")\n";
    }
  }
}

std::optional<UnitCert> UnitCache::lookup(const QuarticField& F) const {
  Entry e;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto it = entries_.find(F.q.get_str());
    if (it == entries_.end()) return std::nullopt;
    e = it->second;
  }
  if (e.version != version_ || e.basis != basis_signature(F)) return std::nullopt;
  // Cheap re-check: an integral element of norm 1 that expands at sigma_1.
  OVec v;
  for (int i = 0; i < 4; ++i) {
    if (e.cert.u.c[i].get_den() != 1) return std::nullopt;
    v[i] = e.cert.u.c[i].get_num();
  }
  if (onorm(F, v) != 1) return std::nullopt;
  e.cert.log_abs1 = log_abs_sigma1(F, e.cert.u);
  if (!(e.cert.log_abs1 > 0)) return std::nullopt;
  e.cert.regulator = 2 * e.cert.log_abs1;
  e.cert.certified = true;
  return e.cert;
}

void UnitCache::store(const QuarticField& F, const UnitCert& cert) {
  const std::string q = F.q.get_str();
  const std::string basis = basis_signature(F);
  const std::string line = to_json(q, version_, basis, cert).dump() + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  const int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
  if (fd < 0) throw std::runtime_error("unit cache: cannot open " + path_);
  const ssize_t n = ::write(fd, line.data(), line.size());
  ::close(fd);
  if (n != static_cast<ssize_t>(line.size())) throw std::runtime_error("unit cache: short write to " + path_);
  entries_[q] = Entry{version_, basis, cert};
}

std::size_t UnitCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

}  // namespace iwc
