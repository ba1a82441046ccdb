#pragma once

// JSON-lines store of certified fundamental units, keyed by q.  A record is
// used only when the tool version and the integral basis both match.

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "iwc/quartic.hpp"

namespace iwc {

std::string library_version();

/// Canonical text of the integral basis, stored with each record.
std::string basis_signature(const QuarticField& F);

class UnitCache {
 public:
  /// Loads `path` if it exists.  Throws std::runtime_error if the file
  /// cannot be opened for appending.  `version` defaults to the library's.
  explicit UnitCache(std::string path, std::string version = library_version());

  std::optional<UnitCert> lookup(const QuarticField& F) const;
  /// Appends one line; serialized across threads, written with O_APPEND.
  void store(const QuarticField& F, const UnitCert& cert);

  std::size_t size() const;
  std::size_t corrupt_lines() const { return corrupt_; }
  const std::string& path() const { return path_; }

 private:
  struct Entry {
    std::string version, basis;
    UnitCert cert;
  };
  std::string path_, version_;
  mutable std::mutex mu_;
  std::map<std::string, Entry> entries_;  // keyed by decimal q
  std::size_t corrupt_ = 0;
};

}  // namespace iwc
