#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hypmod/arith.hpp"

namespace hypmod {

struct LmfdbOptions {
  std::string base_url = "https://www.lmfdb.org";
  std::string cache_dir;
  bool allow_network = false;

  /// Reads LMFDB_BASE_URL and HYPMOD_CACHE_DIR.
  static LmfdbOptions from_env();
};

struct CrosscheckEntry {
  std::uint64_t p = 0;
  Integer local;
  Integer remote;
};

struct CrosscheckReport {
  std::string label;
  std::string source;  // "cache" or "network"
  std::vector<CrosscheckEntry> entries;
  bool passed = false;
};

/// Labels with a locally computed q-expansion.
std::vector<std::string> known_labels();

/// a_p of the named newform from the local eta-quotient. Throws LabelNotFound.
Integer local_coefficient(const std::string& label, std::uint64_t p);

std::string cache_path(const std::string& cache_dir, const std::string& label);
/// "p<TAB>a_p" lines, '#' comments.
std::map<std::uint64_t, Integer> read_ap_cache(const std::string& path);
void write_ap_cache(const std::string& path, const std::string& label, const std::map<std::uint64_t, Integer>& ap,
                    const std::string& source);

/// Compares remote a_p with local ones. Uses the cache when it covers every
/// prime, the network only when allowed (and then refreshes the cache).
/// Throws LabelNotFound, NetworkDisabled, CoefficientMismatch.
CrosscheckReport lmfdb_crosscheck(const std::string& label, const std::vector<std::uint64_t>& primes,
                                  const LmfdbOptions& opts);

}  // namespace hypmod
