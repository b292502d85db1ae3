#include "hypmod/lmfdb.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "hypmod/error.hpp"
#include "hypmod/hecke.hpp"

namespace hypmod {

namespace {

// label -> family whose f_1 is the newform itself
const std::map<std::string, std::string>& label_families() {
  static const std::map<std::string, std::string> m = {
      {"8.4.a.a", "k4-1"},
      {"27.2.a.a", "k5-2"},
      {"36.2.a.a", "k5-1"},
  };
  return m;
}

std::map<std::uint64_t, Integer> fetch_remote(const std::string& base_url, const std::string& label,
                                              std::uint64_t pmax) {
  httplib::Client cli(base_url);
  cli.set_connection_timeout(10);
  cli.set_read_timeout(30);
  const auto res = cli.Get("/api/mf_newforms/?label=" + label + "&_format=json&_fields=label,traces");
  if (!res) {
    throw Error(ErrorCode::NetworkDisabled, "request to " + base_url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) throw Error(ErrorCode::LabelNotFound, label + ": HTTP " + std::to_string(res->status));
  const auto doc = nlohmann::json::parse(res->body);
  const auto& data = doc.at("data");
  if (data.empty()) throw Error(ErrorCode::LabelNotFound, label + " not in the database");
  const auto& traces = data.front().at("traces");
  std::map<std::uint64_t, Integer> out;
  // traces[n - 1] = a_n
  for (std::uint64_t p = 2; p <= pmax && p <= traces.size(); ++p) {
    if (is_prime(p)) out[p] = Integer(traces.at(p - 1).get<long>());
  }
  return out;
}

}  // namespace

LmfdbOptions LmfdbOptions::from_env() {
  LmfdbOptions o;
  if (const char* url = std::getenv("LMFDB_BASE_URL"); url && *url) o.base_url = url;
  if (const char* dir = std::getenv("HYPMOD_CACHE_DIR"); dir && *dir) o.cache_dir = dir;
  return o;
}

std::vector<std::string> known_labels() {
  std::vector<std::string> out;
  for (const auto& [label, id] : label_families()) out.push_back(label);
  return out;
}

Integer local_coefficient(const std::string& label, std::uint64_t p) {
  const auto it = label_families().find(label);
  if (it == label_families().end()) throw Error(ErrorCode::LabelNotFound, "no local expansion for " + label);
  const auto& fam = find_family(it->second);
  return fam.basis_element(1, static_cast<std::int64_t>(p) + 1).coefficient_at(static_cast<std::int64_t>(p));
}

std::string cache_path(const std::string& cache_dir, const std::string& label) {
  return cache_dir + "/lmfdb/" + label + ".txt";
}

std::map<std::uint64_t, Integer> read_ap_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::NetworkDisabled, "no cache at " + path);
  std::map<std::uint64_t, Integer> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t p = 0;
    std::string value;
    if (!(ls >> p >> value)) throw Error(ErrorCode::ParseError, "bad cache line '" + line + "'");
    out[p] = Integer(value);
  }
  return out;
}

void write_ap_cache(const std::string& path, const std::string& label, const std::map<std::uint64_t, Integer>& ap,
                    const std::string& source) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::ofstream out(path);
  out << "# " << label << "\n# source: " << source << "\n";
  for (const auto& [p, a] : ap) out << p << '\t' << a.get_str() << '\n';
}

CrosscheckReport lmfdb_crosscheck(const std::string& label, const std::vector<std::uint64_t>& primes,
                                  const LmfdbOptions& opts) {
  if (!label_families().count(label)) throw Error(ErrorCode::LabelNotFound, "unknown label " + label);
  CrosscheckReport rep;
  rep.label = label;

  std::map<std::uint64_t, Integer> remote;
  bool covered = false;
  const auto path = opts.cache_dir.empty() ? std::string() : cache_path(opts.cache_dir, label);
  if (!path.empty() && std::filesystem::exists(path)) {
    remote = read_ap_cache(path);
    covered = true;
    for (auto p : primes) covered = covered && remote.count(p);
    rep.source = "cache";
  }
  if (!covered) {
    if (!opts.allow_network) {
      throw Error(ErrorCode::NetworkDisabled, "no cached a_p for " + label + " and network access is off");
    }
    std::uint64_t pmax = 0;
    for (auto p : primes) pmax = std::max(pmax, p);
    remote = fetch_remote(opts.base_url, label, std::max<std::uint64_t>(pmax, 1000));
    rep.source = "network";
    if (!path.empty()) write_ap_cache(path, label, remote, opts.base_url);
  }

  for (auto p : primes) {
    const auto it = remote.find(p);
    if (it == remote.end()) throw Error(ErrorCode::LabelNotFound, label + ": no a_" + std::to_string(p));
    CrosscheckEntry e{p, local_coefficient(label, p), it->second};
    if (e.local != e.remote) {
      throw Error(ErrorCode::CoefficientMismatch, label + ": a_" + std::to_string(p) + " local " + e.local.get_str() +
                                                      " remote " + e.remote.get_str());
    }
    rep.entries.push_back(std::move(e));
  }
  rep.passed = true;
  return rep;
}

}  // namespace hypmod
