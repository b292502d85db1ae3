#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypmod/error.hpp"
#include "hypmod/hecke.hpp"
#include "hypmod/lmfdb.hpp"
#include "hypmod/padic.hpp"
#include "hypmod/qseries.hpp"
#include "hypmod/verify.hpp"

using namespace hypmod;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::vector<Rational> parse_rationals(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

std::string default_fixture_dir() {
  if (const char* d = std::getenv("HYPMOD_FIXTURE_DIR"); d && *d) return d;
  return HYPMOD_DEFAULT_FIXTURE_DIR;
}

bool is_usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnknownName:
    case ErrorCode::ParseError:
    case ErrorCode::PrimeNotSplit:
    case ErrorCode::NotInS4:
    case ErrorCode::NotInS5:
    case ErrorCode::DenominatorNotDividing:
    case ErrorCode::DenominatorDivisibleByP:
    case ErrorCode::NetworkDisabled:
    case ErrorCode::LabelNotFound:
    case ErrorCode::NotPrime:
    case ErrorCode::EvenPrime:
      return true;
    default:
      return false;
  }
}

struct VerifyArgs {
  std::vector<std::string> r;
  std::vector<std::string> cprime;
  std::uint64_t pmax = 100;
  std::string backend = "exact";
  int jobs = 1;
  std::string out, csv;
  bool timing = false;
  bool quiet = false;
};

int run_verify(TheoremId t, const VerifyArgs& a) {
  SweepOptions o;
  o.theorem = t;
  o.rs = parse_rationals(a.r);
  o.cprimes = parse_rationals(a.cprime);
  o.pmax = a.pmax;
  o.backend = a.backend == "complex" ? BackendKind::complex : BackendKind::modular;
  o.jobs = a.jobs;
  const auto rep = sweep(o);
  if (!a.out.empty()) write_file(a.out, to_json(rep, a.timing));
  if (!a.csv.empty()) write_file(a.csv, to_csv(rep, a.timing));
  for (const auto& r : rep.results) {
    if (r.status == Status::pass && a.quiet) continue;
    std::cout << to_string(r.theorem) << " r=" << to_string(r.r);
    if (r.cprime) std::cout << " c'=" << to_string(*r.cprime);
    std::cout << " p=" << r.p << " lhs=" << r.lhs << " rhs=" << r.rhs << " " << to_string(r.status);
    if (a.timing) std::cout << " " << r.ms << "ms";
    std::cout << "\n";
  }
  if (!rep.note.empty()) std::cout << rep.note << "\n";
  std::cout << to_string(t) << " (" << to_string(o.backend) << ", p <= " << a.pmax << "): " << rep.count(Status::pass)
            << " pass, " << rep.count(Status::fail) << " fail\n";
  return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergeometric character sums, eta quotients and Hecke eigenforms"};
  app.require_subcommand(1);
  int code = kPass;

  // verify
  auto* verify = app.add_subcommand("verify", "Check a theorem over all split primes up to --pmax");
  verify->require_subcommand(1);
  VerifyArgs va;
  for (const char* name : {"thm1", "thm2", "f1", "f2"}) {
    auto* sub = verify->add_subcommand(name, std::string("Sweep ") + name);
    sub->add_option("--r", va.r, "Values of r (default: the theorem's full set)");
    sub->add_option("--pmax", va.pmax, "Largest prime")->check(CLI::PositiveNumber);
    sub->add_option("--backend", va.backend, "exact or complex")->check(CLI::IsMember({"exact", "complex"}));
    sub->add_option("--jobs", va.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", va.out, "JSON report path");
    sub->add_option("--csv", va.csv, "CSV report path");
    sub->add_flag("--timing", va.timing, "Record wall times");
    sub->add_flag("--quiet", va.quiet, "Only print failures and the summary");
    if (std::string(name) == "f2") sub->add_option("--cprime", va.cprime, "Values of c' (default 1/2 1/4 1/6)");
    sub->callback([&code, &va, name] { code = run_verify(parse_theorem(name), va); });
  }

  // hecke
  auto* hecke = app.add_subcommand("hecke", "Hecke operators on the eta-quotient families");
  hecke->require_subcommand(1);
  std::string family, fixtures = default_fixture_dir();
  bool diff = false;
  int hecke_jobs = 1;
  std::vector<long> primes;
  auto* table = hecke->add_subcommand("table", "Compute (or compare) a Hecke table");
  table->add_option("--family", family, "Family id, e.g. k4-5")->required();
  table->add_flag("--diff", diff, "Compare with the stored fixture and print a unified diff");
  table->add_option("--fixtures", fixtures, "Fixture directory");
  table->add_option("--primes", primes, "Primes (default: the family's table primes)");
  table->add_option("--jobs", hecke_jobs, "Worker threads")->check(CLI::PositiveNumber);
  table->callback([&] {
    if (diff) {
      const auto rep = reproduce_table(family, fixtures, hecke_jobs);
      std::cout << rep.family << ": " << rep.matched << "/" << rep.expected.size() << " cells match\n";
      std::cout << rep.diff;
      code = rep.passed ? kPass : kFail;
      return;
    }
    const auto& fam = find_family(family);
    std::cout << compute_hecke_table(fam, primes.empty() ? fam.table_primes : primes, hecke_jobs).format();
  });
  auto* eigen = hecke->add_subcommand("eigen", "Check every completion of a family");
  eigen->add_option("--family", family, "Family id")->required();
  eigen->add_option("--primes", primes, "Primes (default 5 7 11 13 coprime to the level)");
  eigen->callback([&] {
    const auto& fam = find_family(family);
    std::vector<long> ps = primes;
    if (ps.empty()) {
      for (long p : {5L, 7L, 11L, 13L}) {
        if (fam.level % p != 0) ps.push_back(p);
      }
    }
    for (const auto& c : fam.completions) {
      try {
        const auto rep = verify_eigenform(fam, c, ps);
        std::cout << c.label << ":";
        for (const auto& ch : rep.checks) std::cout << " a" << ch.p << "=" << ch.a_p.to_string();
        std::cout << " eigen\n";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotAnEigenvector) throw;
        std::cout << c.label << ": " << e.what() << "\n";
        code = kFail;
      }
    }
  });

  // series
  auto* series = app.add_subcommand("series", "Formal q-series identities");
  series->require_subcommand(1);
  std::string identity;
  std::int64_t prec = 200;
  auto* ident = series->add_subcommand("identity", "Check a named identity coefficient by coefficient");
  ident->add_option("--name", identity, "Identity name (or 'all')")->required();
  ident->add_option("--prec", prec, "q-precision")->check(CLI::PositiveNumber);
  ident->callback([&] {
    std::vector<std::string> names = identity == "all" ? identity_names() : std::vector<std::string>{identity};
    for (const auto& n : names) {
      const auto rep = check_identity(n, prec);
      std::cout << rep.name << " to q^" << rep.precision << ": " << (rep.passed ? "holds" : "FAILS");
      if (rep.first_mismatch) std::cout << " (first difference at q^" << *rep.first_mismatch << "/24)";
      std::cout << ", " << rep.compared << " coefficients\n";
      if (!rep.passed) code = kFail;
    }
  });

  // congruence
  auto* cong = app.add_subcommand("congruence", "Mod-p congruences");
  cong->require_subcommand(1);
  std::vector<std::string> cong_r;
  std::uint64_t cong_pmax = 500;
  auto add_cong = [&](const char* name, const char* help) {
    auto* sub = cong->add_subcommand(name, help);
    sub->add_option("--r", cong_r, "Values of r");
    sub->add_option("--pmax", cong_pmax, "Largest prime")->check(CLI::PositiveNumber);
    return sub;
  };
  add_cong("ar", "A_r((p-1)r) = -J(r, 2/3-r) mod p")->callback([&] {
    auto rs = cong_r.empty() ? weight2_r_values() : parse_rationals(cong_r);
    std::size_t pass = 0, total = 0;
    for (const auto& r : rs) {
      for (auto p : split_primes(lcd({Rational(1, 3), r}), cong_pmax)) {
        const auto rep = check_ar_congruence(r, p);
        ++total;
        pass += rep.passed;
        if (!rep.passed) std::cout << "r=" << to_string(r) << " p=" << p << " lhs=" << rep.lhs.residue
                                   << " rhs=" << rep.rhs.residue << " fail\n";
      }
    }
    std::cout << "A_r congruence: " << pass << "/" << total << " pass\n";
    code = pass == total ? kPass : kFail;
  });
  add_cong("psi", "psi_HD mod p against the psi column")->callback([&] {
    auto rs = cong_r.empty() ? weight4_r_values() : parse_rationals(cong_r);
    std::size_t pass = 0, total = 0;
    for (const auto& r : rs) {
      const auto hd = k4_datum(r);
      for (auto p : split_primes(hd.M, cong_pmax)) {
        const auto rep = psi_hd_mod_p(hd, -64, p);
        ++total;
        pass += rep.passed;
        if (!rep.passed) std::cout << "r=" << to_string(r) << " p=" << p << " fail\n";
      }
    }
    std::cout << "psi_HD: " << pass << "/" << total << " pass\n";
    code = pass == total ? kPass : kFail;
  });
  add_cong("eigen", "-iota(r)(1/27) a_p = J(r, 2/3-r) mod p")->callback([&] {
    auto rs = cong_r.empty() ? weight2_r_values() : parse_rationals(cong_r);
    std::size_t pass = 0, total = 0;
    for (const auto& r : rs) {
      for (auto p : split_primes(lcd({Rational(1, 3), r}), cong_pmax)) {
        const auto rep = check_eigencoefficient_congruence(r, p);
        ++total;
        pass += rep.passed;
        if (!rep.passed) std::cout << "r=" << to_string(r) << " p=" << p << " fail\n";
      }
    }
    std::cout << "eigencoefficient congruence: " << pass << "/" << total << " pass\n";
    code = pass == total ? kPass : kFail;
  });

  // lmfdb
  auto* lmfdb = app.add_subcommand("lmfdb", "Compare a_p with LMFDB (cached; network only with --network)");
  std::string label;
  std::vector<std::uint64_t> lprimes{7, 13, 19};
  auto lopts = LmfdbOptions::from_env();
  if (lopts.cache_dir.empty()) lopts.cache_dir = default_fixture_dir();
  lmfdb->add_option("--label", label, "Newform label")->required();
  lmfdb->add_option("--primes", lprimes, "Primes");
  lmfdb->add_option("--cache-dir", lopts.cache_dir, "Cache directory (default $HYPMOD_CACHE_DIR, then the bundled fixtures)");
  lmfdb->add_flag("--network", lopts.allow_network, "Allow fetching from $LMFDB_BASE_URL");
  lmfdb->callback([&] {
    const auto rep = lmfdb_crosscheck(label, lprimes, lopts);
    for (const auto& e : rep.entries) std::cout << label << " a_" << e.p << " = " << e.local.get_str() << "\n";
    std::cout << label << ": " << rep.entries.size() << " coefficients agree (" << rep.source << ")\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_usage_error(e.code()) ? kUsage : kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
