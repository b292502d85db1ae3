#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypmod/arith.hpp"
#include "hypmod/field.hpp"
#include "hypmod/hecke.hpp"

namespace hypmod {

enum class TheoremId { thm1, thm2, f1, f2 };

std::string to_string(TheoremId t);
/// "thm1", "thm2", "f1", "f2". Throws UnknownName.
TheoremId parse_theorem(const std::string& name);

enum class Status { pass, fail, skipped };

std::string to_string(Status s);
std::string to_string(BackendKind b);

struct VerificationReport {
  TheoremId theorem = TheoremId::thm1;
  Rational r;
  std::optional<Rational> cprime;
  std::uint64_t p = 0;
  BackendKind backend = BackendKind::modular;
  /// lhs: the eigenform side read from the q-expansion. rhs: the character-sum
  /// side reduced to an integer ("non-integer" when it is not one).
  std::string lhs;
  std::string rhs;
  Status status = Status::fail;
  std::string reason;
  double ms = 0;
};

/// r in {1/2,1/3,1/4,1/6,1/8,1/12,1/24}.
const std::vector<Rational>& weight4_r_values();
/// r in {1/2,1/3,1/6,1/12}.
const std::vector<Rational>& weight2_r_values();
/// {1/2, 1/4, 1/6}
const std::vector<Rational>& default_cprimes();

/// q^p coefficient of f_1 = K(r)(N tau); this is a_p(f#) for p = 1 mod N.
/// Expansions are cached and shared between threads.
Integer eigen_coefficient(KFamily kind, const Rational& r, std::uint64_t p);

/// a_p = -(P(HD_K4(r);1) + iota(1/2)(-1) p) / psi(r). Throws PrimeNotSplit,
/// AmbiguousReconstruction.
VerificationReport verify_weight4(const Rational& r, std::uint64_t p, BackendKind backend = BackendKind::modular);

/// -a_p = iota(r)(27) P(HD_K5(r);1) + iota(1-r)(27) P(conj HD;1). Throws PrimeNotSplit.
VerificationReport verify_weight2(const Rational& r, std::uint64_t p, BackendKind backend = BackendKind::modular);

/// -a_p = iota(r)(-27) F1(r;1/6,1/6;1;1,1) + iota(1-r)(-27) F1(1-r;1/3,1/3;1;1,1).
/// Throws PrimeNotSplit.
VerificationReport verify_appell_f1(const Rational& r, std::uint64_t p, BackendKind backend = BackendKind::modular);

/// a_p = iota(r)(-27) iota(c')(-1) F2(1/3;r,1;1,c';1,1) + X
///       + iota(1-r)(-27) iota(c')(-1) F2(2/3;1-r,1;1,c';1,1). Throws PrimeNotSplit.
VerificationReport verify_appell_f2(const Rational& r, const Rational& cprime, std::uint64_t p,
                                    BackendKind backend = BackendKind::modular);

/// Modulus M for which split primes are enumerated.
std::uint64_t split_modulus(TheoremId t, const Rational& r, const std::optional<Rational>& cprime = std::nullopt);

struct SweepOptions {
  TheoremId theorem = TheoremId::thm1;
  std::vector<Rational> rs;        // empty: the theorem's full r-set
  std::vector<Rational> cprimes;   // f2 only; empty: default_cprimes()
  std::uint64_t pmax = 100;
  BackendKind backend = BackendKind::modular;
  int jobs = 1;
};

struct SweepReport {
  TheoremId theorem = TheoremId::thm1;
  std::uint64_t pmax = 0;
  BackendKind backend = BackendKind::modular;
  std::vector<VerificationReport> results;  // sorted by (r, c', p)
  std::string note;

  bool passed() const;
  std::size_t count(Status s) const;
};

SweepReport sweep(const SweepOptions& opts);

inline constexpr int kReportSchemaVersion = 1;

/// JSON report; wall times are included only when `timing` is set so that
/// reports are reproducible byte for byte.
std::string to_json(const SweepReport& rep, bool timing = false);
/// theorem,r,p,lhs,rhs,status,ms
std::string to_csv(const SweepReport& rep, bool timing = false);

}  // namespace hypmod
