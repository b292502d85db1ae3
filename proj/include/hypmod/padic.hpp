#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypmod/arith.hpp"
#include "hypmod/hypergeometric.hpp"

namespace hypmod {

/// A residue in {0, ..., p-1}.
struct ModPValue {
  std::uint64_t residue = 0;
  std::uint64_t p = 0;

  /// Representative in (-p/2, p/2].
  std::int64_t centered() const;
  bool operator==(const ModPValue& o) const { return residue == o.residue && p == o.p; }
};

ModPValue mod_p(const Rational& x, std::uint64_t p);

/// Gamma_p(x) mod p through the representative of x in {0..p-1}, Gamma_p(0) = 1.
/// Throws DenominatorDivisibleByP.
ModPValue gamma_p(const Rational& x, std::uint64_t p);

/// iota_p(r)(x) mod p = x^((p-1)(1-r) mod (p-1)): the Teichmueller reduction
/// with iota_p(1/(p-1)) = conj(omega). Throws DenominatorNotDividing.
ModPValue iota_mod_p(const Rational& r, const Rational& x, std::uint64_t p);

/// sum_x x^A (1-x)^B mod p with A = (p-1)(1-a), B = (p-1)(1-b) taken in 1..p-1.
/// Throws DenominatorNotDividing.
ModPValue jacobi_mod_p(const Rational& a, const Rational& b, std::uint64_t p);

/// (r + 1/3)_k / k!.
Rational a_r_coefficient(const Rational& r, std::uint64_t k);

struct ArCongruenceReport {
  Rational r;
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  Rational a_r;     // A_r(k) exactly
  ModPValue lhs;    // A_r(k) mod p
  ModPValue rhs;    // -J(r, 2/3 - r) mod p
  bool passed = false;
};

/// A_r((p-1)r) = -J(r, 2/3 - r) mod p. Throws PrimeNotSplit.
ArCongruenceReport check_ar_congruence(const Rational& r, std::uint64_t p);

struct PsiReport {
  Rational r;
  std::uint64_t p = 0;
  ModPValue gamma_side;      // (-1)^(n-1) C1^((p-1)r_n) Gamma_p(q_n - r_n) / prod Gamma_p(r_i)
  ModPValue character_side;  // iota_p(r_n)(C1)
  ModPValue table_side;      // the psi(r) column entry, when the datum has one
  ModPValue quadratic;       // iota_p(1/2)(-1)
  /// gamma_side = quadratic * character_side and character_side = table_side.
  bool passed = false;
};

/// Throws PrimeNotSplit.
PsiReport psi_hd_mod_p(const HypergeometricDatum& hd, long C1, std::uint64_t p);

/// The psi(r) entry for K4(r) as (s, x) with psi = iota(s)(x).
struct PsiEntry {
  Rational s;
  long x = 1;
};
PsiEntry psi_table_entry(const Rational& r);

struct EigenCongruenceReport {
  Rational r;
  std::uint64_t p = 0;
  long a_p = 0;
  ModPValue lhs;        // -iota(r)(1/27) a_p
  ModPValue rhs;        // J(r, 2/3 - r)
  ModPValue companion;  // iota(1-r)(27) J(1-r, r-2/3), expected 0
  bool passed = false;
};

/// -iota(r)(1/27) a_p = J(r, 2/3 - r) and iota(1-r)(27) J(1-r, r-2/3) = 0 mod p,
/// with a_p read from the K5 eigenform. Throws PrimeNotSplit, NotInS5.
EigenCongruenceReport check_eigencoefficient_congruence(const Rational& r, std::uint64_t p);

}  // namespace hypmod
