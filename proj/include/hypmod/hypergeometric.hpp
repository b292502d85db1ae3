#pragma once

#include <optional>
#include <vector>

#include "hypmod/field.hpp"

namespace hypmod {

enum class NamedFamily { none, k4, k5 };

/// alpha = {r_1..r_n}, beta = {q_1 = 1, q_2..q_n}.
struct HypergeometricDatum {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
  std::uint64_t M = 1;
  bool primitive = false;
  Rational gamma;
  NamedFamily family = NamedFamily::none;
  Rational family_r;
  /// Leading constant of the attached Hauptmodul (-64 for K4, 27 for K5).
  std::optional<long> C1;

  std::size_t length() const { return alpha.size(); }
};

/// Throws LengthMismatch, MissingUnitLowerParameter.
HypergeometricDatum make_datum(std::vector<Rational> alpha, std::vector<Rational> beta);

/// {{1/2,1/2,1/2,r},{1,1,1,r+1/2}}
HypergeometricDatum k4_datum(const Rational& r);
/// {{1/3,r},{1,1}}
HypergeometricDatum k5_datum(const Rational& r);
/// {{2/3,1-r},{1,1}}
HypergeometricDatum k5_conjugate_datum(const Rational& r);

/// Characters R_1..R_n over Q_1 = trivial, Q_2..Q_n.
struct DatumCharacters {
  std::vector<Character> top;
  std::vector<Character> bottom;  // Q_2..Q_n, one shorter than top

  std::size_t length() const { return top.size(); }
  void check() const;  // shape and shared field; throws
};

/// iota_p of every parameter. Throws PrimeNotSplit when p != 1 mod M.
DatumCharacters datum_characters(const HypergeometricDatum& hd, const FieldPtr& field);

/// Greene's n+1 F n with the chi-sum evaluated on deferred divisors.
BackendValue greene_F(const Evaluator& ev, const DatumCharacters& chars, const Rational& z);

/// The period function (P-normalization). For length one, conj(R_1)(1-z).
/// Throws ZArgumentZero.
BackendValue period_P(const Evaluator& ev, const DatumCharacters& chars, const Rational& z);

/// Same sum without the q^(n+1) normalization, i.e. period_P / q^(n+1) with
/// n+1 the datum length.
BackendValue period_P_unnormalized(const Evaluator& ev, const DatumCharacters& chars, const Rational& z);

/// P(HD; z; p). Throws PrimeNotSplit, ZArgumentZero.
BackendValue P_HD(const Evaluator& ev, const HypergeometricDatum& hd, const Rational& z);

/// P(HD; z; p) / prod_{i>=2} J(iota(r_i), iota(q_i - r_i)).
/// Throws NotPrimitive, ZeroDenominatorJacobi.
BackendValue H_q(const Evaluator& ev, const HypergeometricDatum& hd, const Rational& z);

/// F_1(R1; R2, R3; R4; x, y) by direct summation over u.
BackendValue appell_F1(const Evaluator& ev, const Character& r1, const Character& r2, const Character& r3,
                       const Character& r4, const Rational& x, const Rational& y);

/// F_2(R1; R2, R3; R4, R5; x, y) by direct summation over (u, v).
BackendValue appell_F2(const Evaluator& ev, const Character& r1, const Character& r2, const Character& r3,
                       const Character& r4, const Character& r5, const Rational& x, const Rational& y);

/// Right-hand side of the inversion z -> 1/z for period functions:
/// P[A; B | 1/t] = A_1(-t) prod A_i B_i(-1) * P[A_1, A_1 conj(B_i); A_1 conj(A_i) | t].
struct TransformedDatum {
  DatumCharacters chars;
  int sign = 1;                      // prod A_i B_i(-1)
  std::uint32_t zeta_exponent = 0;   // A_1(-t) = zeta^zeta_exponent

  BackendValue prefactor(const Evaluator& ev) const { return ev.zeta_pow(zeta_exponent) * sign; }
};

/// Throws TZero.
TransformedDatum transform_P(const DatumCharacters& chars, const Rational& t);

}  // namespace hypmod
