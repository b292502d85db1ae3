#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hypmod/arith.hpp"

namespace hypmod {

/// F_p for an odd prime p, with the least primitive root g and a full
/// discrete-log table. Immutable once built; share through FieldPtr.
class PrimeField {
 public:
  /// Throws NotPrime / EvenPrime.
  static std::shared_ptr<const PrimeField> build(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  std::uint64_t order() const { return p_ - 1; }
  std::uint64_t generator() const { return generator_; }

  /// dlog(g^k) = k for x in [1, p).
  std::uint32_t dlog(std::uint64_t x) const { return dlog_[x % p_]; }
  std::uint64_t gen_pow(std::uint64_t k) const { return exp_[k % (p_ - 1)]; }
  std::uint32_t dlog_minus_one() const { return static_cast<std::uint32_t>((p_ - 1) / 2); }

  std::uint64_t reduce(std::int64_t x) const { return reduce_signed(x, p_); }
  /// Rational reduced mod p; the denominator must be a unit.
  std::uint64_t reduce(const Rational& x) const { return rational_mod(x, p_); }

 private:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p_;
  std::uint64_t generator_ = 0;
  std::vector<std::uint32_t> dlog_;  // index 0 unused
  std::vector<std::uint64_t> exp_;
};

using FieldPtr = std::shared_ptr<const PrimeField>;

/// chi(g^k) = zeta^(exponent * k), chi(0) = 0, with zeta a primitive
/// (p-1)-th root of unity fixed by the active backend.
class Character {
 public:
  static Character trivial(FieldPtr field) { return {std::move(field), 0}; }
  static Character from_exponent(FieldPtr field, std::int64_t exponent);
  /// iota_p(r): exponent (p-1)*r mod (p-1). Throws DenominatorNotDividing.
  static Character from_rational(FieldPtr field, const Rational& r);

  const FieldPtr& field() const { return field_; }
  std::uint64_t p() const { return field_->p(); }
  std::uint32_t exponent() const { return exponent_; }
  bool is_trivial() const { return exponent_ == 0; }

  /// Exponent of zeta giving chi(x); nullopt when x = 0 mod p.
  std::optional<std::uint32_t> zeta_exponent(std::int64_t x) const;
  std::optional<std::uint32_t> zeta_exponent(const Rational& x) const;

  /// chi(-1) = (-1)^exponent.
  int at_minus_one() const { return (exponent_ & 1U) ? -1 : 1; }

  Character conj() const;
  Character operator*(const Character& other) const;
  Character pow(std::int64_t k) const;
  bool operator==(const Character& other) const;

 private:
  Character(FieldPtr field, std::uint32_t exponent) : field_(std::move(field)), exponent_(exponent) {}

  FieldPtr field_;
  std::uint32_t exponent_;
};

/// Throws ContextMismatch unless every character lives over the same p.
void require_same_field(std::initializer_list<const Character*> chars);

/// Exact element sum_e counts[e] * zeta^e of Z[zeta_{p-1}], in the
/// unreduced basis of Z[x]/(x^(p-1) - 1). Character sums are built as these
/// histograms and only then evaluated in a backend.
struct CyclotomicSum {
  std::vector<std::int64_t> counts;

  explicit CyclotomicSum(std::uint64_t order = 0) : counts(order, 0) {}
  std::uint64_t order() const { return counts.size(); }
  void add(std::uint64_t e, std::int64_t weight = 1) { counts[e % counts.size()] += weight; }
};

enum class BackendKind { complex, modular };

/// A value on one of the two evaluation backends. Residues are paired with
/// the moduli they were computed under.
class BackendValue {
 public:
  struct Residues {
    std::shared_ptr<const std::vector<std::uint64_t>> moduli;
    std::vector<std::uint64_t> values;
  };

  BackendValue() : v_(std::complex<double>{}) {}
  explicit BackendValue(std::complex<double> z) : v_(z) {}
  explicit BackendValue(Residues r) : v_(std::move(r)) {}

  BackendKind kind() const { return v_.index() == 0 ? BackendKind::complex : BackendKind::modular; }
  const std::complex<double>& as_complex() const { return std::get<0>(v_); }
  const Residues& as_residues() const { return std::get<1>(v_); }

  BackendValue& operator+=(const BackendValue& o);
  BackendValue& operator-=(const BackendValue& o);
  BackendValue& operator*=(const BackendValue& o);
  BackendValue& operator*=(std::int64_t k);
  /// Exact division by a nonzero integer (inverse mod each auxiliary prime).
  BackendValue& divide(std::int64_t k);
  /// Multiplicative inverse; throws DivisionByZero on a zero residue.
  BackendValue inverse() const;

  friend BackendValue operator+(BackendValue a, const BackendValue& b) { return a += b; }
  friend BackendValue operator-(BackendValue a, const BackendValue& b) { return a -= b; }
  friend BackendValue operator*(BackendValue a, const BackendValue& b) { return a *= b; }
  friend BackendValue operator*(BackendValue a, std::int64_t k) { return a *= k; }
  friend BackendValue operator*(std::int64_t k, BackendValue a) { return a *= k; }

  bool is_zero() const;

 private:
  void check_compatible(const BackendValue& o) const;

  std::variant<std::complex<double>, Residues> v_;
};

/// Binds a backend to a field: maps zeta to exp(2 pi i/(p-1)) (complex) or
/// to an element of exact order p-1 in each auxiliary F_l, l = 1 mod (p-1).
class Evaluator {
 public:
  static Evaluator complex(FieldPtr field);
  /// Uses the smallest primes l = 1 mod (p-1), l != p, with prod l > 2*bound.
  static Evaluator modular(FieldPtr field, const Integer& bound);

  BackendKind kind() const { return kind_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<std::uint64_t>& moduli() const { return *moduli_; }
  const Integer& bound() const { return bound_; }

  BackendValue zero() const { return from_int(0); }
  BackendValue one() const { return from_int(1); }
  BackendValue from_int(std::int64_t n) const;
  BackendValue zeta_pow(std::uint64_t e) const;
  BackendValue eval(const CyclotomicSum& s) const;
  /// chi(x) with chi(0) = 0.
  BackendValue value(const Character& chi, std::int64_t x) const;
  BackendValue value(const Character& chi, const Rational& x) const;

  /// Integer represented by v. Complex: nearest integer, failing
  /// (Inconsistent) when farther than 1e-4 in either component. Modular:
  /// CRT with |x| <= bound, where bound must not exceed the construction bound.
  Integer to_integer(const BackendValue& v) const;
  Integer to_integer(const BackendValue& v, const Integer& bound) const;

  static constexpr double kRoundingTolerance = 1e-4;

 private:
  Evaluator() = default;

  BackendKind kind_ = BackendKind::complex;
  FieldPtr field_;
  Integer bound_;
  std::shared_ptr<const std::vector<std::uint64_t>> moduli_ = std::make_shared<std::vector<std::uint64_t>>();
  std::vector<std::complex<double>> complex_pows_;
  std::vector<std::vector<std::uint64_t>> modular_pows_;
};

/// Exponent histogram of J(A,B) = sum_x A(x) B(1-x).
CyclotomicSum jacobi_histogram(const FieldPtr& field, std::uint32_t a, std::uint32_t b);

/// J(A,B) by the raw O(p) sum. Throws ContextMismatch.
BackendValue jacobi_sum(const Evaluator& ev, const Character& a, const Character& b);

/// g(chi) = sum_x chi(x) exp(2 pi i x/p). Complex backend only.
std::complex<double> gauss_sum(const Evaluator& ev, const Character& chi);

/// Greene's binomial (A over B) = B(-1) J(A, conj B) / q, kept as a
/// numerator with the power of q still to divide out.
struct Binomial {
  BackendValue numerator;
  int q_power = 1;

  /// numerator / q^q_power.
  BackendValue normalized(std::uint64_t q) const;
  /// The unnormalized value q^(q_power) * (A over B), i.e. the numerator.
  const BackendValue& scaled() const { return numerator; }
};

Binomial binomial(const Evaluator& ev, const Character& a, const Character& b);

/// Kronecker symbol (a/n) for n >= 1.
int kronecker_symbol(std::int64_t a, std::int64_t n);

/// The unique x with |x| <= bound and x = residues[i] mod moduli[i].
/// Throws AmbiguousReconstruction when prod moduli <= 2*bound and
/// Inconsistent when the CRT lift exceeds the bound.
Integer crt_reconstruct(std::span<const Integer> residues, std::span<const Integer> moduli, const Integer& bound);

}  // namespace hypmod
