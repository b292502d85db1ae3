#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hypmod/arith.hpp"

namespace hypmod {

class NumberField;
using NumberFieldPtr = std::shared_ptr<const NumberField>;

/// Q[x]/(f) for a monic f, power basis 1, x, ..., x^(d-1).
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  /// Coefficients low to high; throws NonMonic.
  static NumberFieldPtr make(std::vector<Rational> poly, std::string generator_name = "x");
  /// Parses "x^4+4*x^2+9" style input in one variable.
  static NumberFieldPtr parse(std::string_view poly, std::string generator_name = "x");

  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  const std::vector<Rational>& poly() const { return poly_; }
  const std::string& generator_name() const { return name_; }

  /// Reduces a polynomial (low to high) modulo f.
  std::vector<Rational> reduce(std::vector<Rational> a) const;

 private:
  NumberField(std::vector<Rational> poly, std::string name) : poly_(std::move(poly)), name_(std::move(name)) {}
  std::vector<Rational> poly_;
  std::string name_;
};

enum class Irreducibility { Reducible, NotRefuted, Proven };

/// Cheap sanity check: rational roots and factor-degree patterns modulo
/// small primes. Proven only when the patterns exclude every proper degree.
Irreducibility irreducibility_check(const NumberField& k);

class NumberFieldElement {
 public:
  NumberFieldElement(NumberFieldPtr field, std::vector<Rational> coords);
  static NumberFieldElement from_rational(NumberFieldPtr field, const Rational& c);
  static NumberFieldElement generator(NumberFieldPtr field);
  /// "den; a0,a1,...,a{d-1}".
  static NumberFieldElement parse_fixture(NumberFieldPtr field, std::string_view text);

  const NumberFieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  /// Set when the element lies in Q.
  bool is_rational() const;

  NumberFieldElement operator+(const NumberFieldElement& o) const;
  NumberFieldElement operator-(const NumberFieldElement& o) const;
  NumberFieldElement operator-() const;
  NumberFieldElement operator*(const NumberFieldElement& o) const;
  NumberFieldElement operator*(const Rational& c) const;
  NumberFieldElement operator/(const NumberFieldElement& o) const { return *this * o.inverse(); }
  /// Throws DivisionByZero.
  NumberFieldElement inverse() const;
  NumberFieldElement pow(long e) const;
  /// Throws FieldMismatch.
  bool operator==(const NumberFieldElement& o) const;
  bool operator!=(const NumberFieldElement& o) const { return !(*this == o); }

  /// d x d matrix of multiplication by this element in the power basis.
  std::vector<std::vector<Rational>> multiplication_matrix() const;

  std::string to_fixture() const;
  std::string to_string() const;

 private:
  NumberFieldPtr field_;
  std::vector<Rational> coords_;
};

/// Throws FieldMismatch unless both handles name the same field.
void require_same_number_field(const NumberFieldPtr& a, const NumberFieldPtr& b);

/// Solves A x = b over Q; throws DivisionByZero when A is singular.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace hypmod
