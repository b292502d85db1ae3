#include "hypmod/field.hpp"

#include <cmath>
#include <numbers>

#include "hypmod/error.hpp"

namespace hypmod {

namespace {

std::uint64_t least_primitive_root(std::uint64_t p) {
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (auto l : factors) {
      if (powmod(g, (p - 1) / l, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  return 1;  // p = 2 only; rejected earlier
}

}  // namespace

PrimeField::PrimeField(std::uint64_t p) : p_(p), dlog_(p, 0), exp_(p - 1, 0) {
  generator_ = least_primitive_root(p);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < p - 1; ++k) {
    exp_[k] = x;
    dlog_[x] = static_cast<std::uint32_t>(k);
    x = mulmod(x, generator_, p);
  }
}

std::shared_ptr<const PrimeField> PrimeField::build(std::uint64_t p) {
  if (p == 2) throw Error(ErrorCode::EvenPrime, "p = 2 is not supported");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p > (1ULL << 31)) throw Error(ErrorCode::NotPrime, "prime too large for a dlog table");
  return std::shared_ptr<const PrimeField>(new PrimeField(p));
}

Character Character::from_exponent(FieldPtr field, std::int64_t exponent) {
  const auto e = reduce_signed(exponent, field->order());
  return {std::move(field), static_cast<std::uint32_t>(e)};
}

Character Character::from_rational(FieldPtr field, const Rational& r) {
  const Rational scaled = r * Rational(static_cast<unsigned long>(field->order()));
  if (!is_integer(scaled)) {
    throw Error(ErrorCode::DenominatorNotDividing,
                "denominator of " + to_string(r) + " does not divide " + std::to_string(field->order()));
  }
  mpz_class e = scaled.get_num() % mpz_class(static_cast<unsigned long>(field->order()));
  if (e < 0) e += static_cast<unsigned long>(field->order());
  return {std::move(field), static_cast<std::uint32_t>(e.get_ui())};
}

std::optional<std::uint32_t> Character::zeta_exponent(std::int64_t x) const {
  const auto r = field_->reduce(x);
  if (r == 0) return std::nullopt;
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(exponent_) * field_->dlog(r) % field_->order());
}

std::optional<std::uint32_t> Character::zeta_exponent(const Rational& x) const {
  const auto r = field_->reduce(x);
  if (r == 0) return std::nullopt;
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(exponent_) * field_->dlog(r) % field_->order());
}

Character Character::conj() const { return from_exponent(field_, -static_cast<std::int64_t>(exponent_)); }

Character Character::operator*(const Character& other) const {
  require_same_field({this, &other});
  return from_exponent(field_, static_cast<std::int64_t>(exponent_) + other.exponent_);
}

Character Character::pow(std::int64_t k) const {
  const auto n = static_cast<std::int64_t>(field_->order());
  return from_exponent(field_, (static_cast<std::int64_t>(exponent_) * (k % n)) % n);
}

bool Character::operator==(const Character& other) const {
  return field_->p() == other.field_->p() && exponent_ == other.exponent_;
}

void require_same_field(std::initializer_list<const Character*> chars) {
  const Character* first = nullptr;
  for (const auto* c : chars) {
    if (first == nullptr) {
      first = c;
    } else if (c->p() != first->p()) {
      throw Error(ErrorCode::ContextMismatch,
                  "characters over p = " + std::to_string(first->p()) + " and p = " + std::to_string(c->p()));
    }
  }
}

// ---------------------------------------------------------------------------
// BackendValue

void BackendValue::check_compatible(const BackendValue& o) const {
  if (kind() != o.kind()) throw Error(ErrorCode::ContextMismatch, "mixing complex and modular values");
  if (kind() == BackendKind::modular && *as_residues().moduli != *o.as_residues().moduli) {
    throw Error(ErrorCode::ContextMismatch, "residues over different auxiliary primes");
  }
}

BackendValue& BackendValue::operator+=(const BackendValue& o) {
  check_compatible(o);
  if (kind() == BackendKind::complex) {
    std::get<0>(v_) += o.as_complex();
  } else {
    auto& r = std::get<1>(v_);
    const auto& m = *r.moduli;
    for (std::size_t i = 0; i < m.size(); ++i) r.values[i] = (r.values[i] + o.as_residues().values[i]) % m[i];
  }
  return *this;
}

BackendValue& BackendValue::operator-=(const BackendValue& o) {
  check_compatible(o);
  if (kind() == BackendKind::complex) {
    std::get<0>(v_) -= o.as_complex();
  } else {
    auto& r = std::get<1>(v_);
    const auto& m = *r.moduli;
    for (std::size_t i = 0; i < m.size(); ++i) r.values[i] = (r.values[i] + m[i] - o.as_residues().values[i]) % m[i];
  }
  return *this;
}

BackendValue& BackendValue::operator*=(const BackendValue& o) {
  check_compatible(o);
  if (kind() == BackendKind::complex) {
    std::get<0>(v_) *= o.as_complex();
  } else {
    auto& r = std::get<1>(v_);
    const auto& m = *r.moduli;
    for (std::size_t i = 0; i < m.size(); ++i) r.values[i] = mulmod(r.values[i], o.as_residues().values[i], m[i]);
  }
  return *this;
}

BackendValue& BackendValue::operator*=(std::int64_t k) {
  if (kind() == BackendKind::complex) {
    std::get<0>(v_) *= static_cast<double>(k);
  } else {
    auto& r = std::get<1>(v_);
    const auto& m = *r.moduli;
    for (std::size_t i = 0; i < m.size(); ++i) r.values[i] = mulmod(r.values[i], reduce_signed(k, m[i]), m[i]);
  }
  return *this;
}

BackendValue& BackendValue::divide(std::int64_t k) {
  if (k == 0) throw Error(ErrorCode::DivisionByZero, "division of a backend value by 0");
  if (kind() == BackendKind::complex) {
    std::get<0>(v_) /= static_cast<double>(k);
  } else {
    auto& r = std::get<1>(v_);
    const auto& m = *r.moduli;
    for (std::size_t i = 0; i < m.size(); ++i) {
      r.values[i] = mulmod(r.values[i], invmod(reduce_signed(k, m[i]), m[i]), m[i]);
    }
  }
  return *this;
}

BackendValue BackendValue::inverse() const {
  if (kind() == BackendKind::complex) {
    if (std::abs(as_complex()) == 0.0) throw Error(ErrorCode::DivisionByZero, "inverse of 0");
    return BackendValue(1.0 / as_complex());
  }
  Residues r = as_residues();
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = invmod(r.values[i], (*r.moduli)[i]);
  return BackendValue(std::move(r));
}

bool BackendValue::is_zero() const {
  if (kind() == BackendKind::complex) return std::abs(as_complex()) < Evaluator::kRoundingTolerance;
  for (auto v : as_residues().values) {
    if (v != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluator

Evaluator Evaluator::complex(FieldPtr field) {
  Evaluator ev;
  ev.kind_ = BackendKind::complex;
  const auto n = field->order();
  ev.complex_pows_.resize(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    ev.complex_pows_[k] = {std::cos(angle), std::sin(angle)};
  }
  ev.field_ = std::move(field);
  return ev;
}

Evaluator Evaluator::modular(FieldPtr field, const Integer& bound) {
  Evaluator ev;
  ev.kind_ = BackendKind::modular;
  ev.bound_ = bound;
  const auto n = field->order();
  auto moduli = std::make_shared<std::vector<std::uint64_t>>();
  Integer product = 1;
  for (std::uint64_t l = n + 1; product <= 2 * bound || moduli->empty(); l += n) {
    if (l == field->p() || !is_prime(l)) continue;
    moduli->push_back(l);
    product *= static_cast<unsigned long>(l);
    const auto h = PrimeField::build(l)->generator();
    const auto zeta = powmod(h, (l - 1) / n, l);
    std::vector<std::uint64_t> pows(n);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
      pows[k] = x;
      x = mulmod(x, zeta, l);
    }
    ev.modular_pows_.push_back(std::move(pows));
  }
  ev.moduli_ = std::move(moduli);
  ev.field_ = std::move(field);
  return ev;
}

BackendValue Evaluator::from_int(std::int64_t n) const {
  if (kind_ == BackendKind::complex) return BackendValue(std::complex<double>(static_cast<double>(n), 0.0));
  BackendValue::Residues r{moduli_, {}};
  for (auto l : *moduli_) r.values.push_back(reduce_signed(n, l));
  return BackendValue(std::move(r));
}

BackendValue Evaluator::zeta_pow(std::uint64_t e) const {
  const auto k = e % field_->order();
  if (kind_ == BackendKind::complex) return BackendValue(complex_pows_[k]);
  BackendValue::Residues r{moduli_, {}};
  for (const auto& pows : modular_pows_) r.values.push_back(pows[k]);
  return BackendValue(std::move(r));
}

BackendValue Evaluator::eval(const CyclotomicSum& s) const {
  const auto n = field_->order();
  if (s.order() != n) throw Error(ErrorCode::ContextMismatch, "cyclotomic sum of the wrong order");
  if (kind_ == BackendKind::complex) {
    std::complex<double> acc{};
    for (std::uint64_t e = 0; e < n; ++e) {
      if (s.counts[e] != 0) acc += static_cast<double>(s.counts[e]) * complex_pows_[e];
    }
    return BackendValue(acc);
  }
  BackendValue::Residues r{moduli_, {}};
  for (std::size_t i = 0; i < moduli_->size(); ++i) {
    const auto l = (*moduli_)[i];
    const auto& pows = modular_pows_[i];
    __int128 acc = 0;
    for (std::uint64_t e = 0; e < n; ++e) {
      if (s.counts[e] != 0) acc += static_cast<__int128>(s.counts[e]) * pows[e];
    }
    auto m = static_cast<std::int64_t>(acc % static_cast<__int128>(l));
    r.values.push_back(reduce_signed(m, l));
  }
  return BackendValue(std::move(r));
}

BackendValue Evaluator::value(const Character& chi, std::int64_t x) const {
  if (chi.p() != field_->p()) throw Error(ErrorCode::ContextMismatch, "character over a different field");
  const auto e = chi.zeta_exponent(x);
  return e ? zeta_pow(*e) : zero();
}

BackendValue Evaluator::value(const Character& chi, const Rational& x) const {
  if (chi.p() != field_->p()) throw Error(ErrorCode::ContextMismatch, "character over a different field");
  const auto e = chi.zeta_exponent(x);
  return e ? zeta_pow(*e) : zero();
}

Integer Evaluator::to_integer(const BackendValue& v) const { return to_integer(v, bound_); }

Integer Evaluator::to_integer(const BackendValue& v, const Integer& bound) const {
  if (v.kind() != kind_) throw Error(ErrorCode::ContextMismatch, "value from another backend");
  if (kind_ == BackendKind::complex) {
    const auto z = v.as_complex();
    const double re = std::round(z.real());
    if (std::abs(z.real() - re) >= kRoundingTolerance || std::abs(z.imag()) >= kRoundingTolerance) {
      throw Error(ErrorCode::Inconsistent, "complex value (" + std::to_string(z.real()) + ", " +
                                               std::to_string(z.imag()) + ") is not within 1e-4 of an integer");
    }
    return Integer(static_cast<long>(re));
  }
  if (bound > bound_) throw Error(ErrorCode::AmbiguousReconstruction, "bound exceeds the evaluator's bound");
  std::vector<Integer> residues, moduli;
  for (std::size_t i = 0; i < moduli_->size(); ++i) {
    residues.emplace_back(static_cast<unsigned long>(v.as_residues().values[i]));
    moduli.emplace_back(static_cast<unsigned long>((*moduli_)[i]));
  }
  return crt_reconstruct(residues, moduli, bound);
}

// ---------------------------------------------------------------------------
// Character sums

CyclotomicSum jacobi_histogram(const FieldPtr& field, std::uint32_t a, std::uint32_t b) {
  const auto p = field->p();
  const auto n = field->order();
  CyclotomicSum s(n);
  // x = 0 and x = 1 contribute chi(0) = 0.
  for (std::uint64_t x = 2; x < p; ++x) {
    const std::uint64_t e = static_cast<std::uint64_t>(a) * field->dlog(x) + static_cast<std::uint64_t>(b) * field->dlog(p + 1 - x);
    s.counts[e % n] += 1;
  }
  return s;
}

BackendValue jacobi_sum(const Evaluator& ev, const Character& a, const Character& b) {
  require_same_field({&a, &b});
  if (a.p() != ev.field()->p()) throw Error(ErrorCode::ContextMismatch, "evaluator over a different field");
  return ev.eval(jacobi_histogram(ev.field(), a.exponent(), b.exponent()));
}

std::complex<double> gauss_sum(const Evaluator& ev, const Character& chi) {
  if (ev.kind() != BackendKind::complex) {
    throw Error(ErrorCode::BackendUnsupported, "Gauss sums need p-th roots of unity (complex backend only)");
  }
  const auto p = chi.p();
  std::complex<double> acc{};
  for (std::uint64_t x = 1; x < p; ++x) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(p);
    acc += ev.value(chi, static_cast<std::int64_t>(x)).as_complex() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

BackendValue Binomial::normalized(std::uint64_t q) const {
  BackendValue v = numerator;
  for (int i = 0; i < q_power; ++i) v.divide(static_cast<std::int64_t>(q));
  return v;
}

Binomial binomial(const Evaluator& ev, const Character& a, const Character& b) {
  require_same_field({&a, &b});
  auto j = jacobi_sum(ev, a, b.conj());
  j *= b.at_minus_one();
  return {std::move(j), 1};
}

int kronecker_symbol(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw Error(ErrorCode::ParseError, "kronecker_symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const auto a8 = ((a % 8) + 8) % 8;
    if (a8 % 2 == 0) return 0;
    if (a8 == 3 || a8 == 5) result = -result;
  }
  // Jacobi symbol (a/n) for odd n.
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const auto r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

Integer crt_reconstruct(std::span<const Integer> residues, std::span<const Integer> moduli, const Integer& bound) {
  if (residues.size() != moduli.size() || moduli.empty()) {
    throw Error(ErrorCode::LengthMismatch, "residue and modulus lists differ in length");
  }
  Integer x = residues[0] % moduli[0];
  if (x < 0) x += moduli[0];
  Integer m = moduli[0];
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), moduli[i].get_mpz_t());
    const Integer diff = residues[i] - x;
    if (diff % g != 0) throw Error(ErrorCode::Inconsistent, "residues admit no common lift");
    const Integer mi = moduli[i] / g;
    Integer k = (diff / g) * s % mi;
    if (k < 0) k += mi;
    x += m * k;
    m *= mi;
    x %= m;
  }
  if (m <= 2 * bound) {
    throw Error(ErrorCode::AmbiguousReconstruction,
                "modulus " + m.get_str() + " does not exceed twice the bound " + bound.get_str());
  }
  if (2 * x > m) x -= m;
  if (abs(x) > bound) throw Error(ErrorCode::Inconsistent, "lift " + x.get_str() + " exceeds bound " + bound.get_str());
  return x;
}

}  // namespace hypmod
