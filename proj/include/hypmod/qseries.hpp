#pragma once

#include <algorithm>
#include <cstdint>
#include <type_traits>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hypmod/arith.hpp"
#include "hypmod/error.hpp"

namespace hypmod {

/// Exponents are integers n standing for q^(n/24).
inline constexpr std::int64_t kGrid = 24;

namespace detail {

inline bool is_unit(const Integer& c) { return c == 1 || c == -1; }
inline bool is_unit(const Rational& c) { return c != 0; }

template <class R>
R ring_inverse(const R& c) {
  if constexpr (std::is_same_v<R, Integer>) {
    return c;  // +-1
  } else {
    return R(1) / c;
  }
}

// (n * b_n) = sum_{k=1..n} ((alpha+1)k - n) a_k b_{n-k}, a_0 = 1.
template <class R>
std::vector<R> unit_power(const std::vector<R>& a, const Rational& alpha, std::size_t len) {
  std::vector<R> b(len);
  if (len == 0) return b;
  b[0] = 1;
  std::vector<std::size_t> support;
  for (std::size_t k = 1; k < a.size() && k < len; ++k) {
    if (a[k] != 0) support.push_back(k);
  }
  for (std::size_t n = 1; n < len; ++n) {
    if constexpr (std::is_same_v<R, Integer>) {
      const Integer al = alpha.get_num();  // integral alpha only
      Integer acc = 0;
      for (auto k : support) {
        if (k > n) break;
        if (b[n - k] == 0) continue;
        acc += ((al + 1) * static_cast<long>(k) - static_cast<long>(n)) * a[k] * b[n - k];
      }
      mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
      b[n] = std::move(acc);
    } else {
      Rational acc = 0;
      for (auto k : support) {
        if (k > n) break;
        if (b[n - k] == 0) continue;
        acc += ((alpha + 1) * static_cast<long>(k) - static_cast<long>(n)) * a[k] * b[n - k];
      }
      b[n] = acc / static_cast<long>(n);
    }
  }
  return b;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  auto q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace detail

/// Truncated formal series sum c_i q^((start + i*step)/24); every exponent
/// below prec (grid units) is exact, everything at or above prec is unknown.
template <class R>
class FormalQSeries {
 public:
  FormalQSeries() = default;

  FormalQSeries(std::int64_t start, std::int64_t step, std::vector<R> coeffs, std::int64_t prec)
      : start_(start), step_(step), prec_(prec), coeffs_(std::move(coeffs)) {
    if (step_ <= 0) throw Error(ErrorCode::OffGridFactor, "series step must be positive");
    coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, detail::ceil_div(prec_ - start_, step_))));
  }

  static FormalQSeries monomial(const R& c, std::int64_t exponent, std::int64_t prec) {
    return FormalQSeries(exponent, kGrid, {c}, prec);
  }
  static FormalQSeries constant(const R& c, std::int64_t prec) { return monomial(c, 0, prec); }

  std::int64_t start() const { return start_; }
  std::int64_t step() const { return step_; }
  std::int64_t prec() const { return prec_; }
  const std::vector<R>& coeffs() const { return coeffs_; }
  std::int64_t exponent_at(std::size_t i) const { return start_ + static_cast<std::int64_t>(i) * step_; }

  /// Coefficient of q^(g/24). Throws BeyondPrecision when g >= prec.
  R coefficient_grid(std::int64_t g) const {
    if (g >= prec_) {
      throw Error(ErrorCode::BeyondPrecision,
                  "exponent " + std::to_string(g) + "/24 is beyond precision " + std::to_string(prec_) + "/24");
    }
    if (g < start_ || (g - start_) % step_ != 0) return R(0);
    return coeffs_[static_cast<std::size_t>((g - start_) / step_)];
  }

  /// Coefficient of q^n for integer n.
  R coefficient_at(std::int64_t n) const { return coefficient_grid(n * kGrid); }

  std::optional<std::int64_t> leading_exponent() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return exponent_at(i);
    }
    return std::nullopt;
  }

  /// Leading exponent, or prec when nothing is known to be nonzero.
  std::int64_t valuation() const { return leading_exponent().value_or(prec_); }

  bool on_integer_grid() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0 && exponent_at(i) % kGrid != 0) return false;
    }
    return true;
  }

  /// Drops leading zeros and coarsens the step to the gcd of the support.
  FormalQSeries normalized() const {
    const auto lead = leading_exponent();
    if (!lead) return FormalQSeries(prec_, kGrid, {}, prec_);
    std::int64_t g = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) g = std::gcd(g, exponent_at(i) - *lead);
    }
    // Keep the lattice inside the 1/24 grid spacing used by most callers.
    if (g == 0) g = std::max<std::int64_t>(step_, kGrid);
    std::vector<R> out(static_cast<std::size_t>(detail::ceil_div(prec_ - *lead, g)));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) out[static_cast<std::size_t>((exponent_at(i) - *lead) / g)] = coeffs_[i];
    }
    return FormalQSeries(*lead, g, std::move(out), prec_);
  }

  FormalQSeries truncated(std::int64_t prec) const {
    if (prec > prec_) throw Error(ErrorCode::InsufficientPrecision, "cannot raise precision by truncation");
    std::vector<R> out;
    for (std::size_t i = 0; i < coeffs_.size() && exponent_at(i) < prec; ++i) out.push_back(coeffs_[i]);
    return FormalQSeries(start_, step_, std::move(out), prec);
  }

  /// Multiplies by q^(g/24).
  FormalQSeries shifted(std::int64_t g) const { return FormalQSeries(start_ + g, step_, coeffs_, prec_ + g); }

  /// q -> q^N.
  FormalQSeries rescale(std::int64_t n) const {
    if (n <= 0) throw Error(ErrorCode::PrecisionUnderflow, "rescale factor must be positive");
    if (coeffs_.empty()) throw Error(ErrorCode::PrecisionUnderflow, "series has no coefficient within precision");
    return FormalQSeries(start_ * n, step_ * n, coeffs_, prec_ * n);
  }

  FormalQSeries operator-() const {
    FormalQSeries out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend FormalQSeries operator+(const FormalQSeries& a, const FormalQSeries& b) { return combine(a, b, 1); }
  friend FormalQSeries operator-(const FormalQSeries& a, const FormalQSeries& b) { return combine(a, b, -1); }

  friend FormalQSeries operator*(const R& k, FormalQSeries a) {
    for (auto& c : a.coeffs_) c *= k;
    return a;
  }

  friend FormalQSeries operator*(const FormalQSeries& a, const FormalQSeries& b) {
    const auto va = a.valuation(), vb = b.valuation();
    const auto prec = std::min(a.prec_ + vb, b.prec_ + va);
    const auto step = std::gcd(a.step_, b.step_);
    const auto start = va + vb;
    std::vector<R> out(static_cast<std::size_t>(std::max<std::int64_t>(0, detail::ceil_div(prec - start, step))));
    std::vector<std::pair<std::int64_t, const R*>> nb;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] != 0) nb.emplace_back(b.exponent_at(j), &b.coeffs_[j]);
    }
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      const auto ea = a.exponent_at(i);
      for (const auto& [eb, cb] : nb) {
        const auto e = ea + eb;
        if (e >= prec) break;
        out[static_cast<std::size_t>((e - start) / step)] += a.coeffs_[i] * *cb;
      }
    }
    return FormalQSeries(start, step, std::move(out), prec);
  }

  /// Exact inverse of a series whose leading coefficient is a unit.
  FormalQSeries inverse() const {
    const auto lead = leading_exponent();
    if (!lead) throw Error(ErrorCode::NonInvertibleSeries, "series is zero to its precision");
    const auto n = normalized();
    const R& c = n.coeffs_.front();
    if (!detail::is_unit(c)) throw Error(ErrorCode::NonInvertibleSeries, "leading coefficient is not a unit");
    const R cinv = detail::ring_inverse(c);
    std::vector<R> t(n.coeffs_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = n.coeffs_[i] * cinv;
    const auto u = detail::unit_power(t, Rational(-1), t.size());
    std::vector<R> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * cinv;
    const auto rel = prec_ - *lead;
    return FormalQSeries(-*lead, n.step_, std::move(out), rel - *lead);
  }

  friend FormalQSeries operator/(const FormalQSeries& a, const FormalQSeries& b) { return a * b.inverse(); }

  /// Integer power; negative powers need a unit leading coefficient.
  FormalQSeries pow(std::int64_t e) const {
    const auto lead = leading_exponent();
    if (!lead) {
      if (e > 0) return FormalQSeries(prec_ * e, kGrid, {}, prec_ * e);
      throw Error(ErrorCode::NonInvertibleSeries, "power of a zero series");
    }
    const auto n = normalized();
    const R& c = n.coeffs_.front();
    if (e < 0 && !detail::is_unit(c)) throw Error(ErrorCode::NonInvertibleSeries, "leading coefficient is not a unit");
    R cinv = detail::is_unit(c) ? detail::ring_inverse(c) : R(1);
    std::vector<R> t(n.coeffs_.size());
    if (detail::is_unit(c)) {
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = n.coeffs_[i] * cinv;
    } else {
      // Non-unit leading coefficient over the integers: repeated squaring.
      FormalQSeries acc = constant(R(1), prec_ * (e > 0 ? e : 1));
      FormalQSeries base = *this;
      auto k = e;
      bool first = true;
      while (k > 0) {
        if (k & 1) {
          acc = first ? base : acc * base;
          first = false;
        }
        k >>= 1;
        if (k > 0) base = base * base;
      }
      return acc;
    }
    auto u = detail::unit_power(t, Rational(static_cast<long>(e)), t.size());
    R ce = R(1);
    const R& factor = e >= 0 ? c : cinv;
    for (std::int64_t i = 0; i < (e >= 0 ? e : -e); ++i) ce *= factor;
    for (auto& x : u) x *= ce;
    const auto rel = prec_ - *lead;
    return FormalQSeries(*lead * e, n.step_, std::move(u), *lead * e + rel);
  }

  template <class S>
  FormalQSeries<S> convert() const {
    std::vector<S> out(coeffs_.begin(), coeffs_.end());
    return FormalQSeries<S>(start_, step_, std::move(out), prec_);
  }

  /// Replaces the coefficient at grid exponent g (must be in range).
  void set_coefficient_grid(std::int64_t g, const R& value) {
    if (g >= prec_ || g < start_ || (g - start_) % step_ != 0) {
      // Re-lattice onto a step that contains g.
      const auto s = std::min(start_, g);
      auto step = std::gcd(step_, std::gcd(std::abs(g - s), std::abs(start_ - s)));
      if (step == 0) step = step_;
      if (g >= prec_) throw Error(ErrorCode::BeyondPrecision, "cannot set beyond precision");
      std::vector<R> out(static_cast<std::size_t>(detail::ceil_div(prec_ - s, step)));
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[static_cast<std::size_t>((exponent_at(i) - s) / step)] = coeffs_[i];
      }
      *this = FormalQSeries(s, step, std::move(out), prec_);
    }
    coeffs_[static_cast<std::size_t>((g - start_) / step_)] = value;
  }

 private:
  static FormalQSeries combine(const FormalQSeries& a, const FormalQSeries& b, int sign) {
    const auto prec = std::min(a.prec_, b.prec_);
    const auto start = std::min(a.start_, b.start_);
    auto step = std::gcd(std::gcd(a.step_, b.step_), std::abs(a.start_ - b.start_));
    std::vector<R> out(static_cast<std::size_t>(std::max<std::int64_t>(0, detail::ceil_div(prec - start, step))));
    for (std::size_t i = 0; i < a.coeffs_.size() && a.exponent_at(i) < prec; ++i) {
      out[static_cast<std::size_t>((a.exponent_at(i) - start) / step)] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size() && b.exponent_at(i) < prec; ++i) {
      auto& slot = out[static_cast<std::size_t>((b.exponent_at(i) - start) / step)];
      if (sign > 0) {
        slot += b.coeffs_[i];
      } else {
        slot -= b.coeffs_[i];
      }
    }
    return FormalQSeries(start, step, std::move(out), prec);
  }

  std::int64_t start_ = 0;
  std::int64_t step_ = kGrid;
  std::int64_t prec_ = 0;
  std::vector<R> coeffs_;
};

using IntSeries = FormalQSeries<Integer>;
using RatSeries = FormalQSeries<Rational>;

/// One factor eta(d tau)^e of an eta quotient.
struct EtaFactor {
  Rational d;
  long e = 0;
};

/// Validates a factor against the 1/24 grid; throws OffGridFactor.
void check_eta_factor(const EtaFactor& f);

/// q^(d e/24) prod_n (1 - q^(d n))^e, exact below q^precision.
IntSeries eta_series(const Rational& d, long e, std::int64_t precision);

/// prod eta(d_i tau)^(e_i), exact below q^precision.
IntSeries eta_quotient(const std::vector<EtaFactor>& factors, std::int64_t precision);

/// 0 < r < 1, 24 r integral.
bool in_S4(const Rational& r);
/// 0 < r < 2/3, 12 r integral.
bool in_S5(const Rational& r);
std::vector<Rational> S4_values();
std::vector<Rational> S5_values();

std::vector<EtaFactor> k4_factors(const Rational& r);
std::vector<EtaFactor> k5_factors(const Rational& r);

/// K4(r) = eta(2 tau)^(24r-8) eta(tau)^(16-24r). Throws NotInS4.
IntSeries k4_series(const Rational& r, std::int64_t precision);
/// K5(r) = eta(3 tau)^(12r-2) eta(tau)^(6-12r). Throws NotInS5.
IntSeries k5_series(const Rational& r, std::int64_t precision);

/// Names: theta2, theta3, theta4, a, b, c. Throws UnknownName.
IntSeries theta_and_borwein(const std::string& name, std::int64_t precision);

/// Names: t2, t3.
IntSeries hauptmodul(const std::string& name, std::int64_t precision);

/// Truncated sum_k prod (a_i)_k / prod (b_i)_k t^k / k!, with t stored as q.
/// Throws PoleInLowerParameter.
RatSeries classical_hyp_series(const std::vector<Rational>& alpha, const std::vector<Rational>& beta,
                               std::int64_t precision);

/// s^exponent for s with constant term exactly 1. Throws NonUnitConstantTerm.
RatSeries frac_power(const RatSeries& s, const Rational& exponent, std::int64_t precision);

/// q (ds/dq) / s. Throws NonInvertibleSeries.
RatSeries q_log_derivative(const RatSeries& s);

/// sum_k f_k t^k, where f is a series in t (stored with t as q) and t has
/// positive valuation.
RatSeries compose(const RatSeries& f, const IntSeries& t);

/// Coefficient of q^n; throws BeyondPrecision.
template <class R>
R coefficient_at(const FormalQSeries<R>& s, std::int64_t n) {
  return s.coefficient_at(n);
}

/// Offset and gcd of (exponent - offset) over the nonzero support, in q units
/// for an integer-grid series. gap is 0 when the support is a single point.
struct SupportShape {
  std::int64_t offset = 0;
  std::int64_t gap = 0;
};
SupportShape support_shape(const IntSeries& s);

struct IdentityReport {
  std::string name;
  std::int64_t precision = 0;
  bool passed = false;
  std::optional<std::int64_t> first_mismatch;  // grid exponent
  std::size_t compared = 0;
};

struct IdentityOptions {
  /// Adds 1 to the right-hand side at this grid exponent (negative control).
  std::optional<std::int64_t> perturb_grid_exponent;
};

/// Catalog: 3F2_hauptmodul, derivative, hauptmodul_theta, K4eval[:r],
/// K5eval[:r], cubic_t3, cubic_one_minus_t3, cubic_derivative, derivative-2,
/// borwein_cubic, eta_inverse.
std::vector<std::string> identity_names();

IdentityReport check_identity(const std::string& name, std::int64_t precision, const IdentityOptions& options = {});

/// Like check_identity but throws IdentityFails naming the first differing exponent.
IdentityReport verify_identity(const std::string& name, std::int64_t precision, const IdentityOptions& options = {});

/// Fixture lines "n/24<TAB>value" for every exponent below prec.
void write_series_fixture(std::ostream& out, const RatSeries& s);
struct FixtureLine {
  std::int64_t grid_exponent = 0;
  std::string value;
};
std::vector<FixtureLine> read_series_fixture(std::istream& in);

}  // namespace hypmod
