#include "hypmod/hypergeometric.hpp"

#include "hypmod/error.hpp"

namespace hypmod {

namespace {

const Rational kHalf(1, 2);
const Rational kThird(1, 3);

bool is_k4_shape(const std::vector<Rational>& alpha, const std::vector<Rational>& beta) {
  if (alpha.size() != 4) return false;
  for (int i = 0; i < 3; ++i) {
    if (alpha[i] != kHalf || beta[i] != 1) return false;
  }
  return beta[3] == alpha[3] + kHalf;
}

bool is_k5_shape(const std::vector<Rational>& alpha, const std::vector<Rational>& beta) {
  return alpha.size() == 2 && alpha[0] == kThird && beta[0] == 1 && beta[1] == 1;
}

// chi(z) exponent, or nullopt when z = 0 mod p.
std::optional<std::uint64_t> dlog_of(const PrimeField& f, const Rational& z) {
  const auto r = f.reduce(z);
  if (r == 0) return std::nullopt;
  return f.dlog(r);
}

// S(z) = sum_chi prod_i Q_i chi(-1) J(R_i chi, conj(Q_i chi)) chi(z), with Q_1 trivial.
BackendValue deferred_chi_sum(const Evaluator& ev, const DatumCharacters& chars, const Rational& z) {
  chars.check();
  const auto& field = *ev.field();
  if (chars.top.front().p() != field.p()) throw Error(ErrorCode::ContextMismatch, "datum over another field");
  const auto n = field.order();
  const auto zlog = dlog_of(field, z);
  if (!zlog) return ev.zero();

  const std::size_t m = chars.length();
  std::vector<std::uint64_t> rho(m), kappa(m, 0);
  for (std::size_t i = 0; i < m; ++i) rho[i] = chars.top[i].exponent();
  for (std::size_t i = 1; i < m; ++i) kappa[i] = chars.bottom[i - 1].exponent();

  BackendValue total = ev.zero();
  for (std::uint64_t k = 0; k < n; ++k) {
    BackendValue term = ev.zeta_pow(k * *zlog);
    int sign = 1;
    for (std::size_t i = 0; i < m; ++i) {
      const auto a = static_cast<std::uint32_t>((rho[i] + k) % n);
      const auto b = static_cast<std::uint32_t>((2 * n - (kappa[i] + k) % n) % n);
      if (((kappa[i] + k) & 1U) != 0) sign = -sign;
      term *= ev.eval(jacobi_histogram(ev.field(), a, b));
    }
    total += term * sign;
  }
  return total;
}

int top_bottom_sign(const DatumCharacters& chars) {
  int sign = 1;
  for (std::size_t i = 1; i < chars.length(); ++i) {
    sign *= chars.top[i].at_minus_one() * chars.bottom[i - 1].at_minus_one();
  }
  return sign;
}

}  // namespace

HypergeometricDatum make_datum(std::vector<Rational> alpha, std::vector<Rational> beta) {
  if (alpha.size() != beta.size() || alpha.empty()) {
    throw Error(ErrorCode::LengthMismatch, "alpha and beta must be nonempty and of equal length");
  }
  if (beta.front() != 1) throw Error(ErrorCode::MissingUnitLowerParameter, "beta must start with q_1 = 1");

  HypergeometricDatum hd;
  std::vector<Rational> all = alpha;
  all.insert(all.end(), beta.begin(), beta.end());
  hd.M = lcd(all);
  hd.primitive = true;
  for (const auto& r : alpha) {
    for (const auto& q : beta) {
      if (is_integer(Rational(r - q))) hd.primitive = false;
    }
  }
  hd.gamma = -1;
  for (std::size_t i = 0; i < alpha.size(); ++i) hd.gamma += beta[i] - alpha[i];
  if (is_k4_shape(alpha, beta)) {
    hd.family = NamedFamily::k4;
    hd.family_r = alpha[3];
    hd.C1 = -64;
  } else if (is_k5_shape(alpha, beta)) {
    hd.family = NamedFamily::k5;
    hd.family_r = alpha[1];
    hd.C1 = 27;
  }
  hd.alpha = std::move(alpha);
  hd.beta = std::move(beta);
  return hd;
}

HypergeometricDatum k4_datum(const Rational& r) {
  return make_datum({kHalf, kHalf, kHalf, r}, {1, 1, 1, r + kHalf});
}

HypergeometricDatum k5_datum(const Rational& r) { return make_datum({kThird, r}, {1, 1}); }

HypergeometricDatum k5_conjugate_datum(const Rational& r) {
  return make_datum({Rational(2, 3), Rational(1 - r)}, {1, 1});
}

void DatumCharacters::check() const {
  if (top.empty() || bottom.size() + 1 != top.size()) {
    throw Error(ErrorCode::LengthMismatch, "need n top characters and n-1 bottom characters");
  }
  for (const auto& c : top) require_same_field({&top.front(), &c});
  for (const auto& c : bottom) require_same_field({&top.front(), &c});
}

DatumCharacters datum_characters(const HypergeometricDatum& hd, const FieldPtr& field) {
  if (field->order() % hd.M != 0) {
    throw Error(ErrorCode::PrimeNotSplit,
                "p = " + std::to_string(field->p()) + " is not 1 mod " + std::to_string(hd.M));
  }
  DatumCharacters chars;
  for (const auto& r : hd.alpha) chars.top.push_back(Character::from_rational(field, r));
  for (std::size_t i = 1; i < hd.beta.size(); ++i) chars.bottom.push_back(Character::from_rational(field, hd.beta[i]));
  return chars;
}

BackendValue greene_F(const Evaluator& ev, const DatumCharacters& chars, const Rational& z) {
  auto s = deferred_chi_sum(ev, chars, z);
  const auto q = static_cast<std::int64_t>(ev.field()->p());
  s.divide(q - 1);
  for (std::size_t i = 1; i < chars.length(); ++i) s.divide(q);
  return s;
}

BackendValue period_P(const Evaluator& ev, const DatumCharacters& chars, const Rational& z) {
  chars.check();
  const auto& field = *ev.field();
  if (field.reduce(z) == 0) throw Error(ErrorCode::ZArgumentZero, "period functions need z != 0");
  if (chars.length() == 1) return ev.value(chars.top[0].conj(), Rational(1 - z));
  auto s = deferred_chi_sum(ev, chars, z);
  s.divide(static_cast<std::int64_t>(field.p()) - 1);
  return s * top_bottom_sign(chars);
}

BackendValue period_P_unnormalized(const Evaluator& ev, const DatumCharacters& chars, const Rational& z) {
  auto v = period_P(ev, chars, z);
  for (std::size_t i = 0; i < chars.length(); ++i) v.divide(static_cast<std::int64_t>(ev.field()->p()));
  return v;
}

BackendValue P_HD(const Evaluator& ev, const HypergeometricDatum& hd, const Rational& z) {
  const auto chars = datum_characters(hd, ev.field());
  return period_P(ev, chars, z);
}

BackendValue H_q(const Evaluator& ev, const HypergeometricDatum& hd, const Rational& z) {
  if (!hd.primitive) throw Error(ErrorCode::NotPrimitive, "H_q needs a primitive datum");
  auto value = P_HD(ev, hd, z);
  const auto& field = ev.field();
  for (std::size_t i = 1; i < hd.length(); ++i) {
    const auto a = Character::from_rational(field, hd.alpha[i]);
    const auto b = Character::from_rational(field, hd.beta[i] - hd.alpha[i]);
    const auto j = jacobi_sum(ev, a, b);
    if (j.is_zero()) throw Error(ErrorCode::ZeroDenominatorJacobi, "J(r_i, q_i - r_i) vanishes");
    value *= j.inverse();
  }
  return value;
}

BackendValue appell_F1(const Evaluator& ev, const Character& r1, const Character& r2, const Character& r3,
                       const Character& r4, const Rational& x, const Rational& y) {
  require_same_field({&r1, &r2, &r3, &r4});
  const auto& field = *ev.field();
  const auto p = field.p();
  const auto n = field.order();
  const auto xr = field.reduce(x), yr = field.reduce(y);
  if (mulmod(xr, yr, p) == 0) return ev.zero();

  const std::uint64_t e1 = r1.exponent();
  const std::uint64_t e14 = (r1.conj() * r4).exponent();
  const std::uint64_t e2 = r2.conj().exponent();
  const std::uint64_t e3 = r3.conj().exponent();
  CyclotomicSum s(n);
  for (std::uint64_t u = 1; u < p; ++u) {
    const auto a = (p + 1 - u) % p;
    const auto b = (p + 1 - mulmod(u, xr, p)) % p;
    const auto c = (p + 1 - mulmod(u, yr, p)) % p;
    if (a == 0 || b == 0 || c == 0) continue;
    s.add(e1 * field.dlog(u) + e14 * field.dlog(a) + e2 * field.dlog(b) + e3 * field.dlog(c));
  }
  return ev.eval(s) * (r1 * r4).at_minus_one();
}

BackendValue appell_F2(const Evaluator& ev, const Character& r1, const Character& r2, const Character& r3,
                       const Character& r4, const Character& r5, const Rational& x, const Rational& y) {
  require_same_field({&r1, &r2, &r3, &r4, &r5});
  const auto& field = *ev.field();
  const auto p = field.p();
  const auto n = field.order();
  const auto xr = field.reduce(x), yr = field.reduce(y);
  if (mulmod(xr, yr, p) == 0) return ev.zero();

  const std::uint64_t e2 = r2.exponent();
  const std::uint64_t e3 = r3.exponent();
  const std::uint64_t e24 = (r2.conj() * r4).exponent();
  const std::uint64_t e35 = (r3.conj() * r5).exponent();
  const std::uint64_t e1 = r1.conj().exponent();
  CyclotomicSum s(n);
  for (std::uint64_t u = 2; u < p; ++u) {
    const std::uint64_t base_u = e2 * field.dlog(u) + e24 * field.dlog(p + 1 - u);
    const auto ux = mulmod(u, xr, p);
    for (std::uint64_t v = 2; v < p; ++v) {
      const auto w = (2 * p + 1 - ux - mulmod(v, yr, p)) % p;
      if (w == 0) continue;
      s.add(base_u + e3 * field.dlog(v) + e35 * field.dlog(p + 1 - v) + e1 * field.dlog(w));
    }
  }
  return ev.eval(s) * (r2 * r3 * r4 * r5).at_minus_one();
}

TransformedDatum transform_P(const DatumCharacters& chars, const Rational& t) {
  chars.check();
  const auto& a1 = chars.top.front();
  const auto e = a1.zeta_exponent(Rational(-t));
  if (!e) throw Error(ErrorCode::TZero, "transformation needs t != 0");
  TransformedDatum out;
  out.zeta_exponent = *e;
  out.chars.top.push_back(a1);
  for (std::size_t i = 1; i < chars.length(); ++i) {
    out.chars.top.push_back(a1 * chars.bottom[i - 1].conj());
    out.chars.bottom.push_back(a1 * chars.top[i].conj());
    out.sign *= chars.top[i].at_minus_one() * chars.bottom[i - 1].at_minus_one();
  }
  return out;
}

}  // namespace hypmod
