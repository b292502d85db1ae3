#include "hypmod/qseries.hpp"

#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace hypmod {

namespace {

std::int64_t grid_of(const Rational& x) {
  const Rational g = x * kGrid;
  if (!is_integer(g)) throw Error(ErrorCode::OffGridFactor, "exponent " + to_string(x) + " is off the 1/24 grid");
  return to_int64(g.get_num());
}

// prod_{n>=1} (1 - x^n) to len terms (pentagonal numbers).
std::vector<Integer> euler_product(std::size_t len) {
  std::vector<Integer> c(len);
  if (len == 0) return c;
  c[0] = 1;
  for (std::int64_t k = 1;; ++k) {
    const auto g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
    if (static_cast<std::size_t>(g1) >= len) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(g1)] += sign;
    if (static_cast<std::size_t>(g2) < len) c[static_cast<std::size_t>(g2)] += sign;
  }
  return c;
}

// Unit part prod (1 - q^(dn))^e known below relative grid exponent rel.
IntSeries eta_unit_part(const EtaFactor& f, std::int64_t rel) {
  const auto step = grid_of(f.d);
  if (rel <= 0) return IntSeries(0, step, {}, rel);
  const auto len = static_cast<std::size_t>(detail::ceil_div(rel, step));
  auto coeffs = detail::unit_power(euler_product(len), Rational(f.e), len);
  return IntSeries(0, step, std::move(coeffs), rel);
}

RatSeries to_rat(const IntSeries& s) { return s.convert<Rational>(); }

RatSeries one_rat(std::int64_t prec) { return RatSeries::constant(Rational(1), prec); }

}  // namespace

void check_eta_factor(const EtaFactor& f) {
  if (f.d <= 0) throw Error(ErrorCode::OffGridFactor, "eta argument scale must be positive");
  const Rational step = f.d * kGrid;
  const Rational lead = f.d * f.e;
  if (!is_integer(step) || !is_integer(lead)) {
    throw Error(ErrorCode::OffGridFactor,
                "eta(" + to_string(f.d) + " tau)^" + std::to_string(f.e) + " does not land on the 1/24 grid");
  }
}

IntSeries eta_series(const Rational& d, long e, std::int64_t precision) { return eta_quotient({{d, e}}, precision); }

IntSeries eta_quotient(const std::vector<EtaFactor>& factors, std::int64_t precision) {
  std::int64_t lead = 0;
  for (const auto& f : factors) {
    check_eta_factor(f);
    lead += to_int64(Rational(f.d * f.e).get_num());
  }
  const auto prec = precision * kGrid;
  const auto rel = prec - lead;
  if (rel <= 0) return IntSeries(prec, kGrid, {}, prec);
  IntSeries acc = IntSeries::constant(Integer(1), rel);
  for (const auto& f : factors) {
    if (f.e == 0) continue;
    acc = acc * eta_unit_part(f, rel);
  }
  return acc.shifted(lead);
}

bool in_S4(const Rational& r) { return r > 0 && r < 1 && is_integer(r * 24); }
bool in_S5(const Rational& r) { return r > 0 && r < Rational(2, 3) && is_integer(r * 12); }

std::vector<Rational> S4_values() {
  std::vector<Rational> out;
  for (long j = 1; j < 24; ++j) out.push_back(ratio(j, 24));
  return out;
}

std::vector<Rational> S5_values() {
  std::vector<Rational> out;
  for (long j = 1; j < 8; ++j) out.push_back(ratio(j, 12));
  return out;
}

std::vector<EtaFactor> k4_factors(const Rational& r) {
  if (!in_S4(r)) throw Error(ErrorCode::NotInS4, to_string(r) + " is not in S4");
  const long j = to_int64(Rational(r * 24).get_num());
  return {{Rational(2), j - 8}, {Rational(1), 16 - j}};
}

std::vector<EtaFactor> k5_factors(const Rational& r) {
  if (!in_S5(r)) throw Error(ErrorCode::NotInS5, to_string(r) + " is not in S5");
  const long j = to_int64(Rational(r * 12).get_num());
  return {{Rational(3), j - 2}, {Rational(1), 6 - j}};
}

IntSeries k4_series(const Rational& r, std::int64_t precision) { return eta_quotient(k4_factors(r), precision); }
IntSeries k5_series(const Rational& r, std::int64_t precision) { return eta_quotient(k5_factors(r), precision); }

IntSeries theta_and_borwein(const std::string& name, std::int64_t precision) {
  const Rational half(1, 2), third(1, 3);
  if (name == "theta2") return Integer(2) * eta_quotient({{2, 2}, {1, -1}}, precision);
  if (name == "theta3") return eta_quotient({{1, 5}, {half, -2}, {2, -2}}, precision);
  if (name == "theta4") return eta_quotient({{half, 2}, {1, -1}}, precision);
  if (name == "b") return eta_quotient({{1, 3}, {3, -1}}, precision);
  if (name == "c") return Integer(3) * eta_quotient({{3, 3}, {1, -1}}, precision);
  if (name == "a") {
    return Integer(3) * eta_quotient({{3, 3}, {1, -1}}, precision) + eta_quotient({{third, 3}, {1, -1}}, precision);
  }
  throw Error(ErrorCode::UnknownName, "unknown theta/Borwein function '" + name + "'");
}

IntSeries hauptmodul(const std::string& name, std::int64_t precision) {
  if (name == "t2") return Integer(-64) * eta_quotient({{2, 24}, {1, -24}}, precision);
  if (name == "t3") {
    const auto work = precision + 1;
    const auto x = Integer(3) * eta_series(3, 3, work) + eta_series(Rational(1, 3), 3, work);
    const auto t = Integer(27) * (eta_series(3, 9, work) * x.pow(-3));
    return t.truncated(precision * kGrid);
  }
  throw Error(ErrorCode::UnknownName, "unknown Hauptmodul '" + name + "'");
}

RatSeries classical_hyp_series(const std::vector<Rational>& alpha, const std::vector<Rational>& beta,
                               std::int64_t precision) {
  for (const auto& b : beta) {
    if (b <= 0 && is_integer(b)) throw Error(ErrorCode::PoleInLowerParameter, "lower parameter " + to_string(b));
  }
  std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>(precision, 0)));
  Rational term = 1;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = term;
    for (const auto& a : alpha) term *= a + static_cast<long>(k);
    for (const auto& b : beta) term /= b + static_cast<long>(k);
    term /= static_cast<long>(k + 1);
  }
  return RatSeries(0, kGrid, std::move(c), precision * kGrid);
}

RatSeries frac_power(const RatSeries& s, const Rational& exponent, std::int64_t precision) {
  const auto lead = s.leading_exponent();
  if (!lead || *lead != 0 || s.coefficient_grid(0) != 1) {
    throw Error(ErrorCode::NonUnitConstantTerm, "fractional power needs constant term exactly 1");
  }
  const auto n = s.normalized();
  const auto prec = std::min(s.prec(), precision * kGrid);
  const auto len = static_cast<std::size_t>(std::max<std::int64_t>(0, detail::ceil_div(prec, n.step())));
  auto c = detail::unit_power(n.coeffs(), exponent, len);
  return RatSeries(0, n.step(), std::move(c), prec);
}

RatSeries q_log_derivative(const RatSeries& s) {
  const auto lead = s.leading_exponent();
  if (!lead) throw Error(ErrorCode::NonInvertibleSeries, "series is zero to its precision");
  std::vector<Rational> d(s.coeffs().size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = s.coeffs()[i] * ratio(s.exponent_at(i), kGrid);
  }
  const RatSeries ds(s.start(), s.step(), std::move(d), s.prec());
  return ds * s.inverse();
}

RatSeries compose(const RatSeries& f, const IntSeries& t) {
  const auto vt = t.valuation();
  if (vt <= 0) throw Error(ErrorCode::NonInvertibleSeries, "inner series must have positive valuation");
  if (f.start() < 0 || f.step() % kGrid != 0 || f.start() % kGrid != 0) {
    throw Error(ErrorCode::OffGridFactor, "outer series must be a power series in t");
  }
  const auto terms = f.prec() / kGrid;  // f_k known for k < terms
  const auto prec = std::min(t.prec(), terms * vt);
  const auto step = std::gcd(vt, t.step());
  std::vector<Rational> acc(static_cast<std::size_t>(std::max<std::int64_t>(0, detail::ceil_div(prec, step))));
  if (!acc.empty()) acc[0] = f.coefficient_grid(0);
  IntSeries pw = t.truncated(std::min(t.prec(), prec));
  for (std::int64_t k = 1; k < terms; ++k) {
    if (pw.valuation() >= prec) break;
    const Rational fk = f.coefficient_grid(k * kGrid);
    if (fk != 0) {
      for (std::size_t i = 0; i < pw.coeffs().size(); ++i) {
        const auto e = pw.exponent_at(i);
        if (e >= prec) break;
        if (pw.coeffs()[i] != 0) acc[static_cast<std::size_t>(e / step)] += fk * pw.coeffs()[i];
      }
    }
    pw = (pw * t).truncated(prec);
  }
  return RatSeries(0, step, std::move(acc), prec);
}

SupportShape support_shape(const IntSeries& s) {
  SupportShape out;
  const auto lead = s.leading_exponent();
  if (!lead) return out;
  out.offset = *lead / kGrid;
  std::int64_t g = 0;
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    if (s.coeffs()[i] != 0) g = std::gcd(g, s.exponent_at(i) - *lead);
  }
  out.gap = g / kGrid;
  return out;
}

namespace {

struct Sides {
  RatSeries lhs, rhs;
};

// Caches the expensive shared expansions for one precision.
class IdentityBuilder {
 public:
  explicit IdentityBuilder(std::int64_t precision) : P_(precision), work_(precision + 2) {}

  const IntSeries& t2() { return memo(t2_, [&] { return hauptmodul("t2", work_); }); }
  const IntSeries& t3() { return memo(t3_, [&] { return hauptmodul("t3", work_); }); }
  const IntSeries& named(const std::string& n) {
    auto it = named_.find(n);
    if (it == named_.end()) it = named_.emplace(n, theta_and_borwein(n, work_)).first;
    return it->second;
  }

  RatSeries theta4_2tau_4() { return to_rat(named("theta4").rescale(2).pow(4)); }

  const RatSeries& F32_t2() {
    return memo(f32_, [&] {
      return compose(classical_hyp_series({Rational(1, 2), Rational(1, 2), Rational(1, 2)}, {1, 1}, work_), t2());
    });
  }
  const RatSeries& D2() { return memo(d2_, [&] { return q_log_derivative(to_rat(t2())); }); }
  const RatSeries& D3() { return memo(d3_, [&] { return q_log_derivative(to_rat(t3())); }); }

  // (1 - t2)^(-1/2) 3F2(t2) D2, shared by every r.
  const RatSeries& K4_common() {
    return memo(k4c_, [&] {
      return frac_power(one_rat(work_ * kGrid) - to_rat(t2()), Rational(-1, 2), work_) * F32_t2() * D2();
    });
  }

  // u = t / (C q), constant term 1.
  RatSeries unit_part(const IntSeries& t, long c1) {
    return ratio(1, c1) * to_rat(t).shifted(-kGrid);
  }

  Sides build(const std::string& name) {
    const auto pos = name.find(':');
    const auto base = name.substr(0, pos);
    if (base == "3F2_hauptmodul") return {F32_t2(), theta4_2tau_4()};
    if (base == "derivative") {
      return {D2(), frac_power(one_rat(work_ * kGrid) - to_rat(t2()), Rational(1, 2), work_) * theta4_2tau_4()};
    }
    if (base == "hauptmodul_theta") {
      const auto th2 = to_rat(named("theta2")), th3 = to_rat(named("theta3")), th4 = to_rat(named("theta4"));
      const auto den = Rational(4) * (th3.pow(4) * th4.pow(4));
      return {to_rat(t2()), -(th2.pow(8) * den.inverse())};
    }
    if (base == "K4eval" && pos != std::string::npos) {
      const auto r = parse_rational(name.substr(pos + 1));
      const auto rhs = to_rat(k4_series(r, work_)).shifted(-grid_of(r));
      return {frac_power(unit_part(t2(), -64), r, work_) * K4_common(), rhs};
    }
    if (base == "K5eval" && pos != std::string::npos) {
      const auto r = parse_rational(name.substr(pos + 1));
      const auto rhs = to_rat(k5_series(r, work_)).shifted(-grid_of(r));
      const auto one_minus = frac_power(one_rat(work_ * kGrid) - to_rat(t3()), -r - Rational(1, 3), work_);
      return {frac_power(unit_part(t3(), 27), r, work_) * one_minus * D3(), rhs};
    }
    if (base == "cubic_t3") {
      return {to_rat(t3()), to_rat(named("c").pow(3)) * to_rat(named("a").pow(3)).inverse()};
    }
    if (base == "cubic_one_minus_t3") {
      return {one_rat(work_ * kGrid) - to_rat(t3()), to_rat(named("b").pow(3)) * to_rat(named("a").pow(3)).inverse()};
    }
    if (base == "cubic_derivative") {
      return {D3(), to_rat(named("b").pow(3)) * to_rat(named("a")).inverse()};
    }
    if (base == "borwein_cubic") {
      return {to_rat(named("a").pow(3)), to_rat(named("b").pow(3) + named("c").pow(3))};
    }
    if (base == "eta_inverse") {
      return {to_rat(eta_series(1, 1, work_) * eta_series(1, -1, work_)), one_rat(work_ * kGrid)};
    }
    throw Error(ErrorCode::UnknownName, "unknown identity '" + name + "'");
  }

  std::int64_t precision() const { return P_; }

 private:
  template <class T, class F>
  const T& memo(std::optional<T>& slot, F&& make) {
    if (!slot) slot = make();
    return *slot;
  }

  std::int64_t P_, work_;
  std::optional<IntSeries> t2_, t3_;
  std::optional<RatSeries> f32_, d2_, d3_, k4c_;
  std::map<std::string, IntSeries> named_;
};

std::vector<std::string> expand(const std::string& name) {
  std::vector<std::string> out;
  if (name == "K4eval") {
    for (const auto& r : S4_values()) out.push_back("K4eval:" + to_string(r));
  } else if (name == "K5eval") {
    for (const auto& r : S5_values()) out.push_back("K5eval:" + to_string(r));
  } else if (name == "derivative-2") {
    out = {"cubic_t3", "cubic_one_minus_t3", "cubic_derivative"};
  } else {
    out.push_back(name);
  }
  return out;
}

}  // namespace

std::vector<std::string> identity_names() {
  return {"3F2_hauptmodul", "derivative", "hauptmodul_theta", "K4eval",         "K5eval",   "cubic_t3",
          "cubic_one_minus_t3", "cubic_derivative", "derivative-2", "borwein_cubic", "eta_inverse"};
}

IdentityReport check_identity(const std::string& name, std::int64_t precision, const IdentityOptions& options) {
  if (precision <= 0) throw Error(ErrorCode::PrecisionUnderflow, "precision must be positive");
  IdentityReport rep;
  rep.name = name;
  rep.precision = precision;
  rep.passed = true;
  IdentityBuilder builder(precision);
  const auto bound = precision * kGrid;
  for (const auto& part : expand(name)) {
    auto sides = builder.build(part);
    if (sides.lhs.prec() < bound || sides.rhs.prec() < bound) {
      throw Error(ErrorCode::InsufficientPrecision, "identity '" + part + "' lost precision");
    }
    if (options.perturb_grid_exponent) {
      const auto g = *options.perturb_grid_exponent;
      if (g < 0 || g >= bound) throw Error(ErrorCode::BeyondPrecision, "perturbation outside the compared range");
      sides.rhs.set_coefficient_grid(g, sides.rhs.coefficient_grid(g) + 1);
    }
    const auto diff = (sides.lhs - sides.rhs).truncated(bound);
    rep.compared += diff.coeffs().size();
    if (const auto lead = diff.leading_exponent()) {
      rep.passed = false;
      if (!rep.first_mismatch || *lead < *rep.first_mismatch) rep.first_mismatch = *lead;
    }
  }
  return rep;
}

IdentityReport verify_identity(const std::string& name, std::int64_t precision, const IdentityOptions& options) {
  auto rep = check_identity(name, precision, options);
  if (!rep.passed) {
    throw Error(ErrorCode::IdentityFails,
                "identity '" + name + "' fails at exponent " + std::to_string(*rep.first_mismatch) + "/24");
  }
  return rep;
}

void write_series_fixture(std::ostream& out, const RatSeries& s) {
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    out << s.exponent_at(i) << "/24\t" << to_string(s.coeffs()[i]) << '\n';
  }
}

std::vector<FixtureLine> read_series_fixture(std::istream& in) {
  std::vector<FixtureLine> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const auto slash = line.find("/24");
    if (tab == std::string::npos || slash == std::string::npos || slash > tab) {
      throw Error(ErrorCode::ParseError, "fixture line " + std::to_string(lineno) + ": expected 'n/24<TAB>value'");
    }
    FixtureLine fl;
    try {
      fl.grid_exponent = std::stoll(line.substr(0, slash));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "fixture line " + std::to_string(lineno) + ": bad exponent");
    }
    fl.value = line.substr(tab + 1);
    out.push_back(std::move(fl));
  }
  return out;
}

}  // namespace hypmod
