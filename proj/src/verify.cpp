#include "hypmod/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "hypmod/error.hpp"
#include "hypmod/hypergeometric.hpp"
#include "hypmod/padic.hpp"
#include "hypmod/parallel.hpp"

namespace hypmod {

namespace {

const Rational kThird(1, 3);
const Rational kTwoThirds(2, 3);
const Rational kSixth(1, 6);
const Rational kHalf(1, 2);

Integer ceil_bound(double x) { return Integer(static_cast<unsigned long>(std::ceil(x)) + 1); }

Evaluator make_evaluator(const FieldPtr& f, BackendKind backend, const Integer& bound) {
  return backend == BackendKind::complex ? Evaluator::complex(f) : Evaluator::modular(f, bound);
}

void require_split(std::uint64_t M, std::uint64_t p) {
  if (p < 3 || (p - 1) % M != 0) {
    throw Error(ErrorCode::PrimeNotSplit, "p = " + std::to_string(p) + " is not 1 mod " + std::to_string(M));
  }
}

BackendValue iota_at(const Evaluator& ev, const Rational& r, long x) {
  return ev.value(Character::from_rational(ev.field(), r), Rational(x));
}

BackendValue jacobi_at(const Evaluator& ev, const Rational& a, const Rational& b) {
  return jacobi_sum(ev, Character::from_rational(ev.field(), a), Character::from_rational(ev.field(), b));
}

// Fills rhs and status from the character-sum side.
void settle(VerificationReport& rep, const Evaluator& ev, const BackendValue& value, const Integer& lhs,
            const Integer& bound) {
  rep.lhs = lhs.get_str();
  try {
    const auto rhs = ev.to_integer(value, bound);
    rep.rhs = rhs.get_str();
    rep.status = rhs == lhs ? Status::pass : Status::fail;
    if (rep.status == Status::fail) rep.reason = "sides differ";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Inconsistent) throw;
    rep.rhs = "non-integer";
    rep.status = Status::fail;
    rep.reason = e.what();
  }
}

template <class F>
VerificationReport timed(VerificationReport rep, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body(rep);
  rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct SeriesCache {
  std::mutex m;
  std::map<std::string, IntSeries> series;
};

SeriesCache& cache() {
  static SeriesCache c;
  return c;
}

}  // namespace

std::string to_string(TheoremId t) {
  switch (t) {
    case TheoremId::thm1:
      return "thm1";
    case TheoremId::thm2:
      return "thm2";
    case TheoremId::f1:
      return "f1";
    case TheoremId::f2:
      return "f2";
  }
  return "?";
}

TheoremId parse_theorem(const std::string& name) {
  for (auto t : {TheoremId::thm1, TheoremId::thm2, TheoremId::f1, TheoremId::f2}) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorCode::UnknownName, "unknown theorem '" + name + "'");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "?";
}

std::string to_string(BackendKind b) { return b == BackendKind::complex ? "complex" : "exact"; }

const std::vector<Rational>& weight4_r_values() {
  static const std::vector<Rational> v = {Rational(1, 2), Rational(1, 3),  Rational(1, 4), Rational(1, 6),
                                          Rational(1, 8), Rational(1, 12), Rational(1, 24)};
  return v;
}

const std::vector<Rational>& weight2_r_values() {
  static const std::vector<Rational> v = {Rational(1, 2), Rational(1, 3), Rational(1, 6), Rational(1, 12)};
  return v;
}

const std::vector<Rational>& default_cprimes() {
  static const std::vector<Rational> v = {Rational(1, 2), Rational(1, 4), Rational(1, 6)};
  return v;
}

Integer eigen_coefficient(KFamily kind, const Rational& r, std::uint64_t p) {
  const auto& fam = family_for(kind, r);
  const auto need = static_cast<std::int64_t>(p) + 1;
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.m);
  auto it = c.series.find(fam.id);
  if (it == c.series.end() || it->second.prec() < need * kGrid) {
    std::int64_t prec = 512;
    while (prec < need) prec *= 2;
    it = c.series.insert_or_assign(fam.id, fam.basis_element(1, prec)).first;
  }
  return it->second.coefficient_at(static_cast<std::int64_t>(p));
}

std::uint64_t split_modulus(TheoremId t, const Rational& r, const std::optional<Rational>& cprime) {
  switch (t) {
    case TheoremId::thm1:
      return lcd({kHalf, r});
    case TheoremId::thm2:
      return lcd({kThird, r});
    case TheoremId::f1:
      return lcd({kSixth, r});
    case TheoremId::f2:
      return lcd({kThird, r, cprime.value_or(Rational(1))});
  }
  return 1;
}

VerificationReport verify_weight4(const Rational& r, std::uint64_t p, BackendKind backend) {
  const auto hd = k4_datum(r);
  require_split(split_modulus(TheoremId::thm1, r), p);
  VerificationReport base;
  base.theorem = TheoremId::thm1;
  base.r = r;
  base.p = p;
  base.backend = backend;
  return timed(base, [&](VerificationReport& rep) {
    const double pd = static_cast<double>(p);
    const auto bound = ceil_bound(2 * (5 * std::pow(pd, 1.5) + pd));
    const auto ev = make_evaluator(PrimeField::build(p), backend, bound);
    const auto psi = psi_table_entry(r);
    auto value = P_HD(ev, hd, 1) + iota_at(ev, kHalf, -1) * static_cast<std::int64_t>(p);
    value = value * ev.value(Character::from_rational(ev.field(), psi.s).conj(), Rational(psi.x)) * -1;
    settle(rep, ev, value, eigen_coefficient(KFamily::K4, r, p), bound);
  });
}

VerificationReport verify_weight2(const Rational& r, std::uint64_t p, BackendKind backend) {
  require_split(split_modulus(TheoremId::thm2, r), p);
  VerificationReport base;
  base.theorem = TheoremId::thm2;
  base.r = r;
  base.p = p;
  base.backend = backend;
  return timed(base, [&](VerificationReport& rep) {
    const auto bound = ceil_bound(2 * 6 * std::sqrt(static_cast<double>(p)));
    const auto ev = make_evaluator(PrimeField::build(p), backend, bound);
    const auto value = iota_at(ev, r, 27) * P_HD(ev, k5_datum(r), 1) +
                       iota_at(ev, 1 - r, 27) * P_HD(ev, k5_conjugate_datum(r), 1);
    settle(rep, ev, value, -eigen_coefficient(KFamily::K5, r, p), bound);
  });
}

VerificationReport verify_appell_f1(const Rational& r, std::uint64_t p, BackendKind backend) {
  require_split(split_modulus(TheoremId::f1, r), p);
  VerificationReport base;
  base.theorem = TheoremId::f1;
  base.r = r;
  base.p = p;
  base.backend = backend;
  return timed(base, [&](VerificationReport& rep) {
    const auto bound = ceil_bound(2 * 6 * std::sqrt(static_cast<double>(p)));
    const auto f = PrimeField::build(p);
    const auto ev = make_evaluator(f, backend, bound);
    const auto one = Character::trivial(f);
    const auto sixth = Character::from_rational(f, kSixth);
    const auto third = Character::from_rational(f, kThird);
    const auto value =
        iota_at(ev, r, -27) * appell_F1(ev, Character::from_rational(f, r), sixth, sixth, one, 1, 1) +
        iota_at(ev, 1 - r, -27) * appell_F1(ev, Character::from_rational(f, 1 - r), third, third, one, 1, 1);
    settle(rep, ev, value, -eigen_coefficient(KFamily::K5, r, p), bound);
  });
}

VerificationReport verify_appell_f2(const Rational& r, const Rational& cprime, std::uint64_t p, BackendKind backend) {
  require_split(split_modulus(TheoremId::f2, r, cprime), p);
  VerificationReport base;
  base.theorem = TheoremId::f2;
  base.r = r;
  base.cprime = cprime;
  base.p = p;
  base.backend = backend;
  return timed(base, [&](VerificationReport& rep) {
    const double pd = static_cast<double>(p);
    const auto bound = ceil_bound(2 * (4 * pd + 4 * std::sqrt(pd)));
    const auto f = PrimeField::build(p);
    const auto ev = make_evaluator(f, backend, bound);
    const auto one = Character::trivial(f);
    const auto c = Character::from_rational(f, cprime);
    const auto sign_c = iota_at(ev, cprime, -1);
    const auto w1 = iota_at(ev, r, -27), w2 = iota_at(ev, 1 - r, -27);
    const auto x = w1 * jacobi_at(ev, cprime, kThird - cprime) * jacobi_at(ev, r + cprime - kThird, kThird - cprime) +
                   w2 * jacobi_at(ev, cprime, kTwoThirds - cprime) *
                       jacobi_at(ev, kThird - r + cprime, kTwoThirds - cprime);
    const auto value =
        w1 * sign_c *
            appell_F2(ev, Character::from_rational(f, kThird), Character::from_rational(f, r), one, one, c, 1, 1) -
        x +
        w2 * sign_c *
            appell_F2(ev, Character::from_rational(f, kTwoThirds), Character::from_rational(f, 1 - r), one, one, c, 1,
                      1);
    settle(rep, ev, value, eigen_coefficient(KFamily::K5, r, p), bound);
  });
}

bool SweepReport::passed() const { return count(Status::fail) == 0; }

std::size_t SweepReport::count(Status s) const {
  std::size_t n = 0;
  for (const auto& r : results) n += r.status == s ? 1 : 0;
  return n;
}

SweepReport sweep(const SweepOptions& opts) {
  struct Item {
    Rational r;
    std::optional<Rational> c;
    std::uint64_t p;
  };
  auto rs = opts.rs;
  if (rs.empty()) rs = opts.theorem == TheoremId::thm1 ? weight4_r_values() : weight2_r_values();
  std::vector<std::optional<Rational>> cs{std::nullopt};
  if (opts.theorem == TheoremId::f2) {
    cs.clear();
    for (const auto& c : opts.cprimes.empty() ? default_cprimes() : opts.cprimes) cs.emplace_back(c);
  }
  std::vector<Item> items;
  for (const auto& r : rs) {
    for (const auto& c : cs) {
      for (auto p : split_primes(split_modulus(opts.theorem, r, c), opts.pmax)) items.push_back({r, c, p});
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.r != b.r) return a.r > b.r;
    if (a.c != b.c) return a.c.value_or(0) > b.c.value_or(0);
    return a.p < b.p;
  });

  SweepReport rep;
  rep.theorem = opts.theorem;
  rep.pmax = opts.pmax;
  rep.backend = opts.backend;
  rep.results.resize(items.size());
  parallel_for(items.size(), opts.jobs, [&](std::size_t i) {
    const auto& it = items[i];
    switch (opts.theorem) {
      case TheoremId::thm1:
        rep.results[i] = verify_weight4(it.r, it.p, opts.backend);
        break;
      case TheoremId::thm2:
        rep.results[i] = verify_weight2(it.r, it.p, opts.backend);
        break;
      case TheoremId::f1:
        rep.results[i] = verify_appell_f1(it.r, it.p, opts.backend);
        break;
      case TheoremId::f2:
        rep.results[i] = verify_appell_f2(it.r, *it.c, it.p, opts.backend);
        break;
    }
  });
  if (items.empty()) rep.note = "no primes in range";
  return rep;
}

std::string to_json(const SweepReport& rep, bool timing) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["theorem"] = to_string(rep.theorem);
  j["pmax"] = rep.pmax;
  j["backend"] = to_string(rep.backend);
  j["passed"] = rep.passed();
  j["counts"] = {{"pass", rep.count(Status::pass)},
                 {"fail", rep.count(Status::fail)},
                 {"skipped", rep.count(Status::skipped)}};
  if (!rep.note.empty()) j["note"] = rep.note;
  auto& arr = j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.results) {
    nlohmann::ordered_json e;
    e["theorem"] = to_string(r.theorem);
    e["r"] = to_string(r.r);
    if (r.cprime) e["cprime"] = to_string(*r.cprime);
    e["p"] = r.p;
    e["backend"] = to_string(r.backend);
    e["lhs"] = r.lhs;
    e["rhs"] = r.rhs;
    e["status"] = to_string(r.status);
    if (!r.reason.empty()) e["reason"] = r.reason;
    if (timing) e["ms"] = r.ms;
    arr.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const SweepReport& rep, bool timing) {
  std::ostringstream out;
  out << "theorem,r,p,lhs,rhs,status,ms\n";
  for (const auto& r : rep.results) {
    std::string r_field = to_string(r.r);
    if (r.cprime) r_field += ";" + to_string(*r.cprime);
    out << to_string(r.theorem) << ',' << r_field << ',' << r.p << ',' << r.lhs << ',' << r.rhs << ','
        << to_string(r.status) << ',';
    if (timing) out << r.ms;
    out << '\n';
  }
  return out.str();
}

}  // namespace hypmod
