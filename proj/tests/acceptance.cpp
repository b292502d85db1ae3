// One line per acceptance criterion. A FAIL is "analysed" when its cause is
// pinned below and re-checked here; any other FAIL makes the exit code nonzero.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hypmod/error.hpp"
#include "hypmod/hecke.hpp"
#include "hypmod/hypergeometric.hpp"
#include "hypmod/padic.hpp"
#include "hypmod/qseries.hpp"
#include "hypmod/verify.hpp"
#include "oracles.hpp"

using namespace hypmod;

namespace {

constexpr double kHeckeSeconds = 120;
constexpr double kThm1SingleSeconds = 600;
constexpr double kThm1ParallelSeconds = 120;
constexpr double kComplexTolerance = 1e-4;  // enforced inside Evaluator::to_integer
constexpr std::int64_t kIdentityPrecision = 200;
constexpr std::int64_t kHeckePrecision = 600;

struct Outcome {
  bool pass = false;
  std::string detail;
  bool analysed = false;  // failure fully explained by a pinned analysis
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string swap_labels(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 3, "f11") == 0) {
      out += "f5";
      i += 2;
    } else if (s.compare(i, 2, "f5") == 0) {
      out += "f11";
      i += 1;
    } else {
      out += s[i];
    }
  }
  return out;
}

Outcome criterion_hecke() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  bool all = true, others = true, relabel_ok = false;
  for (const char* id : {"k4-5", "k4-6", "k4-7", "k4-3", "k4-4", "k5-4"}) {
    const auto& fam = find_family(id);
    const auto rep = reproduce_table(id, HYPMOD_FIXTURE_DIR, 4);
    d << fam.level << ":" << rep.matched << "/" << rep.expected.size() << " ";
    all = all && rep.passed;
    if (std::string(id) == "k4-6") {
      std::size_t m = 0;
      for (const auto& e : rep.expected) {
        for (const auto& c : rep.computed.cells) m += c.format() == swap_labels(e) ? 1 : 0;
      }
      relabel_ok = m == rep.expected.size();
      d << "(relabelled f5<->f11: " << m << "/" << rep.expected.size() << ") ";
    } else {
      others = others && rep.passed;
    }
  }
  const double s = seconds_since(t0);
  d << "precision>=" << kHeckePrecision << " " << s << "s";
  Outcome o;
  o.pass = all && s < kHeckeSeconds;
  o.analysed = !o.pass && others && relabel_ok && s < kHeckeSeconds;
  if (o.analysed) d << "; printed level-288 table mislabels f5/f11";
  o.detail = d.str();
  return o;
}

Outcome criterion_eigen() {
  std::ostringstream d;
  bool all = true, only_printed_288 = true;
  std::size_t checked = 0;
  for (const auto& fam : family_catalog()) {
    for (const auto& c : fam.completions) {
      std::vector<long> primes;
      for (long p : {5L, 7L, 11L, 13L}) {
        if (fam.level % p != 0) primes.push_back(p);
      }
      bool ok = false;
      try {
        ok = verify_eigenform(fam, c, primes, kHeckePrecision).passed;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotAnEigenvector) throw;
      }
      ++checked;
      if (c.label.find("relabelled") != std::string::npos) {
        d << c.label << " " << (ok ? "eigen" : "NOT eigen") << "; ";
        only_printed_288 = only_printed_288 && ok;
        continue;
      }
      all = all && ok;
      if (!ok) {
        d << c.label << " NOT eigen; ";
        only_printed_288 = only_printed_288 && c.label == "288.4.a.l";
      }
    }
  }
  const auto nu = NumberField::parse("x^4+4*x^2+9", "nu");
  const auto b1 = NumberFieldElement::parse_fixture(nu, "3; 0,14,0,2");
  const auto b2 = NumberFieldElement::parse_fixture(nu, "1; 16,0,8,0");
  const bool betas = b1 * b1 == NumberFieldElement::from_rational(nu, -40) &&
                     b2 * b2 == NumberFieldElement::from_rational(nu, -320);
  d << checked << " completions; beta1^2=-40, beta2^2=-320: " << (betas ? "yes" : "no");
  Outcome o;
  o.pass = all && betas;
  o.analysed = !o.pass && betas && only_printed_288;
  if (o.analysed) d << "; printed 288.4.a.l completion fails, relabelled sqrt13 form passes";
  o.detail = d.str();
  return o;
}

// Full sweep on both backends; the rhs values must coincide item by item.
struct BothBackends {
  SweepReport exact, complex;
  bool agree = true;
};

BothBackends sweep_both(SweepOptions o) {
  BothBackends b;
  o.backend = BackendKind::modular;
  b.exact = sweep(o);
  o.backend = BackendKind::complex;
  b.complex = sweep(o);
  b.agree = b.exact.results.size() == b.complex.results.size();
  for (std::size_t i = 0; b.agree && i < b.exact.results.size(); ++i) {
    b.agree = b.exact.results[i].rhs == b.complex.results[i].rhs && b.exact.results[i].p == b.complex.results[i].p;
  }
  return b;
}

std::string counts(const SweepReport& r) {
  return std::to_string(r.count(Status::pass)) + "/" + std::to_string(r.results.size());
}

bool backends_agree_all = true;
bool determinism_all = true;

Outcome criterion_thm1() {
  SweepOptions o;
  o.theorem = TheoremId::thm1;
  o.pmax = 400;
  o.jobs = 1;
  auto t0 = std::chrono::steady_clock::now();
  const auto both = sweep_both(o);
  const double single = seconds_since(t0);
  o.jobs = 8;
  t0 = std::chrono::steady_clock::now();
  const auto par = sweep(o);
  const double parallel = seconds_since(t0);
  determinism_all = determinism_all && to_json(par) == to_json(both.exact);
  backends_agree_all = backends_agree_all && both.agree;
  Outcome out;
  out.pass = both.exact.passed() && both.complex.passed() && both.agree && !both.exact.results.empty() &&
             single < kThm1SingleSeconds && parallel < kThm1ParallelSeconds;
  std::ostringstream d;
  d << "exact " << counts(both.exact) << ", complex " << counts(both.complex) << " (tol " << kComplexTolerance
    << "), 7 r-values, p<=400; " << single << "s single, " << parallel << "s with 8 workers";
  out.detail = d.str();
  return out;
}

Outcome criterion_thm2() {
  SweepOptions o;
  o.theorem = TheoremId::thm2;
  o.pmax = 1000;
  o.jobs = 8;
  const auto both = sweep_both(o);
  backends_agree_all = backends_agree_all && both.agree;
  const auto a27 = eigen_coefficient(KFamily::K5, Rational(1, 3), 7);
  const auto a36 = eigen_coefficient(KFamily::K5, Rational(1, 2), 7);
  const bool anchors = a27 == -1 && a36 == -4 && a27 == oracle::trace_of_frobenius(7, 0, 0, 1, 0, -7) &&
                       a36 == oracle::trace_of_frobenius(7, 0, 0, 0, 0, 1);
  Outcome out;
  out.pass = both.exact.passed() && both.complex.passed() && anchors && !both.exact.results.empty();
  out.detail = "exact " + counts(both.exact) + ", complex " + counts(both.complex) +
               ", p<=1000; a7(27.2.a.a)=" + a27.get_str() + ", a7(36.2.a.a)=" + a36.get_str() + " match point counts";
  return out;
}

Outcome criterion_appell() {
  SweepOptions o;
  o.theorem = TheoremId::f1;
  o.pmax = 500;
  o.jobs = 8;
  const auto f1 = sweep_both(o);
  o.theorem = TheoremId::f2;
  o.pmax = 300;
  const auto f2 = sweep_both(o);
  backends_agree_all = backends_agree_all && f1.agree && f2.agree;
  Outcome out;
  out.pass = f1.exact.passed() && f1.complex.passed() && f2.exact.passed() && f2.complex.passed() &&
             !f1.exact.results.empty() && !f2.exact.results.empty();
  out.detail = "F1 p<=500 exact " + counts(f1.exact) + ", complex " + counts(f1.complex) +
               "; F2 p<=300, c' in {1/2,1/4,1/6} exact " + counts(f2.exact) + ", complex " + counts(f2.complex);
  return out;
}

Outcome criterion_identities() {
  const std::vector<std::string> names = {"3F2_hauptmodul", "derivative", "hauptmodul_theta",
                                          "K4eval",         "K5eval",     "derivative-2"};
  bool all = true, detected = true;
  std::size_t compared = 0, perturbations = 0;
  for (const auto& n : names) {
    const auto rep = check_identity(n, kIdentityPrecision);
    all = all && rep.passed;
    compared += rep.compared;
    for (std::int64_t g : {std::int64_t{24}, std::int64_t{24 * 97 + 3}, std::int64_t{24 * 199 + 12}}) {
      IdentityOptions opt;
      opt.perturb_grid_exponent = g;
      const auto bad = check_identity(n, kIdentityPrecision, opt);
      detected = detected && !bad.passed && bad.first_mismatch == g;
      ++perturbations;
    }
  }
  Outcome out;
  out.pass = all && detected;
  out.detail = std::to_string(names.size()) + " identity groups (K4eval: 23 r, K5eval: 7 r, cubic triple) to q^" +
               std::to_string(kIdentityPrecision) + ", " + std::to_string(compared) + " coefficients; " +
               std::to_string(perturbations) + " perturbations " + (detected ? "all detected" : "MISSED");
  return out;
}

Outcome criterion_congruences() {
  std::size_t ar_total = 0, ar_pass = 0;
  for (const auto& r : weight2_r_values()) {
    for (auto p : split_primes(lcd({Rational(1, 3), r}), 500)) {
      ++ar_total;
      ar_pass += check_ar_congruence(r, p).passed;
    }
  }
  const auto anchor = check_ar_congruence(Rational(1, 3), 7);
  const bool anchor_ok = anchor.a_r == Rational(5, 9) && anchor.lhs.residue == 6 && anchor.rhs.residue == 6;

  std::size_t psi_total = 0, literal = 0, column = 0, explained = 0;
  for (const auto& r : weight4_r_values()) {
    const auto hd = k4_datum(r);
    for (auto p : split_primes(hd.M, 500)) {
      const auto rep = psi_hd_mod_p(hd, -64, p);
      ++psi_total;
      literal += rep.gamma_side == rep.table_side;
      column += rep.character_side == rep.table_side;
      explained += rep.passed;
    }
  }
  Outcome out;
  const bool ar_ok = ar_pass == ar_total && anchor_ok;
  out.pass = ar_ok && literal == psi_total;
  out.analysed = !out.pass && ar_ok && column == psi_total && explained == psi_total;
  std::ostringstream d;
  d << "A_r " << ar_pass << "/" << ar_total << " (anchor r=1/3,p=7: 5/9=6, -J=6 " << (anchor_ok ? "ok" : "BAD")
    << "); psi column = iota(r)(-64) " << column << "/" << psi_total << "; Gamma_p psi_HD = column " << literal << "/"
    << psi_total << ", = iota(1/2)(-1)*column " << explained << "/" << psi_total;
  if (out.analysed) d << "; psi_HD differs from the column by iota(1/2)(-1) at p=3 mod 4";
  out.detail = d.str();
  return out;
}

Outcome criterion_properties() {
  std::ostringstream d;
  // Gauss and Jacobi sums
  bool gj = true;
  for (long p : {5L, 7L, 11L, 13L, 29L, 37L}) {
    const auto f = PrimeField::build(p);
    const auto ev = Evaluator::complex(f);
    gj = gj && std::abs(gauss_sum(ev, Character::trivial(f)) + 1.0) < 1e-9;
    const auto phi = Character::from_rational(f, Rational(1, 2));
    gj = gj && std::abs(jacobi_sum(ev, phi, phi).as_complex() + static_cast<double>(phi.at_minus_one())) < 1e-9;
    for (long a = 1; a < p - 1; ++a) {
      const auto A = Character::from_exponent(f, a);
      gj = gj && std::abs(std::norm(gauss_sum(ev, A)) - static_cast<double>(p)) < 1e-6;
      for (long b = 0; b < p - 1; ++b) {
        const auto B = Character::from_exponent(f, b);
        if ((A * B).is_trivial()) continue;
        const auto lhs = jacobi_sum(ev, A, B).as_complex();
        gj = gj && std::abs(lhs - gauss_sum(ev, A) * gauss_sum(ev, B) / gauss_sum(ev, A * B)) < 1e-6;
      }
    }
  }
  // Greene / period relation on the modular backend
  bool rel = true;
  std::mt19937 rng(20240917);
  std::size_t rel_cases = 0;
  for (auto p : split_primes(1, 200)) {
    if (p < 5) continue;
    const auto f = PrimeField::build(p);
    const auto ev = Evaluator::modular(f, Integer(1) << 64);
    std::uniform_int_distribution<long> pick(0, static_cast<long>(p) - 2);
    for (std::size_t len = 2; len <= 3; ++len) {
      DatumCharacters chars;
      std::int64_t sign = 1;
      for (std::size_t i = 0; i < len; ++i) {
        chars.top.push_back(Character::from_exponent(f, pick(rng)));
        if (i > 0) {
          chars.bottom.push_back(Character::from_exponent(f, pick(rng)));
          sign *= chars.top[i].at_minus_one() * chars.bottom[i - 1].at_minus_one();
        }
      }
      const long z = 1 + static_cast<long>(rng() % (p - 1));
      auto rhs = greene_F(ev, chars, z);
      for (std::size_t i = 1; i < len; ++i) rhs *= static_cast<std::int64_t>(p);
      rhs *= sign;
      rel = rel && (period_P(ev, chars, z) - rhs).is_zero();
      ++rel_cases;
    }
  }
  // Katz-Weil on the weight-four and weight-two data
  bool kw = true;
  for (const auto& r : weight4_r_values()) {
    const auto hd = k4_datum(r);
    for (auto p : split_primes(hd.M, 200)) {
      const auto v = P_HD(Evaluator::complex(PrimeField::build(p)), hd, 1).as_complex();
      kw = kw && std::abs(v) <= 3 * std::pow(static_cast<double>(p), 1.5) + 1e-6;
    }
  }
  for (const auto& r : weight2_r_values()) {
    for (const auto& hd : {k5_datum(r), k5_conjugate_datum(r)}) {
      for (auto p : split_primes(hd.M, 500)) {
        const auto v = P_HD(Evaluator::complex(PrimeField::build(p)), hd, 1).as_complex();
        kw = kw && std::abs(v) <= std::sqrt(static_cast<double>(p)) + 1e-6;
      }
    }
  }
  // Deligne
  double worst = 0;
  for (const char* id : {"k4-1", "k4-3", "k4-4", "k4-5", "k4-6", "k4-7", "k5-1", "k5-2", "k5-3", "k5-4"}) {
    worst = std::max(worst, deligne_ratio(find_family(id), 1000));
  }
  const bool deligne = worst <= 1.0;
  // Determinism for every theorem at a reduced range
  for (auto t : {TheoremId::thm2, TheoremId::f1, TheoremId::f2}) {
    SweepOptions o;
    o.theorem = t;
    o.pmax = 200;
    o.jobs = 1;
    const auto a = to_json(sweep(o));
    o.jobs = 3;
    const auto b = to_json(sweep(o));
    o.jobs = 8;
    const auto c = to_json(sweep(o));
    determinism_all = determinism_all && a == b && b == c;
  }
  d << "Gauss/Jacobi " << (gj ? "ok" : "FAIL") << "; Greene/period " << rel_cases << " cases p<=200 "
    << (rel ? "exact" : "FAIL") << "; Katz-Weil " << (kw ? "ok" : "FAIL") << "; Deligne max ratio " << worst
    << "; backends " << (backends_agree_all ? "agree" : "DISAGREE") << "; sweeps "
    << (determinism_all ? "deterministic" : "NONDETERMINISTIC");
  Outcome o;
  o.pass = gj && rel && kw && deligne && backends_agree_all && determinism_all;
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Hecke tables", criterion_hecke},
      {"eigenvector completions", criterion_eigen},
      {"weight-four identity", criterion_thm1},
      {"weight-two identity", criterion_thm2},
      {"Appell F1/F2 identities", criterion_appell},
      {"q-series identities", criterion_identities},
      {"congruences", criterion_congruences},
      {"property suites", criterion_properties},
  };
  int unexplained = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.detail = std::string("error: ") + e.what();
    }
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && !o.analysed) ++unexplained;
  }
  return unexplained == 0 ? 0 : 1;
}
