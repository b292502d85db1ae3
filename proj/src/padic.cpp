#include "hypmod/padic.hpp"

#include "hypmod/error.hpp"
#include "hypmod/hecke.hpp"

namespace hypmod {

namespace {

const Rational kThird(1, 3);
const Rational kTwoThirds(2, 3);

std::uint64_t exponent_for(const Rational& r, std::uint64_t p) {
  const Rational e = Rational(p - 1) * (1 - r);
  if (!is_integer(e)) {
    throw Error(ErrorCode::DenominatorNotDividing,
                "denominator of " + to_string(r) + " does not divide " + std::to_string(p - 1));
  }
  Integer m;
  mpz_fdiv_r_ui(m.get_mpz_t(), e.get_num().get_mpz_t(), p - 1);
  return m.get_ui();
}

void require_split(const std::vector<Rational>& params, std::uint64_t p) {
  const auto m = lcd(params);
  if ((p - 1) % m != 0) {
    throw Error(ErrorCode::PrimeNotSplit, "p = " + std::to_string(p) + " is not 1 mod " + std::to_string(m));
  }
}

ModPValue neg(ModPValue v) { return {(v.p - v.residue) % v.p, v.p}; }

ModPValue mul(ModPValue a, ModPValue b) { return {mulmod(a.residue, b.residue, a.p), a.p}; }

}  // namespace

std::int64_t ModPValue::centered() const {
  const auto r = static_cast<std::int64_t>(residue);
  return 2 * residue > p ? r - static_cast<std::int64_t>(p) : r;
}

ModPValue mod_p(const Rational& x, std::uint64_t p) { return {rational_mod(x, p), p}; }

ModPValue gamma_p(const Rational& x, std::uint64_t p) {
  if (x.get_den() % static_cast<unsigned long>(p) == 0) {
    throw Error(ErrorCode::DenominatorDivisibleByP, to_string(x) + " is not p-integral for p = " + std::to_string(p));
  }
  const auto n = rational_mod(x, p);
  std::uint64_t prod = 1;
  for (std::uint64_t j = 1; j < n; ++j) prod = mulmod(prod, j, p);
  if (n & 1U) prod = (p - prod) % p;
  return {prod, p};
}

ModPValue iota_mod_p(const Rational& r, const Rational& x, std::uint64_t p) {
  const auto base = rational_mod(x, p);
  if (base == 0) return {0, p};
  return {powmod(base, exponent_for(r, p), p), p};
}

ModPValue jacobi_mod_p(const Rational& a, const Rational& b, std::uint64_t p) {
  auto A = exponent_for(a, p), B = exponent_for(b, p);
  if (A == 0) A = p - 1;
  if (B == 0) B = p - 1;
  std::uint64_t s = 0;
  for (std::uint64_t x = 2; x < p; ++x) {
    s += mulmod(powmod(x, A, p), powmod(p + 1 - x, B, p), p);
    if (s >= p) s -= p;
  }
  return {s, p};
}

Rational a_r_coefficient(const Rational& r, std::uint64_t k) {
  Rational out = 1;
  const Rational a = r + kThird;
  for (std::uint64_t i = 0; i < k; ++i) {
    out *= a + Rational(i);
    out /= Rational(i + 1);
  }
  return out;
}

ArCongruenceReport check_ar_congruence(const Rational& r, std::uint64_t p) {
  require_split({kThird, r}, p);
  ArCongruenceReport rep;
  rep.r = r;
  rep.p = p;
  rep.k = static_cast<std::uint64_t>(Rational(Rational(p - 1) * r).get_num().get_ui());
  rep.a_r = a_r_coefficient(r, rep.k);
  rep.lhs = mod_p(rep.a_r, p);
  rep.rhs = neg(jacobi_mod_p(r, kTwoThirds - r, p));
  rep.passed = rep.lhs == rep.rhs;
  return rep;
}

PsiEntry psi_table_entry(const Rational& r) {
  if (r == Rational(1, 2)) return {r, -1};
  if (r == Rational(1, 3) || r == Rational(1, 4)) return {0, 1};
  if (r == Rational(1, 6)) return {r, -1};
  if (r == Rational(1, 8) || r == Rational(1, 12) || r == Rational(1, 24)) return {r, -64};
  throw Error(ErrorCode::NotInS4, "no psi entry for r = " + to_string(r));
}

PsiReport psi_hd_mod_p(const HypergeometricDatum& hd, long C1, std::uint64_t p) {
  std::vector<Rational> params = hd.alpha;
  params.insert(params.end(), hd.beta.begin(), hd.beta.end());
  require_split(params, p);
  const auto n = hd.length();
  const auto& rn = hd.alpha.back();
  PsiReport rep;
  rep.r = rn;
  rep.p = p;

  // C1^((p-1) r_n) = iota(1 - r_n)(C1)
  ModPValue g = iota_mod_p(1 - rn, Rational(C1), p);
  g = mul(g, gamma_p(hd.beta.back() - rn, p));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    g = mul(g, {invmod(gamma_p(hd.alpha[i], p).residue, p), p});
  }
  if ((n - 1) % 2 == 1) g = neg(g);
  rep.gamma_side = g;
  rep.character_side = iota_mod_p(rn, Rational(C1), p);
  rep.quadratic = iota_mod_p(Rational(1, 2), -1, p);
  rep.table_side = rep.character_side;
  if (hd.family == NamedFamily::k4) {
    const auto e = psi_table_entry(rn);
    rep.table_side = iota_mod_p(e.s, Rational(e.x), p);
  }
  rep.passed = rep.gamma_side == mul(rep.quadratic, rep.character_side) && rep.character_side == rep.table_side;
  return rep;
}

EigenCongruenceReport check_eigencoefficient_congruence(const Rational& r, std::uint64_t p) {
  require_split({kThird, r}, p);
  const auto& fam = family_for(KFamily::K5, r);
  if (p % 3 == 0 || fam.level % static_cast<long>(p) == 0) {
    throw Error(ErrorCode::PrimeNotSplit, "p divides the level");
  }
  EigenCongruenceReport rep;
  rep.r = r;
  rep.p = p;
  rep.a_p = fam.basis_element(1, static_cast<std::int64_t>(p) + 1).coefficient_at(static_cast<std::int64_t>(p)).get_si();
  rep.lhs = neg(mul(iota_mod_p(r, Rational(1, 27), p), mod_p(Rational(rep.a_p), p)));
  rep.rhs = jacobi_mod_p(r, kTwoThirds - r, p);
  rep.companion = mul(iota_mod_p(1 - r, 27, p), jacobi_mod_p(1 - r, r - kTwoThirds, p));
  rep.passed = rep.lhs == rep.rhs && rep.companion.residue == 0;
  return rep;
}

}  // namespace hypmod
