#include "doctest.h"
#include "hypmod/error.hpp"
#include "hypmod/padic.hpp"
#include "oracles.hpp"

using namespace hypmod;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

// x0 in {0..p-1} with x0 * den = num mod p, by search.
long representative(long num, long den, long p) {
  for (long x = 0; x < p; ++x) {
    if (((x * den - num) % p + p) % p == 0) return x;
  }
  return -1;
}

long gamma_oracle(long n, long p) {
  long prod = 1;
  for (long j = 1; j < n; ++j) {
    if (j % p != 0) prod = prod * j % p;
  }
  return n % 2 == 1 ? (p - prod) % p : prod;
}

long binom_mod(long n, long k, long p) {
  long r = 1;
  for (long i = 0; i < k; ++i) r = r * ((n - i) % p) % p * invmod(static_cast<std::uint64_t>(i + 1), p) % p;
  return r;
}

// sum_x x^A (1-x)^B = -sum_{k : (p-1) | A+k} C(B,k)(-1)^k mod p, A, B in 1..p-1.
long jacobi_power_sum_oracle(long A, long B, long p) {
  long s = 0;
  for (long k = 0; k <= B; ++k) {
    if ((A + k) % (p - 1) != 0) continue;
    const long t = binom_mod(B, k, p);
    s += (k % 2 == 0) ? t : p - t;
  }
  return (p - s % p) % p;
}

const std::vector<Rational> kS5 = {Rational(1, 2), Rational(1, 3), Rational(1, 6), Rational(1, 12)};
const std::vector<Rational> kS4 = {Rational(1, 2), Rational(1, 3),  Rational(1, 4), Rational(1, 6),
                                   Rational(1, 8), Rational(1, 12), Rational(1, 24)};

}  // namespace

TEST_CASE("gamma_p anchors") {
  CHECK(gamma_p(0, 7).residue == 1);
  CHECK(gamma_p(3, 7).residue == 5);
  CHECK(gamma_p(1, 7).residue == 6);
  CHECK(gamma_p(7, 7).residue == 1);
  CHECK(gamma_p(5, 5).residue == 1);
  CHECK(code_of([] { gamma_p(Rational(1, 7), 7); }) == ErrorCode::DenominatorDivisibleByP);
}

TEST_CASE("gamma_p against the defining product") {
  for (long p : {5L, 7L, 11L, 13L, 37L}) {
    for (long num = -30; num <= 30; ++num) {
      for (long den : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 24L}) {
        if (den % p == 0) continue;
        const long x0 = representative(num, den, p);
        CAPTURE(p);
        CAPTURE(num);
        CAPTURE(den);
        CHECK(gamma_p(ratio(num, den), p).residue == static_cast<std::uint64_t>(gamma_oracle(x0, p)));
      }
    }
    // Wilson: Gamma_p(p) = (-1)^p (p-1)! = 1 mod p
    long fact = 1;
    for (long j = 1; j < p; ++j) fact = fact * j % p;
    CHECK((p - fact) % p == 1);
    CHECK(gamma_p(p, p).residue == 1);
  }
}

TEST_CASE("gamma_p reflection sign") {
  // Observed: Gamma_p(x) Gamma_p(1-x) = (-1)^x for x in 1..p, so the sign
  // alternates with x rather than staying fixed.
  for (long p : {5L, 7L, 11L, 13L, 101L}) {
    for (long x = 1; x <= p; ++x) {
      const auto prod = mulmod(gamma_p(x, p).residue, gamma_p(1 - x, p).residue, p);
      const std::uint64_t expected = (x % 2 == 1) ? p - 1 : 1;
      CHECK(prod == expected);
    }
  }
}

TEST_CASE("jacobi_mod_p") {
  CHECK(jacobi_mod_p(Rational(1, 3), Rational(1, 3), 7).residue == 1);
  CHECK(jacobi_mod_p(1, 1, 7).residue == 5);
  CHECK(code_of([] { jacobi_mod_p(Rational(1, 5), Rational(1, 3), 7); }) == ErrorCode::DenominatorNotDividing);
  for (long p : {7L, 13L, 37L, 73L}) {
    for (long a = 0; a < p - 1; ++a) {
      for (long b = 0; b < p - 1; b += 5) {
        const long A = (p - 1 - a) == 0 ? p - 1 : p - 1 - a;
        const long B = (p - 1 - b) == 0 ? p - 1 : p - 1 - b;
        CHECK(jacobi_mod_p(ratio(a, p - 1), ratio(b, p - 1), p).residue ==
              static_cast<std::uint64_t>(jacobi_power_sum_oracle(A, B, p)));
      }
    }
  }
}

TEST_CASE("teichmueller embedding") {
  // iota(r)(x) = x^((p-1)(1-r)); iota(1/2)(-1) is the Legendre symbol of -1.
  for (long p : {5L, 13L, 17L, 29L}) {
    CHECK(iota_mod_p(Rational(1, 2), -1, p).centered() == oracle::legendre(-1, p));
    CHECK(iota_mod_p(0, 2, p).residue == 1);
    CHECK(iota_mod_p(Rational(1, 4), 0, p).residue == 0);
  }
  CHECK(iota_mod_p(Rational(1, 3), Rational(1, 27), 7).residue == 1);
}

TEST_CASE("A_r coefficients") {
  CHECK(a_r_coefficient(Rational(1, 3), 0) == 1);
  CHECK(a_r_coefficient(Rational(1, 3), 1) == Rational(2, 3));
  CHECK(a_r_coefficient(Rational(1, 3), 2) == Rational(5, 9));
  CHECK(a_r_coefficient(Rational(1, 2), 3) == Rational(5, 6) * Rational(11, 6) * Rational(17, 6) / 6);
}

TEST_CASE("A_r congruence") {
  const auto anchor = check_ar_congruence(Rational(1, 3), 7);
  CHECK(anchor.k == 2);
  CHECK(anchor.a_r == Rational(5, 9));
  CHECK(anchor.lhs.residue == 6);
  CHECK(anchor.rhs.residue == 6);
  CHECK(anchor.passed);
  CHECK(check_ar_congruence(Rational(1, 2), 13).passed);
  CHECK(code_of([] { check_ar_congruence(Rational(1, 12), 7); }) == ErrorCode::PrimeNotSplit);
  for (const auto& r : kS5) {
    for (auto p : split_primes(lcd({Rational(1, 3), r}), 500)) {
      CAPTURE(p);
      CHECK(check_ar_congruence(r, p).passed);
    }
  }
}

TEST_CASE("psi_HD against the psi column") {
  for (const auto& r : kS4) {
    const auto hd = k4_datum(r);
    for (auto p : split_primes(hd.M, 500)) {
      CAPTURE(r.get_str());
      CAPTURE(p);
      const auto rep = psi_hd_mod_p(hd, -64, p);
      CHECK(rep.passed);
      CHECK(rep.character_side == rep.table_side);
    }
  }
  // r = 1/3: the psi entry is 1, the Gamma_p side carries iota(1/2)(-1).
  CHECK(psi_hd_mod_p(k4_datum(Rational(1, 3)), -64, 13).gamma_side.residue == 1);
  CHECK(psi_hd_mod_p(k4_datum(Rational(1, 3)), -64, 7).gamma_side.residue == 6);
  CHECK(psi_hd_mod_p(k4_datum(Rational(1, 3)), -64, 7).table_side.residue == 1);
  const auto r8 = psi_hd_mod_p(k4_datum(Rational(1, 8)), -64, 17);
  CHECK(r8.character_side == iota_mod_p(Rational(1, 8), -64, 17));
  CHECK(r8.passed);
  CHECK(code_of([] { psi_hd_mod_p(k4_datum(Rational(1, 8)), -64, 13); }) == ErrorCode::PrimeNotSplit);
}

TEST_CASE("eigencoefficient congruence") {
  const auto anchor = check_eigencoefficient_congruence(Rational(1, 3), 7);
  CHECK(anchor.a_p == -1);
  CHECK(anchor.passed);
  CHECK(check_eigencoefficient_congruence(Rational(1, 2), 13).passed);
  CHECK(code_of([] { check_eigencoefficient_congruence(Rational(1, 6), 5); }) == ErrorCode::PrimeNotSplit);
  for (const auto& r : kS5) {
    for (auto p : split_primes(lcd({Rational(1, 3), r}), 200)) {
      if (p == 3) continue;
      CAPTURE(r.get_str());
      CAPTURE(p);
      CHECK(check_eigencoefficient_congruence(r, p).passed);
    }
  }
}
