#include "hypmod/arith.hpp"

#include <numeric>
#include <utility>

#include "hypmod/error.hpp"

namespace hypmod {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const auto q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorCode::DivisionByZero, "not invertible modulo " + std::to_string(m));
  return reduce_signed(t, m);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    auto x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> split_primes(std::uint64_t modulus, std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p <= limit; p += 2) {
    if (p % modulus == 1 % modulus && is_prime(p)) out.push_back(p);
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::uint64_t lcd(const std::vector<Rational>& values) {
  std::uint64_t acc = 1;
  for (const auto& v : values) acc = std::lcm(acc, v.get_den().get_ui());
  return acc;
}

Rational frac(const Rational& r) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return r - Rational(fl);
}

std::uint64_t rational_mod(const Rational& r, std::uint64_t p) {
  mpz_class num = r.get_num(), den = r.get_den();
  mpz_class pm(static_cast<unsigned long>(p));
  mpz_class n = num % pm;
  if (n < 0) n += pm;
  mpz_class d = den % pm;
  if (d == 0) throw Error(ErrorCode::DenominatorDivisibleByP, to_string(r) + " mod " + std::to_string(p));
  return mulmod(n.get_ui(), invmod(d.get_ui(), p), p);
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::Inconsistent, "integer out of 64-bit range: " + z.get_str());
  return z.get_si();
}

}  // namespace hypmod
