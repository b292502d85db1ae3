#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hypmod {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; a must be a unit.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Reduces a signed integer into [0, m).
inline std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m) {
  auto r = a % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Primes p <= limit with p % modulus == 1, ascending. Starts at 3.
std::vector<std::uint64_t> split_primes(std::uint64_t modulus, std::uint64_t limit);

/// Parses "a/b", "a", or "-a/b".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// Least common multiple of denominators; 1 for an empty list.
std::uint64_t lcd(const std::vector<Rational>& values);

/// r mod 1, in [0, 1).
Rational frac(const Rational& r);

/// n/d in canonical form (d may be negative).
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Residue of the rational r modulo p; the denominator must be a unit mod p.
std::uint64_t rational_mod(const Rational& r, std::uint64_t p);

std::int64_t to_int64(const Integer& z);

}  // namespace hypmod
