#include <sstream>

#include "doctest.h"
#include "hypmod/qseries.hpp"

using namespace hypmod;

namespace {

// Naive oracle: multiply out prod (1 - q^n) directly.
std::vector<long> naive_euler(int terms) {
  std::vector<long> c(terms, 0);
  c[0] = 1;
  for (int n = 1; n < terms; ++n) {
    for (int i = terms - 1; i >= n; --i) c[i] -= c[i - n];
  }
  return c;
}

// Naive oracle for eta products with positive exponents at integer scales.
std::vector<long> naive_eta_product(const std::vector<std::pair<int, int>>& factors, int terms) {
  std::vector<long> c(terms, 0);
  c[0] = 1;
  for (auto [d, e] : factors) {
    for (int rep = 0; rep < e; ++rep) {
      for (int n = 1; n * d < terms; ++n) {
        for (int i = terms - 1; i >= n * d; --i) c[i] -= c[i - n * d];
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("eta(tau) against the Euler product") {
  const auto eta = eta_series(1, 1, 6);
  const long expected[] = {1, -1, -1, 0, 0, 1};
  for (int n = 0; n < 6; ++n) CHECK(eta.coefficient_grid(1 + 24 * n) == expected[n]);
  CHECK(eta.coefficient_grid(2) == 0);
  const auto naive = naive_euler(300);
  const auto long_eta = eta_series(1, 1, 300);
  for (int n = 0; n + 1 < 300; ++n) CHECK(long_eta.coefficient_grid(1 + 24 * n) == naive[n]);
}

TEST_CASE("off-grid eta factors are rejected") {
  CHECK_THROWS_AS(eta_series(Rational(1, 3), 1, 10), Error);
  try {
    eta_series(Rational(1, 3), 1, 10);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OffGridFactor);
  }
  const auto s = eta_series(Rational(1, 2), 2, 5);
  CHECK(s.leading_exponent() == 1);
  CHECK(s.coefficient_grid(1) == 1);
}

TEST_CASE("Euler product consistency") {
  for (int prec : {1, 7, 60}) {
    const auto one = eta_series(1, 1, prec) * eta_series(1, -1, prec);
    CHECK(one.prec() == prec * kGrid - 1);
    CHECK(one.coefficient_grid(0) == 1);
    for (std::size_t i = 0; i < one.coeffs().size(); ++i) {
      if (one.exponent_at(i) != 0) CHECK(one.coeffs()[i] == 0);
    }
  }
}

TEST_CASE("K4 and K5 expansions") {
  const auto k = k4_series(Rational(1, 3), 40);
  const auto e8 = eta_series(1, 8, 40);
  for (std::int64_t g = 0; g < 40 * kGrid; ++g) CHECK(k.coefficient_grid(g) == e8.coefficient_grid(g));

  const auto half = k4_series(Rational(1, 2), 20).rescale(2);
  CHECK(half.leading_exponent() == kGrid);
  CHECK(coefficient_at(half, 3) == -4);
  const auto naive = naive_eta_product({{4, 4}, {2, 4}}, 40);
  for (int n = 1; n < 40; ++n) CHECK(half.coefficient_at(n) == naive[n - 1]);

  CHECK(coefficient_at(k5_series(Rational(1, 3), 10).rescale(3), 7) == -1);
  CHECK(coefficient_at(k5_series(Rational(1, 2), 10).rescale(2), 7) == -4);
  CHECK_THROWS_AS(k4_series(Rational(1, 5), 10), Error);
  CHECK_THROWS_AS(k5_series(Rational(3, 4), 10), Error);
  CHECK_THROWS_AS(coefficient_at(half, 40), Error);

  for (const auto& r : S4_values()) {
    const auto s = k4_series(r, 12);
    CHECK(*s.leading_exponent() == to_int64(Rational(r * 24).get_num()));
    const auto n = static_cast<long>(r.get_den().get_si());
    CHECK(s.rescale(n).on_integer_grid());
  }
  for (const auto& r : S5_values()) {
    const auto s = k5_series(r, 12);
    CHECK(*s.leading_exponent() == to_int64(Rational(r * 24).get_num()));
  }
}

TEST_CASE("support on residue classes to q^600") {
  for (long m : {8L, 12L, 24L}) {
    for (long j = 1; j < m; ++j) {
      if (std::gcd(j, m) != 1) continue;
      const auto s = k4_series(Rational(j, m), 600 / m + 1).rescale(m).truncated(600 * kGrid);
      const auto shape = support_shape(s);
      CHECK(shape.offset == j);
      CHECK(shape.gap % m == 0);
    }
  }
}

TEST_CASE("theta and cubic theta functions") {
  const auto th2 = theta_and_borwein("theta2", 20);
  CHECK(th2.leading_exponent() == 3);
  CHECK(th2.coefficient_grid(3) == 2);
  const auto a = theta_and_borwein("a", 30);
  CHECK(a.on_integer_grid());
  CHECK(a.coefficient_at(0) == 1);
  CHECK(a.coefficient_at(1) == 6);
  const auto lhs = a.pow(3);
  const auto rhs = theta_and_borwein("b", 50).pow(3) + theta_and_borwein("c", 50).pow(3);
  for (int n = 0; n < 30; ++n) CHECK(lhs.coefficient_at(n) == rhs.coefficient_at(n));
  CHECK_THROWS_AS(theta_and_borwein("theta5", 5), Error);
}

TEST_CASE("Hauptmoduls") {
  const auto t2 = hauptmodul("t2", 30);
  CHECK(t2.leading_exponent() == kGrid);
  CHECK(t2.coefficient_at(1) == -64);
  const auto t3 = hauptmodul("t3", 30);
  CHECK(t3.on_integer_grid());
  CHECK(t3.coefficient_at(1) == 27);
  CHECK(t3.prec() >= 30 * kGrid);
}

TEST_CASE("classical hypergeometric coefficients") {
  const Rational r(1, 5);
  const auto f = classical_hyp_series({Rational(1, 3), r}, {1}, 5);
  CHECK(f.coefficient_at(0) == 1);
  CHECK(f.coefficient_at(1) == Rational(1, 3) * r);
  const auto g = classical_hyp_series({Rational(1, 2), Rational(1, 2), Rational(1, 2)}, {1, 1}, 4);
  // (1/2)_2 = 3/4, (1)_2 = 2
  CHECK(g.coefficient_at(2) == Rational(27, 64) / 4 / 2);
  CHECK_THROWS_AS(classical_hyp_series({1, 1, 1}, {0, 1}, 4), Error);
}

TEST_CASE("fractional powers and log derivatives") {
  const auto one_minus_q = RatSeries(0, kGrid, {1, -1}, 50 * kGrid);
  const auto root = frac_power(one_minus_q, Rational(1, 2), 50);
  const auto sq = root * root;
  CHECK(sq.coefficient_at(0) == 1);
  CHECK(sq.coefficient_at(1) == -1);
  for (int n = 2; n < 50; ++n) CHECK(sq.coefficient_at(n) == 0);
  const auto sq2 = frac_power(RatSeries(0, kGrid, {1, 1}, 10 * kGrid), 2, 10);
  CHECK(sq2.coefficient_at(1) == 2);
  CHECK(sq2.coefficient_at(2) == 1);
  CHECK(sq2.coefficient_at(3) == 0);
  CHECK_THROWS_AS(frac_power(RatSeries(0, kGrid, {2, 1}, 10 * kGrid), 2, 10), Error);
  const auto d = q_log_derivative(RatSeries::monomial(Rational(3), 5 * kGrid, 20 * kGrid));
  CHECK(d.coefficient_at(0) == 5);
  CHECK(d.leading_exponent() == 0);
}

TEST_CASE("integer powers agree with repeated multiplication") {
  const auto s = eta_series(1, 1, 30);
  auto acc = s;
  for (int e = 2; e <= 5; ++e) {
    acc = acc * s;
    const auto p = s.pow(e);
    for (std::int64_t g = 0; g < 30 * kGrid; ++g) CHECK(acc.coefficient_grid(g) == p.coefficient_grid(g));
  }
}

TEST_CASE("identity catalog at small precision") {
  for (const auto& name : identity_names()) {
    CAPTURE(name);
    const auto rep = check_identity(name, 25);
    CHECK(rep.passed);
  }
}

TEST_CASE("perturbations are detected") {
  IdentityOptions opt;
  opt.perturb_grid_exponent = 5 * kGrid;
  const auto rep = check_identity("3F2_hauptmodul", 20, opt);
  CHECK_FALSE(rep.passed);
  CHECK(rep.first_mismatch == 5 * kGrid);
  CHECK_THROWS_AS(verify_identity("3F2_hauptmodul", 20, opt), Error);
}

TEST_CASE("fixture round trip") {
  const auto s = k4_series(Rational(1, 2), 5).convert<Rational>();
  std::stringstream ss;
  write_series_fixture(ss, s);
  const auto lines = read_series_fixture(ss);
  REQUIRE(!lines.empty());
  CHECK(lines[0].grid_exponent == 12);
  CHECK(lines[0].value == "1");
}
