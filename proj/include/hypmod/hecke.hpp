#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypmod/numberfield.hpp"
#include "hypmod/qseries.hpp"

namespace hypmod {

enum class Nebentypus { Trivial, Chi2, Chi3 };

std::string to_string(Nebentypus chi);

/// chi(p), zero when p divides the level. Chi2 = (2/.), Chi3 = (3/.).
int nebentypus_value(Nebentypus chi, long p, long level);

/// b_n = a_(np) + chi(p) p^(k-1) a_(n/p). Throws InsufficientPrecision when
/// the output would not reach min_output (q units, exclusive).
template <class R>
FormalQSeries<R> hecke_Tp(const FormalQSeries<R>& f, long p, int k, long level, Nebentypus chi,
                          std::optional<std::int64_t> min_output = std::nullopt) {
  if (!f.on_integer_grid()) throw Error(ErrorCode::OffGridFactor, "Hecke operators need integer q-exponents");
  const std::int64_t last = f.prec() > 0 ? (f.prec() - 1) / kGrid : -1;
  const std::int64_t out_last = last >= 0 ? last / p : -1;
  if (min_output && out_last + 1 < *min_output) {
    throw Error(ErrorCode::InsufficientPrecision, "T_" + std::to_string(p) + " output reaches q^" +
                                                      std::to_string(out_last + 1) + ", need q^" +
                                                      std::to_string(*min_output));
  }
  const int c = nebentypus_value(chi, p, level);
  R weight_factor = 0;
  if (c != 0) {
    Integer pk = 1;
    for (int i = 0; i < k - 1; ++i) pk *= p;
    weight_factor = R(pk * c);
  }
  std::vector<R> out(static_cast<std::size_t>(out_last + 1));
  for (std::int64_t n = 0; n <= out_last; ++n) {
    R b = f.coefficient_grid(n * p * kGrid);
    if (c != 0 && n % p == 0) b += weight_factor * f.coefficient_grid(n / p * kGrid);
    out[static_cast<std::size_t>(n)] = std::move(b);
  }
  return FormalQSeries<R>(0, kGrid, std::move(out), (out_last + 1) * kGrid);
}

/// Coefficients c with s = sum c_i basis_i to the shared precision.
/// Throws ResidualNonZero, InsufficientPrecision.
std::vector<Rational> decompose_in_basis(const RatSeries& s, const std::vector<RatSeries>& basis,
                                         int margin = 10);

enum class KFamily { K4, K5 };

struct Completion {
  std::string label;
  /// (j, d_j); d_1 = 1.
  std::vector<std::pair<long, NumberFieldElement>> coeffs;
};

struct EigenformFamily {
  std::string id;
  KFamily kind = KFamily::K4;
  long N = 1;
  int weight = 4;
  long level = 1;
  Nebentypus chi = Nebentypus::Trivial;
  std::vector<long> js;
  NumberFieldPtr field;
  std::vector<Completion> completions;
  std::vector<long> table_primes;
  bool galois = true;

  std::vector<Rational> r_values() const;
  /// K(j/N)(N tau), exact below q^precision.
  IntSeries basis_element(long j, std::int64_t precision) const;
  std::int64_t default_precision(long p) const;
};

const std::vector<EigenformFamily>& family_catalog();
/// Throws UnknownName.
const EigenformFamily& find_family(const std::string& id);
/// The family whose f_1 is K(r)(N tau), r = 1/N. Throws NotInS4 / NotInS5.
const EigenformFamily& family_for(KFamily kind, const Rational& r);

struct HeckeCell {
  long p = 0;
  long j = 0;
  /// Nonzero terms (i, c) of T_p f_j = sum c f_i.
  std::vector<std::pair<long, Rational>> image;
  /// False when T_p f_j left the span (reported, not thrown).
  bool in_span = true;
  std::string format() const;  // "T3 x f1 -> -40*f3"
};

struct HeckeTable {
  std::string family;
  std::vector<HeckeCell> cells;
  std::string format() const;
};

/// Computes every (T_p, f_j) cell; runs cells on up to `jobs` threads.
HeckeTable compute_hecke_table(const EigenformFamily& fam, const std::vector<long>& primes, int jobs = 1,
                               std::int64_t precision = 0);

/// Matrix of T_p on the family basis: column j holds the image of f_j.
std::vector<std::vector<Rational>> hecke_matrix(const EigenformFamily& fam, const HeckeTable& table, long p);

struct TableFixture {
  std::string family;
  std::vector<FixtureLine> series;  // leading terms of the basis
  std::vector<std::string> cells;   // "Tp x fj -> ..."
};

TableFixture read_table_fixture(const std::string& path);
std::string fixture_path(const std::string& fixture_dir, const std::string& family);

struct TableReport {
  std::string family;
  HeckeTable computed;
  std::vector<std::string> expected;
  std::vector<std::string> mismatches;
  std::size_t matched = 0;
  bool passed = false;
  std::string diff;  // unified diff, empty when identical
};

/// Computes the cells named by the fixture and compares them.
TableReport reproduce_table(const std::string& family, const std::string& fixture_dir, int jobs = 1);

/// Minimal unified diff between two line lists.
std::string unified_diff(const std::vector<std::string>& a, const std::vector<std::string>& b,
                         const std::string& name_a, const std::string& name_b);

struct EigenCheck {
  long p = 0;
  NumberFieldElement a_p;
  bool eigen = false;
  bool support_checked = false;  // p = 1 mod N: a_p read from f_1 alone
};

struct EigenReport {
  std::string family;
  std::string label;
  std::vector<EigenCheck> checks;
  bool passed = false;
};

/// Checks T_p F = a_p F for F = sum d_j f_j. Throws NotAnEigenvector(p),
/// CoefficientNotRational.
EigenReport verify_eigenform(const EigenformFamily& fam, const Completion& completion, const std::vector<long>& primes,
                             std::int64_t precision = 0);

/// Completions over Q or a quadratic field solved from the T_p relations;
/// throws NoRationalSolution when no rational completion exists.
std::vector<Completion> complete_eigenform_rational(const EigenformFamily& fam);

/// a_(np) = a_p a_n - chi(p) p^(k-1) a_(n/p) for every n with np below precision.
bool check_eigen_recursion(const EigenformFamily& fam, const Completion& completion, long p,
                           std::int64_t precision = 0);

/// Largest |a_p| / (2 p^((k-1)/2)) over p = 1 mod N, p <= pmax, for the
/// f_1-supported coefficients of a family with a rational completion.
double deligne_ratio(const EigenformFamily& fam, long pmax);

}  // namespace hypmod
