#include "hypmod/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "hypmod/field.hpp"
#include "hypmod/parallel.hpp"

namespace hypmod {

std::string to_string(Nebentypus chi) {
  switch (chi) {
    case Nebentypus::Trivial:
      return "trivial";
    case Nebentypus::Chi2:
      return "chi(2)";
    case Nebentypus::Chi3:
      return "chi(3)";
  }
  return "?";
}

int nebentypus_value(Nebentypus chi, long p, long level) {
  if (level % p == 0) return 0;
  switch (chi) {
    case Nebentypus::Trivial:
      return 1;
    case Nebentypus::Chi2:
      return kronecker_symbol(2, p);
    case Nebentypus::Chi3:
      return kronecker_symbol(3, p);
  }
  return 0;
}

std::vector<Rational> decompose_in_basis(const RatSeries& s, const std::vector<RatSeries>& basis, int margin) {
  std::int64_t shared = s.prec();
  std::vector<std::pair<std::int64_t, std::size_t>> order;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto lead = basis[i].leading_exponent();
    if (!lead) throw Error(ErrorCode::InsufficientPrecision, "basis element is zero to its precision");
    shared = std::min(shared, basis[i].prec());
    order.emplace_back(*lead, i);
  }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i].first == order[i - 1].first) throw Error(ErrorCode::Inconsistent, "basis leading exponents collide");
  }
  const std::int64_t shared_q = shared / kGrid;
  const std::int64_t max_lead_q = order.empty() ? 0 : order.back().first / kGrid;
  const auto needed = static_cast<std::int64_t>(basis.size()) * (margin + 1);
  if (max_lead_q >= shared_q || shared_q < needed) {
    throw Error(ErrorCode::InsufficientPrecision, "shared precision q^" + std::to_string(shared_q) +
                                                      " does not overdetermine the decomposition");
  }
  RatSeries residual = s.truncated(shared);
  std::vector<Rational> c(basis.size());
  for (const auto& [lead, i] : order) {
    const Rational top = residual.coefficient_grid(lead);
    if (top == 0) continue;
    c[i] = top / basis[i].coefficient_grid(lead);
    residual = residual - c[i] * basis[i].truncated(shared);
  }
  if (const auto bad = residual.leading_exponent()) {
    throw Error(ErrorCode::ResidualNonZero, "series is not in the span: residual at exponent " +
                                                std::to_string(*bad) + "/24");
  }
  return c;
}

std::vector<Rational> EigenformFamily::r_values() const {
  std::vector<Rational> out;
  for (long j : js) out.push_back(ratio(j, N));
  return out;
}

IntSeries EigenformFamily::basis_element(long j, std::int64_t precision) const {
  const Rational r = ratio(j, N);
  const auto inner = precision / N + 2;
  const auto s = kind == KFamily::K4 ? k4_series(r, inner) : k5_series(r, inner);
  return s.rescale(N).truncated(precision * kGrid);
}

std::int64_t EigenformFamily::default_precision(long p) const {
  const long max_j = js.empty() ? 1 : *std::max_element(js.begin(), js.end());
  return std::max<std::int64_t>(p * (max_j + 3 * N), 600);
}

namespace {

EigenformFamily make_family(std::string id, KFamily kind, long N, long level, Nebentypus chi, std::vector<long> js,
                            std::vector<long> primes, NumberFieldPtr field) {
  EigenformFamily f;
  f.id = std::move(id);
  f.kind = kind;
  f.N = N;
  f.weight = kind == KFamily::K4 ? 4 : 2;
  f.level = level;
  f.chi = chi;
  f.js = std::move(js);
  f.table_primes = std::move(primes);
  f.field = std::move(field);
  return f;
}

Completion completion(const NumberFieldPtr& k, std::string label, const std::vector<std::pair<long, std::string>>& d) {
  Completion c;
  c.label = std::move(label);
  for (const auto& [j, text] : d) c.coeffs.emplace_back(j, NumberFieldElement::parse_fixture(k, text));
  return c;
}

std::vector<EigenformFamily> build_catalog() {
  const auto Q = NumberField::parse("x");
  const auto nu = NumberField::parse("x^4+4*x^2+9", "nu");
  const auto sqrt3 = NumberField::parse("x^2-3", "s");
  const auto mu = NumberField::parse("x^8+28*x^6+1023*x^4-9212*x^2+48841", "mu");
  const auto sqrtm3 = NumberField::parse("x^2+3", "w");
  std::vector<EigenformFamily> cat;
  const auto K4 = KFamily::K4, K5 = KFamily::K5;
  const auto triv = Nebentypus::Trivial;

  auto f1 = make_family("k4-1", K4, 2, 8, triv, {1}, {3, 5, 7, 11, 13}, Q);
  f1.completions.push_back(completion(Q, "8.4.a.a", {{1, "1; 1"}}));
  cat.push_back(f1);

  auto f2 = make_family("k4-2", K4, 3, 9, triv, {1, 2}, {2, 5, 7, 11, 13}, Q);
  f2.galois = false;
  cat.push_back(f2);

  auto f3 = make_family("k4-3", K4, 4, 32, triv, {1, 3}, {3}, Q);
  f3.completions.push_back(completion(Q, "32.4.a.a", {{1, "1; 1"}, {3, "1; -8"}}));
  f3.completions.push_back(completion(Q, "32.4.a.c", {{1, "1; 1"}, {3, "1; 8"}}));
  cat.push_back(f3);

  auto f4 = make_family("k4-4", K4, 6, 72, triv, {1, 5}, {5}, Q);
  f4.completions.push_back(completion(Q, "72.4.a.d", {{1, "1; 1"}, {5, "1; -16"}}));
  f4.completions.push_back(completion(Q, "72.4.a.a", {{1, "1; 1"}, {5, "1; 16"}}));
  cat.push_back(f4);

  // beta1 = (2 nu^3 + 14 nu)/3, beta2 = 8 nu^2 + 16
  auto f5 = make_family("k4-5", K4, 8, 128, Nebentypus::Chi2, {1, 3, 5, 7}, {2, 3, 5, 7}, nu);
  {
    const auto b1 = NumberFieldElement::parse_fixture(nu, "3; 0,14,0,2");
    const auto b2 = NumberFieldElement::parse_fixture(nu, "1; 16,0,8,0");
    Completion c;
    c.label = "128.4.b.e";
    c.coeffs = {{1, NumberFieldElement::from_rational(nu, 1)}, {3, -b1}, {5, b2}, {7, -(b1 * b2) * ratio(1, 5)}};
    f5.completions.push_back(c);
  }
  cat.push_back(f5);

  auto f6 = make_family("k4-6", K4, 12, 288, triv, {1, 5, 7, 11}, {5, 7, 11}, sqrt3);
  f6.completions.push_back(
      completion(sqrt3, "288.4.a.l", {{1, "1; 1,0"}, {5, "1; 32,0"}, {7, "1; 0,8"}, {11, "1; 0,4"}}));
  // Same form with f5 <-> f11 and sqrt3 -> sqrt13; the relations T5^2 = 208, T7^2 = 832 force sqrt13.
  const auto sqrt13 = NumberField::parse("x^2-13", "t");
  f6.completions.push_back(completion(sqrt13, "288.4.a.l (relabelled)",
                                      {{1, "1; 1,0"}, {5, "1; 0,4"}, {7, "1; 0,8"}, {11, "1; 32,0"}}));
  cat.push_back(f6);

  auto f7 = make_family("k4-7", K4, 24, 1152, Nebentypus::Chi2, {1, 5, 7, 11, 13, 17, 19, 23},
                        {5, 7, 11, 13, 17, 19, 23}, mu);
  {
    const std::vector<std::string> alpha = {
        "9477; 78026,0,-20112,0,-468,0,-16,0",        "161109; 0,1620002,0,-98322,0,-2358,0,-100",
        "5967; 0,-24788,0,19020,0,516,0,16",          "729; 32560,0,-8544,0,-288,0,-8,0",
        "3159; 369824,0,480,0,0,0,-16,0",             "53703; 0,-580016,0,455568,0,13392,0,352",
        "161109; 0,-3423968,0,198240,0,6624,0,256"};
    const int sign[] = {-1, 1, -1, -1, 1, -1, -1};
    const long js[] = {5, 7, 11, 13, 17, 19, 23};
    Completion c;
    c.label = "1152.4.d.q";
    c.coeffs.emplace_back(1, NumberFieldElement::from_rational(mu, 1));
    for (int i = 0; i < 7; ++i) {
      c.coeffs.emplace_back(js[i], NumberFieldElement::parse_fixture(mu, alpha[i]) * Rational(sign[i]));
    }
    f7.completions.push_back(c);
  }
  cat.push_back(f7);

  auto g1 = make_family("k5-1", K5, 2, 36, triv, {1}, {5, 7, 11, 13}, Q);
  g1.completions.push_back(completion(Q, "36.2.a.a", {{1, "1; 1"}}));
  cat.push_back(g1);
  auto g2 = make_family("k5-2", K5, 3, 27, triv, {1}, {5, 7, 11, 13}, Q);
  g2.completions.push_back(completion(Q, "27.2.a.a", {{1, "1; 1"}}));
  cat.push_back(g2);
  auto g3 = make_family("k5-3", K5, 6, 36, triv, {1}, {5, 7, 11, 13}, Q);
  g3.completions.push_back(completion(Q, "36.2.a.a", {{1, "1; 1"}}));
  cat.push_back(g3);
  auto g4 = make_family("k5-4", K5, 12, 432, Nebentypus::Chi3, {1, 7}, {7}, sqrtm3);
  g4.completions.push_back(completion(sqrtm3, "432.2.c.a", {{1, "1; 1,0"}, {7, "1; 0,-3"}}));
  cat.push_back(g4);
  return cat;
}

std::string format_coefficient_term(const Rational& c, long j, bool first) {
  std::string out;
  Rational mag = c;
  if (c < 0) {
    out += first ? "-" : " - ";
    mag = -c;
  } else if (!first) {
    out += " + ";
  }
  if (mag != 1) out += to_string(mag) + "*";
  return out + "f" + std::to_string(j);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// "T3 x f1 -> -40*f3"
HeckeCell parse_cell(const std::string& line) {
  HeckeCell cell;
  const auto x = line.find(" x ");
  const auto arrow = line.find("->");
  const auto t = trim(line);
  if (t.empty() || t[0] != 'T' || x == std::string::npos || arrow == std::string::npos) {
    throw Error(ErrorCode::ParseError, "bad cell line: " + line);
  }
  cell.p = std::stol(trim(line.substr(line.find('T') + 1, x - line.find('T') - 1)));
  const auto fj = trim(line.substr(x + 3, arrow - x - 3));
  if (fj.empty() || fj[0] != 'f') throw Error(ErrorCode::ParseError, "bad basis name in: " + line);
  cell.j = std::stol(fj.substr(1));
  std::string expr;
  for (char ch : line.substr(arrow + 2)) {
    if (ch != ' ') expr.push_back(ch);
  }
  if (expr == "0") return cell;
  std::size_t i = 0;
  while (i < expr.size()) {
    int sign = 1;
    if (expr[i] == '+' || expr[i] == '-') {
      sign = expr[i] == '-' ? -1 : 1;
      ++i;
    }
    const auto f = expr.find('f', i);
    if (f == std::string::npos) throw Error(ErrorCode::ParseError, "bad cell expression: " + line);
    Rational c = 1;
    if (f > i) {
      auto num = expr.substr(i, f - i);
      if (!num.empty() && num.back() == '*') num.pop_back();
      c = parse_rational(num);
    }
    std::size_t e = f + 1;
    while (e < expr.size() && std::isdigit(static_cast<unsigned char>(expr[e]))) ++e;
    cell.image.emplace_back(std::stol(expr.substr(f + 1, e - f - 1)), sign * c);
    i = e;
  }
  return cell;
}

// Coordinates of a number-field combination of integer series.
struct NFSeries {
  NumberFieldPtr field;
  std::vector<RatSeries> coords;

  NumberFieldElement coefficient_at(std::int64_t n) const {
    std::vector<Rational> c;
    for (const auto& s : coords) c.push_back(s.coefficient_at(n));
    return NumberFieldElement(field, c);
  }
  std::int64_t prec() const {
    std::int64_t p = coords.front().prec();
    for (const auto& s : coords) p = std::min(p, s.prec());
    return p;
  }
};

NFSeries combine(const Completion& c, const NumberFieldPtr& k, const std::map<long, IntSeries>& series) {
  NFSeries out{k, {}};
  for (int i = 0; i < k->degree(); ++i) {
    std::optional<RatSeries> acc;
    for (const auto& [j, d] : c.coeffs) {
      const auto term = d.coords()[static_cast<std::size_t>(i)] * series.at(j).convert<Rational>();
      acc = acc ? *acc + term : term;
    }
    out.coords.push_back(*acc);
  }
  return out;
}

NFSeries scale(const NFSeries& s, const NumberFieldElement& lambda) {
  const auto m = lambda.multiplication_matrix();
  NFSeries out{s.field, {}};
  for (std::size_t i = 0; i < s.coords.size(); ++i) {
    std::optional<RatSeries> acc;
    for (std::size_t b = 0; b < s.coords.size(); ++b) {
      if (m[i][b] == 0) continue;
      const auto term = m[i][b] * s.coords[b];
      acc = acc ? *acc + term : term;
    }
    out.coords.push_back(acc ? *acc : Rational(0) * s.coords[i]);
  }
  return out;
}

}  // namespace

const std::vector<EigenformFamily>& family_catalog() {
  static const std::vector<EigenformFamily> cat = build_catalog();
  return cat;
}

const EigenformFamily& find_family(const std::string& id) {
  for (const auto& f : family_catalog()) {
    if (f.id == id) return f;
  }
  throw Error(ErrorCode::UnknownName, "unknown family '" + id + "'");
}

const EigenformFamily& family_for(KFamily kind, const Rational& r) {
  if (r.get_num() == 1) {
    for (const auto& f : family_catalog()) {
      if (f.kind == kind && r.get_den() == f.N) return f;
    }
  }
  throw Error(kind == KFamily::K4 ? ErrorCode::NotInS4 : ErrorCode::NotInS5, "no eigenform family for r = " + to_string(r));
}

std::string HeckeCell::format() const {
  std::string out = "T" + std::to_string(p) + " x f" + std::to_string(j) + " -> ";
  if (!in_span) return out + "outside span";
  if (image.empty()) return out + "0";
  for (std::size_t i = 0; i < image.size(); ++i) out += format_coefficient_term(image[i].second, image[i].first, i == 0);
  return out;
}

std::string HeckeTable::format() const {
  std::string out;
  for (const auto& c : cells) out += c.format() + "\n";
  return out;
}

HeckeTable compute_hecke_table(const EigenformFamily& fam, const std::vector<long>& primes, int jobs,
                               std::int64_t precision) {
  std::int64_t top = precision;
  if (top == 0) {
    for (long p : primes) top = std::max(top, fam.default_precision(p));
  }
  std::vector<IntSeries> basis(fam.js.size());
  parallel_for(fam.js.size(), jobs, [&](std::size_t i) { basis[i] = fam.basis_element(fam.js[i], top); });
  std::vector<RatSeries> rbasis;
  for (const auto& b : basis) rbasis.push_back(b.convert<Rational>());

  HeckeTable table;
  table.family = fam.id;
  table.cells.resize(primes.size() * fam.js.size());
  parallel_for(table.cells.size(), jobs, [&](std::size_t idx) {
    const auto p = primes[idx / fam.js.size()];
    const auto i = idx % fam.js.size();
    const auto image = hecke_Tp(basis[i], p, fam.weight, fam.level, fam.chi);
    HeckeCell cell;
    cell.p = p;
    cell.j = fam.js[i];
    std::vector<Rational> c;
    try {
      c = decompose_in_basis(image.convert<Rational>(), rbasis);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResidualNonZero) throw;
      cell.in_span = false;
    }
    for (std::size_t b = 0; b < c.size(); ++b) {
      if (c[b] != 0) cell.image.emplace_back(fam.js[b], c[b]);
    }
    table.cells[idx] = std::move(cell);
  });
  return table;
}

std::vector<std::vector<Rational>> hecke_matrix(const EigenformFamily& fam, const HeckeTable& table, long p) {
  const auto n = fam.js.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  auto index = [&](long j) {
    return static_cast<std::size_t>(std::find(fam.js.begin(), fam.js.end(), j) - fam.js.begin());
  };
  bool found = false;
  for (const auto& cell : table.cells) {
    if (cell.p != p) continue;
    found = true;
    for (const auto& [i, c] : cell.image) m[index(i)][index(cell.j)] = c;
  }
  if (!found) throw Error(ErrorCode::UnknownName, "T_" + std::to_string(p) + " is not in the table");
  return m;
}

std::string fixture_path(const std::string& fixture_dir, const std::string& family) {
  return fixture_dir + "/hecke/" + family + ".txt";
}

TableFixture read_table_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::LabelNotFound, "missing fixture " + path);
  TableFixture fx;
  std::string line, section;
  std::stringstream series;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("# family", 0) == 0) {
      fx.family = trim(t.substr(8));
      continue;
    }
    if (t[0] == '#') continue;
    if (t == "[series]" || t == "[cells]") {
      section = t;
      continue;
    }
    if (section == "[series]") {
      series << t << '\n';
    } else if (section == "[cells]") {
      fx.cells.push_back(parse_cell(t).format());
    } else {
      throw Error(ErrorCode::ParseError, "line outside a section in " + path);
    }
  }
  fx.series = read_series_fixture(series);
  return fx;
}

std::string unified_diff(const std::vector<std::string>& a, const std::vector<std::string>& b, const std::string& name_a,
                         const std::string& name_b) {
  if (a == b) return "";
  const auto n = a.size(), m = b.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::string out = "--- " + name_a + "\n+++ " + name_b + "\n@@ -1," + std::to_string(n) + " +1," +
                    std::to_string(m) + " @@\n";
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      out += " " + a[i++] + "\n";
      ++j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      out += "+" + b[j++] + "\n";
    } else {
      out += "-" + a[i++] + "\n";
    }
  }
  return out;
}

TableReport reproduce_table(const std::string& family, const std::string& fixture_dir, int jobs) {
  const auto& fam = find_family(family);
  const auto fx = read_table_fixture(fixture_path(fixture_dir, family));
  TableReport rep;
  rep.family = family;
  rep.expected = fx.cells;
  std::vector<long> primes;
  for (const auto& c : fx.cells) {
    const auto cell = parse_cell(c);
    if (std::find(primes.begin(), primes.end(), cell.p) == primes.end()) primes.push_back(cell.p);
  }
  for (const auto& line : fx.series) {
    const long j = line.grid_exponent / kGrid;
    const auto f = fam.basis_element(j, j + 1);
    if (f.coefficient_grid(line.grid_exponent) != parse_rational(line.value) ||
        f.leading_exponent() != line.grid_exponent) {
      rep.mismatches.push_back("basis f" + std::to_string(j) + " leading term differs from fixture");
    }
  }
  rep.computed = compute_hecke_table(fam, primes, jobs);
  std::map<std::pair<long, long>, std::string> got;
  for (const auto& c : rep.computed.cells) got[{c.p, c.j}] = c.format();
  std::vector<std::string> computed_lines;
  for (const auto& e : fx.cells) {
    const auto cell = parse_cell(e);
    const auto& g = got.at({cell.p, cell.j});
    computed_lines.push_back(g);
    if (g == e) {
      ++rep.matched;
    } else {
      rep.mismatches.push_back("expected '" + e + "', computed '" + g + "'");
    }
  }
  rep.diff = unified_diff(fx.cells, computed_lines, "fixture/" + family, "computed/" + family);
  rep.passed = rep.mismatches.empty();
  return rep;
}

EigenReport verify_eigenform(const EigenformFamily& fam, const Completion& completion, const std::vector<long>& primes,
                             std::int64_t precision) {
  EigenReport rep;
  rep.family = fam.id;
  rep.label = completion.label;
  for (long p : primes) {
    const auto P = precision > 0 ? precision : fam.default_precision(p);
    std::map<long, IntSeries> f, tf;
    for (const auto& [j, d] : completion.coeffs) {
      f[j] = fam.basis_element(j, P);
      tf[j] = hecke_Tp(f[j], p, fam.weight, fam.level, fam.chi);
    }
    const auto& k = completion.coeffs.front().second.field();
    const auto F = combine(completion, k, f);
    const auto TF = combine(completion, k, tf);
    const auto ap = F.coefficient_at(p);
    const auto lambdaF = scale(F, ap);
    const auto bound = std::min(TF.prec(), lambdaF.prec());
    for (std::size_t i = 0; i < TF.coords.size(); ++i) {
      const auto diff = (TF.coords[i] - lambdaF.coords[i]).truncated(bound);
      if (const auto bad = diff.leading_exponent()) {
        throw Error(ErrorCode::NotAnEigenvector, "T_" + std::to_string(p) + " F != a_p F for " + completion.label +
                                                     " at exponent " + std::to_string(*bad / kGrid));
      }
    }
    EigenCheck check{p, ap, true, false};
    if (p % fam.N == 1) {
      const auto alone = NumberFieldElement::from_rational(k, f.at(1).coefficient_at(p));
      if (alone != ap) {
        throw Error(ErrorCode::NotAnEigenvector, "a_" + std::to_string(p) + " is not carried by f1 alone");
      }
      if (!ap.is_rational()) {
        throw Error(ErrorCode::CoefficientNotRational, "a_" + std::to_string(p) + " = " + ap.to_string());
      }
      check.support_checked = true;
    }
    rep.checks.push_back(check);
  }
  rep.passed = true;
  return rep;
}

std::vector<Completion> complete_eigenform_rational(const EigenformFamily& fam) {
  const auto Q = NumberField::parse("x");
  if (fam.js.size() == 1) {
    Completion c;
    c.label = fam.id + ":f1";
    c.coeffs.emplace_back(1, NumberFieldElement::from_rational(Q, 1));
    return {c};
  }
  if (fam.js.size() != 2) {
    throw Error(ErrorCode::NoRationalSolution, "relations for " + fam.id + " do not close over a quadratic field");
  }
  const long j2 = fam.js[1];
  long p = 0;
  for (long q : fam.table_primes) {
    if (q % fam.N == j2 % fam.N) p = q;
  }
  if (p == 0) throw Error(ErrorCode::NoRationalSolution, "no operator moves f1 to f" + std::to_string(j2));
  const auto table = compute_hecke_table(fam, {p});
  const auto m = hecke_matrix(fam, table, p);
  // T_p f1 = a f_j2, T_p f_j2 = b f1; F = f1 + d f_j2 gives d^2 = a / b.
  const Rational a = m[1][0], b = m[0][1];
  if (m[0][0] != 0 || m[1][1] != 0 || b == 0) {
    throw Error(ErrorCode::NoRationalSolution, "T_" + std::to_string(p) + " is not a swap on " + fam.id);
  }
  const Rational d2 = a / b;
  Integer num = d2.get_num(), den = d2.get_den();
  if (d2 < 0 || !mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    throw Error(ErrorCode::NoRationalSolution,
                "d_" + std::to_string(j2) + "^2 = " + to_string(d2) + " has no rational solution");
  }
  const Rational root(Integer(sqrt(num)), Integer(sqrt(den)));
  std::vector<Completion> out;
  for (const Rational& d : {Rational(-root), root}) {
    Completion c;
    c.label = fam.id + ":d" + std::to_string(j2) + "=" + to_string(d);
    c.coeffs.emplace_back(1, NumberFieldElement::from_rational(Q, 1));
    c.coeffs.emplace_back(j2, NumberFieldElement::from_rational(Q, d));
    verify_eigenform(fam, c, {5, 7, 11, 13});
    out.push_back(c);
  }
  return out;
}

bool check_eigen_recursion(const EigenformFamily& fam, const Completion& completion, long p, std::int64_t precision) {
  const auto P = precision > 0 ? precision : fam.default_precision(p);
  std::map<long, IntSeries> f;
  for (const auto& [j, d] : completion.coeffs) f[j] = fam.basis_element(j, P);
  const auto F = combine(completion, completion.coeffs.front().second.field(), f);
  const auto ap = F.coefficient_at(p);
  const int c = nebentypus_value(fam.chi, p, fam.level);
  Integer pk = 1;
  for (int i = 0; i < fam.weight - 1; ++i) pk *= p;
  const Rational w(pk * c);
  const auto last = (F.prec() - 1) / kGrid;
  for (std::int64_t n = 1; n * p <= last; ++n) {
    auto rhs = ap * F.coefficient_at(n);
    if (n % p == 0) rhs = rhs - F.coefficient_at(n / p) * w;
    if (F.coefficient_at(n * p) != rhs) return false;
  }
  return true;
}

double deligne_ratio(const EigenformFamily& fam, long pmax) {
  const auto f1 = fam.basis_element(1, pmax + 1);
  double worst = 0;
  for (long p = 2; p <= pmax; ++p) {
    if (!is_prime(static_cast<std::uint64_t>(p)) || p % fam.N != 1 || fam.level % p == 0) continue;
    const double ap = std::fabs(f1.coefficient_at(p).get_d());
    worst = std::max(worst, ap / (2 * std::pow(static_cast<double>(p), (fam.weight - 1) / 2.0)));
  }
  return worst;
}

}  // namespace hypmod
