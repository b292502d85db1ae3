#include "hypmod/numberfield.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "hypmod/error.hpp"

namespace hypmod {

namespace {

void trim_poly(std::vector<Rational>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Polynomials over F_p, low to high.
using PolyP = std::vector<std::uint64_t>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP poly_mod(PolyP a, const PolyP& m, std::uint64_t p) {
  trim(a);
  const auto inv_lead = invmod(m.back(), p);
  while (a.size() >= m.size()) {
    const auto c = mulmod(a.back(), inv_lead, p);
    const auto shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return poly_mod(std::move(out), m, p);
}

PolyP poly_gcd(PolyP a, PolyP b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const auto inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

PolyP poly_sub(PolyP a, const PolyP& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

PolyP poly_div(PolyP a, const PolyP& m, std::uint64_t p) {
  trim(a);
  PolyP q(a.size() >= m.size() ? a.size() - m.size() + 1 : 0, 0);
  const auto inv_lead = invmod(m.back(), p);
  while (a.size() >= m.size()) {
    const auto c = mulmod(a.back(), inv_lead, p);
    const auto shift = a.size() - m.size();
    q[shift] = c;
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    trim(a);
  }
  return q;
}

PolyP derivative(const PolyP& a, std::uint64_t p) {
  PolyP d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], i % p, p));
  trim(d);
  return d;
}

// Degrees of the irreducible factors of a squarefree monic f mod p.
std::vector<int> factor_degrees(PolyP f, std::uint64_t p) {
  std::vector<int> degs;
  PolyP h = {0, 1};  // x
  for (int i = 1; static_cast<int>(f.size()) - 1 >= 2 * i; ++i) {
    // h = x^(p^i) mod f
    PolyP r = {1};
    PolyP base = h;
    auto e = p;
    while (e > 0) {
      if (e & 1) r = poly_mulmod(r, base, f, p);
      base = poly_mulmod(base, base, f, p);
      e >>= 1;
    }
    h = r;
    const auto g = poly_gcd(f, poly_sub(h, {0, 1}, p), p);
    const int gd = static_cast<int>(g.size()) - 1;
    if (gd > 0) {
      for (int k = 0; k < gd / i; ++k) degs.push_back(i);
      f = poly_div(f, g, p);
      h = poly_mod(h, f, p);
    }
  }
  if (f.size() > 1) degs.push_back(static_cast<int>(f.size()) - 1);
  return degs;
}

}  // namespace

NumberFieldPtr NumberField::make(std::vector<Rational> poly, std::string generator_name) {
  trim_poly(poly);
  if (poly.size() < 2) throw Error(ErrorCode::NonMonic, "defining polynomial must have degree at least 1");
  if (poly.back() != 1) throw Error(ErrorCode::NonMonic, "defining polynomial is not monic");
  return NumberFieldPtr(new NumberField(std::move(poly), std::move(generator_name)));
}

NumberFieldPtr NumberField::parse(std::string_view text, std::string generator_name) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  std::vector<Rational> poly;
  std::size_t i = 0;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty polynomial");
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const auto term = s.substr(i, j - i);
    i = j;
    const auto xpos = term.find_first_not_of("0123456789/*");
    Rational coef = 1;
    long power = 0;
    std::string num = term.substr(0, xpos == std::string::npos ? term.size() : xpos);
    if (!num.empty() && num.back() == '*') num.pop_back();
    if (!num.empty()) coef = parse_rational(num);
    if (xpos != std::string::npos) {
      const auto rest = term.substr(xpos);
      if (rest.rfind(generator_name, 0) != 0 && rest.rfind("x", 0) != 0) {
        throw Error(ErrorCode::ParseError, "unexpected token in polynomial: " + rest);
      }
      const auto caret = rest.find('^');
      power = caret == std::string::npos ? 1 : std::stol(rest.substr(caret + 1));
    } else if (num.empty()) {
      throw Error(ErrorCode::ParseError, "empty term in polynomial");
    }
    if (poly.size() <= static_cast<std::size_t>(power)) poly.resize(power + 1, Rational(0));
    poly[power] += sign * coef;
  }
  return make(std::move(poly), std::move(generator_name));
}

std::vector<Rational> NumberField::reduce(std::vector<Rational> a) const {
  const auto d = static_cast<std::size_t>(degree());
  for (std::size_t k = a.size(); k-- > d;) {
    const Rational c = a[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) a[k - d + i] -= c * poly_[i];
  }
  a.resize(d, Rational(0));
  return a;
}

Irreducibility irreducibility_check(const NumberField& k) {
  const int d = k.degree();
  if (d == 1) return Irreducibility::Proven;
  // Integral model g(x) = den^d f(x/den) is monic with integer coefficients.
  Integer den = 1;
  for (const auto& c : k.poly()) den = lcm(den, c.get_den());
  std::vector<Integer> g(k.poly().size());
  Integer scale = 1;
  for (int i = d; i >= 0; --i) {
    g[i] = Integer(k.poly()[i] * scale);
    scale *= den;
  }
  // Rational roots of g are integer divisors of g(0).
  const Integer c0 = abs(g[0]);
  if (c0 == 0) return Irreducibility::Reducible;
  if (c0 < 10000000) {
    const long n = c0.get_si();
    for (long t = 1; t * t <= n; ++t) {
      if (n % t != 0) continue;
      for (long cand : {t, -t, n / t, -(n / t)}) {
        Integer v = 0;
        for (int i = d; i >= 0; --i) v = v * cand + g[i];
        if (v == 0) return Irreducibility::Reducible;
      }
    }
  }
  // Achievable proper factor degrees; irreducible once this set is empty.
  std::set<int> possible;
  for (int i = 1; i < d; ++i) possible.insert(i);
  int good = 0;
  for (std::uint64_t p = 5; p < 400 && good < 12 && !possible.empty(); ++p) {
    if (!is_prime(p)) continue;
    PolyP f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      Integer r = g[i] % Integer(static_cast<unsigned long>(p));
      if (r < 0) r += static_cast<unsigned long>(p);
      f[i] = r.get_ui();
    }
    if (poly_gcd(f, derivative(f, p), p).size() > 1) continue;  // not squarefree
    ++good;
    const auto degs = factor_degrees(f, p);
    std::set<int> sums = {0};
    for (int dg : degs) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + dg);
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int i : possible) {
      if (sums.count(i)) keep.insert(i);
    }
    possible = std::move(keep);
  }
  return possible.empty() ? Irreducibility::Proven : Irreducibility::NotRefuted;
}

void require_same_number_field(const NumberFieldPtr& a, const NumberFieldPtr& b) {
  if (a == b) return;
  if (!a || !b || a->poly() != b->poly()) throw Error(ErrorCode::FieldMismatch, "elements of different number fields");
}

NumberFieldElement::NumberFieldElement(NumberFieldPtr field, std::vector<Rational> coords) : field_(std::move(field)) {
  coords_ = field_->reduce(std::move(coords));
}

NumberFieldElement NumberFieldElement::from_rational(NumberFieldPtr field, const Rational& c) {
  return NumberFieldElement(std::move(field), {c});
}

NumberFieldElement NumberFieldElement::generator(NumberFieldPtr field) {
  return NumberFieldElement(std::move(field), {Rational(0), Rational(1)});
}

NumberFieldElement NumberFieldElement::parse_fixture(NumberFieldPtr field, std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected 'den; a0,a1,...'");
  const Rational den = parse_rational(text.substr(0, semi));
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in element");
  std::vector<Rational> c;
  std::string item;
  std::stringstream ss{std::string(text.substr(semi + 1))};
  while (std::getline(ss, item, ',')) c.push_back(parse_rational(item) / den);
  if (static_cast<int>(c.size()) != field->degree()) {
    throw Error(ErrorCode::ParseError, "element needs " + std::to_string(field->degree()) + " coordinates");
  }
  return NumberFieldElement(std::move(field), std::move(c));
}

bool NumberFieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool NumberFieldElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

NumberFieldElement NumberFieldElement::operator+(const NumberFieldElement& o) const {
  require_same_number_field(field_, o.field_);
  auto c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return NumberFieldElement(field_, std::move(c));
}

NumberFieldElement NumberFieldElement::operator-(const NumberFieldElement& o) const {
  require_same_number_field(field_, o.field_);
  auto c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return NumberFieldElement(field_, std::move(c));
}

NumberFieldElement NumberFieldElement::operator-() const {
  auto c = coords_;
  for (auto& x : c) x = -x;
  return NumberFieldElement(field_, std::move(c));
}

NumberFieldElement NumberFieldElement::operator*(const NumberFieldElement& o) const {
  require_same_number_field(field_, o.field_);
  std::vector<Rational> c(2 * coords_.size(), Rational(0));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coords_.size(); ++j) c[i + j] += coords_[i] * o.coords_[j];
  }
  return NumberFieldElement(field_, std::move(c));
}

NumberFieldElement NumberFieldElement::operator*(const Rational& k) const {
  auto c = coords_;
  for (auto& x : c) x *= k;
  return NumberFieldElement(field_, std::move(c));
}

std::vector<std::vector<Rational>> NumberFieldElement::multiplication_matrix() const {
  const auto d = static_cast<std::size_t>(field_->degree());
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  auto col = *this;
  const auto x = generator(field_);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coords_[i];
    col = col * x;
  }
  return m;
}

std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const auto n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::DivisionByZero, "singular linear system");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    const Rational inv = 1 / a[c][c];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

NumberFieldElement NumberFieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  std::vector<Rational> e(coords_.size(), Rational(0));
  e[0] = 1;
  return NumberFieldElement(field_, solve_rational(multiplication_matrix(), std::move(e)));
}

NumberFieldElement NumberFieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  auto acc = from_rational(field_, 1);
  auto base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

bool NumberFieldElement::operator==(const NumberFieldElement& o) const {
  require_same_number_field(field_, o.field_);
  return coords_ == o.coords_;
}

std::string NumberFieldElement::to_fixture() const {
  Integer den = 1;
  for (const auto& c : coords_) den = lcm(den, c.get_den());
  std::string out = den.get_str() + ";";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    out += (i ? "," : " ") + Integer(coords_[i] * den).get_str();
  }
  return out;
}

std::string NumberFieldElement::to_string() const {
  std::string out;
  for (std::size_t i = coords_.size(); i-- > 0;) {
    const auto& c = coords_[i];
    if (c == 0) continue;
    std::string mag = hypmod::to_string(abs(Rational(c)));
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (i == 0) {
      out += mag;
      continue;
    }
    if (mag != "1") out += mag + "*";
    out += field_->generator_name();
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace hypmod
