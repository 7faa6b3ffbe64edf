#include "qhofer/novikov.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace qhofer {

namespace {

void require_same_rank(const SphereClass& a, const SphereClass& b) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("sphere class rank mismatch: " + std::to_string(a.rank()) + " vs " +
                                std::to_string(b.rank()));
}

}  // namespace

SphereClass SphereClass::generator(std::size_t rank, std::size_t i, Rational value) {
  if (i >= rank) throw std::out_of_range("generator index out of range");
  SphereClass b(rank);
  b.coords_[i] = std::move(value);
  return b;
}

bool SphereClass::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

SphereClass& SphereClass::operator+=(const SphereClass& other) {
  require_same_rank(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

SphereClass& SphereClass::operator-=(const SphereClass& other) {
  require_same_rank(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

SphereClass SphereClass::operator-() const {
  SphereClass r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

SphereClass operator*(const Rational& s, const SphereClass& b) {
  SphereClass r(b);
  for (auto& c : r.coords_) c *= s;
  return r;
}

bool operator<(const SphereClass& a, const SphereClass& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end(),
                                      [](const Rational& x, const Rational& y) { return cmp(x, y) < 0; });
}

Rational OmegaFunctional::operator()(const SphereClass& b) const {
  if (b.rank() != values.size()) throw std::invalid_argument("omega: rank mismatch");
  Rational r = 0;
  for (std::size_t i = 0; i < values.size(); ++i) r += values[i] * b[i];
  return r;
}

Rational ChernFunctional::operator()(const SphereClass& b) const {
  if (b.rank() != values.size()) throw std::invalid_argument("c1: rank mismatch");
  Rational r = 0;
  for (std::size_t i = 0; i < values.size(); ++i) r += Rational(values[i]) * b[i];
  return r;
}

NovikovElement NovikovElement::monomial(SphereClass exponent, Rational coefficient) {
  NovikovElement x;
  x.add_term(exponent, coefficient);
  return x;
}

void NovikovElement::add_term(const SphereClass& exponent, const Rational& coefficient) {
  if (coefficient == 0) return;
  if (!terms_.empty()) require_same_rank(terms_.begin()->first, exponent);
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational NovikovElement::coefficient(const SphereClass& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

NovikovElement& NovikovElement::operator+=(const NovikovElement& other) {
  for (const auto& [b, q] : other.terms_) add_term(b, q);
  return *this;
}

NovikovElement& NovikovElement::operator-=(const NovikovElement& other) {
  for (const auto& [b, q] : other.terms_) add_term(b, -q);
  return *this;
}

NovikovElement& NovikovElement::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, q] : terms_) q *= s;
  return *this;
}

NovikovElement NovikovElement::operator-() const {
  NovikovElement r(*this);
  for (auto& [b, q] : r.terms_) q = -q;
  return r;
}

NovikovElement operator*(const NovikovElement& a, const NovikovElement& b) {
  NovikovElement r;
  for (const auto& [ba, qa] : a.terms_)
    for (const auto& [bb, qb] : b.terms_) r.add_term(ba + bb, qa * qb);
  return r;
}

NovikovElement NovikovElement::shifted(const SphereClass& shift) const {
  NovikovElement r;
  for (const auto& [b, q] : terms_) r.terms_.emplace(b + shift, q);
  return r;
}

NovikovElement NovikovElement::truncated(const OmegaFunctional& omega, const Rational& threshold) const {
  NovikovElement r;
  for (const auto& [b, q] : terms_)
    if (omega(b) >= threshold) r.terms_.emplace_hint(r.terms_.end(), b, q);
  return r;
}

ExtRational valuation(const NovikovElement& x, const OmegaFunctional& omega) {
  ExtRational v = ExtRational::neg_infinity();
  for (const auto& [b, q] : x.terms()) v = max(v, ExtRational(omega(b)));
  return v;
}

NovikovElement leading_part(const NovikovElement& x, const OmegaFunctional& omega) {
  ExtRational v = valuation(x, omega);
  NovikovElement r;
  for (const auto& [b, q] : x.terms())
    if (ExtRational(omega(b)) == v) r.add_term(b, q);
  return r;
}

std::string format_exponent(const SphereClass& b, std::span<const std::string> generators) {
  if (b.rank() != generators.size()) throw std::invalid_argument("format_exponent: rank mismatch");
  std::string out;
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (b[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += to_string(b[i]) + "*" + generators[i];
  }
  return out.empty() ? out : "e^{" + out + "}";
}

std::string to_string(const NovikovElement& x, std::span<const std::string> generators) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [b, q] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(q);
    if (!b.is_zero()) out += " * " + format_exponent(b, generators);
  }
  return out;
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, std::span<const std::string> generators)
      : text_(text), generators_(generators) {}

  std::vector<ParsedTerm> parse() {
    std::vector<ParsedTerm> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    bool negate = false;
    while (true) {
      ParsedTerm t = term();
      if (negate) t.coefficient = -t.coefficient;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c == '+') negate = false;
      else if (c == '-') negate = true;
      else throw ParseError(std::string("expected '+' or '-', got '") + c + "'", pos_);
      ++pos_;
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  static bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  bool at_exponential() const {
    return peek() == 'e' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '^';
  }

  std::string number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/') {
      ++pos_;
      std::size_t den = pos_;
      bool zero = true;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        if (text_[pos_] != '0') zero = false;
        ++pos_;
      }
      if (den == pos_) throw ParseError("expected denominator", pos_);
      if (zero) throw ParseError("zero denominator", den);
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string name() {
    std::size_t start = pos_;
    while (is_name_char(peek())) ++pos_;
    if (peek() == '^' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t generator_index(const std::string& g, std::size_t at) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (generators_[i] == g) return i;
    throw ParseError("unknown generator \"" + g + "\"", at);
  }

  SphereClass exponent() {
    pos_ += 2;  // "e^"
    if (peek() != '{') throw ParseError("expected '{' after e^", pos_);
    ++pos_;
    SphereClass acc(generators_.size());
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return acc;
    }
    bool first = true;
    while (true) {
      skip_ws();
      Rational sign = 1;
      if (!first) {
        char c = peek();
        if (c == '}') {
          ++pos_;
          return acc;
        }
        if (c == '-') sign = -1;
        else if (c != '+') throw ParseError("expected '+', '-' or '}' in exponent", pos_);
        ++pos_;
        skip_ws();
      }
      if (peek() == '-') {
        sign = -sign;
        ++pos_;
        skip_ws();
      }
      Rational coeff = 1;
      std::size_t at = pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = parse_rational(number());
        skip_ws();
        if (peek() != '*') {
          if (coeff != 0) throw ParseError("expected '*' and a generator after coefficient", pos_);
          first = false;
          continue;
        }
        ++pos_;
        skip_ws();
        at = pos_;
      }
      if (!is_name_start(peek())) throw ParseError("expected generator name", pos_);
      std::string g = name();
      acc += SphereClass::generator(generators_.size(), generator_index(g, at), sign * coeff);
      first = false;
    }
  }

  ParsedTerm term() {
    skip_ws();
    ParsedTerm t;
    t.position = pos_;
    t.exponent = SphereClass(generators_.size());
    if (peek() == '-') {
      t.coefficient = -1;
      ++pos_;
      skip_ws();
    }
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string lit = number();
        t.coefficient *= parse_rational(lit);
        t.last_numeric = lit;
      } else if (at_exponential()) {
        t.exponent += exponent();
      } else if (is_name_start(c)) {
        std::string n = name();
        if (t.name) throw ParseError("more than one basis class in a term", at);
        t.name = n;
        t.name_position = at;
      } else if (at_end()) {
        throw ParseError("unexpected end of expression", at);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", at);
      }
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  std::string_view text_;
  std::span<const std::string> generators_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<ParsedTerm> parse_terms(std::string_view text, std::span<const std::string> generators) {
  return TermParser(text, generators).parse();
}

NovikovElement parse_novikov(std::string_view text, std::span<const std::string> generators) {
  NovikovElement x;
  for (const auto& t : parse_terms(text, generators)) {
    if (t.name) throw ParseError("unexpected name \"" + *t.name + "\" in a Novikov ring element", t.name_position);
    x.add_term(t.exponent, t.coefficient);
  }
  return x;
}

}  // namespace qhofer
