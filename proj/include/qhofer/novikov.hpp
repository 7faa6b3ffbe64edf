#pragma once

// Group ring of the spherical class group with rational coefficients,
// finite-support elements only. Exponent classes carry exact rational
// coordinates in a fixed basis of generators (E, F for the blow-up of CP^2,
// L for CP^n).

#include "qhofer/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qhofer {

class SphereClass {
 public:
  SphereClass() = default;
  explicit SphereClass(std::size_t rank) : coords_(rank) {}
  explicit SphereClass(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  /// value * (i-th generator).
  static SphereClass generator(std::size_t rank, std::size_t i, Rational value = 1);

  std::size_t rank() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_.at(i); }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  bool is_zero() const;

  SphereClass& operator+=(const SphereClass& other);
  SphereClass& operator-=(const SphereClass& other);
  friend SphereClass operator+(SphereClass a, const SphereClass& b) { return a += b; }
  friend SphereClass operator-(SphereClass a, const SphereClass& b) { return a -= b; }
  SphereClass operator-() const;
  friend SphereClass operator*(const Rational& s, const SphereClass& b);

  friend bool operator==(const SphereClass& a, const SphereClass& b) { return a.coords_ == b.coords_; }
  /// Lexicographic on coordinates; this is the canonical term order.
  friend bool operator<(const SphereClass& a, const SphereClass& b);

 private:
  std::vector<Rational> coords_;
};

/// omega on the generators, in units of pi.
struct OmegaFunctional {
  std::vector<Rational> values;
  Rational operator()(const SphereClass& b) const;
};

/// c_1 on the generators. Evaluates to a rational on rational classes.
struct ChernFunctional {
  std::vector<long> values;
  Rational operator()(const SphereClass& b) const;
};

/// Finite sum of q_B e^B with every stored q_B nonzero.
class NovikovElement {
 public:
  using TermMap = std::map<SphereClass, Rational>;

  NovikovElement() = default;
  static NovikovElement monomial(SphereClass exponent, Rational coefficient = 1);
  static NovikovElement one(std::size_t rank) { return monomial(SphereClass(rank)); }

  void add_term(const SphereClass& exponent, const Rational& coefficient);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const SphereClass& exponent) const;

  NovikovElement& operator+=(const NovikovElement& other);
  NovikovElement& operator-=(const NovikovElement& other);
  NovikovElement& operator*=(const Rational& s);
  NovikovElement operator-() const;
  friend NovikovElement operator+(NovikovElement a, const NovikovElement& b) { return a += b; }
  friend NovikovElement operator-(NovikovElement a, const NovikovElement& b) { return a -= b; }
  friend NovikovElement operator*(const NovikovElement& a, const NovikovElement& b);
  friend NovikovElement operator*(const Rational& s, NovikovElement a) { return a *= s; }

  /// Multiplication by e^shift.
  NovikovElement shifted(const SphereClass& shift) const;
  /// Keeps the terms with omega(B) >= threshold.
  NovikovElement truncated(const OmegaFunctional& omega, const Rational& threshold) const;

  friend bool operator==(const NovikovElement& a, const NovikovElement& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

/// sup { omega(B) : q_B != 0 }, -inf on the zero element.
ExtRational valuation(const NovikovElement& x, const OmegaFunctional& omega);

/// Terms of maximal omega-value.
NovikovElement leading_part(const NovikovElement& x, const OmegaFunctional& omega);

// Text format: terms joined by " + ", each "q * e^{c1*g1 + c2*g2}"; the
// exponent factor is omitted for the zero class and "0" is the zero element.

std::string format_exponent(const SphereClass& b, std::span<const std::string> generators);
std::string to_string(const NovikovElement& x, std::span<const std::string> generators);
NovikovElement parse_novikov(std::string_view text, std::span<const std::string> generators);

/// One additive term of the shared expression grammar, before basis names
/// are resolved against a model.
struct ParsedTerm {
  Rational coefficient{1};
  SphereClass exponent;
  std::optional<std::string> name;
  /// Text of the last bare numeric factor, e.g. "1" in "3 * 1".
  std::optional<std::string> last_numeric;
  std::size_t position = 0;
  std::size_t name_position = 0;
};

/// expr := term (('+' | '-') term)*
/// term := ['-'] factor ('*' factor)*
/// factor := rational | name | 'e^{' [mono (('+'|'-') mono)*] '}'
/// mono := [rational '*'] generator
std::vector<ParsedTerm> parse_terms(std::string_view text, std::span<const std::string> generators);

}  // namespace qhofer
