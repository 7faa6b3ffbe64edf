#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhofer {

using Rational = mpq_class;

/// Thrown for malformed textual input. `position()` is a 0-based offset
/// into the parsed string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Parses "p/q" or "p" (optional leading '-') into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" string; integers print without a denominator.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Rational gcd: positive generator of the subgroup q1*Z + q2*Z.
Rational rational_gcd(const Rational& a, const Rational& b);

/// A rational extended by -inf and +inf.
/// v(0) = -inf for valuations; hbar = +inf when no quantum class exists.
class ExtRational {
 public:
  enum class Kind { neg_infinity, finite, pos_infinity };

  ExtRational() : kind_(Kind::neg_infinity) {}
  ExtRational(Rational value) : kind_(Kind::finite), value_(std::move(value)) {}
  ExtRational(long value) : kind_(Kind::finite), value_(value) {}

  static ExtRational neg_infinity() { return ExtRational(Kind::neg_infinity); }
  static ExtRational pos_infinity() { return ExtRational(Kind::pos_infinity); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_neg_infinity() const noexcept { return kind_ == Kind::neg_infinity; }
  bool is_pos_infinity() const noexcept { return kind_ == Kind::pos_infinity; }

  /// Throws std::logic_error when not finite.
  const Rational& value() const;

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b);
  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  explicit ExtRational(Kind kind) : kind_(kind) {}
  Kind kind_;
  Rational value_;
};

ExtRational max(const ExtRational& a, const ExtRational& b);
ExtRational min(const ExtRational& a, const ExtRational& b);

/// "-inf", "inf", or the rational string.
std::string to_string(const ExtRational& q);
double to_double(const ExtRational& q);

}  // namespace qhofer
