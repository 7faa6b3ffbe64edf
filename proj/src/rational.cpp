#include "qhofer/rational.hpp"

#include <cctype>
#include <limits>

namespace qhofer {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  if (!all_digits(num)) throw ParseError("expected rational \"p/q\", got \"" + std::string(text) + "\"", 0);
  if (slash != std::string_view::npos) {
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(den))
      throw ParseError("malformed denominator in \"" + std::string(text) + "\"", static_cast<std::size_t>(slash + 1));
    bool zero = true;
    for (char c : den) zero = zero && c == '0';
    if (zero) throw ParseError("zero denominator in \"" + std::string(text) + "\"", static_cast<std::size_t>(slash + 1));
  }
  Rational q(std::string(text), 10);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str(10);
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  mpz_class num_a = a.get_num() * b.get_den();
  mpz_class num_b = b.get_num() * a.get_den();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_a.get_mpz_t(), num_b.get_mpz_t());
  Rational r(g, a.get_den() * b.get_den());
  r.canonicalize();
  return r;
}

const Rational& ExtRational::value() const {
  if (kind_ != Kind::finite) throw std::logic_error("ExtRational::value() on infinite value");
  return value_;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  using K = ExtRational::Kind;
  if ((a.kind_ == K::neg_infinity && b.kind_ == K::pos_infinity) ||
      (a.kind_ == K::pos_infinity && b.kind_ == K::neg_infinity))
    throw std::domain_error("-inf + inf is undefined");
  if (a.kind_ != K::finite) return a;
  if (b.kind_ != K::finite) return b;
  return ExtRational(Rational(a.value_ + b.value_));
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) {
  using K = ExtRational::Kind;
  ExtRational neg_b = b;
  if (b.kind_ == K::finite) neg_b.value_ = -b.value_;
  else neg_b.kind_ = b.kind_ == K::neg_infinity ? K::pos_infinity : K::neg_infinity;
  return a + neg_b;
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtRational::Kind::finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ != ExtRational::Kind::finite) return std::strong_ordering::equal;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }
ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }

std::string to_string(const ExtRational& q) {
  switch (q.kind()) {
    case ExtRational::Kind::neg_infinity: return "-inf";
    case ExtRational::Kind::pos_infinity: return "inf";
    default: return to_string(q.value());
  }
}

double to_double(const ExtRational& q) {
  switch (q.kind()) {
    case ExtRational::Kind::neg_infinity: return -std::numeric_limits<double>::infinity();
    case ExtRational::Kind::pos_infinity: return std::numeric_limits<double>::infinity();
    default: return q.value().get_d();
  }
}

}  // namespace qhofer
