#include "pliml/rational.hpp"

#include <cmath>

#include "pliml/error.hpp"

namespace pliml {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational::Rational(std::int64_t value) {
  // mpz from int64 through the string path keeps this portable to 32-bit longs.
  value_ = mpq_class(mpz_class(std::to_string(value)));
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) fail(ErrorCode::domain, "rational with zero denominator");
  value_ = mpq_class(mpz_class(std::to_string(numerator)), mpz_class(std::to_string(denominator)));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    fail(ErrorCode::parse, "malformed rational literal '" + std::string(text) + "'");
  mpz_class d{std::string(den)};
  if (d == 0) fail(ErrorCode::parse, "zero denominator in '" + std::string(text) + "'");
  mpz_class n{std::string(num)};
  if (negative) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) fail(ErrorCode::domain, "non-finite double");
  return Rational(mpq_class(value));
}

std::string Rational::str() const { return value_.get_str(); }
std::string Rational::numerator_str() const { return value_.get_num().get_str(); }
std::string Rational::denominator_str() const { return value_.get_den().get_str(); }
double Rational::to_double() const { return value_.get_d(); }
bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (sgn(rhs.value_) == 0) fail(ErrorCode::domain, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::size_t Rational::hash() const {
  auto limb_hash = [](const mpz_class& z) {
    std::size_t h = std::hash<long>{}(mpz_sgn(z.get_mpz_t()));
    const std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i)
      h = h * 1099511628211ULL ^ std::hash<mp_limb_t>{}(mpz_getlimbn(z.get_mpz_t(), i));
    return h;
  };
  return limb_hash(value_.get_num()) * 31 + limb_hash(value_.get_den());
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace pliml
