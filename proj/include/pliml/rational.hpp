#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace pliml {

/// Exact rational number. Always canonical: positive denominator, lowest terms.
///
/// Thin value wrapper over GMP's mpq_class so the rest of the library never
/// touches GMP directly and cannot accidentally mix in floating point.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  /// Parses `p`, `-p`, `p/q` (q != 0). Non-canonical input is reduced.
  static Rational parse(std::string_view text);
  /// Exact binary value of a finite double.
  static Rational from_double(double value);

  std::string str() const;
  std::string numerator_str() const;
  std::string denominator_str() const;
  double to_double() const;

  bool is_integer() const;
  int sign() const { return sgn(value_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

private:
  explicit Rational(mpq_class value);
  mpq_class value_;
};

Rational abs(const Rational& q);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

}  // namespace pliml

template <>
struct std::hash<pliml::Rational> {
  std::size_t operator()(const pliml::Rational& q) const noexcept { return q.hash(); }
};
