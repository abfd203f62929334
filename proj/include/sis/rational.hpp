#ifndef SIS_RATIONAL_HPP
#define SIS_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sis {

/// Exact rational number with 64-bit numerator and positive denominator,
/// always kept in lowest terms. Arithmetic throws std::overflow_error
/// instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "a/b", integers and plain decimals ("0.33", "-2.5", "1e-3").
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// Always "a/b", including "2/1".
  std::string to_string() const;

  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Sign of  base1^exp1 * base2^exp2 - 1  computed with arbitrary-precision
/// integers. Bases must be positive; exponents may be negative.
int sign_of_power_product_minus_one(const Rational& base1, std::int64_t exp1,
                                    const Rational& base2, std::int64_t exp2);

}  // namespace sis

#endif
