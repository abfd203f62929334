#include "sis/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace sis {

namespace {

using i128 = __int128;
using boost::multiprecision::cpp_int;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

cpp_int ipow(std::int64_t base, std::int64_t exp) {
  cpp_int result = 1;
  cpp_int b = base;
  auto e = static_cast<std::uint64_t>(exp);
  while (e > 0) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    if (num == std::numeric_limits<std::int64_t>::min() ||
        den == std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("rational arithmetic overflow");
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational a = parse(text.substr(0, slash));
    const Rational b = parse(text.substr(slash + 1));
    if (b.is_zero()) fail();
    return a / b;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  i128 mantissa = 0;
  std::int64_t scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (mantissa > std::numeric_limits<std::int64_t>::max()) fail();
      if (seen_point) ++scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();

  std::int64_t exponent = 0;
  if (pos < text.size()) {
    const std::string exp_text(text.substr(pos + 1));
    if (exp_text.empty()) fail();
    std::size_t used = 0;
    try {
      exponent = std::stoll(exp_text, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != exp_text.size()) fail();
  }
  exponent -= scale;
  if (exponent > 18 || exponent < -18) fail();

  i128 num = negative ? -mantissa : mantissa;
  i128 den = 1;
  for (std::int64_t k = 0; k < exponent; ++k) num *= 10;
  for (std::int64_t k = 0; k > exponent; --k) den *= 10;
  return make(num, den);
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

int sign_of_power_product_minus_one(const Rational& base1, std::int64_t exp1,
                                    const Rational& base2, std::int64_t exp2) {
  if (!base1.is_positive() || !base2.is_positive())
    throw std::domain_error("power product needs positive bases");
  cpp_int lhs = 1;
  cpp_int rhs = 1;
  auto fold = [&](const Rational& base, std::int64_t exp) {
    if (exp >= 0) {
      lhs *= ipow(base.num(), exp);
      rhs *= ipow(base.den(), exp);
    } else {
      lhs *= ipow(base.den(), -exp);
      rhs *= ipow(base.num(), -exp);
    }
  };
  fold(base1, exp1);
  fold(base2, exp2);
  if (lhs > rhs) return 1;
  if (lhs < rhs) return -1;
  return 0;
}

}  // namespace sis
