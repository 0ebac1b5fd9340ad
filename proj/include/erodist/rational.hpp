#pragma once

// Exact scalars used throughout: arbitrary-precision integers, rationals, and
// the extended non-negative reals [0, +inf] in which distances live.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace erodist {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q), d = denominator_of(q);
  Integer r = n / d;  // truncates toward zero
  if (n < 0 && r * d != n) r -= 1;
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer f = floor_of(q);
  return Rational(f) == q ? f : f + 1;
}

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

/// Parses "p/q", "p", or a terminating decimal such as "-1.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() -> std::invalid_argument {
    return std::invalid_argument("malformed rational '" + s + "'");
  };
  if (s.empty()) throw bad();
  auto is_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view t) {
    if (!t.empty() && t[0] == '+') t.remove_prefix(1);
    return Integer(std::string(t));
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string_view num(s.data(), slash), den(s.data() + slash + 1, s.size() - slash - 1);
    if (!is_int(num) || !is_int(den)) throw bad();
    Integer d = to_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(to_int(num), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
    if (!is_int(whole) || frac.empty() || !is_int(frac) || frac[0] == '-' || frac[0] == '+')
      throw bad();
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational w(to_int(whole));
    Rational f(Integer(frac), scale);
    return neg ? w - f : w + f;
  }
  if (!is_int(s)) throw bad();
  return Rational(to_int(s));
}

/// Canonical "p/q" form; integers keep the "/1" suffix.
inline std::string format_fraction(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Short form: "3" for integers, "3/2" otherwise.
inline std::string format_rational(const Rational& q) {
  return is_integral(q) ? numerator_of(q).str() : format_fraction(q);
}

inline std::string format_decimal(const Rational& q, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << static_cast<double>(q);
  return os.str();
}

/// A value in [0, +inf]; used for distances and sublinear projections.
class Extended {
 public:
  Extended() = default;
  Extended(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit on purpose
  Extended(int v) : value_(v) {}                   // NOLINT
  static Extended infinity() {
    Extended e;
    e.value_.reset();
    return e;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Rational& value() const {
    if (!value_) throw std::logic_error("value() on infinite Extended");
    return *value_;
  }

  friend bool operator==(const Extended& x, const Extended& y) {
    if (x.is_infinite() || y.is_infinite()) return x.is_infinite() && y.is_infinite();
    return *x.value_ == *y.value_;
  }
  friend std::strong_ordering operator<=>(const Extended& x, const Extended& y) {
    if (x.is_infinite()) return y.is_infinite() ? std::strong_ordering::equal
                                                : std::strong_ordering::greater;
    if (y.is_infinite()) return std::strong_ordering::less;
    if (*x.value_ < *y.value_) return std::strong_ordering::less;
    if (*x.value_ > *y.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend Extended operator+(const Extended& x, const Extended& y) {
    if (x.is_infinite() || y.is_infinite()) return infinity();
    return Extended(*x.value_ + *y.value_);
  }

  std::string fraction() const { return is_infinite() ? "inf" : format_fraction(*value_); }
  std::string decimal() const { return is_infinite() ? "inf" : format_decimal(*value_); }

  friend std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.fraction(); }

 private:
  std::optional<Rational> value_{Rational(0)};
};

inline std::vector<Rational> sorted_unique(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace erodist
