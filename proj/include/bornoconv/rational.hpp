#ifndef BORNOCONV_RATIONAL_HPP
#define BORNOCONV_RATIONAL_HPP

#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "error.hpp"

namespace boost {

// Boost 1.74's mixed rational/integer operator== recurses forever under C++20
// reversed-operand rewriting. Exact non-template overloads take precedence.
#define BORNOCONV_RATIONAL_EQ(T)                                                                      \
  constexpr bool operator==(const rational<std::int64_t>& a, T b) {                                   \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);                     \
  }                                                                                                   \
  constexpr bool operator==(T b, const rational<std::int64_t>& a) { return a == b; }
BORNOCONV_RATIONAL_EQ(int)
BORNOCONV_RATIONAL_EQ(long)
BORNOCONV_RATIONAL_EQ(long long)
#undef BORNOCONV_RATIONAL_EQ

}  // namespace boost

namespace bornoconv {

/// Exact rational in canonical reduced form with a positive denominator.
using Rational = boost::rational<std::int64_t>;

namespace detail {

inline std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw error(errc::parse_error, "not a rational: \"" + std::string(whole) + "\"");
  }
  return value;
}

}  // namespace detail

/// Parses "p/q" or "n". Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_int(text, text));
  auto num = detail::parse_int(text.substr(0, slash), text);
  auto den = detail::parse_int(text.substr(slash + 1), text);
  if (den == 0) throw error(errc::parse_error, "zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

/// Canonical text form: "n" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// A rational extended with +infinity, used for sup/inf values over possibly
/// empty sets (inf over nothing is +infinity).
class ExtendedRational {
 public:
  constexpr ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  static ExtendedRational infinity() {
    ExtendedRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const noexcept { return infinite_; }
  const Rational& value() const {
    if (infinite_) throw error(errc::invariant_violation, "value() of +infinity");
    return value_;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline std::string to_string(const ExtendedRational& r) {
  return r.is_infinite() ? std::string("inf") : to_string(r.value());
}

}  // namespace bornoconv

#endif
