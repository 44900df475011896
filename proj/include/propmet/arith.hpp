#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "propmet/errors.hpp"

namespace propmet {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer& v) { return v.str(); }

/// "p" for integers, "p/q" otherwise (q > 0, lowest terms).
inline std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
    const Integer num(std::string(text.substr(0, slash)));
    const Integer den(std::string(text.substr(slash + 1)));
    if (den == 0) throw UsageError("zero denominator in rational '" + std::string(text) + "'");
    return Rational(num, den);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("not a rational number: '" + std::string(text) + "'");
  }
}

/// Three-way comparison by cross-multiplication (denominators are positive),
/// much cheaper than the library's division-based ordering.
inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const Integer ad = boost::multiprecision::denominator(a);
  const Integer bd = boost::multiprecision::denominator(b);
  const Integer an = boost::multiprecision::numerator(a);
  const Integer bn = boost::multiprecision::numerator(b);
  const int c = ad == bd ? an.compare(bn) : Integer(an * bd).compare(Integer(bn * ad));
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

inline bool is_negative(const Rational& q) { return boost::multiprecision::numerator(q).sign() < 0; }

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer floor(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

inline Integer ceil(const Rational& q) { return -floor(-q); }

/// Nonnegative rational or +infinity. Addition absorbs infinity; ordering is total.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(const Rational& v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (is_negative(v)) throw UsageError("ExtReal must be nonnegative, got " + propmet::to_string(v));
  }
  ExtReal(long long v) : ExtReal(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  ExtReal(int v) : ExtReal(Rational(v)) {}        // NOLINT(google-explicit-constructor)

  static ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  const Rational& value() const {
    if (infinite_) throw UsageError("value() of infinite ExtReal");
    return value_;
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtReal(a.value_ + b.value_);
  }
  ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }

  /// Scaling by a positive rational; infinity stays infinity.
  friend ExtReal operator*(const Rational& c, const ExtReal& a) {
    if (c <= 0) throw UsageError("ExtReal scale factor must be positive");
    if (a.infinite_) return infinity();
    return ExtReal(c * a.value_);
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return compare(a.value_, b.value_);
  }

  std::string str() const { return infinite_ ? "inf" : propmet::to_string(value_); }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline std::string to_string(const ExtReal& v) { return v.str(); }

inline std::ostream& operator<<(std::ostream& os, const ExtReal& v) { return os << v.str(); }

inline ExtReal parse_ext_real(std::string_view text) {
  if (text == "inf") return ExtReal::infinity();
  return ExtReal(parse_rational(text));
}

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

}  // namespace propmet
