#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

// Boost 1.74 under C++20: rational<long> == int resolves to the reversed
// free template, which calls itself forever. Plain overloads win.
namespace boost {
inline bool operator==(const rational<long>& a, int b) { return a == rational<long>(b); }
inline bool operator==(int b, const rational<long>& a) { return a == rational<long>(b); }
}  // namespace boost

namespace dca {

using Rational = boost::rational<std::int64_t>;
static_assert(std::is_same_v<std::int64_t, long>, "comparison shim above assumes int64_t is long");

std::string to_string(const Rational& r);
// Accepts "p", "p/q", "-p/q".
Rational parse_rational(std::string_view text);

/// Exact rational extended with +infinity. Arithmetic follows a + inf = inf,
/// and a nonnegative scalar 0 times inf is 0.
class ExtRat {
 public:
  ExtRat() = default;
  ExtRat(const Rational& v) : value_(v) {}  // NOLINT: implicit by design of call sites
  ExtRat(std::int64_t v) : value_(v) {}     // NOLINT
  ExtRat(int v) : value_(v) {}              // NOLINT

  static ExtRat infinity() {
    ExtRat r;
    r.inf_ = true;
    return r;
  }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  // Throws on infinity.
  const Rational& value() const;

  ExtRat& operator+=(const ExtRat& other);
  ExtRat& operator-=(const Rational& other);

  friend ExtRat operator+(ExtRat a, const ExtRat& b) { return a += b; }
  friend ExtRat operator*(const Rational& k, const ExtRat& x);
  friend ExtRat operator/(const ExtRat& x, const Rational& k);

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

  std::string str() const;
  static ExtRat parse(std::string_view text);

 private:
  Rational value_{0};
  bool inf_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtRat& x);

}  // namespace dca
