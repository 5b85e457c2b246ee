#include "dca/ext_rat.hpp"

#include <charconv>
#include <ostream>

#include "dca/error.hpp"

namespace dca {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kNotGraded: return "NotGraded";
    case ErrorCode::kNotSemilattice: return "NotSemilattice";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotPolar: return "NotPolar";
    case ErrorCode::kBadAlpha: return "BadAlpha";
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kNotModular: return "NotModular";
    case ErrorCode::kNotWeaklyModular: return "NotWeaklyModular";
    case ErrorCode::kNotSwm: return "NotSwm";
    case ErrorCode::kNotOrientedModular: return "NotOrientedModular";
    case ErrorCode::kSameVertex: return "SameVertex";
    case ErrorCode::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::kLocalBudgetExceeded: return "LocalBudgetExceeded";
    case ErrorCode::kNotLConvex: return "NotLConvex";
    case ErrorCode::kEmptyFilter: return "EmptyFilter";
    case ErrorCode::kNotAChain: return "NotAChain";
    case ErrorCode::kOutOfRegion: return "OutOfRegion";
    case ErrorCode::kUnsupportedComplex: return "UnsupportedComplex";
    case ErrorCode::kBadBounds: return "BadBounds";
    case ErrorCode::kBadInput: return "BadInput";
    case ErrorCode::kInvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t out = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorCode::kBadInput, "not a rational: '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  std::int64_t num = parse_int(text.substr(0, slash), text);
  std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorCode::kBadInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

const Rational& ExtRat::value() const {
  if (inf_) throw Error(ErrorCode::kBadInput, "value() of infinite ExtRat");
  return value_;
}

ExtRat& ExtRat::operator+=(const ExtRat& other) {
  if (inf_ || other.inf_) {
    inf_ = true;
    value_ = 0;
  } else {
    value_ += other.value_;
  }
  return *this;
}

ExtRat& ExtRat::operator-=(const Rational& other) {
  if (!inf_) value_ -= other;
  return *this;
}

ExtRat operator*(const Rational& k, const ExtRat& x) {
  if (k == 0) return ExtRat(0);
  if (x.inf_) {
    if (k < 0) throw Error(ErrorCode::kBadInput, "negative multiple of infinity");
    return ExtRat::infinity();
  }
  return ExtRat(k * x.value_);
}

ExtRat operator/(const ExtRat& x, const Rational& k) {
  if (x.inf_) return x;
  return ExtRat(x.value_ / k);
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.inf_ && b.inf_) return std::strong_ordering::equal;
  if (a.inf_) return std::strong_ordering::greater;
  if (b.inf_) return std::strong_ordering::less;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtRat::str() const { return inf_ ? "inf" : to_string(value_); }

ExtRat ExtRat::parse(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return infinity();
  return ExtRat(parse_rational(text));
}

std::ostream& operator<<(std::ostream& os, const ExtRat& x) { return os << x.str(); }

}  // namespace dca
