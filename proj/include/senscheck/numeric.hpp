#ifndef SENSCHECK_NUMERIC_HPP
#define SENSCHECK_NUMERIC_HPP

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>

namespace senscheck {

using Rational = mpq_class;

Rational make_rational(long num, long den);
// Accepts "12", "3.25" and "7/2"; returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);
// "p" when integral, "p/q" otherwise.
std::string rational_str(const Rational& q);
bool is_integer(const Rational& q);
// Requires an integral, nonnegative value that fits in uint64.
std::uint64_t to_uint(const Rational& q);

/// Nonnegative reals extended with a top element. Both + and * are total
/// and absorbing at infinity; in particular inf * 0 = inf.
class ExtReal {
public:
  ExtReal() : inf_(false), v_(0) {}
  explicit ExtReal(Rational v) : inf_(false), v_(std::move(v)) {}
  static ExtReal infinity() { ExtReal r; r.inf_ = true; return r; }
  static ExtReal of(long n) { return ExtReal(Rational(n)); }

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && v_ == 0; }
  // Only valid on finite values.
  const Rational& value() const { return v_; }

  ExtReal operator+(const ExtReal& o) const;
  ExtReal operator*(const ExtReal& o) const;

  bool operator==(const ExtReal& o) const;
  bool operator!=(const ExtReal& o) const { return !(*this == o); }
  bool operator<=(const ExtReal& o) const;
  bool operator<(const ExtReal& o) const { return *this <= o && *this != o; }
  bool operator>=(const ExtReal& o) const { return o <= *this; }
  bool operator>(const ExtReal& o) const { return o < *this; }

  std::string str() const;

private:
  bool inf_;
  Rational v_;
};

ExtReal ext_max(const ExtReal& a, const ExtReal& b);

}  // namespace senscheck

#endif
