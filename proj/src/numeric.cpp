#include "senscheck/numeric.hpp"

#include <stdexcept>

namespace senscheck {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!digits(num) || !digits(den) || den == "0") return std::nullopt;
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
    if (!digits(ip) || !digits(fp)) return std::nullopt;
    mpz_class den(1);
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    Rational q{mpz_class(ip) * den + mpz_class(fp), den};
    q.canonicalize();
    return q;
  }
  if (!digits(text)) return std::nullopt;
  return Rational(mpz_class(text));
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::uint64_t to_uint(const Rational& q) {
  if (!is_integer(q) || q < 0 || !q.get_num().fits_ulong_p())
    throw std::overflow_error("to_uint: not a small natural: " + rational_str(q));
  return q.get_num().get_ui();
}

ExtReal ExtReal::operator+(const ExtReal& o) const {
  if (inf_ || o.inf_) return infinity();
  return ExtReal(v_ + o.v_);
}

ExtReal ExtReal::operator*(const ExtReal& o) const {
  if (inf_ || o.inf_) return infinity();
  return ExtReal(v_ * o.v_);
}

bool ExtReal::operator==(const ExtReal& o) const {
  if (inf_ != o.inf_) return false;
  return inf_ || v_ == o.v_;
}

bool ExtReal::operator<=(const ExtReal& o) const {
  if (o.inf_) return true;
  if (inf_) return false;
  return v_ <= o.v_;
}

std::string ExtReal::str() const { return inf_ ? "inf" : rational_str(v_); }

ExtReal ext_max(const ExtReal& a, const ExtReal& b) { return a <= b ? b : a; }

}  // namespace senscheck
