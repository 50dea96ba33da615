#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "varalpha/errors.hpp"

namespace varalpha {

/// Exact rational number in lowest terms with a positive denominator.
///
/// A thin value wrapper over GMP's mpq_class. Every arithmetic result is
/// canonicalized, so `==` is structural equality of reduced fractions.
class Rational {
public:
  Rational() = default;
  Rational(long v) : q_(v) {}                             // NOLINT(implicit)
  Rational(int v) : q_(static_cast<long>(v)) {}           // NOLINT(implicit)
  Rational(long long v) : q_(static_cast<long>(v)) {}     // NOLINT(implicit)
  Rational(unsigned long v) : q_(v) {}                    // NOLINT(implicit)

  Rational(long num, long den) {
    if (den == 0) throw domain_error("zero denominator");
    q_ = mpq_class(num, 1);
    q_ /= mpq_class(den, 1);
  }

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q" or "p" with an optional leading '-'. Rejects q <= 0,
  /// whitespace, and anything that is not a plain decimal literal.
  static Rational parse(std::string_view text) {
    auto bad = [&] { return parse_error("bad rational literal \"" + std::string(text) + "\""); };
    auto digits_only = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string_view num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      num = text.substr(0, slash);
      den = text.substr(slash + 1);
    }
    std::string_view num_digits = num;
    if (!num_digits.empty() && num_digits.front() == '-') num_digits.remove_prefix(1);
    if (!digits_only(num_digits) || !digits_only(den)) throw bad();
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d <= 0) throw bad();
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  const mpq_class& get() const noexcept { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const noexcept { return sgn(q_); }
  bool is_zero() const noexcept { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational reciprocal() const {
    if (is_zero()) throw domain_error("reciprocal of zero");
    return Rational(mpq_class(1 / q_));
  }

  /// "p/q" for non-integers, "p" for integers.
  std::string str() const { return q_.get_str(10); }

  /// Decimal rendering rounded half away from zero to `places` fractional
  /// digits, with trailing zeros dropped. Labeled as an approximation by
  /// callers; never used for comparisons.
  std::string to_decimal(unsigned places) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class num = ::abs(q_.get_num()) * scale * 2 + q_.get_den();
    mpz_class den = q_.get_den() * 2;
    mpz_class scaled = num / den; // floor((|x|*10^p) + 1/2)
    std::string digits = scaled.get_str(10);
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string int_part = digits.substr(0, digits.size() - places);
    std::string frac_part = digits.substr(digits.size() - places);
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
    std::string out;
    if (sgn(q_) < 0 && (scaled != 0)) out.push_back('-');
    out += int_part;
    if (!frac_part.empty()) out += "." + frac_part;
    return out;
  }

  double to_double() const { return q_.get_d(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  mpq_class q_{0};
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace varalpha
