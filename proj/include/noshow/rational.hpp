#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace noshow {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper around GMP's mpq_class. Every constructor canonicalizes,
/// and GMP keeps results of arithmetic canonical, so two equal values always
/// have identical numerator and denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}                    // NOLINT(google-explicit-constructor)
  Rational(long long value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(unsigned long value) : value_(value) {}           // NOLINT
  Rational(unsigned long long value) : value_(static_cast<unsigned long>(value)) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Accepts "p", "-p" or "p/q".
  static Rational parse(std::string_view text);

  const mpq_class& get() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Appends a byte encoding that is equal for equal values (used for state hashing).
  void append_key(std::string& out) const;

 private:
  mpq_class value_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace noshow
