#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace krd {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; zero is 0/1.
class Rat {
 public:
  Rat() = default;
  Rat(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(mpq_class value);

  /// Parses "p" or "p/q" with optional leading sign.
  static Rat from_string(std::string_view text);

  const mpq_class& get() const noexcept { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const noexcept { return sgn(v_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_one() const noexcept { return v_ == 1; }
  bool is_integer() const noexcept { return v_.get_den() == 1; }

  Rat abs() const;
  Rat inverse() const;
  Rat pow(long exponent) const;

  /// Real n-th root in Q if it exists. For even n the positive root is
  /// returned (negative radicands have none); for odd n the unique real root.
  std::optional<Rat> exact_root(unsigned long n) const;

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;
  /// Always "p/q", used by the JSON schema.
  std::string fraction_str() const;

  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

}  // namespace krd
