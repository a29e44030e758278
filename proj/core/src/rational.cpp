#include "krd/rational.hpp"

#include <cctype>
#include <climits>
#include <utility>

#include "krd/error.hpp"

namespace krd {

Rat::Rat(long num, long den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat::Rat(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Rat Rat::from_string(std::string_view text) {
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (!s.empty() && allow_sign && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw InvalidArgument("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  return Rat(mpz_class(n), mpz_class(std::string(den)));
}

Rat Rat::abs() const { return Rat(mpq_class(::abs(v_))); }

Rat Rat::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  return Rat(mpq_class(1 / v_));
}

Rat Rat::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class num, den;
  auto e = static_cast<unsigned long>(exponent);
  mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), e);
  return Rat(num, den);
}

std::optional<Rat> Rat::exact_root(unsigned long n) const {
  if (n == 0) throw InvalidArgument("zeroth root");
  if (n == 1 || is_zero()) return *this;
  bool negative = sign() < 0;
  if (negative && n % 2 == 0) return std::nullopt;
  mpz_class num = ::abs(v_.get_num());
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), v_.get_den_mpz_t(), n) == 0) return std::nullopt;
  if (negative) rn = -rn;
  return Rat(rn, rd);
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::fraction_str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

Rat& Rat::operator+=(const Rat& o) {
  v_ += o.v_;
  return *this;
}
Rat& Rat::operator-=(const Rat& o) {
  v_ -= o.v_;
  return *this;
}
Rat& Rat::operator*=(const Rat& o) {
  v_ *= o.v_;
  return *this;
}
Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero");
  v_ /= o.v_;
  return *this;
}

}  // namespace krd
