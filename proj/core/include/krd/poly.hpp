#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "krd/rational.hpp"

namespace krd {

// The variable registry is closed. Declaration order is the ranking used
// by the monomial order: x < z < t < y < s. `s` is reserved for the
// parameter of additive group actions.
enum class Var : std::uint8_t { x = 0, z = 1, t = 2, y = 3, s = 4 };

inline constexpr std::size_t kNumVars = 5;
inline constexpr std::array<Var, kNumVars> kAllVars{Var::x, Var::z, Var::t, Var::y, Var::s};

char var_name(Var v);
std::optional<Var> var_from_char(char c);

class Monomial {
 public:
  Monomial() = default;

  static Monomial of(Var v, unsigned exponent = 1);
  /// z^i t^j
  static Monomial zt(unsigned i, unsigned j);

  unsigned operator[](Var v) const { return exp_[static_cast<std::size_t>(v)]; }
  Monomial with(Var v, unsigned exponent) const;
  Monomial without(Var v) const { return with(v, 0); }

  unsigned degree() const;
  bool is_one() const { return degree() == 0; }
  bool uses(Var v) const { return (*this)[v] != 0; }
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Requires `other` to divide *this.
  Monomial operator/(const Monomial& other) const;

  /// Variables are written in registry order unless `descending` is set.
  std::string str(bool descending = false) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<std::uint32_t, kNumVars> exp_{};
};

/// Graded lexicographic order, ties broken from the highest-ranked variable down.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over Q. Zero coefficients are never stored,
/// so structural equality is mathematical equality.
class MPoly {
 public:
  using TermMap = std::map<Monomial, Rat, GrlexLess>;

  MPoly() = default;
  MPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
  MPoly(long c) : MPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)

  static MPoly var(Var v) { return term(Rat(1), Monomial::of(v)); }
  static MPoly term(const Rat& c, const Monomial& m);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rat> constant_value() const;
  std::size_t size() const { return terms_.size(); }

  Rat coeff(const Monomial& m) const;
  /// Requires a nonzero polynomial.
  std::pair<Monomial, Rat> leading_term() const;
  int degree() const;  // -1 for zero
  unsigned degree_in(Var v) const;
  bool uses(Var v) const;

  /// The coefficient of v^power, as a polynomial free of v.
  MPoly coefficient_of(Var v, unsigned power) const;

  /// Evaluates at a point; the value of every used variable must be given.
  Rat evaluate(const std::map<Var, Rat>& point) const;

  MPoly pow(unsigned e) const;

  void add_term(const Monomial& m, const Rat& c);

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rat& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
  friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }
  friend MPoly operator*(MPoly a, long c) { return a *= Rat(c); }
  friend MPoly operator*(long c, MPoly a) { return a *= Rat(c); }
  friend MPoly operator-(const MPoly& a);

  friend bool operator==(const MPoly&, const MPoly&) = default;

  /// Terms in ascending graded-lex order, e.g. "1 - 2*x*t". The output
  /// re-parses to the same polynomial.
  std::string str(bool descending_vars = false) const;

  friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

 private:
  TermMap terms_;
};

using Substitution = std::map<Var, MPoly>;

MPoly x_pow(unsigned e);

MPoly partial(const MPoly& p, Var v);

/// f_z g_t - f_t g_z. Other variables (x, s) act as constants; y is rejected.
MPoly jac(const MPoly& f, const MPoly& g);

/// Simultaneous substitution. Throws InvalidArgument if a used variable has no image.
MPoly substitute(const MPoly& p, const Substitution& images);

/// Returns r with r*q == p, or nullopt when q does not divide p.
/// Leading-term division is complete for exact quotients in any monomial order.
std::optional<MPoly> exact_divide(const MPoly& p, const MPoly& q);

/// Division with remainder by leading terms: p = quotient*q + remainder with
/// no monomial of the remainder divisible by the leading monomial of q.
std::pair<MPoly, MPoly> divide_with_remainder(const MPoly& p, const MPoly& q);

/// Antiderivative in v, monomial by monomial.
MPoly integrate(const MPoly& p, Var v);

}  // namespace krd
