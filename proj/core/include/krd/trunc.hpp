#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "krd/poly.hpp"

namespace krd {

/// Element of R_d = Q[x]/(x^d)[z,t], stored as its d coefficients in x.
///
/// Coefficients are polynomials in z and t. They may additionally carry the
/// group parameter s, which is how computations over Q[s] reuse this type.
class TruncElem {
 public:
  explicit TruncElem(int d);
  TruncElem(int d, std::vector<MPoly> coeffs);

  static TruncElem constant(const Rat& c, int d);
  static TruncElem one(int d) { return constant(Rat(1), d); }

  int precision() const { return static_cast<int>(coeffs_.size()); }
  const MPoly& coeff(int m) const { return coeffs_.at(static_cast<std::size_t>(m)); }
  std::span<const MPoly> coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// Smallest m with a nonzero x^m coefficient.
  std::optional<int> valuation() const;

  /// Representative in Q[x,z,t] with x-degree < d.
  MPoly to_poly() const;

  /// x^m * this.
  TruncElem shifted(int m) const;
  /// this / x^m; the first m coefficients must vanish. Precision drops by m.
  TruncElem stripped(int m) const;
  /// Multiplies every coefficient by an x-free polynomial.
  TruncElem scaled(const MPoly& c) const;

  TruncElem& operator+=(const TruncElem& o);
  TruncElem& operator-=(const TruncElem& o);

  friend TruncElem operator+(TruncElem a, const TruncElem& b) { return a += b; }
  friend TruncElem operator-(TruncElem a, const TruncElem& b) { return a -= b; }
  friend TruncElem operator*(const TruncElem& a, const TruncElem& b);
  friend TruncElem operator*(const TruncElem& a, const Rat& c) { return a.scaled(MPoly(c)); }
  friend TruncElem operator-(const TruncElem& a) { return a.scaled(MPoly(-1)); }

  friend bool operator==(const TruncElem&, const TruncElem&) = default;

  std::string str() const { return to_poly().str(); }

 private:
  std::vector<MPoly> coeffs_;
};

/// Reduction modulo x^d. Rejects y and s.
TruncElem truncate(const MPoly& p, int d);

/// Reduction modulo x^d, keeping the parameter s. Rejects y.
TruncElem truncate_with_parameter(const MPoly& p, int d);

/// Inverse of a unit, order by order in x. Throws NotAUnit unless the x^0
/// coefficient is a nonzero rational constant.
TruncElem unit_inverse(const TruncElem& u);

/// Cofactor b with b*G == T in R_d.
struct MembershipCofactor {
  TruncElem b;
};

/// T is not in the ideal generated by G; `order` is the x-power at which the
/// coefficient division first failed.
struct NotMember {
  int order;
};

using MembershipResult = std::variant<MembershipCofactor, NotMember>;

/// Decides T in (x^d, G) inside R_d. G's x^0 coefficient must be a nonzero
/// polynomial. The cofactor is unique, so a NotMember answer is definitive.
MembershipResult ideal_membership(const TruncElem& target, const TruncElem& generator);

/// Same decision with coefficients in Q[s][z,t]. The generator must be free of s.
MembershipResult membership_with_parameter(const TruncElem& target, const TruncElem& generator);

}  // namespace krd
