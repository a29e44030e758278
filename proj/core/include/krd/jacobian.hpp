#pragma once

#include "krd/poly.hpp"

namespace krd {

/// Exponents (k, l) of the cuspidal curve r0 = z^k + t^l, with 2 <= k < l and
/// gcd(k, l) = 1.
class CurveExponents {
 public:
  /// Validates the exponent pair; throws InvalidArgument otherwise.
  CurveExponents(int k, int l);

  int k() const { return k_; }
  int l() const { return l_; }

  /// z^k + t^l
  MPoly r0() const;

  /// z^i t^j with i <= k-2 and j <= l-2.
  bool in_span(const Monomial& m) const;

  friend bool operator==(const CurveExponents&, const CurveExponents&) = default;

 private:
  int k_;
  int l_;
};

/// Monomial-wise partition of a polynomial in z, t.
struct SplitDecomposition {
  MPoly span_part;   // z^i t^j, i <= k-2, j <= l-2
  MPoly ideal_part;  // everything in (z^(k-1), t^(l-1))
};

/// Splits u relative to (k, l). u must be free of x, y and s.
SplitDecomposition split(const MPoly& u, const CurveExponents& kl);

/// (h, f) with jac(h, r0) == target + r0 * f.
struct PreimageResult {
  MPoly h;
  MPoly f;
};

/// Jacobian preimage of one monomial of the ideal (z^(k-1), t^(l-1)) modulo r0.
///
/// For a >= k-1 the candidate is built from z^(a-k+1) t^(b+1); otherwise
/// (b >= l-1) from the mirrored monomial z^(a+1) t^(b-l+1). Every result is
/// checked by expansion before it is returned.
PreimageResult jacobian_preimage(const Monomial& m, const CurveExponents& kl);

/// Preimage of a polynomial supported in (z^(k-1), t^(l-1)). The r0-multiple
/// part is peeled off by division and absorbed into f; the remainder is
/// handled monomial by monomial in graded-lex order.
PreimageResult preimage_of_polynomial(const MPoly& ideal_part, const CurveExponents& kl);

}  // namespace krd
