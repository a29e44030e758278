#include "krd/jacobian.hpp"

#include <cassert>
#include <numeric>
#include <string>

#include "krd/error.hpp"

namespace krd {

CurveExponents::CurveExponents(int k, int l) : k_(k), l_(l) {
  if (k < 2 || l <= k || std::gcd(k, l) != 1)
    throw InvalidArgument("invalid exponents (k, l) = (" + std::to_string(k) + ", " + std::to_string(l) +
                          "): need 2 <= k < l with gcd(k, l) = 1");
}

MPoly CurveExponents::r0() const {
  return MPoly::term(1, Monomial::of(Var::z, static_cast<unsigned>(k_))) +
         MPoly::term(1, Monomial::of(Var::t, static_cast<unsigned>(l_)));
}

bool CurveExponents::in_span(const Monomial& m) const {
  return static_cast<int>(m[Var::z]) <= k_ - 2 && static_cast<int>(m[Var::t]) <= l_ - 2;
}

SplitDecomposition split(const MPoly& u, const CurveExponents& kl) {
  if (u.uses(Var::x) || u.uses(Var::y) || u.uses(Var::s))
    throw InvalidArgument("split: polynomial must involve only z and t: " + u.str());
  SplitDecomposition out;
  for (const auto& [m, c] : u.terms()) (kl.in_span(m) ? out.span_part : out.ideal_part).add_term(m, c);
  return out;
}

PreimageResult jacobian_preimage(const Monomial& m, const CurveExponents& kl) {
  if (m.uses(Var::x) || m.uses(Var::y) || m.uses(Var::s))
    throw InvalidArgument("jacobian_preimage: monomial must involve only z and t");
  const long k = kl.k(), l = kl.l();
  const long a = m[Var::z], b = m[Var::t];

  PreimageResult out;
  if (a >= k - 1) {
    // Jac(r0, z^p t^q) = (kq + lp) z^a t^b - l p z^(a-k) t^b r0, p = a-k+1, q = b+1.
    const long p = a - k + 1, q = b + 1;
    const long weight = k * q + l * p;
    assert(weight > 0);
    const Rat lambda(1, weight);
    out.h = MPoly::term(-lambda, Monomial::zt(static_cast<unsigned>(p), static_cast<unsigned>(q)));
    if (p > 0)
      out.f = MPoly::term(-lambda * Rat(l * p), Monomial::zt(static_cast<unsigned>(a - k), static_cast<unsigned>(b)));
  } else if (b >= l - 1) {
    // Jac(r0, z^p t^q) = -(kq + lp) z^a t^b + k q z^a t^(b-l) r0, p = a+1, q = b-l+1.
    const long p = a + 1, q = b - l + 1;
    const long weight = k * q + l * p;
    assert(weight > 0);
    const Rat lambda(1, weight);
    out.h = MPoly::term(lambda, Monomial::zt(static_cast<unsigned>(p), static_cast<unsigned>(q)));
    if (q > 0)
      out.f = MPoly::term(-lambda * Rat(k * q), Monomial::zt(static_cast<unsigned>(a), static_cast<unsigned>(b - l)));
  } else {
    throw InvalidArgument("jacobian_preimage: " + m.str() + " is not in the ideal (z^" + std::to_string(k - 1) +
                          ", t^" + std::to_string(l - 1) + ")");
  }

  const MPoly r0 = kl.r0();
  if (jac(out.h, r0) != MPoly::term(1, m) + r0 * out.f)
    throw CertificateFailure("jacobian_preimage: identity failed for " + m.str());
  return out;
}

PreimageResult preimage_of_polynomial(const MPoly& ideal_part, const CurveExponents& kl) {
  if (ideal_part.uses(Var::x) || ideal_part.uses(Var::y) || ideal_part.uses(Var::s))
    throw InvalidArgument("preimage_of_polynomial: polynomial must involve only z and t");
  for (const auto& [m, c] : ideal_part.terms())
    if (kl.in_span(m)) throw InvalidArgument("preimage_of_polynomial: monomial " + m.str() + " is outside the ideal");

  const MPoly r0 = kl.r0();
  auto [multiple, rest] = divide_with_remainder(ideal_part, r0);

  PreimageResult out;
  out.f = -multiple;
  for (const auto& [m, c] : rest.terms()) {
    PreimageResult one = jacobian_preimage(m, kl);
    out.h += one.h * c;
    out.f += one.f * c;
  }
  if (jac(out.h, r0) != ideal_part + r0 * out.f)
    throw CertificateFailure("preimage_of_polynomial: identity failed for " + ideal_part.str());
  return out;
}

}  // namespace krd
