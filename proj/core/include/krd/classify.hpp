#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krd/automorphism.hpp"

namespace krd {

/// Normal-form invariant: for each span monomial z^i t^j (i <= k-2, j <= l-2)
/// a polynomial alpha_ij(x) of degree <= d-2, so that the normal form of the
/// threefold is r0 + x * sum alpha_ij(x) z^i t^j.
class AlphaMatrix {
 public:
  AlphaMatrix(int d, CurveExponents kl);

  /// Reads the entries off a polynomial supported on span monomials. Terms of
  /// x-degree > d-2 are dropped (they vanish after multiplication by x mod x^d).
  static AlphaMatrix from_normal_g(const MPoly& g_norm, int d, const CurveExponents& kl);

  int d() const { return d_; }
  const CurveExponents& exponents() const { return kl_; }

  const MPoly& entry(int i, int j) const;
  void set_entry(int i, int j, const MPoly& alpha);
  /// Coefficient of x^n in alpha_ij.
  Rat coeff(int i, int j, int n) const;
  void set_coeff(int i, int j, int n, const Rat& value);

  /// sum alpha_ij(x) z^i t^j
  MPoly to_g() const;

  const std::map<std::pair<int, int>, MPoly>& entries() const { return entries_; }

  friend bool operator==(const AlphaMatrix&, const AlphaMatrix&) = default;

 private:
  void check_index(int i, int j) const;

  int d_;
  CurveExponents kl_;
  std::map<std::pair<int, int>, MPoly> entries_;
};

/// Equality certificate apply(aut, r0 + x g) == unit * (r0 + x g_norm) in R_d.
struct NormalFormCertificate {
  int d;
  CurveExponents kl;
  TruncAut aut;
  TruncElem unit;
  MPoly input_g;
  MPoly g_norm;
  AlphaMatrix alpha;
};

/// Reduces g level by level until every x-level of g is supported on span
/// monomials. Throws CertificateFailure if the final identity does not hold.
NormalFormCertificate normalize(int d, const CurveExponents& kl, const MPoly& g);

/// Re-verifies the certificate identity, the unit condition and the span
/// support of g_norm from scratch.
bool check_certificate(const NormalFormCertificate& cert);

/// lambda^lambda_exp * mu^mu_exp == value
struct PowerRelation {
  long lambda_exp;
  long mu_exp;
  Rat value;
};

struct IsoWitness {
  enum class Status { sat, unsat };

  Status status = Status::unsat;
  /// Rational (lambda, mu) when one exists.
  std::optional<std::pair<Rat, Rat>> explicit_solution;
  /// Triangular system describing every solution over (C*)^2 (when SAT).
  std::vector<PowerRelation> system;
  /// Number of free parameters of the solution set.
  int free_parameters = 0;
  /// Why the pair is not isomorphic (when UNSAT).
  std::string reason;

  bool sat() const { return status == Status::sat; }
  std::string describe() const;
};

/// Decides whether the normal forms A and B define isomorphic threefolds,
/// i.e. whether mu^(n+1) a_ijn = lambda^(li+kj-kl) b_ijn has a solution with
/// lambda, mu nonzero complex numbers.
IsoWitness iso_decide(const AlphaMatrix& A, const AlphaMatrix& B);

/// Confirms an explicit witness by transporting r0 + x g_A with the scaling
/// automorphism and testing membership in (x^d, r0 + x g_B).
bool iso_witness_check(const Rat& lambda, const Rat& mu, const AlphaMatrix& A, const AlphaMatrix& B);

}  // namespace krd
