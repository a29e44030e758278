#pragma once

#include <array>
#include <optional>
#include <variant>

#include "krd/jacobian.hpp"
#include "krd/trunc.hpp"

namespace krd {

/// The Q[x]-derivation x^nu * Jac(hamiltonian, .). The Hamiltonian may carry
/// x (treated as a constant) and the group parameter s.
struct Derivation {
  int nu = 1;
  MPoly hamiltonian;
};

/// Automorphism of R_d fixing the ideal (x): x -> mu*x, z -> z_image, t -> t_image.
class TruncAut {
 public:
  TruncAut(Rat mu, TruncElem z_image, TruncElem t_image);

  static TruncAut identity(int d);

  int precision() const { return z_.precision(); }
  const Rat& mu() const { return mu_; }
  const TruncElem& z_image() const { return z_; }
  const TruncElem& t_image() const { return t_; }

  friend bool operator==(const TruncAut&, const TruncAut&) = default;

 private:
  Rat mu_;
  TruncElem z_;
  TruncElem t_;
};

/// exp(x^nu Jac(h, .)) truncated at d. The series is finite since the m-th
/// term carries x^(nu*m).
TruncAut exp_aut(const Derivation& D, int d);

/// Applies phi as a ring homomorphism of R_d.
TruncElem apply(const TruncAut& phi, const TruncElem& p);

/// outer o inner, i.e. p -> outer(inner(p)).
TruncAut compose(const TruncAut& outer, const TruncAut& inner);

/// Inverse automorphism. The reduction of phi modulo x must be an affine
/// map of the (z,t)-plane; the remainder is inverted by the nilpotent series
/// sum_n (id - eps)^n.
TruncAut invert(const TruncAut& phi);

/// x -> mu x, z -> lambda^(-l) z, t -> lambda^(-k) t.
TruncAut scaling_aut(const Rat& lambda, const Rat& mu, const CurveExponents& kl, int d);

/// Largest n <= d with phi == id mod x^n (and mu == 1); nullopt when phi is
/// not in A_1.
std::optional<int> filtration_level(const TruncAut& phi);

/// h with the level-n increments of phi equal to (Jac(h, z), Jac(h, t)) =
/// (-h_t, h_z), normalized by h(0,0) = 0. `level` defaults to the filtration
/// level of phi; the identity yields 0. Throws NonHamiltonianIncrement when
/// the increment is not closed.
MPoly extract_hamiltonian(const TruncAut& phi);
MPoly extract_hamiltonian(const TruncAut& phi, int level);

struct Preserves {
  MembershipCofactor cofactor;
};
struct FailsAtOrder {
  int order;
};
using GaVerdict = std::variant<Preserves, FailsAtOrder>;

/// Checks that exp(s*D) maps r0 + x*g into (x^d, r0 + x*g) identically in s.
GaVerdict verify_ga_action(const Derivation& D, int d, const MPoly& r0, const MPoly& g);
GaVerdict verify_ga_action(const Derivation& D, int d, const CurveExponents& kl, const MPoly& g);

/// Polynomial endomorphism of Q[x,y,z,t] given by generator images, with
/// optional inverse images.
struct PolyMap {
  MPoly x = MPoly::var(Var::x);
  MPoly y = MPoly::var(Var::y);
  MPoly z = MPoly::var(Var::z);
  MPoly t = MPoly::var(Var::t);
  std::optional<std::array<MPoly, 4>> inverse;

  static PolyMap identity() { return {}; }

  Substitution as_substitution() const;
  MPoly apply(const MPoly& p) const;
  /// The inverse as a map (no inverse of its own); requires `inverse`.
  PolyMap inverse_map() const;
  /// True when no inverse is attached, or when it composes to the identity both ways.
  bool inverse_checks() const;
  bool is_identity() const;
};

/// outer o inner on generator images. The result carries an inverse when both inputs do.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

}  // namespace krd
