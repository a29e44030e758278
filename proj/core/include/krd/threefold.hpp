#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krd/automorphism.hpp"

namespace krd {

/// The hypersurface x^d y + r0(z,t) + x g(x,z,t) = 0 in A^4.
class ThreefoldPresentation {
 public:
  ThreefoldPresentation(int d, MPoly r0, MPoly g);

  /// r0 = z^k + t^l.
  static ThreefoldPresentation koras_russell(int d, const CurveExponents& kl, MPoly g = MPoly(1));

  /// Attaches a factorization of r0; throws InvalidArgument unless the
  /// factors multiply to r0.
  ThreefoldPresentation& with_factors(std::vector<MPoly> factors);

  int d() const { return d_; }
  const MPoly& r0() const { return r0_; }
  const MPoly& g() const { return g_; }
  const std::optional<CurveExponents>& exponents() const { return kl_; }
  const std::vector<MPoly>& factors() const { return factors_; }

  /// P = x^d y + r0 + x g
  MPoly defining_polynomial() const;
  /// r0 + x g, the second generator of J_g = (x^d, r0 + x g).
  MPoly center_generator() const;

 private:
  int d_;
  MPoly r0_;
  MPoly g_;
  std::optional<CurveExponents> kl_;
  std::vector<MPoly> factors_;
};

struct Point {
  Rat x, y, z, t;
  friend bool operator==(const Point&, const Point&) = default;
};

bool lies_on(const Point& p, const ThreefoldPresentation& X);

/// Evaluates the generator images of a polynomial map at a point.
Point transport(const PolyMap& phi, const Point& p);

enum class OrbitLabel { open_orbit, cylinder_orbit, punctured_line, fixed_point };

std::string to_string(OrbitLabel label);

/// Orbit of the automorphism group containing p, for X_{d,k,l} (g = 1,
/// r0 = z^k + t^l). Throws InvalidArgument if p is not on X.
OrbitLabel orbit_classify(const Point& p, const ThreefoldPresentation& X);

/// Coordinate-ring map A(g) -> A(f) induced by phi, together with the
/// cofactors of phi(r0 + x g) = a x^d + b (r0 + x f).
struct InducedIso {
  PolyMap map;
  MPoly a;
  MPoly b;
};

/// Builds the induced map. phi's images are used through their x-degree < d
/// representatives; y goes to mu^-d (b y - a). Throws InvalidArgument when
/// phi(J_g) is not inside J_f, and CertificateFailure if the image of P_g is
/// not a multiple of P_f.
InducedIso induced_iso(const TruncAut& phi, const ThreefoldPresentation& source, const ThreefoldPresentation& target);

/// Extends phi (fixing x, congruent to the identity mod x^d) to A^4 by
/// y -> y + sigma (phi(r0 + x g) - r0 - x g) / x^d, with the sign sigma chosen
/// so that the defining polynomial is invariant. When phi carries an inverse
/// the lift of the inverse is attached too. Throws NotInFiltration.
PolyMap lift_to_A4(const PolyMap& phi, const ThreefoldPresentation& X);

enum class ObstructionKind { constant, locally_constant_non_constant, not_locally_constant };

std::string to_string(ObstructionKind kind);

struct ObstructionReport {
  ObstructionKind kind;
  /// Constant value of h on each factor's zero set, when there is one.
  std::vector<std::optional<Rat>> residues;
};

/// Tests whether h restricted to each component {p = 0} of C0 is constant.
/// Throws NoRationalPoint when no rational point on some factor is found in
/// the search box (numerators and denominators bounded by 20).
ObstructionReport extension_obstruction(const MPoly& h, std::span<const MPoly> factors);

/// Rational point on {p = 0} with coordinates of height <= bound, if any.
std::optional<std::pair<Rat, Rat>> find_rational_point(const MPoly& p, long bound = 20);

/// The automorphism exp(x Jac(z t^2, .)) of R_2 on x^2 y + z(z t^2 + 1) = 0,
/// and the cofactor 1 - 2 x t certifying that it preserves (x^2, r0).
struct DisconnectedCurveExample {
  ThreefoldPresentation presentation;
  MPoly hamiltonian;
  TruncAut aut;
  MembershipCofactor cofactor;
};

DisconnectedCurveExample build_nonextendible_example();

}  // namespace krd
