#include "krd/threefold.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "krd/error.hpp"

namespace krd {

namespace {

bool only_uses(const MPoly& p, std::initializer_list<Var> allowed) {
  for (Var v : kAllVars)
    if (p.uses(v) && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) return false;
  return true;
}

// Recognizes r0 = z^k + t^l with admissible exponents.
std::optional<CurveExponents> detect_exponents(const MPoly& r0) {
  if (r0.size() != 2) return std::nullopt;
  int k = 0, l = 0;
  for (const auto& [m, c] : r0.terms()) {
    if (!c.is_one()) return std::nullopt;
    if (m == Monomial::of(Var::z, m[Var::z]) && m[Var::z] > 0)
      k = static_cast<int>(m[Var::z]);
    else if (m == Monomial::of(Var::t, m[Var::t]) && m[Var::t] > 0)
      l = static_cast<int>(m[Var::t]);
    else
      return std::nullopt;
  }
  if (k < 2 || l <= k || std::gcd(k, l) != 1) return std::nullopt;
  return CurveExponents(k, l);
}

}  // namespace

// ---------------------------------------------------------------------------
// ThreefoldPresentation

ThreefoldPresentation::ThreefoldPresentation(int d, MPoly r0, MPoly g) : d_(d), r0_(std::move(r0)), g_(std::move(g)) {
  if (d_ < 2) throw InvalidArgument("threefold: d must be at least 2");
  if (r0_.is_zero() || !only_uses(r0_, {Var::z, Var::t}))
    throw InvalidArgument("threefold: r0 must be a nonzero polynomial in z, t");
  if (!only_uses(g_, {Var::x, Var::z, Var::t})) throw InvalidArgument("threefold: g must be a polynomial in x, z, t");
  kl_ = detect_exponents(r0_);
}

ThreefoldPresentation ThreefoldPresentation::koras_russell(int d, const CurveExponents& kl, MPoly g) {
  return ThreefoldPresentation(d, kl.r0(), std::move(g));
}

ThreefoldPresentation& ThreefoldPresentation::with_factors(std::vector<MPoly> factors) {
  if (factors.empty()) throw InvalidArgument("threefold: empty factor list");
  MPoly product(1);
  for (const auto& f : factors) {
    if (!only_uses(f, {Var::z, Var::t})) throw InvalidArgument("threefold: factors must be polynomials in z, t");
    product *= f;
  }
  if (product != r0_) throw InvalidArgument("threefold: factors multiply to " + product.str() + ", not r0 = " + r0_.str());
  factors_ = std::move(factors);
  return *this;
}

MPoly ThreefoldPresentation::defining_polynomial() const {
  return x_pow(static_cast<unsigned>(d_)) * MPoly::var(Var::y) + center_generator();
}

MPoly ThreefoldPresentation::center_generator() const { return r0_ + MPoly::var(Var::x) * g_; }

// ---------------------------------------------------------------------------
// Points and orbits

bool lies_on(const Point& p, const ThreefoldPresentation& X) {
  return X.defining_polynomial().evaluate({{Var::x, p.x}, {Var::y, p.y}, {Var::z, p.z}, {Var::t, p.t}}).is_zero();
}

Point transport(const PolyMap& phi, const Point& p) {
  const std::map<Var, Rat> at{{Var::x, p.x}, {Var::y, p.y}, {Var::z, p.z}, {Var::t, p.t}};
  return {phi.x.evaluate(at), phi.y.evaluate(at), phi.z.evaluate(at), phi.t.evaluate(at)};
}

std::string to_string(OrbitLabel label) {
  switch (label) {
    case OrbitLabel::open_orbit:
      return "OpenOrbit";
    case OrbitLabel::cylinder_orbit:
      return "CylinderOrbit";
    case OrbitLabel::punctured_line:
      return "PuncturedLine";
    case OrbitLabel::fixed_point:
      return "FixedPoint";
  }
  return "?";
}

OrbitLabel orbit_classify(const Point& p, const ThreefoldPresentation& X) {
  if (!X.exponents() || X.g() != MPoly(1))
    throw InvalidArgument("orbit_classify: needs a Koras-Russell threefold (r0 = z^k + t^l, g = 1)");
  if (!lies_on(p, X)) throw InvalidArgument("orbit_classify: point is not on the threefold");
  if (!p.x.is_zero()) return OrbitLabel::open_orbit;
  if (!p.z.is_zero()) return OrbitLabel::cylinder_orbit;
  // x = z = 0 forces t = 0 on X.
  if (!p.y.is_zero()) return OrbitLabel::punctured_line;
  return OrbitLabel::fixed_point;
}

// ---------------------------------------------------------------------------
// Induced isomorphisms and lifts

InducedIso induced_iso(const TruncAut& phi, const ThreefoldPresentation& source, const ThreefoldPresentation& target) {
  const int d = source.d();
  if (target.d() != d || target.r0() != source.r0())
    throw InvalidArgument("induced_iso: source and target must share d and r0");
  if (phi.precision() != d) throw InvalidArgument("induced_iso: automorphism truncated at the wrong order");

  PolyMap map;
  map.x = MPoly::var(Var::x) * phi.mu();
  map.z = phi.z_image().to_poly();
  map.t = phi.t_image().to_poly();
  if (map.z.uses(Var::s) || map.t.uses(Var::s)) throw InvalidArgument("induced_iso: images must be free of s");

  const MPoly image = map.apply(source.center_generator());
  const MPoly target_center = target.center_generator();
  auto membership = ideal_membership(truncate(image, d), truncate(target_center, d));
  const auto* cof = std::get_if<MembershipCofactor>(&membership);
  if (cof == nullptr)
    throw InvalidArgument("induced_iso: phi(J_g) is not contained in J_f (membership fails at order " +
                          std::to_string(std::get<NotMember>(membership).order) + ")");

  const MPoly b = cof->b.to_poly();
  const MPoly xd = x_pow(static_cast<unsigned>(d));
  auto a = exact_divide(image - b * target_center, xd);
  if (!a) throw CertificateFailure("induced_iso: remainder not divisible by x^d");

  map.y = (b * MPoly::var(Var::y) - *a) * phi.mu().pow(-d);

  auto multiple = exact_divide(map.apply(source.defining_polynomial()), target.defining_polynomial());
  if (!multiple || *multiple != b) throw CertificateFailure("induced_iso: image of P_g is not b * P_f");
  return {std::move(map), std::move(*a), b};
}

namespace {

PolyMap lift_one(const PolyMap& phi, const ThreefoldPresentation& X) {
  const MPoly x = MPoly::var(Var::x), y = MPoly::var(Var::y);
  if (phi.x != x) throw NotInFiltration("lift_to_A4: map must fix x");
  for (const MPoly* img : {&phi.z, &phi.t})
    if (img->uses(Var::y) || img->uses(Var::s)) throw InvalidArgument("lift_to_A4: images must be in x, z, t");

  const MPoly xd = x_pow(static_cast<unsigned>(X.d()));
  if (!exact_divide(phi.z - MPoly::var(Var::z), xd) || !exact_divide(phi.t - MPoly::var(Var::t), xd))
    throw NotInFiltration("lift_to_A4: map is not congruent to the identity modulo x^" + std::to_string(X.d()));

  PolyMap base = phi;
  base.y = y;
  base.inverse.reset();
  const MPoly center = X.center_generator();
  auto quotient = exact_divide(base.apply(center) - center, xd);
  if (!quotient) throw NotInFiltration("lift_to_A4: phi(r0 + x g) - (r0 + x g) is not divisible by x^d");

  const MPoly P = X.defining_polynomial();
  for (long sigma : {1L, -1L}) {
    PolyMap lifted = base;
    lifted.y = y + *quotient * sigma;
    if (lifted.apply(P) == P) return lifted;
  }
  throw CertificateFailure("lift_to_A4: no sign makes the defining polynomial invariant");
}

}  // namespace

PolyMap lift_to_A4(const PolyMap& phi, const ThreefoldPresentation& X) {
  PolyMap lifted = lift_one(phi, X);
  if (phi.inverse) {
    // Both lifts fix P = x^d y + (r0 + x g), so once the composite fixes x, z, t
    // it fixes y as well; checking the plane part is enough.
    PolyMap plane = phi;
    plane.y = MPoly::var(Var::y);
    (*plane.inverse)[1] = MPoly::var(Var::y);
    if (!plane.inverse_checks()) throw InvalidArgument("lift_to_A4: attached inverse does not invert the map");
    const PolyMap back = lift_one(phi.inverse_map(), X);
    lifted.inverse = std::array<MPoly, 4>{back.x, back.y, back.z, back.t};
  }
  return lifted;
}

// ---------------------------------------------------------------------------
// Extension obstruction

std::string to_string(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::constant:
      return "Constant";
    case ObstructionKind::locally_constant_non_constant:
      return "LocallyConstantNonConstant";
    case ObstructionKind::not_locally_constant:
      return "NotLocallyConstant";
  }
  return "?";
}

std::optional<std::pair<Rat, Rat>> find_rational_point(const MPoly& p, long bound) {
  // Rationals grouped by height max(|num|, den), smallest first.
  std::vector<std::vector<Rat>> by_height(static_cast<std::size_t>(bound + 1));
  by_height[0].emplace_back(0);
  for (long den = 1; den <= bound; ++den)
    for (long num = 1; num <= bound; ++num) {
      if (std::gcd(num, den) != 1) continue;
      auto h = static_cast<std::size_t>(std::max(num, den));
      by_height[h].emplace_back(num, den);
      by_height[h].emplace_back(-num, den);
    }

  std::vector<Rat> seen;
  for (const auto& level : by_height) {
    const std::size_t old_size = seen.size();
    seen.insert(seen.end(), level.begin(), level.end());
    // Pairs with at least one coordinate of the current height.
    for (std::size_t i = 0; i < seen.size(); ++i)
      for (std::size_t j = 0; j < seen.size(); ++j) {
        if (i < old_size && j < old_size) continue;
        if (p.evaluate({{Var::z, seen[i]}, {Var::t, seen[j]}}).is_zero()) return std::pair{seen[i], seen[j]};
      }
  }
  return std::nullopt;
}

ObstructionReport extension_obstruction(const MPoly& h, std::span<const MPoly> factors) {
  if (factors.empty()) throw InvalidArgument("extension_obstruction: empty factor list");
  if (!only_uses(h, {Var::z, Var::t})) throw InvalidArgument("extension_obstruction: h must be a polynomial in z, t");

  ObstructionReport report{ObstructionKind::constant, {}};
  for (const MPoly& p : factors) {
    if (p.is_constant() || !only_uses(p, {Var::z, Var::t}))
      throw InvalidArgument("extension_obstruction: factors must be nonconstant polynomials in z, t");
    auto point = find_rational_point(p);
    if (!point) throw NoRationalPoint("no rational point of height <= 20 on " + p.str() + " = 0");
    const Rat c = h.evaluate({{Var::z, point->first}, {Var::t, point->second}});
    if (exact_divide(h - MPoly(c), p))
      report.residues.emplace_back(c);
    else
      report.residues.emplace_back(std::nullopt);
  }

  const bool all_constant = std::all_of(report.residues.begin(), report.residues.end(), [](const auto& r) { return r.has_value(); });
  if (!all_constant) {
    report.kind = ObstructionKind::not_locally_constant;
  } else {
    const bool agree = std::all_of(report.residues.begin(), report.residues.end(),
                                   [&](const auto& r) { return *r == *report.residues.front(); });
    report.kind = agree ? ObstructionKind::constant : ObstructionKind::locally_constant_non_constant;
  }
  return report;
}

// ---------------------------------------------------------------------------

DisconnectedCurveExample build_nonextendible_example() {
  const MPoly z = MPoly::var(Var::z), t = MPoly::var(Var::t);
  const MPoly component = z * t.pow(2) + MPoly(1);
  ThreefoldPresentation X(2, z * component, MPoly());
  X.with_factors({z, component});

  const MPoly h = z * t.pow(2);
  TruncAut aut = exp_aut({1, h}, 2);
  const TruncElem r0 = truncate(X.r0(), 2);
  auto result = ideal_membership(apply(aut, r0), r0);
  auto* cof = std::get_if<MembershipCofactor>(&result);
  if (cof == nullptr) throw CertificateFailure("example automorphism does not preserve (x^2, r0)");
  return {std::move(X), h, std::move(aut), std::move(*cof)};
}

}  // namespace krd
