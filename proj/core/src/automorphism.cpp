#include "krd/automorphism.hpp"

#include <string>
#include <utility>
#include <vector>

#include "krd/error.hpp"

namespace krd {

namespace {

class PowerCache {
 public:
  explicit PowerCache(const TruncElem& base) : base_(base) { powers_.push_back(TruncElem::one(base.precision())); }

  const TruncElem& get(unsigned e) {
    while (powers_.size() <= e) powers_.push_back(powers_.back() * base_);
    return powers_[e];
  }

 private:
  const TruncElem& base_;
  std::vector<TruncElem> powers_;
};

void require_same_precision(int a, int b, const char* op) {
  if (a != b)
    throw InvalidArgument(std::string(op) + ": truncation orders differ (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
}

// Affine part of a z,t-polynomial: coefficients of z, t and the constant.
struct AffineRow {
  Rat cz, ct, c0;
};

std::optional<AffineRow> affine_row(const MPoly& p) {
  AffineRow row;
  for (const auto& [m, c] : p.terms()) {
    if (m.uses(Var::s) || m.degree() > 1) return std::nullopt;
    if (m.is_one())
      row.c0 = c;
    else if (m.uses(Var::z))
      row.cz = c;
    else if (m.uses(Var::t))
      row.ct = c;
    else
      return std::nullopt;
  }
  return row;
}

}  // namespace

TruncAut::TruncAut(Rat mu, TruncElem z_image, TruncElem t_image)
    : mu_(std::move(mu)), z_(std::move(z_image)), t_(std::move(t_image)) {
  if (mu_.is_zero()) throw InvalidArgument("TruncAut: mu must be nonzero");
  require_same_precision(z_.precision(), t_.precision(), "TruncAut");
}

TruncAut TruncAut::identity(int d) {
  return TruncAut(Rat(1), truncate(MPoly::var(Var::z), d), truncate(MPoly::var(Var::t), d));
}

TruncAut exp_aut(const Derivation& D, int d) {
  if (D.nu < 1) throw InvalidArgument("exp_aut: nu must be at least 1");
  if (D.hamiltonian.uses(Var::y)) throw InvalidArgument("exp_aut: Hamiltonian must be free of y");
  auto series = [&](Var v) {
    MPoly term = MPoly::var(v);
    MPoly sum = term;
    for (long m = 1; D.nu * m < d; ++m) {
      term = jac(D.hamiltonian, term) * Rat(1, m);
      if (term.is_zero()) break;
      sum += term * x_pow(static_cast<unsigned>(D.nu * m));
    }
    return truncate_with_parameter(sum, d);
  };
  return TruncAut(Rat(1), series(Var::z), series(Var::t));
}

TruncElem apply(const TruncAut& phi, const TruncElem& p) {
  require_same_precision(phi.precision(), p.precision(), "apply");
  const int d = p.precision();
  PowerCache zpow(phi.z_image());
  PowerCache tpow(phi.t_image());
  TruncElem out(d);
  Rat mu_power(1);
  for (int m = 0; m < d; ++m, mu_power *= phi.mu()) {
    const MPoly& level = p.coeff(m);
    if (level.is_zero()) continue;
    TruncElem image(d);
    for (const auto& [mono, c] : level.terms()) {
      MPoly scalar = MPoly::term(c, Monomial::of(Var::s, mono[Var::s]));
      image += (zpow.get(mono[Var::z]) * tpow.get(mono[Var::t])).scaled(scalar);
    }
    out += image.shifted(m) * mu_power;
  }
  return out;
}

TruncAut compose(const TruncAut& outer, const TruncAut& inner) {
  require_same_precision(outer.precision(), inner.precision(), "compose");
  return TruncAut(outer.mu() * inner.mu(), apply(outer, inner.z_image()), apply(outer, inner.t_image()));
}

TruncAut invert(const TruncAut& phi) {
  const int d = phi.precision();
  auto rz = affine_row(phi.z_image().coeff(0));
  auto rt = affine_row(phi.t_image().coeff(0));
  if (!rz || !rt) throw InvalidArgument("invert: reduction modulo x is not an affine map of the plane");
  const Rat det = rz->cz * rt->ct - rz->ct * rt->cz;
  if (det.is_zero()) throw InvalidArgument("invert: reduction modulo x is not invertible");

  // psi0 = inverse of the affine reduction: B = M^-1, offset e = -B c.
  const Rat b00 = rt->ct / det, b01 = -rz->ct / det;
  const Rat b10 = -rt->cz / det, b11 = rz->cz / det;
  const Rat e0 = -(b00 * rz->c0 + b01 * rt->c0);
  const Rat e1 = -(b10 * rz->c0 + b11 * rt->c0);
  const MPoly z = MPoly::var(Var::z), t = MPoly::var(Var::t);
  const TruncAut psi0(phi.mu().inverse(), truncate(b00 * z + b01 * t + MPoly(e0), d),
                      truncate(b10 * z + b11 * t + MPoly(e1), d));

  // eps = phi o psi0 is congruent to the identity mod x; id - eps raises the
  // x-adic order, so eps^-1 = sum_{n<d} (id - eps)^n.
  const TruncAut eps = compose(phi, psi0);
  auto inverse_image = [&](Var v) {
    TruncElem step = truncate(MPoly::var(v), d);
    TruncElem sum = step;
    for (int n = 1; n < d; ++n) {
      step = step - apply(eps, step);
      if (step.is_zero()) break;
      sum += step;
    }
    return sum;
  };
  const TruncAut eps_inverse(Rat(1), inverse_image(Var::z), inverse_image(Var::t));
  return compose(psi0, eps_inverse);
}

TruncAut scaling_aut(const Rat& lambda, const Rat& mu, const CurveExponents& kl, int d) {
  if (lambda.is_zero() || mu.is_zero()) throw InvalidArgument("scaling_aut: scalars must be nonzero");
  return TruncAut(mu, truncate(MPoly::var(Var::z) * lambda.pow(-kl.l()), d),
                  truncate(MPoly::var(Var::t) * lambda.pow(-kl.k()), d));
}

std::optional<int> filtration_level(const TruncAut& phi) {
  if (!phi.mu().is_one()) return std::nullopt;
  const int d = phi.precision();
  const TruncElem dz = phi.z_image() - truncate(MPoly::var(Var::z), d);
  const TruncElem dt = phi.t_image() - truncate(MPoly::var(Var::t), d);
  int level = d;
  if (auto v = dz.valuation()) level = std::min(level, *v);
  if (auto v = dt.valuation()) level = std::min(level, *v);
  if (level == 0) return std::nullopt;
  return level;
}

MPoly extract_hamiltonian(const TruncAut& phi) {
  auto level = filtration_level(phi);
  if (!level) throw InvalidArgument("extract_hamiltonian: automorphism is not in A_1");
  if (*level >= phi.precision()) return MPoly();
  return extract_hamiltonian(phi, *level);
}

MPoly extract_hamiltonian(const TruncAut& phi, int level) {
  auto actual = filtration_level(phi);
  if (!actual || *actual < level || level < 1 || level >= phi.precision())
    throw InvalidArgument("extract_hamiltonian: automorphism is not congruent to the identity mod x^" +
                          std::to_string(level));
  const MPoly& dz = phi.z_image().coeff(level);
  const MPoly& dt = phi.t_image().coeff(level);
  if (partial(dz, Var::z) + partial(dt, Var::t) != MPoly())
    throw NonHamiltonianIncrement("level-" + std::to_string(level) + " increment (" + dz.str() + ", " + dt.str() +
                                  ") is not divergence free");

  // h_z = dt, then fix the t-only part from -h_t = dz.
  MPoly h = integrate(dt, Var::z);
  MPoly rest = -dz - partial(h, Var::t);
  if (rest.uses(Var::z)) throw NonHamiltonianIncrement("increment does not integrate to a Hamiltonian");
  h += integrate(rest, Var::t);

  MPoly normalized;
  for (const auto& [m, c] : h.terms())
    if (m.uses(Var::z) || m.uses(Var::t)) normalized.add_term(m, c);

  if (-partial(normalized, Var::t) != dz || partial(normalized, Var::z) != dt)
    throw CertificateFailure("extract_hamiltonian: reconstructed gradient does not match increment");
  return normalized;
}

GaVerdict verify_ga_action(const Derivation& D, int d, const MPoly& r0, const MPoly& g) {
  if (D.hamiltonian.uses(Var::s)) throw InvalidArgument("verify_ga_action: s is reserved for the group parameter");
  const TruncAut flow = exp_aut({D.nu, D.hamiltonian * MPoly::var(Var::s)}, d);
  const TruncElem generator = truncate(r0 + MPoly::var(Var::x) * g, d);
  auto result = membership_with_parameter(apply(flow, generator), generator);
  if (auto* cof = std::get_if<MembershipCofactor>(&result)) return Preserves{std::move(*cof)};
  return FailsAtOrder{std::get<NotMember>(result).order};
}

GaVerdict verify_ga_action(const Derivation& D, int d, const CurveExponents& kl, const MPoly& g) {
  return verify_ga_action(D, d, kl.r0(), g);
}

// ---------------------------------------------------------------------------
// PolyMap

Substitution PolyMap::as_substitution() const {
  return {{Var::x, x}, {Var::y, y}, {Var::z, z}, {Var::t, t}};
}

MPoly PolyMap::apply(const MPoly& p) const { return substitute(p, as_substitution()); }

PolyMap PolyMap::inverse_map() const {
  if (!inverse) throw InvalidArgument("PolyMap has no inverse attached");
  PolyMap inv;
  inv.x = (*inverse)[0];
  inv.y = (*inverse)[1];
  inv.z = (*inverse)[2];
  inv.t = (*inverse)[3];
  return inv;
}

bool PolyMap::inverse_checks() const {
  if (!inverse) return true;
  PolyMap forward = *this;
  forward.inverse.reset();
  const PolyMap backward = inverse_map();
  return compose(forward, backward).is_identity() && compose(backward, forward).is_identity();
}

bool PolyMap::is_identity() const {
  return x == MPoly::var(Var::x) && y == MPoly::var(Var::y) && z == MPoly::var(Var::z) && t == MPoly::var(Var::t);
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  PolyMap out;
  out.x = outer.apply(inner.x);
  out.y = outer.apply(inner.y);
  out.z = outer.apply(inner.z);
  out.t = outer.apply(inner.t);
  if (outer.inverse && inner.inverse) {
    // (outer o inner)^-1 = inner^-1 o outer^-1
    const PolyMap inv = compose(inner.inverse_map(), outer.inverse_map());
    out.inverse = std::array<MPoly, 4>{inv.x, inv.y, inv.z, inv.t};
  }
  return out;
}

}  // namespace krd
