#include "krd/trunc.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "krd/error.hpp"

namespace krd {

namespace {

void require_coefficient(const MPoly& c) {
  if (c.uses(Var::x) || c.uses(Var::y))
    throw InvalidArgument("truncated-ring coefficients must be free of x and y: " + c.str());
}

void require_same_precision(const TruncElem& a, const TruncElem& b, const char* op) {
  if (a.precision() != b.precision())
    throw InvalidArgument(std::string(op) + ": truncation orders differ (" + std::to_string(a.precision()) +
                          " vs " + std::to_string(b.precision()) + ")");
}

TruncElem truncate_impl(const MPoly& p, int d) {
  if (d < 1) throw InvalidArgument("truncation order must be at least 1");
  std::vector<MPoly> coeffs(static_cast<std::size_t>(d));
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m[Var::x];
    if (e < static_cast<unsigned>(d)) coeffs[e].add_term(m.without(Var::x), c);
  }
  return TruncElem(d, std::move(coeffs));
}

}  // namespace

TruncElem::TruncElem(int d) {
  if (d < 1) throw InvalidArgument("truncation order must be at least 1");
  coeffs_.resize(static_cast<std::size_t>(d));
}

TruncElem::TruncElem(int d, std::vector<MPoly> coeffs) : coeffs_(std::move(coeffs)) {
  if (d < 1) throw InvalidArgument("truncation order must be at least 1");
  if (coeffs_.size() != static_cast<std::size_t>(d))
    throw InvalidArgument("TruncElem needs exactly d coefficients");
  for (const auto& c : coeffs_) require_coefficient(c);
}

TruncElem TruncElem::constant(const Rat& c, int d) {
  TruncElem e(d);
  e.coeffs_[0] = MPoly(c);
  return e;
}

bool TruncElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const MPoly& c) { return c.is_zero(); });
}

std::optional<int> TruncElem::valuation() const {
  for (std::size_t m = 0; m < coeffs_.size(); ++m)
    if (!coeffs_[m].is_zero()) return static_cast<int>(m);
  return std::nullopt;
}

MPoly TruncElem::to_poly() const {
  MPoly out;
  for (std::size_t m = 0; m < coeffs_.size(); ++m)
    for (const auto& [mono, c] : coeffs_[m].terms()) out.add_term(mono.with(Var::x, static_cast<unsigned>(m)), c);
  return out;
}

TruncElem TruncElem::shifted(int m) const {
  if (m < 0) throw InvalidArgument("shift by a negative power");
  TruncElem out(precision());
  for (int i = 0; i + m < precision(); ++i) out.coeffs_[static_cast<std::size_t>(i + m)] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

TruncElem TruncElem::stripped(int m) const {
  if (m < 0 || m >= precision()) throw InvalidArgument("strip count out of range");
  for (int i = 0; i < m; ++i)
    if (!coeffs_[static_cast<std::size_t>(i)].is_zero()) throw InvalidArgument("stripped: element not divisible by x^m");
  return TruncElem(precision() - m, std::vector<MPoly>(coeffs_.begin() + m, coeffs_.end()));
}

TruncElem TruncElem::scaled(const MPoly& c) const {
  require_coefficient(c);
  TruncElem out = *this;
  for (auto& v : out.coeffs_) v = v * c;
  return out;
}

TruncElem& TruncElem::operator+=(const TruncElem& o) {
  require_same_precision(*this, o, "add");
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] += o.coeffs_[m];
  return *this;
}

TruncElem& TruncElem::operator-=(const TruncElem& o) {
  require_same_precision(*this, o, "subtract");
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] -= o.coeffs_[m];
  return *this;
}

TruncElem operator*(const TruncElem& a, const TruncElem& b) {
  require_same_precision(a, b, "multiply");
  const auto d = a.coeffs_.size();
  TruncElem out(a.precision());
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < d; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

TruncElem truncate(const MPoly& p, int d) {
  if (p.uses(Var::y) || p.uses(Var::s)) throw InvalidArgument("truncate: polynomial must be free of y and s");
  return truncate_impl(p, d);
}

TruncElem truncate_with_parameter(const MPoly& p, int d) {
  if (p.uses(Var::y)) throw InvalidArgument("truncate: polynomial must be free of y");
  return truncate_impl(p, d);
}

TruncElem unit_inverse(const TruncElem& u) {
  auto lead = u.coeff(0).constant_value();
  if (!lead || lead->is_zero())
    throw NotAUnit("unit_inverse: x^0 coefficient is not a nonzero constant: " + u.coeff(0).str());
  const int d = u.precision();
  const Rat inv0 = lead->inverse();
  std::vector<MPoly> v(static_cast<std::size_t>(d));
  v[0] = MPoly(inv0);
  // v_m = -u_0^{-1} * sum_{i=1..m} u_i v_{m-i}
  for (int m = 1; m < d; ++m) {
    MPoly acc;
    for (int i = 1; i <= m; ++i) acc += u.coeff(i) * v[static_cast<std::size_t>(m - i)];
    v[static_cast<std::size_t>(m)] = acc * (-inv0);
  }
  return TruncElem(d, std::move(v));
}

MembershipResult ideal_membership(const TruncElem& target, const TruncElem& generator) {
  require_same_precision(target, generator, "ideal_membership");
  const MPoly& g0 = generator.coeff(0);
  if (g0.is_zero()) throw InvalidArgument("ideal_membership: generator has zero x^0 coefficient");

  const int d = target.precision();
  TruncElem residual = target;
  std::vector<MPoly> cofactor(static_cast<std::size_t>(d));
  for (int m = 0; m < d; ++m) {
    const MPoly& tm = residual.coeff(m);
    if (tm.is_zero()) continue;
    auto q = exact_divide(tm, g0);
    if (!q) return NotMember{m};
    residual -= generator.scaled(*q).shifted(m);
    cofactor[static_cast<std::size_t>(m)] = std::move(*q);
  }
  return MembershipCofactor{TruncElem(d, std::move(cofactor))};
}

MembershipResult membership_with_parameter(const TruncElem& target, const TruncElem& generator) {
  for (const auto& c : generator.coeffs())
    if (c.uses(Var::s)) throw InvalidArgument("membership_with_parameter: generator must be free of s");
  // Division in Q[s][z,t] by an s-free divisor is division in Q[s,z,t].
  return ideal_membership(target, generator);
}

}  // namespace krd
