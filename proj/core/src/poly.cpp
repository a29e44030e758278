#include "krd/poly.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "krd/error.hpp"

namespace krd {

char var_name(Var v) {
  static constexpr std::array<char, kNumVars> names{'x', 'z', 't', 'y', 's'};
  return names[static_cast<std::size_t>(v)];
}

std::optional<Var> var_from_char(char c) {
  switch (c) {
    case 'x':
      return Var::x;
    case 'z':
      return Var::z;
    case 't':
      return Var::t;
    case 'y':
      return Var::y;
    case 's':
      return Var::s;
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(Var v, unsigned exponent) { return Monomial{}.with(v, exponent); }

Monomial Monomial::zt(unsigned i, unsigned j) { return of(Var::z, i).with(Var::t, j); }

Monomial Monomial::with(Var v, unsigned exponent) const {
  Monomial m = *this;
  m.exp_[static_cast<std::size_t>(v)] = exponent;
  return m;
}

unsigned Monomial::degree() const { return std::accumulate(exp_.begin(), exp_.end(), 0u); }

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kNumVars; ++i) m.exp_[i] = exp_[i] + other.exp_[i];
  return m;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kNumVars; ++i) m.exp_[i] = exp_[i] - other.exp_[i];
  return m;
}

std::string Monomial::str(bool descending) const {
  std::string out;
  auto emit = [&](Var v) {
    unsigned e = (*this)[v];
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += var_name(v);
    if (e > 1) out += '^' + std::to_string(e);
  };
  if (descending) {
    for (auto it = kAllVars.rbegin(); it != kAllVars.rend(); ++it) emit(*it);
  } else {
    for (Var v : kAllVars) emit(v);
  }
  return out.empty() ? "1" : out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (auto it = kAllVars.rbegin(); it != kAllVars.rend(); ++it) {
    if (a[*it] != b[*it]) return a[*it] < b[*it];
  }
  return false;
}

// ---------------------------------------------------------------------------
// MPoly

MPoly::MPoly(const Rat& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

MPoly MPoly::term(const Rat& c, const Monomial& m) {
  MPoly p;
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

std::optional<Rat> MPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

Rat MPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::pair<Monomial, Rat> MPoly::leading_term() const {
  if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
  return *terms_.rbegin();
}

int MPoly::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree()); }

unsigned MPoly::degree_in(Var v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
  return d;
}

bool MPoly::uses(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const auto& kv) { return kv.first.uses(v); });
}

MPoly MPoly::coefficient_of(Var v, unsigned power) const {
  MPoly out;
  for (const auto& [m, c] : terms_)
    if (m[v] == power) out.terms_.emplace(m.without(v), c);
  return out;
}

Rat MPoly::evaluate(const std::map<Var, Rat>& point) const {
  Rat total;
  for (const auto& [m, c] : terms_) {
    Rat value = c;
    for (Var v : kAllVars) {
      unsigned e = m[v];
      if (e == 0) continue;
      auto it = point.find(v);
      if (it == point.end())
        throw InvalidArgument(std::string("evaluate: no value for variable ") + var_name(v));
      value *= it->second.pow(e);
    }
    total += value;
  }
  return total;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

void MPoly::add_term(const Monomial& m, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

MPoly operator-(const MPoly& a) {
  MPoly out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

std::string MPoly::str(bool descending_vars) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c.sign() < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    Rat mag = c.abs();
    if (m.is_one()) {
      out += mag.str();
    } else if (mag.is_one()) {
      out += m.str(descending_vars);
    } else {
      out += mag.str() + '*' + m.str(descending_vars);
    }
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free functions

MPoly x_pow(unsigned e) { return MPoly::term(Rat(1), Monomial::of(Var::x, e)); }

MPoly partial(const MPoly& p, Var v) {
  MPoly out;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m[v];
    if (e == 0) continue;
    out.add_term(m.with(v, e - 1), c * Rat(static_cast<long>(e)));
  }
  return out;
}

MPoly jac(const MPoly& f, const MPoly& g) {
  if (f.uses(Var::y) || g.uses(Var::y)) throw InvalidArgument("jac: arguments must not involve y");
  return partial(f, Var::z) * partial(g, Var::t) - partial(f, Var::t) * partial(g, Var::z);
}

MPoly substitute(const MPoly& p, const Substitution& images) {
  // Powers of each image are built lazily and shared across terms.
  std::array<std::vector<MPoly>, kNumVars> powers;
  std::array<const MPoly*, kNumVars> image{};
  for (Var v : kAllVars) {
    auto it = images.find(v);
    image[static_cast<std::size_t>(v)] = it == images.end() ? nullptr : &it->second;
  }
  auto power = [&](Var v, unsigned e) -> const MPoly& {
    auto idx = static_cast<std::size_t>(v);
    auto& cache = powers[idx];
    if (cache.empty()) cache.emplace_back(1);
    while (cache.size() <= e) cache.push_back(cache.back() * *image[idx]);
    return cache[e];
  };

  MPoly out;
  for (const auto& [m, c] : p.terms()) {
    MPoly term(c);
    for (Var v : kAllVars) {
      unsigned e = m[v];
      if (e == 0) continue;
      if (image[static_cast<std::size_t>(v)] == nullptr)
        throw InvalidArgument(std::string("substitute: no image for variable ") + var_name(v));
      term *= power(v, e);
    }
    out += term;
  }
  return out;
}

std::optional<MPoly> exact_divide(const MPoly& p, const MPoly& q) {
  if (q.is_zero()) throw InvalidArgument("exact_divide: division by the zero polynomial");
  const auto [lead_q, lead_c] = q.leading_term();
  MPoly remainder = p;
  MPoly quotient;
  while (!remainder.is_zero()) {
    auto [lead_r, lead_rc] = remainder.leading_term();
    if (!lead_q.divides(lead_r)) return std::nullopt;
    MPoly step = MPoly::term(lead_rc / lead_c, lead_r / lead_q);
    quotient += step;
    remainder -= step * q;
  }
  return quotient;
}

std::pair<MPoly, MPoly> divide_with_remainder(const MPoly& p, const MPoly& q) {
  if (q.is_zero()) throw InvalidArgument("divide_with_remainder: division by the zero polynomial");
  const auto [lead_q, lead_c] = q.leading_term();
  MPoly work = p;
  MPoly quotient, remainder;
  while (!work.is_zero()) {
    auto [lead_w, lead_wc] = work.leading_term();
    if (lead_q.divides(lead_w)) {
      MPoly step = MPoly::term(lead_wc / lead_c, lead_w / lead_q);
      quotient += step;
      work -= step * q;
    } else {
      remainder.add_term(lead_w, lead_wc);
      work.add_term(lead_w, -lead_wc);
    }
  }
  return {quotient, remainder};
}

MPoly integrate(const MPoly& p, Var v) {
  MPoly out;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m[v] + 1;
    out.add_term(m.with(v, e), c / Rat(static_cast<long>(e)));
  }
  return out;
}

}  // namespace krd
