#include "oracles.hpp"

#include <map>
#include <vector>

namespace krd::testing {

MPoly naive_jacobian(const MPoly& f, const MPoly& g) {
  MPoly out;
  for (const auto& [a, ca] : f.terms())
    for (const auto& [b, cb] : g.terms()) {
      const long az = a[Var::z], at = a[Var::t], bz = b[Var::z], bt = b[Var::t];
      const long w = az * bt - at * bz;
      if (w == 0) continue;
      // w != 0 forces az + bz >= 1 and at + bt >= 1.
      Monomial m = a * b;
      m = m.with(Var::z, m[Var::z] - 1).with(Var::t, m[Var::t] - 1);
      out.add_term(m, ca * cb * Rat(w));
    }
  return out;
}

MPoly mod_x(const MPoly& p, int d) {
  MPoly out;
  for (const auto& [m, c] : p.terms())
    if (static_cast<int>(m[Var::x]) < d) out.add_term(m, c);
  return out;
}

std::pair<MPoly, MPoly> exp_series_d3(const MPoly& h, int nu) {
  auto series = [&](Var v) {
    const MPoly first = naive_jacobian(h, MPoly::var(v));
    const MPoly second = naive_jacobian(h, first);
    MPoly out = MPoly::var(v) + x_pow(static_cast<unsigned>(nu)) * first +
                x_pow(static_cast<unsigned>(2 * nu)) * second * Rat(1, 2);
    return mod_x(out, 3);
  };
  return {series(Var::z), series(Var::t)};
}

namespace {

struct Key {
  int level;
  Monomial m;
  bool operator<(const Key& o) const {
    if (level != o.level) return level < o.level;
    return GrlexLess{}(m, o.m);
  }
};

}  // namespace

std::optional<TruncElem> brute_force_cofactor(const TruncElem& target, const TruncElem& generator, int degree_bound) {
  const int d = target.precision();
  std::vector<Key> unknowns;
  for (int m = 0; m < d; ++m)
    for (int deg = 0; deg <= degree_bound; ++deg)
      for (int i = 0; i <= deg; ++i) unknowns.push_back({m, Monomial::zt(static_cast<unsigned>(i), static_cast<unsigned>(deg - i))});

  // Column u contributes unknown_u * generator to each equation (level, monomial).
  std::map<Key, std::map<std::size_t, Rat>> rows;
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (int gl = 0; gl + unknowns[u].level < d; ++gl)
      for (const auto& [gm, gc] : generator.coeff(gl).terms()) rows[{unknowns[u].level + gl, unknowns[u].m * gm}][u] += gc;
  for (int m = 0; m < d; ++m)
    for (const auto& [tm, tc] : target.coeff(m).terms()) rows[{m, tm}];

  // Dense augmented matrix.
  const std::size_t n = unknowns.size();
  std::vector<std::vector<Rat>> a;
  for (const auto& [key, row] : rows) {
    std::vector<Rat> line(n + 1);
    for (const auto& [u, c] : row) line[u] = c;
    line[n] = target.coeff(key.level).coeff(key.m);
    a.push_back(std::move(line));
  }

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rat inv = a[r][c].inverse();
    for (auto& v : a[r]) v *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < a.size(); ++i)
    if (!a[i][n].is_zero()) return std::nullopt;

  std::vector<MPoly> coeffs(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    const Key& k = unknowns[pivot_col[i]];
    coeffs[static_cast<std::size_t>(k.level)].add_term(k.m, a[i][n]);
  }
  return TruncElem(d, std::move(coeffs));
}

}  // namespace krd::testing
