#include "krd/classify.hpp"

#include <cstdlib>
#include <sstream>
#include <tuple>

#include "krd/error.hpp"

namespace krd {

// ---------------------------------------------------------------------------
// AlphaMatrix

AlphaMatrix::AlphaMatrix(int d, CurveExponents kl) : d_(d), kl_(kl) {
  if (d < 2) throw InvalidArgument("AlphaMatrix: d must be at least 2");
  for (int i = 0; i <= kl_.k() - 2; ++i)
    for (int j = 0; j <= kl_.l() - 2; ++j) entries_.emplace(std::pair{i, j}, MPoly());
}

AlphaMatrix AlphaMatrix::from_normal_g(const MPoly& g_norm, int d, const CurveExponents& kl) {
  AlphaMatrix A(d, kl);
  for (const auto& [m, c] : g_norm.terms()) {
    if (m.uses(Var::y) || m.uses(Var::s)) throw InvalidArgument("from_normal_g: g must involve only x, z, t");
    if (!kl.in_span(m.without(Var::x)))
      throw InvalidArgument("from_normal_g: monomial " + m.str() + " is outside the normal-form span");
    if (static_cast<int>(m[Var::x]) > d - 2) continue;
    auto& entry = A.entries_.at({static_cast<int>(m[Var::z]), static_cast<int>(m[Var::t])});
    entry.add_term(Monomial::of(Var::x, m[Var::x]), c);
  }
  return A;
}

void AlphaMatrix::check_index(int i, int j) const {
  if (i < 0 || j < 0 || i > kl_.k() - 2 || j > kl_.l() - 2)
    throw InvalidArgument("AlphaMatrix: index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
}

const MPoly& AlphaMatrix::entry(int i, int j) const {
  check_index(i, j);
  return entries_.at({i, j});
}

void AlphaMatrix::set_entry(int i, int j, const MPoly& alpha) {
  check_index(i, j);
  for (const auto& [m, c] : alpha.terms())
    if (m.degree() != m[Var::x] || static_cast<int>(m[Var::x]) > d_ - 2)
      throw InvalidArgument("AlphaMatrix: entries are polynomials in x of degree <= d-2");
  entries_.at({i, j}) = alpha;
}

Rat AlphaMatrix::coeff(int i, int j, int n) const {
  return entry(i, j).coeff(Monomial::of(Var::x, static_cast<unsigned>(n)));
}

void AlphaMatrix::set_coeff(int i, int j, int n, const Rat& value) {
  if (n < 0 || n > d_ - 2) throw InvalidArgument("AlphaMatrix: x-degree out of range");
  check_index(i, j);
  if (n < 0 || n > d_ - 2) throw InvalidArgument("AlphaMatrix: x-degree " + std::to_string(n) + " exceeds d-2");
  MPoly& e = entries_.at({i, j});
  const Monomial m = Monomial::of(Var::x, static_cast<unsigned>(n));
  e.add_term(m, value - e.coeff(m));
}

MPoly AlphaMatrix::to_g() const {
  MPoly g;
  for (const auto& [ij, alpha] : entries_)
    g += alpha * MPoly::term(1, Monomial::zt(static_cast<unsigned>(ij.first), static_cast<unsigned>(ij.second)));
  return g;
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

TruncElem center(const CurveExponents& kl, const MPoly& g, int d) {
  return truncate(kl.r0() + MPoly::var(Var::x) * g, d);
}

MPoly g_from_center(const TruncElem& P) {
  // (P - r0) / x as a polynomial of x-degree <= d-2.
  MPoly g;
  for (int m = 1; m < P.precision(); ++m)
    for (const auto& [mono, c] : P.coeff(m).terms()) g.add_term(mono.with(Var::x, static_cast<unsigned>(m - 1)), c);
  return g;
}

bool span_supported(const MPoly& g, const CurveExponents& kl) {
  for (const auto& [m, c] : g.terms())
    if (!kl.in_span(m.without(Var::x))) return false;
  return true;
}

}  // namespace

NormalFormCertificate normalize(int d, const CurveExponents& kl, const MPoly& g) {
  if (d < 2) throw InvalidArgument("normalize: d must be at least 2");
  if (g.uses(Var::y) || g.uses(Var::s)) throw InvalidArgument("normalize: g must involve only x, z, t");

  TruncElem current = center(kl, g, d);
  TruncAut aut = TruncAut::identity(d);
  TruncElem unit = TruncElem::one(d);

  // Invariant: apply(aut, r0 + x g) == unit * current.
  for (int nu = 1; nu < d; ++nu) {
    const SplitDecomposition parts = split(current.coeff(nu), kl);
    if (parts.ideal_part.is_zero()) continue;
    const PreimageResult pre = preimage_of_polynomial(parts.ideal_part, kl);
    const TruncAut step = exp_aut({nu, -pre.h}, d);
    const TruncElem factor = TruncElem::one(d) - truncate(pre.f, d).shifted(nu);
    current = unit_inverse(factor) * apply(step, current);
    unit = apply(step, unit) * factor;
    aut = compose(step, aut);
    if (!split(current.coeff(nu), kl).ideal_part.is_zero())
      throw CertificateFailure("normalize: level " + std::to_string(nu) + " not reduced");
  }

  const MPoly g_norm = g_from_center(current);
  NormalFormCertificate cert{d, kl, std::move(aut), std::move(unit), g, g_norm, AlphaMatrix::from_normal_g(g_norm, d, kl)};
  if (!check_certificate(cert)) throw CertificateFailure("normalize: certificate identity failed for g = " + g.str());
  return cert;
}

bool check_certificate(const NormalFormCertificate& cert) {
  const int d = cert.d;
  if (cert.aut.precision() != d || cert.unit.precision() != d) return false;
  if (cert.unit.coeff(0) != MPoly(1)) return false;
  if (!span_supported(cert.g_norm, cert.kl)) return false;
  if (static_cast<int>(cert.g_norm.degree_in(Var::x)) > d - 2 && !cert.g_norm.is_zero()) return false;
  if (cert.g_norm.uses(Var::y) || cert.g_norm.uses(Var::s)) return false;
  if (AlphaMatrix::from_normal_g(cert.g_norm, d, cert.kl) != cert.alpha) return false;
  const TruncElem lhs = apply(cert.aut, center(cert.kl, cert.input_g, d));
  const TruncElem rhs = cert.unit * center(cert.kl, cert.g_norm, d);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Isomorphism decision

namespace {

struct Row {
  long p;  // exponent of lambda
  long q;  // exponent of mu
  Rat c;
};

// u a + v b = g >= 0
std::tuple<long, long, long> ext_gcd(long a, long b) {
  long old_r = a, r = b, old_u = 1, u = 0, old_v = 0, v = 1;
  while (r != 0) {
    long quot = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quot * r};
    std::tie(old_u, u) = std::pair{u, old_u - quot * u};
    std::tie(old_v, v) = std::pair{v, old_v - quot * v};
  }
  if (old_r < 0) return {-old_r, -old_u, -old_v};
  return {old_r, old_u, old_v};
}

Row combine(long a, const Row& r1, long b, const Row& r2) {
  return {a * r1.p + b * r2.p, a * r1.q + b * r2.q, r1.c.pow(a) * r2.c.pow(b)};
}

Row negated(const Row& r) { return {-r.p, -r.q, r.c.inverse()}; }

// Rational solutions of w^n = c.
std::vector<Rat> rational_roots(const Rat& c, long n) {
  if (n == 0) return {};
  if (n < 0) return rational_roots(c.inverse(), -n);
  auto root = c.exact_root(static_cast<unsigned long>(n));
  if (!root) return {};
  if (n % 2 == 0 && !root->is_zero()) return {*root, -*root};
  return {*root};
}

std::string relation_str(const PowerRelation& r) {
  std::string lhs;
  auto factor = [&](const char* name, long e) {
    if (e == 0) return;
    if (!lhs.empty()) lhs += '*';
    lhs += name;
    if (e != 1) lhs += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  };
  factor("lambda", r.lambda_exp);
  factor("mu", r.mu_exp);
  if (lhs.empty()) lhs = "1";
  return lhs + " = " + r.value.str();
}

}  // namespace

std::string IsoWitness::describe() const {
  std::ostringstream os;
  if (!sat()) {
    os << "UNSAT\nreason: " << reason << '\n';
    return os.str();
  }
  os << "SAT\n";
  if (explicit_solution) {
    os << "lambda = " << explicit_solution->first.str() << '\n';
    os << "mu = " << explicit_solution->second.str() << '\n';
  } else {
    os << "no rational witness; solutions are roots of the system below\n";
  }
  os << "free parameters: " << free_parameters << '\n';
  for (const auto& r : system) os << "relation: " << relation_str(r) << '\n';
  return os.str();
}

IsoWitness iso_decide(const AlphaMatrix& A, const AlphaMatrix& B) {
  if (A.d() != B.d() || A.exponents() != B.exponents())
    throw InvalidArgument("iso_decide: parameters (d, k, l) differ");
  const int d = A.d();
  const int k = A.exponents().k(), l = A.exponents().l();

  IsoWitness w;
  std::vector<Row> rows;
  std::vector<std::string> mismatches;
  for (const auto& [ij, alpha] : A.entries()) {
    const auto [i, j] = ij;
    const long e = static_cast<long>(l) * i + static_cast<long>(k) * j - static_cast<long>(k) * l;
    for (int n = 0; n <= d - 2; ++n) {
      const Rat a = A.coeff(i, j, n), b = B.coeff(i, j, n);
      if (a.is_zero() && b.is_zero()) continue;
      if (a.is_zero() != b.is_zero()) {
        mismatches.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) + ") x^" + std::to_string(n));
        continue;
      }
      // mu^(n+1) a = lambda^e b  <=>  lambda^(-e) mu^(n+1) = b/a
      rows.push_back({-e, n + 1, b / a});
    }
  }

  if (!mismatches.empty()) {
    w.reason = "support mismatch:";
    for (std::size_t m = 0; m < mismatches.size(); ++m) w.reason += (m ? ", " : " ") + mismatches[m];
    return w;
  }

  // Unimodular elimination on the exponent lattice: first the lambda column,
  // then the mu column. Rows reduced to (0, 0, c) are lattice relations.
  std::optional<Row> pivot_lambda, pivot_mu;
  std::vector<Row> rest, relations;
  for (const Row& row : rows) {
    if (row.p == 0) {
      rest.push_back(row);
    } else if (!pivot_lambda) {
      pivot_lambda = row.p > 0 ? row : negated(row);
    } else {
      auto [g, u, v] = ext_gcd(pivot_lambda->p, row.p);
      Row eliminated = combine(row.p / g, *pivot_lambda, -(pivot_lambda->p / g), row);
      pivot_lambda = combine(u, *pivot_lambda, v, row);
      rest.push_back(eliminated);
    }
  }
  for (const Row& row : rest) {
    if (row.q == 0) {
      relations.push_back(row);
    } else if (!pivot_mu) {
      pivot_mu = row.q > 0 ? row : negated(row);
    } else {
      auto [g, u, v] = ext_gcd(pivot_mu->q, row.q);
      Row eliminated = combine(row.q / g, *pivot_mu, -(pivot_mu->q / g), row);
      pivot_mu = combine(u, *pivot_mu, v, row);
      relations.push_back(eliminated);
    }
  }
  for (const Row& rel : relations) {
    if (!rel.c.is_one()) {
      w.reason = "multiplicative relation among the equations forces 1 = " + rel.c.str();
      return w;
    }
  }

  // C* is divisible, so the triangular system left over is always solvable.
  w.status = IsoWitness::Status::sat;
  if (pivot_lambda) w.system.push_back({pivot_lambda->p, pivot_lambda->q, pivot_lambda->c});
  if (pivot_mu) w.system.push_back({pivot_mu->p, pivot_mu->q, pivot_mu->c});
  w.free_parameters = 2 - static_cast<int>(w.system.size());

  if (w.system.empty()) {
    w.explicit_solution = std::pair{Rat(1), Rat(1)};
  } else if (w.system.size() == 1) {
    const PowerRelation& r = w.system.front();
    auto [g, u, v] = ext_gcd(r.lambda_exp, r.mu_exp);
    auto roots = rational_roots(r.value, g);
    if (!roots.empty()) w.explicit_solution = std::pair{roots.front().pow(u), roots.front().pow(v)};
  } else {
    const PowerRelation& first = w.system[0];
    const PowerRelation& second = w.system[1];
    for (const Rat& mu : rational_roots(second.value, second.mu_exp)) {
      auto lambdas = rational_roots(first.value * mu.pow(-first.mu_exp), first.lambda_exp);
      if (!lambdas.empty()) {
        w.explicit_solution = std::pair{lambdas.front(), mu};
        break;
      }
    }
  }
  return w;
}

bool iso_witness_check(const Rat& lambda, const Rat& mu, const AlphaMatrix& A, const AlphaMatrix& B) {
  if (A.d() != B.d() || A.exponents() != B.exponents()) return false;
  if (lambda.is_zero() || mu.is_zero()) return false;
  const int d = A.d();
  const CurveExponents& kl = A.exponents();
  const TruncAut phi = scaling_aut(lambda, mu, kl, d);
  const TruncElem image = apply(phi, center(kl, A.to_g(), d));
  auto result = ideal_membership(image, center(kl, B.to_g(), d));
  const auto* cof = std::get_if<MembershipCofactor>(&result);
  if (cof == nullptr) return false;
  auto lead = cof->b.coeff(0).constant_value();
  return lead && *lead == lambda.pow(-static_cast<long>(kl.k()) * kl.l());
}

}  // namespace krd
