// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "krd/classify.hpp"
#include "krd/error.hpp"
#include "oracles.hpp"

using namespace krd;
using testing::Rng;

namespace {

const MPoly x = MPoly::var(Var::x), z = MPoly::var(Var::z), t = MPoly::var(Var::t);

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<std::string()> body;  // returns a short summary
};

std::string factored(const MPoly& image, const MPoly& by, const std::string& name) {
  auto q = exact_divide(image, by);
  require(q.has_value(), "image not divisible by " + name);
  return "(" + q->str(true) + ")*" + name;
}

// ------------------------------------------------------------------------ 1

std::string disconnected_curve_example() {
  const auto ex = build_nonextendible_example();
  const MPoly r0 = ex.presentation.r0();
  require(factored(ex.aut.z_image().to_poly(), z, "z") == "(1 - 2*t*x)*z", "phi(z) = " + ex.aut.z_image().str());
  require(factored(ex.aut.t_image().to_poly(), t, "t") == "(1 + t*x)*t", "phi(t) = " + ex.aut.t_image().str());
  require(ex.aut.z_image() == truncate((1 - 2 * t * x) * z, 2), "z image");
  require(ex.aut.t_image() == truncate((1 + t * x) * t, 2), "t image");
  const TruncElem image = apply(ex.aut, truncate(r0, 2));
  require(image == truncate((1 - 2 * x * t) * r0, 2), "phi(r0) = " + image.str());
  auto m = ideal_membership(image, truncate(r0, 2));
  const auto* cof = std::get_if<MembershipCofactor>(&m);
  require(cof != nullptr, "membership failed");
  require(cof->b.str() == "1 - 2*x*t", "cofactor = " + cof->b.str());
  return "phi(z) = (1 - 2*t*x)*z, phi(t) = (1 + t*x)*t, cofactor = " + cof->b.str();
}

// ------------------------------------------------------------------------ 2

std::string russell_cubic() {
  const auto c = normalize(2, CurveExponents(2, 3), 1 + x + z.pow(2) + t.pow(3));
  require(c.g_norm == MPoly(1), "g_norm = " + c.g_norm.str());
  require(check_certificate(c), "certificate rejected");
  return "g_norm = 1, unit = " + c.unit.str();
}

// ------------------------------------------------------------------------ 3

std::string certificate_sweep() {
  int total = 0;
  for (const CurveExponents kl : {CurveExponents(2, 3), CurveExponents(2, 5), CurveExponents(3, 4)}) {
    Rng rng(1000 + static_cast<std::uint64_t>(kl.k() * 10 + kl.l()));
    for (int i = 0; i < 200; ++i, ++total) {
      const int d = static_cast<int>(testing::uniform(rng, 2, 4));
      const MPoly g = testing::random_g(rng, d, kl);
      const auto c = normalize(d, kl, g);
      require(apply(c.aut, truncate(kl.r0() + x * g, d)) == c.unit * truncate(kl.r0() + x * c.g_norm, d),
              "identity fails for g = " + g.str());
      for (const auto& [m, coeff] : c.g_norm.terms())
        require(static_cast<int>(m[Var::z]) <= kl.k() - 2 && static_cast<int>(m[Var::t]) <= kl.l() - 2,
                "g_norm outside span: " + c.g_norm.str());
      require(check_certificate(c), "certificate rejected for g = " + g.str());
    }
  }
  return std::to_string(total) + " certificates";
}

// ------------------------------------------------------------------------ 4

AlphaMatrix scaled(const AlphaMatrix& src, const Rat& lambda, const Rat& mu) {
  const CurveExponents& kl = src.exponents();
  AlphaMatrix out(src.d(), kl);
  for (const auto& [ij, e] : src.entries()) {
    const long w = static_cast<long>(kl.l()) * ij.first + static_cast<long>(kl.k()) * ij.second -
                   static_cast<long>(kl.k()) * kl.l();
    for (int n = 0; n <= src.d() - 2; ++n)
      out.set_coeff(ij.first, ij.second, n, src.coeff(ij.first, ij.second, n) * lambda.pow(-w) * mu.pow(n + 1));
  }
  return out;
}

std::string iso_consistency() {
  Rng rng(4);
  const std::vector<CurveExponents> params{CurveExponents(2, 3), CurveExponents(2, 5), CurveExponents(3, 4)};
  int sat = 0, unsat = 0;
  for (int i = 0; i < 50; ++i) {
    const CurveExponents& kl = params[static_cast<std::size_t>(i) % params.size()];
    const int d = static_cast<int>(testing::uniform(rng, 2, 4));
    const AlphaMatrix A = normalize(d, kl, testing::random_g(rng, d, kl)).alpha;
    const AlphaMatrix B = scaled(A, testing::small_rat(rng, 3, 2), testing::small_rat(rng, 3, 2));
    const IsoWitness w = iso_decide(A, B);
    require(w.sat(), "scaled pair reported UNSAT: " + w.reason);
    require(w.explicit_solution.has_value(), "no rational witness for a rationally scaled pair");
    require(iso_witness_check(w.explicit_solution->first, w.explicit_solution->second, A, B), "witness rejected");
    ++sat;
  }
  for (int i = 0; i < 50; ++i) {
    const CurveExponents& kl = params[static_cast<std::size_t>(i) % params.size()];
    const int d = static_cast<int>(testing::uniform(rng, 2, 4));
    AlphaMatrix A(d, kl);
    for (const auto& [ij, e] : A.entries())
      for (int n = 0; n <= d - 2; ++n)
        if (testing::uniform(rng, 0, 1)) A.set_coeff(ij.first, ij.second, n, testing::small_rat(rng));
    AlphaMatrix B = scaled(A, testing::small_rat(rng, 3, 2), testing::small_rat(rng, 3, 2));
    // flip one position of the support
    const auto& entries = A.entries();
    auto it = entries.begin();
    std::advance(it, testing::uniform(rng, 0, static_cast<long>(entries.size()) - 1));
    const int n = static_cast<int>(testing::uniform(rng, 0, d - 2));
    const auto [i0, j0] = it->first;
    B.set_coeff(i0, j0, n, B.coeff(i0, j0, n).is_zero() ? testing::small_rat(rng) : Rat(0));
    const IsoWitness w = iso_decide(A, B);
    require(!w.sat(), "support-mismatched pair reported SAT");
    require(w.reason.find("support mismatch") != std::string::npos, "unexpected reason: " + w.reason);
    ++unsat;
  }
  return std::to_string(sat) + " SAT verified, " + std::to_string(unsat) + " UNSAT";
}

// ------------------------------------------------------------------------ 5

std::string group_properties() {
  Rng rng(5);
  // (a) no torsion
  int nontrivial = 0;
  while (nontrivial < 100) {
    const int d = static_cast<int>(testing::uniform(rng, 2, 5));
    const TruncAut phi = testing::random_filtered_aut(rng, d, static_cast<int>(testing::uniform(rng, 1, d - 1)));
    const auto level = filtration_level(phi);
    require(level.has_value(), "generated map not in A_1");
    if (*level >= d) continue;
    ++nontrivial;
    const MPoly fz = phi.z_image().coeff(*level), ft = phi.t_image().coeff(*level);
    TruncAut power = phi;
    for (int m = 2; m <= 6; ++m) {
      power = compose(phi, power);
      require(power.z_image().coeff(*level) == fz * m && power.t_image().coeff(*level) == ft * m,
              "level increment of phi^m is not m times that of phi");
      require(power != TruncAut::identity(d), "phi^m = id");
    }
  }
  // (b) additivity at a fixed level
  for (int i = 0; i < 50; ++i) {
    const int d = static_cast<int>(testing::uniform(rng, 2, 5));
    const int n = static_cast<int>(testing::uniform(rng, 1, d - 1));
    const TruncAut phi = testing::random_filtered_aut(rng, d, n), psi = testing::random_filtered_aut(rng, d, n);
    require(extract_hamiltonian(compose(phi, psi), n) == extract_hamiltonian(phi, n) + extract_hamiltonian(psi, n),
            "Hamiltonian quotient not additive");
  }
  // (c) Ga actions: nu >= d preserves, hand-picked nu < d fail
  int preserves = 0;
  for (int i = 0; i < 40; ++i) {
    const int d = static_cast<int>(testing::uniform(rng, 2, 5));
    const CurveExponents kl = i % 2 ? CurveExponents(2, 3) : CurveExponents(3, 4);
    const int nu = static_cast<int>(testing::uniform(rng, d, d + 2));
    const GaVerdict v = verify_ga_action({nu, testing::random_zt(rng, 4, 3)}, d, kl, testing::random_g(rng, d, kl, 3));
    require(std::holds_alternative<Preserves>(v), "nu >= d action not preserving");
    ++preserves;
  }
  struct Picked {
    int d, nu;
    MPoly h;
  };
  const std::vector<Picked> picked{
      {2, 1, z},          {2, 1, t},         {2, 1, z * t},     {2, 1, t.pow(2)},  {2, 1, z.pow(2)},
      {3, 1, z},          {3, 2, z},         {3, 1, t.pow(3)},  {3, 2, z * t},     {3, 2, t.pow(2)},
      {4, 1, z * t.pow(2)}, {4, 2, z + t},   {4, 3, z},         {4, 3, t.pow(4)},  {4, 2, z.pow(3)},
      {5, 1, t},          {5, 2, z * t},     {5, 3, z.pow(2) * t}, {5, 4, t.pow(2)}, {5, 4, z + z * t}};
  int fails = 0;
  for (const Picked& p : picked) {
    const GaVerdict v = verify_ga_action({p.nu, p.h}, p.d, CurveExponents(2, 3), 1);
    const auto* f = std::get_if<FailsAtOrder>(&v);
    require(f != nullptr, "expected failure for h = " + p.h.str());
    require(f->order == p.nu, "h = " + p.h.str() + " fails at order " + std::to_string(f->order) + ", not " +
                                  std::to_string(p.nu));
    ++fails;
  }
  return "100 torsion-free, 50 additive, " + std::to_string(preserves) + " Preserves, " + std::to_string(fails) +
         " FailsAtOrder";
}

// ------------------------------------------------------------------------ 6

PolyMap scaling_map(const Rat& lambda, const ThreefoldPresentation& X) {
  const CurveExponents& kl = *X.exponents();
  const InducedIso iso = induced_iso(scaling_aut(lambda, lambda.pow(-kl.k() * kl.l()), kl, X.d()), X, X);
  return iso.map;
}

std::string orbit_partition() {
  Rng rng(6);
  int points = 0, moves = 0;
  for (const auto& X : {ThreefoldPresentation::koras_russell(2, CurveExponents(2, 3)),
                        ThreefoldPresentation::koras_russell(3, CurveExponents(2, 5))}) {
    std::array<int, 4> seen{};
    for (int i = 0; i < 100; ++i, ++points) {
      const int kind = i < 4 ? i : static_cast<int>(testing::uniform(rng, 0, 3));
      const Point p = testing::random_point(rng, X, kind);
      require(lies_on(p, X), "sampled point off X");
      const OrbitLabel label = orbit_classify(p, X);
      require(static_cast<int>(label) == kind, "wrong label " + to_string(label));
      ++seen[static_cast<std::size_t>(label)];
      for (int j = 0; j < 20; ++j, ++moves) {
        PolyMap phi = lift_to_A4(testing::random_tame_map(rng, X.d(), 2), X);
        if (j % 2) phi = compose(scaling_map(testing::small_rat(rng, 2, 2), X), phi);
        const Point q = transport(phi, p);
        require(lies_on(q, X), "transported point off X");
        require(orbit_classify(q, X) == label, "label changed under an automorphism");
      }
    }
    for (int c : seen) require(c > 0, "a label was never produced");
  }
  return std::to_string(points) + " points, " + std::to_string(moves) + " transports, 4 labels";
}

// ------------------------------------------------------------------------ 7

std::string lift_invariance() {
  Rng rng(7);
  const std::vector<CurveExponents> params{CurveExponents(2, 3), CurveExponents(2, 5), CurveExponents(3, 4)};
  for (int i = 0; i < 30; ++i) {
    const CurveExponents& kl = params[static_cast<std::size_t>(i) % params.size()];
    const int d = static_cast<int>(testing::uniform(rng, 2, 4));
    const ThreefoldPresentation X(d, kl.r0(), 1 + x * testing::random_zt(rng, 2, 2));
    const MPoly xd = x_pow(static_cast<unsigned>(d));
    PolyMap phi;
    phi.z = z + xd * testing::random_poly(rng, {Var::x, Var::z, Var::t}, 3, 3);
    phi.t = t + xd * testing::random_poly(rng, {Var::x, Var::z, Var::t}, 3, 3);
    phi = compose(testing::random_tame_map(rng, d, 2), phi);
    const PolyMap Phi = lift_to_A4(phi, X);
    require(Phi.apply(X.defining_polynomial()) == X.defining_polynomial(), "Phi(P) != P");
    require(Phi.x == phi.x && Phi.z == phi.z && Phi.t == phi.t, "lift changed x, z or t");
  }
  return "30 lifts with Phi(P) = P";
}

// ------------------------------------------------------------------------ 8

std::string small_oracles() {
  int monomials = 0;
  for (const CurveExponents kl : {CurveExponents(2, 3), CurveExponents(3, 4)})
    for (unsigned a = 0; a <= 10; ++a)
      for (unsigned b = 0; a + b <= 10; ++b) {
        const Monomial m = Monomial::zt(a, b);
        if (kl.in_span(m)) continue;
        const PreimageResult pre = jacobian_preimage(m, kl);
        require(testing::naive_jacobian(pre.h, kl.r0()) - kl.r0() * pre.f == MPoly::term(1, m),
                "preimage of " + m.str() + " fails the expansion oracle");
        ++monomials;
      }

  Rng rng(8);
  int rejections = 0, instances = 0;
  while (rejections < 40) {
    const int d = static_cast<int>(testing::uniform(rng, 1, 3));
    const TruncElem G = truncate(CurveExponents(2, 3).r0() + x * testing::random_zt(rng, 2, 2), d);
    const TruncElem T = testing::random_trunc(rng, d, 3, 3);
    int degree = 0;
    for (int m = 0; m < d; ++m) degree = std::max({degree, T.coeff(m).degree(), G.coeff(m).degree()});
    if (degree > 6) continue;
    ++instances;
    auto res = ideal_membership(T, G);
    int bound = 0;
    for (int m = 0; m < d; ++m) bound = std::max(bound, T.coeff(m).degree() + G.coeff(m).degree());
    auto brute = testing::brute_force_cofactor(T, G, bound);
    if (std::holds_alternative<NotMember>(res)) {
      require(!brute.has_value(), "brute force found a cofactor for a NotMember answer");
      ++rejections;
    } else {
      require(brute.has_value() && *brute * G == T, "membership answer not confirmed");
    }
  }
  return std::to_string(monomials) + " preimages, " + std::to_string(rejections) + " NotMember and " +
         std::to_string(instances - rejections) + " members confirmed by brute force";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "disconnected-curve automorphism reproduced exactly", 1, disconnected_curve_example},
      {2, "Russell cubic deformation normalizes to g_norm = 1", 1, russell_cubic},
      {3, "certificate soundness sweep", 60, certificate_sweep},
      {4, "iso_decide consistency on scaled and mismatched pairs", 30, iso_consistency},
      {5, "group properties of the filtration", 30, group_properties},
      {6, "orbit partition and label invariance", 30, orbit_partition},
      {7, "lift invariance Phi(P) = P", 10, lift_invariance},
      {8, "small-instance oracles", 60, small_oracles},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > c.budget_s) {
      ok = false;
      detail += " (over time budget)";
    }
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d: %s [%.3f s / %.0f s] %s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
