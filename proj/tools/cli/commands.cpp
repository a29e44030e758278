#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <future>
#include <ostream>
#include <sstream>

#include "json_io.hpp"
#include "krd/error.hpp"
#include "krd/expr.hpp"
#include "krd/threefold.hpp"

namespace krd::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

Rat parse_scalar(const std::string& text) {
  auto v = parse_poly(text).constant_value();
  if (!v) throw InvalidArgument("expected a rational number, got '" + text + "'");
  return *v;
}

struct CurveOpts {
  int d = 2, k = 2, l = 3;
  void add(CLI::App* cmd) {
    cmd->add_option("--d", d, "truncation order d >= 2")->required();
    cmd->add_option("--k", k, "exponent of z in r0")->required();
    cmd->add_option("--l", l, "exponent of t in r0")->required();
  }
};

// ---------------------------------------------------------------- normalize

void print_certificate(const NormalFormCertificate& c, std::ostream& out) {
  out << "g = " << c.input_g << "\n";
  out << "g_norm = " << c.g_norm << "\n";
  for (const auto& [ij, a] : c.alpha.entries())
    out << "alpha[" << ij.first << "," << ij.second << "] = " << a << "\n";
  out << "aut: mu = " << c.aut.mu() << "\n";
  out << "aut(z) = " << c.aut.z_image().str() << "\n";
  out << "aut(t) = " << c.aut.t_image().str() << "\n";
  out << "unit = " << c.unit.str() << "\n";
  out << "certificate = " << (check_certificate(c) ? "verified" : "FAILED") << "\n";
}

int cmd_normalize(const CurveOpts& o, const std::vector<std::string>& gs, bool as_json, unsigned jobs,
                  std::ostream& out) {
  const CurveExponents kl(o.k, o.l);
  std::vector<MPoly> inputs;
  for (const auto& g : gs) inputs.push_back(parse_poly(g));

  std::vector<std::future<NormalFormCertificate>> pending;
  std::vector<NormalFormCertificate> certs;
  for (const auto& g : inputs) {
    if (pending.size() >= std::max(1u, jobs)) {
      certs.push_back(pending.front().get());
      pending.erase(pending.begin());
    }
    pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&, g] { return normalize(o.d, kl, g); }));
  }
  for (auto& f : pending) certs.push_back(f.get());

  for (std::size_t i = 0; i < certs.size(); ++i) {
    if (as_json) {
      out << to_json(certs[i]).dump() << "\n";
    } else {
      if (i > 0) out << "\n";
      print_certificate(certs[i], out);
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------- iso

int cmd_iso(const CurveOpts& o, const std::string& ga, const std::string& gb, bool as_json, std::ostream& out) {
  const CurveExponents kl(o.k, o.l);
  const auto ca = normalize(o.d, kl, parse_poly(ga));
  const auto cb = normalize(o.d, kl, parse_poly(gb));
  const IsoWitness w = iso_decide(ca.alpha, cb.alpha);
  std::optional<bool> checked;
  if (w.explicit_solution)
    checked = iso_witness_check(w.explicit_solution->first, w.explicit_solution->second, ca.alpha, cb.alpha);

  if (as_json) {
    json doc = {{"kind", "iso"},
                {"inputs", {{"d", o.d}, {"k", o.k}, {"l", o.l}, {"ga", ca.input_g.str()}, {"gb", cb.input_g.str()}}},
                {"result", to_json(w)},
                {"certificate", {{"a", to_json(ca)}, {"b", to_json(cb)}}}};
    if (checked) doc["certificate"]["witness_verified"] = *checked;
    out << doc.dump() << "\n";
  } else {
    out << "g_norm(a) = " << ca.g_norm << "\n";
    out << "g_norm(b) = " << cb.g_norm << "\n";
    out << w.describe();
    if (checked) out << "witness = " << (*checked ? "verified" : "FAILED") << "\n";
  }
  return w.sat() ? kOk : kUnsat;
}

// --------------------------------------------------------------- verify-aut

int cmd_verify_aut(int d, const std::string& r0_text, const std::string& g_text, int nu, const std::string& h_text,
                   bool ga, std::ostream& out) {
  const MPoly r0 = parse_poly(r0_text), g = parse_poly(g_text), h = parse_poly(h_text);
  const Derivation D{nu, h};
  const TruncAut phi = exp_aut(D, d);
  out << "aut(z) = " << phi.z_image().str() << "\n";
  out << "aut(t) = " << phi.t_image().str() << "\n";

  auto decide = [&]() -> GaVerdict {
    if (ga) return verify_ga_action(D, d, r0, g);
    const TruncElem gen = truncate(r0 + MPoly::var(Var::x) * g, d);
    auto m = ideal_membership(apply(phi, gen), gen);
    if (auto* c = std::get_if<MembershipCofactor>(&m)) return Preserves{*c};
    return FailsAtOrder{std::get<NotMember>(m).order};
  };
  const GaVerdict verdict = decide();
  if (auto* p = std::get_if<Preserves>(&verdict)) {
    out << "verdict = Preserves\n";
    out << "cofactor = " << p->cofactor.b.str() << "\n";
  } else {
    out << "verdict = FailsAtOrder\n";
    out << "order = " << std::get<FailsAtOrder>(verdict).order << "\n";
  }
  return kOk;
}

// --------------------------------------------------------------------- lift

int cmd_lift(const CurveOpts& o, const std::string& map_text, const std::string& g_text, std::ostream& out) {
  const auto X = ThreefoldPresentation::koras_russell(o.d, CurveExponents(o.k, o.l), parse_poly(g_text));
  PolyMap phi;
  for (const auto& part : split(map_text, ';')) {
    if (trim(part).empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--map: expected v=EXPR, got '" + part + "'");
    const std::string name = trim(part.substr(0, eq));
    const MPoly image = parse_poly(part.substr(eq + 1));
    if (name == "z")
      phi.z = image;
    else if (name == "t")
      phi.t = image;
    else if (name == "x")
      phi.x = image;
    else
      throw InvalidArgument("--map: unknown generator '" + name + "'");
  }
  const PolyMap lifted = lift_to_A4(phi, X);
  out << "Phi(x) = " << lifted.x << "\n";
  out << "Phi(y) = " << lifted.y << "\n";
  out << "Phi(z) = " << lifted.z << "\n";
  out << "Phi(t) = " << lifted.t << "\n";
  const MPoly P = X.defining_polynomial();
  out << "Phi(P) = P: " << (lifted.apply(P) == P ? "verified" : "FAILED") << "\n";
  return kOk;
}

// ----------------------------------------------------------------- obstruct

void print_obstruction(const ObstructionReport& r, std::span<const MPoly> factors, std::ostream& out) {
  out << "obstruction = " << to_string(r.kind) << "\n";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    out << "h on {" << factors[i] << " = 0} = ";
    if (r.residues[i])
      out << *r.residues[i] << "\n";
    else
      out << "not constant\n";
  }
}

int cmd_obstruct(const std::string& factors_text, const std::string& h_text, std::ostream& out) {
  std::vector<MPoly> factors;
  for (const auto& f : split(factors_text, ';'))
    if (!trim(f).empty()) factors.push_back(parse_poly(f));
  print_obstruction(extension_obstruction(parse_poly(h_text), factors), factors, out);
  return kOk;
}

// -------------------------------------------------------------------- orbit

int cmd_orbit(const CurveOpts& o, const std::string& point_text, std::ostream& out) {
  const auto coords = split(point_text, ',');
  if (coords.size() != 4) throw InvalidArgument("--point: expected x,y,z,t");
  const Point p{parse_scalar(coords[0]), parse_scalar(coords[1]), parse_scalar(coords[2]), parse_scalar(coords[3])};
  const auto X = ThreefoldPresentation::koras_russell(o.d, CurveExponents(o.k, o.l));
  const OrbitLabel label = orbit_classify(p, X);
  out << "orbit = " << to_string(label) << "\n";
  return kOk;
}

// --------------------------------------------------------------------- demo

std::string factored(const MPoly& image, const MPoly& by, const char* name, bool descending) {
  auto q = exact_divide(image, by);
  if (!q) throw CertificateFailure(std::string("demo: image is not a multiple of ") + name);
  return "(" + q->str(descending) + ")*" + name;
}

int cmd_demo(std::ostream& out) {
  const auto ex = build_nonextendible_example();
  const auto& X = ex.presentation;
  const int d = X.d();
  const MPoly z = MPoly::var(Var::z), t = MPoly::var(Var::t);

  out << "P = " << X.defining_polynomial() << "\n";
  out << "r0 = " << X.r0() << " = " << X.factors()[0] << " * (" << X.factors()[1] << ")\n";
  out << "h = " << ex.hamiltonian << "\n";
  out << "phi(z) = " << factored(ex.aut.z_image().to_poly(), z, "z", true) << "\n";
  out << "phi(t) = " << factored(ex.aut.t_image().to_poly(), t, "t", true) << "\n";
  const TruncElem image = apply(ex.aut, truncate(X.r0(), d));
  out << "phi(r0) = " << factored(image.to_poly(), X.r0(), "r0", false) << " mod x^" << d << "\n";
  out << "cofactor = " << ex.cofactor.b.str() << "\n";
  const bool ok = ex.cofactor.b * truncate(X.r0(), d) == image;
  out << "membership = " << (ok ? "verified" : "FAILED") << "\n";
  print_obstruction(extension_obstruction(ex.hamiltonian, X.factors()), X.factors(), out);
  return ok ? kOk : kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on Koras-Russell type threefolds", "krd"};
  app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  app.require_subcommand(1);

  CurveOpts normalize_opts, iso_opts, lift_opts, orbit_opts;
  std::vector<std::string> gs;
  std::string ga, gb, r0, g = "1", h, map, factors, point;
  bool as_json = false, ga_flag = false;
  unsigned jobs = 1;
  int d = 2, nu = 1;

  auto* c_norm = app.add_subcommand("normalize", "normal form of r0 + x g with certificate");
  normalize_opts.add(c_norm);
  c_norm->add_option("--g", gs, "g(x,z,t); repeat for a batch")->required();
  c_norm->add_flag("--json", as_json);
  c_norm->add_option("--jobs", jobs, "normalize a batch with N threads")->check(CLI::PositiveNumber);

  auto* c_iso = app.add_subcommand("iso", "decide whether two deformations are isomorphic");
  iso_opts.add(c_iso);
  c_iso->add_option("--ga", ga)->required();
  c_iso->add_option("--gb", gb)->required();
  c_iso->add_flag("--json", as_json);

  auto* c_ver = app.add_subcommand("verify-aut", "check that exp(x^nu Jac(h,.)) preserves (x^d, r0 + x g)");
  c_ver->add_option("--d", d)->required();
  c_ver->add_option("--r0", r0)->required();
  c_ver->add_option("--g", g);
  c_ver->add_option("--nu", nu)->required();
  c_ver->add_option("--h", h)->required();
  c_ver->add_flag("--ga", ga_flag, "test the whole one-parameter group");

  auto* c_lift = app.add_subcommand("lift", "extend an automorphism fixing x to A^4");
  lift_opts.add(c_lift);
  c_lift->add_option("--map", map, "\"z=EXPR;t=EXPR\"")->required();
  c_lift->add_option("--g", g);

  auto* c_obs = app.add_subcommand("obstruct", "restriction of h to the components of r0 = 0");
  c_obs->add_option("--r0-factors", factors, "\"EXPR;EXPR;...\"")->required();
  c_obs->add_option("--h", h)->required();

  auto* c_orb = app.add_subcommand("orbit", "orbit label of a rational point");
  orbit_opts.add(c_orb);
  c_orb->add_option("--point", point, "\"x,y,z,t\"")->required();

  auto* c_demo = app.add_subcommand("demo-section5", "the non-extendible automorphism of x^2 y + z(z t^2 + 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (c_norm->parsed()) return cmd_normalize(normalize_opts, gs, as_json, jobs, out);
    if (c_iso->parsed()) return cmd_iso(iso_opts, ga, gb, as_json, out);
    if (c_ver->parsed()) return cmd_verify_aut(d, r0, g, nu, h, ga_flag, out);
    if (c_lift->parsed()) return cmd_lift(lift_opts, map, g, out);
    if (c_obs->parsed()) return cmd_obstruct(factors, h, out);
    if (c_orb->parsed()) return cmd_orbit(orbit_opts, point, out);
    if (c_demo->parsed()) return cmd_demo(out);
  } catch (const NotInFiltration& e) {
    err << "error: " << e.what() << "\n";
    return kNotInFiltration;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace krd::cli
