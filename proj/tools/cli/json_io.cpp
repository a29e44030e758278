#include "json_io.hpp"

#include <string>

#include "krd/error.hpp"
#include "krd/expr.hpp"

namespace krd::cli {

namespace {

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidArgument(std::string("certificate JSON: missing \"") + key + "\"");
  return obj.at(key);
}

std::string text(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw InvalidArgument(std::string("certificate JSON: \"") + key + "\" must be a string");
  return v.get<std::string>();
}

int integer(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) throw InvalidArgument(std::string("certificate JSON: \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

json to_json(const NormalFormCertificate& cert) {
  json alpha = json::object();
  for (const auto& [ij, poly] : cert.alpha.entries())
    alpha[std::to_string(ij.first) + "," + std::to_string(ij.second)] = poly.str();
  return {
      {"kind", "normalize"},
      {"inputs", {{"d", cert.d}, {"k", cert.kl.k()}, {"l", cert.kl.l()}, {"g", cert.input_g.str()}}},
      {"result", {{"g_norm", cert.g_norm.str()}, {"alpha", alpha}}},
      {"certificate",
       {{"mu", cert.aut.mu().fraction_str()},
        {"z_image", cert.aut.z_image().str()},
        {"t_image", cert.aut.t_image().str()},
        {"unit", cert.unit.str()}}},
  };
}

NormalFormCertificate certificate_from_json(const json& doc) {
  if (text(doc, "kind") != "normalize") throw InvalidArgument("certificate JSON: kind must be \"normalize\"");
  const json& in = field(doc, "inputs");
  const json& res = field(doc, "result");
  const json& c = field(doc, "certificate");
  const int d = integer(in, "d");
  const CurveExponents kl(integer(in, "k"), integer(in, "l"));
  const MPoly g_norm = parse_poly(text(res, "g_norm"));
  TruncAut aut(Rat::from_string(text(c, "mu")), truncate(parse_poly(text(c, "z_image")), d),
               truncate(parse_poly(text(c, "t_image")), d));
  return NormalFormCertificate{d,
                               kl,
                               std::move(aut),
                               truncate(parse_poly(text(c, "unit")), d),
                               parse_poly(text(in, "g")),
                               g_norm,
                               AlphaMatrix::from_normal_g(g_norm, d, kl)};
}

json to_json(const IsoWitness& w) {
  json out = {{"status", w.sat() ? "SAT" : "UNSAT"}};
  if (!w.sat()) {
    out["reason"] = w.reason;
    return out;
  }
  if (w.explicit_solution) {
    out["lambda"] = w.explicit_solution->first.fraction_str();
    out["mu"] = w.explicit_solution->second.fraction_str();
  }
  json system = json::array();
  for (const auto& r : w.system)
    system.push_back({{"lambda_exp", r.lambda_exp}, {"mu_exp", r.mu_exp}, {"value", r.value.fraction_str()}});
  out["system"] = system;
  out["free_parameters"] = w.free_parameters;
  return out;
}

}  // namespace krd::cli
