#pragma once

#include <json.hpp>

#include "krd/classify.hpp"

namespace krd::cli {

using nlohmann::json;

json to_json(const NormalFormCertificate& cert);
/// Rebuilds a certificate from the "normalize" object written by to_json.
/// Throws ParseError or InvalidArgument on malformed documents.
NormalFormCertificate certificate_from_json(const json& doc);

json to_json(const IsoWitness& w);

}  // namespace krd::cli
