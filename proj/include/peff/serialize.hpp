#ifndef PEFF_SERIALIZE_HPP
#define PEFF_SERIALIZE_HPP

#include <json.hpp>

#include "peff/doctrine.hpp"
#include "peff/quotient.hpp"

namespace peff::ser {

using nlohmann::json;

struct schema_error : std::runtime_error {
  std::string path;
  schema_error(const std::string& msg, std::string at)
      : std::runtime_error(msg + " at " + at), path(std::move(at)) {}
};

// Naturals travel as decimal strings; JSON numbers cannot carry them.
json nat_to_json(const Nat& n);
Nat nat_from_json(const json& j, const std::string& path);

json decider_to_json(const col::DecPtr& d);
col::DecPtr decider_from_json(const json& j, const std::string& path);

json fam_decider_to_json(const col::FamDecPtr& d);
col::FamDecPtr fam_decider_from_json(const json& j, const std::string& path);

json collection_to_json(const col::Collection& c);
col::Collection collection_from_json(const json& j, const std::string& path = "$");

json arrow_to_json(const col::Arrow& a);
col::Arrow arrow_from_json(const json& j, const std::string& path = "$");

json family_to_json(const fam::Family& f);
fam::Family family_from_json(const json& j, const std::string& path = "$");

// Witnesses carry a support digest so reports can be replayed and audited.
json witness_to_json(const doc::EntailmentWitness& w);

json qobject_to_json(const quo::QObject& q);
quo::QObject qobject_from_json(const json& j, const EvalCfg& cfg, const std::string& path = "$");

std::string support_digest(const col::Collection& c);

}  // namespace peff::ser

#endif
