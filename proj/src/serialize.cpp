#include "peff/serialize.hpp"

namespace peff::ser {

using col::dec;
using col::fdec;

json nat_to_json(const Nat& n) { return n.str(); }

Nat nat_from_json(const json& j, const std::string& path) {
  if (!j.is_string()) throw schema_error("expected a decimal string", path);
  const std::string& s = j.get_ref<const std::string&>();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw schema_error("malformed natural '" + s + "'", path);
  return Nat(s);
}

namespace {

json nats_to_json(const std::vector<Nat>& xs) {
  json out = json::array();
  for (const Nat& x : xs) out.push_back(nat_to_json(x));
  return out;
}

std::vector<Nat> nats_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw schema_error("expected an array", path);
  std::vector<Nat> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(nat_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

const json& field(const json& j, const char* name, const std::string& path) {
  auto it = j.find(name);
  if (it == j.end()) throw schema_error(std::string("missing field '") + name + "'", path);
  return *it;
}

}  // namespace

json decider_to_json(const col::DecPtr& d) {
  return std::visit(
      [&](auto&& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, col::DecAllNat>) return {{"kind", "nat"}};
        if constexpr (std::is_same_v<T, col::DecTerminal>) return {{"kind", "terminal"}};
        if constexpr (std::is_same_v<T, col::DecInitial>) return {{"kind", "initial"}};
        if constexpr (std::is_same_v<T, col::DecFinite>)
          return {{"kind", "finite"}, {"members", nats_to_json(n.members)}};
        if constexpr (std::is_same_v<T, col::DecProgram>)
          return {{"kind", "program"}, {"code", nat_to_json(n.code.value)}};
        if constexpr (std::is_same_v<T, col::DecProduct>)
          return {{"kind", "product"},
                  {"left", decider_to_json(n.left)},
                  {"right", decider_to_json(n.right)}};
        if constexpr (std::is_same_v<T, col::DecCoproduct>)
          return {{"kind", "coproduct"},
                  {"left", decider_to_json(n.left)},
                  {"right", decider_to_json(n.right)}};
        if constexpr (std::is_same_v<T, col::DecListOf>)
          return {{"kind", "list"}, {"elem", decider_to_json(n.elem)}};
        if constexpr (std::is_same_v<T, col::DecEqualizer>)
          return {{"kind", "equalizer"},
                  {"dom", decider_to_json(n.dom)},
                  {"f", nat_to_json(n.f.value)},
                  {"g", nat_to_json(n.g.value)}};
        if constexpr (std::is_same_v<T, col::DecWeakExp>)
          return {{"kind", "weak-exp"},
                  {"dom_support", nats_to_json(n.dom_support)},
                  {"cod", decider_to_json(n.cod)}};
        if constexpr (std::is_same_v<T, col::DecSigma>)
          return {{"kind", "sigma"},
                  {"base", decider_to_json(n.base)},
                  {"family", fam_decider_to_json(n.fam)}};
        if constexpr (std::is_same_v<T, col::DecUniverse>) return {{"kind", "universe"}};
        if constexpr (std::is_same_v<T, col::DecSetMembers>)
          return {{"kind", "set-members"}, {"code", nat_to_json(n.code)}};
        if constexpr (std::is_same_v<T, col::DecFlag>)
          return {{"kind", "flag"}, {"undecided", nats_to_json(n.undecided)}};
      },
      d->node);
}

col::DecPtr decider_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw schema_error("expected a decider object", path);
  std::string kind = field(j, "kind", path).get<std::string>();
  if (kind == "nat") return dec({col::DecAllNat{}});
  if (kind == "terminal") return dec({col::DecTerminal{}});
  if (kind == "initial") return dec({col::DecInitial{}});
  if (kind == "finite")
    return dec({col::DecFinite{nats_from_json(field(j, "members", path), path + ".members")}});
  if (kind == "program")
    return dec({col::DecProgram{pca::Code{nat_from_json(field(j, "code", path), path + ".code")}}});
  if (kind == "product")
    return dec({col::DecProduct{decider_from_json(field(j, "left", path), path + ".left"),
                                decider_from_json(field(j, "right", path), path + ".right")}});
  if (kind == "coproduct")
    return dec({col::DecCoproduct{decider_from_json(field(j, "left", path), path + ".left"),
                                  decider_from_json(field(j, "right", path), path + ".right")}});
  if (kind == "list")
    return dec({col::DecListOf{decider_from_json(field(j, "elem", path), path + ".elem")}});
  if (kind == "equalizer")
    return dec({col::DecEqualizer{
        decider_from_json(field(j, "dom", path), path + ".dom"),
        pca::Code{nat_from_json(field(j, "f", path), path + ".f")},
        pca::Code{nat_from_json(field(j, "g", path), path + ".g")}}});
  if (kind == "weak-exp")
    return dec({col::DecWeakExp{
        nats_from_json(field(j, "dom_support", path), path + ".dom_support"),
        decider_from_json(field(j, "cod", path), path + ".cod")}});
  if (kind == "sigma")
    return dec({col::DecSigma{decider_from_json(field(j, "base", path), path + ".base"),
                              fam_decider_from_json(field(j, "family", path), path + ".family")}});
  if (kind == "universe") return dec({col::DecUniverse{}});
  if (kind == "set-members")
    return dec({col::DecSetMembers{nat_from_json(field(j, "code", path), path + ".code")}});
  if (kind == "flag")
    return dec({col::DecFlag{nats_from_json(field(j, "undecided", path), path + ".undecided")}});
  throw schema_error("unknown decider kind '" + kind + "'", path + ".kind");
}

json fam_decider_to_json(const col::FamDecPtr& d) {
  return std::visit(
      [&](auto&& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, col::FamConst>)
          return {{"kind", "const"}, {"fibre", decider_to_json(n.fibre)}};
        if constexpr (std::is_same_v<T, col::FamFinite>) {
          json fibres = json::object();
          for (const auto& [k, v] : n.fibres) fibres[k.str()] = nats_to_json(v);
          return {{"kind", "finite"}, {"fibres", fibres}};
        }
        if constexpr (std::is_same_v<T, col::FamProgram>)
          return {{"kind", "program"}, {"code", nat_to_json(n.code.value)}};
        if constexpr (std::is_same_v<T, col::FamProduct>)
          return {{"kind", "product"},
                  {"left", fam_decider_to_json(n.left)},
                  {"right", fam_decider_to_json(n.right)}};
        if constexpr (std::is_same_v<T, col::FamCoproduct>)
          return {{"kind", "coproduct"},
                  {"left", fam_decider_to_json(n.left)},
                  {"right", fam_decider_to_json(n.right)}};
        if constexpr (std::is_same_v<T, col::FamListOf>)
          return {{"kind", "list"}, {"elem", fam_decider_to_json(n.elem)}};
        if constexpr (std::is_same_v<T, col::FamEqualizer>)
          return {{"kind", "equalizer"},
                  {"dom", fam_decider_to_json(n.dom)},
                  {"f", nat_to_json(n.f.value)},
                  {"g", nat_to_json(n.g.value)}};
        if constexpr (std::is_same_v<T, col::FamWeakExp>)
          return {{"kind", "weak-exp"},
                  {"dom", fam_decider_to_json(n.dom)},
                  {"cod", fam_decider_to_json(n.cod)}};
        if constexpr (std::is_same_v<T, col::FamSubst>)
          return {{"kind", "subst"},
                  {"f", nat_to_json(n.f.value)},
                  {"guard", decider_to_json(n.guard)},
                  {"inner", fam_decider_to_json(n.inner)}};
        if constexpr (std::is_same_v<T, col::FamSigmaAlong>)
          return {{"kind", "sigma-along"},
                  {"f", nat_to_json(n.f.value)},
                  {"inner", fam_decider_to_json(n.inner)},
                  {"dom_support", nats_to_json(n.dom_support)}};
        if constexpr (std::is_same_v<T, col::FamPiAlong>)
          return {{"kind", "pi-along"},
                  {"f", nat_to_json(n.f.value)},
                  {"inner", fam_decider_to_json(n.inner)},
                  {"dom_support", nats_to_json(n.dom_support)},
                  {"guard", decider_to_json(n.guard)}};
        if constexpr (std::is_same_v<T, col::FamSigmaPrime>)
          return {{"kind", "sigma-prime"},
                  {"a", decider_to_json(n.a)},
                  {"a_support", nats_to_json(n.a_support)},
                  {"inner", fam_decider_to_json(n.inner)}};
        if constexpr (std::is_same_v<T, col::FamPiPrime>)
          return {{"kind", "pi-prime"},
                  {"a", decider_to_json(n.a)},
                  {"a_support", nats_to_json(n.a_support)},
                  {"inner", fam_decider_to_json(n.inner)}};
        if constexpr (std::is_same_v<T, col::FamTau>)
          return {{"kind", "tau"},
                  {"code", nat_to_json(n.code.value)},
                  {"guard", decider_to_json(n.guard)}};
        if constexpr (std::is_same_v<T, col::FamSep>)
          return {{"kind", "sep"}, {"inner", fam_decider_to_json(n.inner)}};
        if constexpr (std::is_same_v<T, col::FamGuarded>)
          return {{"kind", "guarded"},
                  {"guard", decider_to_json(n.guard)},
                  {"inner", fam_decider_to_json(n.inner)}};
        if constexpr (std::is_same_v<T, col::FamDepPair>)
          return {{"kind", "dep-pair"},
                  {"first", fam_decider_to_json(n.first)},
                  {"second", fam_decider_to_json(n.second)},
                  {"point", nat_to_json(n.point.value)}};
        if constexpr (std::is_same_v<T, col::FamListRel>)
          return {{"kind", "list-rel"}, {"s", fam_decider_to_json(n.s)}};
        if constexpr (std::is_same_v<T, col::FamKleeneT>) return {{"kind", "kleene-t"}};
        if constexpr (std::is_same_v<T, col::FamOmegaEq>) return {{"kind", "omega-eq"}};
        if constexpr (std::is_same_v<T, col::FamKRel>)
          return {{"kind", "k-rel"},
                  {"rel", fam_decider_to_json(n.rel)},
                  {"s", fam_decider_to_json(n.s)},
                  {"sigma", nat_to_json(n.sigma.value)}};
      },
      d->node);
}

col::FamDecPtr fam_decider_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw schema_error("expected a family decider object", path);
  std::string kind = field(j, "kind", path).get<std::string>();
  if (kind == "const")
    return fdec({col::FamConst{decider_from_json(field(j, "fibre", path), path + ".fibre")}});
  if (kind == "finite") {
    const json& fj = field(j, "fibres", path);
    if (!fj.is_object()) throw schema_error("expected an object", path + ".fibres");
    std::map<Nat, std::vector<Nat>> fibres;
    for (auto it = fj.begin(); it != fj.end(); ++it)
      fibres[nat_from_json(json(it.key()), path + ".fibres")] =
          nats_from_json(it.value(), path + ".fibres." + it.key());
    return fdec({col::FamFinite{std::move(fibres)}});
  }
  if (kind == "program")
    return fdec(
        {col::FamProgram{pca::Code{nat_from_json(field(j, "code", path), path + ".code")}}});
  if (kind == "product")
    return fdec(
        {col::FamProduct{fam_decider_from_json(field(j, "left", path), path + ".left"),
                         fam_decider_from_json(field(j, "right", path), path + ".right")}});
  if (kind == "coproduct")
    return fdec(
        {col::FamCoproduct{fam_decider_from_json(field(j, "left", path), path + ".left"),
                           fam_decider_from_json(field(j, "right", path), path + ".right")}});
  if (kind == "list")
    return fdec({col::FamListOf{fam_decider_from_json(field(j, "elem", path), path + ".elem")}});
  if (kind == "equalizer")
    return fdec({col::FamEqualizer{
        fam_decider_from_json(field(j, "dom", path), path + ".dom"),
        pca::Code{nat_from_json(field(j, "f", path), path + ".f")},
        pca::Code{nat_from_json(field(j, "g", path), path + ".g")}}});
  if (kind == "weak-exp")
    return fdec({col::FamWeakExp{fam_decider_from_json(field(j, "dom", path), path + ".dom"),
                                 fam_decider_from_json(field(j, "cod", path), path + ".cod")}});
  if (kind == "subst")
    return fdec({col::FamSubst{
        pca::Code{nat_from_json(field(j, "f", path), path + ".f")},
        decider_from_json(field(j, "guard", path), path + ".guard"),
        fam_decider_from_json(field(j, "inner", path), path + ".inner")}});
  if (kind == "sigma-along")
    return fdec({col::FamSigmaAlong{
        pca::Code{nat_from_json(field(j, "f", path), path + ".f")},
        fam_decider_from_json(field(j, "inner", path), path + ".inner"),
        nats_from_json(field(j, "dom_support", path), path + ".dom_support")}});
  if (kind == "pi-along")
    return fdec({col::FamPiAlong{
        pca::Code{nat_from_json(field(j, "f", path), path + ".f")},
        fam_decider_from_json(field(j, "inner", path), path + ".inner"),
        nats_from_json(field(j, "dom_support", path), path + ".dom_support"),
        decider_from_json(field(j, "guard", path), path + ".guard")}});
  if (kind == "sigma-prime")
    return fdec({col::FamSigmaPrime{
        decider_from_json(field(j, "a", path), path + ".a"),
        nats_from_json(field(j, "a_support", path), path + ".a_support"),
        fam_decider_from_json(field(j, "inner", path), path + ".inner")}});
  if (kind == "pi-prime")
    return fdec({col::FamPiPrime{
        decider_from_json(field(j, "a", path), path + ".a"),
        nats_from_json(field(j, "a_support", path), path + ".a_support"),
        fam_decider_from_json(field(j, "inner", path), path + ".inner")}});
  if (kind == "tau")
    return fdec({col::FamTau{pca::Code{nat_from_json(field(j, "code", path), path + ".code")},
                             decider_from_json(field(j, "guard", path), path + ".guard")}});
  if (kind == "sep")
    return fdec({col::FamSep{fam_decider_from_json(field(j, "inner", path), path + ".inner")}});
  if (kind == "guarded")
    return fdec({col::FamGuarded{decider_from_json(field(j, "guard", path), path + ".guard"),
                                 fam_decider_from_json(field(j, "inner", path), path + ".inner")}});
  if (kind == "dep-pair")
    return fdec({col::FamDepPair{
        fam_decider_from_json(field(j, "first", path), path + ".first"),
        fam_decider_from_json(field(j, "second", path), path + ".second"),
        pca::Code{nat_from_json(field(j, "point", path), path + ".point")}}});
  if (kind == "list-rel")
    return fdec({col::FamListRel{fam_decider_from_json(field(j, "s", path), path + ".s")}});
  if (kind == "kleene-t") return fdec({col::FamKleeneT{}});
  if (kind == "omega-eq") return fdec({col::FamOmegaEq{}});
  if (kind == "k-rel")
    return fdec({col::FamKRel{
        fam_decider_from_json(field(j, "rel", path), path + ".rel"),
        fam_decider_from_json(field(j, "s", path), path + ".s"),
        pca::Code{nat_from_json(field(j, "sigma", path), path + ".sigma")}}});
  throw schema_error("unknown family decider kind '" + kind + "'", path + ".kind");
}

json collection_to_json(const col::Collection& c) {
  return {{"schema", "peff/collection@1"},
          {"name", c.name},
          {"support", nats_to_json(c.support)},
          {"decider", decider_to_json(c.decider)}};
}

col::Collection collection_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw schema_error("expected a collection object", path);
  if (field(j, "schema", path) != "peff/collection@1")
    throw schema_error("unsupported schema", path + ".schema");
  col::Collection out;
  out.name = field(j, "name", path).get<std::string>();
  out.support = nats_from_json(field(j, "support", path), path + ".support");
  out.decider = decider_from_json(field(j, "decider", path), path + ".decider");
  return out;
}

json arrow_to_json(const col::Arrow& a) {
  return {{"schema", "peff/arrow@1"},
          {"code", nat_to_json(a.code.value)},
          {"dom", collection_to_json(a.dom)},
          {"cod", collection_to_json(a.cod)}};
}

col::Arrow arrow_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw schema_error("expected an arrow object", path);
  if (field(j, "schema", path) != "peff/arrow@1")
    throw schema_error("unsupported schema", path + ".schema");
  return col::Arrow{pca::Code{nat_from_json(field(j, "code", path), path + ".code")},
                    collection_from_json(field(j, "dom", path), path + ".dom"),
                    collection_from_json(field(j, "cod", path), path + ".cod")};
}

json family_to_json(const fam::Family& f) {
  json out = {{"schema", "peff/family@1"},
              {"base", collection_to_json(f.base)},
              {"decider", fam_decider_to_json(f.decider)}};
  if (f.has_explicit_fibres) {
    json fibres = json::object();
    for (const auto& [k, v] : f.explicit_fibres) fibres[k.str()] = nats_to_json(v);
    out["fibres"] = fibres;
  }
  return out;
}

fam::Family family_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw schema_error("expected a family object", path);
  if (field(j, "schema", path) != "peff/family@1")
    throw schema_error("unsupported schema", path + ".schema");
  col::Collection base = collection_from_json(field(j, "base", path), path + ".base");
  col::FamDecPtr d = fam_decider_from_json(field(j, "decider", path), path + ".decider");
  if (j.contains("fibres")) {
    std::map<Nat, std::vector<Nat>> fibres;
    for (auto it = j["fibres"].begin(); it != j["fibres"].end(); ++it)
      fibres[nat_from_json(json(it.key()), path + ".fibres")] =
          nats_from_json(it.value(), path + ".fibres." + it.key());
    return fam::mk_family_with_fibres(std::move(base), std::move(d), std::move(fibres));
  }
  return fam::mk_family(std::move(base), std::move(d));
}

std::string support_digest(const col::Collection& c) {
  // FNV-1a over the name and the decimal support
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  mix(c.name);
  for (const Nat& x : c.support) mix(x.str() + ",");
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json witness_to_json(const doc::EntailmentWitness& w) {
  return {{"schema", "peff/witness@1"},
          {"realizer", nat_to_json(w.realizer.value)},
          {"verified_on", support_digest(w.from.base)}};
}

json qobject_to_json(const quo::QObject& q) {
  return {{"schema", "peff/qobject@1"},
          {"carrier", collection_to_json(q.carrier)},
          {"rel", family_to_json(q.rel)},
          {"witnesses",
           {{"refl", nat_to_json(q.refl.value)},
            {"sym", nat_to_json(q.sym.value)},
            {"trans", nat_to_json(q.trans.value)}}}};
}

quo::QObject qobject_from_json(const json& j, const EvalCfg& cfg, const std::string& path) {
  if (!j.is_object()) throw schema_error("expected a qobject", path);
  if (field(j, "schema", path) != "peff/qobject@1")
    throw schema_error("unsupported schema", path + ".schema");
  col::Collection carrier = collection_from_json(field(j, "carrier", path), path + ".carrier");
  fam::Family rel = family_from_json(field(j, "rel", path), path + ".rel");
  const json& w = field(j, "witnesses", path);
  return quo::mk_qobject(
      carrier, rel, cfg,
      pca::Code{nat_from_json(field(w, "refl", path), path + ".witnesses.refl")},
      pca::Code{nat_from_json(field(w, "sym", path), path + ".witnesses.sym")},
      pca::Code{nat_from_json(field(w, "trans", path), path + ".witnesses.trans")});
}

}  // namespace peff::ser
