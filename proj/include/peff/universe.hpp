#ifndef PEFF_UNIVERSE_HPP
#define PEFF_UNIVERSE_HPP

#include "peff/doctrine.hpp"
#include "peff/families.hpp"
#include "peff/universe_core.hpp"

namespace peff::uni {

struct not_small : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct presentation_invalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// U_S as a realized collection; support is the deterministic sample catalog.
col::Collection us_collection(const EvalCfg& cfg);

// The collection {x | x eps-bar n} of members of one coherent code.
col::Collection set_members_collection(const Nat& code, const EvalCfg& cfg);

// tau_A(n): requires every support point to map to a coherent set code.
fam::Family tau_family(const col::Collection& a, const pca::Code& n, const EvalCfg& cfg);

// A family presented by a code map into U_S.
struct TauFamily {
  fam::Family family;
  pca::Code code_map;
};
TauFamily mk_tau(const col::Collection& a, const pca::Code& n, const EvalCfg& cfg);

// The seven constructions of the set-level structure. Each returns the
// tau-family built from the displayed code and maps against the
// collections-level construction over the same data.
struct TauConstruction {
  TauFamily object;
  fam::Family plain;     // the collections-level construction
  fam::FamilyMap to;     // plain -> tau
  fam::FamilyMap from;   // tau -> plain
  bool strict_iso;       // whether from o to and to o from are both identities
};

TauConstruction set_terminal(const col::Collection& a, const EvalCfg& cfg);
TauConstruction set_initial(const col::Collection& a, const EvalCfg& cfg);
TauConstruction set_product(const TauFamily& n, const TauFamily& m, const EvalCfg& cfg);
TauConstruction set_coproduct(const TauFamily& n, const TauFamily& m, const EvalCfg& cfg);
TauConstruction set_list(const TauFamily& n, const EvalCfg& cfg);
TauConstruction set_weak_exp(const TauFamily& n, const TauFamily& m, const EvalCfg& cfg);
// The equalizer of two maps j,k : tau(n) -> tau(m); the identity-code side
// carries arbitrary witnesses, so the iso is a retraction plus bi-entailment
// rather than a strict two-sided identity.
TauConstruction set_equalizer(const TauFamily& n, const TauFamily& m, const fam::FamilyMap& j,
                              const fam::FamilyMap& k, const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// Representable maps

struct Presentation {
  pca::Code code_map;    // n : B -> U_S
  fam::Family tau;       // tau_B(n)
  col::Collection total; // Sigma(B, tau_B(n))
  col::Arrow proj;       // first projection to B
  col::Arrow to;         // dom(f) -> total
  col::Arrow from;       // total -> dom(f)
};

// The canonical presentation of p1 : Sigma(B, tau_B(n)) -> B by itself.
Presentation canonical_presentation(const col::Collection& b, const pca::Code& n,
                                    const EvalCfg& cfg);

// Certifies that f is isomorphic to the presented projection in the slice.
Tri verify_presentation(const col::Arrow& f, const Presentation& pres, const EvalCfg& cfg);

struct SigmaPiRepresentable {
  TauFamily sigma;
  fam::FamilyMap sigma_to;    // families-level Sigma_{p1}(C) -> sigma code family
  fam::FamilyMap sigma_from;
  TauFamily pi;
  fam::FamilyMap pi_to;       // families-level weak Pi object -> pi code family
  fam::FamilyMap pi_from;
};
// C must be a tau-family over the presentation's total space.
SigmaPiRepresentable sigma_pi_representable(const Presentation& pres, const TauFamily& c,
                                            const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// Small propositions

struct SmallProp {
  doc::Prop prop;        // always the tau family of code_map
  pca::Code code_map;
};

SmallProp mk_small_prop(const col::Collection& a, const pca::Code& n, const EvalCfg& cfg);
SmallProp small_top(const col::Collection& a, const EvalCfg& cfg);
SmallProp small_bottom(const col::Collection& a, const EvalCfg& cfg);
SmallProp small_meet(const SmallProp& p, const SmallProp& q, const EvalCfg& cfg);
SmallProp small_join(const SmallProp& p, const SmallProp& q, const EvalCfg& cfg);
SmallProp small_imp(const SmallProp& p, const SmallProp& q, const EvalCfg& cfg);
// Quantification along a representable map presented as p1.
SmallProp small_exists(const Presentation& pres, const SmallProp& p, const EvalCfg& cfg);
SmallProp small_forall(const Presentation& pres, const SmallProp& p, const EvalCfg& cfg);

}  // namespace peff::uni

#endif
