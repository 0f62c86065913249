#ifndef PEFF_QUOTIENT_HPP
#define PEFF_QUOTIENT_HPP

#include "peff/lang.hpp"
#include "peff/universe.hpp"

namespace peff::quo {

using col::Arrow;
using col::Collection;
using doc::EntailmentWitness;
using doc::Prop;

struct invalid_equivalence : std::runtime_error {
  std::string law;
  invalid_equivalence(const std::string& m, std::string l)
      : std::runtime_error(m), law(std::move(l)) {}
};
struct invalid_action : std::runtime_error {
  int law;
  invalid_action(const std::string& m, int l) : std::runtime_error(m), law(l) {}
};
struct not_saturated : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invalid_family : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An object of the quotient completion: a carrier with a realized
// equivalence relation and its three law witnesses.
struct QObject {
  Collection carrier;
  Collection carrier2;  // carrier x carrier, the base of rel
  Prop rel;
  pca::Code refl, sym, trans;
};

struct QArrow {
  Arrow rep;
  pca::Code ext;  // witness for R(x,y) -> S(f x, f y)
};

// Law-checking helpers; the trans condition lives over (A x A) x A.
Prop rel_along_diagonal(const QObject& x, const EvalCfg& cfg);

// Validates/searches the three equivalence laws; names the failed law.
QObject mk_qobject(const Collection& carrier, const Prop& rel, const EvalCfg& cfg,
                   std::optional<pca::Code> refl = {}, std::optional<pca::Code> sym = {},
                   std::optional<pca::Code> trans = {});

// The discrete object (A, exists-along-diagonal of top).
QObject delta_object(const Collection& a, const EvalCfg& cfg);
QArrow delta_arrow(const Arrow& f, const QObject& dom, const QObject& cod);

// nat with the parity relation: the standard non-discrete example.
QObject parity_nat(const EvalCfg& cfg, unsigned support = 16);

QArrow mk_qarrow(const QObject& dom, const QObject& cod, const Arrow& rep, const EvalCfg& cfg,
                 std::optional<pca::Code> ext = {});
Tri validate_qarrow(const QObject& dom, const QObject& cod, const QArrow& f,
                    const EvalCfg& cfg);
// f ~ g iff R(x,x) -> S(f x, g x); search-based, with optional hints.
Tri qarrows_equal(const QObject& dom, const QObject& cod, const QArrow& f, const QArrow& g,
                  const EvalCfg& cfg, const std::vector<pca::Code>& hints = {});

QArrow q_identity(const QObject& x);
QArrow q_compose(const QObject& x, const QObject& y, const QObject& z, const QArrow& g,
                 const QArrow& f, const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// Pretopos structure

QObject q_terminal(const EvalCfg& cfg);
QObject q_initial(const EvalCfg& cfg);

struct QProduct {
  QObject object;
  QArrow p1, p2;
};
QProduct q_product(const QObject& x, const QObject& y, const EvalCfg& cfg);

struct QEqualizer {
  QObject object;
  QArrow inclusion;
};
QEqualizer q_equalizer(const QObject& x, const QObject& y, const QArrow& f, const QArrow& g,
                       const EvalCfg& cfg);

struct QCoproduct {
  QObject object;
  QArrow j1, j2;
};
// The displayed existential relation, built through the internal language.
QCoproduct q_coproduct(const QObject& x, const QObject& y, const EvalCfg& cfg);
QArrow q_copair(const QObject& x, const QObject& y, const QCoproduct& cop, const QObject& z,
                const QArrow& f, const QArrow& g, const EvalCfg& cfg);

struct QList {
  QObject object;
  QArrow empty;
  QArrow cons;
  Arrow lh;    // List(A) -> N
  Arrow comp;  // List(A) x N -> A + 1
};
// The displayed length + componentwise relation via lh and comp.
QList q_list(const QObject& x, const EvalCfg& cfg);

struct QImage {
  QObject object;   // (A, S o (f x f)): the coimage presentation
  QArrow epi;       // from the domain object
  QArrow mono;      // into the codomain object
};
QImage q_image(const QObject& x, const QObject& y, const QArrow& f, const EvalCfg& cfg);

struct QExponential {
  QObject object;  // carrier: the weak exponential, support filtered to
                   // relation-respecting codes; rel: pointwise extensional
  QArrow ev;       // from object x X
  QProduct dom_product;
};
QExponential q_exponential(const QObject& x, const QObject& y, const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// Quotients and the proposition doctrine

struct QuotientData {
  QObject object;
  QArrow canonical;
};
// rho must contain the object's relation and be an equivalence; all four
// witnesses are searched when not supplied.
QuotientData quotient_of(const QObject& x, const Prop& rho, const EvalCfg& cfg,
                         std::optional<pca::Code> contains = {});

// Membership in pEff_prop: saturation under the object's relation.
std::optional<pca::Code> saturation_witness(const Prop& p, const QObject& x,
                                            const EvalCfg& cfg);
bool definitely_not_saturated(const Prop& p, const QObject& x, const EvalCfg& cfg);
Prop qprop_subst(const QArrow& f, const Prop& p, const QObject& dom);

// ---------------------------------------------------------------------------
// The small-subobject classifier

QObject omega(const EvalCfg& cfg);

struct SmallSatProp {
  uni::SmallProp small;
  pca::Code saturation;
};
QArrow classify(const QObject& x, const SmallSatProp& p, const EvalCfg& cfg);
SmallSatProp comprehend(const QObject& x, const QArrow& chi, const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// Unique choice and Church's thesis

struct UniqueChoiceResult {
  QArrow f;
  EntailmentWitness post;
};
// witness realizes (forall x in X)(exists y in Y)(P(x,y) and
// (forall y' in Y)(P(x,y') -> S(y,y'))) over the empty context.
UniqueChoiceResult unique_choice(const QObject& x, const QObject& y, const Prop& p,
                                 const pca::Code& witness, const EvalCfg& cfg);

// Church's thesis over the discrete naturals, lifted from the base doctrine.
lang::CtResult ct_in_peff(const Prop& r, const EvalCfg& cfg,
                          std::vector<Nat> premise_realizers = {});

// ---------------------------------------------------------------------------
// Dependent families with actions

struct DepFamilyQ {
  fam::Family b;          // over the carrier
  Prop s;                 // over Sigma(A, B x B)
  fam::FamilyMap action;  // subst_{p1 p1}(B) -> subst_{p2 p1}(B) over Sigma(A x A, R)
  Collection action_base; // Sigma(A x A, R'), the action's base
};

// Validates the three dependent-equivalence laws of s and the four action
// laws; throws invalid_action with the failed law number (1..4), or
// invalid_equivalence for the s laws.
DepFamilyQ mk_dep_family(const QObject& x, const fam::Family& b, const Prop& s,
                         const pca::Code& action_code, const EvalCfg& cfg);

// Support-level check of a single action law, 1..4.
Tri check_action_law(const QObject& x, const DepFamilyQ& f, int law, const EvalCfg& cfg);

// Structure over a fixed object: enough to exercise the pretopos items.
DepFamilyQ famq_terminal(const QObject& x, const EvalCfg& cfg);
DepFamilyQ famq_product(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                        const EvalCfg& cfg);
DepFamilyQ famq_coproduct(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                          const EvalCfg& cfg);
// Equalizer of two family morphisms given by their codes.
DepFamilyQ famq_equalizer(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                          const pca::Code& m1, const pca::Code& m2, const EvalCfg& cfg);
DepFamilyQ famq_list(const QObject& x, const DepFamilyQ& f, const EvalCfg& cfg);
// Image of a family morphism: the displayed triple-witness presentation.
DepFamilyQ famq_image(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                      const pca::Code& m, const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// The K functor into the slice

struct KResult {
  QObject total;  // (Sigma(A,B), unpacked eta-relation)
  QArrow proj;    // into X
};
KResult k_functor(const QObject& x, const DepFamilyQ& f, const EvalCfg& cfg);
// K on morphisms: the total-space map of a family morphism.
QArrow k_on_morphism(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                     const pca::Code& m, const KResult& kf, const KResult& kg,
                     const EvalCfg& cfg);

struct SmallMapData {
  DepFamilyQ family;
  uni::TauFamily presentation;  // b as a tau-family
  uni::SmallProp s_small;       // s as a small proposition
};
bool is_small_map(const QObject& x, const QArrow& f, const std::optional<SmallMapData>& data,
                  const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// The embeddings of the base structure

QArrow delta_c(const Collection& a, const fam::Family& b, const EvalCfg& cfg);
std::pair<QObject, Prop> delta_p(const Collection& a, const Prop& p, const EvalCfg& cfg);

}  // namespace peff::quo

#endif
