#ifndef PEFF_COLLECTIONS_HPP
#define PEFF_COLLECTIONS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "peff/config.hpp"
#include "peff/pca.hpp"

namespace peff::col {

struct domain_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Decider;
struct FamDecider;
using DecPtr = std::shared_ptr<const Decider>;
using FamDecPtr = std::shared_ptr<const FamDecider>;

// ---------------------------------------------------------------------------
// Collection-level deciders (one argument). Every decider is closed data, so
// collections serialize, replay and compare deterministically.

struct DecAllNat {};                 // {x | x = x}
struct DecTerminal {};               // {x | x = 0}
struct DecInitial {};                // {x | false}
struct DecFinite {
  std::vector<Nat> members;          // sorted
};
struct DecProgram {
  pca::Code code;                    // {c}(x): nonzero accepts, 0 rejects
};
struct DecProduct {
  DecPtr left, right;
};
struct DecCoproduct {
  DecPtr left, right;
};
struct DecListOf {
  DecPtr elem;
};
struct DecEqualizer {
  DecPtr dom;
  pca::Code f, g;
};
struct DecWeakExp {                  // forall u in dom support: {x}(u) in cod
  std::vector<Nat> dom_support;
  DecPtr cod;
};
struct DecSigma {                    // p1(x) in base, p2(x) in fam(p1(x))
  DecPtr base;
  FamDecPtr fam;
};
struct DecUniverse {};               // member of U_S within the configured bounds
struct DecSetMembers {
  Nat code;                          // {x | x eps-bar code}
};
struct DecFlag {                     // undecided on the listed points, Out elsewhere
  std::vector<Nat> undecided;
};

struct Decider {
  std::variant<DecAllNat, DecTerminal, DecInitial, DecFinite, DecProgram, DecProduct,
               DecCoproduct, DecListOf, DecEqualizer, DecWeakExp, DecSigma, DecUniverse,
               DecSetMembers, DecFlag>
      node;
};

DecPtr dec(Decider d);

// ---------------------------------------------------------------------------
// Family-level deciders (base point and candidate member).

struct FamConst {
  DecPtr fibre;                      // same collection over every base point
};
struct FamFinite {
  std::map<Nat, std::vector<Nat>> fibres;
};
struct FamProgram {
  pca::Code code;                    // {c}(x,x') nonzero accepts
};
struct FamProduct {
  FamDecPtr left, right;
};
struct FamCoproduct {
  FamDecPtr left, right;
};
struct FamListOf {
  FamDecPtr elem;
};
struct FamEqualizer {
  FamDecPtr dom;
  pca::Code f, g;
};
struct FamWeakExp {                  // forall t in dom fibre support at x: {x'}(t) in cod(x)
  FamDecPtr dom;
  FamDecPtr cod;
};
struct FamSubst {                    // x in guard and x' in inner({f}(x))
  pca::Code f;
  DecPtr guard;
  FamDecPtr inner;
};
struct FamSigmaAlong {               // {f}(p1 x') = x and p2 x' in inner(p1 x')
  pca::Code f;
  FamDecPtr inner;
  std::vector<Nat> dom_support;      // used for fibre enumeration
};
struct FamPiAlong {                  // forall y in dom support with {f}(y) = x: {x'}(y) in inner(y)
  pca::Code f;
  FamDecPtr inner;
  std::vector<Nat> dom_support;
  DecPtr guard;                      // codomain membership of x
};
struct FamSigmaPrime {               // p1 x' in A and p2 x' in inner(pair(x, p1 x'))
  DecPtr a;
  std::vector<Nat> a_support;
  FamDecPtr inner;                   // family over base x A, points paired
};
struct FamPiPrime {                  // forall t in A support: {x'}(t) in inner(pair(x, t))
  DecPtr a;
  std::vector<Nat> a_support;
  FamDecPtr inner;
};
struct FamTau {                      // x in guard and x' eps-bar {n}(x)
  pca::Code code;
  DecPtr guard;
};
struct FamSep {                      // p1 x' = x and p2 x' in inner(x)
  FamDecPtr inner;
};
struct FamGuarded {                  // x in guard and x' in inner(x)
  DecPtr guard;
  FamDecPtr inner;
};
struct FamDepPair {                  // p1 x' in first(x), p2 x' in second({point}(x, p1 x'))
  FamDecPtr first;
  FamDecPtr second;
  pca::Code point;
};
struct FamListRel {                  // x = (a,(l1,l2)): lengths equal and the witness list
  FamDecPtr s;                       //   carries componentwise members of s at (a,(c1,c2))
};
struct FamKleeneT {};                // base (N x N) x N; witness 0 iff T(e,x,y)
struct FamOmegaEq {};                // base U_S x U_S; witness pairs of conversion codes
struct FamKRel {                     // base Sigma(A,B)^2: witness (r,s) with r realizing
  FamDecPtr rel;                     //   rel(pair(a,a')) and s realizing
  FamDecPtr s;                       //   s at (a', (sigma(a,a',r,b), b'))
  pca::Code sigma;
};

struct FamDecider {
  std::variant<FamConst, FamFinite, FamProgram, FamProduct, FamCoproduct, FamListOf,
               FamEqualizer, FamWeakExp, FamSubst, FamSigmaAlong, FamPiAlong, FamSigmaPrime,
               FamPiPrime, FamTau, FamSep, FamGuarded, FamDepPair, FamListRel, FamKleeneT,
               FamOmegaEq, FamKRel>
      node;
};

FamDecPtr fdec(FamDecider d);

// ---------------------------------------------------------------------------

struct Collection {
  std::string name;
  std::vector<Nat> support;  // every member decides In
  DecPtr decider;
};

Verdict decide(const Collection& a, const Nat& x, const EvalCfg& cfg);
Verdict decide(const DecPtr& d, const Nat& x, const EvalCfg& cfg);

// Bounded deterministic enumeration of definite members.
std::vector<Nat> enumerate_collection(const DecPtr& d, const EvalCfg& cfg);

Verdict fam_decide(const FamDecPtr& d, const Nat& x, const Nat& member, const EvalCfg& cfg);
std::vector<Nat> enumerate_fibre(const FamDecPtr& d, const Nat& x, const EvalCfg& cfg);

struct Arrow {
  pca::Code code;
  Collection dom;
  Collection cod;
};

pca::EvalResult apply_arrow(const Arrow& f, const Nat& x, const EvalCfg& cfg);
// Every support point must map to a definite member of the codomain.
Tri validate_arrow(const Arrow& f, const EvalCfg& cfg);
// The approx relation restricted to the domain support; FuelExhausted shows
// up as Indeterminate, never as a silent No.
Tri arrows_equal(const Arrow& f, const Arrow& g, const EvalCfg& cfg);

Arrow identity(const Collection& a);
Arrow compose(const Arrow& g, const Arrow& f);  // throws domain_mismatch
Arrow mk_arrow(pca::Code code, Collection dom, Collection cod, std::string = {});

struct BaseObjects {
  Collection terminal;
  Collection initial;
  Collection nat;
  Arrow zero;  // terminal -> nat
  Arrow succ;  // nat -> nat
};
BaseObjects base_objects(const EvalCfg& cfg, unsigned nat_support_size = 64);

Collection terminal_collection();
Collection initial_collection();
Collection nat_collection(unsigned support_size = 64);
Collection finite_collection(std::string name, std::vector<Nat> members);

struct ProductData {
  Collection object;
  Arrow p1, p2;
};
ProductData product(const Collection& a, const Collection& b, const EvalCfg& cfg);
// Mediator <f,g> for a product cone.
Arrow pair_arrows(const Arrow& f, const Arrow& g, const ProductData& prod);

struct EqualizerData {
  Collection object;
  Arrow inclusion;
};
EqualizerData equalizer(const Arrow& f, const Arrow& g, const EvalCfg& cfg);
// Factors h through the equalizer inclusion (h must equalize f and g).
Arrow equalizer_factor(const Arrow& h, const EqualizerData& eq);

struct CoproductData {
  Collection object;
  Arrow j1, j2;
};
CoproductData coproduct(const Collection& a, const Collection& b, const EvalCfg& cfg);
Arrow copair_arrows(const Arrow& f, const Arrow& g, const CoproductData& cop);

struct ListData {
  Collection object;
  Arrow empty;  // terminal -> List(A)
  Arrow cons;   // List(A) x A -> List(A)
  Collection base;
};
ListData list_object(const Collection& a, const EvalCfg& cfg);
// The recursion mediator listrec(f,g): P x List(A) -> B for f: P -> B and
// g: B x A -> B, built from the listrec numeral.
Arrow list_mediator(const Arrow& f, const Arrow& g, const ListData& list,
                    const Collection& p_times_list);

struct WeakExpData {
  Collection object;
  Arrow ev;  // (A => B) x A -> B
  Collection dom;
  Collection cod;
};
WeakExpData weak_exponential(const Collection& a, const Collection& b, const EvalCfg& cfg,
                             const std::vector<pca::Code>& extra_catalog = {});
// Transpose of f: C x A -> B into C -> (A => B).
Arrow weak_exp_transpose(const Arrow& f, const Collection& c, const WeakExpData& we);

// Injectivity of the code on the domain support.
Tri is_mono(const Arrow& j, const EvalCfg& cfg);

// The non-well-pointed example shape: a two-point collection whose membership
// hinges on an undecided flag; no definite points, empty support.
Collection undecided_pair_collection();

}  // namespace peff::col

#endif
