#ifndef PEFF_DOCTRINE_HPP
#define PEFF_DOCTRINE_HPP

#include "peff/families.hpp"

namespace peff::doc {

// A proposition over A is a family read propositionally: x' realizes P(x).
using Prop = fam::Family;
using fam::Family;
using col::Arrow;
using col::Collection;

struct indeterminate_verdict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EntailmentWitness {
  pca::Code realizer;
  Prop from;
  Prop to;
};

// Verifies {r}(x, x') lands in the target fibre for every supported premise.
Tri check_entailment(const Prop& p, const Prop& q, const pca::Code& r, const EvalCfg& cfg);

struct SearchOptions {
  std::vector<pca::Code> hints;
  bool allow_table = true;  // fall back to a support-keyed lookup realizer
};

// Bounded search over a fixed catalog (identity, projections, pairings,
// hints) with an optional table fallback. Absence of a result is "not found
// within budget", not a refutation.
std::optional<EntailmentWitness> search_entailment(const Prop& p, const Prop& q,
                                                   const EvalCfg& cfg,
                                                   const SearchOptions& opts = {});

// Builds a realizer keyed on pair(x, x') sending each supported premise to
// some definite member of the target fibre; fails if a target fibre yields
// no candidates.
std::optional<EntailmentWitness> table_entailment(const Prop& p, const Prop& q,
                                                  const EvalCfg& cfg);

// Structural certainty that the fibre of q over x is empty.
bool fibre_definitely_empty(const Prop& q, const Nat& x, const EvalCfg& cfg);

// Definite counterexample: some supported premise point faces a certainly
// empty target fibre.
bool entailment_refuted(const Prop& p, const Prop& q, const EvalCfg& cfg);

// Both directions or nothing: the equality of the posetal reflection.
std::optional<std::pair<EntailmentWitness, EntailmentWitness>> bi_entails(
    const Prop& p, const Prop& q, const EvalCfg& cfg, const SearchOptions& opts = {});

// ---------------------------------------------------------------------------
// Heyting structure, fibrewise

enum class HeytingOp { Top, Bottom, Meet, Join, Imp };

Prop top_prop(const Collection& a);
Prop bottom_prop(const Collection& a);
Prop meet(const Prop& p, const Prop& q);
Prop join(const Prop& p, const Prop& q);
Prop imp(const Prop& p, const Prop& q);

// Residuation realizer transforms.
pca::Code curry_realizer(const pca::Code& r);    // meet(P,Q) <= R  to  P <= imp(Q,R)
pca::Code uncurry_realizer(const pca::Code& s);  // P <= imp(Q,R)  to  meet(P,Q) <= R

// ---------------------------------------------------------------------------
// Quantifiers (delegating to the indexed-category adjoints)

Prop exists_along(const Arrow& f, const Prop& p);
fam::WeakPi forall_along(const Arrow& f, const Prop& p, const EvalCfg& cfg);

// Unit/counit realizers of the adjunctions.
pca::Code exists_unit_realizer();    // P <= subst_f(exists_f P):     p(x, x')
pca::Code exists_counit_realizer();  // exists_f(subst_f Q) <= Q:     p2(x')
pca::Code forall_counit_realizer();  // subst_f(forall_f P) <= P:     {x'}(x)

// ---------------------------------------------------------------------------
// Comprehension and separation

struct Comprehension {
  Collection object;
  Arrow cmp;  // the weak comprehension arrow into the base
};
Comprehension comprehension(const Prop& p, const EvalCfg& cfg);
// Factors f through cmp given a witness that top <= subst_f(P).
Arrow comprehension_factor(const Arrow& f, const pca::Code& witness, const Comprehension& c);

Prop separate(const Prop& p);
pca::Code separate_fwd_realizer();  // P <= P_sep: p(x, x')
pca::Code separate_bwd_realizer();  // P_sep <= P: p2(x')

}  // namespace peff::doc

#endif
