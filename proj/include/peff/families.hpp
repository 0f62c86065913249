#ifndef PEFF_FAMILIES_HPP
#define PEFF_FAMILIES_HPP

#include "peff/collections.hpp"

namespace peff::fam {

using col::Arrow;
using col::Collection;
using col::DecPtr;
using col::FamDecPtr;

struct precondition_failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An indexed collection over a base: a binary decider plus per-point fibre
// supports. Explicit fibres, when given, override the computed enumeration.
struct Family {
  Collection base;
  FamDecPtr decider;
  std::map<Nat, std::vector<Nat>> explicit_fibres;

  bool has_explicit_fibres = false;
};

Family mk_family(Collection base, FamDecPtr decider);
Family mk_family_with_fibres(Collection base, FamDecPtr decider,
                             std::map<Nat, std::vector<Nat>> fibres);

Verdict decide(const Family& f, const Nat& x, const Nat& member, const EvalCfg& cfg);
std::vector<Nat> fibre_support(const Family& f, const Nat& x, const EvalCfg& cfg);

// Operation between families over a shared base: {code}(x, x').
struct FamilyMap {
  pca::Code code;
  Family dom;
  Family cod;
};

pca::EvalResult apply_map(const FamilyMap& m, const Nat& x, const Nat& member,
                          const EvalCfg& cfg);
Tri validate_map(const FamilyMap& m, const EvalCfg& cfg);
Tri maps_equal(const FamilyMap& m, const FamilyMap& n, const EvalCfg& cfg);

FamilyMap fam_identity(const Family& f);
FamilyMap fam_compose(const FamilyMap& g, const FamilyMap& f);
FamilyMap mk_map(pca::Code code, Family dom, Family cod);

// Extensional comparison on supports: fibres enumerate to the same sets and
// the deciders agree on their union.
Tri families_equal_on_supports(const Family& f, const Family& g, const EvalCfg& cfg);

// Isomorphism witnessed by maps both ways roundtripping to the identity.
struct FamilyIso {
  FamilyMap to;
  FamilyMap from;
};
Tri validate_iso(const FamilyIso& iso, const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// Substitution and its adjoints

// Reindexing along f: the fibre over x is the fibre of c over {f}(x).
Family substitute(const Arrow& f, const Family& c);
FamilyMap substitute_map(const Arrow& f, const FamilyMap& g, const Family& dom_subst,
                         const Family& cod_subst);

// Left adjoint: fibre over x collects pairs (a, b) with {f}(a) = x, b in c(a).
Family sigma_along(const Arrow& f, const Family& c);
FamilyMap sigma_along_map(const Arrow& f, const FamilyMap& g, const Family& dom_sigma,
                          const Family& cod_sigma);

// Weak right adjoint with its evaluation map ev : subst_f(Pi_f c) -> c.
struct WeakPi {
  Family object;
  FamilyMap ev;
};
WeakPi weak_pi_along(const Arrow& f, const Family& c, const EvalCfg& cfg);
// The mediating map g' : d -> Pi_f(c) for g : subst_f(d) -> c; existence only.
FamilyMap weak_pi_transpose(const Arrow& f, const Family& d, const FamilyMap& g,
                            const Family& pi_object);

// Adjunction transposes for sigma_f -| subst_f.
FamilyMap adjoint_transpose_fwd(const Arrow& f, const FamilyMap& m, const Family& c,
                                const Family& d_subst);
FamilyMap adjoint_transpose_bwd(const Arrow& f, const FamilyMap& m, const Family& sigma_c,
                                const Family& d);

// ---------------------------------------------------------------------------
// Total objects and the slice equivalence

struct TotalSigma {
  Collection object;
  Arrow proj;  // first projection to the base
};
TotalSigma total_sigma(const Collection& a, const Family& b, const EvalCfg& cfg);

// The square filler Sigma(f,C) : Sigma(A, subst_f C) -> Sigma(B, C).
Arrow sigma_arrow(const Arrow& f, const Family& c, const Collection& dom_total,
                  const Collection& cod_total);

// J : slices to families, {x' | x' in E, {e}(x') = x}.
Family slice_to_family(const Arrow& e);
FamilyMap slice_to_family_map(const Arrow& n, const Family& je, const Family& je2);
// I : families to slices, the total-space projection.
TotalSigma family_to_slice(const Family& b, const EvalCfg& cfg);
Arrow family_to_slice_map(const FamilyMap& n, const Collection& dom_total,
                          const Collection& cod_total);

// Mediators of the two uniqueness lemmas; preconditions are checked on
// supports and raise precondition_failed.
Arrow mediator_univprod(const Arrow& f, const Arrow& g, const Family& c, const Family& d,
                        const EvalCfg& cfg);
Arrow mediator_univsig(const Arrow& g, const Arrow& h, const Arrow& f, const Family& d,
                       const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// Fibrewise finite-limit structure

Family fam_terminal(const Collection& a);
Family fam_initial(const Collection& a);

struct FamProductData {
  Family object;
  FamilyMap p1, p2;
};
FamProductData fam_product(const Family& b, const Family& c);
FamilyMap fam_pair(const FamilyMap& f, const FamilyMap& g, const Family& prod);

struct FamEqualizerData {
  Family object;
  FamilyMap inclusion;
};
FamEqualizerData fam_equalizer(const FamilyMap& f, const FamilyMap& g);

struct FamCoproductData {
  Family object;
  FamilyMap j1, j2;
};
FamCoproductData fam_coproduct(const Family& b, const Family& c);
FamilyMap fam_copair(const FamilyMap& f, const FamilyMap& g, const Family& cop);

struct FamListData {
  Family object;
  FamilyMap empty;  // from the fibrewise terminal
  FamilyMap cons;   // from List(B) x_A B
  Family base_elem;
};
FamListData fam_list(const Family& b);

struct FamWeakExpData {
  Family object;
  FamilyMap ev;  // from (B => C) x_A B
  Family dom, cod;
};
FamWeakExpData fam_weak_exp(const Family& b, const Family& c);
FamilyMap fam_weak_exp_transpose(const FamilyMap& f, const Family& d,
                                 const FamWeakExpData& we);

}  // namespace peff::fam

#endif
