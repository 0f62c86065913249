#ifndef PEFF_LANG_HPP
#define PEFF_LANG_HPP

#include <functional>
#include <memory>

#include "peff/doctrine.hpp"

namespace peff::lang {

using col::Arrow;
using col::Collection;
using doc::EntailmentWitness;
using doc::Prop;

struct type_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct formula_syntax_error : std::runtime_error {
  std::size_t position;
  formula_syntax_error(const std::string& m, std::size_t p) : std::runtime_error(m), position(p) {}
};
struct unknown_function : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct extraction_failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Terms and formulas in context

struct TermExpr;
using TermPtr = std::shared_ptr<const TermExpr>;
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct VarRef {
  std::string name;
};
struct PointConst {
  Arrow arrow;  // from the terminal object
  std::string shown;
};
struct ApplyFn {
  Arrow arrow;  // from a left-nested product of the argument types
  std::vector<TermPtr> args;
  std::string name;
};
struct CtxTuple {};  // the whole context value; types as ||ctx||
struct TermExpr {
  std::variant<VarRef, PointConst, ApplyFn, CtxTuple> node;
};

TermPtr t_var(std::string name);
TermPtr t_point(Arrow arrow, std::string shown = {});
TermPtr t_apply(Arrow arrow, std::vector<TermPtr> args, std::string name = {});
TermPtr t_ctx();

struct Atom {
  Prop prop;  // over the left-nested product of the argument types
  std::vector<TermPtr> args;
  std::string name;
};
struct EqF {
  Collection coll;
  TermPtr lhs, rhs;
};
struct BottomF {};
struct AndF {
  FormulaPtr l, r;
};
struct OrF {
  FormulaPtr l, r;
};
struct ImpF {
  FormulaPtr l, r;
};
struct ExistsF {
  std::string var;
  Collection coll;
  FormulaPtr body;
};
struct ForallF {
  std::string var;
  Collection coll;
  FormulaPtr body;
};
struct Formula {
  std::variant<Atom, EqF, BottomF, AndF, OrF, ImpF, ExistsF, ForallF> node;
};

FormulaPtr f_atom(Prop prop, std::vector<TermPtr> args, std::string name = {});
FormulaPtr f_eq(Collection coll, TermPtr lhs, TermPtr rhs);
FormulaPtr f_bottom();
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_imp(FormulaPtr l, FormulaPtr r);
FormulaPtr f_exists(std::string var, Collection coll, FormulaPtr body);
FormulaPtr f_forall(std::string var, Collection coll, FormulaPtr body);

struct Context {
  std::vector<std::pair<std::string, Collection>> vars;
};

// ---------------------------------------------------------------------------
// Interpretation: contexts are 1-seeded left-nested products, so the empty
// context is the terminal object and extension is always a binary product.

Collection context_collection(const Context& ctx, const EvalCfg& cfg);
// Projection arrow for a context variable.
Arrow var_projection(const Context& ctx, const std::string& name, const EvalCfg& cfg);
// The interpretation of a well-typed term: an arrow ||ctx|| -> type.
Arrow interpret_term(const TermPtr& t, const Context& ctx, const EvalCfg& cfg);
Collection term_type(const TermPtr& t, const Context& ctx);

Prop interpret(const FormulaPtr& phi, const Context& ctx, const EvalCfg& cfg);

// Validity: a realizer of top <= ||phi|| found by formula-directed synthesis
// with the doctrine's bounded search as fallback.
std::optional<EntailmentWitness> validity(const FormulaPtr& phi, const Context& ctx,
                                          const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// Parsing

// Name resolution environment for the textual syntax.
struct Env {
  std::map<std::string, Collection> collections;
  std::map<std::string, Arrow> functions;  // over left-nested products
  std::map<std::string, Prop> atoms;
};

// Grammar: 'forall'/'exists' x ':' Coll '.' phi | phi '->' phi | phi '&&' phi
// | phi '||' phi | 'Bot' | 'Eq' '(' Coll ',' t ',' t ')' | Atom '(' ts ')';
// terms are variables, decimal numerals (over N) and function applications.
FormulaPtr parse_formula(const std::string& text, const Env& env, const Context& ctx);

// The registered table for the arithmetic fragment: N with zero/succ plus
// any caller-supplied primitive recursive function arrows.
Env ha_env(const EvalCfg& cfg, unsigned nat_support = 64);

// ---------------------------------------------------------------------------
// Kleene realizability over the arithmetic fragment

// Checks n realizes phi under the standard Kleene clauses; quantifiers range
// over the nat support, implications over a bounded premise-realizer pool.
Tri ha_realize(const Nat& n, const FormulaPtr& phi, const EvalCfg& cfg,
               unsigned nat_support = 16);

// Converts a verified Kleene realizer into a validity witness for phi over
// the empty context, via formula-directed conversion programs.
EntailmentWitness bridge(const Nat& n, const FormulaPtr& phi, const EvalCfg& cfg);

// ---------------------------------------------------------------------------
// The realized choice principles

struct CtResult {
  EntailmentWitness witness;    // premise <= conclusion over the terminal base
  Prop premise;                 // with its fibre seeded by the premise realizers
  Prop conclusion;
  std::vector<Nat> programs;    // the extracted program codes, one per premise realizer
};
// R ranges over N x N read as R(x, z). Premise realizers may be supplied;
// otherwise validity synthesis must find one.
CtResult ct_realizer(const Prop& r, const EvalCfg& cfg,
                     std::vector<Nat> premise_realizers = {});

struct AcResult {
  EntailmentWitness witness;
  Prop premise;
  Prop conclusion;
};
// R over A x B; the conclusion quantifies over the weak exponential.
AcResult ac_realizer(const Collection& a, const Collection& b, const Prop& r,
                     const EvalCfg& cfg, std::vector<Nat> premise_realizers = {});

struct ChoiceResult {
  Arrow f;                      // ||ctx|| x A -> B
  EntailmentWitness post;       // witness for forall x in A. R(.., x, f(.., x))
};
// witness realizes (forall x in A)(exists y in B) R(ctx-vars, x, y) [ctx];
// extraction is the first projection of the witness computation, and the
// result is post-verified on supports.
ChoiceResult choice_extract(const Context& ctx, const Collection& a, const Collection& b,
                            const Prop& r, const pca::Code& witness, const EvalCfg& cfg);

// The Kleene-T atom over (N x N) x N used by the Church's-thesis formula.
Prop kleene_t_atom(const EvalCfg& cfg, unsigned nat_support = 64);

}  // namespace peff::lang

#endif
