#include "peff/doctrine.hpp"

namespace peff::doc {

using col::dec;
using col::fdec;
using pca::Code;
using pca::Term;
namespace pp = pca::prog;

namespace {

Term proj1(Term t) { return pp::app(pca::mk_builtin(pca::Builtin::Proj1), std::move(t)); }
Term proj2(Term t) { return pp::app(pca::mk_builtin(pca::Builtin::Proj2), std::move(t)); }
Term mkpair(Term a, Term b) {
  return pp::app(pca::mk_builtin(pca::Builtin::Pair), std::move(a), std::move(b));
}

}  // namespace

Tri check_entailment(const Prop& p, const Prop& q, const pca::Code& r, const EvalCfg& cfg) {
  Tri acc = Tri::Yes;
  for (const Nat& x : p.base.support) {
    for (const Nat& w : fam::fibre_support(p, x, cfg)) {
      pca::EvalResult res = pca::kleene_apply(r, {x, w}, cfg.fuel);
      if (res.kind == pca::EvalResult::Kind::FuelExhausted) {
        acc = Tri::Indeterminate;
        continue;
      }
      if (!res.is_value()) return Tri::No;
      Verdict v = fam::decide(q, x, res.value, cfg);
      if (v == Verdict::Out) return Tri::No;
      if (v == Verdict::Unknown) acc = Tri::Indeterminate;
    }
  }
  return acc;
}

std::optional<EntailmentWitness> table_entailment(const Prop& p, const Prop& q,
                                                  const EvalCfg& cfg) {
  std::vector<std::pair<Nat, Nat>> entries;
  for (const Nat& x : p.base.support) {
    for (const Nat& w : fam::fibre_support(p, x, cfg)) {
      std::optional<Nat> target;
      for (const Nat& cand : fam::fibre_support(q, x, cfg)) {
        if (fam::decide(q, x, cand, cfg) == Verdict::In) {
          target = cand;
          break;
        }
      }
      if (!target) return std::nullopt;
      entries.emplace_back(cantor_pair(x, w), *target);
    }
  }
  Code table = pp::lookup_table(entries, Nat(0));
  // \x.\x'. {table}(p(x, x'))
  Code realizer =
      pca::code_of(pp::lam(pp::lam(pp::app(pp::code_ref(table), mkpair(pp::v(1), pp::v(0))))));
  if (check_entailment(p, q, realizer, cfg) != Tri::Yes) return std::nullopt;
  return EntailmentWitness{realizer, p, q};
}

std::optional<EntailmentWitness> search_entailment(const Prop& p, const Prop& q,
                                                   const EvalCfg& cfg,
                                                   const SearchOptions& opts) {
  std::vector<Code> catalog;
  for (const Code& h : opts.hints) catalog.push_back(h);
  // \x.\x'. x'
  catalog.push_back(pca::code_of(pp::lam(pp::lam(pp::v(0)))));
  // projections of the witness
  catalog.push_back(pca::code_of(pp::lam(pp::lam(proj1(pp::v(0))))));
  catalog.push_back(pca::code_of(pp::lam(pp::lam(proj2(pp::v(0))))));
  // constant zero
  catalog.push_back(pca::code_of(pp::lam(pp::lam(pp::c(0)))));
  // pairings
  catalog.push_back(pca::code_of(pp::lam(pp::lam(mkpair(pp::v(0), pp::v(0))))));
  catalog.push_back(pca::code_of(pp::lam(pp::lam(mkpair(pp::v(1), pp::v(0))))));
  catalog.push_back(pca::code_of(pp::lam(pp::lam(mkpair(pp::v(0), pp::c(0))))));
  catalog.push_back(pca::code_of(pp::lam(pp::lam(mkpair(pp::c(0), pp::v(0))))));
  // swap a paired witness
  catalog.push_back(pca::code_of(pp::lam(pp::lam(mkpair(proj2(pp::v(0)), proj1(pp::v(0)))))));

  for (const Code& r : catalog)
    if (check_entailment(p, q, r, cfg) == Tri::Yes) return EntailmentWitness{r, p, q};
  if (opts.allow_table) return table_entailment(p, q, cfg);
  return std::nullopt;
}

bool fibre_definitely_empty(const Prop& q, const Nat& x, const EvalCfg& cfg) {
  const col::FamDecider& d = *q.decider;
  if (auto* fin = std::get_if<col::FamFinite>(&d.node)) {
    auto it = fin->fibres.find(x);
    return it == fin->fibres.end() || it->second.empty();
  }
  if (auto* c = std::get_if<col::FamConst>(&d.node)) {
    if (std::holds_alternative<col::DecInitial>(c->fibre->node)) return true;
    if (auto* f = std::get_if<col::DecFinite>(&c->fibre->node)) return f->members.empty();
    return false;
  }
  if (auto* g = std::get_if<col::FamGuarded>(&d.node)) {
    if (col::decide(g->guard, x, cfg) == Verdict::Out) return true;
    Prop inner = fam::mk_family(q.base, g->inner);
    return fibre_definitely_empty(inner, x, cfg);
  }
  if (auto* s = std::get_if<col::FamSep>(&d.node)) {
    Prop inner = fam::mk_family(q.base, s->inner);
    return fibre_definitely_empty(inner, x, cfg);
  }
  if (auto* pr = std::get_if<col::FamProduct>(&d.node)) {
    Prop l = fam::mk_family(q.base, pr->left), r = fam::mk_family(q.base, pr->right);
    return fibre_definitely_empty(l, x, cfg) || fibre_definitely_empty(r, x, cfg);
  }
  if (auto* cp = std::get_if<col::FamCoproduct>(&d.node)) {
    Prop l = fam::mk_family(q.base, cp->left), r = fam::mk_family(q.base, cp->right);
    return fibre_definitely_empty(l, x, cfg) && fibre_definitely_empty(r, x, cfg);
  }
  return false;
}

bool entailment_refuted(const Prop& p, const Prop& q, const EvalCfg& cfg) {
  for (const Nat& x : p.base.support) {
    if (!fibre_definitely_empty(q, x, cfg)) continue;
    for (const Nat& w : fam::fibre_support(p, x, cfg))
      if (fam::decide(p, x, w, cfg) == Verdict::In) return true;
  }
  return false;
}

std::optional<std::pair<EntailmentWitness, EntailmentWitness>> bi_entails(
    const Prop& p, const Prop& q, const EvalCfg& cfg, const SearchOptions& opts) {
  auto fwd = search_entailment(p, q, cfg, opts);
  if (!fwd) return std::nullopt;
  auto bwd = search_entailment(q, p, cfg, opts);
  if (!bwd) return std::nullopt;
  return std::make_pair(*fwd, *bwd);
}

// ---------------------------------------------------------------------------

Prop top_prop(const Collection& a) { return fam::fam_terminal(a); }
Prop bottom_prop(const Collection& a) { return fam::fam_initial(a); }
Prop meet(const Prop& p, const Prop& q) { return fam::fam_product(p, q).object; }
Prop join(const Prop& p, const Prop& q) { return fam::fam_coproduct(p, q).object; }
Prop imp(const Prop& p, const Prop& q) { return fam::fam_weak_exp(p, q).object; }

pca::Code curry_realizer(const pca::Code& r) {
  // \x.\x'.\t. {r}(x, p(x', t))
  Term body = pp::lam(pp::app(pp::app(pp::code_ref(r), pp::v(2)), mkpair(pp::v(1), pp::v(0))));
  return pca::code_of(pp::lam(pp::lam(body)));
}

pca::Code uncurry_realizer(const pca::Code& s) {
  // \x.\w. {{s}(x, p1 w)}(p2 w)
  Term body = pp::app(pp::app(pp::app(pp::code_ref(s), pp::v(1)), proj1(pp::v(0))),
                      proj2(pp::v(0)));
  return pca::code_of(pp::lam(pp::lam(body)));
}

Prop exists_along(const Arrow& f, const Prop& p) { return fam::sigma_along(f, p); }

fam::WeakPi forall_along(const Arrow& f, const Prop& p, const EvalCfg& cfg) {
  return fam::weak_pi_along(f, p, cfg);
}

pca::Code exists_unit_realizer() {
  return pca::code_of(pp::lam(pp::lam(mkpair(pp::v(1), pp::v(0)))));
}
pca::Code exists_counit_realizer() {
  return pca::code_of(pp::lam(pp::lam(proj2(pp::v(0)))));
}
pca::Code forall_counit_realizer() {
  return pca::code_of(pp::lam(pp::lam(pp::app(pp::v(0), pp::v(1)))));
}

// ---------------------------------------------------------------------------

Comprehension comprehension(const Prop& p, const EvalCfg& cfg) {
  fam::TotalSigma ts = fam::total_sigma(p.base, p, cfg);
  return Comprehension{ts.object, ts.proj};
}

Arrow comprehension_factor(const Arrow& f, const pca::Code& witness, const Comprehension& c) {
  // \x. p({f}(x), {w}(x, 0))
  Term body = mkpair(pp::app(pp::code_ref(f.code), pp::v(0)),
                     pp::app(pp::app(pp::code_ref(witness), pp::v(0)), pp::c(0)));
  return Arrow{pca::code_of(pp::lam(body)), f.dom, c.object};
}

Prop separate(const Prop& p) { return fam::mk_family(p.base, fdec({col::FamSep{p.decider}})); }

pca::Code separate_fwd_realizer() {
  return pca::code_of(pp::lam(pp::lam(mkpair(pp::v(1), pp::v(0)))));
}
pca::Code separate_bwd_realizer() {
  return pca::code_of(pp::lam(pp::lam(proj2(pp::v(0)))));
}

}  // namespace peff::doc
