#include "peff/families.hpp"

#include <algorithm>

namespace peff::fam {

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

Family mk_family(Collection base, FamDecPtr decider) {
  return Family{std::move(base), std::move(decider), {}, false};
}

Family mk_family_with_fibres(Collection base, FamDecPtr decider,
                             std::map<Nat, std::vector<Nat>> fibres) {
  return Family{std::move(base), std::move(decider), std::move(fibres), true};
}

Verdict decide(const Family& f, const Nat& x, const Nat& member, const EvalCfg& cfg) {
  return col::fam_decide(f.decider, x, member, cfg);
}

std::vector<Nat> fibre_support(const Family& f, const Nat& x, const EvalCfg& cfg) {
  if (f.has_explicit_fibres) {
    auto it = f.explicit_fibres.find(x);
    if (it != f.explicit_fibres.end()) return it->second;
  }
  return col::enumerate_fibre(f.decider, x, cfg);
}

pca::EvalResult apply_map(const FamilyMap& m, const Nat& x, const Nat& member,
                          const EvalCfg& cfg) {
  return pca::kleene_apply(m.code, {x, member}, cfg.fuel);
}

Tri validate_map(const FamilyMap& m, const EvalCfg& cfg) {
  Tri acc = Tri::Yes;
  for (const Nat& x : m.dom.base.support) {
    for (const Nat& b : fibre_support(m.dom, x, cfg)) {
      pca::EvalResult r = apply_map(m, x, b, cfg);
      if (r.kind == pca::EvalResult::Kind::FuelExhausted) {
        acc = Tri::Indeterminate;
        continue;
      }
      if (!r.is_value()) return Tri::No;
      Verdict v = decide(m.cod, x, r.value, cfg);
      if (v == Verdict::Out) return Tri::No;
      if (v == Verdict::Unknown) acc = Tri::Indeterminate;
    }
  }
  return acc;
}

Tri maps_equal(const FamilyMap& m, const FamilyMap& n, const EvalCfg& cfg) {
  Tri acc = Tri::Yes;
  for (const Nat& x : m.dom.base.support) {
    for (const Nat& b : fibre_support(m.dom, x, cfg)) {
      pca::EvalResult rm = apply_map(m, x, b, cfg);
      pca::EvalResult rn = apply_map(n, x, b, cfg);
      if (rm.kind == pca::EvalResult::Kind::FuelExhausted ||
          rn.kind == pca::EvalResult::Kind::FuelExhausted) {
        acc = Tri::Indeterminate;
        continue;
      }
      if (rm.is_value() != rn.is_value()) return Tri::No;
      if (rm.is_value() && rm.value != rn.value) return Tri::No;
    }
  }
  return acc;
}

FamilyMap fam_identity(const Family& f) {
  return FamilyMap{pca::code_of(pp::lam(pp::lam(pp::v(0)))), f, f};
}

FamilyMap fam_compose(const FamilyMap& g, const FamilyMap& f) {
  // \x.\x'. {m}(x, {n}(x, x'))
  Term body = pp::app(pp::app(pp::code_ref(g.code), pp::v(1)),
                      pp::app(pp::app(pp::code_ref(f.code), pp::v(1)), pp::v(0)));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), f.dom, g.cod};
}

FamilyMap mk_map(pca::Code code, Family dom, Family cod) {
  return FamilyMap{std::move(code), std::move(dom), std::move(cod)};
}

Tri families_equal_on_supports(const Family& f, const Family& g, const EvalCfg& cfg) {
  Tri acc = Tri::Yes;
  for (const Nat& x : f.base.support) {
    for (const Nat& b : fibre_support(f, x, cfg)) {
      Verdict v = decide(g, x, b, cfg);
      if (v == Verdict::Out) return Tri::No;
      if (v == Verdict::Unknown) acc = Tri::Indeterminate;
    }
    for (const Nat& b : fibre_support(g, x, cfg)) {
      Verdict v = decide(f, x, b, cfg);
      if (v == Verdict::Out) return Tri::No;
      if (v == Verdict::Unknown) acc = Tri::Indeterminate;
    }
  }
  return acc;
}

Tri validate_iso(const FamilyIso& iso, const EvalCfg& cfg) {
  Tri acc = tri_and(validate_map(iso.to, cfg), validate_map(iso.from, cfg));
  if (acc == Tri::No) return Tri::No;
  acc = tri_and(acc, maps_equal(fam_compose(iso.from, iso.to), fam_identity(iso.to.dom), cfg));
  acc = tri_and(acc, maps_equal(fam_compose(iso.to, iso.from), fam_identity(iso.from.dom), cfg));
  return acc;
}

// ---------------------------------------------------------------------------
// Substitution and adjoints

Family substitute(const Arrow& f, const Family& c) {
  return mk_family(f.dom, fdec({col::FamSubst{f.code, f.dom.decider, c.decider}}));
}

FamilyMap substitute_map(const Arrow& f, const FamilyMap& g, const Family& dom_subst,
                         const Family& cod_subst) {
  // \x.\x'. {k}({n}(x), x')
  Term body = pp::app(pp::app(pp::code_ref(g.code), pp::app(pp::code_ref(f.code), pp::v(1))),
                      pp::v(0));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), dom_subst, cod_subst};
}

Family sigma_along(const Arrow& f, const Family& c) {
  return mk_family(f.cod, fdec({col::FamSigmaAlong{f.code, c.decider, f.dom.support}}));
}

FamilyMap sigma_along_map(const Arrow& f, const FamilyMap& g, const Family& dom_sigma,
                          const Family& cod_sigma) {
  (void)f;
  // \x.\x'. p(p1 x', {m}(p1 x', p2 x'))
  Term body = mkpair(proj1(pp::v(0)),
                     pp::app(pp::app(pp::code_ref(g.code), proj1(pp::v(0))), proj2(pp::v(0))));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), dom_sigma, cod_sigma};
}

WeakPi weak_pi_along(const Arrow& f, const Family& c, const EvalCfg& cfg) {
  Family obj = mk_family(
      f.cod, fdec({col::FamPiAlong{f.code, c.decider, f.dom.support, f.cod.decider}}));
  // ev : subst_f(Pi) -> c over the domain of f, \x.\x'. {x'}(x)
  Family subst_pi = substitute(f, obj);
  Term body = pp::app(pp::v(0), pp::v(1));
  FamilyMap ev{pca::code_of(pp::lam(pp::lam(body))), subst_pi, c};
  (void)cfg;
  return WeakPi{obj, ev};
}

FamilyMap weak_pi_transpose(const Arrow& f, const Family& d, const FamilyMap& g,
                            const Family& pi_object) {
  (void)f;
  // g' : d -> Pi_f(c), \x.\x'.\y. {g}(y, x')
  Term body = pp::lam(pp::app(pp::app(pp::code_ref(g.code), pp::v(0)), pp::v(1)));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), d, pi_object};
}

FamilyMap adjoint_transpose_fwd(const Arrow& f, const FamilyMap& m, const Family& c,
                                const Family& d_subst) {
  // from m : Sigma_f(c) -> d over B to c -> subst_f(d) over A:
  // \x.\x'. {m}({f}(x), p(x, x'))
  Term body = pp::app(pp::app(pp::code_ref(m.code), pp::app(pp::code_ref(f.code), pp::v(1))),
                      mkpair(pp::v(1), pp::v(0)));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), c, d_subst};
}

FamilyMap adjoint_transpose_bwd(const Arrow& f, const FamilyMap& m, const Family& sigma_c,
                                const Family& d) {
  (void)f;
  // from m : c -> subst_f(d) over A to Sigma_f(c) -> d over B:
  // \x.\x'. {m}(p1 x', p2 x')
  Term body = pp::app(pp::app(pp::code_ref(m.code), proj1(pp::v(0))), proj2(pp::v(0)));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), sigma_c, d};
}

// ---------------------------------------------------------------------------
// Total objects and the slice equivalence

TotalSigma total_sigma(const Collection& a, const Family& b, const EvalCfg& cfg) {
  Collection obj;
  obj.name = "Sig(" + a.name + ")";
  obj.decider = dec({col::DecSigma{a.decider, b.decider}});
  for (const Nat& x : a.support) {
    for (const Nat& m : fibre_support(b, x, cfg)) {
      if (obj.support.size() >= cfg.support_cap) break;
      obj.support.push_back(cantor_pair(x, m));
    }
    if (obj.support.size() >= cfg.support_cap) break;
  }
  std::sort(obj.support.begin(), obj.support.end());
  Arrow proj{pca::code_of(pca::mk_builtin(pca::Builtin::Proj1)), obj, a};
  return TotalSigma{obj, proj};
}

Arrow sigma_arrow(const Arrow& f, const Family& c, const Collection& dom_total,
                  const Collection& cod_total) {
  (void)c;
  // \x. p({n}(p1 x), p2 x)
  Term body = mkpair(pp::app(pp::code_ref(f.code), proj1(pp::v(0))), proj2(pp::v(0)));
  return Arrow{pca::code_of(pp::lam(body)), dom_total, cod_total};
}

Family slice_to_family(const Arrow& e) {
  // {x' | x' in E, {e}(x') = x}: an equalizer of {e}(x') against x over the
  // constant family at E, with fibres read off the domain support
  FamDecPtr const_e = fdec({col::FamConst{e.dom.decider}});
  Code apply_e = pca::code_of(pp::lam(pp::lam(pp::app(pp::code_ref(e.code), pp::v(0)))));
  Code base_point = pca::code_of(pp::lam(pp::lam(pp::v(1))));
  FamDecPtr decider = fdec({col::FamEqualizer{const_e, apply_e, base_point}});

  std::map<Nat, std::vector<Nat>> fibres;
  EvalCfg cfg;  // fibres are read off the declared supports with defaults
  for (const Nat& x : e.cod.support) fibres[x] = {};
  for (const Nat& m : e.dom.support) {
    pca::EvalResult r = col::apply_arrow(e, m, cfg);
    if (r.is_value() && fibres.count(r.value)) fibres[r.value].push_back(m);
  }
  return mk_family_with_fibres(e.cod, decider, std::move(fibres));
}

FamilyMap slice_to_family_map(const Arrow& n, const Family& je, const Family& je2) {
  // \x.\x'. {n}(x')
  Term body = pp::app(pp::code_ref(n.code), pp::v(0));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), je, je2};
}

TotalSigma family_to_slice(const Family& b, const EvalCfg& cfg) {
  return total_sigma(b.base, b, cfg);
}

Arrow family_to_slice_map(const FamilyMap& n, const Collection& dom_total,
                          const Collection& cod_total) {
  // \x. p(p1 x, {n}(p1 x, p2 x))
  Term body = mkpair(proj1(pp::v(0)), pp::app(pp::app(pp::code_ref(n.code), proj1(pp::v(0))),
                                              proj2(pp::v(0))));
  return Arrow{pca::code_of(pp::lam(body)), dom_total, cod_total};
}

// ---------------------------------------------------------------------------
// Mediator lemmas

namespace {

void require_equal_on_support(const Arrow& f, const Arrow& g, const EvalCfg& cfg,
                              const char* what) {
  Tri t = col::arrows_equal(f, g, cfg);
  if (t == Tri::No)
    throw precondition_failed(std::string(what) + ": composites differ on support");
  if (t == Tri::Indeterminate)
    throw precondition_failed(std::string(what) + ": composites indeterminate on support");
}

}  // namespace

Arrow mediator_univprod(const Arrow& f, const Arrow& g, const Family& c, const Family& d,
                        const EvalCfg& cfg) {
  TotalSigma sc = total_sigma(c.base, c, cfg);
  TotalSigma sd = total_sigma(d.base, d, cfg);
  require_equal_on_support(col::compose(sc.proj, col::Arrow{f.code, f.dom, sc.object}),
                           col::compose(sd.proj, col::Arrow{g.code, g.dom, sd.object}), cfg,
                           "univprod");
  FamProductData prod = fam_product(c, d);
  TotalSigma spd = total_sigma(c.base, prod.object, cfg);
  // h = \x. p(p1 {f}x, p(p2 {f}x, p2 {g}x))
  Term body = mkpair(proj1(pp::app(pp::code_ref(f.code), pp::v(0))),
                     mkpair(proj2(pp::app(pp::code_ref(f.code), pp::v(0))),
                            proj2(pp::app(pp::code_ref(g.code), pp::v(0)))));
  return Arrow{pca::code_of(pp::lam(body)), f.dom, spd.object};
}

Arrow mediator_univsig(const Arrow& g, const Arrow& h, const Arrow& f, const Family& d,
                       const EvalCfg& cfg) {
  TotalSigma sd = total_sigma(d.base, d, cfg);
  require_equal_on_support(col::compose(f, h),
                           col::compose(sd.proj, col::Arrow{g.code, g.dom, sd.object}), cfg,
                           "univsig");
  Family dsub = substitute(f, d);
  TotalSigma sds = total_sigma(f.dom, dsub, cfg);
  // j = \x. p({h}x, p2 {g}x)
  Term body = mkpair(pp::app(pp::code_ref(h.code), pp::v(0)),
                     proj2(pp::app(pp::code_ref(g.code), pp::v(0))));
  return Arrow{pca::code_of(pp::lam(body)), g.dom, sds.object};
}

// ---------------------------------------------------------------------------
// Fibrewise structure

Family fam_terminal(const Collection& a) {
  return mk_family(a, fdec({col::FamGuarded{
                        a.decider, fdec({col::FamConst{dec({col::DecTerminal{}})}})}}));
}

Family fam_initial(const Collection& a) {
  return mk_family(a, fdec({col::FamConst{dec({col::DecInitial{}})}}));
}

FamProductData fam_product(const Family& b, const Family& c) {
  Family obj = mk_family(b.base, fdec({col::FamProduct{b.decider, c.decider}}));
  FamilyMap p1{pca::code_of(pp::lam(pp::lam(proj1(pp::v(0))))), obj, b};
  FamilyMap p2{pca::code_of(pp::lam(pp::lam(proj2(pp::v(0))))), obj, c};
  return FamProductData{obj, p1, p2};
}

FamilyMap fam_pair(const FamilyMap& f, const FamilyMap& g, const Family& prod) {
  Term body = mkpair(pp::app(pp::app(pp::code_ref(f.code), pp::v(1)), pp::v(0)),
                     pp::app(pp::app(pp::code_ref(g.code), pp::v(1)), pp::v(0)));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), f.dom, prod};
}

FamEqualizerData fam_equalizer(const FamilyMap& f, const FamilyMap& g) {
  Family obj =
      mk_family(f.dom.base, fdec({col::FamEqualizer{f.dom.decider, f.code, g.code}}));
  FamilyMap incl{pca::code_of(pp::lam(pp::lam(pp::v(0)))), obj, f.dom};
  return FamEqualizerData{obj, incl};
}

FamCoproductData fam_coproduct(const Family& b, const Family& c) {
  Family obj = mk_family(b.base, fdec({col::FamCoproduct{b.decider, c.decider}}));
  FamilyMap j1{pca::code_of(pp::lam(pp::lam(mkpair(pp::c(0), pp::v(0))))), b, obj};
  FamilyMap j2{pca::code_of(pp::lam(pp::lam(mkpair(pp::c(1), pp::v(0))))), c, obj};
  return FamCoproductData{obj, j1, j2};
}

FamilyMap fam_copair(const FamilyMap& f, const FamilyMap& g, const Family& cop) {
  // \x.\x'. (ite (p1 x') (\d. {f}(x, p2 x')) (\d. {g}(x, p2 x'))) 0
  Term yes = pp::lam(pp::app(pp::app(pp::code_ref(f.code), pp::v(2)), proj2(pp::v(1))));
  Term no = pp::lam(pp::app(pp::app(pp::code_ref(g.code), pp::v(2)), proj2(pp::v(1))));
  Term body =
      pp::app(pp::app(pp::app(pca::mk_builtin(pca::Builtin::Ite), proj1(pp::v(0)), yes), no),
              pp::c(0));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), cop, f.cod};
}

FamListData fam_list(const Family& b) {
  Family obj = mk_family(
      b.base, fdec({col::FamGuarded{b.base.decider, fdec({col::FamListOf{b.decider}})}}));
  FamilyMap empty{pca::code_of(pp::lam(pp::lam(pp::c(0)))), fam_terminal(b.base), obj};
  FamProductData lxb = fam_product(obj, b);
  Code cnc = pca::numeral(pca::Numeral::Cnc);
  Term body = pp::app(pp::code_ref(cnc), proj1(pp::v(0)), proj2(pp::v(0)));
  FamilyMap cons{pca::code_of(pp::lam(pp::lam(body))), lxb.object, obj};
  return FamListData{obj, empty, cons, b};
}

FamWeakExpData fam_weak_exp(const Family& b, const Family& c) {
  Family obj = mk_family(
      b.base, fdec({col::FamGuarded{b.base.decider,
                                    fdec({col::FamWeakExp{b.decider, c.decider}})}}));
  FamProductData exb = fam_product(obj, b);
  // ev = \x.\x'. {p1 x'}(p2 x')
  Term body = pp::app(proj1(pp::v(0)), proj2(pp::v(0)));
  FamilyMap ev{pca::code_of(pp::lam(pp::lam(body))), exb.object, c};
  return FamWeakExpData{obj, ev, b, c};
}

FamilyMap fam_weak_exp_transpose(const FamilyMap& f, const Family& d,
                                 const FamWeakExpData& we) {
  // \x.\x'.\t. {f}(x, p(x', t))
  Term body =
      pp::lam(pp::app(pp::app(pp::code_ref(f.code), pp::v(2)), mkpair(pp::v(1), pp::v(0))));
  return FamilyMap{pca::code_of(pp::lam(pp::lam(body))), d, we.object};
}

}  // namespace peff::fam
