#include "peff/quotient.hpp"

#include <algorithm>

namespace peff::quo {

using col::dec;
using col::fdec;
using col::FamDecPtr;
using fam::Family;
using pca::Code;
using pca::Term;
namespace pp = pca::prog;

namespace {

Term proj1(Term t) { return pp::app(pca::mk_builtin(pca::Builtin::Proj1), std::move(t)); }
Term proj2(Term t) { return pp::app(pca::mk_builtin(pca::Builtin::Proj2), std::move(t)); }
Term mkpair(Term a, Term b) {
  return pp::app(pca::mk_builtin(pca::Builtin::Pair), std::move(a), std::move(b));
}
Term cr(const Code& c) { return pp::code_ref(c); }

Arrow diag_arrow(const Collection& a, const Collection& axa) {
  return Arrow{pca::code_of(pp::lam(mkpair(pp::v(0), pp::v(0)))), a, axa};
}

Arrow twist_arrow(const Collection& axa) {
  return Arrow{pca::code_of(pp::lam(mkpair(proj2(pp::v(0)), proj1(pp::v(0))))), axa, axa};
}

// projections of ((x,y),z) onto the three sides of the transitivity triangle
Arrow pr12_arrow(const Collection& t, const Collection& axa) {
  return Arrow{pca::code_of(pp::lam(proj1(pp::v(0)))), t, axa};
}
Arrow pr23_arrow(const Collection& t, const Collection& axa) {
  return Arrow{pca::code_of(pp::lam(mkpair(proj2(proj1(pp::v(0))), proj2(pp::v(0))))), t, axa};
}
Arrow pr13_arrow(const Collection& t, const Collection& axa) {
  return Arrow{pca::code_of(pp::lam(mkpair(proj1(proj1(pp::v(0))), proj2(pp::v(0))))), t, axa};
}

pca::Code find_law_witness(const Prop& from, const Prop& to, const EvalCfg& cfg,
                           std::optional<pca::Code> hint, const char* law) {
  doc::SearchOptions opts;
  if (hint) opts.hints.push_back(*hint);
  auto w = doc::search_entailment(from, to, cfg, opts);
  if (!w) {
    std::string reason = doc::entailment_refuted(from, to, cfg)
                             ? "refuted on supports"
                             : "no witness found within budget";
    throw invalid_equivalence(std::string("equivalence law '") + law + "' failed: " + reason,
                              law);
  }
  return w->realizer;
}

}  // namespace

Prop rel_along_diagonal(const QObject& x, const EvalCfg& cfg) {
  (void)cfg;
  return fam::substitute(diag_arrow(x.carrier, x.carrier2), x.rel);
}

QObject mk_qobject(const Collection& carrier, const Prop& rel, const EvalCfg& cfg,
                   std::optional<pca::Code> refl, std::optional<pca::Code> sym,
                   std::optional<pca::Code> trans) {
  Collection axa = col::product(carrier, carrier, cfg).object;
  QObject out{carrier, axa, rel, {}, {}, {}};

  Prop top = doc::top_prop(carrier);
  Prop rel_diag = fam::substitute(diag_arrow(carrier, axa), rel);
  out.refl = find_law_witness(top, rel_diag, cfg, refl, "refl");

  Prop rel_twist = fam::substitute(twist_arrow(axa), rel);
  out.sym = find_law_witness(rel, rel_twist, cfg, sym, "sym");

  Collection t = col::product(axa, carrier, cfg).object;
  Prop r12 = fam::substitute(pr12_arrow(t, axa), rel);
  Prop r23 = fam::substitute(pr23_arrow(t, axa), rel);
  Prop r13 = fam::substitute(pr13_arrow(t, axa), rel);
  out.trans = find_law_witness(doc::meet(r12, r23), r13, cfg, trans, "trans");
  return out;
}

QObject delta_object(const Collection& a, const EvalCfg& cfg) {
  Collection axa = col::product(a, a, cfg).object;
  Arrow diag = diag_arrow(a, axa);
  Prop rel = fam::sigma_along(diag, fam::fam_terminal(a));
  Code refl = pca::code_of(pp::lam(pp::lam(mkpair(pp::v(1), pp::c(0)))));
  Code sym = pca::code_of(pp::lam(pp::lam(pp::v(0))));
  Code trans = pca::code_of(pp::lam(pp::lam(proj1(pp::v(0)))));
  return mk_qobject(a, rel, cfg, refl, sym, trans);
}

QArrow delta_arrow(const Arrow& f, const QObject& dom, const QObject& cod) {
  (void)dom;
  (void)cod;
  // on the diagonal a realizer is p(a, 0); transport it through f
  Code ext = pca::code_of(
      pp::lam(pp::lam(mkpair(pp::app(cr(f.code), proj1(pp::v(0))), pp::c(0)))));
  return QArrow{f, ext};
}

QObject parity_nat(const EvalCfg& cfg, unsigned support) {
  Collection n = col::nat_collection(support);
  Collection axa = col::product(n, n, cfg).object;
  // mod2 via the recursor: flips an accumulator
  Code rec = pca::numeral(pca::Numeral::Rec);
  Term flip = pp::lam(pp::lam(pp::app(
      pp::app(pp::app(pca::mk_builtin(pca::Builtin::Ite), pp::v(0)), pp::c(1)), pp::c(0))));
  Code mod2 = pca::code_of(pp::lam(pp::app(cr(rec), pp::c(0), flip, pp::v(0))));
  Code f = pca::code_of(pp::lam(pp::lam(pp::app(cr(mod2), proj1(pp::v(1))))));
  Code g = pca::code_of(pp::lam(pp::lam(pp::app(cr(mod2), proj2(pp::v(1))))));
  auto domfam = fdec({col::FamGuarded{
      axa.decider, fdec({col::FamConst{dec({col::DecTerminal{}})}})}});
  Prop rel = fam::mk_family(axa, fdec({col::FamEqualizer{domfam, f, g}}));
  Code zero = pca::code_of(pp::lam(pp::lam(pp::c(0))));
  return mk_qobject(n, rel, cfg, zero, zero, zero);
}

QArrow mk_qarrow(const QObject& dom, const QObject& cod, const Arrow& rep, const EvalCfg& cfg,
                 std::optional<pca::Code> ext) {
  // R <= S o (f x f)
  Term fxf = mkpair(pp::app(cr(rep.code), proj1(pp::v(0))),
                    pp::app(cr(rep.code), proj2(pp::v(0))));
  Arrow pairmap{pca::code_of(pp::lam(fxf)), dom.carrier2, cod.carrier2};
  Prop target = fam::substitute(pairmap, cod.rel);
  doc::SearchOptions opts;
  if (ext) opts.hints.push_back(*ext);
  auto w = doc::search_entailment(dom.rel, target, cfg, opts);
  if (!w)
    throw invalid_equivalence("arrow extensionality witness not found", "ext");
  return QArrow{rep, w->realizer};
}

Tri validate_qarrow(const QObject& dom, const QObject& cod, const QArrow& f,
                    const EvalCfg& cfg) {
  Tri arrow_ok = col::validate_arrow(f.rep, cfg);
  Term fxf = mkpair(pp::app(cr(f.rep.code), proj1(pp::v(0))),
                    pp::app(cr(f.rep.code), proj2(pp::v(0))));
  Arrow pairmap{pca::code_of(pp::lam(fxf)), dom.carrier2, cod.carrier2};
  Prop target = fam::substitute(pairmap, cod.rel);
  return tri_and(arrow_ok, doc::check_entailment(dom.rel, target, f.ext, cfg));
}

Tri qarrows_equal(const QObject& dom, const QObject& cod, const QArrow& f, const QArrow& g,
                  const EvalCfg& cfg, const std::vector<pca::Code>& hints) {
  // R(x,x) -> S(f x, g x), as props over the carrier
  Prop lhs = rel_along_diagonal(dom, cfg);
  Term fg = mkpair(pp::app(cr(f.rep.code), pp::v(0)), pp::app(cr(g.rep.code), pp::v(0)));
  Arrow pairmap{pca::code_of(pp::lam(fg)), dom.carrier, cod.carrier2};
  Prop rhs = fam::substitute(pairmap, cod.rel);
  doc::SearchOptions opts;
  opts.hints = hints;
  if (doc::search_entailment(lhs, rhs, cfg, opts)) return Tri::Yes;
  if (doc::entailment_refuted(lhs, rhs, cfg)) return Tri::No;
  return Tri::Indeterminate;
}

QArrow q_identity(const QObject& x) {
  return QArrow{col::identity(x.carrier), pca::code_of(pp::lam(pp::lam(pp::v(0))))};
}

QArrow q_compose(const QObject& x, const QObject& y, const QObject& z, const QArrow& g,
                 const QArrow& f, const EvalCfg& cfg) {
  (void)y;
  (void)z;
  (void)cfg;
  Arrow rep = col::compose(g.rep, f.rep);
  rep.dom = x.carrier;
  // chain the two extensionality witnesses
  Term fxf = mkpair(pp::app(cr(f.rep.code), proj1(pp::v(1))),
                    pp::app(cr(f.rep.code), proj2(pp::v(1))));
  Term ext = pp::app(pp::app(cr(g.ext), fxf),
                     pp::app(pp::app(cr(f.ext), pp::v(1)), pp::v(0)));
  return QArrow{rep, pca::code_of(pp::lam(pp::lam(ext)))};
}

// ---------------------------------------------------------------------------
// Pretopos structure

QObject q_terminal(const EvalCfg& cfg) { return delta_object(col::terminal_collection(), cfg); }
QObject q_initial(const EvalCfg& cfg) { return delta_object(col::initial_collection(), cfg); }

QProduct q_product(const QObject& x, const QObject& y, const EvalCfg& cfg) {
  auto prod = col::product(x.carrier, y.carrier, cfg);
  Collection pp2 = col::product(prod.object, prod.object, cfg).object;
  // componentwise relation
  Term m1 = mkpair(proj1(proj1(pp::v(0))), proj1(proj2(pp::v(0))));
  Term m2 = mkpair(proj2(proj1(pp::v(0))), proj2(proj2(pp::v(0))));
  Arrow a1{pca::code_of(pp::lam(m1)), pp2, x.carrier2};
  Arrow a2{pca::code_of(pp::lam(m2)), pp2, y.carrier2};
  Prop rel = doc::meet(fam::substitute(a1, x.rel), fam::substitute(a2, y.rel));

  Code refl = pca::code_of(pp::lam(pp::lam(mkpair(
      pp::app(pp::app(cr(x.refl), proj1(pp::v(1))), pp::v(0)),
      pp::app(pp::app(cr(y.refl), proj2(pp::v(1))), pp::v(0))))));
  Term sbase1 = mkpair(proj1(proj1(pp::v(1))), proj1(proj2(pp::v(1))));
  Term sbase2 = mkpair(proj2(proj1(pp::v(1))), proj2(proj2(pp::v(1))));
  Code sym = pca::code_of(pp::lam(pp::lam(mkpair(
      pp::app(pp::app(cr(x.sym), sbase1), proj1(pp::v(0))),
      pp::app(pp::app(cr(y.sym), sbase2), proj2(pp::v(0)))))));
  // t = ((z,z'),z''): components for the two transitivity calls
  Term tx = mkpair(mkpair(proj1(proj1(proj1(pp::v(1)))), proj1(proj2(proj1(pp::v(1))))),
                   proj1(proj2(pp::v(1))));
  Term ty = mkpair(mkpair(proj2(proj1(proj1(pp::v(1)))), proj2(proj2(proj1(pp::v(1))))),
                   proj2(proj2(pp::v(1))));
  Term wx = mkpair(proj1(proj1(pp::v(0))), proj1(proj2(pp::v(0))));
  Term wy = mkpair(proj2(proj1(pp::v(0))), proj2(proj2(pp::v(0))));
  Code trans = pca::code_of(pp::lam(pp::lam(mkpair(
      pp::app(pp::app(cr(x.trans), tx), wx), pp::app(pp::app(cr(y.trans), ty), wy)))));

  QObject obj = mk_qobject(prod.object, rel, cfg, refl, sym, trans);
  QArrow q1{prod.p1, pca::code_of(pp::lam(pp::lam(proj1(pp::v(0)))))};
  QArrow q2{prod.p2, pca::code_of(pp::lam(pp::lam(proj2(pp::v(0)))))};
  return QProduct{obj, q1, q2};
}

QEqualizer q_equalizer(const QObject& x, const QObject& y, const QArrow& f, const QArrow& g,
                       const EvalCfg& cfg) {
  Arrow fg{pp::pair_of(f.rep.code, g.rep.code), x.carrier, y.carrier2};
  Prop p = fam::substitute(fg, y.rel);
  fam::TotalSigma e = fam::total_sigma(x.carrier, p, cfg);
  Collection e2 = col::product(e.object, e.object, cfg).object;
  Term first = mkpair(proj1(proj1(pp::v(0))), proj1(proj2(pp::v(0))));
  Arrow firsts{pca::code_of(pp::lam(first)), e2, x.carrier2};
  Prop rel = fam::substitute(firsts, x.rel);

  Code refl = pca::code_of(
      pp::lam(pp::lam(pp::app(pp::app(cr(x.refl), proj1(pp::v(1))), pp::v(0)))));
  Term sbase = mkpair(proj1(proj1(pp::v(1))), proj1(proj2(pp::v(1))));
  Code sym = pca::code_of(pp::lam(pp::lam(pp::app(pp::app(cr(x.sym), sbase), pp::v(0)))));
  Term tbase = mkpair(mkpair(proj1(proj1(proj1(pp::v(1)))), proj1(proj2(proj1(pp::v(1))))),
                      proj1(proj2(pp::v(1))));
  Code trans = pca::code_of(pp::lam(pp::lam(pp::app(pp::app(cr(x.trans), tbase), pp::v(0)))));
  QObject obj = mk_qobject(e.object, rel, cfg, refl, sym, trans);
  QArrow incl{e.proj, pca::code_of(pp::lam(pp::lam(pp::v(0))))};
  return QEqualizer{obj, incl};
}

namespace {

// rebases a prop interpreted over 1 x C back to C
Prop rebase(const Prop& p, const Collection& c) {
  Arrow seam{pca::code_of(pp::lam(mkpair(pp::c(0), pp::v(0)))), c, p.base};
  return fam::substitute(seam, p);
}

Arrow proj_arrow(const Collection& dom, const Collection& cod, bool second) {
  return Arrow{pca::code_of(pca::mk_builtin(second ? pca::Builtin::Proj2
                                                   : pca::Builtin::Proj1)),
               dom, cod};
}

}  // namespace

QCoproduct q_coproduct(const QObject& x, const QObject& y, const EvalCfg& cfg) {
  auto cop = col::coproduct(x.carrier, y.carrier, cfg);
  Collection c2 = col::product(cop.object, cop.object, cfg).object;

  // the displayed relation, through the internal language over [z : (A+B)^2]
  lang::Context ctx{{{"z", c2}}};
  using lang::f_and;
  using lang::f_atom;
  using lang::f_eq;
  using lang::f_exists;
  using lang::f_or;
  using lang::t_apply;
  using lang::t_var;
  auto pr1 = proj_arrow(c2, cop.object, false);
  auto pr2 = proj_arrow(c2, cop.object, true);
  auto side = [&](const QObject& o, const Arrow& inj) {
    return f_exists(
        "t", o.carrier,
        f_exists("s", o.carrier,
                 f_and(f_and(f_atom(o.rel, {t_var("t"), t_var("s")}, "R"),
                             f_eq(cop.object, t_apply(pr1, {t_var("z")}, "p1"),
                                  t_apply(inj, {t_var("t")}, "j"))),
                       f_eq(cop.object, t_apply(pr2, {t_var("z")}, "p2"),
                            t_apply(inj, {t_var("s")}, "j")))));
  };
  lang::FormulaPtr formula = f_or(side(x, cop.j1), side(y, cop.j2));
  Prop rel = rebase(lang::interpret(formula, ctx, cfg), c2);

  QObject obj = mk_qobject(cop.object, rel, cfg);
  QArrow qj1 = mk_qarrow(x, obj, cop.j1, cfg);
  QArrow qj2 = mk_qarrow(y, obj, cop.j2, cfg);
  return QCoproduct{obj, qj1, qj2};
}

QArrow q_copair(const QObject& x, const QObject& y, const QCoproduct& cop, const QObject& z,
                const QArrow& f, const QArrow& g, const EvalCfg& cfg) {
  (void)x;
  (void)y;
  col::CoproductData raw{cop.object.carrier, cop.j1.rep, cop.j2.rep};
  Arrow rep = col::copair_arrows(f.rep, g.rep, raw);
  rep.cod = z.carrier;
  return mk_qarrow(cop.object, z, rep, cfg);
}

QList q_list(const QObject& x, const EvalCfg& cfg) {
  auto list = col::list_object(x.carrier, cfg);
  Collection l2 = col::product(list.object, list.object, cfg).object;
  Collection n = col::nat_collection(cfg.list_cap + 2);
  auto aplus1 = col::coproduct(x.carrier, col::terminal_collection(), cfg);

  // lh via the list recursor
  Code lr = pca::numeral(pca::Numeral::Listrec);
  Term count_step = pp::lam(pp::lam(pp::lam(pp::app(pca::mk_builtin(pca::Builtin::Succ), pp::v(0)))));
  Arrow lh{pca::code_of(pp::lam(pp::app(cr(lr), pp::c(0), count_step, pp::v(0)))), list.object,
           n};

  // comp : List(A) x N -> A + 1 by structural recursion on the list
  Code eq = pp::eqnat();
  auto pd = [](Term t) { return pp::app(pca::mk_builtin(pca::Builtin::Pred), std::move(t)); };
  auto z0 = [](Term t) { return pp::app(pca::mk_builtin(pca::Builtin::Eq0), std::move(t)); };
  // fix \C.\z. if p1 z = 0 then (1,0)
  //            else if p2 z = lh(p1 z - 1 first comp) then (0, last)
  //            else C(p(prefix, n))
  // depths in body: C=1, z=0; thunks shift by one each
  Term prefix1 = proj1(pd(proj1(pp::v(1))));   // at depth +1
  Term last1 = proj2(pd(proj1(pp::v(1))));
  Term n1 = proj2(pp::v(1));
  Term prefix2 = proj1(pd(proj1(pp::v(2))));   // at depth +2
  Term n2 = proj2(pp::v(2));
  Term inner =
      pp::app(pp::app(pp::app(pca::mk_builtin(pca::Builtin::Ite),
                              pp::app(cr(eq), n1, pp::app(cr(lh.code), prefix1)),
                              pp::lam(mkpair(pp::c(0), proj2(pd(proj1(pp::v(2))))))),
                      pp::lam(pp::app(pp::v(3), mkpair(prefix2, n2)))),
              pp::c(0));
  Term body = pp::app(pp::app(pp::app(pca::mk_builtin(pca::Builtin::Ite), z0(proj1(pp::v(0))),
                                      pp::lam(mkpair(pp::c(1), pp::c(0)))),
                              pp::lam(inner)),
                      pp::c(0));
  Term comp_fix = pp::app(pca::mk_builtin(pca::Builtin::Fix), pp::lam(pp::lam(body)));
  Arrow comp{pca::code_of(pp::lam(pp::app(comp_fix, pp::v(0)))),
             col::product(list.object, n, cfg).object, aplus1.object};

  // the displayed relation over [z : List(A)^2]
  lang::Context ctx{{{"z", l2}}};
  using namespace lang;
  auto prl1 = proj_arrow(l2, list.object, false);
  auto prl2 = proj_arrow(l2, list.object, true);
  Arrow j2z = aplus1.j2;
  TermPtr zero_pt =
      t_point(Arrow{pp::constant(0), col::terminal_collection(), col::terminal_collection()},
              "0");
  auto compof = [&](const Arrow& side) {
    return t_apply(comp, {t_apply(side, {t_var("z")}, "p"), t_var("n")}, "comp");
  };
  FormulaPtr related = f_exists(
      "a", x.carrier,
      f_exists("b", x.carrier,
               f_and(f_and(f_atom(x.rel, {t_var("a"), t_var("b")}, "R"),
                           f_eq(aplus1.object, t_apply(aplus1.j1, {t_var("a")}, "j1"),
                                compof(prl1))),
                     f_eq(aplus1.object, t_apply(aplus1.j1, {t_var("b")}, "j1"),
                          compof(prl2)))));
  FormulaPtr past_end = f_and(
      f_eq(aplus1.object, compof(prl1), t_apply(j2z, {zero_pt}, "j2")),
      f_eq(aplus1.object, compof(prl2), t_apply(j2z, {zero_pt}, "j2")));
  FormulaPtr formula =
      f_and(f_eq(n, t_apply(lh, {t_apply(prl1, {t_var("z")}, "p1")}, "lh"),
                 t_apply(lh, {t_apply(prl2, {t_var("z")}, "p2")}, "lh")),
            f_forall("n", n, f_or(related, past_end)));
  lang::Env env;  // numerals unused; the formula is built directly
  (void)env;
  Prop rel = rebase(lang::interpret(formula, ctx, cfg), l2);

  QObject obj = mk_qobject(list.object, rel, cfg);
  QArrow empty = mk_qarrow(q_terminal(cfg), obj, list.empty, cfg);
  // cons respects the relations; search the witness over the product object
  QList out{obj, empty, QArrow{}, lh, comp};
  QProduct lxa = q_product(obj, x, cfg);
  Arrow cons_rep = list.cons;
  cons_rep.dom = lxa.object.carrier;
  out.cons = mk_qarrow(lxa.object, obj, cons_rep, cfg);
  return out;
}

QImage q_image(const QObject& x, const QObject& y, const QArrow& f, const EvalCfg& cfg) {
  // the coimage presentation: (A, S o (f x f))
  Term fxf = mkpair(pp::app(cr(f.rep.code), proj1(pp::v(0))),
                    pp::app(cr(f.rep.code), proj2(pp::v(0))));
  Arrow pairmap{pca::code_of(pp::lam(fxf)), x.carrier2, y.carrier2};
  Prop rel = fam::substitute(pairmap, y.rel);

  Code refl = pca::code_of(pp::lam(pp::lam(pp::app(
      pp::app(cr(y.refl), pp::app(cr(f.rep.code), proj1(pp::v(1)))), pp::v(0)))));
  Term sb = mkpair(pp::app(cr(f.rep.code), proj1(proj1(pp::v(1)))),
                   pp::app(cr(f.rep.code), proj1(proj2(pp::v(1)))));
  (void)sb;
  Term sbase = mkpair(pp::app(cr(f.rep.code), proj1(pp::v(1))),
                      pp::app(cr(f.rep.code), proj2(pp::v(1))));
  Code sym = pca::code_of(pp::lam(pp::lam(pp::app(pp::app(cr(y.sym), sbase), pp::v(0)))));
  Term tbase = mkpair(mkpair(pp::app(cr(f.rep.code), proj1(proj1(pp::v(1)))),
                             pp::app(cr(f.rep.code), proj2(proj1(pp::v(1))))),
                      pp::app(cr(f.rep.code), proj2(pp::v(1))));
  Code trans = pca::code_of(pp::lam(pp::lam(pp::app(pp::app(cr(y.trans), tbase), pp::v(0)))));
  QObject mid = mk_qobject(x.carrier, rel, cfg, refl, sym, trans);

  QArrow epi{col::identity(x.carrier), f.ext};
  QArrow mono{f.rep, pca::code_of(pp::lam(pp::lam(pp::v(0))))};
  return QImage{mid, epi, mono};
}

QExponential q_exponential(const QObject& x, const QObject& y, const EvalCfg& cfg) {
  auto we = col::weak_exponential(x.carrier, y.carrier, cfg);
  Collection w2 = col::product(we.object, we.object, cfg).object;

  // E(c,c') iff forall u,v in A: R(u,v) -> S({c}(u), {c'}(v))
  lang::Context ctx{{{"w", w2}}};
  using namespace lang;
  Collection wxa = col::product(we.object, x.carrier, cfg).object;
  Arrow ap{pca::code_of(pp::lam(pp::app(proj1(pp::v(0)), proj2(pp::v(0))))), wxa, y.carrier};
  auto prw1 = proj_arrow(w2, we.object, false);
  auto prw2 = proj_arrow(w2, we.object, true);
  FormulaPtr formula = f_forall(
      "u", x.carrier,
      f_forall("v", x.carrier,
               f_imp(f_atom(x.rel, {t_var("u"), t_var("v")}, "R"),
                     f_atom(y.rel,
                            {t_apply(ap, {t_apply(prw1, {t_var("w")}, "p1"), t_var("u")}, "ap"),
                             t_apply(ap, {t_apply(prw2, {t_var("w")}, "p2"), t_var("v")}, "ap")},
                            "S"))));
  Prop rel = rebase(lang::interpret(formula, ctx, cfg), w2);

  // keep only relation-respecting codes in the support
  Collection carrier = we.object;
  std::vector<Nat> kept;
  for (const Nat& c : carrier.support) {
    auto members = fam::fibre_support(rel, cantor_pair(c, c), cfg);
    bool ok = false;
    for (const Nat& m : members)
      if (fam::decide(rel, cantor_pair(c, c), m, cfg) == Verdict::In) {
        ok = true;
        break;
      }
    if (ok) kept.push_back(c);
  }
  carrier.support = kept;

  QObject obj = mk_qobject(carrier, rel, cfg);
  QProduct dom = q_product(obj, x, cfg);
  Arrow ev_rep{ap.code, dom.object.carrier, y.carrier};
  QArrow ev = mk_qarrow(dom.object, y, ev_rep, cfg);
  return QExponential{obj, ev, dom};
}

// ---------------------------------------------------------------------------
// Quotients and the proposition doctrine

QuotientData quotient_of(const QObject& x, const Prop& rho, const EvalCfg& cfg,
                         std::optional<pca::Code> contains) {
  QObject quo = mk_qobject(x.carrier, rho, cfg);
  doc::SearchOptions opts;
  if (contains) opts.hints.push_back(*contains);
  auto w = doc::search_entailment(x.rel, rho, cfg, opts);
  if (!w)
    throw invalid_equivalence("quotient relation does not contain the object's relation",
                              "contains");
  QArrow canonical{col::identity(x.carrier), w->realizer};
  return QuotientData{quo, canonical};
}

std::optional<pca::Code> saturation_witness(const Prop& p, const QObject& x,
                                            const EvalCfg& cfg) {
  Arrow pr1 = proj_arrow(x.carrier2, x.carrier, false);
  Arrow pr2 = proj_arrow(x.carrier2, x.carrier, true);
  Prop lhs = doc::meet(fam::substitute(pr1, p), x.rel);
  Prop rhs = fam::substitute(pr2, p);
  auto w = doc::search_entailment(lhs, rhs, cfg);
  if (!w) return std::nullopt;
  return w->realizer;
}

bool definitely_not_saturated(const Prop& p, const QObject& x, const EvalCfg& cfg) {
  Arrow pr1 = proj_arrow(x.carrier2, x.carrier, false);
  Arrow pr2 = proj_arrow(x.carrier2, x.carrier, true);
  Prop lhs = doc::meet(fam::substitute(pr1, p), x.rel);
  Prop rhs = fam::substitute(pr2, p);
  return doc::entailment_refuted(lhs, rhs, cfg);
}

Prop qprop_subst(const QArrow& f, const Prop& p, const QObject& dom) {
  Arrow rep = f.rep;
  rep.dom = dom.carrier;
  return fam::substitute(rep, p);
}

// ---------------------------------------------------------------------------
// The classifier

QObject omega(const EvalCfg& cfg) {
  Collection us = uni::us_collection(cfg);
  Collection us2 = col::product(us, us, cfg).object;
  Prop rel = fam::mk_family(us2, fdec({col::FamOmegaEq{}}));
  Code id_code = pp::identity();
  Code refl = pca::code_of(pp::lam(pp::lam(mkpair(cr(id_code), cr(id_code)))));
  Code sym = pca::code_of(pp::lam(pp::lam(mkpair(proj2(pp::v(0)), proj1(pp::v(0))))));
  // w = (w12, w23): compose the two conversion pairs
  Term u13 = pp::lam(pp::app(proj1(proj2(pp::v(1))), pp::app(proj1(proj1(pp::v(1))), pp::v(0))));
  Term v13 = pp::lam(pp::app(proj2(proj1(pp::v(1))), pp::app(proj2(proj2(pp::v(1))), pp::v(0))));
  Code trans = pca::code_of(pp::lam(pp::lam(mkpair(std::move(u13), std::move(v13)))));
  return mk_qobject(us, rel, cfg, refl, sym, trans);
}

QArrow classify(const QObject& x, const SmallSatProp& p, const EvalCfg& cfg) {
  QObject om = omega(cfg);
  Arrow rep{p.small.code_map, x.carrier, om.carrier};
  // ext: R(z) -> EQ(m(p1 z), m(p2 z)) built from the saturation witness
  // u = \t. {sat}(z, p(t, r));   v = \s. {sat}(tw z, p(s, {sym}(z, r)))
  Term u = pp::lam(pp::app(pp::app(cr(p.saturation), pp::v(2)), mkpair(pp::v(0), pp::v(1))));
  Term twz = mkpair(proj2(pp::v(2)), proj1(pp::v(2)));
  Term symr = pp::app(pp::app(cr(x.sym), pp::v(2)), pp::v(1));
  Term v = pp::lam(pp::app(pp::app(cr(p.saturation), twz), mkpair(pp::v(0), symr)));
  Code ext = pca::code_of(pp::lam(pp::lam(mkpair(std::move(u), std::move(v)))));
  QArrow out{rep, ext};
  if (validate_qarrow(x, om, out, cfg) != Tri::Yes)
    throw uni::not_small("classify: the code map does not respect the relation");
  return out;
}

SmallSatProp comprehend(const QObject& x, const QArrow& chi, const EvalCfg& cfg) {
  uni::SmallProp small = uni::mk_small_prop(x.carrier, chi.rep.code, cfg);
  // sat = \z.\w. {p1({ext}(z, p2 w))}(p1 w)
  Term conv = pp::app(pp::app(cr(chi.ext), pp::v(1)), proj2(pp::v(0)));
  Code sat = pca::code_of(pp::lam(pp::lam(pp::app(proj1(conv), proj1(pp::v(0))))));
  return SmallSatProp{small, sat};
}

// ---------------------------------------------------------------------------
// Unique choice and CT

UniqueChoiceResult unique_choice(const QObject& x, const QObject& y, const Prop& p,
                                 const pca::Code& witness, const EvalCfg& cfg) {
  // rep = \a. p1({{r}(0,0)}(a))
  Term c = pp::app(pp::app(cr(witness), pp::c(0)), pp::c(0));
  Arrow rep{pca::code_of(pp::lam(proj1(pp::app(c, pp::v(0))))), x.carrier, y.carrier};
  if (col::validate_arrow(rep, cfg) != Tri::Yes)
    throw lang::extraction_failed("unique_choice: extracted arrow does not verify");
  QArrow f = mk_qarrow(x, y, rep, cfg);  // searches the extensionality witness

  // post: forall a in X. P(a, f(a))
  lang::Context empty;
  lang::FormulaPtr post_f = lang::f_forall(
      "a", x.carrier,
      lang::f_atom(p, {lang::t_var("a"), lang::t_apply(rep, {lang::t_var("a")}, "f")}, "P"));
  Prop post = lang::interpret(post_f, empty, cfg);
  // \g.\u.\a. p1(p2({c}(a)))
  Term inner = pp::app(pp::app(cr(witness), pp::c(0)), pp::c(0));
  Code post_wit =
      pca::code_of(pp::lam(pp::lam(pp::lam(proj1(proj2(pp::app(inner, pp::v(0))))))));
  Prop top = doc::top_prop(col::terminal_collection());
  if (doc::check_entailment(top, post, post_wit, cfg) != Tri::Yes)
    throw lang::extraction_failed("unique_choice: post-verification failed");
  return UniqueChoiceResult{f, EntailmentWitness{post_wit, top, post}};
}

lang::CtResult ct_in_peff(const Prop& r, const EvalCfg& cfg,
                          std::vector<Nat> premise_realizers) {
  return lang::ct_realizer(r, cfg, std::move(premise_realizers));
}

// ---------------------------------------------------------------------------
// Dependent families

namespace {

std::vector<Nat> inhabited(const Prop& s, const Nat& at, const EvalCfg& cfg) {
  std::vector<Nat> out;
  for (const Nat& m : fam::fibre_support(s, at, cfg))
    if (fam::decide(s, at, m, cfg) == Verdict::In) out.push_back(m);
  return out;
}

}  // namespace

Tri check_action_law(const QObject& x, const DepFamilyQ& f, int law, const EvalCfg& cfg) {
  Tri acc = Tri::Yes;
  auto sigma_at = [&](const Nat& z, const Nat& b) -> std::optional<Nat> {
    auto r = pca::kleene_apply(f.action.code, {z, b}, cfg.fuel);
    if (!r.is_value()) return std::nullopt;
    return r.value;
  };
  const auto& zs = f.action_base.support;
  for (const Nat& z : zs) {
    Nat aa = cantor_proj1(z), r = cantor_proj2(z);
    Nat a = cantor_proj1(aa), a2 = cantor_proj2(aa);
    auto bs = fam::fibre_support(f.b, a, cfg);
    if (law == 1) {
      for (const Nat& b : bs)
        for (const Nat& b2 : bs) {
          if (inhabited(f.s, cantor_pair(a, cantor_pair(b, b2)), cfg).empty()) continue;
          auto sb = sigma_at(z, b), sb2 = sigma_at(z, b2);
          if (!sb || !sb2) return Tri::No;
          if (inhabited(f.s, cantor_pair(a2, cantor_pair(*sb, *sb2)), cfg).empty())
            return Tri::No;
        }
    }
    if (law == 2) {
      for (const Nat& z2 : zs) {
        if (cantor_proj1(z2) != aa || cantor_proj2(z2) == r) continue;
        for (const Nat& b : bs) {
          auto s1 = sigma_at(z, b), s2 = sigma_at(z2, b);
          if (!s1 || !s2) return Tri::No;
          if (inhabited(f.s, cantor_pair(a2, cantor_pair(*s1, *s2)), cfg).empty())
            return Tri::No;
        }
      }
    }
    if (law == 3 && a == a2) {
      for (const Nat& b : bs) {
        auto sb = sigma_at(z, b);
        if (!sb) return Tri::No;
        if (inhabited(f.s, cantor_pair(a, cantor_pair(b, *sb)), cfg).empty()) return Tri::No;
      }
    }
    if (law == 4) {
      for (const Nat& z2 : zs) {
        Nat aa2 = cantor_proj1(z2);
        if (cantor_proj1(aa2) != a2) continue;  // need composable pairs
        Nat a3 = cantor_proj2(aa2);
        // transitivity witness for (a, a3)
        Nat tpoint = cantor_pair(cantor_pair(a, a2), a3);
        auto r13 = pca::kleene_apply(x.trans, {tpoint, cantor_pair(r, cantor_proj2(z2))},
                                     cfg.fuel);
        if (!r13.is_value()) return Tri::No;
        Nat z13 = cantor_pair(cantor_pair(a, a3), r13.value);
        for (const Nat& b : bs) {
          auto direct = sigma_at(z13, b);
          auto step1 = sigma_at(z, b);
          if (!direct || !step1) return Tri::No;
          auto step2 = sigma_at(z2, *step1);
          if (!step2) return Tri::No;
          if (inhabited(f.s, cantor_pair(a3, cantor_pair(*direct, *step2)), cfg).empty())
            return Tri::No;
        }
      }
    }
  }
  return acc;
}

DepFamilyQ mk_dep_family(const QObject& x, const fam::Family& b, const Prop& s,
                         const pca::Code& action_code, const EvalCfg& cfg) {
  fam::TotalSigma ab = fam::total_sigma(col::product(x.carrier, x.carrier, cfg).object, x.rel,
                                        cfg);
  DepFamilyQ out{b, s, {}, ab.object};
  Family dom = fam::substitute(
      Arrow{pca::code_of(pp::lam(proj1(proj1(pp::v(0))))), ab.object, x.carrier}, b);
  Family cod = fam::substitute(
      Arrow{pca::code_of(pp::lam(proj2(proj1(pp::v(0))))), ab.object, x.carrier}, b);
  out.action = fam::FamilyMap{action_code, dom, cod};

  // the dependent equivalence laws for s on supports
  for (const Nat& a : x.carrier.support) {
    auto bs = fam::fibre_support(b, a, cfg);
    for (const Nat& bb : bs)
      if (inhabited(s, cantor_pair(a, cantor_pair(bb, bb)), cfg).empty())
        throw invalid_equivalence("dependent relation misses reflexivity at a=" + a.str(),
                                  "refl");
    for (const Nat& b1 : bs)
      for (const Nat& b2 : bs) {
        bool fwd = !inhabited(s, cantor_pair(a, cantor_pair(b1, b2)), cfg).empty();
        bool bwd = !inhabited(s, cantor_pair(a, cantor_pair(b2, b1)), cfg).empty();
        if (fwd != bwd)
          throw invalid_equivalence("dependent relation misses symmetry at a=" + a.str(),
                                    "sym");
      }
  }

  for (int law = 1; law <= 4; ++law)
    if (check_action_law(x, out, law, cfg) != Tri::Yes)
      throw invalid_action("action law " + std::to_string(law) + " failed", law);
  return out;
}

DepFamilyQ famq_terminal(const QObject& x, const EvalCfg& cfg) {
  Family b = fam::fam_terminal(x.carrier);
  Family b2 = fam::fam_product(b, b).object;
  fam::TotalSigma tot = fam::total_sigma(x.carrier, b2, cfg);
  Prop s = doc::top_prop(tot.object);
  Code act = pca::code_of(pp::lam(pp::lam(pp::v(0))));
  return mk_dep_family(x, b, s, act, cfg);
}

DepFamilyQ famq_product(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                        const EvalCfg& cfg) {
  Family b = fam::fam_product(f.b, g.b).object;
  Family b2 = fam::fam_product(b, b).object;
  fam::TotalSigma tot = fam::total_sigma(x.carrier, b2, cfg);
  fam::TotalSigma totf = fam::total_sigma(x.carrier, fam::fam_product(f.b, f.b).object, cfg);
  fam::TotalSigma totg = fam::total_sigma(x.carrier, fam::fam_product(g.b, g.b).object, cfg);
  // shuffles picking the componentwise pairs
  Term m1 = mkpair(proj1(pp::v(0)),
                   mkpair(proj1(proj1(proj2(pp::v(0)))), proj1(proj2(proj2(pp::v(0))))));
  Term m2 = mkpair(proj1(pp::v(0)),
                   mkpair(proj2(proj1(proj2(pp::v(0)))), proj2(proj2(proj2(pp::v(0))))));
  Prop s = doc::meet(
      fam::substitute(Arrow{pca::code_of(pp::lam(m1)), tot.object, totf.object}, f.s),
      fam::substitute(Arrow{pca::code_of(pp::lam(m2)), tot.object, totg.object}, g.s));
  Code act = pca::code_of(pp::lam(pp::lam(mkpair(
      pp::app(pp::app(cr(f.action.code), pp::v(1)), proj1(pp::v(0))),
      pp::app(pp::app(cr(g.action.code), pp::v(1)), proj2(pp::v(0)))))));
  return mk_dep_family(x, b, s, act, cfg);
}

DepFamilyQ famq_coproduct(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                          const EvalCfg& cfg) {
  Family b = fam::fam_coproduct(f.b, g.b).object;
  Family b2 = fam::fam_product(b, b).object;
  fam::TotalSigma tot = fam::total_sigma(x.carrier, b2, cfg);
  fam::TotalSigma totf = fam::total_sigma(x.carrier, fam::fam_product(f.b, f.b).object, cfg);
  fam::TotalSigma totg = fam::total_sigma(x.carrier, fam::fam_product(g.b, g.b).object, cfg);
  // images of the injection-squares
  Term i1 = mkpair(proj1(pp::v(0)), mkpair(mkpair(pp::c(0), proj1(proj2(pp::v(0)))),
                                           mkpair(pp::c(0), proj2(proj2(pp::v(0))))));
  Term i2 = mkpair(proj1(pp::v(0)), mkpair(mkpair(pp::c(1), proj1(proj2(pp::v(0)))),
                                           mkpair(pp::c(1), proj2(proj2(pp::v(0))))));
  Prop s = doc::join(
      fam::sigma_along(Arrow{pca::code_of(pp::lam(i1)), totf.object, tot.object}, f.s),
      fam::sigma_along(Arrow{pca::code_of(pp::lam(i2)), totg.object, tot.object}, g.s));
  Term yes = pp::lam(mkpair(pp::c(0), pp::app(pp::app(cr(f.action.code), pp::v(2)),
                                              proj2(pp::v(1)))));
  Term no = pp::lam(mkpair(pp::c(1), pp::app(pp::app(cr(g.action.code), pp::v(2)),
                                             proj2(pp::v(1)))));
  Term act_body = pp::app(
      pp::app(pp::app(pca::mk_builtin(pca::Builtin::Ite), proj1(pp::v(0)), yes), no), pp::c(0));
  Code act = pca::code_of(pp::lam(pp::lam(act_body)));
  return mk_dep_family(x, b, s, act, cfg);
}

namespace {

// support-keyed action transport used by the equalizer and image families:
// maps (z, m) to the transported member, finding the witness component by
// enumeration; validated by mk_dep_family afterwards
Code tabulated_action(const Collection& action_base, const Family& members,
                      const std::function<std::optional<Nat>(const Nat&, const Nat&)>& move,
                      const EvalCfg& cfg) {
  std::vector<std::pair<Nat, Nat>> entries;
  for (const Nat& z : action_base.support) {
    Nat a = cantor_proj1(cantor_proj1(z));
    for (const Nat& m : fam::fibre_support(members, a, cfg)) {
      auto moved = move(z, m);
      if (moved) entries.emplace_back(cantor_pair(z, m), *moved);
    }
  }
  Code table = pp::lookup_table(entries, Nat(0));
  return pca::code_of(
      pp::lam(pp::lam(pp::app(cr(table), mkpair(pp::v(1), pp::v(0))))));
}

}  // namespace

DepFamilyQ famq_equalizer(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                          const pca::Code& m1, const pca::Code& m2, const EvalCfg& cfg) {
  // members (b, w): b in B(a), w realizing T(a, ({m1}(a,b), {m2}(a,b)))
  Code point = pca::code_of(pp::lam(pp::lam(mkpair(
      pp::v(1), mkpair(pp::app(pp::app(cr(m1), pp::v(1)), pp::v(0)),
                       pp::app(pp::app(cr(m2), pp::v(1)), pp::v(0)))))));
  Family b = fam::mk_family(
      x.carrier, fdec({col::FamDepPair{f.b.decider, g.s.decider, point}}));
  Family b2 = fam::fam_product(b, b).object;
  fam::TotalSigma tot = fam::total_sigma(x.carrier, b2, cfg);
  fam::TotalSigma totf = fam::total_sigma(x.carrier, fam::fam_product(f.b, f.b).object, cfg);
  Term firsts = mkpair(proj1(pp::v(0)),
                       mkpair(proj1(proj1(proj2(pp::v(0)))), proj1(proj2(proj2(pp::v(0))))));
  Prop s = fam::substitute(Arrow{pca::code_of(pp::lam(firsts)), tot.object, totf.object}, f.s);

  auto move = [&](const Nat& z, const Nat& memb) -> std::optional<Nat> {
    auto sb = pca::kleene_apply(f.action.code, {z, cantor_proj1(memb)}, cfg.fuel);
    if (!sb.is_value()) return std::nullopt;
    Nat a2 = cantor_proj2(cantor_proj1(z));
    auto tgt = pca::kleene_apply(point, {a2, sb.value}, cfg.fuel);
    if (!tgt.is_value()) return std::nullopt;
    auto wit = inhabited(g.s, tgt.value, cfg);
    if (wit.empty()) return std::nullopt;
    return cantor_pair(sb.value, wit.front());
  };
  Code act = tabulated_action(f.action_base, b, move, cfg);
  return mk_dep_family(x, b, s, act, cfg);
}

DepFamilyQ famq_list(const QObject& x, const DepFamilyQ& f, const EvalCfg& cfg) {
  Family b = fam::fam_list(f.b).object;
  Prop s = fam::mk_family(
      fam::total_sigma(x.carrier, fam::fam_product(b, b).object, cfg).object,
      fdec({col::FamListRel{f.s.decider}}));
  // map the action over the list
  Code lr = pca::numeral(pca::Numeral::Listrec);
  Code cnc = pca::numeral(pca::Numeral::Cnc);
  Term step = pp::lam(pp::lam(pp::lam(pp::app(
      cr(cnc), pp::v(0), pp::app(pp::app(cr(f.action.code), pp::v(4)), pp::v(1))))));
  Code act = pca::code_of(
      pp::lam(pp::lam(pp::app(cr(lr), pp::c(0), step, pp::v(0)))));
  return mk_dep_family(x, b, s, act, cfg);
}

DepFamilyQ famq_image(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                      const pca::Code& m, const EvalCfg& cfg) {
  // members p(b, p(c, w)): b in B(a), c in C(a), w realizing T(a, ({m}(a,b), c))
  Family c_at = fam::substitute(
      Arrow{pca::code_of(pp::lam(proj1(pp::v(0)))),
            fam::total_sigma(x.carrier, f.b, cfg).object, x.carrier},
      g.b);
  Code inner_point = pca::code_of(pp::lam(pp::lam(mkpair(
      proj1(pp::v(1)),
      mkpair(pp::app(pp::app(cr(m), proj1(pp::v(1))), proj2(pp::v(1))), pp::v(0))))));
  FamDecPtr inner = fdec({col::FamDepPair{c_at.decider, g.s.decider, inner_point}});
  Code outer_point = pca::code_of(pp::lam(pp::lam(mkpair(pp::v(1), pp::v(0)))));
  Family b = fam::mk_family(x.carrier,
                            fdec({col::FamDepPair{f.b.decider, inner, outer_point}}));
  Family b2 = fam::fam_product(b, b).object;
  fam::TotalSigma tot = fam::total_sigma(x.carrier, b2, cfg);
  fam::TotalSigma totf = fam::total_sigma(x.carrier, fam::fam_product(f.b, f.b).object, cfg);
  Term firsts = mkpair(proj1(pp::v(0)),
                       mkpair(proj1(proj1(proj2(pp::v(0)))), proj1(proj2(proj2(pp::v(0))))));
  Prop s = fam::substitute(Arrow{pca::code_of(pp::lam(firsts)), tot.object, totf.object}, f.s);

  auto move = [&](const Nat& z, const Nat& memb) -> std::optional<Nat> {
    Nat a2 = cantor_proj2(cantor_proj1(z));
    Nat b0 = cantor_proj1(memb), c0 = cantor_proj1(cantor_proj2(memb));
    auto sb = pca::kleene_apply(f.action.code, {z, b0}, cfg.fuel);
    auto sc = pca::kleene_apply(g.action.code, {z, c0}, cfg.fuel);
    if (!sb.is_value() || !sc.is_value()) return std::nullopt;
    auto fm = pca::kleene_apply(Code{m}, {a2, sb.value}, cfg.fuel);
    if (!fm.is_value()) return std::nullopt;
    auto wit = inhabited(g.s, cantor_pair(a2, cantor_pair(fm.value, sc.value)), cfg);
    if (wit.empty()) return std::nullopt;
    return cantor_pair(sb.value, cantor_pair(sc.value, wit.front()));
  };
  Code act = tabulated_action(f.action_base, b, move, cfg);
  return mk_dep_family(x, b, s, act, cfg);
}

// ---------------------------------------------------------------------------
// The K functor

KResult k_functor(const QObject& x, const DepFamilyQ& f, const EvalCfg& cfg) {
  fam::TotalSigma tot = fam::total_sigma(x.carrier, f.b, cfg);
  Collection t2 = col::product(tot.object, tot.object, cfg).object;
  Prop krel = fam::mk_family(
      t2, fdec({col::FamKRel{x.rel.decider, f.s.decider, f.action.code}}));
  QObject total = mk_qobject(tot.object, krel, cfg);
  // the projection strips the witness pair to its relation component
  QArrow proj{tot.proj, pca::code_of(pp::lam(pp::lam(proj1(pp::v(0)))))};
  return KResult{total, proj};
}

QArrow k_on_morphism(const QObject& x, const DepFamilyQ& f, const DepFamilyQ& g,
                     const pca::Code& m, const KResult& kf, const KResult& kg,
                     const EvalCfg& cfg) {
  (void)x;
  (void)f;
  (void)g;
  Term body = mkpair(proj1(pp::v(0)),
                     pp::app(pp::app(cr(m), proj1(pp::v(0))), proj2(pp::v(0))));
  Arrow rep{pca::code_of(pp::lam(body)), kf.total.carrier, kg.total.carrier};
  return mk_qarrow(kf.total, kg.total, rep, cfg);
}

bool is_small_map(const QObject& x, const QArrow& f, const std::optional<SmallMapData>& data,
                  const EvalCfg& cfg) {
  if (!data) return false;
  // the underlying family must be presented by set codes
  if (fam::families_equal_on_supports(data->family.b, data->presentation.family, cfg) !=
      Tri::Yes)
    return false;
  if (fam::families_equal_on_supports(data->family.s, data->s_small.prop, cfg) != Tri::Yes)
    return false;
  KResult k = k_functor(x, data->family, cfg);
  if (f.rep.dom.support != k.total.carrier.support) return false;
  return col::arrows_equal(f.rep, k.proj.rep, cfg) == Tri::Yes;
}

// ---------------------------------------------------------------------------
// Embeddings

QArrow delta_c(const Collection& a, const fam::Family& b, const EvalCfg& cfg) {
  fam::TotalSigma tot = fam::total_sigma(a, b, cfg);
  QObject dom = delta_object(tot.object, cfg);
  QObject cod = delta_object(a, cfg);
  return mk_qarrow(dom, cod, tot.proj, cfg,
                   pca::code_of(pp::lam(pp::lam(
                       mkpair(proj1(proj1(pp::v(0))), pp::c(0))))));
}

std::pair<QObject, Prop> delta_p(const Collection& a, const Prop& p, const EvalCfg& cfg) {
  QObject obj = delta_object(a, cfg);
  return {obj, p};
}

}  // namespace peff::quo
