#include "peff/universe.hpp"

namespace peff::uni {

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

fam::FamilyMap id_map(const fam::Family& from, const fam::Family& to) {
  return fam::FamilyMap{pca::code_of(pp::lam(pp::lam(pp::v(0)))), from, to};
}

}  // namespace

col::Collection us_collection(const EvalCfg& cfg) {
  col::Collection obj;
  obj.name = "U_S";
  obj.decider = dec({col::DecUniverse{}});
  UniverseCtx ctx(cfg);
  for (const Nat& c : sample_codes())
    if (us_member(c, ctx) == Verdict::In) obj.support.push_back(c);
  std::sort(obj.support.begin(), obj.support.end());
  return obj;
}

col::Collection set_members_collection(const Nat& code, const EvalCfg& cfg) {
  col::Collection obj;
  obj.name = "ext(" + show_code(code) + ")";
  obj.decider = dec({col::DecSetMembers{code}});
  UniverseCtx ctx(cfg);
  obj.support = enumerate_members(code, ctx, cfg.depth);
  return obj;
}

fam::Family tau_family(const col::Collection& a, const pca::Code& n, const EvalCfg& cfg) {
  UniverseCtx ctx(cfg);
  for (const Nat& x : a.support) {
    pca::EvalResult r = pca::kleene_apply(n, {x}, cfg.fuel);
    if (!r.is_value())
      throw not_a_set_code("tau_family: code map undefined at base point " + x.str(), x);
    if (us_member(r.value, ctx) != Verdict::In)
      throw not_a_set_code("tau_family: value at base point " + x.str() +
                               " is not a coherent set code: " + show_code(r.value),
                           x);
  }
  return fam::mk_family(a, fdec({col::FamTau{n, a.decider}}));
}

TauFamily mk_tau(const col::Collection& a, const pca::Code& n, const EvalCfg& cfg) {
  return TauFamily{tau_family(a, n, cfg), n};
}

// ---------------------------------------------------------------------------
// The seven constructions

namespace {

TauConstruction strict(TauFamily object, fam::Family plain) {
  fam::FamilyMap to = id_map(plain, object.family);
  fam::FamilyMap from = id_map(object.family, plain);
  return TauConstruction{std::move(object), std::move(plain), to, from, true};
}

}  // namespace

TauConstruction set_terminal(const col::Collection& a, const EvalCfg& cfg) {
  Code code = pca::code_of(pp::lam(pp::c(mk_n1())));
  return strict(mk_tau(a, code, cfg), fam::fam_terminal(a));
}

TauConstruction set_initial(const col::Collection& a, const EvalCfg& cfg) {
  Code code = pca::code_of(pp::lam(pp::c(mk_n0())));
  return strict(mk_tau(a, code, cfg), fam::fam_initial(a));
}

TauConstruction set_product(const TauFamily& n, const TauFamily& m, const EvalCfg& cfg) {
  // \x. sigma({n}(x), \y. {m}(x))
  Code sig = constructor_numeral(Ctor::Sigma);
  Term body = pp::app(pp::code_ref(sig), pp::app(pp::code_ref(n.code_map), pp::v(0)),
                      pp::lam(pp::app(pp::code_ref(m.code_map), pp::v(1))));
  Code code = pca::code_of(pp::lam(body));
  return strict(mk_tau(n.family.base, code, cfg),
                fam::fam_product(n.family, m.family).object);
}

TauConstruction set_coproduct(const TauFamily& n, const TauFamily& m, const EvalCfg& cfg) {
  Code plus = constructor_numeral(Ctor::Plus);
  Term body = pp::app(pp::code_ref(plus), pp::app(pp::code_ref(n.code_map), pp::v(0)),
                      pp::app(pp::code_ref(m.code_map), pp::v(0)));
  Code code = pca::code_of(pp::lam(body));
  return strict(mk_tau(n.family.base, code, cfg),
                fam::fam_coproduct(n.family, m.family).object);
}

TauConstruction set_list(const TauFamily& n, const EvalCfg& cfg) {
  Code lst = constructor_numeral(Ctor::List);
  Term body = pp::app(pp::code_ref(lst), pp::app(pp::code_ref(n.code_map), pp::v(0)));
  Code code = pca::code_of(pp::lam(body));
  return strict(mk_tau(n.family.base, code, cfg), fam::fam_list(n.family).object);
}

TauConstruction set_weak_exp(const TauFamily& n, const TauFamily& m, const EvalCfg& cfg) {
  Code pi = constructor_numeral(Ctor::Pi);
  Term body = pp::app(pp::code_ref(pi), pp::app(pp::code_ref(n.code_map), pp::v(0)),
                      pp::lam(pp::app(pp::code_ref(m.code_map), pp::v(1))));
  Code code = pca::code_of(pp::lam(body));
  return strict(mk_tau(n.family.base, code, cfg),
                fam::fam_weak_exp(n.family, m.family).object);
}

TauConstruction set_equalizer(const TauFamily& n, const TauFamily& m, const fam::FamilyMap& j,
                              const fam::FamilyMap& k, const EvalCfg& cfg) {
  // \x. sigma({n}(x), \y. id({m}(x), {j}(x,y), {k}(x,y)))
  Code sig = constructor_numeral(Ctor::Sigma);
  Code idc = constructor_numeral(Ctor::Id);
  Term inner = pp::app(pp::app(pp::app(pp::code_ref(idc),
                                       pp::app(pp::code_ref(m.code_map), pp::v(1))),
                               pp::app(pp::app(pp::code_ref(j.code), pp::v(1)), pp::v(0))),
                       pp::app(pp::app(pp::code_ref(k.code), pp::v(1)), pp::v(0)));
  Term body = pp::app(pp::code_ref(sig), pp::app(pp::code_ref(n.code_map), pp::v(0)),
                      pp::lam(inner));
  Code code = pca::code_of(pp::lam(body));
  TauFamily object = mk_tau(n.family.base, code, cfg);
  fam::Family plain = fam::fam_equalizer(j, k).object;
  // to: y |-> (y, 0);  from: (y, u) |-> y.  A retraction, not a strict iso:
  // identity witnesses carry arbitrary second components.
  fam::FamilyMap to{pca::code_of(pp::lam(pp::lam(mkpair(pp::v(0), pp::c(0))))), plain,
                    object.family};
  fam::FamilyMap from{pca::code_of(pp::lam(pp::lam(proj1(pp::v(0))))), object.family, plain};
  return TauConstruction{std::move(object), std::move(plain), to, from, false};
}

// ---------------------------------------------------------------------------
// Representable maps

Presentation canonical_presentation(const col::Collection& b, const pca::Code& n,
                                    const EvalCfg& cfg) {
  fam::Family tau = tau_family(b, n, cfg);
  fam::TotalSigma ts = fam::total_sigma(b, tau, cfg);
  return Presentation{n,       tau, ts.object, ts.proj, col::identity(ts.object),
                      col::identity(ts.object)};
}

Tri verify_presentation(const col::Arrow& f, const Presentation& pres, const EvalCfg& cfg) {
  Tri acc = col::validate_arrow(pres.to, cfg);
  acc = tri_and(acc, col::validate_arrow(pres.from, cfg));
  if (acc == Tri::No) return Tri::No;
  col::Arrow to = pres.to, from = pres.from;
  to.dom = f.dom;
  from.cod = f.dom;
  acc = tri_and(acc, col::arrows_equal(col::compose(from, to), col::identity(f.dom), cfg));
  acc = tri_and(acc,
                col::arrows_equal(col::compose(to, from), col::identity(pres.total), cfg));
  col::Arrow proj_to{pca::prog::compose(pres.proj.code, to.code), f.dom, pres.proj.cod};
  acc = tri_and(acc, col::arrows_equal(proj_to, f, cfg));
  col::Arrow f_from{pca::prog::compose(f.code, from.code), pres.total, f.cod};
  acc = tri_and(acc, col::arrows_equal(f_from, pres.proj, cfg));
  return acc;
}

SigmaPiRepresentable sigma_pi_representable(const Presentation& pres, const TauFamily& c,
                                            const EvalCfg& cfg) {
  const col::Collection& b = pres.proj.cod;
  Code sig = constructor_numeral(Ctor::Sigma);
  Code pi = constructor_numeral(Ctor::Pi);
  // \x. sigma({n}(x), \y. {m}(p(x,y)))
  Term sig_body =
      pp::app(pp::code_ref(sig), pp::app(pp::code_ref(pres.code_map), pp::v(0)),
              pp::lam(pp::app(pp::code_ref(c.code_map), mkpair(pp::v(1), pp::v(0)))));
  Code sigma_code = pca::code_of(pp::lam(sig_body));
  Term pi_body =
      pp::app(pp::code_ref(pi), pp::app(pp::code_ref(pres.code_map), pp::v(0)),
              pp::lam(pp::app(pp::code_ref(c.code_map), mkpair(pp::v(1), pp::v(0)))));
  Code pi_code = pca::code_of(pp::lam(pi_body));

  TauFamily sigma = mk_tau(b, sigma_code, cfg);
  TauFamily pit = mk_tau(b, pi_code, cfg);

  fam::Family plain_sigma = fam::sigma_along(pres.proj, c.family);
  fam::WeakPi plain_pi = fam::weak_pi_along(pres.proj, c.family, cfg);

  // members of Sigma_{p1}(C) at x are pairs (z, w) with z = pair(x, y);
  // code-side members are (y, w)
  fam::FamilyMap sigma_to{
      pca::code_of(pp::lam(pp::lam(mkpair(proj2(proj1(pp::v(0))), proj2(pp::v(0)))))),
      plain_sigma, sigma.family};
  fam::FamilyMap sigma_from{
      pca::code_of(pp::lam(pp::lam(mkpair(mkpair(pp::v(1), proj1(pp::v(0))), proj2(pp::v(0)))))),
      sigma.family, plain_sigma};

  // pi-side: a code over pairs z vs a code over fibre members y
  fam::FamilyMap pi_to{
      pca::code_of(pp::lam(pp::lam(pp::lam(pp::app(pp::v(1), mkpair(pp::v(2), pp::v(0))))))),
      plain_pi.object, pit.family};
  fam::FamilyMap pi_from{
      pca::code_of(pp::lam(pp::lam(pp::lam(pp::app(pp::v(1), proj2(pp::v(0))))))),
      pit.family, plain_pi.object};

  return SigmaPiRepresentable{sigma, sigma_to, sigma_from, pit, pi_to, pi_from};
}

// ---------------------------------------------------------------------------
// Small propositions

SmallProp mk_small_prop(const col::Collection& a, const pca::Code& n, const EvalCfg& cfg) {
  return SmallProp{tau_family(a, n, cfg), n};
}

SmallProp small_top(const col::Collection& a, const EvalCfg& cfg) {
  return mk_small_prop(a, pca::code_of(pp::lam(pp::c(mk_n1()))), cfg);
}

SmallProp small_bottom(const col::Collection& a, const EvalCfg& cfg) {
  return mk_small_prop(a, pca::code_of(pp::lam(pp::c(mk_n0()))), cfg);
}

SmallProp small_meet(const SmallProp& p, const SmallProp& q, const EvalCfg& cfg) {
  TauFamily n{p.prop, p.code_map}, m{q.prop, q.code_map};
  TauConstruction c = set_product(n, m, cfg);
  return SmallProp{c.object.family, c.object.code_map};
}

SmallProp small_join(const SmallProp& p, const SmallProp& q, const EvalCfg& cfg) {
  TauFamily n{p.prop, p.code_map}, m{q.prop, q.code_map};
  TauConstruction c = set_coproduct(n, m, cfg);
  return SmallProp{c.object.family, c.object.code_map};
}

SmallProp small_imp(const SmallProp& p, const SmallProp& q, const EvalCfg& cfg) {
  TauFamily n{p.prop, p.code_map}, m{q.prop, q.code_map};
  TauConstruction c = set_weak_exp(n, m, cfg);
  return SmallProp{c.object.family, c.object.code_map};
}

SmallProp small_exists(const Presentation& pres, const SmallProp& p, const EvalCfg& cfg) {
  TauFamily c{p.prop, p.code_map};
  SigmaPiRepresentable spr = sigma_pi_representable(pres, c, cfg);
  return SmallProp{spr.sigma.family, spr.sigma.code_map};
}

SmallProp small_forall(const Presentation& pres, const SmallProp& p, const EvalCfg& cfg) {
  TauFamily c{p.prop, p.code_map};
  SigmaPiRepresentable spr = sigma_pi_representable(pres, c, cfg);
  return SmallProp{spr.pi.family, spr.pi.code_map};
}

}  // namespace peff::uni
