#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "peff/families.hpp"

using namespace peff;
using namespace peff::fam;
using col::Collection;
using col::dec;
using col::fdec;
using pca::Code;
namespace pp = pca::prog;

namespace {

EvalCfg cfg() { return EvalCfg{}; }

// x |-> {x}: the diagonal singleton family over a collection
Family singleton_family(const Collection& a) {
  Code pick_member = pca::code_of(pp::lam(pp::lam(pp::v(0))));
  Code base_point = pca::code_of(pp::lam(pp::lam(pp::v(1))));
  return mk_family(a, fdec({col::FamEqualizer{fdec({col::FamConst{a.decider}}), pick_member,
                                              base_point}}));
}

Family constant_family(const Collection& a, std::vector<Nat> members) {
  return mk_family(a,
                   fdec({col::FamGuarded{a.decider,
                                         fdec({col::FamConst{dec({col::DecFinite{members}})}})}}));
}

std::vector<Nat> fs(const Family& f, const Nat& x) { return fibre_support(f, x, cfg()); }

}  // namespace

TEST_CASE("substitution is functorial on supports") {
  Collection n8 = col::nat_collection(8);
  Family diag = singleton_family(n8);

  CHECK(families_equal_on_supports(substitute(col::identity(n8), diag), diag, cfg()) == Tri::Yes);

  // constant families are preserved by any reindexing
  Family konst = constant_family(n8, {3, 5});
  col::Arrow succ{pca::code_of(pca::mk_builtin(pca::Builtin::Succ)), n8, n8};
  CHECK(families_equal_on_supports(substitute(succ, konst), konst, cfg()) == Tri::Yes);

  // reindexing the diagonal along succ: fibre at 3 is {4}
  Family shifted = substitute(succ, diag);
  CHECK(fs(shifted, 3) == std::vector<Nat>{4});

  // subst(g o f) = subst(f) o subst(g) pointwise
  col::Arrow ss = col::compose(succ, succ);
  Family once = substitute(ss, diag);
  Family twice = substitute(succ, substitute(succ, diag));
  CHECK(families_equal_on_supports(once, twice, cfg()) == Tri::Yes);
}

TEST_CASE("sigma along") {
  Collection a = col::finite_collection("A", {1, 2, 3});
  Collection one = col::terminal_collection();
  Family diag = singleton_family(a);

  // along the identity: fibres become pairs (x, x)
  col::Arrow ida = col::identity(a);
  Family s = sigma_along(ida, diag);
  CHECK(fs(s, 2) == std::vector<Nat>{cantor_pair(2, 2)});

  // along A -> 1: the fibre over 0 collects all pair(a, a)
  col::Arrow bang{pca::prog::constant(0), a, one};
  Family s1 = sigma_along(bang, diag);
  std::vector<Nat> expect;
  for (const Nat& x : a.support) expect.push_back(cantor_pair(x, x));
  std::sort(expect.begin(), expect.end());
  CHECK(fs(s1, 0) == expect);

  // empty fibres stay empty
  Family empty = fam_initial(a);
  CHECK(fs(sigma_along(bang, empty), 0).empty());
}

TEST_CASE("sigma is left adjoint to substitution (transposes invert)") {
  Collection a = col::finite_collection("A", {0, 1, 2});
  Collection b = col::finite_collection("B", {0, 1});
  using pca::Builtin;
  // f : A -> B, x mod 2 via table
  col::Arrow f{pp::lookup_table({{0, 0}, {1, 1}, {2, 0}}, 0), a, b};

  Family c = singleton_family(a);
  Family d = constant_family(b, {7, 9});
  Family sc = sigma_along(f, c);
  Family dsub = substitute(f, d);

  // sampled map m : Sigma_f(c) -> d over B: send anything to 7
  FamilyMap m{pca::code_of(pp::lam(pp::lam(pp::c(7)))), sc, d};
  REQUIRE(validate_map(m, cfg()) == Tri::Yes);
  FamilyMap fwd = adjoint_transpose_fwd(f, m, c, dsub);
  CHECK(validate_map(fwd, cfg()) == Tri::Yes);
  FamilyMap back = adjoint_transpose_bwd(f, fwd, sc, d);
  CHECK(maps_equal(back, m, cfg()) == Tri::Yes);

  // and the other way: n : c -> subst_f(d)
  FamilyMap n{pca::code_of(pp::lam(pp::lam(pp::c(9)))), c, dsub};
  REQUIRE(validate_map(n, cfg()) == Tri::Yes);
  FamilyMap bwd = adjoint_transpose_bwd(f, n, sc, d);
  CHECK(validate_map(bwd, cfg()) == Tri::Yes);
  FamilyMap there = adjoint_transpose_fwd(f, bwd, c, dsub);
  CHECK(maps_equal(there, n, cfg()) == Tri::Yes);
}

TEST_CASE("weak pi along") {
  Collection a = col::finite_collection("A", {0, 1});
  Collection one = col::terminal_collection();
  col::Arrow bang{pca::prog::constant(0), a, one};

  // constant family {0} over A: Pi along ! accepts \y.0, rejects \y.y once 1
  // is in the domain support
  Family zfam = constant_family(a, {0});
  WeakPi pi = weak_pi_along(bang, zfam, cfg());
  CHECK(decide(pi.object, 0, pca::prog::constant(0).value, cfg()) == Verdict::In);
  CHECK(decide(pi.object, 0, pca::prog::identity().value, cfg()) == Verdict::Out);

  // vacuous: no preimages means every code is accepted
  Collection b2 = col::finite_collection("B2", {0, 1});
  col::Arrow into0{pca::prog::constant(0), a, b2};
  WeakPi pi2 = weak_pi_along(into0, zfam, cfg());
  CHECK(decide(pi2.object, 1, Nat(12345), cfg()) == Verdict::In);

  // the triangle: ev o subst_f(g') = g for a sampled g
  Family d = constant_family(one, {4});
  Family dsub = substitute(bang, d);
  FamilyMap g{pca::prog::constant(0).value == 0
                  ? pca::code_of(pp::lam(pp::lam(pp::c(0))))
                  : pca::code_of(pp::lam(pp::lam(pp::c(0)))),
              dsub, zfam};
  REQUIRE(validate_map(g, cfg()) == Tri::Yes);
  FamilyMap gp = weak_pi_transpose(bang, d, g, pi.object);
  CHECK(validate_map(gp, cfg()) == Tri::Yes);
  Family subst_pi = substitute(bang, pi.object);
  FamilyMap gps = substitute_map(bang, gp, dsub, subst_pi);
  FamilyMap composite = fam_compose(pi.ev, gps);
  CHECK(maps_equal(composite, g, cfg()) == Tri::Yes);
}

TEST_CASE("total sigma and the pullback square") {
  Collection a = col::finite_collection("A", {2, 3});
  Family f23 = mk_family_with_fibres(
      a, fdec({col::FamFinite{{{2, {7}}, {3, {}}}}}), {{2, {7}}, {3, {}}});
  TotalSigma ts = total_sigma(a, f23, cfg());
  CHECK(ts.object.support == std::vector<Nat>{cantor_pair(2, 7)});
  CHECK(col::validate_arrow(ts.proj, cfg()) == Tri::Yes);

  // constant-fibre family: Sigma(A, {0}) is iso to A via the projection
  Family zf = constant_family(a, {0});
  TotalSigma tz = total_sigma(a, zf, cfg());
  CHECK(tz.object.support.size() == a.support.size());

  // pullback square: Sigma(f,C) commutes with projections, and the mediator
  // through it is forced pointwise
  Collection b = col::finite_collection("B", {0, 1});
  col::Arrow f{pp::lookup_table({{2, 0}, {3, 1}}, 0), a, b};
  Family c = constant_family(b, {5, 6});
  Family csub = substitute(f, c);
  TotalSigma tc = total_sigma(b, c, cfg());
  TotalSigma tcs = total_sigma(a, csub, cfg());
  col::Arrow sq = sigma_arrow(f, c, tcs.object, tc.object);
  CHECK(col::validate_arrow(sq, cfg()) == Tri::Yes);
  CHECK(col::arrows_equal(col::compose(f, tcs.proj),
                          col::compose(tc.proj, sq), cfg()) == Tri::Yes);
}

TEST_CASE("slice equivalence roundtrips") {
  Collection a = col::finite_collection("A", {0, 1});
  // J then I on the identity arrow gives an object iso to A
  col::Arrow ida = col::identity(a);
  Family j = slice_to_family(ida);
  CHECK(fs(j, 0) == std::vector<Nat>{0});
  CHECK(fs(j, 1) == std::vector<Nat>{1});
  TotalSigma i = family_to_slice(j, cfg());
  // members of Sigma(A, J(id)) are pair(x, x)
  CHECK(i.object.support == std::vector<Nat>{cantor_pair(0, 0), cantor_pair(1, 1)});
  // iso to A over A: to = proj, from = \x. p(x,x); roundtrips are identities
  col::Arrow from{pca::code_of(pp::lam(pp::app(pca::mk_builtin(pca::Builtin::Pair), pp::v(0),
                                               pp::v(0)))),
                  a, i.object};
  CHECK(col::validate_arrow(from, cfg()) == Tri::Yes);
  CHECK(col::arrows_equal(col::compose(i.proj, from), ida, cfg()) == Tri::Yes);
  CHECK(col::arrows_equal(col::compose(from, i.proj), col::identity(i.object), cfg()) ==
        Tri::Yes);

  // I then J on a constant family recovers the fibres
  Family konst = constant_family(a, {4, 5});
  TotalSigma ik = family_to_slice(konst, cfg());
  Family jk = slice_to_family(ik.proj);
  for (const Nat& x : a.support) {
    std::vector<Nat> expect = {cantor_pair(x, 4), cantor_pair(x, 5)};
    std::sort(expect.begin(), expect.end());
    CHECK(fs(jk, x) == expect);
  }
}

TEST_CASE("pullback functor agreement (I o subst o J vs equalizer route)") {
  // e : E -> B a sampled slice object; f : A -> B
  Collection a = col::finite_collection("A", {0, 1});
  Collection b = col::finite_collection("B", {0, 1});
  Collection e_dom = col::finite_collection("E", {10, 11});
  col::Arrow e{pp::lookup_table({{10, 0}, {11, 1}}, 0), e_dom, b};
  col::Arrow f = col::identity(a);  // A = B here; keeps the square small
  f.cod = b;

  // route 1: I_A(subst_f(J_B(e)))
  Family je = slice_to_family(e);
  Family sub = substitute(f, je);
  TotalSigma route1 = family_to_slice(sub, cfg());

  // route 2: equalizer of f o p1 and e o p2 inside A x E
  auto axe = col::product(a, e_dom, cfg());
  col::Arrow fp1 = col::compose(f, axe.p1);
  col::Arrow ep2 = col::compose(e, axe.p2);
  auto eq = col::equalizer(fp1, ep2, cfg());

  // the two routes have the same extension on supports up to the evident
  // iso (x, m) <-> (x, m); both supports are pairs
  REQUIRE(route1.object.support.size() == eq.object.support.size());
  for (std::size_t i = 0; i < eq.object.support.size(); ++i)
    CHECK(route1.object.support[i] == eq.object.support[i]);
}

TEST_CASE("mediator lemmas") {
  Collection x = col::finite_collection("X", {0, 1});
  Collection b = col::finite_collection("B", {0, 1});
  Family c = constant_family(b, {3});
  Family d = constant_family(b, {4});

  // f, g into the total spaces with equal first components
  TotalSigma sc = total_sigma(b, c, cfg());
  TotalSigma sd = total_sigma(b, d, cfg());
  col::Arrow f{pca::code_of(pca::parse_term("\\x. pair x 3")), x, sc.object};
  col::Arrow g{pca::code_of(pca::parse_term("\\x. pair x 4")), x, sd.object};
  REQUIRE(col::validate_arrow(f, cfg()) == Tri::Yes);
  REQUIRE(col::validate_arrow(g, cfg()) == Tri::Yes);

  col::Arrow h = mediator_univprod(f, g, c, d, cfg());
  CHECK(col::validate_arrow(h, cfg()) == Tri::Yes);
  // commutes: I(p1) o h = f and I(p2) o h = g, checked pointwise
  for (const Nat& p : x.support) {
    Nat hz = pca::kleene_apply(h.code, {p}, cfg().fuel).value;
    CHECK(cantor_proj1(hz) == p);
    CHECK(cantor_proj1(cantor_proj2(hz)) == 3);
    CHECK(cantor_proj2(cantor_proj2(hz)) == 4);
  }
  // uniqueness: values are forced componentwise by the commutation equations

  // perturbed g violating the precondition
  col::Arrow bad{pca::code_of(pca::parse_term("\\x. pair (succ x) 4")), x, sd.object};
  CHECK_THROWS_AS((void)mediator_univprod(f, bad, c, d, cfg()), precondition_failed);

  // univsig: g : X -> Sigma(C,D), h : X -> B, f : B -> C with f o h = p1 o g
  Collection cc = col::finite_collection("C", {0, 1});
  Family dd = constant_family(cc, {6});
  TotalSigma sdd = total_sigma(cc, dd, cfg());
  col::Arrow g2{pca::code_of(pca::parse_term("\\x. pair x 6")), x, sdd.object};
  col::Arrow h2 = col::identity(x);
  h2.cod = b;
  col::Arrow f2 = col::identity(b);
  f2.cod = cc;
  col::Arrow j = mediator_univsig(g2, h2, f2, dd, cfg());
  CHECK(col::validate_arrow(j, cfg()) == Tri::Yes);
  col::Arrow bad_h{pca::prog::constant(0), x, b};
  CHECK_THROWS_AS((void)mediator_univsig(g2, bad_h, f2, dd, cfg()), precondition_failed);
}

TEST_CASE("fibrewise structure") {
  Collection a = col::finite_collection("A", {0, 1});
  Family one = fam_terminal(a);
  for (const Nat& x : a.support) CHECK(fs(one, x) == std::vector<Nat>{0});

  Family b = constant_family(a, {2, 3});
  Family c = constant_family(a, {5});
  auto prod = fam_product(b, c);
  CHECK(fs(prod.object, 0) == std::vector<Nat>{cantor_pair(2, 5), cantor_pair(3, 5)});
  CHECK(validate_map(prod.p1, cfg()) == Tri::Yes);
  CHECK(validate_map(prod.p2, cfg()) == Tri::Yes);

  // pairing mediator commutes
  Family src = constant_family(a, {9});
  FamilyMap into_b{pca::code_of(pp::lam(pp::lam(pp::c(2)))), src, b};
  FamilyMap into_c{pca::code_of(pp::lam(pp::lam(pp::c(5)))), src, c};
  FamilyMap med = fam_pair(into_b, into_c, prod.object);
  CHECK(validate_map(med, cfg()) == Tri::Yes);
  CHECK(maps_equal(fam_compose(prod.p1, med), into_b, cfg()) == Tri::Yes);
  CHECK(maps_equal(fam_compose(prod.p2, med), into_c, cfg()) == Tri::Yes);

  // equalizer of two parallel maps
  FamilyMap m1{pca::code_of(pp::lam(pp::lam(pp::v(0)))), b, b};
  FamilyMap m2{pca::code_of(pp::lam(pp::lam(pp::c(2)))), b, b};
  auto eq = fam_equalizer(m1, m2);
  CHECK(fs(eq.object, 0) == std::vector<Nat>{2});

  // coproduct with copair
  auto cop = fam_coproduct(b, c);
  CHECK(validate_map(cop.j1, cfg()) == Tri::Yes);
  FamilyMap back_b{pca::code_of(pp::lam(pp::lam(pp::c(9)))), b, src};
  FamilyMap back_c{pca::code_of(pp::lam(pp::lam(pp::c(9)))), c, src};
  FamilyMap cp = fam_copair(back_b, back_c, cop.object);
  CHECK(maps_equal(fam_compose(cp, cop.j1), back_b, cfg()) == Tri::Yes);
  CHECK(maps_equal(fam_compose(cp, cop.j2), back_c, cfg()) == Tri::Yes);

  // lists and weak exponentials have the expected fibres
  auto list = fam_list(c);
  CHECK(decide(list.object, 0, encode_list({5, 5}), cfg()) == Verdict::In);
  CHECK(decide(list.object, 0, encode_list({5, 6}), cfg()) == Verdict::Out);
  auto wexp = fam_weak_exp(c, b);
  CHECK(decide(wexp.object, 0, pca::prog::constant(2).value, cfg()) == Verdict::In);
  CHECK(validate_map(wexp.ev, cfg()) == Tri::Yes);
  // transpose existence
  FamilyMap f2{pca::code_of(pp::lam(pp::lam(pp::c(3)))), fam_product(src, c).object, b};
  FamilyMap tr = fam_weak_exp_transpose(f2, src, wexp);
  CHECK(validate_map(tr, cfg()) == Tri::Yes);

  // substitution preserves products up to support-level equality
  col::Arrow id2 = col::identity(a);
  Family subst_prod = substitute(id2, prod.object);
  auto prod_subst = fam_product(substitute(id2, b), substitute(id2, c));
  CHECK(families_equal_on_supports(subst_prod, prod_subst.object, cfg()) == Tri::Yes);
}

TEST_CASE("sigma and pi along projections match their primed forms") {
  Collection a = col::finite_collection("A", {0, 1});
  Collection b = col::finite_collection("B", {2, 3});
  auto axb = col::product(a, b, cfg());
  Family r = constant_family(axb.object, {6});

  Family sig = sigma_along(axb.p1, r);
  Family sig_prime = mk_family(
      a, fdec({col::FamGuarded{a.decider, fdec({col::FamSigmaPrime{b.decider, b.support,
                                                                   r.decider}})}}));
  // iso both ways: to = \x.\x'. p(p2(p1 x'), p2 x'), from = \x.\x'. p(p(x, p1 x'), p2 x')
  using pca::Term;
  auto pr1 = [](Term t) { return pp::app(pca::mk_builtin(pca::Builtin::Proj1), std::move(t)); };
  auto pr2 = [](Term t) { return pp::app(pca::mk_builtin(pca::Builtin::Proj2), std::move(t)); };
  auto mp = [](Term u, Term v2) {
    return pp::app(pca::mk_builtin(pca::Builtin::Pair), std::move(u), std::move(v2));
  };
  FamilyMap to{pca::code_of(pp::lam(pp::lam(mp(pr2(pr1(pp::v(0))), pr2(pp::v(0)))))), sig,
               sig_prime};
  FamilyMap from{pca::code_of(pp::lam(pp::lam(mp(mp(pp::v(1), pr1(pp::v(0))), pr2(pp::v(0)))))),
                 sig_prime, sig};
  CHECK(validate_iso(FamilyIso{to, from}, cfg()) == Tri::Yes);

  // pi along p1 vs its primed form: extensional equivalence of memberships
  Family pi_prime = mk_family(
      a, fdec({col::FamGuarded{a.decider, fdec({col::FamPiPrime{b.decider, b.support,
                                                                r.decider}})}}));
  WeakPi pi = weak_pi_along(axb.p1, r, cfg());
  Nat const6 = pca::prog::constant(6).value;
  for (const Nat& x : a.support) {
    CHECK(decide(pi.object, x, const6, cfg()) == Verdict::In);
    CHECK(decide(pi_prime, x, const6, cfg()) == Verdict::In);
    CHECK(decide(pi.object, x, pca::prog::constant(7).value, cfg()) == Verdict::Out);
    CHECK(decide(pi_prime, x, pca::prog::constant(7).value, cfg()) == Verdict::Out);
  }
}
