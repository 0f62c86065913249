#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "peff/doctrine.hpp"

using namespace peff;
using namespace peff::doc;
using col::Collection;
using col::dec;
using col::fdec;
using pca::Code;
namespace pp = pca::prog;

namespace {

EvalCfg cfg() { return EvalCfg{}; }

Prop finite_prop(const Collection& base, std::map<Nat, std::vector<Nat>> fibres) {
  return fam::mk_family_with_fibres(base, fdec({col::FamFinite{fibres}}), fibres);
}

Code rlz(const char* text) { return pca::code_of(pca::parse_term(text)); }

}  // namespace

TEST_CASE("entailment checking") {
  Collection a = col::finite_collection("A", {0, 1, 2});
  Prop p = finite_prop(a, {{0, {5}}, {1, {6}}, {2, {}}});

  CHECK(check_entailment(p, p, rlz("\\x. \\w. w"), cfg()) == Tri::Yes);

  Prop q = finite_prop(a, {{0, {9}}, {1, {9}}, {2, {9}}});
  auto pq = meet(p, q);
  CHECK(check_entailment(pq, p, rlz("\\x. \\w. p1 w"), cfg()) == Tri::Yes);
  CHECK(check_entailment(pq, q, rlz("\\x. \\w. p2 w"), cfg()) == Tri::Yes);
  CHECK(check_entailment(p, q, rlz("\\x. \\w. w"), cfg()) == Tri::No);

  // vacuous: empty premise fibres accept any realizer
  Prop bottom = bottom_prop(a);
  auto w = search_entailment(bottom, p, cfg());
  REQUIRE(w.has_value());
  CHECK(check_entailment(bottom, p, w->realizer, cfg()) == Tri::Yes);
}

TEST_CASE("table fallback finds non-uniform witnesses") {
  Collection a = col::finite_collection("A", {0, 1});
  Prop p = finite_prop(a, {{0, {3}}, {1, {4}}});
  Prop q = finite_prop(a, {{0, {8}}, {1, {9}}});
  // no catalog realizer maps 3->8 and 4->9 pointwise; the table does
  auto w = search_entailment(p, q, cfg());
  REQUIRE(w.has_value());
  CHECK(check_entailment(p, q, w->realizer, cfg()) == Tri::Yes);
}

TEST_CASE("refutation via definitely-empty fibres") {
  Collection a = col::finite_collection("A", {0, 1});
  Prop p = finite_prop(a, {{0, {3}}, {1, {4}}});
  Prop empty1 = finite_prop(a, {{0, {8}}});  // nothing over 1
  CHECK(entailment_refuted(p, empty1, cfg()));
  CHECK_FALSE(entailment_refuted(p, p, cfg()));
  CHECK(fibre_definitely_empty(bottom_prop(a), 0, cfg()));
}

TEST_CASE("heyting prealgebra laws via explicit realizers") {
  Collection a = col::finite_collection("A", {0, 1});
  Prop p = finite_prop(a, {{0, {3}}, {1, {4}}});
  Prop t = top_prop(a);

  // meet(top, P) and P bi-entail
  auto mt = meet(t, p);
  CHECK(check_entailment(mt, p, rlz("\\x. \\w. p2 w"), cfg()) == Tri::Yes);
  CHECK(check_entailment(p, mt, rlz("\\x. \\w. pair 0 w"), cfg()) == Tri::Yes);

  // join(bottom, P) and P bi-entail
  auto jb = join(bottom_prop(a), p);
  CHECK(check_entailment(jb, p, rlz("\\x. \\w. p2 w"), cfg()) == Tri::Yes);
  CHECK(check_entailment(p, jb, rlz("\\x. \\w. pair 1 w"), cfg()) == Tri::Yes);

  // meet commutativity via the swap realizer
  Prop q = finite_prop(a, {{0, {9}}, {1, {9}}});
  auto b1 = bi_entails(meet(p, q), meet(q, p), cfg());
  REQUIRE(b1.has_value());

  // residuation: meet(P,Q) <= R iff P <= imp(Q,R) on a sampled triple
  Prop r = finite_prop(a, {{0, {12}}, {1, {13}}});
  auto pqr = table_entailment(meet(p, q), r, cfg());
  REQUIRE(pqr.has_value());
  Code curried = curry_realizer(pqr->realizer.value == 0 ? pqr->realizer : pqr->realizer);
  CHECK(check_entailment(p, imp(q, r), curried, cfg()) == Tri::Yes);
  Code uncurried = uncurry_realizer(curried);
  CHECK(check_entailment(meet(p, q), r, uncurried, cfg()) == Tri::Yes);

  // top vs bottom on an inhabited base: no witness either way
  CHECK_FALSE(search_entailment(t, bottom_prop(a), cfg()).has_value());
}

TEST_CASE("quantifier adjunctions") {
  Collection a = col::finite_collection("A", {0, 1});
  Collection b = col::finite_collection("B", {0, 1});
  auto axb = col::product(a, b, cfg());
  Prop p = finite_prop(axb.object, [&] {
    std::map<Nat, std::vector<Nat>> f;
    for (const Nat& z : axb.object.support) f[z] = {7};
    return f;
  }());

  // exists unit: P <= subst_f(exists_f P) along p1
  Prop ex = exists_along(axb.p1, p);
  Prop sub = fam::substitute(axb.p1, ex);
  CHECK(check_entailment(p, sub, exists_unit_realizer(), cfg()) == Tri::Yes);

  // exists counit: exists_f(subst_f Q) <= Q
  Prop q = finite_prop(a, {{0, {2}}, {1, {3}}});
  Prop qsub = fam::substitute(axb.p1, q);
  Prop exq = exists_along(axb.p1, qsub);
  CHECK(check_entailment(exq, q, exists_counit_realizer(), cfg()) == Tri::Yes);

  // forall along the identity bi-entails P
  Collection single = col::finite_collection("S", {0, 1});
  Prop sp = finite_prop(single, {{0, {5}}, {1, {6}}});
  auto pi = forall_along(col::identity(single), sp, cfg());
  auto both = bi_entails(pi.object, sp, cfg());
  CHECK(both.has_value());

  // forall counit: subst_f(forall_f P) <= P
  Prop fsub = fam::substitute(axb.p1, forall_along(axb.p1, p, cfg()).object);
  CHECK(check_entailment(fsub, p, forall_counit_realizer(), cfg()) == Tri::Yes);
}

TEST_CASE("beck-chevalley on a product-projection square") {
  Collection a = col::finite_collection("A", {0, 1});
  Collection b = col::finite_collection("B", {0, 1});
  auto axb = col::product(a, b, cfg());
  Collection one = col::terminal_collection();
  col::Arrow bang_a{pca::prog::constant(0), a, one};

  Prop p = finite_prop(a, {{0, {5}}, {1, {6}}});

  // left: subst_{!B}(exists_{!A} P) over B
  col::Arrow bang_b{pca::prog::constant(0), b, one};
  Prop lhs = fam::substitute(bang_b, exists_along(bang_a, p));
  // right: exists_{p2}(subst_{p1} P) over B
  Prop rhs = exists_along(axb.p2, fam::substitute(axb.p1, p));

  // explicit shuffle realizers both ways
  Code to = rlz("\\x. \\w. pair (pair (p1 w) x) (p2 w)");
  Code back = rlz("\\x. \\w. pair (p1 (p1 w)) (p2 w)");
  CHECK(check_entailment(lhs, rhs, to, cfg()) == Tri::Yes);
  CHECK(check_entailment(rhs, lhs, back, cfg()) == Tri::Yes);
}

TEST_CASE("weak comprehension") {
  Collection a = col::finite_collection("A", {2, 3});
  Prop t = top_prop(a);
  auto ct = comprehension(t, cfg());
  // comprehension of top is iso to A: members pair(x, 0)
  CHECK(ct.object.support == std::vector<Nat>{cantor_pair(2, 0), cantor_pair(3, 0)});
  CHECK(col::validate_arrow(ct.cmp, cfg()) == Tri::Yes);

  Prop p = finite_prop(a, {{2, {11}}, {3, {}}});
  auto cp = comprehension(p, cfg());
  CHECK(cp.object.support == std::vector<Nat>{cantor_pair(2, 11)});

  // factorization: f : B -> A landing where P holds factors through cmp
  Collection b = col::finite_collection("B", {0});
  col::Arrow f{pca::prog::constant(2), b, a};
  Prop psub = fam::substitute(f, p);
  auto wit = search_entailment(top_prop(b), psub, cfg());
  REQUIRE(wit.has_value());
  col::Arrow factored = comprehension_factor(f, wit->realizer, cp);
  CHECK(col::validate_arrow(factored, cfg()) == Tri::Yes);
  CHECK(col::arrows_equal(col::compose(cp.cmp, factored), f, cfg()) == Tri::Yes);
}

TEST_CASE("separated propositions") {
  Collection a = col::finite_collection("A", {1, 2});
  Prop t = top_prop(a);
  Prop ts = separate(t);
  for (const Nat& x : a.support)
    CHECK(fam::fibre_support(ts, x, cfg()) == std::vector<Nat>{cantor_pair(x, 0)});

  // bi-entailment with the displayed realizers
  CHECK(check_entailment(t, ts, separate_fwd_realizer(), cfg()) == Tri::Yes);
  CHECK(check_entailment(ts, t, separate_bwd_realizer(), cfg()) == Tri::Yes);

  // separation: a realizer shared across distinct points cannot exist, since
  // the first projection pins the base point
  for (const Nat& x : a.support)
    for (const Nat& y : a.support) {
      if (x == y) continue;
      for (const Nat& w : fam::fibre_support(ts, x, cfg()))
        CHECK(fam::decide(ts, y, w, cfg()) == Verdict::Out);
    }
}

TEST_CASE("weak-subobject order agrees with factorization") {
  Collection a = col::finite_collection("A", {0, 1});
  Collection b = col::finite_collection("B", {4, 5});
  Collection c = col::finite_collection("C", {7, 8});
  // g : C -> A surjective on support, h : B -> C, f = g o h factors
  col::Arrow g{pp::lookup_table({{7, 0}, {8, 1}}, 0), c, a};
  col::Arrow h{pp::lookup_table({{4, 7}, {5, 8}}, 0), b, c};
  col::Arrow f = col::compose(g, h);

  Prop jf = fam::slice_to_family(f);
  Prop jg = fam::slice_to_family(g);
  // witness: send a preimage of f to its h-image, a preimage of g
  Code wit = pca::code_of(pp::lam(pp::lam(pp::app(pp::code_ref(h.code), pp::v(0)))));
  CHECK(check_entailment(jf, jg, wit, cfg()) == Tri::Yes);

  // non-factoring pair: g' hits only the point 0
  col::Arrow gp{pca::prog::constant(0), c, a};
  Prop jgp = fam::slice_to_family(gp);
  SearchOptions no_table;
  no_table.allow_table = false;
  CHECK_FALSE(search_entailment(jf, jgp, cfg(), no_table).has_value());
}
