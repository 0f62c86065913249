#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "peff/universe.hpp"

using namespace peff;
using namespace peff::uni;
using pca::Code;
namespace pp = pca::prog;

namespace {

EvalCfg cfg() {
  EvalCfg c;
  c.bound = 40;  // keep coherence scans quick in unit tests
  return c;
}

Code const_code(const Nat& c) { return pp::constant(c); }

// ---------------------------------------------------------------------------
// Independent oracle: computes set-hood and extensions directly from the
// clause definitions with explicit std::set values; Pi membership is decided
// by running candidate codes rather than by the fixpoint recursion.

struct Oracle {
  EvalCfg ec;

  bool set_ok(const Nat& c, unsigned depth) {
    if (depth == 0) return false;
    auto v = view_code(c);
    if (!v) return false;
    bool ok = true;
    std::visit(
        [&](auto&& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, SigmaC> || std::is_same_v<T, PiC>) {
            if (!set_ok(s.dom, depth - 1)) {
              ok = false;
              return;
            }
            for (const Nat& t : extension(s.dom, depth - 1)) {
              auto r = pca::kleene_apply(Code{s.fam}, {t}, ec.fuel);
              if (!r.is_value() || !set_ok(r.value, depth - 1)) {
                ok = false;
                return;
              }
            }
          }
          if constexpr (std::is_same_v<T, PlusC>)
            ok = set_ok(s.left, depth - 1) && set_ok(s.right, depth - 1);
          if constexpr (std::is_same_v<T, ListC>) ok = set_ok(s.elem, depth - 1);
          if constexpr (std::is_same_v<T, IdC>)
            ok = set_ok(s.set, depth - 1) && member(s.lhs, s.set, depth - 1) &&
                 member(s.rhs, s.set, depth - 1);
        },
        *v);
    return ok;
  }

  // finite extensions for every constructor except Pi and Id (whose
  // memberships are answered pointwise)
  std::set<Nat> extension(const Nat& c, unsigned depth) {
    std::set<Nat> out;
    auto v = view_code(c);
    if (!v || depth == 0) return out;
    std::visit(
        [&](auto&& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, N1>) out.insert(0);
          if constexpr (std::is_same_v<T, SigmaC>) {
            for (const Nat& t : extension(s.dom, depth - 1)) {
              auto r = pca::kleene_apply(Code{s.fam}, {t}, ec.fuel);
              if (!r.is_value()) continue;
              for (const Nat& u : extension(r.value, depth - 1))
                out.insert(cantor_pair(t, u));
            }
          }
          if constexpr (std::is_same_v<T, PlusC>) {
            for (const Nat& t : extension(s.left, depth - 1)) out.insert(cantor_pair(0, t));
            for (const Nat& t : extension(s.right, depth - 1)) out.insert(cantor_pair(1, t));
          }
          // Pi, List, Id: pointwise membership only
        },
        *v);
    return out;
  }

  bool member(const Nat& x, const Nat& c, unsigned depth) {
    auto v = view_code(c);
    if (!v || depth == 0) return false;
    if (!set_ok(c, depth)) return false;
    bool res = false;
    std::visit(
        [&](auto&& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, N0>) res = false;
          if constexpr (std::is_same_v<T, N1>) res = x == 0;
          if constexpr (std::is_same_v<T, SigmaC>) {
            Nat x1 = cantor_proj1(x), x2 = cantor_proj2(x);
            if (!member(x1, s.dom, depth - 1)) return;
            auto r = pca::kleene_apply(Code{s.fam}, {x1}, ec.fuel);
            res = r.is_value() && member(x2, r.value, depth - 1);
          }
          if constexpr (std::is_same_v<T, PiC>) {
            res = true;
            for (const Nat& t : extension(s.dom, depth - 1)) {
              auto xt = pca::kleene_apply(Code{x}, {t}, ec.fuel);
              auto bt = pca::kleene_apply(Code{s.fam}, {t}, ec.fuel);
              if (!xt.is_value() || !bt.is_value() ||
                  !member(xt.value, bt.value, depth - 1)) {
                res = false;
                return;
              }
            }
          }
          if constexpr (std::is_same_v<T, PlusC>) {
            Nat tag = cantor_proj1(x), payload = cantor_proj2(x);
            if (tag == 0) res = member(payload, s.left, depth - 1);
            if (tag == 1) res = member(payload, s.right, depth - 1);
          }
          if constexpr (std::is_same_v<T, ListC>) {
            res = true;
            for (const Nat& comp : decode_list(x))
              if (!member(comp, s.elem, depth - 1)) {
                res = false;
                return;
              }
          }
          if constexpr (std::is_same_v<T, IdC>) res = s.lhs == s.rhs;
        },
        *v);
    return res;
  }
};

// deterministic constructor-generated code pool
std::vector<Nat> generate_codes(unsigned depth, std::size_t level_cap) {
  std::vector<Nat> pool = {mk_n0(), mk_n1()};
  for (unsigned d = 2; d <= depth; ++d) {
    std::vector<Nat> next = pool;
    std::vector<Nat> fams;
    for (const Nat& c : pool) fams.push_back(const_code(c).value);
    fams.push_back(pp::identity().value);  // deliberately ill-typed family map
    for (const Nat& a : pool) {
      for (const Nat& b : fams) {
        next.push_back(mk_sigma(a, b));
        next.push_back(mk_pi(a, b));
      }
      for (const Nat& b : pool) next.push_back(mk_plus(a, b));
      next.push_back(mk_list(a));
      for (Nat x = 0; x <= 1; ++x)
        for (Nat y = 0; y <= 1; ++y) next.push_back(mk_id(a, x, y));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > level_cap) next.resize(level_cap);
    pool = std::move(next);
  }
  return pool;
}

}  // namespace

TEST_CASE("encodings match their displayed forms") {
  CHECK(mk_n0() == cantor_pair(1, 0));
  CHECK(mk_n1() == cantor_pair(1, 1));
  CHECK(mk_sigma(3, 4) == cantor_pair(2, cantor_pair(3, 4)));
  Nat a = 9;
  CHECK(mk_id(a, 5, 5) == cantor_pair(6, cantor_pair(a, cantor_pair(5, 5))));
  auto view = view_code(mk_list(mk_n1()));
  REQUIRE(view.has_value());
  CHECK(std::holds_alternative<ListC>(*view));
}

TEST_CASE("constructor numerals compute the encodings") {
  auto run2 = [&](Ctor c, const Nat& x, const Nat& y) {
    auto r = pca::kleene_apply(constructor_numeral(c), {x, y}, cfg().fuel);
    REQUIRE(r.is_value());
    return r.value;
  };
  CHECK(run2(Ctor::Sigma, 7, 8) == mk_sigma(7, 8));
  CHECK(run2(Ctor::Pi, 7, 8) == mk_pi(7, 8));
  CHECK(run2(Ctor::Plus, 7, 8) == mk_plus(7, 8));
  auto rl = pca::kleene_apply(constructor_numeral(Ctor::List), {7}, cfg().fuel);
  REQUIRE(rl.is_value());
  CHECK(rl.value == mk_list(7));
  auto ri = pca::kleene_apply(constructor_numeral(Ctor::Id), {7, 8, 9}, cfg().fuel);
  REQUIRE(ri.is_value());
  CHECK(ri.value == mk_id(7, 8, 9));
}

TEST_CASE("fixpoint membership basics") {
  UniverseCtx ctx(cfg());
  CHECK(check_member(0, mk_n1(), ctx, cfg().depth) == Verdict::In);
  CHECK(check_member(1, mk_n1(), ctx, cfg().depth) == Verdict::Out);
  for (Nat k = 0; k <= 5; ++k) CHECK(check_member(k, mk_n0(), ctx, cfg().depth) == Verdict::Out);

  Nat sig = mk_sigma(mk_n1(), const_code(mk_n1()).value);
  CHECK(check_member(cantor_pair(0, 0), sig, ctx, cfg().depth) == Verdict::In);
  CHECK(check_member(cantor_pair(0, 1), sig, ctx, cfg().depth) == Verdict::Out);

  // nonmembership mirrors membership on these
  CHECK(check_nonmember(1, mk_n1(), ctx, cfg().depth) == Verdict::In);
  CHECK(check_nonmember(0, mk_n1(), ctx, cfg().depth) == Verdict::Out);
  CHECK(check_nonmember(3, mk_n0(), ctx, cfg().depth) == Verdict::In);
}

TEST_CASE("coherence") {
  UniverseCtx ctx(cfg());
  CHECK(check_coherence(mk_n1(), ctx) == Verdict::In);
  // sigma with empty value family: coherent with empty extension
  Nat empty_sig = mk_sigma(mk_n1(), const_code(mk_n0()).value);
  CHECK(check_coherence(empty_sig, ctx) == Verdict::In);
  CHECK(us_member(empty_sig, ctx) == Verdict::In);
  // invalid tags are rejected outright
  CHECK(us_member(cantor_pair(9, 9), ctx) == Verdict::Out);

  // a code with unknown sub-checks is never definitely coherent
  EvalCfg starved = cfg();
  starved.fuel = 10;
  starved.bound = 3;
  Code diverge = pca::code_of(pca::parse_term("\\t. fix (\\r. \\y. r y) t"));
  Nat bad = mk_sigma(mk_n1(), diverge.value);
  UniverseCtx sctx(starved);
  CHECK(check_coherence(bad, sctx) != Verdict::In);
}

TEST_CASE("enumeration") {
  UniverseCtx ctx(cfg());
  CHECK(enumerate_members(mk_n1(), ctx, cfg().depth) == std::vector<Nat>{0});
  Nat two = mk_plus(mk_n1(), mk_n1());
  std::vector<Nat> expect = {cantor_pair(0, 0), cantor_pair(1, 0)};
  std::sort(expect.begin(), expect.end());
  CHECK(enumerate_members(two, ctx, cfg().depth) == expect);
  CHECK(enumerate_members(mk_list(mk_n0()), ctx, cfg().depth) == std::vector<Nat>{0});
}

TEST_CASE("fixpoint agrees with the set-theoretic oracle") {
  EvalCfg c = cfg();
  c.bound = 20;
  Oracle oracle{c};
  UniverseCtx ctx(c);
  auto codes = generate_codes(3, 60);
  for (const Nat& code : codes) {
    Verdict sv = check_set(code, ctx, c.depth);
    REQUIRE(sv != Verdict::Unknown);
    bool oracle_ok = oracle.set_ok(code, c.depth);
    CHECK((sv == Verdict::In) == oracle_ok);
    if (!oracle_ok) continue;
    for (Nat t = 0; t <= c.bound; ++t) {
      Verdict mv = check_member(t, code, ctx, c.depth);
      Verdict nv = check_nonmember(t, code, ctx, c.depth);
      REQUIRE(mv != Verdict::Unknown);
      REQUIRE(nv != Verdict::Unknown);
      bool om = oracle.member(t, code, c.depth);
      CHECK((mv == Verdict::In) == om);
      CHECK((nv == Verdict::In) == !om);
    }
    CHECK(check_coherence(code, ctx) == Verdict::In);
  }
}

TEST_CASE("tau families") {
  col::Collection n8 = col::nat_collection(8);
  // all fibres are the singleton {0}
  fam::Family tau1 = tau_family(n8, const_code(mk_n1()), cfg());
  for (const Nat& x : n8.support)
    CHECK(fam::fibre_support(tau1, x, cfg()) == std::vector<Nat>{0});

  // pairs from a two-element set
  Nat two = mk_plus(mk_n1(), mk_n1());
  fam::Family taup = tau_family(n8, const_code(mk_sigma(two, const_code(mk_n1()).value)), cfg());
  CHECK(fam::fibre_support(taup, 0, cfg()).size() == 2);

  // a base point mapping to garbage is rejected with the offending point
  Code bad = pca::code_of(pca::parse_term("\\x. ite (eq0 x) 4 99"));
  try {
    (void)tau_family(n8, bad, cfg());
    FAIL("expected not_a_set_code");
  } catch (const not_a_set_code& e) {
    CHECK(e.base_point == 1);
  }

  // substitution lemma: subst_f(tau_B(n)) = tau_A(n o f) on supports
  col::Arrow succ{pca::code_of(pca::mk_builtin(pca::Builtin::Succ)), n8, n8};
  Code nmap = const_code(two);
  fam::Family lhs = fam::substitute(succ, tau_family(n8, Code{nmap}, cfg()));
  fam::Family rhs = tau_family(n8, pp::compose(nmap, succ.code), cfg());
  CHECK(fam::families_equal_on_supports(lhs, rhs, cfg()) == Tri::Yes);
}

TEST_CASE("set-level structure isomorphisms") {
  col::Collection a = col::finite_collection("A", {0, 1});
  EvalCfg c = cfg();

  auto check_strict = [&](const TauConstruction& tc) {
    REQUIRE(tc.strict_iso);
    CHECK(fam::validate_iso(fam::FamilyIso{tc.to, tc.from}, c) == Tri::Yes);
  };

  check_strict(set_terminal(a, c));
  check_strict(set_initial(a, c));

  Nat two = mk_plus(mk_n1(), mk_n1());
  TauFamily tn = mk_tau(a, const_code(two), c);
  TauFamily tm = mk_tau(a, const_code(mk_n1()), c);
  check_strict(set_product(tn, tm, c));
  check_strict(set_coproduct(tn, tm, c));
  check_strict(set_list(tm, c));
  check_strict(set_weak_exp(tm, tn, c));

  // equalizer of parallel maps tau(two) -> tau(two): retraction plus
  // extension agreement
  fam::FamilyMap j = fam::fam_identity(tn.family);
  fam::FamilyMap k{pca::code_of(pp::lam(pp::lam(pp::c(cantor_pair(0, 0))))), tn.family,
                   tn.family};
  TauConstruction eq = set_equalizer(tn, tn, j, k, c);
  CHECK_FALSE(eq.strict_iso);
  CHECK(fam::validate_map(eq.to, c) == Tri::Yes);
  CHECK(fam::validate_map(eq.from, c) == Tri::Yes);
  CHECK(fam::maps_equal(fam::fam_compose(eq.from, eq.to), fam::fam_identity(eq.plain), c) ==
        Tri::Yes);
  // extension agreement: the plain equalizer contains exactly the first
  // components of the code-side extension
  for (const Nat& x : a.support) {
    for (const Nat& w : fam::fibre_support(eq.object.family, x, c))
      CHECK(fam::decide(eq.plain, x, cantor_proj1(w), c) == Verdict::In);
    for (const Nat& y : fam::fibre_support(eq.plain, x, c))
      CHECK(fam::decide(eq.object.family, x, cantor_pair(y, 0), c) == Verdict::In);
  }
}

TEST_CASE("representable maps and their sigma/pi") {
  col::Collection b = col::finite_collection("B", {0, 1});
  EvalCfg c = cfg();
  Nat two = mk_plus(mk_n1(), mk_n1());
  Presentation pres = canonical_presentation(b, const_code(two), c);
  CHECK(verify_presentation(pres.proj, pres, c) == Tri::Yes);

  // a family over the total space
  TauFamily cfam = mk_tau(pres.total, const_code(mk_n1()), c);
  SigmaPiRepresentable spr = sigma_pi_representable(pres, cfam, c);

  // sigma agrees with the families-level sigma via a strict iso
  CHECK(fam::validate_iso(fam::FamilyIso{spr.sigma_to, spr.sigma_from}, c) == Tri::Yes);

  // pi: maps are valid both ways and extensionally inverse on the supports
  CHECK(fam::validate_map(spr.pi_to, c) == Tri::Yes);
  CHECK(fam::validate_map(spr.pi_from, c) == Tri::Yes);
  fam::Family plain_pi = fam::weak_pi_along(pres.proj, cfam.family, c).object;
  for (const Nat& x : b.support) {
    for (const Nat& d : fam::fibre_support(spr.pi.family, x, c)) {
      auto back = fam::apply_map(spr.pi_from, x, d, c);
      REQUIRE(back.is_value());
      CHECK(fam::decide(plain_pi, x, back.value, c) == Verdict::In);
      // extensional identity: the roundtrip computes the same function on
      // every member of the domain extension
      auto there = fam::apply_map(spr.pi_to, x, back.value, c);
      REQUIRE(there.is_value());
      UniverseCtx ctx(c);
      auto nx = pca::kleene_apply(Code{pres.code_map}, {x}, c.fuel);
      REQUIRE(nx.is_value());
      for (const Nat& y : enumerate_members(nx.value, ctx, c.depth)) {
        auto v1 = pca::kleene_apply(Code{d}, {y}, c.fuel);
        auto v2 = pca::kleene_apply(Code{there.value}, {y}, c.fuel);
        REQUIRE(v1.is_value());
        REQUIRE(v2.is_value());
        CHECK(v1.value == v2.value);
      }
    }
  }
}

TEST_CASE("small propositions") {
  col::Collection a = col::finite_collection("A", {0, 1});
  EvalCfg c = cfg();
  SmallProp top = small_top(a, c);
  CHECK(fam::fibre_support(top.prop, 0, c) == std::vector<Nat>{0});

  SmallProp bot = small_bottom(a, c);
  CHECK(fam::fibre_support(bot.prop, 0, c).empty());

  SmallProp both = small_meet(top, top, c);
  // meets stay small and bi-entail the doctrine-level meet
  doc::Prop plain = doc::meet(top.prop, top.prop);
  auto w = doc::bi_entails(both.prop, plain, c);
  CHECK(w.has_value());

  SmallProp either = small_join(top, bot, c);
  CHECK(fam::fibre_support(either.prop, 0, c) == std::vector<Nat>{cantor_pair(0, 0)});

  SmallProp impl = small_imp(bot, bot, c);
  CHECK_FALSE(fam::fibre_support(impl.prop, 0, c).empty());
}
