#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "peff/pca.hpp"

using namespace peff;
using namespace peff::pca;

namespace {

Nat run1(const Code& f, const Nat& x, Fuel fuel = kDefaultFuel) {
  EvalResult r = kleene_apply(f, {x}, fuel);
  REQUIRE(r.is_value());
  return r.value;
}

Nat runN(const Code& f, const std::vector<Nat>& xs, Fuel fuel = kDefaultFuel) {
  EvalResult r = kleene_apply(f, xs, fuel);
  REQUIRE(r.is_value());
  return r.value;
}

}  // namespace

TEST_CASE("cantor pairing matches the hand oracle") {
  CHECK(cantor_pair(0, 0) == 0);
  CHECK(cantor_pair(3, 4) == 32);  // (3+4)(3+4+1)/2 + 4
  CHECK(cantor_proj1(cantor_pair(3, 4)) == 3);
  CHECK(cantor_proj2(cantor_pair(3, 4)) == 4);
}

TEST_CASE("pairing is a bijection on an initial segment") {
  for (Nat z = 0; z <= 1000; ++z) {
    auto [x, y] = cantor_unpair(z);
    CHECK(cantor_pair(x, y) == z);
  }
  for (Nat x = 0; x <= 50; ++x)
    for (Nat y = 0; y <= 50; ++y) {
      auto [a, b] = cantor_unpair(cantor_pair(x, y));
      CHECK(a == x);
      CHECK(b == y);
    }
}

TEST_CASE("list codec") {
  CHECK(encode_list({}) == 0);
  Nat l = encode_list({5, 7});
  CHECK(list_length(l) == 2);
  CHECK(list_component(l, 0) == 5);
  CHECK(list_component(l, 1) == 7);
  CHECK_THROWS_AS((void)list_component(l, 2), index_out_of_range);
  CHECK(list_concat(encode_list({5}), 7) == l);
  // surjectivity: every natural is a list code
  for (Nat n = 0; n <= 1000; ++n) CHECK(encode_list(decode_list(n)) == n);
}

TEST_CASE("godel numbering is a bijection") {
  for (Nat n = 0; n <= 2000; ++n) CHECK(encode_term(decode_term(n)) == n);
  Term t = mk_lam(mk_app(mk_builtin(Builtin::Succ), mk_var(0)));
  CHECK(term_equal(decode_term(encode_term(t)), t));
}

TEST_CASE("kleene application basics") {
  // {ite}(0,x,y) = x
  EvalResult r = kleene_apply(code_of(mk_builtin(Builtin::Ite)), {0, 7, 9}, 1000);
  REQUIRE(r.is_value());
  CHECK(r.value == 7);
  CHECK(runN(code_of(mk_builtin(Builtin::Ite)), {1, 7, 9}) == 9);

  CHECK(run1(prog::identity(), 5) == 5);

  // forced divergence: fix (\r.\x. {r}(x)) applied to 0
  using namespace prog;
  Term loop = app(b(Builtin::Fix), lam(lam(app(v(1), v(0)))));
  EvalResult d = kleene_apply(code_of(lam(app(loop, v(0)))), {0}, 10);
  CHECK(d.kind == EvalResult::Kind::FuelExhausted);
  CHECK(d.steps == 10);
}

TEST_CASE("lambda abstraction") {
  using namespace prog;
  CHECK(run1(lambda_abstract(v(0)), 42) == 42);
  CHECK(run1(lambda_abstract(app(b(Builtin::Succ), v(0))), 3) == 4);
  CHECK(run1(lambda_abstract(app(b(Builtin::Pair), v(0), v(0))), 2) == cantor_pair(2, 2));
  CHECK_THROWS_AS((void)lambda_abstract(app(v(0), v(1))), open_term);
}

TEST_CASE("beta law on sampled bodies") {
  using namespace prog;
  std::mt19937_64 rng(20240917);
  auto rnd = [&](unsigned m) { return static_cast<unsigned>(rng() % m); };
  // random bodies with at most Var 0 free
  std::function<Term(unsigned)> gen = [&](unsigned depth) -> Term {
    unsigned pick = rnd(depth == 0 ? 3u : 5u);
    switch (pick) {
      case 0: return v(0);
      case 1: return c(rnd(16));
      case 2: return b(static_cast<Builtin>(rnd(6)));  // skip fix/eq0 for speed
      case 3: return app(gen(depth - 1), gen(depth - 1));
      default: return lam(gen(depth - 1));
    }
  };
  for (int i = 0; i < 200; ++i) {
    Term body = gen(3);
    if (free_depth(body) > 1) continue;
    Nat n = rnd(65);
    Code abs = lambda_abstract(body);
    EvalResult via_apply = kleene_apply(abs, {n}, 20000);
    // direct evaluation of the substituted body
    Term direct = mk_app(mk_lam(body), mk_const(n));
    EvalResult via_subst = eval_term(direct, 20000);
    CHECK(via_apply.kind == via_subst.kind);
    if (via_apply.is_value()) CHECK(via_apply.value == via_subst.value);
  }
}

TEST_CASE("builtins satisfy their defining equations") {
  using namespace prog;
  Code p = numeral(Numeral::P), p1 = numeral(Numeral::P1), p2 = numeral(Numeral::P2);
  for (Nat x = 0; x <= 50; x += 7)
    for (Nat y = 0; y <= 50; y += 9) {
      CHECK(runN(p, {x, y}) == cantor_pair(x, y));
      CHECK(run1(p1, cantor_pair(x, y)) == x);
      CHECK(run1(p2, cantor_pair(x, y)) == y);
    }
  CHECK(run1(numeral(Numeral::P1), cantor_pair(8, 9)) == 8);
  CHECK(run1(numeral(Numeral::Succ), 11) == 12);
  CHECK(runN(numeral(Numeral::Cnc), {encode_list({5}), 7}) == encode_list({5, 7}));
}

TEST_CASE("rec satisfies the primitive recursion equations") {
  using namespace prog;
  Code rec = numeral(Numeral::Rec);
  Code keep_acc = code_of(lam(lam(v(0))));  // \n.\acc. acc
  CHECK(runN(rec, {5, keep_acc.value, 0}) == 5);
  Code step_succ = code_of(lam(lam(app(b(Builtin::Succ), v(0)))));
  CHECK(runN(rec, {0, step_succ.value, 3}) == 3);
  // rec(b,s,n+1) = s(n, rec(b,s,n)) spot check: s = \n.\acc. pair(n, acc)
  Code s = code_of(lam(lam(app(b(Builtin::Pair), v(1), v(0)))));
  Nat r2 = runN(rec, {9, s.value, 2});
  CHECK(r2 == cantor_pair(1, cantor_pair(0, 9)));
}

TEST_CASE("listrec satisfies the list recursion equations") {
  using namespace prog;
  Code lr = numeral(Numeral::Listrec);
  // count elements: base 0, step \l.\a.\acc. succ acc
  Code count_step = code_of(lam(lam(lam(app(b(Builtin::Succ), v(0))))));
  CHECK(runN(lr, {0, count_step.value, encode_list({4, 4})}) == 2);
  CHECK(runN(lr, {0, count_step.value, 0}) == 0);
  // step sees the prefix code and the appended element
  Code last_elem = code_of(lam(lam(lam(v(1)))));
  CHECK(runN(lr, {99, last_elem.value, encode_list({5, 7, 9})}) == 9);
}

TEST_CASE("kleene T and U") {
  Code id = prog::identity();
  EvalResult r = kleene_apply(id, {5}, 1000);
  REQUIRE(r.is_value());
  Nat k0 = r.steps;
  CHECK(kleene_T(id, 5, cantor_pair(k0, 5)));
  CHECK_FALSE(kleene_T(id, 5, cantor_pair(k0, 6)));
  CHECK(kleene_U(cantor_pair(12, 99)) == 99);
}

TEST_CASE("fuel monotonicity") {
  using namespace prog;
  std::vector<std::pair<Code, std::vector<Nat>>> cases = {
      {numeral(Numeral::Rec), {0, code_of(lam(lam(app(b(Builtin::Succ), v(0))))).value, 5}},
      {prog::eqnat(), {Nat("123456789123456789"), Nat("123456789123456789")}},
      {numeral(Numeral::Listrec), {0, code_of(lam(lam(lam(v(1))))).value, encode_list({3, 1})}},
  };
  for (auto& [f, args] : cases) {
    EvalResult base;
    Fuel need = 0;
    for (Fuel fu = 1;; fu *= 2) {
      base = kleene_apply(f, args, fu);
      if (base.is_value()) {
        need = fu;
        break;
      }
      REQUIRE(fu < (Fuel(1) << 32));
    }
    for (Fuel extra : {Fuel(1), Fuel(17), Fuel(4096)}) {
      EvalResult again = kleene_apply(f, args, need + extra);
      CHECK(again.is_value());
      CHECK(again.value == base.value);
    }
  }
}

TEST_CASE("prelude: structural equality, monus, less-than, tables") {
  Code eq = prog::eqnat();
  for (Nat a = 0; a <= 12; ++a)
    for (Nat b = 0; b <= 12; ++b) CHECK(runN(eq, {a, b}) == (a == b ? 0 : 1));
  // big values: term codes
  Nat big1 = numeral(Numeral::Listrec).value;
  Nat big2 = numeral(Numeral::Rec).value;
  CHECK(runN(eq, {big1, big1}) == 0);
  CHECK(runN(eq, {big1, big2}) == 1);

  Code m = prog::monus();
  CHECK(runN(m, {9, 3}) == 6);
  CHECK(runN(m, {3, 9}) == 0);
  Code lt = prog::less_than();
  CHECK(runN(lt, {2, 5}) == 0);
  CHECK(runN(lt, {5, 5}) == 1);
  CHECK(runN(lt, {7, 5}) == 1);

  Code table = prog::lookup_table({{big1, 11}, {big2, 22}, {Nat(4), 33}}, 99);
  CHECK(run1(table, big1) == 11);
  CHECK(run1(table, big2) == 22);
  CHECK(run1(table, 4) == 33);
  CHECK(run1(table, 5) == 99);
}

TEST_CASE("textual term syntax") {
  Term t = parse_term("(\\x. x) 5");
  EvalResult r = eval_term(t, 100);
  REQUIRE(r.is_value());
  CHECK(r.value == 5);
  CHECK(runN(code_of(parse_term("\\a. \\b. pair b a")), {3, 4}) == cantor_pair(4, 3));
  // numerals resolve as constants of their codes
  CHECK(runN(code_of(parse_term("\\l. \\x. cnc l x")), {encode_list({1}), 2}) ==
        encode_list({1, 2}));
  CHECK_THROWS_AS((void)parse_term("\\x. y"), parse_error);
  // show/parse round trip on a nontrivial program
  Term p = parse_term("\\f. \\x. ite (eq0 x) (f 0) (succ x)");
  CHECK(term_equal(parse_term(show_term(p)), p));
}
