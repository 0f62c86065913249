#include "peff/lang.hpp"

#include <algorithm>
#include <cctype>

#include "peff/universe_core.hpp"

namespace peff::lang {

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

TermPtr t_var(std::string name) {
  return std::make_shared<const TermExpr>(TermExpr{VarRef{std::move(name)}});
}
TermPtr t_point(Arrow arrow, std::string shown) {
  return std::make_shared<const TermExpr>(TermExpr{PointConst{std::move(arrow), std::move(shown)}});
}
TermPtr t_apply(Arrow arrow, std::vector<TermPtr> args, std::string name) {
  return std::make_shared<const TermExpr>(
      TermExpr{ApplyFn{std::move(arrow), std::move(args), std::move(name)}});
}
TermPtr t_ctx() { return std::make_shared<const TermExpr>(TermExpr{CtxTuple{}}); }

FormulaPtr f_atom(Prop prop, std::vector<TermPtr> args, std::string name) {
  return std::make_shared<const Formula>(Formula{Atom{std::move(prop), std::move(args), std::move(name)}});
}
FormulaPtr f_eq(Collection coll, TermPtr lhs, TermPtr rhs) {
  return std::make_shared<const Formula>(Formula{EqF{std::move(coll), std::move(lhs), std::move(rhs)}});
}
FormulaPtr f_bottom() { return std::make_shared<const Formula>(Formula{BottomF{}}); }
FormulaPtr f_and(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<const Formula>(Formula{AndF{std::move(l), std::move(r)}});
}
FormulaPtr f_or(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<const Formula>(Formula{OrF{std::move(l), std::move(r)}});
}
FormulaPtr f_imp(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<const Formula>(Formula{ImpF{std::move(l), std::move(r)}});
}
FormulaPtr f_exists(std::string var, Collection coll, FormulaPtr body) {
  return std::make_shared<const Formula>(
      Formula{ExistsF{std::move(var), std::move(coll), std::move(body)}});
}
FormulaPtr f_forall(std::string var, Collection coll, FormulaPtr body) {
  return std::make_shared<const Formula>(
      Formula{ForallF{std::move(var), std::move(coll), std::move(body)}});
}

// ---------------------------------------------------------------------------
// Interpretation

Collection context_collection(const Context& ctx, const EvalCfg& cfg) {
  Collection acc = col::terminal_collection();
  for (const auto& [name, coll] : ctx.vars) acc = col::product(acc, coll, cfg).object;
  return acc;
}

Arrow var_projection(const Context& ctx, const std::string& name, const EvalCfg& cfg) {
  std::size_t index = ctx.vars.size();
  for (std::size_t i = 0; i < ctx.vars.size(); ++i)
    if (ctx.vars[i].first == name) index = i;
  if (index == ctx.vars.size()) throw type_error("unbound variable '" + name + "'");
  // p2 o p1^(n-1-index)
  Term body = pp::v(0);
  for (std::size_t k = ctx.vars.size() - 1; k > index; --k) body = proj1(std::move(body));
  body = proj2(std::move(body));
  return Arrow{pca::code_of(pp::lam(body)), context_collection(ctx, cfg),
               ctx.vars[index].second};
}

Collection term_type(const TermPtr& t, const Context& ctx) {
  if (auto* v = std::get_if<VarRef>(&t->node)) {
    for (const auto& [name, coll] : ctx.vars)
      if (name == v->name) return coll;
    throw type_error("unbound variable '" + v->name + "'");
  }
  if (auto* p = std::get_if<PointConst>(&t->node)) return p->arrow.cod;
  if (std::holds_alternative<CtxTuple>(t->node)) return context_collection(ctx, EvalCfg{});
  return std::get<ApplyFn>(t->node).arrow.cod;
}

Arrow interpret_term(const TermPtr& t, const Context& ctx, const EvalCfg& cfg) {
  Collection base = context_collection(ctx, cfg);
  if (std::holds_alternative<CtxTuple>(t->node)) return col::identity(base);
  if (auto* v = std::get_if<VarRef>(&t->node)) return var_projection(ctx, v->name, cfg);
  if (auto* p = std::get_if<PointConst>(&t->node)) {
    // e o ! : compose with the unique arrow to the terminal
    Term body = pp::app(pp::code_ref(p->arrow.code), pp::c(0));
    return Arrow{pca::code_of(pp::lam(body)), base, p->arrow.cod};
  }
  const auto& ap = std::get<ApplyFn>(t->node);
  if (ap.args.empty()) throw type_error("function application needs arguments");
  Term tuple = pp::app(pp::code_ref(interpret_term(ap.args[0], ctx, cfg).code), pp::v(0));
  for (std::size_t i = 1; i < ap.args.size(); ++i)
    tuple = mkpair(std::move(tuple),
                   pp::app(pp::code_ref(interpret_term(ap.args[i], ctx, cfg).code), pp::v(0)));
  Term body = pp::app(pp::code_ref(ap.arrow.code), std::move(tuple));
  return Arrow{pca::code_of(pp::lam(body)), base, ap.arrow.cod};
}

namespace {

// left-nested tuple of interpreted terms, as an arrow into the atom's base
Arrow tuple_arrow(const std::vector<TermPtr>& args, const Context& ctx,
                  const Collection& target, const EvalCfg& cfg) {
  Collection base = context_collection(ctx, cfg);
  if (args.empty())
    return Arrow{pca::prog::constant(0), base, target};
  Term tuple = pp::app(pp::code_ref(interpret_term(args[0], ctx, cfg).code), pp::v(0));
  for (std::size_t i = 1; i < args.size(); ++i)
    tuple = mkpair(std::move(tuple),
                   pp::app(pp::code_ref(interpret_term(args[i], ctx, cfg).code), pp::v(0)));
  return Arrow{pca::code_of(pp::lam(tuple)), base, target};
}

}  // namespace

Prop interpret(const FormulaPtr& phi, const Context& ctx, const EvalCfg& cfg) {
  Collection base = context_collection(ctx, cfg);
  return std::visit(
      [&](auto&& n) -> Prop {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atom>) {
          Arrow tup = tuple_arrow(n.args, ctx, n.prop.base, cfg);
          return fam::substitute(tup, n.prop);
        }
        if constexpr (std::is_same_v<T, EqF>) {
          // exists along the diagonal applied to top, then substituted
          auto axa = col::product(n.coll, n.coll, cfg);
          Arrow diag{pca::code_of(pp::lam(mkpair(pp::v(0), pp::v(0)))), n.coll, axa.object};
          Prop eq = fam::sigma_along(diag, fam::fam_terminal(n.coll));
          Arrow lhs = interpret_term(n.lhs, ctx, cfg);
          Arrow rhs = interpret_term(n.rhs, ctx, cfg);
          Arrow pair_ts{pca::prog::pair_of(lhs.code, rhs.code), base, axa.object};
          return fam::substitute(pair_ts, eq);
        }
        if constexpr (std::is_same_v<T, BottomF>) return doc::bottom_prop(base);
        if constexpr (std::is_same_v<T, AndF>)
          return doc::meet(interpret(n.l, ctx, cfg), interpret(n.r, ctx, cfg));
        if constexpr (std::is_same_v<T, OrF>)
          return doc::join(interpret(n.l, ctx, cfg), interpret(n.r, ctx, cfg));
        if constexpr (std::is_same_v<T, ImpF>)
          return doc::imp(interpret(n.l, ctx, cfg), interpret(n.r, ctx, cfg));
        if constexpr (std::is_same_v<T, ExistsF>) {
          Context ext = ctx;
          ext.vars.emplace_back(n.var, n.coll);
          Prop body = interpret(n.body, ext, cfg);
          return fam::mk_family(
              base, fdec({col::FamGuarded{
                        base.decider, fdec({col::FamSigmaPrime{n.coll.decider, n.coll.support,
                                                               body.decider}})}}));
        }
        if constexpr (std::is_same_v<T, ForallF>) {
          Context ext = ctx;
          ext.vars.emplace_back(n.var, n.coll);
          Prop body = interpret(n.body, ext, cfg);
          return fam::mk_family(
              base, fdec({col::FamGuarded{
                        base.decider, fdec({col::FamPiPrime{n.coll.decider, n.coll.support,
                                                            body.decider}})}}));
        }
      },
      phi->node);
}

// ---------------------------------------------------------------------------
// Validity via formula-directed synthesis

namespace {

bool terms_equal(const TermPtr& a, const TermPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* va = std::get_if<VarRef>(&a->node))
    return va->name == std::get<VarRef>(b->node).name;
  if (auto* pa = std::get_if<PointConst>(&a->node))
    return pa->arrow.code.value == std::get<PointConst>(b->node).arrow.code.value;
  if (std::holds_alternative<CtxTuple>(a->node)) return true;
  const auto& fa = std::get<ApplyFn>(a->node);
  const auto& fb = std::get<ApplyFn>(b->node);
  if (fa.arrow.code.value != fb.arrow.code.value || fa.args.size() != fb.args.size())
    return false;
  for (std::size_t i = 0; i < fa.args.size(); ++i)
    if (!terms_equal(fa.args[i], fb.args[i])) return false;
  return true;
}

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* aa = std::get_if<Atom>(&a->node)) {
    const auto& ab = std::get<Atom>(b->node);
    if (aa->args.size() != ab.args.size()) return false;
    if (aa->prop.decider != ab.prop.decider) return false;
    for (std::size_t i = 0; i < aa->args.size(); ++i)
      if (!terms_equal(aa->args[i], ab.args[i])) return false;
    return true;
  }
  if (auto* ea = std::get_if<EqF>(&a->node)) {
    const auto& eb = std::get<EqF>(b->node);
    return ea->coll.name == eb.coll.name && terms_equal(ea->lhs, eb.lhs) &&
           terms_equal(ea->rhs, eb.rhs);
  }
  if (std::holds_alternative<BottomF>(a->node)) return true;
  if (auto* na = std::get_if<AndF>(&a->node)) {
    const auto& nb = std::get<AndF>(b->node);
    return formulas_equal(na->l, nb.l) && formulas_equal(na->r, nb.r);
  }
  if (auto* na = std::get_if<OrF>(&a->node)) {
    const auto& nb = std::get<OrF>(b->node);
    return formulas_equal(na->l, nb.l) && formulas_equal(na->r, nb.r);
  }
  if (auto* na = std::get_if<ImpF>(&a->node)) {
    const auto& nb = std::get<ImpF>(b->node);
    return formulas_equal(na->l, nb.l) && formulas_equal(na->r, nb.r);
  }
  if (auto* na = std::get_if<ExistsF>(&a->node)) {
    const auto& nb = std::get<ExistsF>(b->node);
    return na->var == nb.var && formulas_equal(na->body, nb.body);
  }
  const auto& na = std::get<ForallF>(a->node);
  const auto& nb = std::get<ForallF>(b->node);
  return na.var == nb.var && formulas_equal(na.body, nb.body);
}

bool term_contains_var(const TermPtr& t, const std::string& name) {
  if (auto* v = std::get_if<VarRef>(&t->node)) return v->name == name;
  if (auto* f = std::get_if<ApplyFn>(&t->node)) {
    for (const auto& a : f->args)
      if (term_contains_var(a, name)) return true;
  }
  return false;
}

constexpr std::size_t kSynthCap = 8;

// candidate realizers of top <= ||phi|| over the given context
std::vector<Code> synth(const FormulaPtr& phi, const Context& ctx, const EvalCfg& cfg) {
  std::vector<Code> out;
  auto push = [&](Code c) {
    if (out.size() < kSynthCap) out.push_back(std::move(c));
  };
  std::visit(
      [&](auto&& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, EqF>) {
          Arrow lhs = interpret_term(n.lhs, ctx, cfg);
          // \g.\u. p({t}(g), 0)
          push(pca::code_of(pp::lam(pp::lam(
              mkpair(pp::app(pp::code_ref(lhs.code), pp::v(1)), pp::c(0))))));
        }
        if constexpr (std::is_same_v<T, AndF>) {
          auto ls = synth(n.l, ctx, cfg);
          auto rs = synth(n.r, ctx, cfg);
          for (const Code& lc : ls)
            for (const Code& rc : rs)
              push(pca::code_of(pp::lam(pp::lam(
                  mkpair(pp::app(pp::app(pp::code_ref(lc), pp::v(1)), pp::v(0)),
                         pp::app(pp::app(pp::code_ref(rc), pp::v(1)), pp::v(0)))))));
        }
        if constexpr (std::is_same_v<T, OrF>) {
          for (const Code& lc : synth(n.l, ctx, cfg))
            push(pca::code_of(pp::lam(pp::lam(mkpair(
                pp::c(0), pp::app(pp::app(pp::code_ref(lc), pp::v(1)), pp::v(0)))))));
          for (const Code& rc : synth(n.r, ctx, cfg))
            push(pca::code_of(pp::lam(pp::lam(mkpair(
                pp::c(1), pp::app(pp::app(pp::code_ref(rc), pp::v(1)), pp::v(0)))))));
        }
        if constexpr (std::is_same_v<T, ImpF>) {
          if (formulas_equal(n.l, n.r))
            push(pca::code_of(pp::lam(pp::lam(pp::lam(pp::v(0))))));
          for (const Code& rc : synth(n.r, ctx, cfg))
            push(pca::code_of(pp::lam(pp::lam(pp::lam(
                pp::app(pp::app(pp::code_ref(rc), pp::v(2)), pp::c(0)))))));
        }
        if constexpr (std::is_same_v<T, ForallF>) {
          Context ext = ctx;
          ext.vars.emplace_back(n.var, n.coll);
          for (const Code& rb : synth(n.body, ext, cfg))
            push(pca::code_of(pp::lam(pp::lam(pp::lam(pp::app(
                pp::app(pp::code_ref(rb), mkpair(pp::v(2), pp::v(0))), pp::c(0)))))));
        }
        if constexpr (std::is_same_v<T, ExistsF>) {
          // solve y = t or t = y with a y-free term t
          if (auto* eq = std::get_if<EqF>(&n.body->node)) {
            TermPtr solved;
            auto is_var = [&](const TermPtr& t) {
              auto* v = std::get_if<VarRef>(&t->node);
              return v && v->name == n.var;
            };
            if (is_var(eq->lhs) && !term_contains_var(eq->rhs, n.var)) solved = eq->rhs;
            if (is_var(eq->rhs) && !term_contains_var(eq->lhs, n.var)) solved = eq->lhs;
            if (solved) {
              Arrow w = interpret_term(solved, ctx, cfg);
              // \g.\u. p({w}(g), p({w}(g), 0))
              Term wg = pp::app(pp::code_ref(w.code), pp::v(1));
              push(pca::code_of(pp::lam(pp::lam(mkpair(
                  pp::app(pp::code_ref(w.code), pp::v(1)), mkpair(wg, pp::c(0)))))));
            }
          }
          // constant witnesses over the quantified support
          Context ext = ctx;
          ext.vars.emplace_back(n.var, n.coll);
          auto bodies = synth(n.body, ext, cfg);
          std::size_t tried = 0;
          for (const Nat& a : n.coll.support) {
            if (tried++ >= 4) break;
            for (const Code& rb : bodies)
              push(pca::code_of(pp::lam(pp::lam(mkpair(
                  pp::c(a), pp::app(pp::app(pp::code_ref(rb), mkpair(pp::v(1), pp::c(a))),
                                    pp::c(0)))))));
          }
        }
      },
      phi->node);
  return out;
}

}  // namespace

std::optional<EntailmentWitness> validity(const FormulaPtr& phi, const Context& ctx,
                                          const EvalCfg& cfg) {
  Prop prop = interpret(phi, ctx, cfg);
  Prop top = doc::top_prop(prop.base);
  for (const Code& cand : synth(phi, ctx, cfg))
    if (doc::check_entailment(top, prop, cand, cfg) == Tri::Yes)
      return EntailmentWitness{cand, top, prop};
  return doc::search_entailment(top, prop, cfg);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct FormulaParser {
  const std::string& text;
  const Env& env;
  std::size_t pos = 0;
  std::vector<std::pair<std::string, Collection>> scope;

  FormulaParser(const std::string& t, const Env& e, const Context& ctx) : text(t), env(e) {
    scope = ctx.vars;
  }

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(const char* kw) {
    skip();
    std::size_t len = std::strlen(kw);
    if (text.compare(pos, len, kw) == 0) {
      pos += len;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& m) { throw formula_syntax_error(m, pos); }
  char peek() {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  Collection collection() {
    std::string name = ident();
    auto it = env.collections.find(name);
    if (it == env.collections.end()) fail("unknown collection '" + name + "'");
    return it->second;
  }

  TermPtr term() {
    skip();
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      Nat k(text.substr(start, pos - start));
      auto n = env.collections.find("N");
      if (n == env.collections.end()) fail("numerals need the collection N");
      Arrow point{pca::prog::constant(k), col::terminal_collection(), n->second};
      return t_point(point, k.str());
    }
    std::string name = ident();
    if (peek() == '(') {
      auto fn = env.functions.find(name);
      if (fn == env.functions.end()) throw unknown_function("unknown function '" + name + "'");
      ++pos;
      std::vector<TermPtr> args;
      for (;;) {
        args.push_back(term());
        if (peek() == ',') {
          ++pos;
          continue;
        }
        break;
      }
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return t_apply(fn->second, std::move(args), name);
    }
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return t_var(name);
    fail("unbound term variable '" + name + "'");
  }

  FormulaPtr atom() {
    if (eat("Bot")) return f_bottom();
    if (peek() == '(') {
      ++pos;
      FormulaPtr f = formula();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return f;
    }
    if (eat("Eq")) {
      if (peek() != '(') fail("expected '(' after Eq");
      ++pos;
      Collection coll = collection();
      if (peek() != ',') fail("expected ','");
      ++pos;
      TermPtr lhs = term();
      if (peek() != ',') fail("expected ','");
      ++pos;
      TermPtr rhs = term();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return f_eq(coll, lhs, rhs);
    }
    std::string name = ident();
    auto at = env.atoms.find(name);
    if (at == env.atoms.end()) fail("unknown atom '" + name + "'");
    if (peek() != '(') fail("expected '(' after atom");
    ++pos;
    std::vector<TermPtr> args;
    for (;;) {
      args.push_back(term());
      if (peek() == ',') {
        ++pos;
        continue;
      }
      break;
    }
    if (peek() != ')') fail("expected ')'");
    ++pos;
    return f_atom(at->second, std::move(args), name);
  }

  FormulaPtr conj() {
    FormulaPtr f = atom();
    while (eat("&&")) f = f_and(f, atom());
    return f;
  }

  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (eat("||")) f = f_or(f, conj());
    return f;
  }

  FormulaPtr formula() {
    if (eat("forall ") || eat("forall\t")) {
      std::string var = ident();
      if (peek() != ':') fail("expected ':'");
      ++pos;
      Collection coll = collection();
      if (peek() != '.') fail("expected '.'");
      ++pos;
      scope.emplace_back(var, coll);
      FormulaPtr body = formula();
      scope.pop_back();
      return f_forall(var, coll, body);
    }
    if (eat("exists ") || eat("exists\t")) {
      std::string var = ident();
      if (peek() != ':') fail("expected ':'");
      ++pos;
      Collection coll = collection();
      if (peek() != '.') fail("expected '.'");
      ++pos;
      scope.emplace_back(var, coll);
      FormulaPtr body = formula();
      scope.pop_back();
      return f_exists(var, coll, body);
    }
    FormulaPtr f = disj();
    if (eat("->")) return f_imp(f, formula());
    return f;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Env& env, const Context& ctx) {
  FormulaParser p(text, env, ctx);
  FormulaPtr f = p.formula();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return f;
}

Env ha_env(const EvalCfg& cfg, unsigned nat_support) {
  Env env;
  Collection n = col::nat_collection(nat_support);
  env.collections["N"] = n;
  env.functions["succ"] = Arrow{pca::code_of(pca::mk_builtin(pca::Builtin::Succ)), n, n};
  env.functions["pred"] = Arrow{pca::code_of(pca::mk_builtin(pca::Builtin::Pred)), n, n};
  env.functions["U"] = Arrow{pca::code_of(pca::mk_builtin(pca::Builtin::Proj2)), n, n};
  // plus via the recursor: \z. rec(p1 z, \k.\acc. succ acc, p2 z)
  Code rec = pca::numeral(pca::Numeral::Rec);
  Term step = pp::lam(pp::lam(pp::app(pca::mk_builtin(pca::Builtin::Succ), pp::v(0))));
  Term plus_body = pp::app(pp::code_ref(rec), proj1(pp::v(0)), step, proj2(pp::v(0)));
  Collection nxn = col::product(n, n, cfg).object;
  env.functions["plus"] = Arrow{pca::code_of(pp::lam(plus_body)), nxn, n};
  return env;
}

// ---------------------------------------------------------------------------
// Kleene realizability

namespace {

Nat eval_ha_term(const TermPtr& t, const std::map<std::string, Nat>& valuation,
                 const EvalCfg& cfg) {
  if (auto* v = std::get_if<VarRef>(&t->node)) {
    auto it = valuation.find(v->name);
    if (it == valuation.end()) throw type_error("ha_realize: unbound '" + v->name + "'");
    return it->second;
  }
  if (auto* p = std::get_if<PointConst>(&t->node)) {
    auto r = pca::kleene_apply(p->arrow.code, {0}, cfg.fuel);
    if (!r.is_value()) throw doc::indeterminate_verdict("point constant failed to evaluate");
    return r.value;
  }
  const auto& ap = std::get<ApplyFn>(t->node);
  Nat tuple = eval_ha_term(ap.args[0], valuation, cfg);
  for (std::size_t i = 1; i < ap.args.size(); ++i)
    tuple = cantor_pair(tuple, eval_ha_term(ap.args[i], valuation, cfg));
  auto r = pca::kleene_apply(ap.arrow.code, {tuple}, cfg.fuel);
  if (!r.is_value()) throw doc::indeterminate_verdict("function failed to evaluate");
  return r.value;
}

// bounded pool of candidate realizers for a formula, used by the implication
// clause
std::vector<Nat> realizer_pool(const FormulaPtr& phi, std::map<std::string, Nat>& valuation,
                               const EvalCfg& cfg, unsigned nat_support);

Tri ha_realize_in(const Nat& n, const FormulaPtr& phi, std::map<std::string, Nat>& valuation,
                  const EvalCfg& cfg, unsigned nat_support) {
  return std::visit(
      [&](auto&& node) -> Tri {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, EqF>) {
          Nat l = eval_ha_term(node.lhs, valuation, cfg);
          Nat r = eval_ha_term(node.rhs, valuation, cfg);
          return l == r ? Tri::Yes : Tri::No;
        }
        if constexpr (std::is_same_v<T, BottomF>) return Tri::No;
        if constexpr (std::is_same_v<T, AndF>) {
          return tri_and(
              ha_realize_in(cantor_proj1(n), node.l, valuation, cfg, nat_support),
              ha_realize_in(cantor_proj2(n), node.r, valuation, cfg, nat_support));
        }
        if constexpr (std::is_same_v<T, OrF>) {
          if (cantor_proj1(n) == 0)
            return ha_realize_in(cantor_proj2(n), node.l, valuation, cfg, nat_support);
          return ha_realize_in(cantor_proj2(n), node.r, valuation, cfg, nat_support);
        }
        if constexpr (std::is_same_v<T, ImpF>) {
          Tri acc = Tri::Yes;
          for (const Nat& m : realizer_pool(node.l, valuation, cfg, nat_support)) {
            if (ha_realize_in(m, node.l, valuation, cfg, nat_support) != Tri::Yes) continue;
            auto r = pca::kleene_apply(Code{n}, {m}, cfg.fuel);
            if (r.kind == pca::EvalResult::Kind::FuelExhausted) {
              acc = Tri::Indeterminate;
              continue;
            }
            if (!r.is_value()) return Tri::No;
            acc = tri_and(acc, ha_realize_in(r.value, node.r, valuation, cfg, nat_support));
            if (acc == Tri::No) return Tri::No;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, ForallF>) {
          Tri acc = Tri::Yes;
          for (unsigned v = 0; v < nat_support; ++v) {
            auto r = pca::kleene_apply(Code{n}, {Nat(v)}, cfg.fuel);
            if (r.kind == pca::EvalResult::Kind::FuelExhausted) {
              acc = Tri::Indeterminate;
              continue;
            }
            if (!r.is_value()) return Tri::No;
            valuation[node.var] = v;
            acc = tri_and(acc, ha_realize_in(r.value, node.body, valuation, cfg, nat_support));
            valuation.erase(node.var);
            if (acc == Tri::No) return Tri::No;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, ExistsF>) {
          valuation[node.var] = cantor_proj1(n);
          Tri r = ha_realize_in(cantor_proj2(n), node.body, valuation, cfg, nat_support);
          valuation.erase(node.var);
          return r;
        }
        if constexpr (std::is_same_v<T, Atom>) {
          throw type_error("ha_realize: atoms are outside the arithmetic fragment");
        }
      },
      phi->node);
}

std::vector<Nat> realizer_pool(const FormulaPtr& phi, std::map<std::string, Nat>& valuation,
                               const EvalCfg& cfg, unsigned nat_support) {
  std::vector<Nat> out;
  constexpr std::size_t cap = 8;
  auto push = [&](Nat v) {
    if (out.size() < cap) out.push_back(std::move(v));
  };
  std::visit(
      [&](auto&& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, EqF>) push(Nat(0));
        if constexpr (std::is_same_v<T, AndF>) {
          for (const Nat& l : realizer_pool(node.l, valuation, cfg, nat_support))
            for (const Nat& r : realizer_pool(node.r, valuation, cfg, nat_support))
              push(cantor_pair(l, r));
        }
        if constexpr (std::is_same_v<T, OrF>) {
          for (const Nat& l : realizer_pool(node.l, valuation, cfg, nat_support))
            push(cantor_pair(0, l));
          for (const Nat& r : realizer_pool(node.r, valuation, cfg, nat_support))
            push(cantor_pair(1, r));
        }
        if constexpr (std::is_same_v<T, ExistsF>) {
          for (unsigned v = 0; v < std::min(nat_support, 4u); ++v) {
            valuation[node.var] = v;
            for (const Nat& w : realizer_pool(node.body, valuation, cfg, nat_support))
              push(cantor_pair(v, w));
            valuation.erase(node.var);
          }
        }
        // Forall/Imp premises: constant candidates only
        if constexpr (std::is_same_v<T, ForallF> || std::is_same_v<T, ImpF>) {
          push(pca::prog::constant(0).value);
          push(pca::prog::identity().value);
        }
      },
      phi->node);
  return out;
}

}  // namespace

Tri ha_realize(const Nat& n, const FormulaPtr& phi, const EvalCfg& cfg, unsigned nat_support) {
  std::map<std::string, Nat> valuation;
  return ha_realize_in(n, phi, valuation, cfg, nat_support);
}

// ---------------------------------------------------------------------------
// The bridge from Kleene realizers to doctrine witnesses

namespace {

Code build_conv(const FormulaPtr& phi, const Context& ctx, const EvalCfg& cfg, bool to_doctrine);

// {C}(z, m): doctrine member at context value z from a Kleene realizer m, or
// the reverse for to_doctrine = false.
Code build_conv(const FormulaPtr& phi, const Context& ctx, const EvalCfg& cfg,
                bool to_doctrine) {
  return std::visit(
      [&](auto&& node) -> Code {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, EqF>) {
          if (to_doctrine) {
            Arrow lhs = interpret_term(node.lhs, ctx, cfg);
            // \z.\m. p({t}(z), 0)
            return pca::code_of(pp::lam(pp::lam(
                mkpair(pp::app(pp::code_ref(lhs.code), pp::v(1)), pp::c(0)))));
          }
          return pca::code_of(pp::lam(pp::lam(pp::c(0))));
        }
        if constexpr (std::is_same_v<T, AndF>) {
          Code cl = build_conv(node.l, ctx, cfg, to_doctrine);
          Code cr = build_conv(node.r, ctx, cfg, to_doctrine);
          // \z.\m. p({cl}(z, p1 m), {cr}(z, p2 m))
          return pca::code_of(pp::lam(pp::lam(mkpair(
              pp::app(pp::app(pp::code_ref(cl), pp::v(1)), proj1(pp::v(0))),
              pp::app(pp::app(pp::code_ref(cr), pp::v(1)), proj2(pp::v(0)))))));
        }
        if constexpr (std::is_same_v<T, OrF>) {
          Code cl = build_conv(node.l, ctx, cfg, to_doctrine);
          Code cr = build_conv(node.r, ctx, cfg, to_doctrine);
          // \z.\m. (ite (p1 m) (\d. p(0, {cl}(z, p2 m))) (\d. p(1, {cr}(z, p2 m)))) 0
          Term yes = pp::lam(mkpair(
              pp::c(0), pp::app(pp::app(pp::code_ref(cl), pp::v(2)), proj2(pp::v(1)))));
          Term no = pp::lam(mkpair(
              pp::c(1), pp::app(pp::app(pp::code_ref(cr), pp::v(2)), proj2(pp::v(1)))));
          Term body = pp::app(
              pp::app(pp::app(pca::mk_builtin(pca::Builtin::Ite), proj1(pp::v(0)), yes), no),
              pp::c(0));
          return pca::code_of(pp::lam(pp::lam(body)));
        }
        if constexpr (std::is_same_v<T, ImpF>) {
          Code ca = build_conv(node.l, ctx, cfg, !to_doctrine);
          Code cb = build_conv(node.r, ctx, cfg, to_doctrine);
          // \z.\m.\w. {cb}(z, {m}({ca}(z, w)))
          Term body = pp::lam(pp::app(
              pp::app(pp::code_ref(cb), pp::v(2)),
              pp::app(pp::v(1), pp::app(pp::app(pp::code_ref(ca), pp::v(2)), pp::v(0)))));
          return pca::code_of(pp::lam(pp::lam(body)));
        }
        if constexpr (std::is_same_v<T, ForallF>) {
          Context ext = ctx;
          ext.vars.emplace_back(node.var, node.coll);
          Code cb = build_conv(node.body, ext, cfg, to_doctrine);
          // \z.\m.\t. {cb}(p(z,t), {m}(t))
          Term body = pp::lam(pp::app(pp::app(pp::code_ref(cb), mkpair(pp::v(2), pp::v(0))),
                                      pp::app(pp::v(1), pp::v(0))));
          return pca::code_of(pp::lam(pp::lam(body)));
        }
        if constexpr (std::is_same_v<T, ExistsF>) {
          Context ext = ctx;
          ext.vars.emplace_back(node.var, node.coll);
          Code cb = build_conv(node.body, ext, cfg, to_doctrine);
          // \z.\m. p(p1 m, {cb}(p(z, p1 m), p2 m))
          Term body = mkpair(proj1(pp::v(0)),
                             pp::app(pp::app(pp::code_ref(cb), mkpair(pp::v(1), proj1(pp::v(0)))),
                                     proj2(pp::v(0))));
          return pca::code_of(pp::lam(pp::lam(body)));
        }
        if constexpr (std::is_same_v<T, BottomF>) {
          return pca::code_of(pp::lam(pp::lam(pp::v(0))));  // vacuous
        }
        if constexpr (std::is_same_v<T, Atom>) {
          throw type_error("bridge: atoms are outside the arithmetic fragment");
        }
      },
      phi->node);
}

}  // namespace

EntailmentWitness bridge(const Nat& n, const FormulaPtr& phi, const EvalCfg& cfg) {
  Context empty;
  Code conv = build_conv(phi, empty, cfg, true);
  // \z.\u. {conv}(z, n)
  Code wit = pca::code_of(
      pp::lam(pp::lam(pp::app(pp::app(pp::code_ref(conv), pp::v(1)), pp::c(n)))));
  Prop prop = interpret(phi, empty, cfg);
  return EntailmentWitness{wit, doc::top_prop(prop.base), prop};
}

// ---------------------------------------------------------------------------
// Church's thesis, choice and extraction

Prop kleene_t_atom(const EvalCfg& cfg, unsigned nat_support) {
  Collection n = col::nat_collection(nat_support);
  Collection nn = col::product(n, n, cfg).object;
  Collection nnn = col::product(nn, n, cfg).object;
  return fam::mk_family(nnn, fdec({col::FamKleeneT{}}));
}

namespace {

// evaluates a validity witness at the empty context to read off a fibre member
std::optional<Nat> witness_member(const EntailmentWitness& w, const EvalCfg& cfg) {
  auto r = pca::kleene_apply(w.realizer, {0, 0}, cfg.fuel);
  if (!r.is_value()) return std::nullopt;
  return r.value;
}

Prop seed_fibre(Prop p, const Nat& at, std::vector<Nat> members) {
  std::map<Nat, std::vector<Nat>> fibres;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  fibres[at] = std::move(members);
  return fam::mk_family_with_fibres(p.base, p.decider, std::move(fibres));
}

}  // namespace

CtResult ct_realizer(const Prop& r, const EvalCfg& cfg, std::vector<Nat> premise_realizers) {
  Context empty;
  Collection n = col::nat_collection(static_cast<unsigned>(cfg.enum_cap));
  Env env = ha_env(cfg, static_cast<unsigned>(cfg.enum_cap));

  FormulaPtr premise_f =
      f_forall("x", n, f_exists("z", n, f_atom(r, {t_var("x"), t_var("z")}, "R")));
  Prop premise = interpret(premise_f, empty, cfg);

  if (premise_realizers.empty()) {
    auto v = validity(premise_f, empty, cfg);
    if (v) {
      auto m = witness_member(*v, cfg);
      if (m) premise_realizers.push_back(*m);
    }
  }
  for (const Nat& c : premise_realizers)
    if (fam::decide(premise, 0, c, cfg) != Verdict::In)
      throw extraction_failed("ct_realizer: supplied premise realizer does not verify");
  if (premise_realizers.empty())
    throw extraction_failed("ct_realizer: no premise realizer found within budget");

  Prop t_atom = kleene_t_atom(cfg, static_cast<unsigned>(cfg.enum_cap));
  FormulaPtr conclusion_f = f_exists(
      "e", n,
      f_forall("x", n,
               f_exists("y", n,
                        f_and(f_atom(t_atom, {t_var("e"), t_var("x"), t_var("y")}, "T"),
                              f_atom(r, {t_var("x"), t_apply(env.functions.at("U"),
                                                             {t_var("y")}, "U")},
                                     "R")))));
  Prop conclusion = interpret(conclusion_f, empty, cfg);

  std::vector<Nat> programs;
  std::vector<std::pair<Nat, Nat>> witness_table;
  for (const Nat& c : premise_realizers) {
    // e = \x. p1({c}(x))
    Code e = pca::code_of(pp::lam(proj1(pp::app(pp::code_ref(Code{c}), pp::v(0)))));
    programs.push_back(e.value);
    std::vector<std::pair<Nat, Nat>> per_x;
    for (const Nat& x : n.support) {
      auto cx = pca::kleene_apply(Code{c}, {x}, cfg.fuel);
      if (!cx.is_value()) throw extraction_failed("ct_realizer: premise code failed at x=" + x.str());
      Nat z = cantor_proj1(cx.value);
      Nat w = cantor_proj2(cx.value);
      auto ex = pca::kleene_apply(e, {x}, cfg.fuel);
      if (!ex.is_value() || ex.value != z)
        throw extraction_failed("ct_realizer: extracted program disagrees at x=" + x.str());
      Nat y = cantor_pair(Nat(ex.steps), z);
      per_x.emplace_back(x, cantor_pair(y, cantor_pair(Nat(0), w)));
    }
    Code dtab = pp::lookup_table(per_x, Nat(0));
    Code d = pca::code_of(pp::lam(pp::app(pp::code_ref(dtab), pp::v(0))));
    witness_table.emplace_back(c, cantor_pair(e.value, d.value));
  }
  Code table = pp::lookup_table(witness_table, Nat(0));
  Code wit = pca::code_of(pp::lam(pp::lam(pp::app(pp::code_ref(table), pp::v(0)))));

  Prop seeded = seed_fibre(premise, 0, premise_realizers);
  return CtResult{EntailmentWitness{wit, seeded, conclusion}, seeded, conclusion, programs};
}

AcResult ac_realizer(const Collection& a, const Collection& b, const Prop& r,
                     const EvalCfg& cfg, std::vector<Nat> premise_realizers) {
  Context empty;
  FormulaPtr premise_f =
      f_forall("x", a, f_exists("y", b, f_atom(r, {t_var("x"), t_var("y")}, "R")));
  Prop premise = interpret(premise_f, empty, cfg);

  if (premise_realizers.empty()) {
    auto v = validity(premise_f, empty, cfg);
    if (v) {
      auto m = witness_member(*v, cfg);
      if (m) premise_realizers.push_back(*m);
    }
  }
  for (const Nat& c : premise_realizers)
    if (fam::decide(premise, 0, c, cfg) != Verdict::In)
      throw extraction_failed("ac_realizer: supplied premise realizer does not verify");
  if (premise_realizers.empty())
    throw extraction_failed("ac_realizer: no premise realizer found within budget");

  col::WeakExpData we = col::weak_exponential(a, b, cfg);
  FormulaPtr conclusion_f = f_exists(
      "f", we.object,
      f_forall("x", a,
               f_atom(r, {t_var("x"), t_apply(we.ev, {t_var("f"), t_var("x")}, "ev")}, "R")));
  Prop conclusion = interpret(conclusion_f, empty, cfg);

  // uniform: \g.\c. p(\a. p1({c}(a)), \a. p2({c}(a)))
  Term mkf = pp::lam(proj1(pp::app(pp::v(1), pp::v(0))));
  Term mkd = pp::lam(proj2(pp::app(pp::v(1), pp::v(0))));
  Code wit = pca::code_of(pp::lam(pp::lam(mkpair(std::move(mkf), std::move(mkd)))));

  Prop seeded = seed_fibre(premise, 0, premise_realizers);
  return AcResult{EntailmentWitness{wit, seeded, conclusion}, seeded, conclusion};
}

ChoiceResult choice_extract(const Context& ctx, const Collection& a, const Collection& b,
                            const Prop& r, const pca::Code& witness, const EvalCfg& cfg) {
  Collection ctx_coll = context_collection(ctx, cfg);
  Collection ext_coll = col::product(ctx_coll, a, cfg).object;

  // f = \z. p1({{r}(p1 z, 0)}(p2 z))
  Term inner = pp::app(pp::app(pp::code_ref(witness), proj1(pp::v(0))), pp::c(0));
  Term body = proj1(pp::app(std::move(inner), proj2(pp::v(0))));
  Arrow f{pca::code_of(pp::lam(body)), ext_coll, b};
  if (col::validate_arrow(f, cfg) != Tri::Yes)
    throw extraction_failed("choice_extract: extracted arrow does not verify on supports");

  // post: forall x in A. R(ctx-vars, x, f(<ctx>))  -- the extracted arrow
  // consumes the raw extended-context value
  std::vector<TermPtr> r_args;
  for (const auto& [name, coll] : ctx.vars) r_args.push_back(t_var(name));
  r_args.push_back(t_var("x"));
  r_args.push_back(t_apply(f, {t_ctx()}, "f"));
  FormulaPtr post_f = f_forall("x", a, f_atom(r, std::move(r_args), "R"));
  Prop post = interpret(post_f, ctx, cfg);

  // induced witness: \z.\u.\t. p2({{r}(z, 0)}(t))
  Term w_inner = pp::app(pp::app(pp::code_ref(witness), pp::v(2)), pp::c(0));
  Code post_wit = pca::code_of(pp::lam(pp::lam(pp::lam(proj2(pp::app(w_inner, pp::v(0)))))));
  if (doc::check_entailment(doc::top_prop(ctx_coll), post, post_wit, cfg) != Tri::Yes)
    throw extraction_failed("choice_extract: post-verification failed on supports");
  return ChoiceResult{f, EntailmentWitness{post_wit, doc::top_prop(ctx_coll), post}};
}

}  // namespace peff::lang
