#include "peff/pca.hpp"

#include <array>
#include <cassert>
#include <map>
#include <sstream>

namespace peff::pca {

namespace {

const std::array<const char*, kNumBuiltins> kBuiltinNames = {
    "succ", "pred", "pair", "proj1", "proj2", "ite", "fix", "eq0"};

// delta-arity: number of arguments a builtin consumes in one step.
unsigned arity(Builtin b) {
  switch (b) {
    case Builtin::Pair: return 2;
    case Builtin::Ite: return 3;
    case Builtin::Fix: return 2;
    default: return 1;
  }
}

}  // namespace

const char* builtin_name(Builtin b) { return kBuiltinNames[static_cast<unsigned>(b)]; }

std::optional<Builtin> builtin_by_name(const std::string& name) {
  for (unsigned i = 0; i < kNumBuiltins; ++i)
    if (name == kBuiltinNames[i]) return static_cast<Builtin>(i);
  return std::nullopt;
}

Term mk_var(std::size_t index) { return std::make_shared<TermNode>(TermNode{VarT{index}}); }
Term mk_const(Nat value) { return std::make_shared<TermNode>(TermNode{ConstT{std::move(value)}}); }
Term mk_app(Term fun, Term arg) {
  return std::make_shared<TermNode>(TermNode{AppT{std::move(fun), std::move(arg)}});
}
Term mk_lam(Term body) { return std::make_shared<TermNode>(TermNode{LamT{std::move(body)}}); }
Term mk_builtin(Builtin op) { return std::make_shared<TermNode>(TermNode{BuiltinT{op}}); }

Term mk_apps(Term t, const std::vector<Term>& args) {
  for (const Term& a : args) t = mk_app(std::move(t), a);
  return t;
}

bool term_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  if (auto* va = std::get_if<VarT>(&a->node)) return va->index == std::get<VarT>(b->node).index;
  if (auto* ca = std::get_if<ConstT>(&a->node)) return ca->value == std::get<ConstT>(b->node).value;
  if (auto* pa = std::get_if<AppT>(&a->node)) {
    const auto& pb = std::get<AppT>(b->node);
    return term_equal(pa->fun, pb.fun) && term_equal(pa->arg, pb.arg);
  }
  if (auto* la = std::get_if<LamT>(&a->node)) return term_equal(la->body, std::get<LamT>(b->node).body);
  return std::get<BuiltinT>(a->node).op == std::get<BuiltinT>(b->node).op;
}

std::size_t free_depth(const Term& t) {
  struct Rec {
    static std::size_t go(const Term& t, std::size_t binders) {
      if (auto* v = std::get_if<VarT>(&t->node))
        return v->index >= binders ? v->index - binders + 1 : 0;
      if (auto* a = std::get_if<AppT>(&t->node))
        return std::max(go(a->fun, binders), go(a->arg, binders));
      if (auto* l = std::get_if<LamT>(&t->node)) return go(l->body, binders + 1);
      return 0;
    }
  };
  return Rec::go(t, 0);
}

bool is_closed(const Term& t) { return free_depth(t) == 0; }

std::string show_term(const Term& t) {
  struct Pr {
    static void go(const Term& t, std::size_t depth, bool parens_app, bool parens_lam, std::ostream& os) {
      if (auto* v = std::get_if<VarT>(&t->node)) {
        if (v->index < depth)
          os << "x" << (depth - 1 - v->index);
        else
          os << "?" << (v->index - depth);
        return;
      }
      if (auto* c = std::get_if<ConstT>(&t->node)) {
        os << c->value.str();
        return;
      }
      if (auto* b = std::get_if<BuiltinT>(&t->node)) {
        os << builtin_name(b->op);
        return;
      }
      if (auto* a = std::get_if<AppT>(&t->node)) {
        if (parens_app) os << "(";
        go(a->fun, depth, false, true, os);
        os << " ";
        go(a->arg, depth, true, true, os);
        if (parens_app) os << ")";
        return;
      }
      const auto& l = std::get<LamT>(t->node);
      if (parens_lam) os << "(";
      os << "\\x" << depth << ". ";
      go(l.body, depth + 1, false, false, os);
      if (parens_lam) os << ")";
    }
  };
  std::ostringstream os;
  Pr::go(t, 0, false, false, os);
  return os.str();
}

namespace {

// Bijective base-2: a natural corresponds to the binary digits of n+1 with
// the leading 1 removed, most significant first.
std::vector<bool> nat_to_bits(const Nat& n) {
  Nat m = n + 1;
  unsigned len = msb(m);  // number of digits after the leading 1
  std::vector<bool> bits;
  bits.reserve(len);
  for (unsigned i = len; i-- > 0;) bits.push_back(bit_test(m, i));
  return bits;
}

Nat bits_to_nat(const std::vector<bool>& bits) {
  Nat acc = 1;
  for (bool b : bits) {
    acc <<= 1;
    if (b) acc |= 1;
  }
  return acc - 1;
}

struct BitWriter {
  std::vector<bool> bits;
  void put(bool b) { bits.push_back(b); }
  void put2(bool a, bool b) {
    bits.push_back(a);
    bits.push_back(b);
  }
  // Elias gamma of m+1: (L-1) zeros then the L binary digits of m+1.
  void put_nat(const Nat& m) {
    Nat k = m + 1;
    unsigned len = msb(k) + 1;
    for (unsigned i = 0; i + 1 < len; ++i) bits.push_back(false);
    for (unsigned i = len; i-- > 0;) bits.push_back(bit_test(k, i));
  }
};

struct BitReader {
  const std::vector<bool>& bits;
  std::size_t pos = 0;
  bool ok = true;

  explicit BitReader(const std::vector<bool>& b) : bits(b) {}
  bool get() {
    if (pos >= bits.size()) {
      ok = false;
      return false;
    }
    return bits[pos++];
  }
  std::optional<Nat> get_nat() {
    std::size_t zeros = 0;
    while (ok && !get()) ++zeros;
    if (!ok) return std::nullopt;
    Nat k = 1;
    for (std::size_t i = 0; i < zeros; ++i) {
      k <<= 1;
      if (get()) k |= 1;
      if (!ok) return std::nullopt;
    }
    return Nat(k - 1);
  }
};

constexpr std::size_t kMaxVarIndex = 1u << 24;

void emit_term(const Term& t, BitWriter& w);

Term parse_term_bits(BitReader& r) {
  if (!r.get()) {
    if (!r.ok) return nullptr;
    if (!r.get()) {  // 00: App
      if (!r.ok) return nullptr;
      Term f = parse_term_bits(r);
      if (!f) return nullptr;
      Term a = parse_term_bits(r);
      if (!a) return nullptr;
      return mk_app(f, a);
    }
    if (!r.ok) return nullptr;
    Term b = parse_term_bits(r);  // 01: Lam
    return b ? mk_lam(b) : nullptr;
  }
  if (!r.get()) {  // 10: Const
    if (!r.ok) return nullptr;
    auto m = r.get_nat();
    return m ? mk_const(*m) : nullptr;
  }
  if (!r.ok) return nullptr;
  if (!r.get()) {  // 110: Var
    if (!r.ok) return nullptr;
    auto k = r.get_nat();
    if (!k || *k > kMaxVarIndex) return nullptr;
    return mk_var(k->convert_to<std::size_t>());
  }
  if (!r.ok) return nullptr;
  unsigned idx = 0;  // 111 bbb: Builtin
  for (int i = 0; i < 3; ++i) {
    idx = idx * 2 + (r.get() ? 1 : 0);
    if (!r.ok) return nullptr;
  }
  return mk_builtin(static_cast<Builtin>(idx));
}

void emit_term(const Term& t, BitWriter& w) {
  if (auto* a = std::get_if<AppT>(&t->node)) {
    w.put2(false, false);
    emit_term(a->fun, w);
    emit_term(a->arg, w);
    return;
  }
  if (auto* l = std::get_if<LamT>(&t->node)) {
    w.put2(false, true);
    emit_term(l->body, w);
    return;
  }
  if (auto* c = std::get_if<ConstT>(&t->node)) {
    w.put2(true, false);
    w.put_nat(c->value);
    return;
  }
  if (auto* v = std::get_if<VarT>(&t->node)) {
    w.put(true);
    w.put2(true, false);
    w.put_nat(Nat(v->index));
    return;
  }
  unsigned idx = static_cast<unsigned>(std::get<BuiltinT>(t->node).op);
  w.put(true);
  w.put2(true, true);
  for (int i = 2; i >= 0; --i) w.put((idx >> i) & 1);
}

// A number is canonical if its bit string parses completely as a term; a
// top-level bare literal additionally requires a canonical payload, since
// literals of non-canonical numbers are reserved as the decodings of those
// numbers themselves. This keeps decode injective and the numbering bijective.
std::optional<Term> parse_canonical(const Nat& n) {
  std::vector<bool> bits = nat_to_bits(n);
  BitReader r(bits);
  Term t = parse_term_bits(r);
  if (!t || !r.ok || r.pos != bits.size()) return std::nullopt;
  if (auto* c = std::get_if<ConstT>(&t->node))
    if (!parse_canonical(c->value)) return std::nullopt;
  return t;
}

}  // namespace

Nat encode_term(const Term& t) {
  if (auto* c = std::get_if<ConstT>(&t->node)) {
    // Literals of non-canonical numbers are exactly the decodings of those
    // numbers; encode them back as themselves to keep the numbering bijective.
    if (!parse_canonical(c->value)) return c->value;
  }
  BitWriter w;
  emit_term(t, w);
  return bits_to_nat(w.bits);
}

Term decode_term(const Nat& n) {
  if (auto t = parse_canonical(n)) return *t;
  return mk_const(n);
}

Code code_of(const Term& t) { return Code{encode_term(t)}; }

// ---------------------------------------------------------------------------
// Evaluation: a reduce-in-context machine over de Bruijn terms. Structural
// descent is free; beta steps, builtin delta steps and code-decoding steps
// each cost one unit of fuel.

namespace {

Term shift(const Term& t, std::size_t d, std::size_t cutoff) {
  if (d == 0) return t;
  if (auto* v = std::get_if<VarT>(&t->node))
    return v->index >= cutoff ? mk_var(v->index + d) : t;
  if (auto* a = std::get_if<AppT>(&t->node))
    return mk_app(shift(a->fun, d, cutoff), shift(a->arg, d, cutoff));
  if (auto* l = std::get_if<LamT>(&t->node)) return mk_lam(shift(l->body, d, cutoff + 1));
  return t;
}

Term subst(const Term& t, std::size_t j, const Term& s) {
  if (auto* v = std::get_if<VarT>(&t->node)) {
    if (v->index == j) return shift(s, j, 0);
    if (v->index > j) return mk_var(v->index - 1);
    return t;
  }
  if (auto* a = std::get_if<AppT>(&t->node)) return mk_app(subst(a->fun, j, s), subst(a->arg, j, s));
  if (auto* l = std::get_if<LamT>(&t->node)) return mk_lam(subst(l->body, j + 1, s));
  return t;
}

// Builtin application spine: head builtin plus already-collected value args.
struct Spine {
  Builtin head;
  std::vector<Term> args;
};

bool is_value(const Term& t);

std::optional<Spine> value_spine(const Term& t) {
  if (auto* b = std::get_if<BuiltinT>(&t->node)) return Spine{b->op, {}};
  if (auto* a = std::get_if<AppT>(&t->node)) {
    auto inner = value_spine(a->fun);
    if (!inner || !is_value(a->arg)) return std::nullopt;
    if (inner->args.size() + 1 >= arity(inner->head)) return std::nullopt;  // saturated: a redex
    inner->args.push_back(a->arg);
    return inner;
  }
  return std::nullopt;
}

bool is_value(const Term& t) {
  if (std::holds_alternative<ConstT>(t->node) || std::holds_alternative<LamT>(t->node) ||
      std::holds_alternative<BuiltinT>(t->node))
    return true;
  if (std::holds_alternative<AppT>(t->node)) return value_spine(t).has_value();
  return false;
}

// A value, viewed as an element of the carrier.
Nat value_to_nat(const Term& v) {
  if (auto* c = std::get_if<ConstT>(&v->node)) return c->value;
  return encode_term(v);
}

struct FrameFun {
  Term pending_arg;
};
struct FrameArg {
  Term fun_value;
};
using Frame = std::variant<FrameFun, FrameArg>;

}  // namespace

EvalResult eval_term(const Term& t, Fuel fuel) {
  Term control = t;
  std::vector<Frame> stack;
  Fuel steps = 0;
  auto charge = [&]() -> bool {
    if (steps >= fuel) return false;
    ++steps;
    return true;
  };

  for (;;) {
    if (!is_value(control)) {
      if (std::holds_alternative<VarT>(control->node))
        return EvalResult{EvalResult::Kind::Stuck, 0, steps};
      const auto& a = std::get<AppT>(control->node);
      stack.push_back(FrameFun{a.arg});
      control = a.fun;
      continue;
    }
    if (stack.empty()) return EvalResult{EvalResult::Kind::Value, value_to_nat(control), steps};

    Frame top = stack.back();
    stack.pop_back();
    if (auto* ff = std::get_if<FrameFun>(&top)) {
      stack.push_back(FrameArg{control});
      control = ff->pending_arg;
      continue;
    }
    const Term fun = std::get<FrameArg>(top).fun_value;
    const Term arg = control;

    if (auto* l = std::get_if<LamT>(&fun->node)) {
      if (!charge()) return EvalResult{EvalResult::Kind::FuelExhausted, 0, steps};
      control = subst(l->body, 0, arg);
      continue;
    }
    if (auto* c = std::get_if<ConstT>(&fun->node)) {
      Term prog = decode_term(c->value);
      // a non-canonical literal decodes to itself and denotes no program;
      // applying it is definitively stuck rather than a decode loop
      if (auto* pc = std::get_if<ConstT>(&prog->node); pc && pc->value == c->value)
        return EvalResult{EvalResult::Kind::Stuck, 0, steps};
      if (!charge()) return EvalResult{EvalResult::Kind::FuelExhausted, 0, steps};
      control = mk_app(std::move(prog), arg);
      continue;
    }

    // Builtin or partial builtin application.
    auto spine = value_spine(fun);
    if (!spine) return EvalResult{EvalResult::Kind::Stuck, 0, steps};
    std::vector<Term> args = spine->args;
    args.push_back(arg);
    if (args.size() < arity(spine->head)) {
      control = mk_app(fun, arg);  // still a value
      continue;
    }
    if (!charge()) return EvalResult{EvalResult::Kind::FuelExhausted, 0, steps};
    switch (spine->head) {
      case Builtin::Succ: control = mk_const(value_to_nat(args[0]) + 1); break;
      case Builtin::Pred: {
        Nat n = value_to_nat(args[0]);
        control = mk_const(n > 0 ? Nat(n - 1) : Nat(0));
        break;
      }
      case Builtin::Pair:
        control = mk_const(cantor_pair(value_to_nat(args[0]), value_to_nat(args[1])));
        break;
      case Builtin::Proj1: control = mk_const(cantor_proj1(value_to_nat(args[0]))); break;
      case Builtin::Proj2: control = mk_const(cantor_proj2(value_to_nat(args[0]))); break;
      case Builtin::Ite: control = value_to_nat(args[0]) == 0 ? args[1] : args[2]; break;
      case Builtin::Fix: {
        Term fixf = mk_app(mk_builtin(Builtin::Fix), args[0]);
        control = mk_app(mk_app(args[0], fixf), args[1]);
        break;
      }
      case Builtin::Eq0: control = mk_const(value_to_nat(args[0]) == 0 ? Nat(0) : Nat(1)); break;
    }
  }
}

namespace {

// Evaluation is a pure function of (code, args, fuel), and results are
// fuel-monotone, so completed runs can be reused for any budget at least as
// large as the steps they consumed.
struct ApplyCache {
  std::map<std::pair<Nat, std::vector<Nat>>, EvalResult> done;

  const EvalResult* lookup(const Nat& code, const std::vector<Nat>& args, Fuel fuel) {
    auto it = done.find(std::make_pair(code, args));
    if (it == done.end()) return nullptr;
    const EvalResult& r = it->second;
    if (r.kind == EvalResult::Kind::FuelExhausted) {
      return r.steps >= fuel ? &r : nullptr;
    }
    return r.steps <= fuel ? &r : nullptr;
  }

  void store(const Nat& code, const std::vector<Nat>& args, const EvalResult& r) {
    if (done.size() > 200000) done.clear();
    auto [it, inserted] = done.try_emplace(std::make_pair(code, args), r);
    if (!inserted && it->second.kind == EvalResult::Kind::FuelExhausted &&
        (r.kind != EvalResult::Kind::FuelExhausted || r.steps > it->second.steps))
      it->second = r;
  }
};

thread_local ApplyCache g_apply_cache;

}  // namespace

EvalResult kleene_apply(const Code& f, const std::vector<Nat>& args, Fuel fuel) {
  if (const EvalResult* hit = g_apply_cache.lookup(f.value, args, fuel)) {
    if (hit->kind == EvalResult::Kind::FuelExhausted)
      return EvalResult{EvalResult::Kind::FuelExhausted, 0, fuel};
    return *hit;
  }
  Term t = decode_term(f.value);
  for (const Nat& a : args) t = mk_app(t, mk_const(a));
  EvalResult r = eval_term(t, fuel);
  g_apply_cache.store(f.value, args, r);
  return r;
}

Code lambda_abstract(const Term& body) {
  if (free_depth(body) > 1)
    throw open_term("lambda_abstract: body has free variables beyond the outermost");
  return code_of(mk_lam(body));
}

Code lambda_abstract_n(const Term& body, std::size_t n) {
  if (free_depth(body) > n) throw open_term("lambda_abstract_n: body has deeper free variables");
  Term t = body;
  for (std::size_t i = 0; i < n; ++i) t = mk_lam(t);
  return code_of(t);
}

// ---------------------------------------------------------------------------
// Program-building helpers and the derived numerals.

namespace prog {

Term v(std::size_t i) { return mk_var(i); }
Term c(Nat n) { return mk_const(std::move(n)); }
Term b(Builtin op) { return mk_builtin(op); }
Term lam(Term t) { return mk_lam(std::move(t)); }
Term app(Term f, Term a) { return mk_app(std::move(f), std::move(a)); }
Term app(Term f, Term a1, Term a2) { return mk_app(mk_app(std::move(f), std::move(a1)), std::move(a2)); }
Term app(Term f, Term a1, Term a2, Term a3) {
  return mk_app(mk_app(mk_app(std::move(f), std::move(a1)), std::move(a2)), std::move(a3));
}
Term code_ref(const Code& code) { return mk_const(code.value); }

Code identity() { return code_of(mk_lam(mk_var(0))); }
Code constant(const Nat& k) { return code_of(mk_lam(mk_const(k))); }

Code compose(const Code& g, const Code& f) {
  return code_of(lam(app(code_ref(g), app(code_ref(f), v(0)))));
}

Code pair_of(const Code& f, const Code& g) {
  return code_of(lam(app(b(Builtin::Pair), app(code_ref(f), v(0)), app(code_ref(g), v(0)))));
}

namespace {

// Strict ite with thunked branches: (ite scrut (\d. yes) (\d. no)) 0.
Term ite_thunked(Term scrut, Term yes, Term no) {
  return app(app(b(Builtin::Ite), std::move(scrut), lam(std::move(yes)), lam(std::move(no))), c(0));
}

Term shift_free(const Term& t, std::size_t d) { return shift(t, d, 0); }

}  // namespace

Code eqnat() {
  // fix \E.\a.\b. structural comparison by unpairing; values <= 1 are compared
  // directly, larger values descend into the Cantor components of a-1 and b-1
  // (which strictly decrease for inputs >= 2).
  // Layout: fix (\E. \a. \b. body); in body before thunking: E=2, a=1, b=0.
  // Every ite branch containing a recursive call is thunked, shifting indices
  // by one per nesting level.
  auto E = [](std::size_t extra) { return v(2 + extra); };
  auto a = [](std::size_t extra) { return v(1 + extra); };
  auto bb = [](std::size_t extra) { return v(0 + extra); };
  auto p1 = [](Term t) { return app(b(Builtin::Proj1), std::move(t)); };
  auto p2 = [](Term t) { return app(b(Builtin::Proj2), std::move(t)); };
  auto pd = [](Term t) { return app(b(Builtin::Pred), std::move(t)); };
  auto z = [](Term t) { return app(b(Builtin::Eq0), std::move(t)); };

  Term deep =
      ite_thunked(app(E(4), p1(pd(a(4))), p1(pd(bb(4)))),
                  /* first components equal */ app(E(5), p2(pd(a(5))), p2(pd(bb(5)))),
                  /* differ */ c(1));
  Term ge2 = ite_thunked(z(pd(bb(3))), c(1) /* a>=2, b=1 */, deep);
  Term ge1 = ite_thunked(z(pd(a(2))),
                         app(app(b(Builtin::Ite), z(pd(bb(3))), c(0)), c(1)) /* a=1 */,
                         ge2);
  Term body = ite_thunked(z(a(0)),
                          app(app(b(Builtin::Ite), z(bb(1)), c(0)), c(1)) /* a=0 */,
                          ite_thunked(z(bb(1)), c(1) /* a>0,b=0 */, ge1));
  Term eq = app(b(Builtin::Fix), lam(lam(lam(body))));
  return code_of(lam(lam(app(eq, v(1), v(0)))));
}

Code monus() {
  // fix \M.\a.\b. if b=0 then a else M (pred a) (pred b)
  Term body = ite_thunked(app(b(Builtin::Eq0), v(0)), v(2),
                          app(v(3), app(b(Builtin::Pred), v(2)), app(b(Builtin::Pred), v(1))));
  Term m = app(b(Builtin::Fix), lam(lam(lam(body))));
  return code_of(lam(lam(app(m, v(1), v(0)))));
}

Code less_than() {
  // lt(a,b) = 0 iff monus(a+1, b) = 0
  Code m = monus();
  Term t = lam(lam(app(
      app(b(Builtin::Ite),
          app(b(Builtin::Eq0), app(code_ref(m), app(b(Builtin::Succ), v(1)), v(0))), c(0)),
      c(1))));
  return code_of(t);
}

Code lookup_table(const std::vector<std::pair<Nat, Nat>>& entries, const Nat& default_value) {
  Code eq = eqnat();
  Term body = c(default_value);
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    body = app(app(b(Builtin::Ite), app(code_ref(eq), v(0), c(it->first)), c(it->second)), body);
  return code_of(lam(body));
}

}  // namespace prog

namespace {

Code build_cnc() {
  using namespace prog;
  return code_of(lam(lam(app(b(Builtin::Succ), app(b(Builtin::Pair), v(1), v(0))))));
}

Code build_rec() {
  using namespace prog;
  // fix \R.\base.\step.\n. if n=0 then base else step (n-1) (R base step (n-1))
  auto pd = [](Term t) { return app(b(Builtin::Pred), std::move(t)); };
  // depth map in body before thunks: R=3 base=2 step=1 n=0
  Term els = app(v(2) /*step*/, pd(v(1) /*n*/),
                 app(v(4) /*R*/, v(3) /*base*/, v(2) /*step*/, pd(v(1) /*n*/)));
  Term body = app(app(b(Builtin::Ite), app(b(Builtin::Eq0), v(0)), lam(v(3) /*base*/), lam(els)), c(0));
  Term r = app(b(Builtin::Fix), lam(lam(lam(lam(body)))));
  return code_of(lam(lam(lam(app(r, v(2), v(1), v(0))))));
}

Code build_listrec() {
  using namespace prog;
  // fix \R.\base.\step.\n. if n=0 then base
  //                        else step l a (R base step l)   with (l,a) = unpair(n-1)
  auto pd = [](Term t) { return app(b(Builtin::Pred), std::move(t)); };
  auto p1 = [](Term t) { return app(b(Builtin::Proj1), std::move(t)); };
  auto p2 = [](Term t) { return app(b(Builtin::Proj2), std::move(t)); };
  Term l = p1(pd(v(1)));
  Term a = p2(pd(v(1)));
  Term els = app(app(v(2) /*step*/, l, a), app(v(4) /*R*/, v(3), v(2), p1(pd(v(1)))));
  Term body = app(app(b(Builtin::Ite), app(b(Builtin::Eq0), v(0)), lam(v(3)), lam(els)), c(0));
  Term r = app(b(Builtin::Fix), lam(lam(lam(lam(body)))));
  return code_of(lam(lam(lam(app(r, v(2), v(1), v(0))))));
}

}  // namespace

Code numeral(Numeral which) {
  switch (which) {
    case Numeral::P: return code_of(mk_builtin(Builtin::Pair));
    case Numeral::P1: return code_of(mk_builtin(Builtin::Proj1));
    case Numeral::P2: return code_of(mk_builtin(Builtin::Proj2));
    case Numeral::Ite: return code_of(mk_builtin(Builtin::Ite));
    case Numeral::Succ: return code_of(mk_builtin(Builtin::Succ));
    case Numeral::Cnc: {
      static const Code c = build_cnc();
      return c;
    }
    case Numeral::Rec: {
      static const Code c = build_rec();
      return c;
    }
    case Numeral::Listrec: {
      static const Code c = build_listrec();
      return c;
    }
  }
  throw unknown_builtin("numeral: bad tag");
}

std::optional<Numeral> numeral_by_name(const std::string& name) {
  static const std::map<std::string, Numeral> table = {
      {"p", Numeral::P},     {"p1", Numeral::P1},           {"p2", Numeral::P2},
      {"ite", Numeral::Ite}, {"cnc", Numeral::Cnc},         {"listrec", Numeral::Listrec},
      {"succ", Numeral::Succ}, {"rec", Numeral::Rec}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

Code numeral_by_name_or_throw(const std::string& name) {
  auto n = numeral_by_name(name);
  if (!n) throw unknown_builtin("unknown numeral: " + name);
  return numeral(*n);
}

bool kleene_T(const Code& e, const Nat& x, const Nat& y, Fuel fuel_cap) {
  auto [steps, result] = cantor_unpair(y);
  Fuel f = steps > Nat(fuel_cap) ? fuel_cap : steps.convert_to<Fuel>();
  EvalResult r = kleene_apply(e, {x}, f);
  return r.is_value() && r.value == result;
}

Nat kleene_U(const Nat& y) { return cantor_proj2(y); }

}  // namespace peff::pca
