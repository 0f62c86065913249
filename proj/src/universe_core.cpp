#include "peff/universe_core.hpp"

#include <algorithm>
#include <sstream>

namespace peff::uni {

using pca::Code;

Nat mk_n0() { return cantor_pair(1, 0); }
Nat mk_n1() { return cantor_pair(1, 1); }
Nat mk_sigma(const Nat& a, const Nat& b) { return cantor_pair(2, cantor_pair(a, b)); }
Nat mk_pi(const Nat& a, const Nat& b) { return cantor_pair(3, cantor_pair(a, b)); }
Nat mk_plus(const Nat& a, const Nat& b) { return cantor_pair(4, cantor_pair(a, b)); }
Nat mk_list(const Nat& a) { return cantor_pair(5, a); }
Nat mk_id(const Nat& a, const Nat& x, const Nat& y) {
  return cantor_pair(6, cantor_pair(a, cantor_pair(x, y)));
}

std::optional<CodeView> view_code(const Nat& c) {
  auto [tag, payload] = cantor_unpair(c);
  if (tag == 1) {
    if (payload == 0) return CodeView{N0{}};
    if (payload == 1) return CodeView{N1{}};
    return std::nullopt;
  }
  if (tag == 2 || tag == 3 || tag == 4) {
    auto [a, b] = cantor_unpair(payload);
    if (tag == 2) return CodeView{SigmaC{a, b}};
    if (tag == 3) return CodeView{PiC{a, b}};
    return CodeView{PlusC{a, b}};
  }
  if (tag == 5) return CodeView{ListC{payload}};
  if (tag == 6) {
    auto [a, rest] = cantor_unpair(payload);
    auto [x, y] = cantor_unpair(rest);
    return CodeView{IdC{a, x, y}};
  }
  return std::nullopt;
}

std::optional<SetCode> parse_set_code(const Nat& c) {
  auto v = view_code(c);
  if (!v) return std::nullopt;
  return SetCode{c, *v};
}

std::string show_code(const Nat& c) {
  auto v = view_code(c);
  if (!v) return "invalid(" + c.str() + ")";
  std::ostringstream os;
  std::visit(
      [&](auto&& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, N0>) os << "n0";
        if constexpr (std::is_same_v<T, N1>) os << "n1";
        if constexpr (std::is_same_v<T, SigmaC>) os << "(sigma " << show_code(s.dom) << " #" << s.fam.str() << ")";
        if constexpr (std::is_same_v<T, PiC>) os << "(pi " << show_code(s.dom) << " #" << s.fam.str() << ")";
        if constexpr (std::is_same_v<T, PlusC>) os << "(plus " << show_code(s.left) << " " << show_code(s.right) << ")";
        if constexpr (std::is_same_v<T, ListC>) os << "(list " << show_code(s.elem) << ")";
        if constexpr (std::is_same_v<T, IdC>)
          os << "(id " << show_code(s.set) << " " << s.lhs.str() << " " << s.rhs.str() << ")";
      },
      *v);
  return os.str();
}

Code constructor_numeral(Ctor which) {
  using namespace pca::prog;
  auto pairb = []() { return b(pca::Builtin::Pair); };
  switch (which) {
    case Ctor::N0C: return Code{mk_n0()};
    case Ctor::N1C: return Code{mk_n1()};
    case Ctor::Sigma:
      return pca::code_of(lam(lam(app(pairb(), c(2), app(pairb(), v(1), v(0))))));
    case Ctor::Pi: return pca::code_of(lam(lam(app(pairb(), c(3), app(pairb(), v(1), v(0))))));
    case Ctor::Plus: return pca::code_of(lam(lam(app(pairb(), c(4), app(pairb(), v(1), v(0))))));
    case Ctor::List: return pca::code_of(lam(app(pairb(), c(5), v(0))));
    case Ctor::Id:
      return pca::code_of(
          lam(lam(lam(app(pairb(), c(6), app(pairb(), v(2), app(pairb(), v(1), v(0))))))));
  }
  throw std::logic_error("constructor_numeral: bad tag");
}

std::vector<std::pair<std::string, Code>> constructor_numerals() {
  return {{"n0", constructor_numeral(Ctor::N0C)},     {"n1", constructor_numeral(Ctor::N1C)},
          {"sigma", constructor_numeral(Ctor::Sigma)}, {"pi", constructor_numeral(Ctor::Pi)},
          {"plus", constructor_numeral(Ctor::Plus)},   {"list", constructor_numeral(Ctor::List)},
          {"id", constructor_numeral(Ctor::Id)}};
}

namespace {

// Kleene application result, folded into a verdict-carrying optional: nullopt
// with Unknown when fuel ran out, nullopt with Out when stuck.
struct AppOutcome {
  std::optional<Nat> value;
  Verdict miss = Verdict::Out;  // verdict to use when !value
};

AppOutcome apply1(const Nat& code, const Nat& arg, const EvalCfg& cfg) {
  pca::EvalResult r = pca::kleene_apply(pca::Code{code}, {arg}, cfg.fuel);
  if (r.is_value()) return {r.value, Verdict::In};
  return {std::nullopt,
          r.kind == pca::EvalResult::Kind::FuelExhausted ? Verdict::Unknown : Verdict::Out};
}

template <typename K, typename F>
Verdict memoized(std::map<K, Verdict>& memo, const K& key, F&& compute) {
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Verdict v = compute();
  if (v != Verdict::Unknown) memo.emplace(key, v);
  return v;
}

}  // namespace

Verdict check_set(const Nat& c, UniverseCtx& ctx, unsigned depth) {
  return memoized(ctx.set_memo, c, [&]() -> Verdict {
    if (depth == 0) return Verdict::Unknown;
    auto view = view_code(c);
    if (!view) return Verdict::Out;
    return std::visit(
        [&](auto&& s) -> Verdict {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, N0> || std::is_same_v<T, N1>) return Verdict::In;
          if constexpr (std::is_same_v<T, SigmaC> || std::is_same_v<T, PiC>) {
            Verdict va = check_set(s.dom, ctx, depth - 1);
            if (va == Verdict::Out) return Verdict::Out;
            Verdict acc = va;
            for (const Nat& t : enumerate_members(s.dom, ctx, depth - 1)) {
              AppOutcome bt = apply1(s.fam, t, ctx.cfg);
              if (!bt.value) return verdict_and(acc, bt.miss);
              acc = verdict_and(acc, check_set(*bt.value, ctx, depth - 1));
              if (acc == Verdict::Out) return Verdict::Out;
            }
            return acc;
          }
          if constexpr (std::is_same_v<T, PlusC>)
            return verdict_and(check_set(s.left, ctx, depth - 1), check_set(s.right, ctx, depth - 1));
          if constexpr (std::is_same_v<T, ListC>) return check_set(s.elem, ctx, depth - 1);
          if constexpr (std::is_same_v<T, IdC>)
            return verdict_and(check_set(s.set, ctx, depth - 1),
                               verdict_and(check_member(s.lhs, s.set, ctx, depth - 1),
                                           check_member(s.rhs, s.set, ctx, depth - 1)));
        },
        *view);
  });
}

Verdict check_member(const Nat& x, const Nat& c, UniverseCtx& ctx, unsigned depth) {
  return memoized(ctx.member_memo, std::make_pair(x, c), [&]() -> Verdict {
    if (depth == 0) return Verdict::Unknown;
    auto view = view_code(c);
    if (!view) return Verdict::Out;
    Verdict formation = check_set(c, ctx, depth);
    if (formation == Verdict::Out) return Verdict::Out;
    return std::visit(
        [&](auto&& s) -> Verdict {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, N0>) return Verdict::Out;
          if constexpr (std::is_same_v<T, N1>)
            return verdict_and(formation, x == 0 ? Verdict::In : Verdict::Out);
          if constexpr (std::is_same_v<T, SigmaC>) {
            Nat x1 = cantor_proj1(x), x2 = cantor_proj2(x);
            Verdict m1 = check_member(x1, s.dom, ctx, depth - 1);
            if (m1 == Verdict::Out) return Verdict::Out;
            AppOutcome bx = apply1(s.fam, x1, ctx.cfg);
            if (!bx.value) return verdict_and(formation, verdict_and(m1, bx.miss));
            Verdict m2 = check_member(x2, *bx.value, ctx, depth - 1);
            return verdict_and(formation, verdict_and(m1, m2));
          }
          if constexpr (std::is_same_v<T, PiC>) {
            Verdict acc = formation;
            for (const Nat& t : enumerate_members(s.dom, ctx, depth - 1)) {
              AppOutcome xt = apply1(x, t, ctx.cfg);
              if (!xt.value) return verdict_and(acc, xt.miss);
              AppOutcome bt = apply1(s.fam, t, ctx.cfg);
              if (!bt.value) return verdict_and(acc, bt.miss);
              acc = verdict_and(acc, check_member(*xt.value, *bt.value, ctx, depth - 1));
              if (acc == Verdict::Out) return Verdict::Out;
            }
            return acc;
          }
          if constexpr (std::is_same_v<T, PlusC>) {
            Nat tag = cantor_proj1(x), payload = cantor_proj2(x);
            if (tag == 0) return verdict_and(formation, check_member(payload, s.left, ctx, depth - 1));
            if (tag == 1) return verdict_and(formation, check_member(payload, s.right, ctx, depth - 1));
            return Verdict::Out;
          }
          if constexpr (std::is_same_v<T, ListC>) {
            Verdict acc = formation;
            for (const Nat& comp : decode_list(x)) {
              acc = verdict_and(acc, check_member(comp, s.elem, ctx, depth - 1));
              if (acc == Verdict::Out) return Verdict::Out;
            }
            return acc;
          }
          if constexpr (std::is_same_v<T, IdC>) {
            // any witness inhabits Id(A,x,y) once x = y holds in A
            return verdict_and(formation, s.lhs == s.rhs ? Verdict::In : Verdict::Out);
          }
        },
        *view);
  });
}

Verdict check_nonmember(const Nat& x, const Nat& c, UniverseCtx& ctx, unsigned depth) {
  return memoized(ctx.nonmember_memo, std::make_pair(x, c), [&]() -> Verdict {
    if (depth == 0) return Verdict::Unknown;
    auto view = view_code(c);
    if (!view) return Verdict::Out;
    Verdict formation = check_set(c, ctx, depth);
    if (formation == Verdict::Out) return Verdict::Out;
    return std::visit(
        [&](auto&& s) -> Verdict {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, N0>) return verdict_and(formation, Verdict::In);
          if constexpr (std::is_same_v<T, N1>)
            return verdict_and(formation, x > 0 ? Verdict::In : Verdict::Out);
          if constexpr (std::is_same_v<T, SigmaC>) {
            Nat x1 = cantor_proj1(x), x2 = cantor_proj2(x);
            Verdict n1v = check_nonmember(x1, s.dom, ctx, depth - 1);
            if (n1v == Verdict::In) return formation;
            AppOutcome bx = apply1(s.fam, x1, ctx.cfg);
            Verdict n2v = bx.value ? check_nonmember(x2, *bx.value, ctx, depth - 1) : bx.miss;
            return verdict_and(formation, verdict_or(n1v, n2v));
          }
          if constexpr (std::is_same_v<T, PiC>) {
            // exists t in A whose application fails to land in B(t); a stuck
            // application is a definite witness, since membership requires a
            // defined value
            Verdict acc = Verdict::Out;
            for (const Nat& t : enumerate_members(s.dom, ctx, depth - 1)) {
              AppOutcome xt = apply1(x, t, ctx.cfg);
              Verdict here;
              if (!xt.value) {
                here = xt.miss == Verdict::Unknown ? Verdict::Unknown : Verdict::In;
              } else {
                AppOutcome bt = apply1(s.fam, t, ctx.cfg);
                here = bt.value ? check_nonmember(*xt.value, *bt.value, ctx, depth - 1) : bt.miss;
              }
              acc = verdict_or(acc, here);
              if (acc == Verdict::In) break;
            }
            return verdict_and(formation, acc);
          }
          if constexpr (std::is_same_v<T, PlusC>) {
            Nat tag = cantor_proj1(x), payload = cantor_proj2(x);
            Verdict left = tag != 0 ? Verdict::In : check_nonmember(payload, s.left, ctx, depth - 1);
            Verdict right = tag != 1 ? Verdict::In : check_nonmember(payload, s.right, ctx, depth - 1);
            return verdict_and(formation, verdict_and(left, right));
          }
          if constexpr (std::is_same_v<T, ListC>) {
            Verdict acc = Verdict::Out;
            for (const Nat& comp : decode_list(x)) {
              acc = verdict_or(acc, check_nonmember(comp, s.elem, ctx, depth - 1));
              if (acc == Verdict::In) break;
            }
            return verdict_and(formation, acc);
          }
          if constexpr (std::is_same_v<T, IdC>) {
            return verdict_and(formation, s.lhs != s.rhs ? Verdict::In : Verdict::Out);
          }
        },
        *view);
  });
}

Verdict check_coherence(const Nat& c, UniverseCtx& ctx) {
  Verdict acc = Verdict::In;
  for (Nat t = 0; t <= ctx.cfg.bound; ++t) {
    Verdict m = check_member(t, c, ctx, ctx.cfg.depth);
    Verdict n = check_nonmember(t, c, ctx, ctx.cfg.depth);
    if (m == Verdict::Unknown || n == Verdict::Unknown) {
      acc = Verdict::Unknown;
      continue;
    }
    if (m == n) return Verdict::Out;  // both In or both Out: not complementary
  }
  return acc;
}

Verdict us_member(const Nat& c, UniverseCtx& ctx) {
  Verdict s = check_set(c, ctx, ctx.cfg.depth);
  if (s == Verdict::Out) return Verdict::Out;
  return verdict_and(s, check_coherence(c, ctx));
}

UniverseVerdict universe_verdict(const Nat& c, UniverseCtx& ctx) {
  Verdict s = check_set(c, ctx, ctx.cfg.depth);
  Verdict coh = s == Verdict::Out ? Verdict::Out : check_coherence(c, ctx);
  return UniverseVerdict{s, coh, verdict_and(s, coh)};
}

std::vector<Nat> enumerate_members(const Nat& c, UniverseCtx& ctx, unsigned depth) {
  auto key = std::make_pair(c, depth);
  auto it = ctx.enum_memo.find(key);
  if (it != ctx.enum_memo.end()) return it->second;

  std::vector<Nat> out;
  auto view = view_code(c);
  if (depth == 0 || !view) {
    ctx.enum_memo.emplace(key, out);
    return out;
  }
  const unsigned cap = ctx.cfg.enum_cap;
  auto push = [&](Nat v) {
    if (out.size() < cap) out.push_back(std::move(v));
  };
  std::visit(
      [&](auto&& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, N1>) push(Nat(0));
        if constexpr (std::is_same_v<T, SigmaC>) {
          for (const Nat& a : enumerate_members(s.dom, ctx, depth - 1)) {
            AppOutcome ba = apply1(s.fam, a, ctx.cfg);
            if (!ba.value) continue;
            for (const Nat& b : enumerate_members(*ba.value, ctx, depth - 1))
              push(cantor_pair(a, b));
          }
        }
        if constexpr (std::is_same_v<T, PiC>) {
          // abstraction catalog: constant maps over the union of codomain
          // extensions plus the identity, kept when they check as members
          std::vector<Nat> pool;
          for (const Nat& t : enumerate_members(s.dom, ctx, depth - 1)) {
            AppOutcome bt = apply1(s.fam, t, ctx.cfg);
            if (!bt.value) continue;
            for (const Nat& m : enumerate_members(*bt.value, ctx, depth - 1)) pool.push_back(m);
          }
          std::sort(pool.begin(), pool.end());
          pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
          std::vector<Nat> candidates;
          for (const Nat& m : pool) candidates.push_back(pca::prog::constant(m).value);
          candidates.push_back(pca::prog::identity().value);
          for (const Nat& cand : candidates)
            if (check_member(cand, c, ctx, depth) == Verdict::In) push(cand);
        }
        if constexpr (std::is_same_v<T, PlusC>) {
          for (const Nat& a : enumerate_members(s.left, ctx, depth - 1)) push(cantor_pair(0, a));
          for (const Nat& b : enumerate_members(s.right, ctx, depth - 1)) push(cantor_pair(1, b));
        }
        if constexpr (std::is_same_v<T, ListC>) {
          std::vector<Nat> elems = enumerate_members(s.elem, ctx, depth - 1);
          std::vector<std::vector<Nat>> level = {{}};
          push(encode_list({}));
          for (unsigned len = 1; len <= ctx.cfg.list_cap; ++len) {
            std::vector<std::vector<Nat>> next;
            for (const auto& prefix : level)
              for (const Nat& e : elems) {
                auto xs = prefix;
                xs.push_back(e);
                push(encode_list(xs));
                next.push_back(std::move(xs));
              }
            level = std::move(next);
          }
        }
        if constexpr (std::is_same_v<T, IdC>) {
          if (s.lhs == s.rhs && check_member(s.lhs, s.set, ctx, depth - 1) == Verdict::In) {
            Nat limit = ctx.cfg.bound < Nat(cap) ? ctx.cfg.bound : Nat(cap);
            for (Nat n = 0; n <= limit && out.size() < cap; ++n) push(n);
          }
        }
      },
      *view);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  ctx.enum_memo.emplace(key, out);
  return out;
}

std::vector<Nat> sample_codes() {
  Nat n0 = mk_n0(), n1 = mk_n1();
  Nat const_n1 = pca::prog::constant(n1).value;
  Nat const_n0 = pca::prog::constant(n0).value;
  return {
      n0,
      n1,
      mk_plus(n1, n1),
      mk_sigma(n1, const_n1),
      mk_sigma(n1, const_n0),
      mk_list(n1),
      mk_pi(n1, const_n1),
      mk_id(n1, 0, 0),
  };
}

Verdict check_set(const Nat& c, const EvalCfg& cfg) {
  UniverseCtx ctx(cfg);
  return check_set(c, ctx, cfg.depth);
}
Verdict check_member(const Nat& x, const Nat& c, const EvalCfg& cfg) {
  UniverseCtx ctx(cfg);
  return check_member(x, c, ctx, cfg.depth);
}
Verdict check_nonmember(const Nat& x, const Nat& c, const EvalCfg& cfg) {
  UniverseCtx ctx(cfg);
  return check_nonmember(x, c, ctx, cfg.depth);
}
Verdict check_coherence(const Nat& c, const EvalCfg& cfg) {
  UniverseCtx ctx(cfg);
  return check_coherence(c, ctx);
}
Verdict us_member(const Nat& c, const EvalCfg& cfg) {
  UniverseCtx ctx(cfg);
  return us_member(c, ctx);
}
std::vector<Nat> enumerate_members(const Nat& c, const EvalCfg& cfg) {
  UniverseCtx ctx(cfg);
  return enumerate_members(c, ctx, cfg.depth);
}

}  // namespace peff::uni
