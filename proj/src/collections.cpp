#include "peff/collections.hpp"

#include <algorithm>

#include "peff/universe_core.hpp"

namespace peff::col {

using pca::Code;

DecPtr dec(Decider d) { return std::make_shared<const Decider>(std::move(d)); }
FamDecPtr fdec(FamDecider d) { return std::make_shared<const FamDecider>(std::move(d)); }

namespace {

struct AppOutcome {
  std::optional<Nat> value;
  Verdict miss = Verdict::Out;
};

AppOutcome runv(const Code& code, const std::vector<Nat>& args, const EvalCfg& cfg) {
  pca::EvalResult r = pca::kleene_apply(code, args, cfg.fuel);
  if (r.is_value()) return {r.value, Verdict::In};
  return {std::nullopt,
          r.kind == pca::EvalResult::Kind::FuelExhausted ? Verdict::Unknown : Verdict::Out};
}

std::vector<Nat> sorted_unique_capped(std::vector<Nat> xs, unsigned cap) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() > cap) xs.resize(cap);
  return xs;
}

// Deciders are immutable shared structures and evaluation is pure given the
// configuration, so verdicts and enumerations memoise per decider node.
struct CfgKey {
  Fuel fuel;
  unsigned depth, list_cap, enum_cap, support_cap;
  Nat bound;
  bool operator<(const CfgKey& o) const {
    return std::tie(fuel, depth, list_cap, enum_cap, support_cap, bound) <
           std::tie(o.fuel, o.depth, o.list_cap, o.enum_cap, o.support_cap, o.bound);
  }
};
CfgKey cfg_key(const EvalCfg& c) {
  return CfgKey{c.fuel, c.depth, c.list_cap, c.enum_cap, c.support_cap, c.bound};
}

thread_local std::map<std::tuple<const FamDecider*, Nat, Nat, CfgKey>, Verdict> g_decide_cache;
thread_local std::map<std::tuple<const FamDecider*, Nat, CfgKey>, std::vector<Nat>>
    g_enum_cache;
thread_local std::vector<FamDecPtr> g_cache_pins;  // keep cached nodes alive

void pin_node(const FamDecPtr& d) {
  if (g_cache_pins.size() > 100000) {
    g_cache_pins.clear();
    g_decide_cache.clear();
    g_enum_cache.clear();
  }
  g_cache_pins.push_back(d);
}

}  // namespace

// ---------------------------------------------------------------------------
// Collection decider evaluation

Verdict decide(const DecPtr& d, const Nat& x, const EvalCfg& cfg) {
  return std::visit(
      [&](auto&& n) -> Verdict {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DecAllNat>) return Verdict::In;
        if constexpr (std::is_same_v<T, DecTerminal>) return x == 0 ? Verdict::In : Verdict::Out;
        if constexpr (std::is_same_v<T, DecInitial>) return Verdict::Out;
        if constexpr (std::is_same_v<T, DecFinite>)
          return std::binary_search(n.members.begin(), n.members.end(), x) ? Verdict::In
                                                                           : Verdict::Out;
        if constexpr (std::is_same_v<T, DecProgram>) {
          AppOutcome r = runv(n.code, {x}, cfg);
          if (!r.value) return r.miss;
          return *r.value != 0 ? Verdict::In : Verdict::Out;
        }
        if constexpr (std::is_same_v<T, DecProduct>)
          return verdict_and(decide(n.left, cantor_proj1(x), cfg),
                             decide(n.right, cantor_proj2(x), cfg));
        if constexpr (std::is_same_v<T, DecCoproduct>) {
          Nat tag = cantor_proj1(x);
          if (tag == 0) return decide(n.left, cantor_proj2(x), cfg);
          if (tag == 1) return decide(n.right, cantor_proj2(x), cfg);
          return Verdict::Out;
        }
        if constexpr (std::is_same_v<T, DecListOf>) {
          Verdict acc = Verdict::In;
          for (const Nat& comp : decode_list(x)) {
            acc = verdict_and(acc, decide(n.elem, comp, cfg));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, DecEqualizer>) {
          Verdict dv = decide(n.dom, x, cfg);
          if (dv == Verdict::Out) return Verdict::Out;
          AppOutcome rf = runv(n.f, {x}, cfg), rg = runv(n.g, {x}, cfg);
          if (rf.value && rg.value) return *rf.value == *rg.value ? dv : Verdict::Out;
          Verdict ev = verdict_and(rf.value ? Verdict::In : rf.miss,
                                   rg.value ? Verdict::In : rg.miss);
          return verdict_and(dv, ev);
        }
        if constexpr (std::is_same_v<T, DecWeakExp>) {
          Verdict acc = Verdict::In;
          for (const Nat& u : n.dom_support) {
            AppOutcome r = runv(Code{x}, {u}, cfg);
            if (!r.value) return verdict_and(acc, r.miss);
            acc = verdict_and(acc, decide(n.cod, *r.value, cfg));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, DecSigma>) {
          Nat a = cantor_proj1(x);
          return verdict_and(decide(n.base, a, cfg),
                             fam_decide(n.fam, a, cantor_proj2(x), cfg));
        }
        if constexpr (std::is_same_v<T, DecUniverse>) {
          uni::UniverseCtx ctx(cfg);
          return uni::us_member(x, ctx);
        }
        if constexpr (std::is_same_v<T, DecSetMembers>) {
          uni::UniverseCtx ctx(cfg);
          return uni::check_member(x, n.code, ctx, cfg.depth);
        }
        if constexpr (std::is_same_v<T, DecFlag>)
          return std::find(n.undecided.begin(), n.undecided.end(), x) != n.undecided.end()
                     ? Verdict::Unknown
                     : Verdict::Out;
      },
      d->node);
}

Verdict decide(const Collection& a, const Nat& x, const EvalCfg& cfg) {
  return decide(a.decider, x, cfg);
}

std::vector<Nat> enumerate_collection(const DecPtr& d, const EvalCfg& cfg) {
  const unsigned cap = cfg.enum_cap;
  std::vector<Nat> out;
  std::visit(
      [&](auto&& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DecAllNat>) {
          for (unsigned i = 0; i < cap; ++i) out.push_back(i);
        }
        if constexpr (std::is_same_v<T, DecTerminal>) out.push_back(0);
        if constexpr (std::is_same_v<T, DecFinite>) out = n.members;
        if constexpr (std::is_same_v<T, DecProgram>) {
          for (unsigned i = 0; i < cap; ++i)
            if (decide(d, Nat(i), cfg) == Verdict::In) out.push_back(i);
        }
        if constexpr (std::is_same_v<T, DecProduct>) {
          for (const Nat& a : enumerate_collection(n.left, cfg))
            for (const Nat& b : enumerate_collection(n.right, cfg))
              out.push_back(cantor_pair(a, b));
        }
        if constexpr (std::is_same_v<T, DecCoproduct>) {
          for (const Nat& a : enumerate_collection(n.left, cfg)) out.push_back(cantor_pair(0, a));
          for (const Nat& b : enumerate_collection(n.right, cfg)) out.push_back(cantor_pair(1, b));
        }
        if constexpr (std::is_same_v<T, DecListOf>) {
          std::vector<Nat> elems = enumerate_collection(n.elem, cfg);
          std::vector<std::vector<Nat>> level = {{}};
          out.push_back(encode_list({}));
          for (unsigned len = 1; len <= cfg.list_cap; ++len) {
            std::vector<std::vector<Nat>> next;
            for (const auto& prefix : level)
              for (const Nat& e : elems) {
                auto xs = prefix;
                xs.push_back(e);
                out.push_back(encode_list(xs));
                next.push_back(std::move(xs));
              }
            level = std::move(next);
          }
        }
        if constexpr (std::is_same_v<T, DecEqualizer>) {
          for (const Nat& x : enumerate_collection(n.dom, cfg))
            if (decide(d, x, cfg) == Verdict::In) out.push_back(x);
        }
        if constexpr (std::is_same_v<T, DecWeakExp>) {
          std::vector<Nat> candidates;
          for (const Nat& b : enumerate_collection(n.cod, cfg))
            candidates.push_back(pca::prog::constant(b).value);
          candidates.push_back(pca::prog::identity().value);
          for (const Nat& c : candidates)
            if (decide(d, c, cfg) == Verdict::In) out.push_back(c);
        }
        if constexpr (std::is_same_v<T, DecSigma>) {
          for (const Nat& a : enumerate_collection(n.base, cfg))
            for (const Nat& b : enumerate_fibre(n.fam, a, cfg)) out.push_back(cantor_pair(a, b));
        }
        if constexpr (std::is_same_v<T, DecUniverse>) {
          uni::UniverseCtx ctx(cfg);
          for (const Nat& c : uni::sample_codes())
            if (uni::us_member(c, ctx) == Verdict::In) out.push_back(c);
        }
        if constexpr (std::is_same_v<T, DecSetMembers>) {
          uni::UniverseCtx ctx(cfg);
          out = uni::enumerate_members(n.code, ctx, cfg.depth);
        }
      },
      d->node);
  return sorted_unique_capped(std::move(out), cap);
}

// ---------------------------------------------------------------------------
// Family decider evaluation

namespace {
Verdict fam_decide_raw(const FamDecPtr& d, const Nat& x, const Nat& m, const EvalCfg& cfg);
}  // namespace

Verdict fam_decide(const FamDecPtr& d, const Nat& x, const Nat& m, const EvalCfg& cfg) {
  auto key = std::make_tuple(d.get(), x, m, cfg_key(cfg));
  if (auto it = g_decide_cache.find(key); it != g_decide_cache.end()) return it->second;
  Verdict out = fam_decide_raw(d, x, m, cfg);
  pin_node(d);
  g_decide_cache.emplace(std::move(key), out);
  return out;
}

namespace {

Verdict fam_decide_raw(const FamDecPtr& d, const Nat& x, const Nat& m, const EvalCfg& cfg) {
  return std::visit(
      [&](auto&& n) -> Verdict {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FamConst>) return decide(n.fibre, m, cfg);
        if constexpr (std::is_same_v<T, FamFinite>) {
          auto it = n.fibres.find(x);
          if (it == n.fibres.end()) return Verdict::Out;
          return std::find(it->second.begin(), it->second.end(), m) != it->second.end()
                     ? Verdict::In
                     : Verdict::Out;
        }
        if constexpr (std::is_same_v<T, FamProgram>) {
          AppOutcome r = runv(n.code, {x, m}, cfg);
          if (!r.value) return r.miss;
          return *r.value != 0 ? Verdict::In : Verdict::Out;
        }
        if constexpr (std::is_same_v<T, FamProduct>)
          return verdict_and(fam_decide(n.left, x, cantor_proj1(m), cfg),
                             fam_decide(n.right, x, cantor_proj2(m), cfg));
        if constexpr (std::is_same_v<T, FamCoproduct>) {
          Nat tag = cantor_proj1(m);
          if (tag == 0) return fam_decide(n.left, x, cantor_proj2(m), cfg);
          if (tag == 1) return fam_decide(n.right, x, cantor_proj2(m), cfg);
          return Verdict::Out;
        }
        if constexpr (std::is_same_v<T, FamListOf>) {
          Verdict acc = Verdict::In;
          for (const Nat& comp : decode_list(m)) {
            acc = verdict_and(acc, fam_decide(n.elem, x, comp, cfg));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, FamEqualizer>) {
          Verdict dv = fam_decide(n.dom, x, m, cfg);
          if (dv == Verdict::Out) return Verdict::Out;
          AppOutcome rf = runv(n.f, {x, m}, cfg), rg = runv(n.g, {x, m}, cfg);
          if (rf.value && rg.value) return *rf.value == *rg.value ? dv : Verdict::Out;
          return verdict_and(dv, verdict_and(rf.value ? Verdict::In : rf.miss,
                                             rg.value ? Verdict::In : rg.miss));
        }
        if constexpr (std::is_same_v<T, FamWeakExp>) {
          Verdict acc = Verdict::In;
          for (const Nat& t : enumerate_fibre(n.dom, x, cfg)) {
            AppOutcome r = runv(Code{m}, {t}, cfg);
            if (!r.value) return verdict_and(acc, r.miss);
            acc = verdict_and(acc, fam_decide(n.cod, x, *r.value, cfg));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, FamSubst>) {
          Verdict g = decide(n.guard, x, cfg);
          if (g == Verdict::Out) return Verdict::Out;
          AppOutcome y = runv(n.f, {x}, cfg);
          if (!y.value) return verdict_and(g, y.miss);
          return verdict_and(g, fam_decide(n.inner, *y.value, m, cfg));
        }
        if constexpr (std::is_same_v<T, FamSigmaAlong>) {
          Nat a = cantor_proj1(m), b = cantor_proj2(m);
          Verdict mv = fam_decide(n.inner, a, b, cfg);
          if (mv == Verdict::Out) return Verdict::Out;
          AppOutcome fa = runv(n.f, {a}, cfg);
          if (!fa.value) return verdict_and(mv, fa.miss);
          return verdict_and(mv, *fa.value == x ? Verdict::In : Verdict::Out);
        }
        if constexpr (std::is_same_v<T, FamPiAlong>) {
          Verdict acc = decide(n.guard, x, cfg);
          if (acc == Verdict::Out) return Verdict::Out;
          for (const Nat& y : n.dom_support) {
            AppOutcome fy = runv(n.f, {y}, cfg);
            if (!fy.value) return verdict_and(acc, fy.miss);
            if (*fy.value != x) continue;
            AppOutcome my = runv(Code{m}, {y}, cfg);
            if (!my.value) return verdict_and(acc, my.miss);
            acc = verdict_and(acc, fam_decide(n.inner, y, *my.value, cfg));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, FamSigmaPrime>) {
          Nat a = cantor_proj1(m), w = cantor_proj2(m);
          return verdict_and(decide(n.a, a, cfg),
                             fam_decide(n.inner, cantor_pair(x, a), w, cfg));
        }
        if constexpr (std::is_same_v<T, FamPiPrime>) {
          Verdict acc = Verdict::In;
          for (const Nat& t : n.a_support) {
            AppOutcome r = runv(Code{m}, {t}, cfg);
            if (!r.value) return verdict_and(acc, r.miss);
            acc = verdict_and(acc, fam_decide(n.inner, cantor_pair(x, t), *r.value, cfg));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, FamTau>) {
          Verdict g = decide(n.guard, x, cfg);
          if (g == Verdict::Out) return Verdict::Out;
          AppOutcome cx = runv(n.code, {x}, cfg);
          if (!cx.value) return verdict_and(g, cx.miss);
          uni::UniverseCtx ctx(cfg);
          return verdict_and(g, uni::check_member(m, *cx.value, ctx, cfg.depth));
        }
        if constexpr (std::is_same_v<T, FamSep>) {
          if (cantor_proj1(m) != x) return Verdict::Out;
          return fam_decide(n.inner, x, cantor_proj2(m), cfg);
        }
        if constexpr (std::is_same_v<T, FamGuarded>) {
          Verdict g = decide(n.guard, x, cfg);
          if (g == Verdict::Out) return Verdict::Out;
          return verdict_and(g, fam_decide(n.inner, x, m, cfg));
        }
        if constexpr (std::is_same_v<T, FamDepPair>) {
          Nat b = cantor_proj1(m), w = cantor_proj2(m);
          Verdict fv = fam_decide(n.first, x, b, cfg);
          if (fv == Verdict::Out) return Verdict::Out;
          AppOutcome pt = runv(n.point, {x, b}, cfg);
          if (!pt.value) return verdict_and(fv, pt.miss);
          return verdict_and(fv, fam_decide(n.second, *pt.value, w, cfg));
        }
        if constexpr (std::is_same_v<T, FamListRel>) {
          Nat a = cantor_proj1(x);
          Nat l1 = cantor_proj1(cantor_proj2(x)), l2 = cantor_proj2(cantor_proj2(x));
          std::vector<Nat> c1 = decode_list(l1), c2 = decode_list(l2), ws = decode_list(m);
          if (c1.size() != c2.size() || ws.size() != c1.size()) return Verdict::Out;
          Verdict acc = Verdict::In;
          for (std::size_t i = 0; i < c1.size(); ++i) {
            acc = verdict_and(
                acc, fam_decide(n.s, cantor_pair(a, cantor_pair(c1[i], c2[i])), ws[i], cfg));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, FamKleeneT>) {
          Nat e = cantor_proj1(cantor_proj1(x));
          Nat arg = cantor_proj2(cantor_proj1(x));
          Nat y = cantor_proj2(x);
          if (m != 0) return Verdict::Out;
          return pca::kleene_T(Code{e}, arg, y, cfg.fuel) ? Verdict::In : Verdict::Out;
        }
        if constexpr (std::is_same_v<T, FamOmegaEq>) {
          Nat c1 = cantor_proj1(x), c2 = cantor_proj2(x);
          Nat u = cantor_proj1(m), v = cantor_proj2(m);
          uni::UniverseCtx ctx(cfg);
          Verdict acc = Verdict::In;
          for (const Nat& t : uni::enumerate_members(c1, ctx, cfg.depth)) {
            AppOutcome r = runv(Code{u}, {t}, cfg);
            if (!r.value) return verdict_and(acc, r.miss);
            acc = verdict_and(acc, uni::check_member(*r.value, c2, ctx, cfg.depth));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          for (const Nat& s : uni::enumerate_members(c2, ctx, cfg.depth)) {
            AppOutcome r = runv(Code{v}, {s}, cfg);
            if (!r.value) return verdict_and(acc, r.miss);
            acc = verdict_and(acc, uni::check_member(*r.value, c1, ctx, cfg.depth));
            if (acc == Verdict::Out) return Verdict::Out;
          }
          return acc;
        }
        if constexpr (std::is_same_v<T, FamKRel>) {
          Nat z = cantor_proj1(x), z2 = cantor_proj2(x);
          Nat a = cantor_proj1(z), b = cantor_proj2(z);
          Nat a2 = cantor_proj1(z2), b2 = cantor_proj2(z2);
          Nat r = cantor_proj1(m), s = cantor_proj2(m);
          Verdict rv = fam_decide(n.rel, cantor_pair(a, a2), r, cfg);
          if (rv == Verdict::Out) return Verdict::Out;
          AppOutcome sb = runv(n.sigma, {cantor_pair(cantor_pair(a, a2), r), b}, cfg);
          if (!sb.value) return verdict_and(rv, sb.miss);
          return verdict_and(
              rv, fam_decide(n.s, cantor_pair(a2, cantor_pair(*sb.value, b2)), s, cfg));
        }
      },
      d->node);
}

}  // namespace

std::vector<Nat> enumerate_fibre(const FamDecPtr& d, const Nat& x, const EvalCfg& cfg) {
  auto key = std::make_tuple(d.get(), x, cfg_key(cfg));
  if (auto it = g_enum_cache.find(key); it != g_enum_cache.end()) return it->second;
  const unsigned cap = cfg.enum_cap;
  std::vector<Nat> out;
  std::visit(
      [&](auto&& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FamConst>) out = enumerate_collection(n.fibre, cfg);
        if constexpr (std::is_same_v<T, FamFinite>) {
          auto it = n.fibres.find(x);
          if (it != n.fibres.end()) out = it->second;
        }
        if constexpr (std::is_same_v<T, FamProgram>) {
          for (unsigned i = 0; i < cap; ++i)
            if (fam_decide(d, x, Nat(i), cfg) == Verdict::In) out.push_back(i);
        }
        if constexpr (std::is_same_v<T, FamProduct>) {
          for (const Nat& a : enumerate_fibre(n.left, x, cfg))
            for (const Nat& b : enumerate_fibre(n.right, x, cfg)) out.push_back(cantor_pair(a, b));
        }
        if constexpr (std::is_same_v<T, FamCoproduct>) {
          for (const Nat& a : enumerate_fibre(n.left, x, cfg)) out.push_back(cantor_pair(0, a));
          for (const Nat& b : enumerate_fibre(n.right, x, cfg)) out.push_back(cantor_pair(1, b));
        }
        if constexpr (std::is_same_v<T, FamListOf>) {
          std::vector<Nat> elems = enumerate_fibre(n.elem, x, cfg);
          std::vector<std::vector<Nat>> level = {{}};
          out.push_back(encode_list({}));
          for (unsigned len = 1; len <= cfg.list_cap; ++len) {
            std::vector<std::vector<Nat>> next;
            for (const auto& prefix : level)
              for (const Nat& e : elems) {
                auto xs = prefix;
                xs.push_back(e);
                out.push_back(encode_list(xs));
                next.push_back(std::move(xs));
              }
            level = std::move(next);
          }
        }
        if constexpr (std::is_same_v<T, FamEqualizer>) {
          for (const Nat& m : enumerate_fibre(n.dom, x, cfg))
            if (fam_decide(d, x, m, cfg) == Verdict::In) out.push_back(m);
        }
        if constexpr (std::is_same_v<T, FamWeakExp>) {
          std::vector<Nat> candidates;
          for (const Nat& b : enumerate_fibre(n.cod, x, cfg))
            candidates.push_back(pca::prog::constant(b).value);
          candidates.push_back(pca::prog::identity().value);
          // pointwise table: send each domain member to some codomain member
          {
            auto members = enumerate_fibre(n.cod, x, cfg);
            if (!members.empty()) {
              std::vector<std::pair<Nat, Nat>> entries;
              for (const Nat& t : enumerate_fibre(n.dom, x, cfg))
                entries.emplace_back(t, members.front());
              candidates.push_back(pca::prog::lookup_table(entries, Nat(0)).value);
            }
          }
          for (const Nat& c : candidates)
            if (fam_decide(d, x, c, cfg) == Verdict::In) out.push_back(c);
        }
        if constexpr (std::is_same_v<T, FamSubst>) {
          AppOutcome y = runv(n.f, {x}, cfg);
          if (y.value) out = enumerate_fibre(n.inner, *y.value, cfg);
        }
        if constexpr (std::is_same_v<T, FamSigmaAlong>) {
          for (const Nat& a : n.dom_support) {
            AppOutcome fa = runv(n.f, {a}, cfg);
            if (!fa.value || *fa.value != x) continue;
            for (const Nat& b : enumerate_fibre(n.inner, a, cfg)) out.push_back(cantor_pair(a, b));
          }
        }
        if constexpr (std::is_same_v<T, FamPiAlong>) {
          std::vector<Nat> pool;
          std::vector<std::pair<Nat, Nat>> entries;
          bool table_ok = true;
          for (const Nat& y : n.dom_support) {
            AppOutcome fy = runv(n.f, {y}, cfg);
            if (!fy.value || *fy.value != x) continue;
            auto members = enumerate_fibre(n.inner, y, cfg);
            for (const Nat& m : members) pool.push_back(m);
            if (members.empty())
              table_ok = false;
            else
              entries.emplace_back(y, members.front());
          }
          pool = sorted_unique_capped(std::move(pool), cap);
          std::vector<Nat> candidates;
          for (const Nat& m : pool) candidates.push_back(pca::prog::constant(m).value);
          candidates.push_back(pca::prog::identity().value);
          if (table_ok) candidates.push_back(pca::prog::lookup_table(entries, Nat(0)).value);
          for (const Nat& c : candidates)
            if (fam_decide(d, x, c, cfg) == Verdict::In) out.push_back(c);
        }
        if constexpr (std::is_same_v<T, FamSigmaPrime>) {
          for (const Nat& a : n.a_support)
            for (const Nat& w : enumerate_fibre(n.inner, cantor_pair(x, a), cfg))
              out.push_back(cantor_pair(a, w));
        }
        if constexpr (std::is_same_v<T, FamPiPrime>) {
          std::vector<Nat> pool;
          std::vector<std::pair<Nat, Nat>> entries;
          bool table_ok = true;
          for (const Nat& t : n.a_support) {
            auto members = enumerate_fibre(n.inner, cantor_pair(x, t), cfg);
            for (const Nat& m : members) pool.push_back(m);
            if (members.empty())
              table_ok = false;
            else
              entries.emplace_back(t, members.front());
          }
          pool = sorted_unique_capped(std::move(pool), cap);
          std::vector<Nat> candidates;
          for (const Nat& m : pool) candidates.push_back(pca::prog::constant(m).value);
          candidates.push_back(pca::prog::identity().value);
          if (table_ok && !entries.empty())
            candidates.push_back(pca::prog::lookup_table(entries, Nat(0)).value);
          for (const Nat& c : candidates)
            if (fam_decide(d, x, c, cfg) == Verdict::In) out.push_back(c);
        }
        if constexpr (std::is_same_v<T, FamTau>) {
          AppOutcome cx = runv(n.code, {x}, cfg);
          if (cx.value) {
            uni::UniverseCtx ctx(cfg);
            out = uni::enumerate_members(*cx.value, ctx, cfg.depth);
          }
        }
        if constexpr (std::is_same_v<T, FamSep>) {
          for (const Nat& p : enumerate_fibre(n.inner, x, cfg)) out.push_back(cantor_pair(x, p));
        }
        if constexpr (std::is_same_v<T, FamGuarded>) {
          out = enumerate_fibre(n.inner, x, cfg);
        }
        if constexpr (std::is_same_v<T, FamDepPair>) {
          for (const Nat& b : enumerate_fibre(n.first, x, cfg)) {
            AppOutcome pt = runv(n.point, {x, b}, cfg);
            if (!pt.value) continue;
            for (const Nat& w : enumerate_fibre(n.second, *pt.value, cfg))
              out.push_back(cantor_pair(b, w));
          }
        }
        if constexpr (std::is_same_v<T, FamListRel>) {
          Nat a = cantor_proj1(x);
          std::vector<Nat> c1 = decode_list(cantor_proj1(cantor_proj2(x)));
          std::vector<Nat> c2 = decode_list(cantor_proj2(cantor_proj2(x)));
          if (c1.size() == c2.size()) {
            std::vector<Nat> ws;
            bool ok = true;
            for (std::size_t i = 0; i < c1.size() && ok; ++i) {
              auto members =
                  enumerate_fibre(n.s, cantor_pair(a, cantor_pair(c1[i], c2[i])), cfg);
              if (members.empty())
                ok = false;
              else
                ws.push_back(members.front());
            }
            if (ok) out.push_back(encode_list(ws));
          }
        }
        if constexpr (std::is_same_v<T, FamKleeneT>) {
          if (fam_decide(d, x, Nat(0), cfg) == Verdict::In) out.push_back(0);
        }
        if constexpr (std::is_same_v<T, FamOmegaEq>) {
          Nat c1 = cantor_proj1(x), c2 = cantor_proj2(x);
          uni::UniverseCtx ctx(cfg);
          std::vector<Nat> us = {pca::prog::identity().value};
          for (const Nat& t : uni::enumerate_members(c2, ctx, cfg.depth))
            us.push_back(pca::prog::constant(t).value);
          std::vector<Nat> vs = {pca::prog::identity().value};
          for (const Nat& t : uni::enumerate_members(c1, ctx, cfg.depth))
            vs.push_back(pca::prog::constant(t).value);
          for (const Nat& u : us) {
            for (const Nat& v : vs) {
              Nat w = cantor_pair(u, v);
              if (fam_decide(d, x, w, cfg) == Verdict::In) {
                out.push_back(w);
                if (out.size() >= cap) return;
              }
            }
          }
        }
        if constexpr (std::is_same_v<T, FamKRel>) {
          Nat z = cantor_proj1(x), z2 = cantor_proj2(x);
          Nat a = cantor_proj1(z), b = cantor_proj2(z);
          Nat a2 = cantor_proj1(z2), b2 = cantor_proj2(z2);
          for (const Nat& r : enumerate_fibre(n.rel, cantor_pair(a, a2), cfg)) {
            AppOutcome sb = runv(n.sigma, {cantor_pair(cantor_pair(a, a2), r), b}, cfg);
            if (!sb.value) continue;
            for (const Nat& s :
                 enumerate_fibre(n.s, cantor_pair(a2, cantor_pair(*sb.value, b2)), cfg))
              out.push_back(cantor_pair(r, s));
          }
        }
      },
      d->node);
  out = sorted_unique_capped(std::move(out), cap);
  // keep only definite members so listed fibres always verify
  std::vector<Nat> checked;
  checked.reserve(out.size());
  for (const Nat& m : out)
    if (fam_decide(d, x, m, cfg) == Verdict::In) checked.push_back(m);
  pin_node(d);
  g_enum_cache.emplace(std::move(key), checked);
  return checked;
}

// ---------------------------------------------------------------------------
// Arrows

pca::EvalResult apply_arrow(const Arrow& f, const Nat& x, const EvalCfg& cfg) {
  return pca::kleene_apply(f.code, {x}, cfg.fuel);
}

Tri validate_arrow(const Arrow& f, const EvalCfg& cfg) {
  Tri acc = Tri::Yes;
  for (const Nat& x : f.dom.support) {
    pca::EvalResult r = apply_arrow(f, x, cfg);
    if (r.kind == pca::EvalResult::Kind::FuelExhausted) {
      acc = Tri::Indeterminate;
      continue;
    }
    if (!r.is_value()) return Tri::No;
    Verdict v = decide(f.cod, r.value, cfg);
    if (v == Verdict::Out) return Tri::No;
    if (v == Verdict::Unknown) acc = Tri::Indeterminate;
  }
  return acc;
}

Tri arrows_equal(const Arrow& f, const Arrow& g, const EvalCfg& cfg) {
  Tri acc = Tri::Yes;
  for (const Nat& x : f.dom.support) {
    pca::EvalResult rf = apply_arrow(f, x, cfg);
    pca::EvalResult rg = apply_arrow(g, x, cfg);
    if (rf.kind == pca::EvalResult::Kind::FuelExhausted ||
        rg.kind == pca::EvalResult::Kind::FuelExhausted) {
      acc = Tri::Indeterminate;
      continue;
    }
    if (rf.is_value() != rg.is_value()) return Tri::No;
    if (rf.is_value() && rf.value != rg.value) return Tri::No;
  }
  return acc;
}

Arrow mk_arrow(pca::Code code, Collection dom, Collection cod, std::string) {
  return Arrow{std::move(code), std::move(dom), std::move(cod)};
}

Arrow identity(const Collection& a) { return Arrow{pca::prog::identity(), a, a}; }

Arrow compose(const Arrow& g, const Arrow& f) {
  if (f.cod.name != g.dom.name)
    throw domain_mismatch("compose: codomain " + f.cod.name + " does not match domain " +
                          g.dom.name);
  return Arrow{pca::prog::compose(g.code, f.code), f.dom, g.cod};
}

// ---------------------------------------------------------------------------
// Base objects and finite-limit structure

Collection terminal_collection() { return Collection{"1", {Nat(0)}, dec({DecTerminal{}})}; }
Collection initial_collection() { return Collection{"0", {}, dec({DecInitial{}})}; }

Collection nat_collection(unsigned support_size) {
  std::vector<Nat> sup;
  for (unsigned i = 0; i < support_size; ++i) sup.push_back(i);
  return Collection{"N", std::move(sup), dec({DecAllNat{}})};
}

Collection finite_collection(std::string name, std::vector<Nat> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Collection{std::move(name), members, dec({DecFinite{members}})};
}

BaseObjects base_objects(const EvalCfg&, unsigned nat_support_size) {
  BaseObjects out{terminal_collection(), initial_collection(), nat_collection(nat_support_size),
                  {}, {}};
  out.zero = Arrow{pca::prog::constant(0), out.terminal, out.nat};
  out.succ = Arrow{pca::code_of(pca::mk_builtin(pca::Builtin::Succ)), out.nat, out.nat};
  return out;
}

ProductData product(const Collection& a, const Collection& b, const EvalCfg& cfg) {
  Collection obj;
  obj.name = "(" + a.name + "*" + b.name + ")";
  obj.decider = dec({DecProduct{a.decider, b.decider}});
  for (const Nat& x : a.support) {
    for (const Nat& y : b.support) {
      if (obj.support.size() >= cfg.support_cap) break;
      obj.support.push_back(cantor_pair(x, y));
    }
    if (obj.support.size() >= cfg.support_cap) break;
  }
  std::sort(obj.support.begin(), obj.support.end());
  Arrow p1{pca::code_of(pca::mk_builtin(pca::Builtin::Proj1)), obj, a};
  Arrow p2{pca::code_of(pca::mk_builtin(pca::Builtin::Proj2)), obj, b};
  return ProductData{obj, p1, p2};
}

Arrow pair_arrows(const Arrow& f, const Arrow& g, const ProductData& prod) {
  return Arrow{pca::prog::pair_of(f.code, g.code), f.dom, prod.object};
}

EqualizerData equalizer(const Arrow& f, const Arrow& g, const EvalCfg& cfg) {
  Collection obj;
  obj.name = "Eq(" + f.dom.name + ")";
  obj.decider = dec({DecEqualizer{f.dom.decider, f.code, g.code}});
  for (const Nat& x : f.dom.support)
    if (decide(obj.decider, x, cfg) == Verdict::In) obj.support.push_back(x);
  Arrow incl{pca::prog::identity(), obj, f.dom};
  return EqualizerData{obj, incl};
}

Arrow equalizer_factor(const Arrow& h, const EqualizerData& eq) {
  return Arrow{h.code, h.dom, eq.object};
}

CoproductData coproduct(const Collection& a, const Collection& b, const EvalCfg& cfg) {
  Collection obj;
  obj.name = "(" + a.name + "+" + b.name + ")";
  obj.decider = dec({DecCoproduct{a.decider, b.decider}});
  for (const Nat& x : a.support) obj.support.push_back(cantor_pair(0, x));
  for (const Nat& y : b.support) obj.support.push_back(cantor_pair(1, y));
  std::sort(obj.support.begin(), obj.support.end());
  if (obj.support.size() > cfg.support_cap) obj.support.resize(cfg.support_cap);
  using namespace pca::prog;
  Arrow j1{pca::code_of(lam(app(mk_builtin(pca::Builtin::Pair), c(0), v(0)))), a, obj};
  Arrow j2{pca::code_of(lam(app(mk_builtin(pca::Builtin::Pair), c(1), v(0)))), b, obj};
  return CoproductData{obj, j1, j2};
}

Arrow copair_arrows(const Arrow& f, const Arrow& g, const CoproductData& cop) {
  using namespace pca::prog;
  auto p1 = [](pca::Term t) { return app(b(pca::Builtin::Proj1), std::move(t)); };
  auto p2 = [](pca::Term t) { return app(b(pca::Builtin::Proj2), std::move(t)); };
  // branch on the tag, thunked so only the selected side runs
  pca::Term body = app(app(b(pca::Builtin::Ite), p1(v(0)),
                           lam(app(code_ref(f.code), p2(v(1)))),
                           lam(app(code_ref(g.code), p2(v(1))))),
                       c(0));
  return Arrow{pca::code_of(lam(body)), cop.object, f.cod};
}

ListData list_object(const Collection& a, const EvalCfg& cfg) {
  Collection obj;
  obj.name = "List(" + a.name + ")";
  obj.decider = dec({DecListOf{a.decider}});
  std::vector<std::vector<Nat>> level = {{}};
  obj.support.push_back(encode_list({}));
  for (unsigned len = 1; len <= cfg.list_cap && obj.support.size() < cfg.support_cap; ++len) {
    std::vector<std::vector<Nat>> next;
    for (const auto& prefix : level)
      for (const Nat& e : a.support) {
        auto xs = prefix;
        xs.push_back(e);
        if (obj.support.size() < cfg.support_cap) obj.support.push_back(encode_list(xs));
        next.push_back(std::move(xs));
      }
    level = std::move(next);
  }
  std::sort(obj.support.begin(), obj.support.end());
  obj.support.erase(std::unique(obj.support.begin(), obj.support.end()), obj.support.end());

  using namespace pca::prog;
  Arrow empty{pca::prog::constant(0), terminal_collection(), obj};
  pca::Code cnc = pca::numeral(pca::Numeral::Cnc);
  pca::Term cons_body = app(code_ref(cnc), app(b(pca::Builtin::Proj1), v(0)),
                            app(b(pca::Builtin::Proj2), v(0)));
  ProductData lxa = product(obj, a, cfg);
  Arrow cons{pca::code_of(lam(cons_body)), lxa.object, obj};
  return ListData{obj, empty, cons, a};
}

Arrow list_mediator(const Arrow& f, const Arrow& g, const ListData&,
                    const Collection& p_times_list) {
  using namespace pca::prog;
  pca::Code lr = pca::numeral(pca::Numeral::Listrec);
  auto p1 = [](pca::Term t) { return app(b(pca::Builtin::Proj1), std::move(t)); };
  auto p2 = [](pca::Term t) { return app(b(pca::Builtin::Proj2), std::move(t)); };
  // \z. listrec({f}(p1 z), \l.\a.\acc. {g}(p(acc,a)), p2 z)
  pca::Term step = lam(lam(lam(app(code_ref(g.code), app(b(pca::Builtin::Pair), v(0), v(1))))));
  pca::Term body = app(code_ref(lr), app(code_ref(f.code), p1(v(0))), step, p2(v(0)));
  return Arrow{pca::code_of(lam(body)), p_times_list, g.cod};
}

WeakExpData weak_exponential(const Collection& a, const Collection& b, const EvalCfg& cfg,
                             const std::vector<pca::Code>& extra_catalog) {
  Collection obj;
  obj.name = "(" + a.name + "=>" + b.name + ")";
  obj.decider = dec({DecWeakExp{a.support, b.decider}});
  std::vector<Nat> candidates;
  for (const Nat& m : b.support) candidates.push_back(pca::prog::constant(m).value);
  candidates.push_back(pca::prog::identity().value);
  for (const pca::Code& c : extra_catalog) candidates.push_back(c.value);
  candidates = sorted_unique_capped(std::move(candidates), cfg.support_cap);
  for (const Nat& c : candidates)
    if (decide(obj.decider, c, cfg) == Verdict::In) obj.support.push_back(c);

  using namespace pca::prog;
  auto p1 = [](pca::Term t) { return app(pca::mk_builtin(pca::Builtin::Proj1), std::move(t)); };
  auto p2 = [](pca::Term t) { return app(pca::mk_builtin(pca::Builtin::Proj2), std::move(t)); };
  ProductData exa = product(obj, a, cfg);
  // ev = \x. {p1 x}(p2 x)
  Arrow ev{pca::code_of(lam(app(p1(v(0)), p2(v(0))))), exa.object, b};
  return WeakExpData{obj, ev, a, b};
}

Arrow weak_exp_transpose(const Arrow& f, const Collection& c, const WeakExpData& we) {
  using namespace pca::prog;
  // \c. \a. {f}(p(c,a))
  pca::Term body = lam(app(code_ref(f.code), app(b(pca::Builtin::Pair), v(1), v(0))));
  return Arrow{pca::code_of(lam(body)), c, we.object};
}

Tri is_mono(const Arrow& j, const EvalCfg& cfg) {
  std::vector<std::pair<Nat, Nat>> seen;  // (value, preimage)
  Tri acc = Tri::Yes;
  for (const Nat& x : j.dom.support) {
    pca::EvalResult r = apply_arrow(j, x, cfg);
    if (!r.is_value()) {
      acc = Tri::Indeterminate;
      continue;
    }
    for (auto& [val, pre] : seen)
      if (val == r.value && pre != x) return Tri::No;
    seen.emplace_back(r.value, x);
  }
  return acc;
}

Collection undecided_pair_collection() {
  return Collection{"undecided-pair", {}, dec({DecFlag{{Nat(0), Nat(1)}}})};
}

}  // namespace peff::col
