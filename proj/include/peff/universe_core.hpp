#ifndef PEFF_UNIVERSE_CORE_HPP
#define PEFF_UNIVERSE_CORE_HPP

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "peff/config.hpp"
#include "peff/pca.hpp"

namespace peff::uni {

struct not_a_set_code : std::runtime_error {
  Nat base_point;
  not_a_set_code(const std::string& msg, Nat at) : std::runtime_error(msg), base_point(std::move(at)) {}
};

// Numeric encodings of the set constructors:
//   n0 = p(1,0)   n1 = p(1,1)   sigma(a,b) = p(2,p(a,b))   pi(a,b) = p(3,p(a,b))
//   a (+) b = p(4,p(a,b))   list(a) = p(5,a)   id(a,x,y) = p(6,p(a,p(x,y)))
// where b in sigma/pi is the code of a function from members of a to codes.
struct N0 {};
struct N1 {};
struct SigmaC {
  Nat dom;
  Nat fam;
};
struct PiC {
  Nat dom;
  Nat fam;
};
struct PlusC {
  Nat left;
  Nat right;
};
struct ListC {
  Nat elem;
};
struct IdC {
  Nat set;
  Nat lhs;
  Nat rhs;
};
using CodeView = std::variant<N0, N1, SigmaC, PiC, PlusC, ListC, IdC>;

struct SetCode {
  Nat value;
  CodeView view;
};

Nat mk_n0();
Nat mk_n1();
Nat mk_sigma(const Nat& a, const Nat& b);
Nat mk_pi(const Nat& a, const Nat& b);
Nat mk_plus(const Nat& a, const Nat& b);
Nat mk_list(const Nat& a);
Nat mk_id(const Nat& a, const Nat& x, const Nat& y);

// Decodes the numeric shape; nullopt for naturals outside the tag scheme.
std::optional<CodeView> view_code(const Nat& c);
std::optional<SetCode> parse_set_code(const Nat& c);
std::string show_code(const Nat& c);

// PCA codes computing the constructors: {sigma}(x,y) = sigma(x,y) and so on.
enum class Ctor { N0C, N1C, Sigma, Pi, Plus, List, Id };
pca::Code constructor_numeral(Ctor c);
std::vector<std::pair<std::string, pca::Code>> constructor_numerals();

// Shared scratch state for the structural fixpoint recursion; memoises the
// three judgments per (code, argument) within one configuration.
struct UniverseCtx {
  EvalCfg cfg;
  std::map<Nat, Verdict> set_memo;
  std::map<std::pair<Nat, Nat>, Verdict> member_memo;
  std::map<std::pair<Nat, Nat>, Verdict> nonmember_memo;
  std::map<std::pair<Nat, unsigned>, std::vector<Nat>> enum_memo;

  explicit UniverseCtx(EvalCfg c) : cfg(std::move(c)) {}
};

// The fixpoint judgments, computed by structural recursion (the least
// fixpoint of the defining clauses) with explicit depth and fuel bounds.
Verdict check_set(const Nat& c, UniverseCtx& ctx, unsigned depth);
Verdict check_member(const Nat& x, const Nat& c, UniverseCtx& ctx, unsigned depth);
Verdict check_nonmember(const Nat& x, const Nat& c, UniverseCtx& ctx, unsigned depth);

// For all t <= bound: member and nonmember are definite and complementary.
Verdict check_coherence(const Nat& c, UniverseCtx& ctx);

// U_S membership: set_ok and coherent.
Verdict us_member(const Nat& c, UniverseCtx& ctx);

struct UniverseVerdict {
  Verdict set_ok;
  Verdict coherent;
  Verdict us;
};
UniverseVerdict universe_verdict(const Nat& c, UniverseCtx& ctx);

// Bounded, deterministic enumeration of a code's extension.
std::vector<Nat> enumerate_members(const Nat& c, UniverseCtx& ctx, unsigned depth);

// A small deterministic catalog of coherent codes, used as the support of the
// universe collection and in classifier tests.
std::vector<Nat> sample_codes();

// Convenience entry points with fresh contexts.
Verdict check_set(const Nat& c, const EvalCfg& cfg);
Verdict check_member(const Nat& x, const Nat& c, const EvalCfg& cfg);
Verdict check_nonmember(const Nat& x, const Nat& c, const EvalCfg& cfg);
Verdict check_coherence(const Nat& c, const EvalCfg& cfg);
Verdict us_member(const Nat& c, const EvalCfg& cfg);
std::vector<Nat> enumerate_members(const Nat& c, const EvalCfg& cfg);

}  // namespace peff::uni

#endif
