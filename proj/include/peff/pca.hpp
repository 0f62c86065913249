#ifndef PEFF_PCA_HPP
#define PEFF_PCA_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "peff/nat.hpp"

namespace peff::pca {

struct open_term : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unknown_builtin : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Primitive operations of the algebra. The numbering is load-bearing: a
// builtin's Godel code is its enum value.
enum class Builtin : unsigned {
  Succ = 0,
  Pred = 1,
  Pair = 2,
  Proj1 = 3,
  Proj2 = 4,
  Ite = 5,
  Fix = 6,
  Eq0 = 7,
};
inline constexpr unsigned kNumBuiltins = 8;

const char* builtin_name(Builtin b);
std::optional<Builtin> builtin_by_name(const std::string& name);

struct TermNode;
// Immutable term of the algebra: de Bruijn variables, literal naturals,
// application, abstraction and builtins.
using Term = std::shared_ptr<const TermNode>;

struct VarT {
  std::size_t index;
};
struct ConstT {
  Nat value;
};
struct AppT {
  Term fun;
  Term arg;
};
struct LamT {
  Term body;
};
struct BuiltinT {
  Builtin op;
};

struct TermNode {
  std::variant<VarT, ConstT, AppT, LamT, BuiltinT> node;
};

Term mk_var(std::size_t index);
Term mk_const(Nat value);
Term mk_app(Term fun, Term arg);
Term mk_lam(Term body);
Term mk_builtin(Builtin op);

// Left-associated application t s1 ... sn.
Term mk_apps(Term t, const std::vector<Term>& args);

bool term_equal(const Term& a, const Term& b);
bool is_closed(const Term& t);
// Smallest n such that all free indices are < n (0 for closed terms).
std::size_t free_depth(const Term& t);
std::string show_term(const Term& t);

// Godel numbering via bijective base-2 bit strings with a self-delimiting
// grammar (App "00", Lam "01", Const "10"+gamma, Var "110"+gamma, Builtin
// "111"+3 bits). Code size grows linearly with term size. Strings that do not
// parse as a complete term decode to the literal constant of that number, and
// such constants encode back to it, so encode(decode(n)) = n for every n.
Nat encode_term(const Term& t);
Term decode_term(const Nat& n);

// A Godel number used as a program. Every natural is a valid code; whether it
// decodes to something useful is a separate question.
struct Code {
  Nat value;

  bool operator==(const Code& o) const { return value == o.value; }
  bool operator<(const Code& o) const { return value < o.value; }
};

Code code_of(const Term& t);

struct EvalResult {
  enum class Kind { Value, Stuck, FuelExhausted } kind;
  Nat value;         // meaningful for Kind::Value
  Fuel steps = 0;    // reduction steps consumed

  bool is_value() const { return kind == Kind::Value; }
};

inline constexpr Fuel kDefaultFuel = 1'000'000;

// Reduces a closed term call-by-value, charging one unit of fuel per beta
// step, builtin delta step or code-decoding step. A normal form that is a
// literal yields that literal; any other value (abstraction, partial builtin
// application) yields its Godel number.
EvalResult eval_term(const Term& t, Fuel fuel);

// Kleene application {f}(s1,...,sn) on literal arguments.
EvalResult kleene_apply(const Code& f, const std::vector<Nat>& args, Fuel fuel = kDefaultFuel);

// Closes over the outermost de Bruijn variable; throws open_term if deeper
// indices remain free.
Code lambda_abstract(const Term& body);
// Same, closing the n outermost variables (body may use indices 0..n-1).
Code lambda_abstract_n(const Term& body, std::size_t n);

// The numerals of the recursion-theoretic interface: p, p1, p2, ite, succ are
// (codes of) primitive builtins; cnc, rec and listrec are fix-built programs.
enum class Numeral { P, P1, P2, Ite, Cnc, Listrec, Succ, Rec };
Code numeral(Numeral which);
std::optional<Numeral> numeral_by_name(const std::string& name);
Code numeral_by_name_or_throw(const std::string& name);

// Kleene predicate: y is read as pair(steps, result); T(e,x,y) holds iff
// {e}(x) evaluates to the result component within the steps component.
bool kleene_T(const Code& e, const Nat& x, const Nat& y, Fuel fuel_cap = kDefaultFuel);
Nat kleene_U(const Nat& y);

struct parse_error : std::runtime_error {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

// Textual syntax: `\x. t` abstraction, juxtaposition application, decimal
// constants, builtin and numeral names as bare identifiers.
Term parse_term(const std::string& text);

// Small program-building helpers shared by the modules upstream: all of them
// produce closed codes.
namespace prog {

// Lambda-term snippets.
Term v(std::size_t i);
Term c(Nat n);
Term b(Builtin op);
Term lam(Term t);
Term app(Term f, Term a);
Term app(Term f, Term a1, Term a2);
Term app(Term f, Term a1, Term a2, Term a3);
Term code_ref(const Code& code);  // Const(code.value): applying it runs the code

Code identity();                       // \x. x
Code constant(const Nat& k);           // \x. k
Code compose(const Code& g, const Code& f);  // \x. {g}({f}(x))
Code pair_of(const Code& f, const Code& g);  // \x. p({f}(x), {g}(x))

// Structural equality of naturals by recursive unpairing; eq(a,b) = 0 iff
// a = b, else 1. Cost is linear in the bit length, not the magnitude.
Code eqnat();
// Truncated subtraction and strict less-than on small naturals (cost is
// linear in the magnitude; only use on support-sized values).
Code monus();
Code less_than();  // lt(a,b) = 0 iff a < b, else 1

// Branch on {eqnat}(x, key): table lookup keyed by exact value.
// Falls through to default_code applied to x... no: returns default_value.
Code lookup_table(const std::vector<std::pair<Nat, Nat>>& entries, const Nat& default_value);

}  // namespace prog

}  // namespace peff::pca

#endif
