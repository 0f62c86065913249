#ifndef PEFF_CONFIG_HPP
#define PEFF_CONFIG_HPP

#include "peff/nat.hpp"

namespace peff {

// Three-valued membership: Out is only reported when structurally certain,
// Unknown marks fuel or depth exhaustion and may resolve with larger budgets.
enum class Verdict { In, Out, Unknown };

// Three-valued check outcome for equality/validation style questions.
enum class Tri { Yes, No, Indeterminate };

inline Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::Out || b == Verdict::Out) return Verdict::Out;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::In;
}

inline Verdict verdict_or(Verdict a, Verdict b) {
  if (a == Verdict::In || b == Verdict::In) return Verdict::In;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Out;
}

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::No || b == Tri::No) return Tri::No;
  if (a == Tri::Indeterminate || b == Tri::Indeterminate) return Tri::Indeterminate;
  return Tri::Yes;
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::In: return "in";
    case Verdict::Out: return "out";
    default: return "unknown";
  }
}
inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "indeterminate";
  }
}

// Evaluation budgets shared across the modules; every judgment is relative to
// one of these. Defaults are the desk-scale settings.
struct EvalCfg {
  Fuel fuel = 1'000'000;
  unsigned depth = 16;       // structural recursion depth for the set universe
  Nat bound = 256;           // coherence scan bound in the set universe
  unsigned list_cap = 3;     // length cap for list supports and enumerations
  unsigned enum_cap = 64;    // cap on computed fibre/membership enumerations
  unsigned support_cap = 64; // cap on constructed supports
};

}  // namespace peff

#endif
