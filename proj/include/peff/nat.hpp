#ifndef PEFF_NAT_HPP
#define PEFF_NAT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace peff {

// Arbitrary-precision natural number. Godel numbers of nested terms grow far
// beyond 64 bits, so the whole artifact computes with bignums.
using Nat = boost::multiprecision::cpp_int;

using Fuel = std::uint64_t;

struct index_out_of_range : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cantor pairing p(x,y) = (x+y)(x+y+1)/2 + y, a bijection N*N -> N.
Nat cantor_pair(const Nat& x, const Nat& y);
std::pair<Nat, Nat> cantor_unpair(const Nat& z);
Nat cantor_proj1(const Nat& z);
Nat cantor_proj2(const Nat& z);

// List codec: 0 is the empty list, a list with prefix l and last element a
// encodes as pair(l,a)+1. Every natural decodes to exactly one list.
Nat encode_list(const std::vector<Nat>& xs);
std::vector<Nat> decode_list(const Nat& n);
Nat list_length(const Nat& n);
// Component j of the coded list, j < list_length(n); throws index_out_of_range.
Nat list_component(const Nat& n, const Nat& j);
// Appends one element: realizes the cnc numeral.
Nat list_concat(const Nat& n, const Nat& a);

std::string to_string(const Nat& n);
Nat nat_from_string(const std::string& s);

}  // namespace peff

#endif
