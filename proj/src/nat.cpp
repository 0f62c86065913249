#include "peff/nat.hpp"

namespace peff {

Nat cantor_pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Nat, Nat> cantor_unpair(const Nat& z) {
  // w = floor((sqrt(8z+1)-1)/2) is the diagonal index.
  Nat d = 8 * z + 1;
  Nat r = sqrt(d);
  Nat w = (r - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat y = z - t;
  Nat x = w - y;
  return {x, y};
}

Nat cantor_proj1(const Nat& z) { return cantor_unpair(z).first; }
Nat cantor_proj2(const Nat& z) { return cantor_unpair(z).second; }

Nat encode_list(const std::vector<Nat>& xs) {
  Nat code = 0;
  for (const Nat& x : xs) code = cantor_pair(code, x) + 1;
  return code;
}

std::vector<Nat> decode_list(const Nat& n) {
  std::vector<Nat> rev;
  Nat cur = n;
  while (cur != 0) {
    auto [l, a] = cantor_unpair(cur - 1);
    rev.push_back(a);
    cur = l;
  }
  return {rev.rbegin(), rev.rend()};
}

Nat list_length(const Nat& n) {
  Nat len = 0;
  Nat cur = n;
  while (cur != 0) {
    cur = cantor_proj1(cur - 1);
    ++len;
  }
  return len;
}

Nat list_component(const Nat& n, const Nat& j) {
  Nat len = list_length(n);
  if (j >= len) throw index_out_of_range("list_component: index " + to_string(j) + " >= length " + to_string(len));
  // Walk back from the last element.
  Nat cur = n;
  Nat back = len - 1 - j;
  while (back > 0) {
    cur = cantor_proj1(cur - 1);
    --back;
  }
  return cantor_proj2(cur - 1);
}

Nat list_concat(const Nat& n, const Nat& a) { return cantor_pair(n, a) + 1; }

std::string to_string(const Nat& n) { return n.str(); }

Nat nat_from_string(const std::string& s) { return Nat(s); }

}  // namespace peff
