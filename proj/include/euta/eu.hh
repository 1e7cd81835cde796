#pragma once

#include <set>

#include "euta/multiset.hh"
#include "euta/pbf.hh"

namespace euta {

// Transition atom <E;U>: E lists states that must each be sent to a
// distinct successor, U lists the states allowed for the remaining ones.
template <typename T>
struct EUPair {
  Multiset<T> e;
  std::set<T> u;

  bool operator==(const EUPair&) const = default;
  auto operator<=>(const EUPair&) const = default;
};

template <typename T>
using EUConstraint = Pbf<EUPair<T>>;

// mu satisfies <E;U> iff E fits inside mu and everything left over is in U.
template <typename T>
bool ms_satisfies(const Multiset<T>& mu, const EUPair<T>& p) {
  if (!submultiset(p.e, mu)) return false;
  for (const auto& [elem, n] : ms_minus(mu, p.e))
    if (!p.u.contains(elem)) return false;
  return true;
}

}  // namespace euta
