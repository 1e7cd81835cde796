#pragma once

// Brute-force reference implementations used to validate the library's
// decision procedures. Everything here enumerates exhaustively and is
// only suitable for small inputs.

#include <set>
#include <vector>

#include "euta/eu.hh"
#include "euta/marking.hh"
#include "euta/multiset.hh"

namespace euta::oracle {

// Enumerates every unitary submarking (one chosen state per node) and
// checks its image directly.
template <typename D, typename T>
bool plus_atom(const Marking<D, T>& nu, const EUPair<T>& p) {
  std::vector<std::vector<T>> choices;
  for (const auto& [node, states] : nu)
    choices.emplace_back(states.begin(), states.end());
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    Multiset<T> img;
    for (std::size_t i = 0; i < choices.size(); ++i) img.add(choices[i][idx[i]]);
    if (ms_satisfies(img, p)) return true;
    std::size_t i = 0;
    for (; i < choices.size(); ++i) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
    if (i == choices.size()) return false;
  }
}

template <typename D, typename T>
bool plus_constraint(const Marking<D, T>& nu, const EUConstraint<T>& c) {
  using C = EUConstraint<T>;
  switch (c.kind()) {
    case C::Kind::True: return true;
    case C::Kind::False: return false;
    case C::Kind::Atom: return plus_atom(nu, c.atom_value());
    case C::Kind::And:
      for (const auto& child : c.children())
        if (!plus_constraint(nu, child)) return false;
      return true;
    case C::Kind::Or:
      for (const auto& child : c.children())
        if (plus_constraint(nu, child)) return true;
      return false;
  }
  return false;
}

// Enumerates every non-empty subset of each node's set and checks the
// image (a multiset of sets) directly.
template <typename D, typename T>
bool star_atom(const Marking<D, T>& nu, const EUPair<std::set<T>>& p) {
  std::vector<std::vector<std::set<T>>> choices;
  for (const auto& [node, states] : nu) {
    std::vector<T> elems(states.begin(), states.end());
    std::vector<std::set<T>> subsets;
    for (std::size_t mask = 1; mask < (std::size_t{1} << elems.size()); ++mask) {
      std::set<T> sub;
      for (std::size_t b = 0; b < elems.size(); ++b)
        if (mask & (std::size_t{1} << b)) sub.insert(elems[b]);
      subsets.push_back(std::move(sub));
    }
    choices.push_back(std::move(subsets));
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    Multiset<std::set<T>> img;
    for (std::size_t i = 0; i < choices.size(); ++i) img.add(choices[i][idx[i]]);
    if (ms_satisfies(img, p)) return true;
    std::size_t i = 0;
    for (; i < choices.size(); ++i) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
    if (i == choices.size()) return false;
  }
}

template <typename D, typename T>
bool star_constraint(const Marking<D, T>& nu, const EUConstraint<std::set<T>>& c) {
  using C = EUConstraint<std::set<T>>;
  switch (c.kind()) {
    case C::Kind::True: return true;
    case C::Kind::False: return false;
    case C::Kind::Atom: return star_atom(nu, c.atom_value());
    case C::Kind::And:
      for (const auto& child : c.children())
        if (!star_constraint(nu, child)) return false;
      return true;
    case C::Kind::Or:
      for (const auto& child : c.children())
        if (star_constraint(nu, child)) return true;
      return false;
  }
  return false;
}

// Is there one unitary submarking whose image satisfies the whole
// constraint at once? (For disjunctions this coincides with the
// compositional relation; for conjunctions it is stronger.)
template <typename D, typename T>
bool single_witness(const Marking<D, T>& nu, const EUConstraint<T>& c) {
  std::vector<std::vector<T>> choices;
  for (const auto& [node, states] : nu)
    choices.emplace_back(states.begin(), states.end());
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    Multiset<T> img;
    for (std::size_t i = 0; i < choices.size(); ++i) img.add(choices[i][idx[i]]);
    if (c.eval([&](const EUPair<T>& p) { return ms_satisfies(img, p); }))
      return true;
    std::size_t i = 0;
    for (; i < choices.size(); ++i) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
    if (i == choices.size()) return false;
  }
}

}  // namespace euta::oracle
