#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "euta/automaton.hh"

namespace euta {

// Re-expresses the automaton over a superset of its propositions; the
// added propositions are simply never constrained.
inline Automaton align_to_props(const Automaton& a,
                                const std::vector<std::string>& props) {
  if (a.props == props) return a;
  std::vector<std::size_t> pos;
  for (const auto& p : a.props) {
    auto it = std::find(props.begin(), props.end(), p);
    if (it == props.end())
      throw std::invalid_argument("alignment must keep proposition " + p);
    pos.push_back(static_cast<std::size_t>(it - props.begin()));
  }
  Automaton r;
  r.props = props;
  r.state_names = a.state_names;
  r.initial = a.initial;
  r.priority = a.priority;
  r.delta.resize(a.n_states());
  for (StateId q = 0; q < a.n_states(); ++q) {
    r.delta[q].reserve(r.n_letters());
    for (Letter l = 0; l < r.n_letters(); ++l) {
      Letter restricted = 0;
      for (std::size_t j = 0; j < pos.size(); ++j)
        if (l & (Letter{1} << pos[j])) restricted |= Letter{1} << j;
      r.delta[q].push_back(a.delta[q][restricted]);
    }
  }
  return r;
}

namespace detail {

inline std::vector<std::string> prop_union(const Automaton& a,
                                           const Automaton& b) {
  std::set<std::string> all(a.props.begin(), a.props.end());
  all.insert(b.props.begin(), b.props.end());
  return {all.begin(), all.end()};
}

// Shared frame of union and intersection: disjoint state spaces plus a
// fresh initial state whose rows combine the two initial rows.  Both
// inputs are first re-based onto common propositions and a compressed
// priority band; compression starts each band at its minimal parity, so
// bands with equally odd or equally even minima already coincide and
// the priority count of the result stays within max of the two (plus
// one when the minimal parities disagree).
inline Automaton combine(const Automaton& a_in, const Automaton& b_in,
                         bool disjunctive) {
  std::vector<std::string> props = prop_union(a_in, b_in);
  Automaton a = normalize_priorities(align_to_props(a_in, props));
  Automaton b = normalize_priorities(align_to_props(b_in, props));

  Automaton r;
  r.props = props;
  std::set<std::string> used;
  auto admit = [&](const std::string& base) {
    std::string name = fresh_name(base, used);
    used.insert(name);
    r.state_names.push_back(name);
    return r.state_names.size() - 1;
  };
  r.initial = admit("init");
  std::vector<StateId> map_a, map_b;
  for (const auto& n : a.state_names) map_a.push_back(admit(n));
  for (const auto& n : b.state_names) map_b.push_back(admit(n));

  r.priority.assign(r.n_states(), 0);
  r.priority[r.initial] = std::max(a.max_priority(), b.max_priority());
  for (StateId q = 0; q < a.n_states(); ++q)
    r.priority[map_a[q]] = a.priority[q];
  for (StateId q = 0; q < b.n_states(); ++q)
    r.priority[map_b[q]] = b.priority[q];

  auto rebase = [](const StateConstraint& c, const std::vector<StateId>& map) {
    return c.map_atoms([&](const EUPair<StateId>& p) {
      EUPair<StateId> out;
      for (const auto& [q, n] : p.e) out.e.add(map[q], n);
      for (StateId q : p.u) out.u.insert(map[q]);
      return out;
    });
  };

  r.delta.resize(r.n_states());
  for (Letter l = 0; l < r.n_letters(); ++l) {
    StateConstraint left = rebase(a.delta[a.initial][l], map_a);
    StateConstraint right = rebase(b.delta[b.initial][l], map_b);
    r.delta[r.initial].push_back(
        disjunctive ? StateConstraint::disj2(std::move(left), std::move(right))
                    : StateConstraint::conj2(std::move(left), std::move(right)));
  }
  for (StateId q = 0; q < a.n_states(); ++q)
    for (Letter l = 0; l < a.n_letters(); ++l)
      r.delta[map_a[q]].push_back(rebase(a.delta[q][l], map_a));
  for (StateId q = 0; q < b.n_states(); ++q)
    for (Letter l = 0; l < b.n_letters(); ++l)
      r.delta[map_b[q]].push_back(rebase(b.delta[q][l], map_b));
  return r;
}

}  // namespace detail

inline Automaton union_of(const Automaton& a, const Automaton& b) {
  return detail::combine(a, b, true);
}

inline Automaton intersection_of(const Automaton& a, const Automaton& b) {
  return detail::combine(a, b, false);
}

// Existential projection: hides the given propositions, accepting a
// tree iff some relabelling of the hidden propositions is accepted.
// Per remaining letter, the constraint is the disjunction over every
// completion of the hidden part.
inline Automaton project(const Automaton& a,
                         const std::set<std::string>& hidden) {
  detail::require_non_alternating(a, "projection");
  for (const auto& p : hidden)
    if (std::find(a.props.begin(), a.props.end(), p) == a.props.end())
      throw std::invalid_argument("projection of unknown proposition " + p);
  if (hidden.empty()) return a;

  Automaton r;
  std::vector<std::size_t> kept_pos, hidden_pos;
  for (std::size_t i = 0; i < a.props.size(); ++i) {
    if (hidden.contains(a.props[i])) {
      hidden_pos.push_back(i);
    } else {
      kept_pos.push_back(i);
      r.props.push_back(a.props[i]);
    }
  }
  r.state_names = a.state_names;
  r.initial = a.initial;
  r.priority = a.priority;
  r.delta.resize(a.n_states());
  for (StateId q = 0; q < a.n_states(); ++q) {
    r.delta[q].reserve(r.n_letters());
    for (Letter l = 0; l < r.n_letters(); ++l) {
      Letter base = 0;
      for (std::size_t j = 0; j < kept_pos.size(); ++j)
        if (l & (Letter{1} << j)) base |= Letter{1} << kept_pos[j];
      std::vector<StateConstraint> cases;
      for (Letter h = 0; h < (Letter{1} << hidden_pos.size()); ++h) {
        Letter full = base;
        for (std::size_t j = 0; j < hidden_pos.size(); ++j)
          if (h & (Letter{1} << j)) full |= Letter{1} << hidden_pos[j];
        cases.push_back(a.delta[q][full]);
      }
      r.delta[q].push_back(StateConstraint::disj(std::move(cases)));
    }
  }
  return r;
}

}  // namespace euta
