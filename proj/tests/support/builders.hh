#pragma once

// Hand-built automata and Kripke structures reused across the test
// binaries.

#include <string>
#include <vector>

#include "euta/automaton.hh"
#include "euta/kripke.hh"

namespace euta::build {

inline StateConstraint pair_atom(Multiset<StateId> e, std::set<StateId> u) {
  return StateConstraint::atom(EUPair<StateId>{std::move(e), std::move(u)});
}

// One state, one (empty) letter; every node must have exactly two
// successors. Accepts exactly the full binary tree.
inline Automaton full_binary_automaton() {
  Automaton a;
  a.state_names = {"q0"};
  a.initial = 0;
  a.priority = {0};
  a.delta = {{pair_atom(Multiset<StateId>::singleton(0, 2), {})}};
  return a;
}

// Two letters (a = {a}, b = {b}); reading 'a' in q0 forks into both q0
// and q1. On one-branch inputs it accepts exactly the words with
// infinitely many b's; the conjunction makes it alternating.
inline Automaton dual_track_automaton() {
  Automaton a;
  a.props = {"a", "b"};
  a.state_names = {"q0", "q1"};
  a.initial = 0;
  a.priority = {1, 0};
  const Letter la = 1, lb = 2;
  a.delta.assign(2, std::vector<StateConstraint>(4, StateConstraint::ff()));
  a.delta[0][la] =
      StateConstraint::conj2(pair_atom(Multiset<StateId>::singleton(0), {}),
                             pair_atom(Multiset<StateId>::singleton(1), {}));
  a.delta[0][lb] = pair_atom(Multiset<StateId>::singleton(1), {});
  a.delta[1][la] = pair_atom(Multiset<StateId>::singleton(0), {});
  a.delta[1][lb] = pair_atom(Multiset<StateId>::singleton(0), {});
  return a;
}

// One letter; q0 defers to {q1,q2} universally, q1 and q2 loop on
// themselves through a single shared atom.
inline Automaton wide_universal_automaton() {
  Automaton a;
  a.state_names = {"q0", "q1", "q2"};
  a.initial = 0;
  a.priority = {0, 0, 1};
  a.delta = {{pair_atom(Multiset<StateId>::singleton(0), {1, 2})},
             {pair_atom(Multiset<StateId>::singleton(1), {})},
             {pair_atom(Multiset<StateId>::singleton(1), {})}};
  return a;
}

// Two universal members with identical obligations but different
// priorities, revisited forever on a single-path structure: q2's row
// hands back to q1, so every run records the odd priority infinitely
// often and the automaton rejects.  A merged replacement for {q1, q2}
// must not lose that record to q2's even one.
inline Automaton split_priority_chain() {
  Automaton a;
  a.state_names = {"q0", "q1", "q2"};
  a.initial = 0;
  a.priority = {1, 1, 2};
  a.delta = {{pair_atom({}, {1, 2})},
             {pair_atom({}, {1, 2})},
             {pair_atom({}, {1})}};
  return a;
}

// Every state row is true: accepts every tree over the given props.
inline Automaton top_automaton(std::vector<std::string> props) {
  Automaton a;
  a.props = std::move(props);
  a.state_names = {"q0"};
  a.initial = 0;
  a.priority = {0};
  a.delta = {std::vector<StateConstraint>(a.n_letters(), StateConstraint::tt())};
  return a;
}

// Two vertices, all four edges, no labels: unfolds to the full binary
// tree over a single letter.
inline KripkeStructure clique2() {
  KripkeStructure k;
  k.vertex_names = {"u", "v"};
  k.succ = {{0, 1}, {0, 1}};
  k.labels = {{}, {}};
  return k;
}

// A single path spelling prefix . loop^omega; each letter names the
// propositions of one vertex.
inline KripkeStructure word_kripke(const std::vector<std::set<std::string>>& prefix,
                                   const std::vector<std::set<std::string>>& loop) {
  KripkeStructure k;
  for (std::size_t i = 0; i < prefix.size() + loop.size(); ++i) {
    k.vertex_names.push_back("v" + std::to_string(i));
    std::size_t next = i + 1 < prefix.size() + loop.size() ? i + 1 : prefix.size();
    k.succ.push_back({next});
    k.labels.push_back(i < prefix.size() ? prefix[i] : loop[i - prefix.size()]);
  }
  return k;
}

}  // namespace euta::build
