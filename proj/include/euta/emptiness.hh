#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "euta/automaton.hh"
#include "euta/kripke.hh"
#include "euta/parity_game.hh"

namespace euta {

struct witness_unavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string set_label(const Automaton& a, const std::set<StateId>& s) {
  std::string out = "{";
  bool first = true;
  for (StateId q : s) {
    if (!first) out += ",";
    first = false;
    out += a.state_names[q];
  }
  return out + "}";
}

// Atoms of a non-alternating row, in deterministic order.
inline std::vector<EUPair<StateId>> row_atoms(const StateConstraint& row) {
  std::vector<EUPair<StateId>> out;
  using K = StateConstraint::Kind;
  if (row.kind() == K::Atom) {
    out.push_back(row.atom_value());
  } else if (row.kind() == K::Or) {
    for (const auto& ch : row.children()) out.push_back(ch.atom_value());
  }
  return out;
}

}  // namespace detail

// Emptiness reduces to a plain reachability-flavoured parity game once
// every pair ⟨E;U⟩ is widened to ⟨supp(E);∅⟩: duplicating subtrees
// restores multiplicities, and optional U-children can be dropped.
// Player 0 picks, at an automaton state, a widened pair available under
// some letter; Player 1 challenges one of its member states.  A row that
// is plain truth contributes a move to a dead-end Player-1 state (the
// run stops, any subtree is fine); a widened pair with empty support is
// itself a dead end (the node may be a leaf).
struct EmptinessGame {
  ParityGame game;
  std::size_t start = 0;
  std::map<std::set<StateId>, std::size_t> pair_states;
  std::size_t stop_state = no_move;  // present iff some row is plain truth
};

inline EmptinessGame build_emptiness_game(const Automaton& a) {
  detail::require_non_alternating(a, "emptiness game");
  EmptinessGame eg;
  const unsigned top = a.max_priority();
  for (StateId q = 0; q < a.n_states(); ++q)
    eg.game.add_state(0, a.priority[q], a.state_names[q]);
  eg.start = a.initial;

  auto pair_state = [&](const std::set<StateId>& s) {
    auto it = eg.pair_states.find(s);
    if (it != eg.pair_states.end()) return it->second;
    std::size_t id = eg.game.add_state(1, top, detail::set_label(a, s));
    for (StateId q : s) eg.game.add_edge(id, q);
    eg.pair_states.emplace(s, id);
    return id;
  };

  for (StateId q = 0; q < a.n_states(); ++q) {
    std::set<std::size_t> moves;
    for (Letter l = 0; l < a.n_letters(); ++l) {
      const StateConstraint& row = a.delta[q][l];
      if (row.kind() == StateConstraint::Kind::True) {
        if (eg.stop_state == no_move)
          eg.stop_state = eg.game.add_state(1, top, "stop");
        moves.insert(eg.stop_state);
        continue;
      }
      for (const auto& p : detail::row_atoms(row))
        moves.insert(pair_state(p.e.support()));
    }
    for (std::size_t m : moves) eg.game.add_edge(q, m);
  }
  return eg;
}

inline bool emptiness(const Automaton& a) {
  EmptinessGame eg = build_emptiness_game(a);
  GameSolution sol = solve(eg.game);
  return sol.winner[eg.start] == 1;
}

// Regular witness for a non-empty language.  Kripke structures have no
// sink vertices, so their computation trees are leafless; the witness
// game therefore keeps multiplicities and drops the moves that would
// force a leaf: a pair keeps its E-children only, a pair with empty E
// but non-empty U keeps exactly one U-child, a plain-truth row stops the
// run and continues with an arbitrary self-loop.  Losing this variant
// while the language is non-empty means every accepted tree has a leaf,
// which no Kripke structure can unfold to.
inline std::pair<KripkeStructure, VertexId> extract_witness(const Automaton& a) {
  detail::require_non_alternating(a, "witness extraction");
  const unsigned top = a.max_priority();

  ParityGame g;
  for (StateId q = 0; q < a.n_states(); ++q)
    g.add_state(0, a.priority[q], a.state_names[q]);

  // Move states keyed by the children multiset; empty key is the stop
  // move.  For each (state, move) remember a letter whose row offers it.
  std::map<Multiset<StateId>, std::size_t> move_states;
  std::map<std::pair<StateId, std::size_t>, Letter> move_letter;
  auto move_state = [&](const Multiset<StateId>& e) {
    auto it = move_states.find(e);
    if (it != move_states.end()) return it->second;
    std::string lab = e.empty() ? std::string("stop") : std::string();
    if (!e.empty()) {
      for (auto [q, n] : e.entries()) {
        if (!lab.empty()) lab += ",";
        lab += a.state_names[q];
        if (n > 1) lab += "*" + std::to_string(n);
      }
    }
    std::size_t id = g.add_state(1, top, lab);
    for (StateId q : e.support()) g.add_edge(id, q);
    move_states.emplace(e, id);
    return id;
  };
  auto offer = [&](StateId q, const Multiset<StateId>& e, Letter l) {
    std::size_t m = move_state(e);
    if (move_letter.emplace(std::make_pair(q, m), l).second) g.add_edge(q, m);
  };

  for (StateId q = 0; q < a.n_states(); ++q) {
    for (Letter l = 0; l < a.n_letters(); ++l) {
      const StateConstraint& row = a.delta[q][l];
      if (row.kind() == StateConstraint::Kind::True) {
        offer(q, {}, l);
        continue;
      }
      for (const auto& p : detail::row_atoms(row)) {
        if (!p.e.empty()) {
          offer(q, p.e, l);
        } else {
          for (StateId u : p.u) offer(q, Multiset<StateId>::singleton(u), l);
        }
      }
    }
  }

  GameSolution sol = solve(g);
  if (sol.winner[a.initial] != 0) {
    if (emptiness(a)) throw witness_unavailable("language is empty");
    throw witness_unavailable(
        "every accepted tree has a leaf; no Kripke structure unfolds to one");
  }

  // Follow Player 0's strategy from the initial state.
  std::map<StateId, Multiset<StateId>> chosen;  // children per reached state
  std::map<StateId, Letter> letter_of;
  std::vector<StateId> todo{a.initial};
  std::set<StateId> reached{a.initial};
  std::map<std::size_t, Multiset<StateId>> key_of_move;
  for (const auto& [e, id] : move_states) key_of_move[id] = e;
  while (!todo.empty()) {
    StateId q = todo.back();
    todo.pop_back();
    std::size_t m = sol.strategy0[q];
    const Multiset<StateId>& e = key_of_move.at(m);
    chosen[q] = e;
    letter_of[q] = move_letter.at({q, m});
    for (StateId r : e.support())
      if (reached.insert(r).second) todo.push_back(r);
  }

  // One vertex per (state, copy); enough copies to serve the largest
  // demand of any parent, duplicated subtrees behave identically.
  std::map<StateId, std::size_t> copies;
  for (StateId q : reached) copies[q] = 1;
  for (const auto& [q, e] : chosen)
    for (auto [r, n] : e.entries()) copies[r] = std::max(copies[r], n);

  KripkeStructure k;
  std::map<std::pair<StateId, std::size_t>, VertexId> vertex_of;
  std::set<std::string> used;
  for (StateId q : reached) {
    for (std::size_t i = 0; i < copies[q]; ++i) {
      std::string base = a.state_names[q];
      if (copies[q] > 1) base += "_" + std::to_string(i + 1);
      std::string name = detail::fresh_name(base, used);
      used.insert(name);
      vertex_of[{q, i}] = k.vertex_names.size();
      k.vertex_names.push_back(name);
    }
  }
  k.succ.resize(k.vertex_names.size());
  k.labels.resize(k.vertex_names.size());
  for (const auto& [qi, v] : vertex_of) {
    StateId q = qi.first;
    Letter l = letter_of.at(q);
    for (std::size_t b = 0; b < a.props.size(); ++b)
      if (l & (1u << b)) k.labels[v].insert(a.props[b]);
    const Multiset<StateId>& e = chosen.at(q);
    if (e.empty()) {
      k.succ[v].push_back(v);  // run stopped here, any continuation fits
    } else {
      for (auto [r, n] : e.entries())
        for (std::size_t i = 0; i < n; ++i)
          k.succ[v].push_back(vertex_of.at({r, i}));
    }
    std::sort(k.succ[v].begin(), k.succ[v].end());
  }
  return {std::move(k), vertex_of.at({a.initial, 0})};
}

}  // namespace euta
