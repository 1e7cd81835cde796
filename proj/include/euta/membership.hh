#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "euta/automaton.hh"
#include "euta/kripke.hh"
#include "euta/parity_game.hh"

namespace euta {

struct marking_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Acceptance game for "does the computation tree of (k, root) belong to
// L(a)".  Player 0 defends membership; Player 1 attacks.  States:
//   - (vertex, state): Player 0, priority of the automaton state
//   - (vertex, formula): subformula positions, shared across automaton
//     states; owner depends on the connective
//   - (vertex, marking): Player 1 picks a direction; a marking assigns
//     one automaton state to every successor of the vertex
struct MembershipGame {
  ParityGame game;
  std::size_t start = 0;
  std::map<std::pair<VertexId, StateId>, std::size_t> main_states;
  std::map<std::pair<VertexId, StateConstraint>, std::size_t> formula_states;
  std::map<std::pair<VertexId, std::vector<StateId>>, std::size_t> marking_states;
  // Deduplicated successor list per vertex; marking vectors align with it.
  std::vector<std::vector<VertexId>> successors;
};

namespace detail {

inline std::string describe_constraint(const Automaton& a,
                                       const StateConstraint& c) {
  using K = StateConstraint::Kind;
  switch (c.kind()) {
    case K::True:
      return "true";
    case K::False:
      return "false";
    case K::Atom: {
      const EUPair<StateId>& p = c.atom_value();
      std::string out = "(E:";
      bool first = true;
      for (auto [q, n] : p.e.entries()) {
        out += first ? " " : ", ";
        first = false;
        out += a.state_names[q];
        if (n > 1) out += "*" + std::to_string(n);
      }
      out += " ; U:";
      first = true;
      for (StateId q : p.u) {
        out += first ? " " : ", ";
        first = false;
        out += a.state_names[q];
      }
      return out + ")";
    }
    case K::And:
    case K::Or: {
      std::string out = "(";
      const char* sep = c.kind() == K::And ? " & " : " | ";
      bool first = true;
      for (const auto& ch : c.children()) {
        if (!first) out += sep;
        first = false;
        out += describe_constraint(a, ch);
      }
      return out + ")";
    }
  }
  return "?";
}

// All total maps succ-position -> state whose image multiset satisfies
// the pair: E is matched injectively against positions, every position
// left over takes a state from U.  Consuming E eagerly whenever the
// chosen state still has remaining multiplicity generates each map once.
inline void enumerate_markings(const EUPair<StateId>& p, std::size_t n_succ,
                               std::vector<std::vector<StateId>>& out) {
  Multiset<StateId> remaining = p.e;
  std::vector<StateId> current(n_succ);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n_succ) {
      if (remaining.empty()) out.push_back(current);
      return;
    }
    std::vector<StateId> candidates;
    for (StateId q : remaining.support()) candidates.push_back(q);
    for (StateId q : p.u)
      if (!remaining.contains(q)) candidates.push_back(q);
    for (StateId q : candidates) {
      bool consumed = remaining.contains(q);
      if (consumed) remaining.remove(q);
      current[pos] = q;
      self(self, pos + 1);
      if (consumed) remaining.add(q);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

inline MembershipGame build_membership_game(const Automaton& a,
                                            const KripkeStructure& k,
                                            VertexId root) {
  MembershipGame mg;
  mg.successors.resize(k.n_vertices());
  for (VertexId v = 0; v < k.n_vertices(); ++v) {
    std::vector<VertexId> s = k.succ[v];
    s.erase(std::unique(s.begin(), s.end()), s.end());
    mg.successors[v] = std::move(s);
  }

  const unsigned aux = a.max_priority() + 1;
  // Work items reference already-created game states.
  enum class Kind { Main, Form, Mark };
  struct Item {
    Kind kind;
    std::size_t id;
    VertexId v;
    StateId q;                   // Main
    StateConstraint formula;     // Form
    std::vector<StateId> marking;  // Mark
  };
  std::vector<Item> work;

  auto make_main = [&](VertexId v, StateId q) {
    auto it = mg.main_states.find({v, q});
    if (it != mg.main_states.end()) return it->second;
    std::size_t id = mg.game.add_state(0, a.priority[q],
                                       "(" + k.vertex_names[v] + ", " +
                                           a.state_names[q] + ")");
    mg.main_states.emplace(std::make_pair(v, q), id);
    work.push_back({Kind::Main, id, v, q, {}, {}});
    return id;
  };
  auto make_form = [&](VertexId v, const StateConstraint& f) {
    auto it = mg.formula_states.find({v, f});
    if (it != mg.formula_states.end()) return it->second;
    using K = StateConstraint::Kind;
    int owner = 0;
    switch (f.kind()) {
      case K::True:
      case K::And:
        owner = 1;
        break;
      case K::False:
      case K::Or:
      case K::Atom:
        owner = 0;
        break;
    }
    std::size_t id = mg.game.add_state(owner, aux,
                                       "(" + k.vertex_names[v] + ", " +
                                           detail::describe_constraint(a, f) +
                                           ")");
    mg.formula_states.emplace(std::make_pair(v, f), id);
    work.push_back({Kind::Form, id, v, 0, f, {}});
    return id;
  };
  auto make_mark = [&](VertexId v, const std::vector<StateId>& nu) {
    auto it = mg.marking_states.find({v, nu});
    if (it != mg.marking_states.end()) return it->second;
    std::string lab = "(" + k.vertex_names[v] + ", [";
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (i) lab += ", ";
      lab += k.vertex_names[mg.successors[v][i]] + ":" + a.state_names[nu[i]];
    }
    lab += "])";
    std::size_t id = mg.game.add_state(1, aux, lab);
    mg.marking_states.emplace(std::make_pair(v, nu), id);
    work.push_back({Kind::Mark, id, v, 0, {}, nu});
    return id;
  };

  mg.start = make_main(root, a.initial);
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    switch (item.kind) {
      case Kind::Main: {
        Letter l = k.letter_for(item.v, a.props);
        mg.game.add_edge(item.id, make_form(item.v, a.delta[item.q][l]));
        break;
      }
      case Kind::Form: {
        using K = StateConstraint::Kind;
        switch (item.formula.kind()) {
          case K::True:
          case K::False:
            break;  // dead end, the owner is blocked and loses
          case K::And:
          case K::Or:
            for (const auto& ch : item.formula.children())
              mg.game.add_edge(item.id, make_form(item.v, ch));
            break;
          case K::Atom: {
            const auto& succ = mg.successors[item.v];
            if (succ.size() > 12)
              throw marking_cap_error(
                  "vertex " + k.vertex_names[item.v] + " has " +
                  std::to_string(succ.size()) +
                  " successors; marking enumeration capped at 12");
            std::vector<std::vector<StateId>> markings;
            detail::enumerate_markings(item.formula.atom_value(), succ.size(),
                                       markings);
            for (const auto& nu : markings)
              mg.game.add_edge(item.id, make_mark(item.v, nu));
            break;
          }
        }
        break;
      }
      case Kind::Mark: {
        const auto& succ = mg.successors[item.v];
        for (std::size_t i = 0; i < succ.size(); ++i)
          mg.game.add_edge(item.id, make_main(succ[i], item.marking[i]));
        break;
      }
    }
  }
  return mg;
}

inline bool membership(const Automaton& a, const KripkeStructure& k,
                       VertexId root) {
  MembershipGame mg = build_membership_game(a, k, root);
  GameSolution sol = solve(mg.game);
  return sol.winner[mg.start] == 0;
}

}  // namespace euta
