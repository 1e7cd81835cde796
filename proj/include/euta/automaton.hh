#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "euta/eu.hh"
#include "euta/pbf.hh"

namespace euta {

using StateId = std::size_t;

// A letter is a subset of the proposition list, stored as a bitmask over
// proposition indices.
using Letter = unsigned;

using StateConstraint = EUConstraint<StateId>;

// Alternating parity tree automaton over arbitrary-arity trees.
// Acceptance: on every infinite branch of an execution tree, the least
// priority seen infinitely often is even; finite branches always accept.
struct Automaton {
  std::vector<std::string> props;
  std::vector<std::string> state_names;
  StateId initial = 0;
  // delta[q][letter], letter ranging over all subsets of props.
  std::vector<std::vector<StateConstraint>> delta;
  std::vector<unsigned> priority;

  std::size_t n_states() const { return state_names.size(); }
  std::size_t n_letters() const { return std::size_t{1} << props.size(); }

  unsigned max_priority() const {
    unsigned m = 0;
    for (unsigned p : priority) m = std::max(m, p);
    return m;
  }
};

struct SizeTuple {
  std::size_t n_states = 0;
  std::size_t bool_size = 0;
  std::size_t e_size = 0;
  std::size_t u_size = 0;
  std::size_t n_priorities = 0;

  bool operator==(const SizeTuple&) const = default;

  bool within(const SizeTuple& bound) const {
    return n_states <= bound.n_states && bool_size <= bound.bool_size &&
           e_size <= bound.e_size && u_size <= bound.u_size &&
           n_priorities <= bound.n_priorities;
  }
};

// Non-alternating parity word automaton; transition formulas are
// disjunctions of states, stored as sorted successor lists.
struct WordAutomaton {
  std::vector<std::string> props;
  std::vector<std::string> state_names;
  StateId initial = 0;
  std::vector<std::vector<std::vector<StateId>>> delta;  // [q][letter]
  std::vector<unsigned> priority;
  // Letters normally range over the subsets of props; an automaton over
  // an abstract indexed alphabet sets the size here instead.
  std::size_t explicit_letters = 0;

  std::size_t n_states() const { return state_names.size(); }
  std::size_t n_letters() const {
    return explicit_letters ? explicit_letters
                            : std::size_t{1} << props.size();
  }

  bool deterministic() const {
    for (const auto& row : delta)
      for (const auto& succs : row)
        if (succs.size() != 1) return false;
    return true;
  }

  std::size_t bool_size() const {
    std::size_t m = 0;
    for (const auto& row : delta)
      for (const auto& succs : row)
        m = std::max(m, succs.size() <= 1 ? std::size_t{1} : succs.size() + 1);
    return m;
  }

  std::size_t n_priorities() const {
    std::set<unsigned> used(priority.begin(), priority.end());
    return used.size();
  }

  unsigned max_priority() const {
    unsigned m = 0;
    for (unsigned p : priority) m = std::max(m, p);
    return m;
  }
};

namespace detail {

inline std::size_t pbf_node_count(const StateConstraint& c) {
  switch (c.kind()) {
    case StateConstraint::Kind::True:
    case StateConstraint::Kind::False:
    case StateConstraint::Kind::Atom:
      return 1;
    default: {
      std::size_t n = 1;
      for (const auto& child : c.children()) n += pbf_node_count(child);
      return n;
    }
  }
}

inline std::string fresh_name(const std::string& base,
                              const std::set<std::string>& used) {
  if (!used.contains(base)) return base;
  for (int k = 2;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!used.contains(candidate)) return candidate;
  }
}

}  // namespace detail

inline std::vector<std::string> validate(const Automaton& a) {
  std::vector<std::string> report;
  if (a.state_names.empty()) report.push_back("automaton has no states");
  if (a.initial >= a.n_states())
    report.push_back("initial state index out of range");
  {
    std::set<std::string> seen;
    for (const auto& name : a.state_names)
      if (!seen.insert(name).second)
        report.push_back("duplicate state name: " + name);
    std::set<std::string> props_seen;
    for (const auto& p : a.props)
      if (!props_seen.insert(p).second)
        report.push_back("duplicate proposition: " + p);
  }
  if (a.delta.size() != a.n_states())
    report.push_back("partial transition function: delta rows != states");
  if (a.priority.size() != a.n_states())
    report.push_back("priority map not total on states");
  for (StateId q = 0; q < a.delta.size(); ++q) {
    if (a.delta[q].size() != a.n_letters()) {
      report.push_back("partial transition function: state " +
                       a.state_names[q] + " missing letters");
      continue;
    }
    for (Letter l = 0; l < a.delta[q].size(); ++l) {
      for (const EUPair<StateId>& p : a.delta[q][l].atoms()) {
        auto check = [&](StateId s) {
          if (s >= a.n_states())
            report.push_back("dangling state reference in delta(" +
                             a.state_names[q] + ", letter " + std::to_string(l) +
                             ")");
        };
        for (const auto& [s, n] : p.e) check(s);
        for (StateId s : p.u) check(s);
      }
    }
  }
  return report;
}

inline SizeTuple size_of(const Automaton& a) {
  SizeTuple t;
  t.n_states = a.n_states();
  for (const auto& row : a.delta) {
    for (const auto& c : row) {
      t.bool_size = std::max(t.bool_size, detail::pbf_node_count(c));
      for (const EUPair<StateId>& p : c.atoms()) {
        t.e_size = std::max(t.e_size, p.e.size());
        t.u_size = std::max(t.u_size, p.u.size());
      }
    }
  }
  std::set<unsigned> used(a.priority.begin(), a.priority.end());
  t.n_priorities = used.size();
  return t;
}

inline bool is_non_alternating(const Automaton& a) {
  auto no_and = [](const StateConstraint& c, auto&& self) -> bool {
    if (c.kind() == StateConstraint::Kind::And) return false;
    for (const auto& child : c.children())
      if (!self(child, self)) return false;
    return true;
  };
  for (const auto& row : a.delta)
    for (const auto& c : row)
      if (!no_and(c, no_and)) return false;
  return true;
}

struct alternation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_non_alternating(const Automaton& a, const char* op) {
  if (!is_non_alternating(a))
    throw alternation_error(std::string(op) +
                            " needs a non-alternating automaton; simulate first");
}

}  // namespace detail

// Monotone, parity-preserving compression of the priority map onto a
// contiguous band starting at 0 or 1; the least priority seen
// infinitely often keeps its parity on every branch.
inline Automaton normalize_priorities(const Automaton& a) {
  std::set<unsigned> used(a.priority.begin(), a.priority.end());
  std::map<unsigned, unsigned> to;
  unsigned prev_old = 0, prev_new = 0;
  bool first = true;
  for (unsigned p : used) {
    if (first) {
      prev_new = p % 2;
      first = false;
    } else if (p % 2 != prev_old % 2) {
      ++prev_new;
    }
    prev_old = p;
    to[p] = prev_new;
  }
  Automaton r = a;
  for (auto& p : r.priority) p = to.at(p);
  return r;
}

// Rewrites every EU-pair whose universal part has more than one state:
// <E;U> becomes <E;{q_U}> where the fresh state q_U behaves as the
// disjunction of the members of U.  Merging alone would record the
// merged state's priority where a run used to record the chosen
// member's, so the member's priority travels one step as a debt: under
// debt d a successor y becomes a copy of y recording min(d, w(y)) (y
// itself when d >= w(y)), a universal set U met under debt d becomes
// q_{U,d} recording d, and the rows of q_{U,d} replay each member's row
// under that member's priority.  Collapsing two consecutive records to
// their minimum and padding with the maximal priority, the neutral debt
// real rows are rewritten under, both leave the minimal priority seen
// infinitely often unchanged, so the language is preserved.  Fresh
// states are shared per (U, d) and per (y, d).
inline Automaton normalize_universal_singletons(const Automaton& a) {
  bool any = false;
  for (const auto& row : a.delta)
    for (const auto& c : row)
      for (const EUPair<StateId>& p : c.atoms())
        if (p.u.size() > 1) any = true;
  if (!any) return a;

  Automaton r = a;
  const unsigned neutral = a.max_priority();
  std::set<std::string> used(a.state_names.begin(), a.state_names.end());
  std::map<std::pair<StateId, unsigned>, StateId> copies;
  std::map<std::pair<std::set<StateId>, unsigned>, StateId> merged;
  struct Pending {
    bool is_merged;
    StateId original;
    std::set<StateId> members;
  };
  std::vector<Pending> pending;

  auto add_state = [&](std::string base, unsigned prio, Pending p) {
    std::string name = detail::fresh_name(base, used);
    used.insert(name);
    StateId id = r.state_names.size();
    r.state_names.push_back(std::move(name));
    r.priority.push_back(prio);
    pending.push_back(std::move(p));
    return id;
  };

  auto copy_of = [&](StateId y, unsigned debt) {
    if (debt >= a.priority[y]) return y;
    auto it = copies.find({y, debt});
    if (it == copies.end())
      it = copies
               .emplace(std::pair{y, debt},
                        add_state(a.state_names[y] + "_p" + std::to_string(debt),
                                  debt, {false, y, {}}))
               .first;
    return it->second;
  };

  auto merged_of = [&](const std::set<StateId>& u, unsigned debt) {
    auto it = merged.find({u, debt});
    if (it == merged.end()) {
      std::string base = "u";
      for (StateId q : u) base += "_" + a.state_names[q];
      if (debt != neutral) base += "_p" + std::to_string(debt);
      it = merged.emplace(std::pair{u, debt}, add_state(base, debt, {true, 0, u}))
               .first;
    }
    return it->second;
  };

  auto rewrite = [&](const StateConstraint& c, unsigned debt) {
    return c.map_atoms([&](const EUPair<StateId>& p) {
      Multiset<StateId> e;
      for (const auto& [y, n] : p.e) e.add(copy_of(y, debt), n);
      std::set<StateId> u;
      if (p.u.size() == 1) u = {copy_of(*p.u.begin(), debt)};
      else if (p.u.size() > 1) u = {merged_of(p.u, debt)};
      return EUPair<StateId>{std::move(e), std::move(u)};
    });
  };

  for (StateId q = 0; q < a.n_states(); ++q)
    for (Letter l = 0; l < a.n_letters(); ++l)
      r.delta[q][l] = rewrite(a.delta[q][l], neutral);

  // Copies replay an already rewritten real row; merged rows may intern
  // further states, growing the worklist.
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const Pending p = pending[i];
    std::vector<StateConstraint> row;
    row.reserve(a.n_letters());
    for (Letter l = 0; l < a.n_letters(); ++l) {
      if (!p.is_merged) {
        row.push_back(r.delta[p.original][l]);
      } else {
        std::vector<StateConstraint> parts;
        for (StateId z : p.members)
          parts.push_back(rewrite(a.delta[z][l], a.priority[z]));
        row.push_back(StateConstraint::disj(std::move(parts)));
      }
    }
    r.delta.push_back(std::move(row));
  }
  return r;
}

// Tree automaton accepting the trees with at least one branch accepted
// by b: follow b along a guessed branch, accept everything else.
inline Automaton lift_exists_branch(const WordAutomaton& b) {
  Automaton a;
  a.props = b.props;
  a.state_names = b.state_names;
  a.initial = b.initial;
  a.priority = b.priority;
  std::set<std::string> used(b.state_names.begin(), b.state_names.end());
  const StateId top = a.state_names.size();
  a.state_names.push_back(detail::fresh_name("q_top", used));
  a.priority.push_back(0);  // never observed: q_top's transitions are all true

  a.delta.resize(a.n_states());
  for (StateId q = 0; q < b.n_states(); ++q) {
    a.delta[q].reserve(b.n_letters());
    for (Letter l = 0; l < b.n_letters(); ++l) {
      std::vector<StateConstraint> parts;
      for (StateId succ : b.delta[q][l])
        parts.push_back(StateConstraint::atom(
            EUPair<StateId>{Multiset<StateId>::singleton(succ), {top}}));
      a.delta[q].push_back(StateConstraint::disj(std::move(parts)));
    }
  }
  a.delta[top].assign(b.n_letters(), StateConstraint::tt());
  return a;
}

struct DeterminismRequired {};

// Tree automaton accepting the trees all of whose branches b accepts.
// Sound only when b is deterministic: the same run prefix must serve
// every branch through a common tree prefix.
inline Automaton lift_all_branches(const WordAutomaton& b) {
  if (!b.deterministic()) throw DeterminismRequired{};
  Automaton a;
  a.props = b.props;
  a.state_names = b.state_names;
  a.initial = b.initial;
  a.priority = b.priority;
  a.delta.resize(a.n_states());
  for (StateId q = 0; q < b.n_states(); ++q) {
    a.delta[q].reserve(b.n_letters());
    for (Letter l = 0; l < b.n_letters(); ++l) {
      std::set<StateId> u(b.delta[q][l].begin(), b.delta[q][l].end());
      a.delta[q].push_back(
          StateConstraint::atom(EUPair<StateId>{Multiset<StateId>{}, u}));
    }
  }
  return a;
}

}  // namespace euta
