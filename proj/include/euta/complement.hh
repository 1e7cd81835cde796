#pragma once

// Complementation of alternating EU tree automata.  A marking for an
// atom <E;U> is a matching: every copy of E goes to a distinct
// accepting subtree and every leftover subtree accepts some state of
// U.  The complement automaton asserts the failure of that matching
// through negated copies of the states and one level of boolean
// combinations of those.
//
// Priorities: a combination state stands in for whichever member the
// play descends through, so a fixed priority per combination would let
// a rejecting play hide an accepting member forever (or vice versa).
// Instead every negated or combined state carries the priority it must
// record: when the row of not_x is dualized, all non-plain states in
// the result are stamped with priority(x)+1.  An infinite refutation
// then records exactly the priorities of the branch it refutes,
// shifted by one step and one parity.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "euta/automaton.hh"
#include "euta/eu.hh"
#include "euta/multiset.hh"
#include "euta/pbf.hh"

namespace euta {

// State of the complement automaton: an input state, its negation, or
// a one-level boolean combination of those (conjunctions may hold
// disjunctions produced by negating a conjunction).
struct DualState {
  enum class Kind { Plain, Bar, SetAnd, SetOr };

  Kind kind = Kind::Plain;
  StateId state = 0;
  std::vector<DualState> members;  // sorted and deduplicated

  static DualState plain(StateId q) { return {Kind::Plain, q, {}}; }
  static DualState bar(StateId q) { return {Kind::Bar, q, {}}; }

  bool operator==(const DualState&) const = default;
  // Hand-written ordering: a defaulted three-way operator would depend
  // on itself through the members vector's synthesized comparison.
  bool operator<(const DualState& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (state != o.state) return state < o.state;
    return std::lexicographical_compare(members.begin(), members.end(),
                                        o.members.begin(), o.members.end());
  }
};

using DualPair = EUPair<DualState>;
using DualConstraint = Pbf<DualPair>;

// A state swaps with its negation; a conjunction of states negates to
// the disjunction of the negations.
inline DualState negate_dual(const DualState& d) {
  using K = DualState::Kind;
  DualState r = d;
  switch (d.kind) {
    case K::Plain:
      r.kind = K::Bar;
      break;
    case K::Bar:
      r.kind = K::Plain;
      break;
    case K::SetAnd:
    case K::SetOr:
      r.kind = d.kind == K::SetAnd ? K::SetOr : K::SetAnd;
      for (DualState& m : r.members) m = negate_dual(m);
      std::sort(r.members.begin(), r.members.end());
      break;
  }
  return r;
}

namespace detail {

// Canonical conjunction of states: sorted, deduplicated, a singleton
// collapsing to its member.  Callers handle the empty case themselves.
inline DualState dual_and(std::vector<DualState> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.size() == 1) return members.front();
  DualState d;
  d.kind = DualState::Kind::SetAnd;
  d.members = std::move(members);
  return d;
}

// Atom with two sound shortcuts: demanding the negation of the
// all-accepting state is unsatisfiable, and an empty demand whose
// leftovers may all go to the all-accepting state always holds.
inline DualConstraint dual_atom(Multiset<DualState> e, std::set<DualState> u,
                                StateId top) {
  if (e.contains(DualState::bar(top))) return DualConstraint::ff();
  if (e.empty() && u.contains(DualState::plain(top)))
    return DualConstraint::tt();
  return DualConstraint::atom(DualPair{std::move(e), std::move(u)});
}

}  // namespace detail

// Existence of a minimal blocking pair for g: some strict submultiset
// F of g is coverable while a leftover subtree rejects every state
// appearing in F as well as one more element of g.
inline DualConstraint phi_blocking(const Multiset<DualState>& g) {
  std::vector<DualConstraint> cases;
  detail::for_submultisets(g, [&](const Multiset<DualState>& f) {
    if (f == g) return;
    for (const auto& [h, n] : ms_minus(g, f)) {
      std::vector<DualState> blockers;
      for (const DualState& x : f.support()) blockers.push_back(negate_dual(x));
      blockers.push_back(negate_dual(h));
      cases.push_back(
          DualConstraint::atom(DualPair{f, {detail::dual_and(blockers)}}));
    }
  });
  return DualConstraint::disj(std::move(cases));
}

// Negation of the atom <E;U> over the automaton owning top.  The
// matching a marking amounts to fails in exactly one of three ways,
// each a Hall obstruction observable per subtree:
//   - the node has fewer successors than E has copies;
//   - for some D covering U: the successors rejecting everything in D
//     outnumber the copies of E outside D, so one of them cannot be
//     served (U and D both empty reads "more than |E| successors");
//   - for some part S of E's support: the successors accepting
//     anything in S are outnumbered by the copies of S, so one copy
//     has nowhere to go.
// Every disjunct counts rejections; none depends on where the claimed
// subtrees sit relative to a marking.  That keeps the claim games
// aligned with claim truth: an infinite refutation is forced to track
// one rejected branch of the original, it cannot win through a cycle
// no original play follows.
inline DualConstraint negate_eu_pair(const EUPair<StateId>& p, StateId top) {
  std::set<DualState> anything = {DualState::plain(top)};
  std::vector<DualConstraint> branches;
  // Too few successors: an empty universal part pins the successor
  // count exactly, and structures are total, so counts one through
  // |E|-1 cover every deficient node.
  for (std::size_t j = 1; j < p.e.size(); ++j)
    branches.push_back(detail::dual_atom(
        Multiset<DualState>::singleton(DualState::plain(top), j), {}, top));
  // Starved demands.  D ranges over U plus any subset of supp(E)\U; a
  // claim against the all-accepting state is never true, so sets
  // containing it are dropped wholesale.
  if (!p.u.count(top)) {
    std::vector<StateId> optional;
    for (const auto& [x, n] : p.e)
      if (!p.u.count(x) && x != top) optional.push_back(x);
    for (std::size_t mask = 0; mask < std::size_t{1} << optional.size();
         ++mask) {
      std::set<StateId> chosen;
      for (std::size_t i = 0; i < optional.size(); ++i)
        if (mask >> i & 1) chosen.insert(optional[i]);
      std::size_t servers = 1;
      std::vector<DualState> bars;
      for (StateId u : p.u) bars.push_back(DualState::bar(u));
      for (const auto& [x, n] : p.e) {
        if (chosen.count(x)) bars.push_back(DualState::bar(x));
        else if (!p.u.count(x)) servers += n;
      }
      DualState claim = bars.empty() ? DualState::plain(top)
                                     : detail::dual_and(std::move(bars));
      branches.push_back(detail::dual_atom(
          Multiset<DualState>::singleton(claim, servers), anything, top));
    }
  }
  // Trapped demands: S's copies outnumber the subtrees accepting any
  // member of S when all but mult(S)-1 of them reject S outright.
  std::vector<std::pair<StateId, std::size_t>> parts;
  for (const auto& [x, n] : p.e)
    if (x != top) parts.push_back({x, n});
  for (std::size_t mask = 1; mask < std::size_t{1} << parts.size(); ++mask) {
    std::vector<DualState> bars;
    std::size_t copies = 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (mask >> i & 1) {
        bars.push_back(DualState::bar(parts[i].first));
        copies += parts[i].second;
      }
    branches.push_back(detail::dual_atom(
        Multiset<DualState>::singleton(DualState::plain(top), copies - 1),
        {detail::dual_and(std::move(bars))}, top));
  }
  return DualConstraint::disj(std::move(branches));
}

// Negation normal form of a whole row: constants and connectives flip,
// atoms go through negate_eu_pair.
inline DualConstraint dual_formula(const StateConstraint& c, StateId top) {
  switch (c.kind()) {
    case StateConstraint::Kind::True:
      return DualConstraint::ff();
    case StateConstraint::Kind::False:
      return DualConstraint::tt();
    case StateConstraint::Kind::Atom:
      return negate_eu_pair(c.atom_value(), top);
    case StateConstraint::Kind::And:
    case StateConstraint::Kind::Or: {
      std::vector<DualConstraint> mapped;
      mapped.reserve(c.children().size());
      for (const StateConstraint& child : c.children())
        mapped.push_back(dual_formula(child, top));
      return c.kind() == StateConstraint::Kind::And
                 ? DualConstraint::disj(std::move(mapped))
                 : DualConstraint::conj(std::move(mapped));
    }
  }
  return DualConstraint::ff();
}

// Ensures a state accepting every tree exists and returns its id.
// Recognized forms: all rows true, or all rows <(); {self}> with even
// priority.  Otherwise such a state is appended.
inline std::pair<Automaton, StateId> ensure_top_state(Automaton a) {
  for (StateId q = 0; q < a.n_states(); ++q) {
    bool all_true = true;
    bool self_sink = a.priority[q] % 2 == 0;
    for (Letter l = 0; l < a.n_letters(); ++l) {
      const StateConstraint& row = a.delta[q][l];
      all_true = all_true && row.is_true();
      self_sink = self_sink && row.is_atom() && row.atom_value().e.empty() &&
                  row.atom_value().u == std::set<StateId>{q};
    }
    if (all_true || self_sink) return {std::move(a), q};
  }
  std::set<std::string> used(a.state_names.begin(), a.state_names.end());
  a.state_names.push_back(detail::fresh_name("top", used));
  a.priority.push_back(0);
  StateId top = a.n_states() - 1;
  a.delta.push_back(std::vector<StateConstraint>(
      a.n_letters(),
      StateConstraint::atom(EUPair<StateId>{{}, {top}})));
  return {std::move(a), top};
}

// The automaton as complement() actually consumes it: priorities
// compressed and an explicit all-accepting state.  Size bounds of the
// complement are relative to this basis.
inline std::pair<Automaton, StateId> complement_basis(const Automaton& a) {
  return ensure_top_state(normalize_priorities(a));
}

namespace detail {

inline std::string dual_state_name(const Automaton& a, const DualState& d) {
  switch (d.kind) {
    case DualState::Kind::Plain:
      return a.state_names[d.state];
    case DualState::Kind::Bar:
      return "not_" + a.state_names[d.state];
    case DualState::Kind::SetAnd:
    case DualState::Kind::SetOr: {
      std::string s = d.kind == DualState::Kind::SetAnd ? "all" : "any";
      for (const DualState& m : d.members) s += "_" + dual_state_name(a, m);
      return s;
    }
  }
  return "dual";
}

// Materializes the part of the complement automaton reachable from the
// negated initial state.  States are interned on first sight; row
// construction may intern further states, extending the worklist.
// Non-plain states are keyed by structure plus recorded priority, so
// the same combination reached through members of different priority
// becomes distinct states.
struct ComplementBuilder {
  const Automaton& a;
  StateId top;
  Automaton out;
  std::map<std::pair<DualState, unsigned>, StateId> ids;
  std::vector<std::pair<DualState, unsigned>> interned;
  std::set<std::string> used_names;

  ComplementBuilder(const Automaton& a_, StateId top_) : a(a_), top(top_) {
    out.props = a.props;
  }

  StateId intern(const DualState& d, unsigned recorded) {
    if (d.kind == DualState::Kind::Plain) recorded = a.priority[d.state];
    auto it = ids.find({d, recorded});
    if (it != ids.end()) return it->second;
    StateId id = out.state_names.size();
    ids.emplace(std::pair{d, recorded}, id);
    std::string base = dual_state_name(a, d);
    bool natural = d.kind == DualState::Kind::Plain ||
                   (d.kind == DualState::Kind::Bar &&
                    recorded == a.priority[d.state] + 1);
    if (!natural) base += "_p" + std::to_string(recorded);
    std::string name = fresh_name(base, used_names);
    used_names.insert(name);
    out.state_names.push_back(name);
    out.priority.push_back(recorded);
    interned.push_back({d, recorded});
    return id;
  }

  StateConstraint lower(const DualConstraint& c, unsigned recorded) {
    return c.map_atoms([&](const DualPair& p) {
      EUPair<StateId> q;
      for (const auto& [m, n] : p.e) q.e.add(intern(m, recorded), n);
      for (const DualState& m : p.u) q.u.insert(intern(m, recorded));
      return q;
    });
  }

  StateConstraint row(const DualState& d, Letter l) {
    switch (d.kind) {
      case DualState::Kind::Plain:
        return a.delta[d.state][l].map_atoms([&](const EUPair<StateId>& p) {
          EUPair<StateId> q;
          for (const auto& [s, n] : p.e)
            q.e.add(intern(DualState::plain(s), 0), n);
          for (StateId s : p.u) q.u.insert(intern(DualState::plain(s), 0));
          return q;
        });
      case DualState::Kind::Bar:
        return lower(dual_formula(a.delta[d.state][l], top),
                     a.priority[d.state] + 1);
      case DualState::Kind::SetAnd:
      case DualState::Kind::SetOr: {
        std::vector<StateConstraint> parts;
        parts.reserve(d.members.size());
        for (const DualState& m : d.members) parts.push_back(row(m, l));
        return d.kind == DualState::Kind::SetAnd
                   ? StateConstraint::conj(std::move(parts))
                   : StateConstraint::disj(std::move(parts));
      }
    }
    return StateConstraint::ff();
  }

  Automaton run() {
    out.initial =
        intern(DualState::bar(a.initial), a.priority[a.initial] + 1);
    for (std::size_t i = 0; i < interned.size(); ++i) {
      DualState d = interned[i].first;
      std::vector<StateConstraint> rows;
      rows.reserve(out.n_letters());
      for (Letter l = 0; l < out.n_letters(); ++l) rows.push_back(row(d, l));
      out.delta.push_back(std::move(rows));
    }
    return std::move(out);
  }
};

}  // namespace detail

// Automaton accepting exactly the trees the input rejects.
inline Automaton complement(const Automaton& a_in) {
  auto [basis, top] = complement_basis(a_in);
  detail::ComplementBuilder b(basis, top);
  return b.run();
}

}  // namespace euta
