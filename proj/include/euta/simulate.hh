#pragma once

// Alternation removal for EU tree automata.  The pipeline replaces the
// branching structure of an alternating automaton by bookkeeping in the
// state space:
//
//   1. pair_ancestors tags every state with the state one level up, so
//      a label can later stand for a set of (parent, child) obligations.
//   2. powerset runs all obligations of a node jointly: a state is a
//      set of pairs, its row the conjunction of its members' rows.
//   3. to_disjunctive eliminates the conjunctions pairwise until every
//      row is a plain disjunction of EU pairs over such sets.
//   4. The acceptance condition of the set automaton is no longer a
//      parity over its own states: a branch is good when every chain of
//      states threaded through consecutive labels satisfies the source
//      parity.  A deterministic word monitor for that condition is
//      built by determinizing the automaton of violating chains, and
//      the synchronous product stamps its verdict onto the set
//      automaton as an ordinary parity assignment.
//
// The result is a non-alternating automaton with the same language.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "euta/automaton.hh"
#include "euta/eu.hh"
#include "euta/multiset.hh"
#include "euta/pbf.hh"

namespace euta {

// (ancestor state, current state)
using PairState = std::pair<StateId, StateId>;
// A joint obligation: several pairs tracked through one node.
using PowerState = std::set<PairState>;

// Tags every state with the state whose row sent the run there.  State
// (anc, cur) behaves like cur and remembers anc; the priority is the
// current state's, so runs score exactly as in the source automaton.
inline Automaton pair_ancestors(const Automaton& a) {
  const std::size_t n = a.n_states();
  Automaton p;
  p.props = a.props;
  p.state_names.reserve(n * n);
  p.priority.reserve(n * n);
  std::set<std::string> used;
  for (StateId anc = 0; anc < n; ++anc)
    for (StateId cur = 0; cur < n; ++cur) {
      std::string name = detail::fresh_name(
          a.state_names[anc] + "_" + a.state_names[cur], used);
      used.insert(name);
      p.state_names.push_back(std::move(name));
      p.priority.push_back(a.priority[cur]);
    }
  p.initial = a.initial * n + a.initial;
  p.delta.reserve(n * n);
  for (StateId anc = 0; anc < n; ++anc)
    for (StateId cur = 0; cur < n; ++cur) {
      std::vector<StateConstraint> row;
      row.reserve(a.n_letters());
      for (Letter l = 0; l < a.n_letters(); ++l)
        row.push_back(a.delta[cur][l].map_atoms([&](const EUPair<StateId>& pr) {
          Multiset<StateId> e;
          for (const auto& [x, cnt] : pr.e) e.add(cur * n + x, cnt);
          std::set<StateId> u;
          for (StateId x : pr.u) u.insert(cur * n + x);
          return EUPair<StateId>{std::move(e), std::move(u)};
        }));
      p.delta.push_back(std::move(row));
    }
  return p;
}

// Automaton whose states are interned sets of pairs.  Rows are stored
// for the materialized states; row() answers for arbitrary sets by
// conjoining the member rows.  Until to_disjunctive runs, acceptance is
// the chain condition scored by the monitor, not a parity on these
// states; source_priority keeps the parity of the underlying states
// for that purpose.
struct PowAutomaton {
  std::vector<std::string> props;
  std::vector<PowerState> states;
  std::map<PowerState, StateId> index;
  StateId initial = 0;
  std::vector<std::vector<StateConstraint>> delta;  // [state][letter]
  // Row of the singleton {p}, per second component p of a pair; shared
  // by every set containing a pair with that second component.
  std::vector<std::vector<StateConstraint>> comp_row;
  std::vector<unsigned> source_priority;  // of the underlying states
  bool disjunctive = false;

  std::size_t n_letters() const { return std::size_t{1} << props.size(); }

  StateId intern(const PowerState& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    StateId id = states.size();
    states.push_back(s);
    index.emplace(s, id);
    return id;
  }

  // Members sharing a second component share one row: their futures
  // coincide, only the remembered ancestor differs.
  StateConstraint row(const PowerState& s, Letter l) const {
    std::set<StateId> curs;
    for (const PairState& pr : s) curs.insert(pr.second);
    std::vector<StateConstraint> parts;
    parts.reserve(curs.size());
    for (StateId cur : curs) parts.push_back(comp_row[cur][l]);
    return StateConstraint::conj(std::move(parts));
  }
};

// Lifts a pair automaton to sets of pairs.  Successor pairs become
// singleton sets; the materialized states are the initial singleton and
// every singleton a row mentions.  Larger sets arise only later, in
// to_disjunctive, which queries row() for them.
inline PowAutomaton powerset(const Automaton& p) {
  std::size_t n = 0;
  while (n * n < p.n_states()) ++n;
  if (n == 0 || n * n != p.n_states())
    throw std::invalid_argument("powerset expects a pair automaton");
  PowAutomaton q;
  q.props = p.props;
  q.source_priority.assign(p.priority.begin(),
                           p.priority.begin() + static_cast<long>(n));
  q.initial = q.intern(PowerState{PairState{p.initial / n, p.initial % n}});
  q.comp_row.resize(n);
  for (StateId cur = 0; cur < n; ++cur) {
    q.comp_row[cur].reserve(p.n_letters());
    for (Letter l = 0; l < p.n_letters(); ++l)
      q.comp_row[cur].push_back(
          p.delta[cur][l].map_atoms([&](const EUPair<StateId>& pr) {
            Multiset<StateId> e;
            for (const auto& [x, cnt] : pr.e)
              e.add(q.intern(PowerState{PairState{x / n, x % n}}), cnt);
            std::set<StateId> u;
            for (StateId x : pr.u)
              u.insert(q.intern(PowerState{PairState{x / n, x % n}}));
            return EUPair<StateId>{std::move(e), std::move(u)};
          }));
  }
  for (StateId s = 0; s < q.states.size(); ++s) {
    std::vector<StateConstraint> row;
    row.reserve(p.n_letters());
    for (Letter l = 0; l < p.n_letters(); ++l)
      row.push_back(q.row(q.states[s], l));
    q.delta.push_back(std::move(row));
  }
  return q;
}

namespace detail {

inline PowerState power_union(const PowerState& a, const PowerState& b) {
  PowerState r = a;
  r.insert(b.begin(), b.end());
  return r;
}

// All functions from k slots into m choices, as digit vectors.
template <typename Fn>
void for_maps(std::size_t k, std::size_t m, Fn&& fn) {
  if (k == 0) {
    std::vector<std::size_t> empty;
    fn(empty);
    return;
  }
  if (m == 0) return;
  std::vector<std::size_t> digits(k, 0);
  while (true) {
    fn(digits);
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++digits[i] < m) break;
      digits[i] = 0;
    }
    if (i == k) break;
  }
}

}  // namespace detail

// Replaces a conjunction of two set pairs by an equivalent disjunction
// of single pairs, under the satisfaction notion where a node may be
// assigned any nonempty subset of an element.  Each successor node can
// absorb one demanded element from each side at once (fused by union),
// or a demanded element of one side fused with a universal element of
// the other, or universal elements of both.  The enumeration ranges
// over the overlap (equal-size submultisets of the two demand lists
// plus a pairing between them) and the borrowing functions sending each
// leftover demand to a universal element opposite; leftovers with no
// universal element available kill the branch.  The universal part of
// every branch is the pairwise union of the two universal sets.
inline EUConstraint<PowerState> eliminate_conjunction(
    const EUPair<PowerState>& p1, const EUPair<PowerState>& p2) {
  auto expand = [](const Multiset<PowerState>& m) {
    std::vector<PowerState> v;
    for (const auto& [el, cnt] : m)
      for (std::size_t i = 0; i < cnt; ++i) v.push_back(el);
    return v;
  };
  const std::vector<PowerState> u1(p1.u.begin(), p1.u.end());
  const std::vector<PowerState> u2(p2.u.begin(), p2.u.end());
  std::set<PowerState> u_joint;
  for (const PowerState& x : p1.u)
    for (const PowerState& y : p2.u) u_joint.insert(detail::power_union(x, y));

  std::set<EUPair<PowerState>> out;
  detail::for_submultisets(p1.e, [&](const Multiset<PowerState>& j1) {
    detail::for_submultisets(p2.e, [&](const Multiset<PowerState>& j2) {
      if (j1.size() != j2.size()) return;
      const std::vector<PowerState> rest1 = expand(ms_minus(p1.e, j1));
      const std::vector<PowerState> rest2 = expand(ms_minus(p2.e, j2));
      if (!rest1.empty() && u2.empty()) return;
      if (!rest2.empty() && u1.empty()) return;
      const std::vector<PowerState> left = expand(j1);
      const std::vector<PowerState> right = expand(j2);
      std::vector<std::size_t> perm(right.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      do {
        Multiset<PowerState> joint;
        for (std::size_t i = 0; i < left.size(); ++i)
          joint.add(detail::power_union(left[i], right[perm[i]]));
        detail::for_maps(
            rest1.size(), u2.size(), [&](const std::vector<std::size_t>& g1) {
              detail::for_maps(
                  rest2.size(), u1.size(),
                  [&](const std::vector<std::size_t>& g2) {
                    Multiset<PowerState> e = joint;
                    for (std::size_t i = 0; i < rest1.size(); ++i)
                      e.add(detail::power_union(rest1[i], u2[g1[i]]));
                    for (std::size_t i = 0; i < rest2.size(); ++i)
                      e.add(detail::power_union(u1[g2[i]], rest2[i]));
                    out.insert(EUPair<PowerState>{std::move(e), u_joint});
                  });
            });
      } while (std::next_permutation(perm.begin(), perm.end()));
    });
  });
  std::vector<EUConstraint<PowerState>> parts;
  parts.reserve(out.size());
  for (const EUPair<PowerState>& p : out)
    parts.push_back(EUConstraint<PowerState>::atom(p));
  return EUConstraint<PowerState>::disj(std::move(parts));
}

// Rewrites every reachable row into a plain disjunction of pairs.  Each
// conjunct of the row's disjunctive normal form is folded left to right
// through eliminate_conjunction; outcomes pool across conjuncts, with
// duplicates collapsing.  All sets mentioned by the rewritten rows
// become states, so the result's rows only ever name its own states.
inline PowAutomaton to_disjunctive(const PowAutomaton& q) {
  PowAutomaton r;
  r.props = q.props;
  r.source_priority = q.source_priority;
  r.disjunctive = true;
  r.initial = r.intern(q.states[q.initial]);

  auto as_sets = [&](const EUPair<StateId>& p) {
    EUPair<PowerState> s;
    for (const auto& [x, cnt] : p.e) s.e.add(q.states[x], cnt);
    for (StateId x : p.u) s.u.insert(q.states[x]);
    return s;
  };

  for (StateId s = 0; s < r.states.size(); ++s) {
    const PowerState cur = r.states[s];
    std::vector<StateConstraint> row;
    row.reserve(q.n_letters());
    for (Letter l = 0; l < q.n_letters(); ++l) {
      const auto conjuncts = pbf_dnf(q.row(cur, l));
      bool tautology = false;
      std::set<EUPair<PowerState>> pool;
      for (const std::vector<EUPair<StateId>>& conjunct : conjuncts) {
        if (conjunct.empty()) {
          tautology = true;
          break;
        }
        std::vector<EUPair<PowerState>> acc{as_sets(conjunct.front())};
        for (std::size_t i = 1; i < conjunct.size() && !acc.empty(); ++i) {
          const EUPair<PowerState> next = as_sets(conjunct[i]);
          std::set<EUPair<PowerState>> folded;
          for (const EUPair<PowerState>& piece : acc)
            for (const EUPair<PowerState>& branch :
                 eliminate_conjunction(piece, next).atoms())
              folded.insert(branch);
          acc.assign(folded.begin(), folded.end());
        }
        pool.insert(acc.begin(), acc.end());
      }
      if (tautology) {
        row.push_back(StateConstraint::tt());
        continue;
      }
      std::vector<StateConstraint> parts;
      parts.reserve(pool.size());
      for (const EUPair<PowerState>& p : pool) {
        EUPair<StateId> ids;
        for (const auto& [el, cnt] : p.e) ids.e.add(r.intern(el), cnt);
        for (const PowerState& el : p.u) ids.u.insert(r.intern(el));
        parts.push_back(StateConstraint::atom(std::move(ids)));
      }
      row.push_back(StateConstraint::disj(std::move(parts)));
    }
    r.delta.push_back(std::move(row));
  }
  return r;
}

// Word automaton over an indexed alphabet of pair sets.  It accepts the
// label sequences threading some chain of states, each consecutive
// (previous, next) pair licensed by the letter read between them, whose
// minimal recurring priority is odd.  Priorities are shifted by one to
// make those chains accepting; the extra initial state starts a chain
// at any next-component of the first letter, since the chain's zeroth
// state is unconstrained.
inline WordAutomaton build_violation_word_automaton(
    const Automaton& a, const std::vector<PowerState>& alphabet) {
  WordAutomaton w;
  w.explicit_letters = alphabet.size();
  w.state_names = a.state_names;
  std::set<std::string> used(a.state_names.begin(), a.state_names.end());
  w.state_names.push_back(detail::fresh_name("guess", used));
  w.initial = a.n_states();
  w.priority.reserve(a.n_states() + 1);
  for (unsigned p : a.priority) w.priority.push_back(p + 1);
  // Visited once; reuse a shifted value so no new priority appears.
  w.priority.push_back(a.priority[a.initial] + 1);
  w.delta.resize(w.n_states());
  for (StateId s = 0; s < w.n_states(); ++s) {
    w.delta[s].reserve(alphabet.size());
    for (const PowerState& letter : alphabet) {
      std::set<StateId> targets;
      for (const PairState& pr : letter)
        if (s == w.initial || pr.first == s) targets.insert(pr.second);
      w.delta[s].emplace_back(targets.begin(), targets.end());
    }
  }
  return w;
}

// Parity-to-Buchi for nondeterministic word automata.  A run with even
// minimal recurring priority p eventually stays at priorities >= p and
// visits p forever, so: keep a guessing copy of the automaton (all
// states rejecting) plus, per even priority p, a copy restricted to
// states of priority >= p in which exactly priority p is accepting;
// the run may jump from the guessing copy into one floor copy at any
// point.  When every priority is even the language is all words with
// some infinite run, and one all-accepting copy suffices.
inline WordAutomaton npw_to_nbw(const WordAutomaton& w) {
  bool all_even = true;
  for (unsigned p : w.priority)
    if (p % 2 == 1) {
      all_even = false;
      break;
    }
  if (all_even) {
    WordAutomaton b = w;
    for (unsigned& p : b.priority) p = 0;
    return b;
  }
  std::vector<unsigned> evens;
  {
    const std::set<unsigned> values(w.priority.begin(), w.priority.end());
    for (unsigned p : values)
      if (p % 2 == 0) evens.push_back(p);
  }
  using Copy = std::pair<std::size_t, StateId>;  // (copy index, state)
  std::map<Copy, StateId> index;
  std::vector<Copy> keys;
  WordAutomaton b;
  b.props = w.props;
  b.explicit_letters = w.explicit_letters;
  std::set<std::string> used;
  auto intern = [&](std::size_t copy, StateId q) {
    auto it = index.find(Copy{copy, q});
    if (it != index.end()) return it->second;
    StateId id = b.state_names.size();
    std::string base =
        copy == 0 ? w.state_names[q]
                  : w.state_names[q] + "_f" + std::to_string(evens[copy - 1]);
    std::string name = detail::fresh_name(base, used);
    used.insert(name);
    b.state_names.push_back(std::move(name));
    b.priority.push_back(
        copy != 0 && w.priority[q] == evens[copy - 1] ? 0u : 1u);
    index.emplace(Copy{copy, q}, id);
    keys.push_back(Copy{copy, q});
    return id;
  };
  b.initial = intern(0, w.initial);
  for (StateId s = 0; s < keys.size(); ++s) {
    const Copy key = keys[s];
    std::vector<std::vector<StateId>> row;
    row.reserve(w.n_letters());
    for (Letter l = 0; l < w.n_letters(); ++l) {
      std::set<StateId> targets;
      for (StateId t : w.delta[key.second][l]) {
        if (key.first == 0) {
          targets.insert(intern(0, t));
          for (std::size_t k = 0; k < evens.size(); ++k)
            if (w.priority[t] >= evens[k]) targets.insert(intern(k + 1, t));
        } else if (w.priority[t] >= evens[key.first - 1]) {
          targets.insert(intern(key.first, t));
        }
      }
      row.emplace_back(targets.begin(), targets.end());
    }
    b.delta.push_back(std::move(row));
  }
  return b;
}

namespace detail {

// Ordered tree of nested state sets; names identify nodes across steps.
struct SafraNode {
  unsigned name = 1;
  std::set<StateId> label;
  std::vector<SafraNode> children;

  bool operator==(const SafraNode& o) const {
    return name == o.name && label == o.label && children == o.children;
  }
  // Hand-written ordering: a defaulted three-way operator would depend
  // on itself through the children vector's synthesized comparison.
  bool operator<(const SafraNode& o) const {
    if (name != o.name) return name < o.name;
    if (label != o.label) return label < o.label;
    return std::lexicographical_compare(children.begin(), children.end(),
                                        o.children.begin(), o.children.end());
  }
};

inline void safra_update(SafraNode& v, const WordAutomaton& b, Letter l) {
  std::set<StateId> next;
  for (StateId q : v.label)
    for (StateId t : b.delta[q][l]) next.insert(t);
  v.label = std::move(next);
  for (SafraNode& c : v.children) safra_update(c, b, l);
}

// Appends to every pre-existing node a youngest child holding its
// accepting states.  Parents take fresh names before their
// descendants, counting up from next_name.
inline void safra_spawn(SafraNode& v, const std::set<StateId>& acc,
                        unsigned& next_name) {
  std::set<StateId> f;
  for (StateId q : v.label)
    if (acc.contains(q)) f.insert(q);
  const std::size_t old_children = v.children.size();
  if (!f.empty()) v.children.push_back(SafraNode{next_name++, std::move(f), {}});
  for (std::size_t i = 0; i < old_children; ++i)
    safra_spawn(v.children[i], acc, next_name);
}

inline void safra_strip(SafraNode& v, const std::set<StateId>& kill) {
  std::erase_if(v.label, [&](StateId q) { return kill.contains(q); });
  for (SafraNode& c : v.children) safra_strip(c, kill);
}

// A state claimed by an older sibling disappears from every younger
// sibling's whole subtree.
inline void safra_sibling_dedup(SafraNode& v) {
  std::set<StateId> seen;
  for (SafraNode& c : v.children) {
    safra_strip(c, seen);
    seen.insert(c.label.begin(), c.label.end());
    safra_sibling_dedup(c);
  }
}

// Deletes nodes whose label drained; the smallest deleted name is the
// step's death event.
inline void safra_remove_empty(SafraNode& v, unsigned& death) {
  for (SafraNode& c : v.children) safra_remove_empty(c, death);
  std::erase_if(v.children, [&](const SafraNode& c) {
    if (!c.label.empty()) return false;
    death = std::min(death, c.name);
    return true;
  });
}

// A node whose children jointly carry its whole label collapses to a
// leaf: every tracked run has revisited acceptance since the node
// spawned.  The smallest such name is the step's refresh event.
inline void safra_refresh(SafraNode& v, unsigned& refresh) {
  for (SafraNode& c : v.children) safra_refresh(c, refresh);
  if (v.children.empty()) return;
  std::set<StateId> joint;
  for (const SafraNode& c : v.children)
    joint.insert(c.label.begin(), c.label.end());
  if (joint == v.label) {
    v.children.clear();
    refresh = std::min(refresh, v.name);
  }
}

inline void safra_collect_names(const SafraNode& v,
                                std::vector<unsigned>& out) {
  out.push_back(v.name);
  for (const SafraNode& c : v.children) safra_collect_names(c, out);
}

inline void safra_rename(SafraNode& v,
                         const std::map<unsigned, unsigned>& to) {
  v.name = to.at(v.name);
  for (SafraNode& c : v.children) safra_rename(c, to);
}

inline std::size_t safra_size(const SafraNode& v) {
  std::size_t n = 1;
  for (const SafraNode& c : v.children) n += safra_size(c);
  return n;
}

// Order-preserving dense mapping of the used priorities onto the
// smallest band with the same parities, merging same-parity neighbours.
inline std::map<unsigned, unsigned> priority_compression(
    const std::set<unsigned>& used) {
  std::map<unsigned, unsigned> to;
  unsigned prev_old = 0;
  unsigned prev_new = 0;
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
  return to;
}

}  // namespace detail

// Determinization of a Buchi word automaton into a parity word
// automaton.  A state is a tree of nested state sets: the root tracks
// the reachable set, a child remembers a group of runs since their last
// acceptance visit.  Names persist across steps; each transition
// reports the most senior node that died (odd score 2*name-1) or
// refreshed (even score 2*name).  After every step names compact to
// 1..k preserving order, which keeps any surviving node's name
// non-increasing over time, so a word is accepted exactly when some
// eventually stable node refreshes infinitely often: its even score is
// then the least one recurring.
inline WordAutomaton nbw_determinize(const WordAutomaton& b) {
  for (unsigned p : b.priority)
    if (p > 1)
      throw std::invalid_argument(
          "nbw_determinize expects priorities 0 and 1 only");
  std::set<StateId> acc;
  for (StateId q = 0; q < b.n_states(); ++q)
    if (b.priority[q] == 0) acc.insert(q);

  // Above any reachable score: live trees hold at most n nodes, so
  // compacted names stay at most n and fresh ones at most 2n.
  const unsigned neutral = 4 * static_cast<unsigned>(b.n_states()) + 5;

  using Key = std::pair<detail::SafraNode, unsigned>;
  std::map<Key, StateId> index;
  std::vector<detail::SafraNode> trees;
  WordAutomaton d;
  d.props = b.props;
  d.explicit_letters = b.explicit_letters;
  auto intern = [&](detail::SafraNode tree, unsigned score) {
    Key key{std::move(tree), score};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    StateId id = d.state_names.size();
    d.state_names.push_back("d" + std::to_string(id));
    d.priority.push_back(score);
    trees.push_back(key.first);
    index.emplace(std::move(key), id);
    return id;
  };
  const detail::SafraNode drained{1, {}, {}};
  d.initial = intern(detail::SafraNode{1, {b.initial}, {}}, neutral);
  for (StateId s = 0; s < trees.size(); ++s) {
    const detail::SafraNode tree = trees[s];
    std::vector<std::vector<StateId>> row;
    row.reserve(b.n_letters());
    for (Letter l = 0; l < b.n_letters(); ++l) {
      if (tree.label.empty()) {
        row.push_back({s});
        continue;
      }
      detail::SafraNode t = tree;
      detail::safra_update(t, b, l);
      if (t.label.empty()) {
        // Every run died; the root's death scores and the state sinks.
        row.push_back({intern(drained, 2 * t.name - 1)});
        continue;
      }
      unsigned next_name = static_cast<unsigned>(detail::safra_size(t)) + 1;
      detail::safra_spawn(t, acc, next_name);
      detail::safra_sibling_dedup(t);
      unsigned death = std::numeric_limits<unsigned>::max();
      detail::safra_remove_empty(t, death);
      unsigned refresh = std::numeric_limits<unsigned>::max();
      detail::safra_refresh(t, refresh);
      unsigned score = neutral;
      if (death != std::numeric_limits<unsigned>::max())
        score = std::min(score, 2 * death - 1);
      if (refresh != std::numeric_limits<unsigned>::max())
        score = std::min(score, 2 * refresh);
      std::vector<unsigned> names;
      detail::safra_collect_names(t, names);
      std::sort(names.begin(), names.end());
      std::map<unsigned, unsigned> to;
      for (std::size_t i = 0; i < names.size(); ++i)
        to[names[i]] = static_cast<unsigned>(i) + 1;
      detail::safra_rename(t, to);
      row.push_back({intern(std::move(t), score)});
    }
    d.delta.push_back(std::move(row));
  }
  const std::set<unsigned> used(d.priority.begin(), d.priority.end());
  const std::map<unsigned, unsigned> to = detail::priority_compression(used);
  for (unsigned& p : d.priority) p = to.at(p);
  return d;
}

// Complement of a deterministic parity word automaton: shift every
// priority by one, flipping the parity of each run's minimum.
inline WordAutomaton dpw_complement(const WordAutomaton& d) {
  if (!d.deterministic())
    throw std::invalid_argument("dpw_complement expects a deterministic automaton");
  WordAutomaton c = d;
  for (unsigned& p : c.priority) ++p;
  return c;
}

// Synchronous product of a disjunctive set automaton with a
// deterministic monitor whose letters index that automaton's states.
// Along every branch the monitor reads the states entered below the
// root, and its parity becomes the product's acceptance.
inline Automaton product_with_monitor(const PowAutomaton& r,
                                      const WordAutomaton& m) {
  if (!r.disjunctive)
    throw std::invalid_argument(
        "product_with_monitor expects a disjunctive set automaton");
  if (!m.deterministic())
    throw std::invalid_argument(
        "product_with_monitor expects a deterministic monitor");
  if (m.n_letters() != r.states.size())
    throw std::invalid_argument(
        "monitor alphabet must index the set automaton's states");

  Automaton n;
  n.props = r.props;
  std::map<std::pair<StateId, StateId>, StateId> index;
  std::vector<std::pair<StateId, StateId>> keys;
  std::set<std::string> used;
  auto intern = [&](StateId rs, StateId ms) {
    auto it = index.find({rs, ms});
    if (it != index.end()) return it->second;
    StateId id = n.state_names.size();
    std::string name = detail::fresh_name(
        "s" + std::to_string(rs) + "_" + m.state_names[ms], used);
    used.insert(name);
    n.state_names.push_back(std::move(name));
    n.priority.push_back(m.priority[ms]);
    index.emplace(std::pair{rs, ms}, id);
    keys.push_back({rs, ms});
    return id;
  };
  n.initial = intern(r.initial, m.initial);
  for (StateId s = 0; s < keys.size(); ++s) {
    const auto [rs, ms] = keys[s];
    std::vector<StateConstraint> row;
    row.reserve(r.n_letters());
    for (Letter l = 0; l < r.n_letters(); ++l)
      row.push_back(r.delta[rs][l].map_atoms([&](const EUPair<StateId>& p) {
        Multiset<StateId> e;
        for (const auto& [x, cnt] : p.e)
          e.add(intern(x, m.delta[ms][static_cast<Letter>(x)][0]), cnt);
        std::set<StateId> u;
        for (StateId x : p.u)
          u.insert(intern(x, m.delta[ms][static_cast<Letter>(x)][0]));
        return EUPair<StateId>{std::move(e), std::move(u)};
      }));
    n.delta.push_back(std::move(row));
  }
  return n;
}

// Alternation removal: tag ancestors, run obligations jointly as sets,
// eliminate conjunctions, then replace the chain acceptance condition
// by the verdict of a deterministic monitor obtained by determinizing
// and complementing the automaton of violating chains.
inline Automaton simulate(const Automaton& a) {
  const PowAutomaton r = to_disjunctive(powerset(pair_ancestors(a)));
  const WordAutomaton monitor = dpw_complement(
      nbw_determinize(npw_to_nbw(build_violation_word_automaton(a, r.states))));
  return product_with_monitor(r, monitor);
}

}  // namespace euta
