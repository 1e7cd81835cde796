#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "euta/eu.hh"
#include "euta/multiset.hh"
#include "euta/pbf.hh"

namespace euta {

// Assignment of a non-empty set of codomain elements to each domain
// element. The domain itself may be empty (a leaf has no successors).
template <typename D, typename T>
class Marking {
public:
  using map_type = std::map<D, std::set<T>>;

  Marking() = default;

  void assign(const D& node, std::set<T> states) {
    if (states.empty()) return;  // empty sets are not representable
    assignment_[node] = std::move(states);
  }

  const std::set<T>& at(const D& node) const { return assignment_.at(node); }
  bool has(const D& node) const { return assignment_.contains(node); }
  std::size_t domain_size() const { return assignment_.size(); }
  bool empty_domain() const { return assignment_.empty(); }
  const map_type& assignment() const { return assignment_; }

  auto begin() const { return assignment_.begin(); }
  auto end() const { return assignment_.end(); }

  bool unitary() const {
    for (const auto& [node, states] : assignment_)
      if (states.size() != 1) return false;
    return true;
  }

  // For a unitary marking: the multiset of assigned states.
  Multiset<T> image() const {
    Multiset<T> img;
    for (const auto& [node, states] : assignment_) img.add(*states.begin());
    return img;
  }

  bool operator==(const Marking&) const = default;
  auto operator<=>(const Marking&) const = default;

private:
  map_type assignment_;
};

// a is a submarking of b: same domain, pointwise subset.
template <typename D, typename T>
bool submarking(const Marking<D, T>& a, const Marking<D, T>& b) {
  if (a.domain_size() != b.domain_size()) return false;
  for (const auto& [node, states] : a) {
    if (!b.has(node)) return false;
    const std::set<T>& big = b.at(node);
    for (const T& s : states)
      if (!big.contains(s)) return false;
  }
  return true;
}

namespace detail {

// Kuhn's augmenting-path matching on a bipartite graph given as
// left-side adjacency lists. Returns, per right vertex, the matched left
// vertex or npos.
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

inline bool try_augment(std::size_t left, const std::vector<std::vector<std::size_t>>& adj,
                        std::vector<std::size_t>& match_right, std::vector<bool>& visited) {
  for (std::size_t right : adj[left]) {
    if (visited[right]) continue;
    visited[right] = true;
    if (match_right[right] == npos ||
        try_augment(match_right[right], adj, match_right, visited)) {
      match_right[right] = left;
      return true;
    }
  }
  return false;
}

inline std::size_t max_matching(std::size_t n_left, std::size_t n_right,
                                const std::vector<std::vector<std::size_t>>& adj,
                                std::vector<std::size_t>* match_right_out = nullptr) {
  std::vector<std::size_t> match_right(n_right, npos);
  std::size_t matched = 0;
  for (std::size_t l = 0; l < n_left; ++l) {
    std::vector<bool> visited(n_right, false);
    if (try_augment(l, adj, match_right, visited)) ++matched;
  }
  if (match_right_out) *match_right_out = std::move(match_right);
  return matched;
}

// Decides whether the domain nodes can be assigned one value each so that
// every slot is covered by a distinct node (via its compatibility list)
// and every node not used for a slot has a fallback. Correct because a
// matching saturating all slots and a matching saturating all
// fallback-free nodes combine into one saturating both sides at once.
inline bool cover_feasible(std::size_t n_nodes,
                           const std::vector<std::vector<std::size_t>>& slot_to_nodes,
                           const std::vector<bool>& node_has_fallback) {
  const std::size_t n_slots = slot_to_nodes.size();
  if (max_matching(n_slots, n_nodes, slot_to_nodes) != n_slots) return false;
  std::vector<std::vector<std::size_t>> node_to_slots(n_nodes);
  for (std::size_t s = 0; s < n_slots; ++s)
    for (std::size_t node : slot_to_nodes[s]) node_to_slots[node].push_back(s);
  std::vector<std::size_t> forced;
  for (std::size_t node = 0; node < n_nodes; ++node)
    if (!node_has_fallback[node]) forced.push_back(node);
  std::vector<std::vector<std::size_t>> forced_adj;
  forced_adj.reserve(forced.size());
  for (std::size_t node : forced) forced_adj.push_back(node_to_slots[node]);
  return max_matching(forced_adj.size(), n_slots, forced_adj) == forced.size();
}

}  // namespace detail

// Atom case of the execution-tree satisfaction relation: some unitary
// submarking of nu (one state chosen per node) has its image satisfy p.
template <typename D, typename T>
bool marking_satisfies_plus(const Marking<D, T>& nu, const EUPair<T>& p) {
  std::vector<const std::set<T>*> nodes;
  nodes.reserve(nu.domain_size());
  for (const auto& [node, states] : nu) nodes.push_back(&states);

  std::vector<std::vector<std::size_t>> slot_to_nodes;
  for (const auto& [state, count] : p.e) {
    std::vector<std::size_t> compat;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i]->contains(state)) compat.push_back(i);
    for (std::size_t k = 0; k < count; ++k) slot_to_nodes.push_back(compat);
  }

  std::vector<bool> fallback(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    bool ok = false;
    for (const T& s : *nodes[i])
      if (p.u.contains(s)) { ok = true; break; }
    fallback[i] = ok;
  }
  return detail::cover_feasible(nodes.size(), slot_to_nodes, fallback);
}

template <typename D, typename T>
bool marking_satisfies_plus(const Marking<D, T>& nu, const EUConstraint<T>& c) {
  switch (c.kind()) {
    case EUConstraint<T>::Kind::True: return true;
    case EUConstraint<T>::Kind::False: return false;
    case EUConstraint<T>::Kind::Atom:
      return marking_satisfies_plus(nu, c.atom_value());
    case EUConstraint<T>::Kind::And:
      for (const auto& child : c.children())
        if (!marking_satisfies_plus(nu, child)) return false;
      return true;
    case EUConstraint<T>::Kind::Or:
      for (const auto& child : c.children())
        if (marking_satisfies_plus(nu, child)) return true;
      return false;
  }
  return false;
}

// Atom case of set-satisfaction: choose a non-empty subset of each node's
// set; the chosen subsets, read as single points of the powerset universe,
// must satisfy p (whose states are sets).
template <typename D, typename T>
bool marking_satisfies_star(const Marking<D, T>& nu, const EUPair<std::set<T>>& p) {
  std::vector<const std::set<T>*> nodes;
  nodes.reserve(nu.domain_size());
  for (const auto& [node, states] : nu) nodes.push_back(&states);

  auto fits = [](const std::set<T>& candidate, const std::set<T>& within) {
    if (candidate.empty()) return false;
    for (const T& x : candidate)
      if (!within.contains(x)) return false;
    return true;
  };

  std::vector<std::vector<std::size_t>> slot_to_nodes;
  for (const auto& [stateset, count] : p.e) {
    std::vector<std::size_t> compat;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (fits(stateset, *nodes[i])) compat.push_back(i);
    for (std::size_t k = 0; k < count; ++k) slot_to_nodes.push_back(compat);
  }

  std::vector<bool> fallback(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    bool ok = false;
    for (const std::set<T>& candidate : p.u)
      if (fits(candidate, *nodes[i])) { ok = true; break; }
    fallback[i] = ok;
  }
  return detail::cover_feasible(nodes.size(), slot_to_nodes, fallback);
}

template <typename D, typename T>
bool marking_satisfies_star(const Marking<D, T>& nu,
                            const EUConstraint<std::set<T>>& c) {
  using C = EUConstraint<std::set<T>>;
  switch (c.kind()) {
    case C::Kind::True: return true;
    case C::Kind::False: return false;
    case C::Kind::Atom: return marking_satisfies_star(nu, c.atom_value());
    case C::Kind::And:
      for (const auto& child : c.children())
        if (!marking_satisfies_star(nu, child)) return false;
      return true;
    case C::Kind::Or:
      for (const auto& child : c.children())
        if (marking_satisfies_star(nu, child)) return true;
      return false;
  }
  return false;
}

}  // namespace euta
