#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "euta/automaton.hh"

namespace euta {

using VertexId = std::size_t;

// Finite Kripke structure; every vertex must have a successor, so every
// computation tree is infinite. Regular trees are carried as a pair of
// structure and root vertex.
struct KripkeStructure {
  std::vector<std::string> vertex_names;
  std::vector<std::vector<VertexId>> succ;  // sorted, per vertex
  std::vector<std::set<std::string>> labels;

  std::size_t n_vertices() const { return vertex_names.size(); }

  // The vertex label restricted to the given proposition list, encoded
  // as a letter of that alphabet.
  Letter letter_for(VertexId v, const std::vector<std::string>& props) const {
    Letter l = 0;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (labels[v].contains(props[i])) l |= Letter{1} << i;
    return l;
  }

  std::set<std::string> all_props() const {
    std::set<std::string> s;
    for (const auto& lab : labels) s.insert(lab.begin(), lab.end());
    return s;
  }
};

inline std::vector<std::string> validate_kripke(const KripkeStructure& k) {
  std::vector<std::string> report;
  if (k.succ.size() != k.n_vertices() || k.labels.size() != k.n_vertices()) {
    report.push_back("vertex tables have inconsistent sizes");
    return report;
  }
  std::set<std::string> seen;
  for (const auto& name : k.vertex_names)
    if (!seen.insert(name).second)
      report.push_back("duplicate vertex name: " + name);
  for (VertexId v = 0; v < k.n_vertices(); ++v) {
    if (k.succ[v].empty())
      report.push_back("vertex without outgoing edge: " + k.vertex_names[v]);
    for (VertexId w : k.succ[v])
      if (w >= k.n_vertices())
        report.push_back("edge to unknown vertex from: " + k.vertex_names[v]);
  }
  return report;
}

// Finite truncation of a computation tree; nodes are vertex words
// relative to the root (the root itself is the empty word).
struct TreePrefix {
  VertexId root = 0;
  std::vector<std::vector<VertexId>> nodes;  // sorted lexicographically

  VertexId last_vertex(const std::vector<VertexId>& node) const {
    return node.empty() ? root : node.back();
  }
};

inline TreePrefix unfold(const KripkeStructure& k, VertexId root,
                         std::size_t depth) {
  TreePrefix t;
  t.root = root;
  std::vector<std::vector<VertexId>> frontier{{}};
  t.nodes.push_back({});
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<std::vector<VertexId>> next;
    for (const auto& node : frontier) {
      VertexId v = t.last_vertex(node);
      for (VertexId w : k.succ[v]) {
        std::vector<VertexId> child = node;
        child.push_back(w);
        t.nodes.push_back(child);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  std::ranges::sort(t.nodes);
  return t;
}

// Drops the given propositions from every vertex label.
inline KripkeStructure erase_props(const KripkeStructure& k,
                                   const std::set<std::string>& hidden) {
  KripkeStructure r = k;
  for (auto& lab : r.labels)
    for (const auto& p : hidden) lab.erase(p);
  return r;
}

}  // namespace euta
