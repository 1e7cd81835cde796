#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "euta/automaton.hh"

namespace euta {

namespace detail {

// Product of a word automaton with an ultimately periodic word.  The
// product state (q, i) indexes a lasso position; every cycle lives in
// the loop section because stem positions are never re-entered.
struct LassoProduct {
  const WordAutomaton& w;
  std::vector<Letter> word;  // stem followed by loop
  std::size_t stem;

  LassoProduct(const WordAutomaton& w_, const std::vector<Letter>& s,
               const std::vector<Letter>& l)
      : w(w_), stem(s.size()) {
    if (l.empty()) throw std::invalid_argument("lasso loop must be non-empty");
    word = s;
    word.insert(word.end(), l.begin(), l.end());
    for (Letter x : word)
      if (x >= w.n_letters())
        throw std::invalid_argument("lasso letter outside the alphabet");
  }

  std::size_t n() const { return w.n_states() * word.size(); }
  std::size_t id(StateId q, std::size_t pos) const {
    return q * word.size() + pos;
  }
  StateId state(std::size_t x) const { return x / word.size(); }
  std::size_t next_pos(std::size_t pos) const {
    return pos + 1 < word.size() ? pos + 1 : stem;
  }
  void successors(std::size_t x, std::vector<std::size_t>& out) const {
    out.clear();
    StateId q = state(x);
    std::size_t pos = x % word.size();
    for (StateId r : w.delta[q][word[pos]]) out.push_back(id(r, next_pos(pos)));
  }

  std::vector<bool> reachable() const {
    std::vector<bool> seen(n(), false);
    std::vector<std::size_t> queue{id(w.initial, 0)};
    seen[queue.front()] = true;
    std::vector<std::size_t> succ;
    while (!queue.empty()) {
      std::size_t x = queue.back();
      queue.pop_back();
      successors(x, succ);
      for (std::size_t y : succ)
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
    }
    return seen;
  }
};

// Cycle search one: iterative Tarjan over the subgraph of states with
// priority at least p; a non-trivial strongly connected component that
// contains a priority-p state closes an accepting cycle.
inline bool cycle_with_min_priority_scc(const LassoProduct& prod,
                                        const std::vector<bool>& alive,
                                        unsigned p) {
  const std::size_t n = prod.n();
  std::vector<std::size_t> index(n, no_move), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  struct Frame {
    std::size_t x;
    std::size_t child = 0;
    std::vector<std::size_t> succ;
  };
  auto keep = [&](std::size_t x) {
    return alive[x] && prod.w.priority[prod.state(x)] >= p;
  };

  for (std::size_t root = 0; root < n; ++root) {
    if (!keep(root) || index[root] != no_move) continue;
    std::vector<Frame> frames;
    frames.push_back({root});
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child == 0) {
        index[f.x] = low[f.x] = counter++;
        stack.push_back(f.x);
        on_stack[f.x] = true;
        prod.successors(f.x, f.succ);
        std::erase_if(f.succ, [&](std::size_t y) { return !keep(y); });
      }
      if (f.child < f.succ.size()) {
        std::size_t y = f.succ[f.child++];
        if (index[y] == no_move) {
          frames.push_back({y});
        } else if (on_stack[y]) {
          low[f.x] = std::min(low[f.x], index[y]);
        }
      } else {
        if (low[f.x] == index[f.x]) {
          std::vector<std::size_t> comp;
          for (;;) {
            std::size_t y = stack.back();
            stack.pop_back();
            on_stack[y] = false;
            comp.push_back(y);
            if (y == f.x) break;
          }
          bool internal_edge = comp.size() > 1;
          if (!internal_edge) {
            std::vector<std::size_t> succ;
            prod.successors(comp[0], succ);
            internal_edge = std::ranges::count(succ, comp[0]) > 0;
          }
          if (internal_edge) {
            for (std::size_t y : comp)
              if (prod.w.priority[prod.state(y)] == p) return true;
          }
        }
        std::size_t x = f.x;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().x] = std::min(low[frames.back().x], low[x]);
      }
    }
  }
  return false;
}

// Cycle search two: breadth-first, per candidate anchor.  An accepting
// cycle exists iff some reachable priority-p state can reach itself
// through states of priority at least p.
inline bool cycle_with_min_priority_bfs(const LassoProduct& prod,
                                        const std::vector<bool>& alive,
                                        unsigned p) {
  const std::size_t n = prod.n();
  auto keep = [&](std::size_t x) {
    return alive[x] && prod.w.priority[prod.state(x)] >= p;
  };
  std::vector<std::size_t> succ;
  for (std::size_t anchor = 0; anchor < n; ++anchor) {
    if (!keep(anchor) || prod.w.priority[prod.state(anchor)] != p) continue;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> queue;
    prod.successors(anchor, succ);
    for (std::size_t y : succ)
      if (keep(y) && !seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t x = queue[head];
      if (x == anchor) break;
      prod.successors(x, succ);
      for (std::size_t y : succ)
        if (keep(y) && !seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
    }
    if (seen[anchor]) return true;
  }
  return false;
}

}  // namespace detail

// True iff the word automaton accepts stem·loop^ω under min-parity.
inline bool lasso_accepts(const WordAutomaton& w,
                          const std::vector<Letter>& stem,
                          const std::vector<Letter>& loop) {
  detail::LassoProduct prod(w, stem, loop);
  std::vector<bool> alive = prod.reachable();
  for (unsigned p = 0; p <= w.max_priority(); p += 2)
    if (detail::cycle_with_min_priority_scc(prod, alive, p)) return true;
  return false;
}

// Independent implementation used to cross-check lasso_accepts.
inline bool lasso_accepts_bfs(const WordAutomaton& w,
                              const std::vector<Letter>& stem,
                              const std::vector<Letter>& loop) {
  detail::LassoProduct prod(w, stem, loop);
  std::vector<bool> alive = prod.reachable();
  for (unsigned p = 0; p <= w.max_priority(); p += 2)
    if (detail::cycle_with_min_priority_bfs(prod, alive, p)) return true;
  return false;
}

}  // namespace euta
