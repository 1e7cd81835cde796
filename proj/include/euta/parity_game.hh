#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace euta {

// Turn-based two-player parity game, min-parity convention: an infinite
// play is won by Player 0 iff the least priority seen infinitely often
// is even; a blocked player loses immediately.
struct ParityGame {
  std::vector<int> owner;  // 0 or 1 per state
  std::vector<std::vector<std::size_t>> succ;
  std::vector<unsigned> priority;
  std::vector<std::string> label;  // optional, for DOT export and tracing

  std::size_t n_states() const { return owner.size(); }

  std::size_t add_state(int own, unsigned prio, std::string lab = {}) {
    owner.push_back(own);
    succ.emplace_back();
    priority.push_back(prio);
    label.push_back(std::move(lab));
    return owner.size() - 1;
  }

  void add_edge(std::size_t from, std::size_t to) { succ[from].push_back(to); }
};

inline constexpr std::size_t no_move = static_cast<std::size_t>(-1);

struct GameSolution {
  std::vector<int> winner;             // 0 or 1 per state
  std::vector<std::size_t> strategy0;  // successor chosen by Player 0, or no_move
  std::vector<std::size_t> strategy1;
};

namespace detail {

class ZielonkaSolver {
public:
  explicit ZielonkaSolver(const ParityGame& g) : g_(g) {
    // Work in max-parity internally: reflect priorities at an even top so
    // that parity is preserved and min becomes max.
    unsigned top = 0;
    for (unsigned p : g.priority) top = std::max(top, p);
    if (top % 2) ++top;
    reflected_.reserve(g.n_states());
    for (unsigned p : g.priority) reflected_.push_back(top - p);
    sol_.winner.assign(g.n_states(), 0);
    sol_.strategy0.assign(g.n_states(), no_move);
    sol_.strategy1.assign(g.n_states(), no_move);
  }

  GameSolution run() {
    std::vector<bool> alive(g_.n_states(), true);
    solve(alive);
    // Fill arbitrary moves for owned states in their losing region so
    // strategies are total on states with outgoing edges.
    for (std::size_t s = 0; s < g_.n_states(); ++s) {
      if (g_.succ[s].empty()) continue;
      auto& strat = g_.owner[s] == 0 ? sol_.strategy0 : sol_.strategy1;
      if (strat[s] == no_move) strat[s] = g_.succ[s].front();
    }
    return std::move(sol_);
  }

private:
  std::vector<std::size_t>& strat(int player) {
    return player == 0 ? sol_.strategy0 : sol_.strategy1;
  }

  // States of `set` from which `player` can force reaching `target`;
  // records the forcing move for player-owned states outside the target.
  std::vector<bool> attractor(int player, const std::vector<bool>& target,
                              const std::vector<bool>& set) {
    std::vector<bool> in = target;
    std::vector<std::size_t> queue;
    std::vector<std::size_t> pending(g_.n_states(), 0);
    for (std::size_t s = 0; s < g_.n_states(); ++s) {
      if (!set[s]) continue;
      if (in[s]) queue.push_back(s);
      std::size_t n = 0;
      for (std::size_t t : g_.succ[s])
        if (set[t]) ++n;
      pending[s] = n;
    }
    std::vector<std::vector<std::size_t>> pred(g_.n_states());
    for (std::size_t s = 0; s < g_.n_states(); ++s) {
      if (!set[s]) continue;
      for (std::size_t t : g_.succ[s])
        if (set[t]) pred[t].push_back(s);
    }
    while (!queue.empty()) {
      std::size_t t = queue.back();
      queue.pop_back();
      for (std::size_t s : pred[t]) {
        if (in[s]) continue;
        if (g_.owner[s] == player) {
          in[s] = true;
          strat(player)[s] = t;
          queue.push_back(s);
        } else if (--pending[s] == 0) {
          in[s] = true;
          queue.push_back(s);
        }
      }
    }
    return in;
  }

  static bool none(const std::vector<bool>& v) {
    return std::ranges::none_of(v, [](bool b) { return b; });
  }

  void remove(std::vector<bool>& set, const std::vector<bool>& gone) {
    for (std::size_t s = 0; s < set.size(); ++s)
      if (gone[s]) set[s] = false;
  }

  void solve(std::vector<bool> set) {
    // Blocked states lose for their owner; the winner attracts to them.
    for (;;) {
      std::vector<bool> dead0(g_.n_states(), false), dead1(g_.n_states(), false);
      bool any = false;
      for (std::size_t s = 0; s < g_.n_states(); ++s) {
        if (!set[s]) continue;
        bool blocked = true;
        for (std::size_t t : g_.succ[s])
          if (set[t]) { blocked = false; break; }
        if (!blocked) continue;
        (g_.owner[s] == 0 ? dead0 : dead1)[s] = true;
        any = true;
      }
      if (!any) break;
      if (!none(dead0)) {
        std::vector<bool> a = attractor(1, dead0, set);
        for (std::size_t s = 0; s < g_.n_states(); ++s)
          if (a[s]) sol_.winner[s] = 1;
        remove(set, a);
      }
      if (!none(dead1)) {
        // dead1 may contain states already removed above; re-check.
        std::vector<bool> still(g_.n_states(), false);
        bool left = false;
        for (std::size_t s = 0; s < g_.n_states(); ++s)
          if (dead1[s] && set[s]) { still[s] = true; left = true; }
        if (left) {
          std::vector<bool> a = attractor(0, still, set);
          for (std::size_t s = 0; s < g_.n_states(); ++s)
            if (a[s]) sol_.winner[s] = 0;
          remove(set, a);
        }
      }
    }
    if (none(set)) return;

    unsigned d = 0;
    for (std::size_t s = 0; s < g_.n_states(); ++s)
      if (set[s]) d = std::max(d, reflected_[s]);
    const int liker = static_cast<int>(d % 2);

    std::vector<bool> top(g_.n_states(), false);
    for (std::size_t s = 0; s < g_.n_states(); ++s)
      if (set[s] && reflected_[s] == d) top[s] = true;

    std::vector<bool> a = attractor(liker, top, set);
    std::vector<bool> rest = set;
    remove(rest, a);
    solve(rest);

    std::vector<bool> opp_win(g_.n_states(), false);
    bool opp_any = false;
    for (std::size_t s = 0; s < g_.n_states(); ++s)
      if (rest[s] && sol_.winner[s] == 1 - liker) { opp_win[s] = true; opp_any = true; }

    if (!opp_any) {
      for (std::size_t s = 0; s < g_.n_states(); ++s)
        if (set[s]) sol_.winner[s] = liker;
      // Top-priority states owned by the liking player may move anywhere
      // inside the (entirely winning) subgame.
      for (std::size_t s = 0; s < g_.n_states(); ++s) {
        if (!top[s] || g_.owner[s] != liker) continue;
        for (std::size_t t : g_.succ[s])
          if (set[t]) { strat(liker)[s] = t; break; }
      }
      return;
    }

    std::vector<bool> b = attractor(1 - liker, opp_win, set);
    for (std::size_t s = 0; s < g_.n_states(); ++s)
      if (b[s]) sol_.winner[s] = 1 - liker;
    std::vector<bool> remaining = set;
    remove(remaining, b);
    solve(remaining);
  }

  const ParityGame& g_;
  std::vector<unsigned> reflected_;
  GameSolution sol_;
};

}  // namespace detail

inline GameSolution solve(const ParityGame& g) {
  return detail::ZielonkaSolver(g).run();
}

inline std::string to_dot(const ParityGame& g) {
  std::string out = "digraph game {\n";
  for (std::size_t s = 0; s < g.n_states(); ++s) {
    out += "  n" + std::to_string(s) + " [shape=" +
           (g.owner[s] == 0 ? "box" : "ellipse") + ", label=\"" +
           (g.label.empty() || g.label[s].empty() ? std::to_string(s)
                                                  : g.label[s]) +
           "\\np" + std::to_string(g.priority[s]) + "\"];\n";
  }
  for (std::size_t s = 0; s < g.n_states(); ++s)
    for (std::size_t t : g.succ[s])
      out += "  n" + std::to_string(s) + " -> n" + std::to_string(t) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace euta
