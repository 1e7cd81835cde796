#pragma once

// Strategy-enumeration reference solver for small parity games, plus a
// deterministic replay used to certify solver strategies.

#include <vector>

#include "euta/parity_game.hh"
#include "gen.hh"

namespace euta::oracle {

// Every memoryless strategy of one player: a successor per owned state
// that has at least one edge, no_move elsewhere.
inline std::vector<std::vector<std::size_t>> all_strategies(
    const ParityGame& g, int player) {
  std::vector<std::size_t> owned;
  for (std::size_t s = 0; s < g.n_states(); ++s)
    if (g.owner[s] == player && !g.succ[s].empty()) owned.push_back(s);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> choice(owned.size(), 0);
  for (;;) {
    std::vector<std::size_t> strat(g.n_states(), no_move);
    for (std::size_t i = 0; i < owned.size(); ++i)
      strat[owned[i]] = g.succ[owned[i]][choice[i]];
    out.push_back(std::move(strat));
    std::size_t i = 0;
    while (i < owned.size()) {
      if (++choice[i] < g.succ[owned[i]].size()) break;
      choice[i] = 0;
      ++i;
    }
    if (i == owned.size()) break;
  }
  return out;
}

// Fixed strategies make the play deterministic: it either blocks one
// player or enters a cycle whose least priority decides.
inline int play_winner(const ParityGame& g, std::size_t start,
                       const std::vector<std::size_t>& s0,
                       const std::vector<std::size_t>& s1) {
  std::vector<std::size_t> first_seen(g.n_states(), no_move);
  std::vector<std::size_t> trail;
  std::size_t cur = start;
  for (;;) {
    if (first_seen[cur] != no_move) {
      unsigned best = g.priority[cur];
      for (std::size_t i = first_seen[cur]; i < trail.size(); ++i)
        best = std::min(best, g.priority[trail[i]]);
      return static_cast<int>(best % 2);
    }
    first_seen[cur] = trail.size();
    trail.push_back(cur);
    std::size_t nxt = g.owner[cur] == 0 ? s0[cur] : s1[cur];
    if (nxt == no_move) return 1 - g.owner[cur];
    cur = nxt;
  }
}

inline std::vector<int> brute_winners(const ParityGame& g) {
  auto strats0 = all_strategies(g, 0);
  auto strats1 = all_strategies(g, 1);
  std::vector<int> winner(g.n_states(), 1);
  for (std::size_t s = 0; s < g.n_states(); ++s) {
    bool p0_wins = false;
    for (const auto& s0 : strats0) {
      bool beats_all = true;
      for (const auto& s1 : strats1)
        if (play_winner(g, s, s0, s1) != 0) {
          beats_all = false;
          break;
        }
      if (beats_all) {
        p0_wins = true;
        break;
      }
    }
    winner[s] = p0_wins ? 0 : 1;
  }
  return winner;
}

// A returned strategy must win from every state of its region against
// every opposing memoryless strategy.
inline bool certify(const ParityGame& g, const GameSolution& sol) {
  auto strats0 = all_strategies(g, 0);
  auto strats1 = all_strategies(g, 1);
  for (std::size_t s = 0; s < g.n_states(); ++s) {
    if (sol.winner[s] == 0) {
      for (const auto& s1 : strats1)
        if (play_winner(g, s, sol.strategy0, s1) != 0) return false;
    } else {
      for (const auto& s0 : strats0)
        if (play_winner(g, s, s0, sol.strategy1) != 1) return false;
    }
  }
  return true;
}

inline ParityGame random_game(gen::Rng& rng) {
  ParityGame g;
  int n = gen::pick(rng, 3, 7);
  for (int s = 0; s < n; ++s)
    g.add_state(gen::pick(rng, 0, 1),
                static_cast<unsigned>(gen::pick(rng, 0, 2)));
  for (int s = 0; s < n; ++s) {
    if (gen::pick(rng, 0, 9) == 0) continue;  // occasional dead end
    int degree = gen::pick(rng, 1, 2);
    for (int e = 0; e < degree; ++e)
      g.add_edge(static_cast<std::size_t>(s),
                 static_cast<std::size_t>(gen::pick(rng, 0, n - 1)));
  }
  return g;
}

}  // namespace euta::oracle
