#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "doomsday/errors.hpp"
#include "doomsday/region.hpp"

namespace doomsday {

/// n-player turn-based game graph with a total transition table.
/// States and actions are dense integer ids; players are 1..n_players.
struct Arena {
  int n_players = 1;
  int init = 0;
  std::vector<int> owner;                // state -> player in 1..n_players
  std::vector<std::string> actions;      // index = action id
  std::vector<std::string> state_names;  // optional; empty or per-state
  std::vector<int> delta_tab;            // delta_tab[s * n_actions + a]

  int n_states() const { return static_cast<int>(owner.size()); }
  int n_actions() const { return static_cast<int>(actions.size()); }
  int step(int s, int a) const { return delta_tab[s * n_actions() + a]; }

  /// All states owned by player p (1-based).
  Region states_of(int p) const;

  /// Throws on any structural violation (totality, owner range, init).
  void validate() const;
};

/// Finite path; |actions| == |states| - 1 and each step obeys delta.
/// states[0] need not be the arena's initial state.
struct PlayPrefix {
  std::vector<int> states;
  std::vector<int> actions;
  int last() const { return states.back(); }
  size_t length() const { return actions.size(); }
};

/// Ultimately periodic play: stem from the initial state, then the cycle
/// repeated forever.  cycle.states.front() == stem.states.back() and the
/// cycle is closed (cycle.states.back() == cycle.states.front()), with at
/// least one transition.
struct Lasso {
  PlayPrefix stem;
  PlayPrefix cycle;
};

/// Checks path consistency against the arena; throws MalformedWitness.
void validate_prefix(const Arena& a, const PlayPrefix& p);
void validate_lasso(const Arena& a, const Lasso& l);

/// Same arena with a different initial state.
Arena rebase(const Arena& a, int s);

/// Plain digraph on a subset of arena states; duplicate edges collapsed.
/// Not total: used for path/SCC search only.
struct Digraph {
  Region verts;
  std::vector<std::vector<int>> succ;  // indexed by state id; empty outside verts
  int n_states() const { return static_cast<int>(succ.size()); }
};

Digraph restrict_graph(const Arena& a, const Region& r);

/// Smallest action id sending s to t; -1 if none.
int action_for(const Arena& a, int s, int t);

/// Deterministic pseudo-random arena; every player owns >= 1 state when
/// n_states >= n_players.
Arena random_arena(int n_states, int n_players, int n_actions, uint64_t seed);

/// Deterministic random arena whose transitions respect the predefined
/// playing order: successors of a player-i state belong to player
/// (i mod n)+1.  Requires n_states >= n_players.
Arena random_round_robin_arena(int n_states, int n_players, int n_actions,
                               uint64_t seed);

} // namespace doomsday
