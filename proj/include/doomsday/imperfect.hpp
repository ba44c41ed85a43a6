#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "doomsday/de_perfect.hpp"
#include "doomsday/objectives.hpp"

namespace doomsday {

/// Arena plus one observation partition per player.  Players move in the
/// predefined round-robin order: successors of player-i states belong to
/// player (i mod n)+1.
struct ImperfectArena {
  Arena base;
  std::vector<std::vector<std::vector<int>>> obs;  // [player-1][block] = state ids

  int n_blocks(int player) const {
    return static_cast<int>(obs[player - 1].size());
  }
  int block_of(int player, int s) const { return block_tab[player - 1][s]; }

  /// Checks partitions and round-robin ownership; fills the lookup tables.
  void validate();

  std::vector<std::vector<int>> block_tab;  // [player-1][state] -> block id
};

/// One observation step: the block of the current state and the action
/// played there, hidden (-1, i.e. tau) unless the state is the observer's.
struct ObsLetter {
  int block;
  int action;  // -1 = tau
  auto operator<=>(const ObsLetter&) const = default;
};

std::vector<ObsLetter> obs_of_prefix(const ImperfectArena& ia, int player,
                                     const PlayPrefix& p);

/// Observation of a lasso: letters for the stem and for one cycle round.
struct ObsLasso {
  std::vector<ObsLetter> stem;
  std::vector<ObsLetter> cycle;
};
ObsLasso obs_of_lasso(const ImperfectArena& ia, int player, const Lasso& l);

/// Deterministic automaton over observation letters accepting exactly the
/// doomsday-compatible sequences for one player (safety and reachability
/// profiles).  Built by the subset construction over (state, monotone bit
/// vector) threads; the existential bad-run automaton is co-Buchi over the
/// monotone bits and is determinized by the breakpoint construction, so the
/// dual acceptance is a single Streett pair (all vertices, breakpoint
/// transitions), i.e. "infinitely many breakpoints".
struct DoomsdayAutomaton {
  struct Vertex {
    std::vector<std::pair<int, int>> belief;      // (state, mask), sorted
    std::vector<std::pair<int, int>> breakpoint;  // subset of belief in C
  };
  struct Trans {
    ObsLetter letter;
    int to;
    bool reset;  // breakpoint fired on this transition
  };
  std::vector<Vertex> verts;
  std::vector<std::vector<Trans>> trans;  // sorted by letter
  int init = 0;
  int player = 0;
  int n_masks = 0;

  int size() const { return static_cast<int>(verts.size()); }
  /// Transition on a letter; -2 if the letter is infeasible here.
  int step(int v, const ObsLetter& l, bool* reset = nullptr) const;
};

DoomsdayAutomaton build_doomsday_automaton(const ImperfectArena& ia,
                                           const ObjectiveProfile& profile,
                                           int i, const Limits& lim = {});

/// The doomsday automaton plus the winning region of the two-player
/// observation/action game played on it: a prefix ending with block o is
/// good for retaliation iff its run admits a transition labelled (o, *) into
/// `win`.
struct RetaliationAutomaton {
  const DoomsdayAutomaton* automaton;
  Region win;

  bool prefix_good(int run_state, int next_block) const;
};

RetaliationAutomaton build_retaliation_automaton(const ImperfectArena& ia,
                                                 const ObjectiveProfile& profile,
                                                 int i,
                                                 const DoomsdayAutomaton& d);

/// Existence of a doomsday equilibrium under observation-based strategies,
/// for safety and reachability profiles; other classes throw
/// UnsupportedClass.  The witness lasso is the arena projection of the
/// accepting product lasso.
DeDecision decide_de_imperfect(const ImperfectArena& ia,
                               const ObjectiveProfile& profile,
                               const Limits& lim = {});

} // namespace doomsday
