#pragma once

#include <vector>

#include "doomsday/de_perfect.hpp"
#include "doomsday/fmstrategy.hpp"

namespace doomsday {

/// Full strategy profile witnessing an equilibrium: the agreed main play and,
/// per player, the composed strategy "follow the main play while the state
/// history matches it, and on the first mismatch enter retaliation mode
/// permanently" (for the reachability class, with the additional switch to
/// the own-target attractor strategy at the pivot).
struct DoomsdayWitness {
  Lasso main;
  std::vector<FiniteMemoryStrategy> strategies;  // per player, composed
};

/// Assembles the witness from a positive decision; recomputes the
/// retaliation certificates.  Throws NoEquilibrium on a negative decision.
DoomsdayWitness synthesize_profile(const Arena& a,
                                   const ObjectiveProfile& profile,
                                   const DeDecision& d, const Limits& lim = {});

struct BadLasso {
  int player;   // i whose guarantee fails
  int against;  // j whose objective the bad play satisfies
  Lasso lasso;  // violates phi_i, satisfies phi_j
};

struct WitnessReport {
  bool cond1 = false;
  std::vector<char> cond2;  // per player
  std::vector<BadLasso> counterexamples;
  bool ok() const;
};

/// Independent verification by product model checking: cond1 evaluates the
/// main play against every objective; cond2(i) fixes player i's composed
/// strategy in the arena and searches the product for a lasso violating
/// phi_i while satisfying some phi_j.  Reads only the witness tables, never
/// the decision internals.
WitnessReport check_witness(const Arena& a, const ObjectiveProfile& profile,
                            const DoomsdayWitness& w);

} // namespace doomsday
