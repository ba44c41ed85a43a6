#pragma once

#include "doomsday/arena.hpp"
#include "doomsday/fmstrategy.hpp"
#include "doomsday/objectives.hpp"
#include "doomsday/zerosum.hpp"

namespace doomsday {

/// Size gates for the exponential constructions.
struct Limits {
  int lar_alphabet_bound = 10;  // distinct priority tuples for the parity path
  int player_bit_bound = 12;    // monotone bit vectors (safety, imperfect)
  int target_bound = 12;        // generalized reachability memory
};

/// Region from which player i alone can force "own objective holds, or every
/// player's objective fails", plus a finite-memory strategy witnessing it.
/// The strategy may be entered at any region state s with memory
/// entry_memory[s] (classes whose memory records facts about the past:
/// monotone bits, round counter, appearance record, attractor mode).
struct RetaliationResult {
  Region region;
  FiniteMemoryStrategy strategy;
  std::vector<int> entry_memory;  // per state
};

RetaliationResult retaliation_buchi(const Arena& a,
                                    const ObjectiveProfile& profile, int i);
RetaliationResult retaliation_cobuchi(const Arena& a,
                                      const ObjectiveProfile& profile, int i);
RetaliationResult retaliation_parity(const Arena& a,
                                     const ObjectiveProfile& profile, int i,
                                     const Limits& lim = {});
RetaliationResult retaliation_reach(const Arena& a,
                                    const ObjectiveProfile& profile, int i);
RetaliationResult retaliation_safety(const Arena& a,
                                     const ObjectiveProfile& profile, int i,
                                     const Limits& lim = {});

/// Dispatch by profile class.
RetaliationResult retaliation(const Arena& a, const ObjectiveProfile& profile,
                              int i, const Limits& lim = {});

} // namespace doomsday
