#pragma once

#include <optional>

#include "doomsday/objectives.hpp"
#include "doomsday/retaliation.hpp"

namespace doomsday {

/// Decision with the class-specific witness: a lasso (tail and safety
/// classes, and the imperfect-information product search), or a finite path
/// to a pivot state from which everyone can force their own reachability
/// target.
struct DeDecision {
  bool exists = false;
  std::optional<Lasso> witness_lasso;
  std::optional<PlayPrefix> witness_path;
  int pivot_state = -1;
  int pivot_player = -1;          // some i with pivot in T_i
  std::vector<Region> regions;    // regions[i-1] = R_i
  double regions_seconds = 0;     // wall clock spent computing the R_i
  double search_seconds = 0;      // wall clock spent on the emptiness search
};

DeDecision decide_de_tail(const Arena& a, const ObjectiveProfile& profile,
                          const Limits& lim = {});
DeDecision decide_de_reach(const Arena& a, const ObjectiveProfile& profile);
DeDecision decide_de_safety(const Arena& a, const ObjectiveProfile& profile,
                            const Limits& lim = {});

/// True iff every player can force a visit to their own target from s.
bool check_pivot(const Arena& a, const ObjectiveProfile& profile, int s);

/// Dispatch by profile class.
DeDecision decide_de(const Arena& a, const ObjectiveProfile& profile,
                     const Limits& lim = {});

} // namespace doomsday
