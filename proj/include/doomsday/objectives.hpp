#pragma once

#include <string>
#include <vector>

#include "doomsday/arena.hpp"
#include "doomsday/region.hpp"

namespace doomsday {

enum class ObjClass { Safety, Reach, Buchi, CoBuchi, Parity };

const char* class_name(ObjClass c);
ObjClass class_from_name(const std::string& s);

/// One player's objective.  The four set-based classes use `target`;
/// parity uses `priority` (total map state -> 0..d).  Parity convention is
/// MIN-EVEN: a play is winning iff the minimal priority seen infinitely
/// often is even.
struct Objective {
  ObjClass cls = ObjClass::Safety;
  Region target;
  std::vector<int> priority;
};

/// One objective per player, all of the same class.
struct ObjectiveProfile {
  ObjClass cls = ObjClass::Safety;
  std::vector<Objective> players;  // players[i] is player i+1's objective

  int n_players() const { return static_cast<int>(players.size()); }
  const Objective& of(int player) const { return players[player - 1]; }

  /// Length/uniform-class/range checks; throws MixedClasses or BadParams.
  void validate(const Arena& a) const;
};

/// States appearing at least once on the play.
Region visit_set(const Lasso& l, int n_states);

/// States appearing infinitely often (the cycle states).
Region inf_set(const Lasso& l, int n_states);

bool eval_lasso(const Lasso& l, const Objective& o);

/// eval_lasso after dropping the first k stem transitions; must equal
/// eval_lasso(l, o) for tail classes.  Throws BadShift.
bool tail_shift_check(const Lasso& l, const Objective& o, int k);

} // namespace doomsday
