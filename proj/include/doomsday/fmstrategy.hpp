#pragma once

#include <vector>

#include "doomsday/errors.hpp"

namespace doomsday {

/// Finite-memory strategy as explicit tables.  Memory updates on every
/// observed transition, keyed by the state just entered; detection of
/// deviations is state-based, so the observed action is not needed.
/// m_0 belongs to the play's first state; m_{k+1} = update(m_k, rho(k+1)).
/// act(m, s) is defined wherever the owner may be asked to move.
struct FiniteMemoryStrategy {
  int n_memory = 1;
  int n_states = 0;
  int init_memory = 0;
  std::vector<int> act_tab;     // [m * n_states + s] -> action, or -1
  std::vector<int> update_tab;  // [m * n_states + s] -> next memory, or -1

  void resize(int memories, int states) {
    n_memory = memories;
    n_states = states;
    act_tab.assign(static_cast<size_t>(memories) * states, -1);
    update_tab.assign(static_cast<size_t>(memories) * states, -1);
  }
  int act(int m, int s) const { return act_tab[m * n_states + s]; }
  int update(int m, int s) const { return update_tab[m * n_states + s]; }
  void set_act(int m, int s, int a) { act_tab[m * n_states + s] = a; }
  void set_update(int m, int s, int m2) { update_tab[m * n_states + s] = m2; }
};

} // namespace doomsday
