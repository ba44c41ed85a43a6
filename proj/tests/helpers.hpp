#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "doomsday/arena.hpp"
#include "doomsday/fmstrategy.hpp"
#include "doomsday/objectives.hpp"
#include "doomsday/region.hpp"

namespace doomsday::testing {

/// Two-state arena: state 0 owned by player 1, state 1 by player 2,
/// actions a/b, delta(0,a)=1, delta(0,b)=0, delta(1,a)=0, delta(1,b)=1.
inline Arena a2() {
  Arena a;
  a.n_players = 2;
  a.owner = {1, 2};
  a.init = 0;
  a.actions = {"a", "b"};
  a.delta_tab = {1, 0, 0, 1};
  a.validate();
  return a;
}

/// The three-country standoff: a safe 3-cycle, an unsafe forced 3-cycle,
/// and an attack edge from each safe state into the unsafe part.
inline Arena standoff() {
  Arena a;
  a.n_players = 3;
  a.owner = {1, 2, 3, 2, 3, 1};
  a.init = 0;
  a.actions = {"next", "attack"};
  a.state_names = {"g1", "g2", "g3", "b1", "b2", "b3"};
  a.delta_tab = {
      1, 3,  // g1
      2, 4,  // g2
      0, 5,  // g3
      4, 4,  // b1
      5, 5,  // b2
      3, 3,  // b3
  };
  a.validate();
  return a;
}

inline ObjectiveProfile standoff_profile() {
  Arena a = standoff();
  ObjectiveProfile p;
  p.cls = ObjClass::Safety;
  p.players.push_back({ObjClass::Safety, region_from(6, {0, 1, 2, 3, 4}), {}});
  p.players.push_back({ObjClass::Safety, region_from(6, {0, 1, 2, 4, 5}), {}});
  p.players.push_back({ObjClass::Safety, region_from(6, {0, 1, 2, 3, 5}), {}});
  return p;
}

/// Three-player information-exchange ring: each hub state s_i lets its owner
/// either take a two-state detour through the other players' happy states or
/// move on to the next hub.
///   0=s1(P1) 1=s2(P2) 2=s3(P3); detours: s1->3(P2*)->4(P3*)->s1,
///   s2->5(P3*)->6(P1*)->s2, s3->7(P1*)->8(P2*)->s3 (*happy for the shape's
///   player).  T_1={6,7}, T_2={3,8}, T_3={4,5}.
inline Arena exchange_ring() {
  Arena a;
  a.n_players = 3;
  a.owner = {1, 2, 3, 2, 3, 3, 1, 1, 2};
  a.init = 0;
  a.actions = {"send", "skip"};
  a.delta_tab = {
      3, 1,  // s1: detour or pass to s2
      5, 2,  // s2
      7, 0,  // s3
      4, 4,  // detour states are forced
      0, 0,  //
      6, 6,  //
      1, 1,  //
      8, 8,  //
      2, 2,  //
  };
  a.validate();
  return a;
}

inline ObjectiveProfile exchange_ring_profile() {
  ObjectiveProfile p;
  p.cls = ObjClass::Buchi;
  p.players.push_back({ObjClass::Buchi, region_from(9, {6, 7}), {}});
  p.players.push_back({ObjClass::Buchi, region_from(9, {3, 8}), {}});
  p.players.push_back({ObjClass::Buchi, region_from(9, {4, 5}), {}});
  return p;
}

inline Lasso make_lasso(std::vector<int> stem_states,
                        std::vector<int> stem_actions,
                        std::vector<int> cycle_states,
                        std::vector<int> cycle_actions) {
  Lasso l;
  l.stem.states = std::move(stem_states);
  l.stem.actions = std::move(stem_actions);
  l.cycle.states = std::move(cycle_states);
  l.cycle.actions = std::move(cycle_actions);
  return l;
}

/// Random ultimately periodic play of the arena (walk until a state repeats).
inline Lasso random_lasso(const Arena& a, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> act(0, a.n_actions() - 1);
  std::vector<int> states{a.init}, actions;
  std::vector<int> pos(a.n_states(), -1);
  pos[a.init] = 0;
  while (true) {
    int k = act(rng);
    int t = a.step(states.back(), k);
    actions.push_back(k);
    if (pos[t] >= 0) {
      Lasso l;
      int p = pos[t];
      l.stem.states.assign(states.begin(), states.begin() + p + 1);
      l.stem.actions.assign(actions.begin(), actions.begin() + p);
      l.cycle.states.assign(states.begin() + p, states.end());
      l.cycle.states.push_back(t);
      l.cycle.actions.assign(actions.begin() + p, actions.end());
      return l;
    }
    states.push_back(t);
    pos[t] = static_cast<int>(states.size()) - 1;
  }
}

/// All lassos with bounded stem/cycle length (for exhaustive small checks).
inline std::vector<Lasso> all_lassos(const Arena& a, int max_stem,
                                     int max_cycle) {
  std::vector<Lasso> out;
  std::function<void(std::vector<int>&, std::vector<int>&)> extend_cycle;
  std::function<void(std::vector<int>&, std::vector<int>&)> extend_stem =
      [&](std::vector<int>& ss, std::vector<int>& sa) {
        // with the current stem, enumerate cycles from its last state
        std::vector<int> cs{ss.back()}, ca;
        std::function<void()> rec = [&]() {
          if (!ca.empty() && cs.back() == cs.front()) {
            Lasso l;
            l.stem.states = ss;
            l.stem.actions = sa;
            l.cycle.states = cs;
            l.cycle.actions = ca;
            out.push_back(l);
          }
          if (static_cast<int>(ca.size()) >= max_cycle)
            return;
          for (int k = 0; k < a.n_actions(); ++k) {
            cs.push_back(a.step(cs.back(), k));
            ca.push_back(k);
            rec();
            cs.pop_back();
            ca.pop_back();
          }
        };
        rec();
        if (static_cast<int>(sa.size()) >= max_stem)
          return;
        for (int k = 0; k < a.n_actions(); ++k) {
          ss.push_back(a.step(ss.back(), k));
          sa.push_back(k);
          extend_stem(ss, sa);
          ss.pop_back();
          sa.pop_back();
        }
      };
  std::vector<int> ss{a.init}, sa;
  extend_stem(ss, sa);
  return out;
}

/// Arena x fixed finite-memory strategy of one player: reachable (state,
/// memory) vertices with all adversary moves.
struct FmsProduct {
  std::vector<std::pair<int, int>> keys;
  std::vector<std::vector<int>> adj;
};

inline FmsProduct fms_product(const Arena& a, int player,
                              const FiniteMemoryStrategy& f, int start_state,
                              int start_memory) {
  FmsProduct p;
  std::map<std::pair<int, int>, int> ids;
  auto vertex = [&](int s, int m) {
    auto it = ids.find({s, m});
    if (it != ids.end())
      return it->second;
    int v = static_cast<int>(p.keys.size());
    ids.emplace(std::make_pair(s, m), v);
    p.keys.emplace_back(s, m);
    p.adj.emplace_back();
    return v;
  };
  vertex(start_state, start_memory);
  for (size_t v = 0; v < p.keys.size(); ++v) {
    auto [s, m] = p.keys[v];
    std::vector<int> moves;
    if (a.owner[s] == player)
      moves.push_back(f.act(m, s));
    else
      for (int k = 0; k < a.n_actions(); ++k)
        moves.push_back(k);
    for (int k : moves) {
      if (k < 0 || k >= a.n_actions())
        throw std::runtime_error("strategy action out of range");
      int t = a.step(s, k);
      int m2 = f.update(m, t);
      if (m2 < 0)
        throw std::runtime_error("strategy memory update undefined");
      p.adj[v].push_back(vertex(t, m2));
    }
    std::sort(p.adj[v].begin(), p.adj[v].end());
    p.adj[v].erase(std::unique(p.adj[v].begin(), p.adj[v].end()),
                   p.adj[v].end());
  }
  return p;
}

} // namespace doomsday::testing
