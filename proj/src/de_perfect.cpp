#include "doomsday/de_perfect.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include "graph_util.hpp"

namespace doomsday {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

} // namespace

namespace {

PlayPrefix path_to_prefix(const Arena& a, const std::vector<int>& vs) {
  PlayPrefix p;
  p.states = vs;
  for (size_t k = 0; k + 1 < vs.size(); ++k)
    p.actions.push_back(action_for(a, vs[k], vs[k + 1]));
  return p;
}

/// Closed walk from waypoints[0] through each waypoint in order and back,
/// inside `allowed`; guaranteed >= 1 transition.
std::vector<int> thread_cycle(const std::vector<std::vector<int>>& succ,
                              const Region& allowed,
                              const std::vector<int>& waypoints) {
  std::vector<int> walk{waypoints.front()};
  auto extend = [&](int to) {
    auto path = bfs_path(succ, allowed, walk.back(), to);
    walk.insert(walk.end(), path.begin() + 1, path.end());
  };
  for (size_t k = 1; k < waypoints.size(); ++k)
    extend(waypoints[k]);
  extend(waypoints.front());
  if (walk.size() == 1) {
    // single waypoint: force one round trip through a successor
    int v = walk.front();
    for (int w : succ[v])
      if (allowed.test(w)) {
        walk.push_back(w);
        auto path = bfs_path(succ, allowed, w, v);
        walk.insert(walk.end(), path.begin() + 1, path.end());
        break;
      }
  }
  return walk;
}

Lasso assemble_lasso(const Arena& a, const std::vector<int>& stem,
                     const std::vector<int>& cycle) {
  Lasso l;
  l.stem = path_to_prefix(a, stem);
  l.cycle = path_to_prefix(a, cycle);
  return l;
}

/// Members of one component, ascending.
std::vector<int> comp_members(const SccResult& sccs, const Region& carrier,
                              int comp) {
  std::vector<int> out;
  for (auto v = carrier.find_first(); v != Region::npos;
       v = carrier.find_next(v))
    if (sccs.comp[v] == comp)
      out.push_back(static_cast<int>(v));
  return out;
}

bool comp_nontrivial(const std::vector<std::vector<int>>& succ,
                     const SccResult& sccs, const std::vector<int>& members) {
  if (members.size() > 1)
    return true;
  int v = members.front();
  return std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end();
}

/// Recursive conjunction-of-parity emptiness: a reachable set whose induced
/// subgraph is strongly connected and whose minimal priority is even for
/// every player, refined by removing minimal odd-priority states.
std::optional<std::vector<int>> good_parity_set(
    const Arena& a, const ObjectiveProfile& profile,
    const std::vector<std::vector<int>>& succ, const Region& cand) {
  auto sccs = scc_decompose(succ, cand);
  std::vector<int> first_member(sccs.count, -1);
  for (auto v = cand.find_first(); v != Region::npos; v = cand.find_next(v))
    if (first_member[sccs.comp[v]] < 0)
      first_member[sccs.comp[v]] = static_cast<int>(v);
  std::vector<int> order(sccs.count);
  for (int c = 0; c < sccs.count; ++c)
    order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return first_member[x] < first_member[y]; });
  for (int c : order) {
    auto members = comp_members(sccs, cand, c);
    if (!comp_nontrivial(succ, sccs, members))
      continue;
    int violating = -1, min_odd = -1;
    for (int i = 1; i <= a.n_players; ++i) {
      int m = INT32_MAX;
      for (int v : members)
        m = std::min(m, profile.of(i).priority[v]);
      if (m % 2 != 0) {
        violating = i;
        min_odd = m;
        break;
      }
    }
    if (violating < 0)
      return members;
    Region refined(cand.size());
    for (int v : members)
      if (profile.of(violating).priority[v] != min_odd)
        refined.set(v);
    if (auto sub = good_parity_set(a, profile, succ, refined))
      return sub;
  }
  return std::nullopt;
}

} // namespace

DeDecision decide_de_tail(const Arena& a, const ObjectiveProfile& profile,
                          const Limits& lim) {
  profile.validate(a);
  DeDecision d;
  auto t0 = std::chrono::steady_clock::now();
  Region inter(a.n_states());
  inter.set();
  for (int i = 1; i <= a.n_players; ++i) {
    auto r = retaliation(a, profile, i, lim);
    inter &= r.region;
    d.regions.push_back(std::move(r.region));
  }
  d.regions_seconds = seconds_since(t0);
  auto t1 = std::chrono::steady_clock::now();
  struct SearchTimer {
    DeDecision& d;
    std::chrono::steady_clock::time_point t;
    ~SearchTimer() { d.search_seconds = seconds_since(t); }
  } timer{d, t1};
  if (!inter.test(a.init))
    return d;
  Digraph g = restrict_graph(a, inter);
  Region reach = reachable_from(g.succ, inter, a.init);

  switch (profile.cls) {
    case ObjClass::Buchi: {
      auto sccs = scc_decompose(g.succ, reach);
      std::vector<int> first_member(sccs.count, -1);
      for (auto v = reach.find_first(); v != Region::npos;
           v = reach.find_next(v))
        if (first_member[sccs.comp[v]] < 0)
          first_member[sccs.comp[v]] = static_cast<int>(v);
      std::vector<int> order(sccs.count);
      for (int c = 0; c < sccs.count; ++c)
        order[c] = c;
      std::sort(order.begin(), order.end(), [&](int x, int y) {
        return first_member[x] < first_member[y];
      });
      for (int c : order) {
        auto members = comp_members(sccs, reach, c);
        if (!comp_nontrivial(g.succ, sccs, members))
          continue;
        std::vector<int> reps;
        bool all = true;
        for (int i = 1; i <= a.n_players && all; ++i) {
          int rep = -1;
          for (int v : members)
            if (profile.of(i).target.test(v)) {
              rep = v;
              break;
            }
          if (rep < 0)
            all = false;
          else
            reps.push_back(rep);
        }
        if (!all)
          continue;
        reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
        Region inside = region_from_ids(inter.size(), members);
        auto cycle = thread_cycle(g.succ, inside, reps);
        auto stem = bfs_path(g.succ, reach, a.init, reps.front());
        d.exists = true;
        d.witness_lasso = assemble_lasso(a, stem, cycle);
        return d;
      }
      return d;
    }
    case ObjClass::CoBuchi: {
      Region core = inter;
      for (const auto& o : profile.players)
        core &= o.target;
      Digraph h = restrict_graph(a, core);
      auto sccs = scc_decompose(h.succ, core);
      int best = -1;
      for (auto v = core.find_first(); v != Region::npos;
           v = core.find_next(v)) {
        int iv = static_cast<int>(v);
        if (reach.test(iv) && on_cycle(h.succ, core, sccs, iv)) {
          best = iv;
          break;
        }
      }
      if (best < 0)
        return d;
      auto stem = bfs_path(g.succ, reach, a.init, best);
      auto cycle = thread_cycle(h.succ, core, {best});
      d.exists = true;
      d.witness_lasso = assemble_lasso(a, stem, cycle);
      return d;
    }
    case ObjClass::Parity: {
      auto good = good_parity_set(a, profile, g.succ, reach);
      if (!good)
        return d;
      Region inside = region_from_ids(inter.size(), *good);
      auto cycle = thread_cycle(g.succ, inside, *good);
      auto stem = bfs_path(g.succ, reach, a.init, good->front());
      d.exists = true;
      d.witness_lasso = assemble_lasso(a, stem, cycle);
      return d;
    }
    default:
      raise(Err::BadParams, "decide_de_tail needs a tail-class profile");
  }
}

DeDecision decide_de_reach(const Arena& a, const ObjectiveProfile& profile) {
  profile.validate(a);
  if (profile.cls != ObjClass::Reach)
    raise(Err::BadParams, "decide_de_reach needs a reachability profile");
  DeDecision d;
  auto t0 = std::chrono::steady_clock::now();
  Region inter(a.n_states());
  inter.set();
  for (int j = 1; j <= a.n_players; ++j) {
    auto r = retaliation_reach(a, profile, j);
    inter &= r.region;
    d.regions.push_back(std::move(r.region));
  }
  d.regions_seconds = seconds_since(t0);
  auto t1 = std::chrono::steady_clock::now();
  struct SearchTimer {
    DeDecision& d;
    std::chrono::steady_clock::time_point t;
    ~SearchTimer() { d.search_seconds = seconds_since(t); }
  } timer{d, t1};
  Region pivots(a.n_states());
  pivots.set();
  for (int j = 1; j <= a.n_players; ++j)
    pivots &= attractor(coalition_lift(a, {j}), profile.of(j).target,
                        Side::Protagonist);
  if (!inter.test(a.init))
    return d;

  // BFS inside the joint retaliation region for a pivot
  Digraph g = restrict_graph(a, inter);
  std::vector<int> parent(a.n_states(), -2);
  parent[a.init] = -1;
  std::vector<int> queue{a.init};
  for (size_t q = 0; q < queue.size(); ++q) {
    int s = queue[q];
    bool in_some_target = false;
    int who = -1;
    for (int i = 1; i <= a.n_players && !in_some_target; ++i)
      if (profile.of(i).target.test(s)) {
        in_some_target = true;
        who = i;
      }
    if (in_some_target && pivots.test(s)) {
      std::vector<int> path{s};
      for (int x = parent[s]; x != -1; x = parent[x])
        path.push_back(x);
      std::reverse(path.begin(), path.end());
      d.exists = true;
      d.witness_path = path_to_prefix(a, path);
      d.pivot_state = s;
      d.pivot_player = who;
      return d;
    }
    for (int w : g.succ[s])
      if (parent[w] == -2) {
        parent[w] = s;
        queue.push_back(w);
      }
  }
  return d;
}

DeDecision decide_de_safety(const Arena& a, const ObjectiveProfile& profile,
                            const Limits& lim) {
  profile.validate(a);
  if (profile.cls != ObjClass::Safety)
    raise(Err::BadParams, "decide_de_safety needs a safety profile");
  DeDecision d;
  auto t0 = std::chrono::steady_clock::now();
  Region core(a.n_states());
  core.set();
  for (int i = 1; i <= a.n_players; ++i) {
    auto r = retaliation_safety(a, profile, i, lim);
    core &= r.region & profile.of(i).target;
    d.regions.push_back(std::move(r.region));
  }
  d.regions_seconds = seconds_since(t0);
  auto t1 = std::chrono::steady_clock::now();
  struct SearchTimer {
    DeDecision& d;
    std::chrono::steady_clock::time_point t;
    ~SearchTimer() { d.search_seconds = seconds_since(t); }
  } timer{d, t1};
  if (!core.test(a.init))
    return d;
  Digraph g = restrict_graph(a, core);
  Region reach = reachable_from(g.succ, core, a.init);
  auto sccs = scc_decompose(g.succ, reach);
  for (auto v = reach.find_first(); v != Region::npos; v = reach.find_next(v)) {
    int iv = static_cast<int>(v);
    if (!on_cycle(g.succ, reach, sccs, iv))
      continue;
    auto stem = bfs_path(g.succ, reach, a.init, iv);
    auto cycle = thread_cycle(g.succ, reach, {iv});
    d.exists = true;
    d.witness_lasso = assemble_lasso(a, stem, cycle);
    return d;
  }
  return d;
}

bool check_pivot(const Arena& a, const ObjectiveProfile& profile, int s) {
  if (s < 0 || s >= a.n_states())
    raise(Err::BadParams, "pivot state " + std::to_string(s));
  for (int j = 1; j <= a.n_players; ++j) {
    Region attr = attractor(coalition_lift(a, {j}), profile.of(j).target,
                            Side::Protagonist);
    if (!attr.test(s))
      return false;
  }
  return true;
}

DeDecision decide_de(const Arena& a, const ObjectiveProfile& profile,
                     const Limits& lim) {
  switch (profile.cls) {
    case ObjClass::Safety: return decide_de_safety(a, profile, lim);
    case ObjClass::Reach: return decide_de_reach(a, profile);
    default: return decide_de_tail(a, profile, lim);
  }
}

} // namespace doomsday
