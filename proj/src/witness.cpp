#include "doomsday/witness.hpp"

#include <algorithm>
#include <map>

#include "graph_util.hpp"

namespace doomsday {

bool WitnessReport::ok() const {
  if (!cond1)
    return false;
  return std::all_of(cond2.begin(), cond2.end(), [](char c) { return c != 0; });
}

namespace {

/// Position bookkeeping for the main lasso: positions 0..A-1 run through the
/// stem, then the cycle repeats with period m (position A is cycle state 1).
struct MainPlay {
  std::vector<int> stem;   // stem states (A entries)
  std::vector<int> cyc;    // cycle states, cyc[0] == stem.back(), closed
  std::vector<int> stem_actions;
  std::vector<int> cyc_actions;

  int positions() const {
    return static_cast<int>(stem.size() + cyc_actions.size());
  }
  int wrap(int p) const {
    int a = static_cast<int>(stem.size());
    int m = static_cast<int>(cyc_actions.size());
    return p < a + m ? p : a + (p - a) % m;
  }
  int state_at(int p) const {
    int a = static_cast<int>(stem.size());
    if (p < a)
      return stem[p];
    return cyc[1 + (p - a) % static_cast<int>(cyc_actions.size())];
  }
  int action_at(int p) const {
    int a = static_cast<int>(stem.size());
    if (p < a - 1)
      return stem_actions[p];
    return cyc_actions[(p - (a - 1)) % static_cast<int>(cyc_actions.size())];
  }
};

MainPlay main_play_of(const Lasso& l) {
  MainPlay mp;
  mp.stem = l.stem.states;
  mp.cyc = l.cycle.states;
  mp.stem_actions = l.stem.actions;
  mp.cyc_actions = l.cycle.actions;
  return mp;
}

/// Composed strategy for tail/safety classes: follow the main play while the
/// observed states match, switch permanently to retaliation on mismatch.
FiniteMemoryStrategy compose_follow_retaliate(const Arena& a, int player,
                                              const MainPlay& mp,
                                              const RetaliationResult& retal) {
  const int L = mp.positions();
  const int base = L;  // Dev(m) = base + m
  FiniteMemoryStrategy f;
  f.resize(L + retal.strategy.n_memory, a.n_states());
  f.init_memory = 0;
  for (int k = 0; k < L; ++k) {
    for (int s = 0; s < a.n_states(); ++s) {
      int nxt = mp.state_at(k + 1);
      f.set_update(k, s, s == nxt ? mp.wrap(k + 1) : base + retal.entry_memory[s]);
    }
    if (a.owner[mp.state_at(k)] == player)
      f.set_act(k, mp.state_at(k), mp.action_at(k));
  }
  for (int m = 0; m < retal.strategy.n_memory; ++m)
    for (int s = 0; s < a.n_states(); ++s) {
      int u = retal.strategy.update(m, s);
      f.set_update(base + m, s, u < 0 ? -1 : base + u);
      int act = retal.strategy.act(m, s);
      if (act >= 0)
        f.set_act(base + m, s, act);
    }
  return f;
}

/// Memoryless post-pivot rule: pull towards the own target, default once
/// settled.
struct PostRule {
  Region attr;
  Region target;
  std::vector<int> action;  // attractor certificate per state, -1 elsewhere

  int act(const Arena& a, int s) const {
    if (attr.test(s) && !target.test(s) && action[s] >= 0)
      return action[s];
    return 0;
  }
};

PostRule post_rule(const Arena& a, const ObjectiveProfile& profile, int j) {
  PostRule r;
  r.target = profile.of(j).target;
  TwoPlayerGame g = coalition_lift(a, {j});
  MemorylessStrategy strat;
  r.attr = attractor(g, r.target, Side::Protagonist, &strat);
  r.action.assign(a.n_states(), -1);
  for (int s = 0; s < a.n_states(); ++s)
    if (a.owner[s] == j && r.attr.test(s) && strat.choice[s] >= 0)
      r.action[s] = g.succ[s][strat.choice[s]].action;
  return r;
}

/// Main play for the reachability class: the pivot path, then everyone
/// forces their own target; memoryless afterwards, so it closes into a
/// lasso once a post-pivot state repeats.
Lasso simulate_reach_main(const Arena& a, const std::vector<PostRule>& rules,
                          const PlayPrefix& path) {
  std::vector<int> states = path.states;
  std::vector<int> actions = path.actions;
  std::vector<int> first_post(a.n_states(), -1);
  int s = states.back();
  first_post[s] = static_cast<int>(states.size()) - 1;
  while (true) {
    int act = rules[a.owner[s] - 1].act(a, s);
    int t = a.step(s, act);
    actions.push_back(act);
    states.push_back(t);
    if (first_post[t] >= 0) {
      int start = first_post[t];
      Lasso l;
      l.stem.states.assign(states.begin(), states.begin() + start + 1);
      l.stem.actions.assign(actions.begin(), actions.begin() + start);
      l.cycle.states.assign(states.begin() + start, states.end());
      l.cycle.actions.assign(actions.begin() + start, actions.end());
      return l;
    }
    first_post[t] = static_cast<int>(states.size()) - 1;
    s = t;
  }
}

FiniteMemoryStrategy compose_reach(const Arena& a, int player,
                                   const PlayPrefix& path,
                                   const RetaliationResult& retal,
                                   const PostRule& rule) {
  const int P = static_cast<int>(path.actions.size());  // pivot position
  const int post = P;                                   // memory ids
  const int base = P + 1;                               // Dev(m) = base + m
  FiniteMemoryStrategy f;
  f.resize(P + 1 + retal.strategy.n_memory, a.n_states());
  f.init_memory = P == 0 ? post : 0;
  for (int k = 0; k < P; ++k) {
    for (int s = 0; s < a.n_states(); ++s) {
      if (s == path.states[k + 1])
        f.set_update(k, s, k + 1 == P ? post : k + 1);
      else
        f.set_update(k, s, base + retal.entry_memory[s]);
    }
    if (a.owner[path.states[k]] == player)
      f.set_act(k, path.states[k], path.actions[k]);
  }
  for (int s = 0; s < a.n_states(); ++s) {
    f.set_update(post, s, post);
    if (a.owner[s] == player)
      f.set_act(post, s, rule.act(a, s));
  }
  for (int m = 0; m < retal.strategy.n_memory; ++m)
    for (int s = 0; s < a.n_states(); ++s) {
      int u = retal.strategy.update(m, s);
      f.set_update(base + m, s, u < 0 ? -1 : base + u);
      int act = retal.strategy.act(m, s);
      if (act >= 0)
        f.set_act(base + m, s, act);
    }
  return f;
}

/// Arena x fixed-strategy product for one player.
struct StrategyProduct {
  std::vector<std::pair<int, int>> keys;  // (state, memory)
  std::vector<std::vector<int>> adj;
  int init = 0;

  int state_of(int v) const { return keys[v].first; }
};

StrategyProduct build_product(const Arena& a, int player,
                              const FiniteMemoryStrategy& f) {
  if (f.n_states != a.n_states())
    raise(Err::MalformedWitness, "strategy table sized for a different arena");
  StrategyProduct p;
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
  p.init = vertex(a.init, f.init_memory);
  for (size_t v = 0; v < p.keys.size(); ++v) {
    auto [s, m] = p.keys[v];
    std::vector<int> moves;
    if (a.owner[s] == player) {
      int act = f.act(m, s);
      if (act < 0 || act >= a.n_actions())
        raise(Err::MalformedWitness,
              "strategy undefined at owned state " + std::to_string(s));
      moves.push_back(act);
    } else {
      for (int act = 0; act < a.n_actions(); ++act)
        moves.push_back(act);
    }
    for (int act : moves) {
      int t = a.step(s, act);
      int m2 = f.update(m, t);
      if (m2 < 0)
        raise(Err::MalformedWitness,
              "memory update undefined entering state " + std::to_string(t));
      int w = vertex(t, m2);
      p.adj[v].push_back(w);
    }
    std::sort(p.adj[v].begin(), p.adj[v].end());
    p.adj[v].erase(std::unique(p.adj[v].begin(), p.adj[v].end()),
                   p.adj[v].end());
  }
  return p;
}

Lasso project_lasso(const Arena& a, const StrategyProduct& p,
                    const std::vector<int>& stem,
                    const std::vector<int>& cycle) {
  auto to_prefix = [&](const std::vector<int>& vs) {
    PlayPrefix pr;
    for (int v : vs)
      pr.states.push_back(p.state_of(v));
    for (size_t k = 0; k + 1 < pr.states.size(); ++k)
      pr.actions.push_back(action_for(a, pr.states[k], pr.states[k + 1]));
    return pr;
  };
  Lasso l;
  l.stem = to_prefix(stem);
  l.cycle = to_prefix(cycle);
  return l;
}

/// Closed walk through the waypoints inside `allowed` (same contract as the
/// decision procedures' cycle threading).
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

Region lift(const StrategyProduct& p, const Region& states) {
  Region r(p.keys.size());
  for (size_t v = 0; v < p.keys.size(); ++v)
    if (states.test(p.state_of(v)))
      r.set(v);
  return r;
}

/// Search: cycle inside `allowed` containing a `marker` vertex, reachable
/// from init through the full product (tail-objective pairs).
std::optional<std::pair<std::vector<int>, std::vector<int>>> find_free_stem_cycle(
    const StrategyProduct& p, const Region& allowed, const Region& marker) {
  Region all(p.keys.size());
  all.set();
  Region reach = reachable_from(p.adj, all, p.init);
  Region carrier = allowed & reach;
  auto sccs = scc_decompose(p.adj, carrier);
  for (auto v = carrier.find_first(); v != Region::npos;
       v = carrier.find_next(v)) {
    int iv = static_cast<int>(v);
    if (!marker.test(iv) || !on_cycle(p.adj, carrier, sccs, iv))
      continue;
    Region comp(p.keys.size());
    for (auto u = carrier.find_first(); u != Region::npos;
         u = carrier.find_next(u))
      if (sccs.comp[u] == sccs.comp[iv])
        comp.set(u);
    auto cycle = thread_cycle(p.adj, comp, {iv});
    auto stem = bfs_path(p.adj, reach, p.init, iv);
    return std::make_pair(stem, cycle);
  }
  return std::nullopt;
}

/// Search: play inside `allowed` from init that visits `marker` and then
/// cycles (visit-objective pairs: the whole play is constrained).
std::optional<std::pair<std::vector<int>, std::vector<int>>> find_confined_visit(
    const StrategyProduct& p, const Region& allowed, const Region& marker) {
  if (!allowed.test(p.init))
    return std::nullopt;
  Region reach = reachable_from(p.adj, allowed, p.init);
  auto sccs = scc_decompose(p.adj, reach);
  Region cyc_verts(p.keys.size());
  for (auto v = reach.find_first(); v != Region::npos; v = reach.find_next(v))
    if (on_cycle(p.adj, reach, sccs, static_cast<int>(v)))
      cyc_verts.set(v);
  if (cyc_verts.none())
    return std::nullopt;
  for (auto v = reach.find_first(); v != Region::npos; v = reach.find_next(v)) {
    int x = static_cast<int>(v);
    if (!marker.test(x))
      continue;
    // forward BFS from x for the nearest cycle vertex
    Region fwd = reachable_from(p.adj, reach, x);
    Region hits = fwd & cyc_verts;
    if (hits.none())
      continue;
    int c = static_cast<int>(hits.find_first());
    auto stem1 = bfs_path(p.adj, reach, p.init, x);
    auto stem2 = bfs_path(p.adj, reach, x, c);
    stem1.insert(stem1.end(), stem2.begin() + 1, stem2.end());
    Region comp(p.keys.size());
    for (auto u = reach.find_first(); u != Region::npos; u = reach.find_next(u))
      if (sccs.comp[u] == sccs.comp[c])
        comp.set(u);
    auto cycle = thread_cycle(p.adj, comp, {c});
    return std::make_pair(stem1, cycle);
  }
  return std::nullopt;
}

std::optional<Lasso> bad_lasso_for_pair(const Arena& a,
                                        const ObjectiveProfile& profile, int i,
                                        int j, const StrategyProduct& p) {
  switch (profile.cls) {
    case ObjClass::Buchi: {
      Region allowed = lift(p, ~profile.of(i).target);
      Region marker = lift(p, profile.of(j).target);
      if (auto r = find_free_stem_cycle(p, allowed, marker))
        return project_lasso(a, p, r->first, r->second);
      return std::nullopt;
    }
    case ObjClass::CoBuchi: {
      Region allowed = lift(p, profile.of(j).target);
      Region marker = lift(p, ~profile.of(i).target);
      if (auto r = find_free_stem_cycle(p, allowed, marker))
        return project_lasso(a, p, r->first, r->second);
      return std::nullopt;
    }
    case ObjClass::Safety: {
      Region allowed = lift(p, profile.of(j).target);
      Region marker = lift(p, ~profile.of(i).target);
      if (auto r = find_confined_visit(p, allowed, marker))
        return project_lasso(a, p, r->first, r->second);
      return std::nullopt;
    }
    case ObjClass::Reach: {
      Region allowed = lift(p, ~profile.of(i).target);
      Region marker = lift(p, profile.of(j).target);
      if (auto r = find_confined_visit(p, allowed, marker))
        return project_lasso(a, p, r->first, r->second);
      return std::nullopt;
    }
    case ObjClass::Parity: {
      const auto& pi = profile.of(i).priority;
      const auto& pj = profile.of(j).priority;
      int di = *std::max_element(pi.begin(), pi.end());
      int dj = *std::max_element(pj.begin(), pj.end());
      Region all(p.keys.size());
      all.set();
      Region reach = reachable_from(p.adj, all, p.init);
      for (int pa = 1; pa <= di; pa += 2)
        for (int pb = 0; pb <= dj; pb += 2) {
          Region allowed(p.keys.size());
          Region va(p.keys.size()), vb(p.keys.size());
          for (size_t v = 0; v < p.keys.size(); ++v) {
            int s = p.state_of(static_cast<int>(v));
            if (pi[s] >= pa && pj[s] >= pb && reach.test(v)) {
              allowed.set(v);
              if (pi[s] == pa)
                va.set(v);
              if (pj[s] == pb)
                vb.set(v);
            }
          }
          if (va.none() || vb.none())
            continue;
          auto sccs = scc_decompose(p.adj, allowed);
          std::vector<std::pair<int, int>> found(sccs.count, {-1, -1});
          for (auto v = allowed.find_first(); v != Region::npos;
               v = allowed.find_next(v)) {
            int c = sccs.comp[v];
            if (va.test(v) && found[c].first < 0)
              found[c].first = static_cast<int>(v);
            if (vb.test(v) && found[c].second < 0)
              found[c].second = static_cast<int>(v);
          }
          for (int c = 0; c < sccs.count; ++c) {
            if (found[c].first < 0 || found[c].second < 0)
              continue;
            Region comp(p.keys.size());
            std::vector<int> members;
            for (auto u = allowed.find_first(); u != Region::npos;
                 u = allowed.find_next(u))
              if (sccs.comp[u] == c) {
                comp.set(u);
                members.push_back(static_cast<int>(u));
              }
            bool nontrivial = members.size() > 1;
            if (!nontrivial)
              for (int w : p.adj[members[0]])
                if (w == members[0])
                  nontrivial = true;
            if (!nontrivial)
              continue;
            std::vector<int> wp{found[c].first};
            if (found[c].second != found[c].first)
              wp.push_back(found[c].second);
            auto cycle = thread_cycle(p.adj, comp, wp);
            auto stem = bfs_path(p.adj, reach, p.init, wp.front());
            return project_lasso(a, p, stem, cycle);
          }
        }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

} // namespace

DoomsdayWitness synthesize_profile(const Arena& a,
                                   const ObjectiveProfile& profile,
                                   const DeDecision& d, const Limits& lim) {
  profile.validate(a);
  if (!d.exists)
    raise(Err::NoEquilibrium, "cannot synthesize from a negative decision");
  DoomsdayWitness w;
  if (profile.cls == ObjClass::Reach) {
    if (!d.witness_path)
      raise(Err::MalformedWitness, "reachability decision lacks a pivot path");
    std::vector<PostRule> rules;
    for (int j = 1; j <= a.n_players; ++j)
      rules.push_back(post_rule(a, profile, j));
    w.main = simulate_reach_main(a, rules, *d.witness_path);
    for (int j = 1; j <= a.n_players; ++j) {
      auto retal = retaliation_reach(a, profile, j);
      w.strategies.push_back(
          compose_reach(a, j, *d.witness_path, retal, rules[j - 1]));
    }
    return w;
  }
  if (!d.witness_lasso)
    raise(Err::MalformedWitness, "decision lacks a witness lasso");
  w.main = *d.witness_lasso;
  MainPlay mp = main_play_of(w.main);
  for (int j = 1; j <= a.n_players; ++j) {
    auto retal = retaliation(a, profile, j, lim);
    w.strategies.push_back(compose_follow_retaliate(a, j, mp, retal));
  }
  return w;
}

WitnessReport check_witness(const Arena& a, const ObjectiveProfile& profile,
                            const DoomsdayWitness& w) {
  profile.validate(a);
  validate_lasso(a, w.main);
  if (static_cast<int>(w.strategies.size()) != a.n_players)
    raise(Err::MalformedWitness, "one strategy per player required");
  WitnessReport rep;
  rep.cond1 = true;
  for (const auto& o : profile.players)
    rep.cond1 = rep.cond1 && eval_lasso(w.main, o);
  rep.cond2.assign(a.n_players, 1);
  for (int i = 1; i <= a.n_players; ++i) {
    StrategyProduct p = build_product(a, i, w.strategies[i - 1]);
    for (int j = 1; j <= a.n_players; ++j) {
      if (j == i)
        continue;
      if (auto bad = bad_lasso_for_pair(a, profile, i, j, p)) {
        rep.cond2[i - 1] = 0;
        rep.counterexamples.push_back({i, j, *bad});
        break;
      }
    }
  }
  return rep;
}

} // namespace doomsday
