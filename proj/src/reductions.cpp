#include <algorithm>
#include <atomic>
#include <map>
#include <random>

#include "doomsday/de_perfect.hpp"
#include "doomsday/oracle.hpp"
#include "doomsday/witness.hpp"
#include "doomsday/zerosum.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace doomsday {

namespace {

void require_two_player(const Arena& src) {
  if (src.n_players != 2)
    raise(Err::BadParams, "reduction sources are 2-player games");
}

int fresh_action(Arena& a, const std::string& name) {
  a.actions.push_back(name);
  // widen the delta table: the new column is filled by the caller
  std::vector<int> widened(a.owner.size() * a.actions.size(), -1);
  int old_na = static_cast<int>(a.actions.size()) - 1;
  for (size_t s = 0; s < a.owner.size(); ++s)
    for (int act = 0; act < old_na; ++act)
      widened[s * a.actions.size() + act] = a.delta_tab[s * old_na + act];
  a.delta_tab = std::move(widened);
  return old_na;
}

/// Pads transitions so that the two players strictly alternate, and the
/// initial state belongs to player 1.  Padding states copy the priorities of
/// the state they forward to.
struct Alternated {
  Arena arena;
  std::vector<int> p1, p2;
};

Alternated make_alternating(const Arena& src, std::vector<int> p1,
                            std::vector<int> p2) {
  Alternated out;
  Arena& a = out.arena;
  a = src;
  out.p1 = std::move(p1);
  out.p2 = std::move(p2);
  const int na = a.n_actions();
  std::map<int, int> pad_of;  // target state -> pad state
  auto pad_to = [&](int t) {
    auto it = pad_of.find(t);
    if (it != pad_of.end())
      return it->second;
    int id = a.n_states();
    a.owner.push_back(3 - a.owner[t]);  // owner opposite to the target
    if (!a.state_names.empty())
      a.state_names.push_back("pad_" + std::to_string(t));
    a.delta_tab.resize(a.delta_tab.size() + na, t);
    out.p1.push_back(out.p1[t]);
    out.p2.push_back(out.p2[t]);
    pad_of.emplace(t, id);
    return id;
  };
  const int n0 = src.n_states();
  for (int s = 0; s < n0; ++s)
    for (int act = 0; act < na; ++act) {
      int t = a.delta_tab[s * na + act];
      if (a.owner[t] == a.owner[s])
        a.delta_tab[s * na + act] = pad_to(t);
    }
  if (a.owner[a.init] != 1) {
    int id = a.n_states();
    a.owner.push_back(1);
    if (!a.state_names.empty())
      a.state_names.push_back("pre_init");
    a.delta_tab.resize(a.delta_tab.size() + na, a.init);
    out.p1.push_back(out.p1[a.init]);
    out.p2.push_back(out.p2[a.init]);
    a.init = id;
  }
  a.validate();
  return out;
}

} // namespace

ReductionInstance gen_buchi_reduction(const Arena& src, const Region& target) {
  require_two_player(src);
  ReductionInstance r;
  r.arena = src;
  r.source = src;
  r.source_buchi = target;
  r.profile.cls = ObjClass::Buchi;
  Region all(src.n_states());
  all.set();
  r.profile.players.push_back({ObjClass::Buchi, target, {}});
  r.profile.players.push_back({ObjClass::Buchi, all, {}});
  r.source_winner = zero_sum_buchi_wins(src, target);
  return r;
}

ReductionInstance gen_conj_parity_reduction(const Arena& src,
                                            const std::vector<int>& p1,
                                            const std::vector<int>& p2) {
  require_two_player(src);
  Alternated alt = make_alternating(src, p1, p2);
  const Arena& g = alt.arena;
  const int n = g.n_states();
  const int na = g.n_actions();

  ReductionInstance r;
  r.source = g;
  r.source_p1 = alt.p1;
  r.source_p2 = alt.p2;
  r.source_winner = zero_sum_conj_parity_wins(g, alt.p1, alt.p2);

  // layout: 0 = s'_init, 1 = Bad_1, 2 = Bad_123, 3.. copies, then the
  // player-3 echo of player-1 states
  Arena& out = r.arena;
  out.n_players = 3;
  auto copy_of = [&](int s) { return 3 + s; };
  std::vector<int> third_of(n, -1);
  int next_id = 3 + n;
  for (int s = 0; s < n; ++s)
    if (g.owner[s] == 1)
      third_of[s] = next_id++;
  out.owner.assign(next_id, 0);
  out.owner[0] = 3;
  out.owner[1] = 1;
  out.owner[2] = 3;
  for (int s = 0; s < n; ++s) {
    out.owner[copy_of(s)] = g.owner[s];
    if (third_of[s] >= 0)
      out.owner[third_of[s]] = 3;
  }
  out.actions = g.actions;
  int dev = fresh_action(out, "deviate");
  const int na2 = out.n_actions();
  out.delta_tab.assign(static_cast<size_t>(next_id) * na2, -1);
  auto set_delta = [&](int s, int act, int t) {
    out.delta_tab[s * na2 + act] = t;
  };
  for (int act = 0; act < na; ++act) {
    set_delta(0, act, 0);
    set_delta(1, act, 1);
    set_delta(2, act, 2);
  }
  set_delta(0, dev, copy_of(g.init));
  set_delta(1, dev, 1);
  set_delta(2, dev, 2);
  for (int s = 0; s < n; ++s) {
    int c = copy_of(s);
    if (g.owner[s] == 1) {
      for (int act = 0; act < na; ++act)
        set_delta(c, act, copy_of(g.step(s, act)));
      set_delta(c, dev, 1);
      for (int act = 0; act < na; ++act)
        set_delta(third_of[s], act, c);
      set_delta(third_of[s], dev, 2);
    } else {
      for (int act = 0; act < na; ++act) {
        int t = g.step(s, act);  // owned by player 1 by alternation
        set_delta(c, act, third_of[t]);
      }
      set_delta(c, dev, 2);
    }
  }
  out.init = 0;
  out.validate();

  r.profile.cls = ObjClass::Parity;
  std::vector<int> q1(next_id, 1), q2(next_id, 1), q3(next_id, 1);
  q1[0] = q2[0] = q3[0] = 0;
  q1[1] = 1, q2[1] = 0, q3[1] = 0;
  q1[2] = q2[2] = q3[2] = 1;
  for (int s = 0; s < n; ++s) {
    for (int v : {copy_of(s), third_of[s]}) {
      if (v < 0)
        continue;
      q1[v] = 1;
      q2[v] = alt.p1[s] + 1;
      q3[v] = alt.p2[s] + 1;
    }
  }
  r.profile.players.push_back({ObjClass::Parity, Region(), q1});
  r.profile.players.push_back({ObjClass::Parity, Region(), q2});
  r.profile.players.push_back({ObjClass::Parity, Region(), q3});
  return r;
}

ReductionInstance gen_disj_parity_reduction(const Arena& src,
                                            const std::vector<int>& p1,
                                            const std::vector<int>& p2) {
  require_two_player(src);
  Alternated alt = make_alternating(src, p1, p2);
  const Arena& g = alt.arena;
  const int n = g.n_states();
  const int na = g.n_actions();

  ReductionInstance r;
  r.source = g;
  r.source_p1 = alt.p1;
  r.source_p2 = alt.p2;
  r.source_winner = zero_sum_disj_parity_wins(g, alt.p1, alt.p2);

  // layout: 0 = s'_init, 1 = Bad_1, 2 = Bad_12, 3.. copies
  Arena& out = r.arena;
  out.n_players = 2;
  auto copy_of = [&](int s) { return 3 + s; };
  out.owner.assign(3 + n, 0);
  out.owner[0] = 2;
  out.owner[1] = 2;
  out.owner[2] = 2;
  for (int s = 0; s < n; ++s)
    out.owner[copy_of(s)] = g.owner[s];
  out.actions = g.actions;
  int dev = fresh_action(out, "deviate");
  const int na2 = out.n_actions();
  out.delta_tab.assign(static_cast<size_t>(3 + n) * na2, -1);
  auto set_delta = [&](int s, int act, int t) {
    out.delta_tab[s * na2 + act] = t;
  };
  for (int act = 0; act < na; ++act) {
    set_delta(0, act, 0);
    set_delta(1, act, 1);
    set_delta(2, act, 2);
  }
  set_delta(0, dev, copy_of(g.init));
  set_delta(1, dev, 1);
  set_delta(2, dev, 2);
  for (int s = 0; s < n; ++s) {
    int c = copy_of(s);
    for (int act = 0; act < na; ++act)
      set_delta(c, act, copy_of(g.step(s, act)));
    set_delta(c, dev, g.owner[s] == 1 ? 1 : 2);
  }
  out.init = 0;
  out.validate();

  r.profile.cls = ObjClass::Parity;
  std::vector<int> q1(3 + n, 1), q2(3 + n, 1);
  q1[0] = q2[0] = 0;
  q1[1] = 1, q2[1] = 0;
  q1[2] = 1, q2[2] = 1;
  for (int s = 0; s < n; ++s) {
    q1[copy_of(s)] = alt.p1[s];
    q2[copy_of(s)] = alt.p2[s] + 1;
  }
  r.profile.players.push_back({ObjClass::Parity, Region(), q1});
  r.profile.players.push_back({ObjClass::Parity, Region(), q2});
  return r;
}

ReductionInstance gen_multireach_to_safety(const Arena& src,
                                           std::vector<Region> targets) {
  require_two_player(src);
  const int k = static_cast<int>(targets.size());
  if (k < 1)
    raise(Err::BadTargets, "at least one target set required");
  for (const auto& t : targets)
    if (t.size() != static_cast<size_t>(src.n_states()))
      raise(Err::BadTargets, "target sized for a different arena");

  // gate every target membership onto a fresh forced player-2 state, which
  // makes the targets pairwise disjoint subsets of player-2 territory
  Arena g = src;
  const int na = g.n_actions();
  std::vector<std::vector<int>> gate(src.n_states());
  std::vector<Region> gated(k);
  int extra = 0;
  for (int s = 0; s < src.n_states(); ++s)
    for (int t = 0; t < k; ++t)
      if (targets[t].test(s))
        ++extra;
  for (int t = 0; t < k; ++t)
    gated[t] = Region(src.n_states() + extra);
  std::vector<int> head(src.n_states());
  for (int s = 0; s < src.n_states(); ++s) {
    head[s] = s;
    std::vector<int> hits;
    for (int t = 0; t < k; ++t)
      if (targets[t].test(s))
        hits.push_back(t);
    int next = s;
    for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
      int id = g.n_states();
      g.owner.push_back(2);
      if (!g.state_names.empty())
        g.state_names.push_back("gate" + std::to_string(*it) + "_" +
                                std::to_string(s));
      g.delta_tab.resize(g.delta_tab.size() + na, next);
      gated[*it].set(id);
      next = id;
    }
    head[s] = next;
  }
  for (int s = 0; s < src.n_states(); ++s)
    for (int act = 0; act < na; ++act)
      g.delta_tab[s * na + act] = head[g.delta_tab[s * na + act]];
  g.init = head[g.init];
  g.validate();

  ReductionInstance r;
  r.source = g;
  r.source_targets = gated;
  r.source_winner =
      solve_generalized_reachability(coalition_lift(g, {1}), gated)
          .test(g.init);

  // layout: 0 = s_0, 1 = s_1, 2 = Bad, 3.. copies
  const int n = g.n_states();
  Arena& out = r.arena;
  out.n_players = k + 1;
  auto copy_of = [&](int s) { return 3 + s; };
  out.owner.assign(3 + n, 0);
  out.owner[0] = 1;
  out.owner[1] = 2;
  out.owner[2] = 1;
  for (int s = 0; s < n; ++s) {
    int o = g.owner[s] == 1 ? 1 : 2;
    for (int t = 1; t < k; ++t)
      if (gated[t].test(s))
        o = t + 2;  // paper's Player t, t >= 2
    out.owner[copy_of(s)] = o;
  }
  out.actions = g.actions;
  int dev = fresh_action(out, "deviate");
  const int na2 = out.n_actions();
  out.delta_tab.assign(static_cast<size_t>(3 + n) * na2, -1);
  auto set_delta = [&](int s, int act, int t) {
    out.delta_tab[s * na2 + act] = t;
  };
  for (int act = 0; act < na2; ++act)
    set_delta(0, act, 1);
  for (int act = 0; act < na; ++act)
    set_delta(1, act, 0);
  set_delta(1, dev, copy_of(g.init));
  for (int act = 0; act < na2; ++act)
    set_delta(2, act, 2);
  for (int s = 0; s < n; ++s) {
    int c = copy_of(s);
    for (int act = 0; act < na; ++act)
      set_delta(c, act, copy_of(g.step(s, act)));
    set_delta(c, dev, g.owner[s] == 1 ? c : 2);
  }
  out.init = 0;
  out.validate();

  r.profile.cls = ObjClass::Safety;
  Region safe0(3 + n);
  safe0.set(0);
  safe0.set(1);
  r.profile.players.push_back({ObjClass::Safety, safe0, {}});
  for (int t = 0; t < k; ++t) {
    Region safe(3 + n);
    safe.set();
    safe.reset(2);
    for (auto s = gated[t].find_first(); s != Region::npos;
         s = gated[t].find_next(s))
      safe.reset(copy_of(static_cast<int>(s)));
    r.profile.players.push_back({ObjClass::Safety, safe, {}});
  }
  return r;
}

ObjectiveProfile random_profile(const Arena& a, ObjClass cls, uint64_t seed,
                                int max_priority) {
  std::mt19937_64 rng(seed);
  ObjectiveProfile p;
  p.cls = cls;
  for (int i = 1; i <= a.n_players; ++i) {
    Objective o;
    o.cls = cls;
    if (cls == ObjClass::Parity) {
      std::uniform_int_distribution<int> pr(0, max_priority);
      o.priority.resize(a.n_states());
      for (int s = 0; s < a.n_states(); ++s)
        o.priority[s] = pr(rng);
    } else {
      o.target = Region(a.n_states());
      std::uniform_int_distribution<int> coin(0, 1);
      for (int s = 0; s < a.n_states(); ++s)
        if (coin(rng))
          o.target.set(s);
    }
    p.players.push_back(std::move(o));
  }
  return p;
}

SuiteResult run_differential_suite(const SuiteParams& p) {
  SuiteResult res;
  res.instances = p.instances;
  std::atomic<int> positives{0}, mismatches{0}, wfail{0};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int k = 0; k < p.instances; ++k) {
    std::mt19937_64 rng(p.seed * 1000003ull + static_cast<uint64_t>(k));
    int ns = 1 + static_cast<int>(rng() % p.max_states);
    int np = 1 + static_cast<int>(rng() % p.max_players);
    Arena a = random_arena(ns, np, p.n_actions, rng());
    ObjectiveProfile prof = random_profile(a, p.cls, rng());
    DeDecision d = decide_de(a, prof);
    bool brute = brute_de(a, prof);
    if (d.exists)
      ++positives;
    if (d.exists != brute) {
      ++mismatches;
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (res.dumps.size() < 5)
          res.dumps.push_back({a, prof, d.exists, brute});
      }
    } else if (p.check_witnesses && d.exists) {
      auto w = synthesize_profile(a, prof, d);
      if (!check_witness(a, prof, w).ok())
        ++wfail;
    }
  }
  res.positives = positives;
  res.mismatches = mismatches;
  res.witness_failures = wfail;
  return res;
}

} // namespace doomsday
