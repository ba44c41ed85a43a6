#include "doomsday/retaliation.hpp"

#include <algorithm>
#include <map>

namespace doomsday {

namespace {

Region union_targets(const Arena& a, const ObjectiveProfile& profile) {
  Region u(a.n_states());
  for (const auto& o : profile.players)
    u |= o.target;
  return u;
}

int action_of_edge(const TwoPlayerGame& g, const MemorylessStrategy& s, int v) {
  if (v < 0 || !s.domain.test(v) || s.choice[v] < 0)
    return -1;
  return g.succ[v][s.choice[v]].action;
}

} // namespace

RetaliationResult retaliation_buchi(const Arena& a,
                                    const ObjectiveProfile& profile, int i) {
  TwoPlayerGame g = coalition_lift(a, {i});
  Region E = union_targets(a, profile);
  Region F = profile.of(i).target;
  MemorylessStrategy cert;
  RetaliationResult res;
  res.region = solve_one_pair_streett(g, E, F, &cert);
  res.strategy.resize(1, a.n_states());
  res.entry_memory.assign(a.n_states(), 0);
  for (int s = 0; s < a.n_states(); ++s) {
    res.strategy.set_update(0, s, 0);
    if (a.owner[s] == i && res.region.test(s))
      res.strategy.set_act(0, s, action_of_edge(g, cert, s));
  }
  return res;
}

RetaliationResult retaliation_cobuchi(const Arena& a,
                                      const ObjectiveProfile& profile, int i) {
  const int n = a.n_players;
  const int n_mem = n + 1;  // 0..n-1 = index awaited, n = round completed
  auto counter_step = [&](int c, int entered) {
    int base = c == n ? 0 : c;
    if (!profile.of(base + 1).target.test(entered))
      ++base;
    return base;
  };
  auto vid = [&](int s, int c) { return s * n_mem + c; };
  TwoPlayerGame g;
  for (int s = 0; s < a.n_states(); ++s)
    for (int c = 0; c < n_mem; ++c)
      g.add_vertex(a.owner[s] == i ? Side::Protagonist : Side::Antagonist, s, c);
  for (int s = 0; s < a.n_states(); ++s)
    for (int c = 0; c < n_mem; ++c)
      for (int act = 0; act < a.n_actions(); ++act) {
        int t = a.step(s, act);
        g.add_edge(vid(s, c), vid(t, counter_step(c, t)), act);
      }
  Region E(g.size()), F(g.size());
  const Region& Ti = profile.of(i).target;
  for (int s = 0; s < a.n_states(); ++s)
    for (int c = 0; c < n_mem; ++c) {
      if (!Ti.test(s))
        E.set(vid(s, c));
      if (c == n)
        F.set(vid(s, c));
    }
  MemorylessStrategy cert;
  Region win = solve_one_pair_streett(g, E, F, &cert);
  RetaliationResult res;
  res.region = Region(a.n_states());
  for (int s = 0; s < a.n_states(); ++s)
    if (win.test(vid(s, 0)))
      res.region.set(s);
  res.strategy.resize(n_mem, a.n_states());
  res.strategy.init_memory = 0;
  res.entry_memory.assign(a.n_states(), 0);
  for (int s = 0; s < a.n_states(); ++s)
    for (int c = 0; c < n_mem; ++c) {
      res.strategy.set_update(c, s, counter_step(c, s));
      if (a.owner[s] == i && win.test(vid(s, c)))
        res.strategy.set_act(c, s, action_of_edge(g, cert, vid(s, c)));
    }
  return res;
}

namespace {

/// Latest-appearance-record over the color alphabet of per-player priority
/// tuples.  The retaliation condition only depends on which colors recur, so
/// the record permutes colors, not states.
struct ColorLar {
  int K = 0;
  std::vector<int> color_of;                 // per state
  std::vector<std::vector<int>> comp;        // comp[c][j-1] = priority
  std::vector<std::vector<uint8_t>> perms;   // lar id -> permutation
  std::vector<int> hits;                     // lar id -> hit position (1-based)
  std::map<std::pair<std::vector<uint8_t>, int>, int> ids;

  int lar_id(std::vector<uint8_t> perm, int h) {
    auto key = std::make_pair(std::move(perm), h);
    auto it = ids.find(key);
    if (it != ids.end())
      return it->second;
    int id = static_cast<int>(perms.size());
    perms.push_back(key.first);
    hits.push_back(h);
    ids.emplace(std::move(key), id);
    return id;
  }

  int entry(int s) {
    std::vector<uint8_t> perm;
    perm.push_back(static_cast<uint8_t>(color_of[s]));
    for (int c = 0; c < K; ++c)
      if (c != color_of[s])
        perm.push_back(static_cast<uint8_t>(c));
    return lar_id(std::move(perm), 1);
  }

  int step(int lar, int entered) {
    const auto& perm = perms[lar];
    uint8_t c = static_cast<uint8_t>(color_of[entered]);
    int pos = static_cast<int>(std::find(perm.begin(), perm.end(), c) -
                               perm.begin());
    std::vector<uint8_t> next(perm);
    std::rotate(next.begin(), next.begin() + pos, next.begin() + pos + 1);
    return lar_id(std::move(next), pos + 1);
  }
};

ColorLar make_color_lar(const Arena& a, const ObjectiveProfile& profile,
                        const Limits& lim) {
  ColorLar lar;
  std::map<std::vector<int>, int> seen;
  lar.color_of.resize(a.n_states());
  for (int s = 0; s < a.n_states(); ++s) {
    std::vector<int> tuple(a.n_players);
    for (int j = 1; j <= a.n_players; ++j)
      tuple[j - 1] = profile.of(j).priority[s];
    auto it = seen.find(tuple);
    if (it == seen.end()) {
      it = seen.emplace(tuple, lar.K++).first;
      lar.comp.push_back(tuple);
    }
    lar.color_of[s] = it->second;
  }
  if (lar.K > lim.lar_alphabet_bound)
    raise(Err::LarBoundExceeded,
          std::to_string(lar.K) + " distinct priority tuples (bound " +
              std::to_string(lim.lar_alphabet_bound) + ")");
  return lar;
}

} // namespace

RetaliationResult retaliation_parity(const Arena& a,
                                     const ObjectiveProfile& profile, int i,
                                     const Limits& lim) {
  ColorLar lar = make_color_lar(a, profile, lim);
  const int n = a.n_players;
  // condition on a hit set of colors: own minimum even, or every minimum odd
  auto good = [&](const std::vector<uint8_t>& perm, int h) {
    std::vector<int> mins(n, INT32_MAX);
    for (int k = 0; k < h; ++k)
      for (int j = 0; j < n; ++j)
        mins[j] = std::min(mins[j], lar.comp[perm[k]][j]);
    if (mins[i - 1] % 2 == 0)
      return true;
    for (int j = 0; j < n; ++j)
      if (mins[j] % 2 == 0)
        return false;
    return true;
  };

  TwoPlayerGame g;
  std::map<std::pair<int, int>, int> vid;  // (state, lar) -> vertex
  std::vector<std::pair<int, int>> keys;
  std::vector<int> prio;
  std::vector<int> worklist;
  auto vertex = [&](int s, int l) {
    auto it = vid.find({s, l});
    if (it != vid.end())
      return it->second;
    int v = g.add_vertex(a.owner[s] == i ? Side::Protagonist : Side::Antagonist,
                         s, l);
    vid.emplace(std::make_pair(s, l), v);
    keys.emplace_back(s, l);
    prio.push_back(2 * (lar.K - lar.hits[l]) + (good(lar.perms[l], lar.hits[l]) ? 0 : 1));
    worklist.push_back(v);
    return v;
  };
  std::vector<int> entry(a.n_states());
  for (int s = 0; s < a.n_states(); ++s) {
    entry[s] = lar.entry(s);
    vertex(s, entry[s]);
  }
  for (size_t w = 0; w < worklist.size(); ++w) {
    int v = worklist[w];
    auto [s, l] = keys[v];
    for (int act = 0; act < a.n_actions(); ++act) {
      int t = a.step(s, act);
      g.add_edge(v, vertex(t, lar.step(l, t)), act);
    }
  }

  auto result = solve_parity(g, prio);
  RetaliationResult res;
  res.region = Region(a.n_states());
  for (int s = 0; s < a.n_states(); ++s)
    if (result.win_protagonist.test(vid.at({s, entry[s]})))
      res.region.set(s);
  const int n_mem = static_cast<int>(lar.perms.size());
  res.strategy.resize(n_mem, a.n_states());
  res.strategy.init_memory = entry[a.init];
  res.entry_memory = entry;
  for (const auto& [key, v] : vid) {
    auto [s, l] = key;
    if (a.owner[s] == i && result.win_protagonist.test(v))
      res.strategy.set_act(l, s, action_of_edge(g, result.strat_protagonist, v));
  }
  // updates: any recorded memory advanced by any entered state, as long as
  // the successor record was discovered (reachable pairs always are)
  for (int l = 0; l < n_mem; ++l)
    for (int s = 0; s < a.n_states(); ++s) {
      int pos = static_cast<int>(
          std::find(lar.perms[l].begin(), lar.perms[l].end(),
                    static_cast<uint8_t>(lar.color_of[s])) -
          lar.perms[l].begin());
      std::vector<uint8_t> next(lar.perms[l]);
      std::rotate(next.begin(), next.begin() + pos, next.begin() + pos + 1);
      auto it = lar.ids.find({next, pos + 1});
      if (it != lar.ids.end())
        res.strategy.set_update(l, s, it->second);
    }
  return res;
}

RetaliationResult retaliation_reach(const Arena& a,
                                    const ObjectiveProfile& profile, int i) {
  TwoPlayerGame g = coalition_lift(a, {i});
  MemorylessStrategy attr_strat;
  Region A = attractor(g, profile.of(i).target, Side::Protagonist, &attr_strat);

  // confinement game: reaching A settles the objective, so A is absorbing
  TwoPlayerGame confined = g;
  for (auto v = A.find_first(); v != Region::npos; v = A.find_next(v))
    confined.succ[v] = {{static_cast<int>(v), -1}};
  Region U(a.n_states());
  U.set();
  for (const auto& o : profile.players)
    U &= ~o.target;
  U |= A;
  MemorylessStrategy safe_strat;
  RetaliationResult res;
  res.region = safe_region(confined, U, Side::Protagonist, &safe_strat);

  res.strategy.resize(2, a.n_states());  // 0 = confine, 1 = attract (sticky)
  res.entry_memory.assign(a.n_states(), 0);
  for (int s = 0; s < a.n_states(); ++s) {
    bool in_a = A.test(s);
    if (in_a)
      res.entry_memory[s] = 1;
    res.strategy.set_update(0, s, in_a ? 1 : 0);
    res.strategy.set_update(1, s, 1);
    if (a.owner[s] != i)
      continue;
    if (res.region.test(s) && !in_a)
      res.strategy.set_act(0, s, action_of_edge(g, safe_strat, s));
    // once attracting, the objective is settled after the target visit, so
    // the mode-1 action may default anywhere outside the attractor
    int act = in_a ? action_of_edge(g, attr_strat, s) : -1;
    res.strategy.set_act(1, s, act >= 0 ? act : 0);
  }
  res.strategy.init_memory = res.entry_memory[a.init];
  return res;
}

RetaliationResult retaliation_safety(const Arena& a,
                                     const ObjectiveProfile& profile, int i,
                                     const Limits& lim) {
  const int n = a.n_players;
  if (n > lim.player_bit_bound)
    raise(Err::TooManyPlayers, std::to_string(n) + " players (bit bound " +
                                   std::to_string(lim.player_bit_bound) + ")");
  const int n_masks = 1 << n;
  const int full = n_masks - 1;
  auto bits_of = [&](int s) {
    int m = 0;
    for (int j = 1; j <= n; ++j)
      if (!profile.of(j).target.test(s))
        m |= 1 << (j - 1);
    return m;
  };
  auto vid = [&](int s, int m) { return s * n_masks + m; };
  TwoPlayerGame g;
  for (int s = 0; s < a.n_states(); ++s)
    for (int m = 0; m < n_masks; ++m)
      g.add_vertex(a.owner[s] == i ? Side::Protagonist : Side::Antagonist, s, m);
  for (int s = 0; s < a.n_states(); ++s)
    for (int m = 0; m < n_masks; ++m)
      for (int act = 0; act < a.n_actions(); ++act) {
        int t = a.step(s, act);
        g.add_edge(vid(s, m), vid(t, m | bits_of(t)), act);
      }
  Region goal(g.size());
  for (int s = 0; s < a.n_states(); ++s)
    goal.set(vid(s, full));
  MemorylessStrategy attr_strat;
  Region A = attractor(g, goal, Side::Protagonist, &attr_strat);
  Region safe_set = A;
  const int own_bit = 1 << (i - 1);
  for (int s = 0; s < a.n_states(); ++s)
    for (int m = 0; m < n_masks; ++m)
      if (!(m & own_bit))
        safe_set.set(vid(s, m));
  MemorylessStrategy safe_strat;
  Region W = safe_region(g, safe_set, Side::Protagonist, &safe_strat);

  RetaliationResult res;
  res.region = Region(a.n_states());
  res.entry_memory.assign(a.n_states(), 0);
  for (int s = 0; s < a.n_states(); ++s) {
    res.entry_memory[s] = bits_of(s);
    if (W.test(vid(s, bits_of(s))))
      res.region.set(s);
  }
  res.strategy.resize(n_masks, a.n_states());
  res.strategy.init_memory = res.entry_memory[a.init];
  for (int s = 0; s < a.n_states(); ++s)
    for (int m = 0; m < n_masks; ++m) {
      res.strategy.set_update(m, s, m | bits_of(s));
      if (a.owner[s] != i)
        continue;
      int v = vid(s, m);
      if (m & own_bit) {
        if (A.test(v)) {
          int act = action_of_edge(g, attr_strat, v);
          res.strategy.set_act(m, s, act >= 0 ? act : 0);
        }
      } else if (W.test(v)) {
        res.strategy.set_act(m, s, action_of_edge(g, safe_strat, v));
      }
    }
  return res;
}

RetaliationResult retaliation(const Arena& a, const ObjectiveProfile& profile,
                              int i, const Limits& lim) {
  switch (profile.cls) {
    case ObjClass::Buchi: return retaliation_buchi(a, profile, i);
    case ObjClass::CoBuchi: return retaliation_cobuchi(a, profile, i);
    case ObjClass::Parity: return retaliation_parity(a, profile, i, lim);
    case ObjClass::Reach: return retaliation_reach(a, profile, i);
    case ObjClass::Safety: return retaliation_safety(a, profile, i, lim);
  }
  raise(Err::UnsupportedClass, "retaliation");
}

} // namespace doomsday
