#include "doomsday/imperfect.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "graph_util.hpp"

namespace doomsday {

void ImperfectArena::validate() {
  base.validate();
  const int n = base.n_players;
  if (static_cast<int>(obs.size()) != n)
    raise(Err::BadParams, "one observation partition per player required");
  block_tab.assign(n, std::vector<int>(base.n_states(), -1));
  for (int p = 0; p < n; ++p) {
    for (size_t b = 0; b < obs[p].size(); ++b)
      for (int s : obs[p][b]) {
        if (s < 0 || s >= base.n_states())
          raise(Err::BadParams, "observation block lists unknown state " +
                                    std::to_string(s));
        if (block_tab[p][s] != -1)
          raise(Err::BadParams, "state " + std::to_string(s) +
                                    " in two blocks of player " +
                                    std::to_string(p + 1));
        block_tab[p][s] = static_cast<int>(b);
      }
    for (int s = 0; s < base.n_states(); ++s)
      if (block_tab[p][s] < 0)
        raise(Err::BadParams, "state " + std::to_string(s) +
                                  " missing from player " +
                                  std::to_string(p + 1) + "'s partition");
  }
  for (int s = 0; s < base.n_states(); ++s) {
    int expect = (base.owner[s] % n) + 1;
    for (int a = 0; a < base.n_actions(); ++a)
      if (base.owner[base.step(s, a)] != expect)
        raise(Err::BadParams,
              "players must move in the predefined order: delta(" +
                  std::to_string(s) + ",...) leaves the round-robin");
  }
}

std::vector<ObsLetter> obs_of_prefix(const ImperfectArena& ia, int player,
                                     const PlayPrefix& p) {
  std::vector<ObsLetter> out;
  for (size_t k = 0; k < p.states.size(); ++k) {
    int s = p.states[k];
    int act = -1;
    if (ia.base.owner[s] == player && k < p.actions.size())
      act = p.actions[k];
    out.push_back({ia.block_of(player, s), act});
  }
  return out;
}

ObsLasso obs_of_lasso(const ImperfectArena& ia, int player, const Lasso& l) {
  ObsLasso ol;
  for (size_t k = 0; k + 1 < l.stem.states.size(); ++k) {
    int s = l.stem.states[k];
    ol.stem.push_back({ia.block_of(player, s),
                       ia.base.owner[s] == player ? l.stem.actions[k] : -1});
  }
  for (size_t k = 0; k + 1 < l.cycle.states.size(); ++k) {
    int s = l.cycle.states[k];
    ol.cycle.push_back({ia.block_of(player, s),
                        ia.base.owner[s] == player ? l.cycle.actions[k] : -1});
  }
  return ol;
}

int DoomsdayAutomaton::step(int v, const ObsLetter& l, bool* reset) const {
  for (const auto& t : trans[v])
    if (t.letter == l) {
      if (reset)
        *reset = t.reset;
      return t.to;
    }
  return -2;
}

namespace {

using Thread = std::pair<int, int>;  // (state, mask)

struct ThreadSpace {
  const ImperfectArena* ia;
  const ObjectiveProfile* profile;
  int player;
  int full_mask;

  int bits_of(int s) const {
    int m = 0;
    for (int j = 1; j <= ia->base.n_players; ++j) {
      bool hit = profile->cls == ObjClass::Safety
                     ? !profile->of(j).target.test(s)
                     : profile->of(j).target.test(s);
      if (hit)
        m |= 1 << (j - 1);
    }
    return m;
  }

  /// Membership in the stable set of the existential bad-run automaton.
  bool in_c(const Thread& t) const {
    int own = 1 << (player - 1);
    if (profile->cls == ObjClass::Safety)
      return (t.second & own) != 0 && t.second != full_mask;
    return (t.second & own) == 0 && (t.second & ~own & full_mask) != 0;
  }

  std::vector<Thread> post(const std::vector<Thread>& ts,
                           const ObsLetter& l) const {
    std::set<Thread> out;
    for (const auto& [s, m] : ts) {
      if (ia->block_of(player, s) != l.block)
        continue;
      if (ia->base.owner[s] == player) {
        if (l.action < 0)
          continue;
        int t = ia->base.step(s, l.action);
        out.emplace(t, m | bits_of(t));
      } else {
        if (l.action >= 0)
          continue;
        for (int a = 0; a < ia->base.n_actions(); ++a) {
          int t = ia->base.step(s, a);
          out.emplace(t, m | bits_of(t));
        }
      }
    }
    return {out.begin(), out.end()};
  }
};

} // namespace

DoomsdayAutomaton build_doomsday_automaton(const ImperfectArena& ia,
                                           const ObjectiveProfile& profile,
                                           int i, const Limits& lim) {
  profile.validate(ia.base);
  if (profile.cls != ObjClass::Safety && profile.cls != ObjClass::Reach)
    raise(Err::UnsupportedClass,
          "doomsday automata are built for safety and reachability only");
  if (ia.base.n_players > lim.player_bit_bound)
    raise(Err::TooManyPlayers, std::to_string(ia.base.n_players) + " players");
  ThreadSpace ts{&ia, &profile, i, (1 << ia.base.n_players) - 1};

  DoomsdayAutomaton d;
  d.player = i;
  d.n_masks = ts.full_mask + 1;
  std::map<std::pair<std::vector<Thread>, std::vector<Thread>>, int> ids;
  auto vertex = [&](std::vector<Thread> u, std::vector<Thread> v) {
    auto key = std::make_pair(std::move(u), std::move(v));
    auto it = ids.find(key);
    if (it != ids.end())
      return it->second;
    int id = d.size();
    d.verts.push_back({key.first, key.second});
    d.trans.emplace_back();
    ids.emplace(std::move(key), id);
    return id;
  };

  std::vector<Thread> u0{{ia.base.init, ts.bits_of(ia.base.init)}};
  std::vector<Thread> v0;
  if (ts.in_c(u0[0]))
    v0 = u0;
  d.init = vertex(u0, v0);

  for (int v = 0; v < d.size(); ++v) {
    const auto belief = d.verts[v].belief;
    const auto track = d.verts[v].breakpoint;
    if (belief.empty())
      continue;
    // round-robin keeps beliefs turn-homogeneous
    bool own_turn = ia.base.owner[belief.front().first] == i;
    std::set<int> blocks;
    for (const auto& [s, m] : belief)
      blocks.insert(ia.block_of(i, s));
    std::vector<ObsLetter> letters;
    for (int b : blocks) {
      if (own_turn)
        for (int a = 0; a < ia.base.n_actions(); ++a)
          letters.push_back({b, a});
      else
        letters.push_back({b, -1});
    }
    for (const auto& l : letters) {
      auto u2 = ts.post(belief, l);
      if (u2.empty())
        continue;
      auto v2_raw = ts.post(track, l);
      std::vector<Thread> v2;
      for (const auto& t : v2_raw)
        if (ts.in_c(t))
          v2.push_back(t);
      bool reset = v2.empty();
      if (reset) {
        for (const auto& t : u2)
          if (ts.in_c(t))
            v2.push_back(t);
      }
      int to = vertex(u2, v2);
      d.trans[v].push_back({l, to, reset});
    }
    std::sort(d.trans[v].begin(), d.trans[v].end(),
              [](const auto& x, const auto& y) { return x.letter < y.letter; });
  }
  return d;
}

bool RetaliationAutomaton::prefix_good(int run_state, int next_block) const {
  for (const auto& t : automaton->trans[run_state])
    if (t.letter.block == next_block && win.test(t.to))
      return true;
  return false;
}

RetaliationAutomaton build_retaliation_automaton(const ImperfectArena& ia,
                                                 const ObjectiveProfile& profile,
                                                 int i,
                                                 const DoomsdayAutomaton& d) {
  (void)ia;
  (void)profile;
  (void)i;
  // observation/action game on d: the opponent proposes the next block, the
  // retaliator resolves the action component; winning = the Streett pair of
  // d, i.e. infinitely many breakpoints.
  TwoPlayerGame g;
  std::vector<int> prio;
  // B-vertices (q, entered-via-reset flag)
  for (int q = 0; q < d.size(); ++q)
    for (int f = 0; f < 2; ++f) {
      g.add_vertex(Side::Antagonist, q, f);
      prio.push_back(f == 1 ? 0 : 1);
    }
  auto bvert = [&](int q, int f) { return 2 * q + f; };
  for (int q = 0; q < d.size(); ++q) {
    std::set<int> blocks;
    for (const auto& t : d.trans[q])
      blocks.insert(t.letter.block);
    std::vector<int> choice_vertex;
    for (int b : blocks) {
      int av = g.add_vertex(Side::Protagonist, q, b);
      prio.push_back(1);
      choice_vertex.push_back(av);
      for (const auto& t : d.trans[q])
        if (t.letter.block == b)
          g.add_edge(av, bvert(t.to, t.reset ? 1 : 0), t.letter.action);
    }
    if (blocks.empty()) {
      // no feasible observation: cannot happen on live beliefs, but keep the
      // game total
      g.add_edge(bvert(q, 0), bvert(q, 0), -1);
      g.add_edge(bvert(q, 1), bvert(q, 1), -1);
      continue;
    }
    for (int f = 0; f < 2; ++f)
      for (int av : choice_vertex)
        g.add_edge(bvert(q, f), av, -1);
  }
  auto res = solve_parity(g, prio);
  RetaliationAutomaton ra;
  ra.automaton = &d;
  ra.win = Region(d.size());
  for (int q = 0; q < d.size(); ++q)
    if (res.win_protagonist.test(bvert(q, 0)))
      ra.win.set(q);
  return ra;
}

namespace {

struct ProductVertex {
  int state;
  int visited;             // monotone target bits (reachability), else 0
  std::vector<int> runs;   // D_i run states
  bool operator<(const ProductVertex& o) const {
    if (state != o.state)
      return state < o.state;
    if (visited != o.visited)
      return visited < o.visited;
    return runs < o.runs;
  }
};

struct ProductEdge {
  int to;
  int action;
  unsigned resets;  // bit per player
};

} // namespace

DeDecision decide_de_imperfect(const ImperfectArena& ia,
                               const ObjectiveProfile& profile,
                               const Limits& lim) {
  profile.validate(ia.base);
  if (profile.cls != ObjClass::Safety && profile.cls != ObjClass::Reach)
    raise(Err::UnsupportedClass,
          "imperfect-information decision supports safety and reachability");
  const Arena& a = ia.base;
  const int n = a.n_players;
  DeDecision d;

  std::vector<DoomsdayAutomaton> autos;
  autos.reserve(n);
  for (int i = 1; i <= n; ++i)
    autos.push_back(build_doomsday_automaton(ia, profile, i, lim));
  std::vector<RetaliationAutomaton> retal;
  retal.reserve(n);
  for (int i = 1; i <= n; ++i)
    retal.push_back(build_retaliation_automaton(ia, profile, i, autos[i - 1]));

  Region joint_safe(a.n_states());
  joint_safe.set();
  if (profile.cls == ObjClass::Safety)
    for (const auto& o : profile.players)
      joint_safe &= o.target;
  auto target_bits = [&](int s) {
    if (profile.cls != ObjClass::Reach)
      return 0;
    int m = 0;
    for (int j = 1; j <= n; ++j)
      if (profile.of(j).target.test(s))
        m |= 1 << (j - 1);
    return m;
  };
  auto f2_ok = [&](const ProductVertex& v) {
    for (int i = 1; i <= n; ++i)
      if (!retal[i - 1].prefix_good(v.runs[i - 1], ia.block_of(i, v.state)))
        return false;
    return true;
  };

  ProductVertex v0{a.init, target_bits(a.init), {}};
  for (int i = 1; i <= n; ++i)
    v0.runs.push_back(autos[i - 1].init);
  if (!joint_safe.test(a.init) || !f2_ok(v0))
    return d;

  std::map<ProductVertex, int> ids;
  std::vector<ProductVertex> keys;
  std::vector<std::vector<ProductEdge>> succ;
  std::vector<std::vector<int>> adj;
  auto vertex = [&](const ProductVertex& v) {
    auto it = ids.find(v);
    if (it != ids.end())
      return it->second;
    int id = static_cast<int>(keys.size());
    ids.emplace(v, id);
    keys.push_back(v);
    succ.emplace_back();
    adj.emplace_back();
    return id;
  };
  vertex(v0);
  for (size_t v = 0; v < keys.size(); ++v) {
    ProductVertex cur = keys[v];
    int s = cur.state;
    for (int act = 0; act < a.n_actions(); ++act) {
      int t = a.step(s, act);
      if (!joint_safe.test(t))
        continue;
      ProductVertex nxt;
      nxt.state = t;
      nxt.visited = cur.visited | target_bits(t);
      nxt.runs.resize(n);
      unsigned resets = 0;
      bool alive = true;
      for (int i = 1; i <= n && alive; ++i) {
        ObsLetter l{ia.block_of(i, s), a.owner[s] == i ? act : -1};
        bool rs = false;
        int q2 = autos[i - 1].step(cur.runs[i - 1], l, &rs);
        if (q2 < 0)
          alive = false;
        else {
          nxt.runs[i - 1] = q2;
          if (rs)
            resets |= 1u << (i - 1);
        }
      }
      if (!alive || !f2_ok(nxt))
        continue;
      int w = vertex(nxt);
      succ[v].push_back({w, act, resets});
      adj[v].push_back(w);
    }
    std::sort(adj[v].begin(), adj[v].end());
    adj[v].erase(std::unique(adj[v].begin(), adj[v].end()), adj[v].end());
  }

  const unsigned all_players = (1u << n) - 1;
  const int full_targets = profile.cls == ObjClass::Reach ? (1 << n) - 1 : 0;
  Region carrier(keys.size());
  carrier.set();
  auto sccs = scc_decompose(adj, carrier);

  // good component: all breakpoint conditions fire inside, and for
  // reachability every target has been collected by then
  std::vector<unsigned> comp_resets(sccs.count, 0);
  std::vector<int> comp_first(sccs.count, -1);
  for (size_t v = 0; v < keys.size(); ++v) {
    int c = sccs.comp[v];
    if (comp_first[c] < 0)
      comp_first[c] = static_cast<int>(v);
    for (const auto& e : succ[v])
      if (sccs.comp[e.to] == c)
        comp_resets[c] |= e.resets;
  }
  std::vector<int> order(sccs.count);
  for (int c = 0; c < sccs.count; ++c)
    order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return comp_first[x] < comp_first[y]; });

  for (int c : order) {
    if (comp_resets[c] != all_players)
      continue;
    if (profile.cls == ObjClass::Reach &&
        keys[comp_first[c]].visited != full_targets)
      continue;
    Region comp(keys.size());
    for (size_t v = 0; v < keys.size(); ++v)
      if (sccs.comp[v] == c)
        comp.set(v);
    // one reset edge per player, then thread them into a cycle
    std::vector<std::pair<int, int>> picked;  // (from, edge idx)
    for (int i = 0; i < n; ++i) {
      bool found = false;
      for (auto v = comp.find_first(); v != Region::npos && !found;
           v = comp.find_next(v))
        for (size_t e = 0; e < succ[v].size(); ++e) {
          const auto& ed = succ[v][e];
          if (sccs.comp[ed.to] == c && (ed.resets >> i & 1u)) {
            picked.emplace_back(static_cast<int>(v), static_cast<int>(e));
            found = true;
            break;
          }
        }
    }
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

    std::vector<int> cyc_v{picked[0].first};
    std::vector<int> cyc_a;
    auto walk_to = [&](int target) {
      auto path = bfs_path(adj, comp, cyc_v.back(), target);
      for (size_t k = 0; k + 1 < path.size(); ++k) {
        int from = path[k], to = path[k + 1];
        for (const auto& e : succ[from])
          if (e.to == to) {
            cyc_a.push_back(e.action);
            break;
          }
        cyc_v.push_back(to);
      }
    };
    for (auto [from, eidx] : picked) {
      walk_to(from);
      cyc_v.push_back(succ[from][eidx].to);
      cyc_a.push_back(succ[from][eidx].action);
    }
    walk_to(picked[0].first);

    Region all(keys.size());
    all.set();
    auto stem_v = bfs_path(adj, all, 0, picked[0].first);
    Lasso l;
    for (int v : stem_v)
      l.stem.states.push_back(keys[v].state);
    for (size_t k = 0; k + 1 < stem_v.size(); ++k)
      for (const auto& e : succ[stem_v[k]])
        if (e.to == stem_v[k + 1]) {
          l.stem.actions.push_back(e.action);
          break;
        }
    for (int v : cyc_v)
      l.cycle.states.push_back(keys[v].state);
    l.cycle.actions = cyc_a;
    d.exists = true;
    d.witness_lasso = l;
    return d;
  }
  return d;
}

} // namespace doomsday
