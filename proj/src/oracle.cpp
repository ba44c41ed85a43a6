#include "doomsday/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>

#include "doomsday/de_perfect.hpp"
#include "doomsday/witness.hpp"
#include "doomsday/zerosum.hpp"
#include "graph_util.hpp"

namespace doomsday {

int oracle_max_states(ObjClass cls) {
  if (const char* env = std::getenv("DOOMSDAY_ORACLE_MAX_STATES")) {
    int v = std::atoi(env);
    if (v > 0)
      return v;
  }
  return cls == ObjClass::Parity ? 4 : 5;
}

namespace {

/// Product graph for strategy enumeration: every vertex is action-total;
/// `choice` marks the enumerating player's decision points.
struct BruteGame {
  int n_actions = 0;
  std::vector<char> choice;
  std::vector<std::vector<int>> next;  // [v][action]
  std::vector<int> state;              // arena state projection
  std::vector<int> mask;               // aux annotation (bit products)

  int size() const { return static_cast<int>(next.size()); }
};

/// Adjacency of the one-player-fixed subgraph on `reach`.
std::vector<std::vector<int>> fixed_adj(const BruteGame& g,
                                        const std::vector<int>& assign,
                                        const Region& reach) {
  std::vector<std::vector<int>> adj(g.size());
  for (auto v = reach.find_first(); v != Region::npos; v = reach.find_next(v)) {
    int iv = static_cast<int>(v);
    if (g.choice[iv]) {
      adj[iv].push_back(g.next[iv][assign[iv]]);
    } else {
      adj[iv] = g.next[iv];
      std::sort(adj[iv].begin(), adj[iv].end());
      adj[iv].erase(std::unique(adj[iv].begin(), adj[iv].end()), adj[iv].end());
    }
  }
  return adj;
}

/// Backtracking over the enumerating player's reachable decision points;
/// a strategy is accepted when `has_bad` finds no violating play.
bool exists_winning_choice(
    const BruteGame& g, int start,
    const std::function<bool(const std::vector<int>&, const Region&)>& has_bad) {
  std::vector<int> assign(g.size(), -1);
  std::function<bool()> rec = [&]() -> bool {
    Region reach(g.size());
    std::vector<int> queue{start};
    reach.set(start);
    int frontier = -1;
    for (size_t q = 0; q < queue.size() && frontier < 0; ++q) {
      int v = queue[q];
      if (g.choice[v] && assign[v] < 0) {
        frontier = v;
        break;
      }
      if (g.choice[v]) {
        int w = g.next[v][assign[v]];
        if (!reach.test(w)) {
          reach.set(w);
          queue.push_back(w);
        }
      } else {
        for (int a = 0; a < g.n_actions; ++a) {
          int w = g.next[v][a];
          if (!reach.test(w)) {
            reach.set(w);
            queue.push_back(w);
          }
        }
      }
    }
    if (frontier < 0) {
      // complete over the reachable part; run the play check
      // (recompute reach fully: queue stopped early only on frontier)
      return !has_bad(assign, reach);
    }
    for (int a = 0; a < g.n_actions; ++a) {
      assign[frontier] = a;
      if (rec())
        return true;
    }
    assign[frontier] = -1;
    return false;
  };
  return rec();
}

/// Cycle inside `allowed` whose minimal value of f1 equals a (and, when f2
/// given, minimal f2 equals b).
bool exists_cycle_minima(const std::vector<std::vector<int>>& adj,
                         const Region& allowed,
                         const std::function<int(int)>& f1, int a,
                         const std::function<int(int)>* f2 = nullptr,
                         int b = 0) {
  Region sub(allowed.size());
  Region m1(allowed.size()), m2(allowed.size());
  for (auto v = allowed.find_first(); v != Region::npos;
       v = allowed.find_next(v)) {
    int iv = static_cast<int>(v);
    if (f1(iv) < a || (f2 && (*f2)(iv) < b))
      continue;
    sub.set(iv);
    if (f1(iv) == a)
      m1.set(iv);
    if (f2 && (*f2)(iv) == b)
      m2.set(iv);
  }
  if (m1.none() || (f2 && m2.none()))
    return false;
  auto sccs = scc_decompose(adj, sub);
  std::vector<char> has1(sccs.count, 0), has2(sccs.count, 0),
      nontrivial(sccs.count, 0);
  std::vector<int> sz(sccs.count, 0);
  for (auto v = sub.find_first(); v != Region::npos; v = sub.find_next(v)) {
    int iv = static_cast<int>(v);
    int c = sccs.comp[iv];
    ++sz[c];
    if (m1.test(iv))
      has1[c] = 1;
    if (!f2 || m2.test(iv))
      has2[c] = 1;
    for (int w : adj[iv])
      if (w == iv && sub.test(w))
        nontrivial[c] = 1;
  }
  for (int c = 0; c < sccs.count; ++c)
    if (has1[c] && has2[c] && (sz[c] > 1 || nontrivial[c]))
      return true;
  return false;
}

/// Cycle inside `allowed` containing a `marker` vertex.
bool exists_marked_cycle(const std::vector<std::vector<int>>& adj,
                         const Region& allowed, const Region& marker) {
  auto sccs = scc_decompose(adj, allowed);
  for (auto v = (allowed & marker).find_first(); v != Region::npos;
       v = (allowed & marker).find_next(v))
    if (on_cycle(adj, allowed, sccs, static_cast<int>(v)))
      return true;
  return false;
}

struct BruteBuild {
  BruteGame game;
  std::vector<int> entry;  // per arena state
};

BruteBuild build_plain(const Arena& a, int i) {
  BruteBuild b;
  b.game.n_actions = a.n_actions();
  b.game.choice.resize(a.n_states());
  b.game.next.resize(a.n_states());
  b.game.state.resize(a.n_states());
  b.game.mask.assign(a.n_states(), 0);
  for (int s = 0; s < a.n_states(); ++s) {
    b.game.choice[s] = a.owner[s] == i;
    b.game.state[s] = s;
    for (int act = 0; act < a.n_actions(); ++act)
      b.game.next[s].push_back(a.step(s, act));
  }
  b.entry.resize(a.n_states());
  for (int s = 0; s < a.n_states(); ++s)
    b.entry[s] = s;
  return b;
}

BruteBuild build_counter(const Arena& a, const ObjectiveProfile& profile,
                         int i) {
  const int n = a.n_players;
  const int n_mem = n + 1;
  auto step_counter = [&](int c, int entered) {
    int base = c == n ? 0 : c;
    if (!profile.of(base + 1).target.test(entered))
      ++base;
    return base;
  };
  BruteBuild b;
  auto vid = [&](int s, int c) { return s * n_mem + c; };
  int total = a.n_states() * n_mem;
  b.game.n_actions = a.n_actions();
  b.game.choice.resize(total);
  b.game.next.resize(total);
  b.game.state.resize(total);
  b.game.mask.resize(total);
  for (int s = 0; s < a.n_states(); ++s)
    for (int c = 0; c < n_mem; ++c) {
      int v = vid(s, c);
      b.game.choice[v] = a.owner[s] == i;
      b.game.state[v] = s;
      b.game.mask[v] = c;
      for (int act = 0; act < a.n_actions(); ++act) {
        int t = a.step(s, act);
        b.game.next[v].push_back(vid(t, step_counter(c, t)));
      }
    }
  b.entry.resize(a.n_states());
  for (int s = 0; s < a.n_states(); ++s)
    b.entry[s] = vid(s, 0);
  return b;
}

BruteBuild build_bits(const Arena& a, const ObjectiveProfile& profile, int i) {
  const int n = a.n_players;
  const int n_masks = 1 << n;
  auto bits_of = [&](int s) {
    int m = 0;
    for (int j = 1; j <= n; ++j)
      if (!profile.of(j).target.test(s))
        m |= 1 << (j - 1);
    return m;
  };
  BruteBuild b;
  auto vid = [&](int s, int m) { return s * n_masks + m; };
  int total = a.n_states() * n_masks;
  b.game.n_actions = a.n_actions();
  b.game.choice.resize(total);
  b.game.next.resize(total);
  b.game.state.resize(total);
  b.game.mask.resize(total);
  for (int s = 0; s < a.n_states(); ++s)
    for (int m = 0; m < n_masks; ++m) {
      int v = vid(s, m);
      b.game.choice[v] = a.owner[s] == i;
      b.game.state[v] = s;
      b.game.mask[v] = m;
      for (int act = 0; act < a.n_actions(); ++act) {
        int t = a.step(s, act);
        b.game.next[v].push_back(vid(t, m | bits_of(t)));
      }
    }
  b.entry.resize(a.n_states());
  for (int s = 0; s < a.n_states(); ++s)
    b.entry[s] = vid(s, bits_of(s));
  return b;
}

/// State-LAR product for one enumerating player: vertices are permutations
/// of states with the current state in front.
struct LarBuild {
  BruteGame game;
  std::vector<int> entry;
  std::vector<std::vector<uint8_t>> perms;
};

LarBuild build_state_lar(const Arena& a, int i) {
  LarBuild b;
  b.game.n_actions = a.n_actions();
  std::map<std::vector<uint8_t>, int> ids;
  std::vector<int> worklist;
  auto vertex = [&](std::vector<uint8_t> perm) {
    auto it = ids.find(perm);
    if (it != ids.end())
      return it->second;
    int v = static_cast<int>(b.perms.size());
    ids.emplace(perm, v);
    b.perms.push_back(std::move(perm));
    b.game.choice.push_back(0);
    b.game.next.emplace_back();
    b.game.state.push_back(0);
    b.game.mask.push_back(0);
    worklist.push_back(v);
    return v;
  };
  auto entry_perm = [&](int s) {
    std::vector<uint8_t> p;
    p.push_back(static_cast<uint8_t>(s));
    for (int t = 0; t < a.n_states(); ++t)
      if (t != s)
        p.push_back(static_cast<uint8_t>(t));
    return p;
  };
  b.entry.resize(a.n_states());
  for (int s = 0; s < a.n_states(); ++s)
    b.entry[s] = vertex(entry_perm(s));
  for (size_t w = 0; w < worklist.size(); ++w) {
    int v = worklist[w];
    auto perm = b.perms[v];
    int s = perm[0];
    b.game.choice[v] = a.owner[s] == i;
    b.game.state[v] = s;
    for (int act = 0; act < a.n_actions(); ++act) {
      int t = a.step(s, act);
      auto nxt = perm;
      auto pos = std::find(nxt.begin(), nxt.end(), static_cast<uint8_t>(t));
      std::rotate(nxt.begin(), pos, pos + 1);
      b.game.next[v].push_back(vertex(std::move(nxt)));
    }
  }
  return b;
}

/// Bad-play predicate for the retaliation objective of each class on a
/// one-player-fixed product subgraph.
bool retaliation_bad(const Arena& a, const ObjectiveProfile& profile, int i,
                     const BruteGame& g,
                     const std::vector<std::vector<int>>& adj,
                     const Region& reach, int start) {
  auto lift_states = [&](const Region& states) {
    Region r(g.size());
    for (auto v = reach.find_first(); v != Region::npos; v = reach.find_next(v))
      if (states.test(g.state[v]))
        r.set(v);
    return r;
  };
  switch (profile.cls) {
    case ObjClass::Buchi: {
      Region all_targets(a.n_states());
      for (const auto& o : profile.players)
        all_targets |= o.target;
      Region allowed = lift_states(~profile.of(i).target) & reach;
      Region marker = lift_states(all_targets);
      return exists_marked_cycle(adj, allowed, marker);
    }
    case ObjClass::CoBuchi: {
      for (int j = 1; j <= a.n_players; ++j) {
        Region allowed = lift_states(profile.of(j).target) & reach;
        Region marker = lift_states(~profile.of(i).target);
        if (exists_marked_cycle(adj, allowed, marker))
          return true;
      }
      return false;
    }
    case ObjClass::Safety: {
      // trapped in a layer where the own bit is set but not all
      const int full = (1 << a.n_players) - 1;
      const int own = 1 << (i - 1);
      auto sccs = scc_decompose(adj, reach);
      for (auto v = reach.find_first(); v != Region::npos;
           v = reach.find_next(v)) {
        int iv = static_cast<int>(v);
        int m = g.mask[iv];
        if ((m & own) && m != full &&
            on_cycle(adj, reach, sccs, iv))
          return true;
      }
      return false;
    }
    case ObjClass::Reach: {
      // play avoiding the own target forever while hitting someone's
      Region allowed = lift_states(~profile.of(i).target) & reach;
      if (!allowed.test(start))
        return false;
      Region avoid_reach = reachable_from(adj, allowed, start);
      Region someone(a.n_states());
      for (int j = 1; j <= a.n_players; ++j)
        if (j != i)
          someone |= profile.of(j).target;
      auto sccs = scc_decompose(adj, avoid_reach);
      Region cyc(g.size());
      for (auto v = avoid_reach.find_first(); v != Region::npos;
           v = avoid_reach.find_next(v))
        if (on_cycle(adj, avoid_reach, sccs, static_cast<int>(v)))
          cyc.set(v);
      if (cyc.none())
        return false;
      for (auto v = avoid_reach.find_first(); v != Region::npos;
           v = avoid_reach.find_next(v)) {
        int iv = static_cast<int>(v);
        if (!someone.test(g.state[iv]))
          continue;
        if (reachable_from(adj, avoid_reach, iv).intersects(cyc))
          return true;
      }
      return false;
    }
    case ObjClass::Parity: {
      auto fi = [&](int v) { return profile.of(i).priority[g.state[v]]; };
      int di = *std::max_element(profile.of(i).priority.begin(),
                                 profile.of(i).priority.end());
      for (int j = 1; j <= a.n_players; ++j) {
        auto fj = std::function<int(int)>(
            [&, j](int v) { return profile.of(j).priority[g.state[v]]; });
        int dj = *std::max_element(profile.of(j).priority.begin(),
                                   profile.of(j).priority.end());
        for (int pa = 1; pa <= di; pa += 2)
          for (int pb = 0; pb <= dj; pb += 2)
            if (exists_cycle_minima(adj, reach, fi, pa, &fj, pb))
              return true;
      }
      return false;
    }
  }
  return false;
}

Region brute_region_impl(const Arena& a, const ObjectiveProfile& profile,
                         int i) {
  BruteBuild b;
  switch (profile.cls) {
    case ObjClass::Buchi:
    case ObjClass::Reach:
      b = build_plain(a, i);
      break;
    case ObjClass::CoBuchi:
      b = build_counter(a, profile, i);
      break;
    case ObjClass::Safety:
      b = build_bits(a, profile, i);
      break;
    case ObjClass::Parity: {
      LarBuild lb = build_state_lar(a, i);
      b.game = std::move(lb.game);
      b.entry = std::move(lb.entry);
      break;
    }
  }
  Region region(a.n_states());
  for (int s = 0; s < a.n_states(); ++s) {
    int start = b.entry[s];
    auto has_bad = [&](const std::vector<int>& assign, const Region& reach) {
      auto adj = fixed_adj(b.game, assign, reach);
      return retaliation_bad(a, profile, i, b.game, adj, reach, start);
    };
    if (exists_winning_choice(b.game, start, has_bad))
      region.set(s);
  }
  return region;
}

void check_bounds(const Arena& a, const ObjectiveProfile& profile) {
  int bound = oracle_max_states(profile.cls);
  if (a.n_states() > bound)
    raise(Err::TooLarge, std::to_string(a.n_states()) + " states (oracle bound " +
                             std::to_string(bound) + ")");
}

/// Subsets of `inter` that can host a cycle: reachable from init inside
/// `inter` and inducing a strongly connected subgraph with an edge.
std::vector<Region> cycle_candidates(const Arena& a, const Region& inter) {
  std::vector<Region> out;
  Digraph g = restrict_graph(a, inter);
  Region reach = reachable_from(g.succ, inter, a.init);
  auto members = region_ids(reach);
  const int k = static_cast<int>(members.size());
  if (k > 20)
    raise(Err::TooLarge, "cycle candidate enumeration");
  for (unsigned sub = 1; sub < (1u << k); ++sub) {
    Region c(a.n_states());
    for (int t = 0; t < k; ++t)
      if (sub >> t & 1u)
        c.set(members[t]);
    // strong connectivity of the induced subgraph, with at least one edge
    bool ok = true;
    int edges = 0;
    for (auto v = c.find_first(); v != Region::npos && ok; v = c.find_next(v)) {
      Region r = reachable_from(g.succ, c, static_cast<int>(v));
      // every other member reachable within c
      if ((c - r).any())
        ok = false;
      for (int w : g.succ[v])
        if (c.test(w))
          ++edges;
    }
    if (ok && edges > 0)
      out.push_back(c);
  }
  return out;
}

} // namespace

Region brute_region(const Arena& a, const ObjectiveProfile& profile, int i) {
  profile.validate(a);
  check_bounds(a, profile);
  return brute_region_impl(a, profile, i);
}

bool brute_de(const Arena& a, const ObjectiveProfile& profile) {
  profile.validate(a);
  check_bounds(a, profile);
  std::vector<Region> regions;
  Region inter(a.n_states());
  inter.set();
  for (int i = 1; i <= a.n_players; ++i) {
    regions.push_back(brute_region_impl(a, profile, i));
    inter &= regions.back();
  }
  if (!inter.test(a.init))
    return false;

  switch (profile.cls) {
    case ObjClass::Reach: {
      // pivot search with brute attractors
      Region pivots(a.n_states());
      pivots.set();
      for (int j = 1; j <= a.n_players; ++j) {
        BruteBuild b = build_plain(a, j);
        Region attr(a.n_states());
        for (int s = 0; s < a.n_states(); ++s) {
          auto has_bad = [&](const std::vector<int>& assign,
                             const Region& reach) {
            // a play avoiding T_j forever
            auto adj = fixed_adj(b.game, assign, reach);
            Region allowed = reach;
            for (auto v = reach.find_first(); v != Region::npos;
                 v = reach.find_next(v))
              if (profile.of(j).target.test(b.game.state[v]))
                allowed.reset(v);
            if (!allowed.test(s))
              return false;
            Region avoid = reachable_from(adj, allowed, s);
            auto sccs = scc_decompose(adj, avoid);
            for (auto v = avoid.find_first(); v != Region::npos;
                 v = avoid.find_next(v))
              if (on_cycle(adj, avoid, sccs, static_cast<int>(v)))
                return true;
            return false;
          };
          if (exists_winning_choice(b.game, s, has_bad))
            attr.set(s);
        }
        pivots &= attr;
      }
      Region someone(a.n_states());
      for (const auto& o : profile.players)
        someone |= o.target;
      Digraph g = restrict_graph(a, inter);
      Region reach = reachable_from(g.succ, inter, a.init);
      return (reach & pivots & someone).any();
    }
    case ObjClass::Safety: {
      Region w = inter;
      for (const auto& o : profile.players)
        w &= o.target;
      if (!w.test(a.init))
        return false;
      return !cycle_candidates(a, w).empty();
    }
    default: {
      for (const Region& c : cycle_candidates(a, inter)) {
        bool all = true;
        for (int i = 1; i <= a.n_players && all; ++i) {
          const auto& o = profile.of(i);
          switch (profile.cls) {
            case ObjClass::Buchi:
              all = c.intersects(o.target);
              break;
            case ObjClass::CoBuchi:
              all = c.is_subset_of(o.target);
              break;
            case ObjClass::Parity: {
              int m = INT32_MAX;
              for (auto v = c.find_first(); v != Region::npos;
                   v = c.find_next(v))
                m = std::min(m, o.priority[v]);
              all = m % 2 == 0;
              break;
            }
            default:
              all = false;
          }
        }
        if (all)
          return true;
      }
      return false;
    }
  }
}

bool brute_secure_eq_2p(const Arena& a, const ObjectiveProfile& profile) {
  if (a.n_players != 2)
    raise(Err::NotTwoPlayer, std::to_string(a.n_players) + " players");
  return brute_de(a, profile);
}

namespace {

/// All plays of a fixed subgraph, summarized per class:
///  - visit-based classes: reachable (state, visited-set) pairs from which
///    the play can cycle without growing the set;
///  - tail classes: reachable vertex sets inducing a strongly connected
///    subgraph with an edge.
bool exists_play_with(const Arena& a,
                      const std::vector<std::vector<int>>& adj, int init,
                      const std::function<bool(const Region&)>& visit_pred,
                      bool visit_based,
                      const std::function<bool(const Region&)>& inf_pred) {
  const int n = a.n_states();
  Region all(n);
  all.set();
  if (!visit_based) {
    Region reach = reachable_from(adj, all, init);
    auto members = region_ids(reach);
    const int k = static_cast<int>(members.size());
    for (unsigned sub = 1; sub < (1u << k); ++sub) {
      Region c(n);
      for (int t = 0; t < k; ++t)
        if (sub >> t & 1u)
          c.set(members[t]);
      bool ok = true;
      int edges = 0;
      for (auto v = c.find_first(); v != Region::npos && ok;
           v = c.find_next(v)) {
        Region r = reachable_from(adj, c, static_cast<int>(v));
        if ((c - r).any())
          ok = false;
        for (int w : adj[v])
          if (c.test(w))
            ++edges;
      }
      if (ok && edges > 0 && inf_pred(c))
        return true;
    }
    return false;
  }
  // visited-set product
  struct VV {
    int s;
    Region v;
    bool operator<(const VV& o) const {
      if (s != o.s)
        return s < o.s;
      return region_ids(v) < region_ids(o.v);
    }
  };
  std::map<VV, int> ids;
  std::vector<VV> keys;
  std::vector<int> queue;
  auto vertex = [&](const VV& x) {
    auto it = ids.find(x);
    if (it != ids.end())
      return it->second;
    int id = static_cast<int>(keys.size());
    ids.emplace(x, id);
    keys.push_back(x);
    queue.push_back(id);
    return id;
  };
  Region v0(n);
  v0.set(init);
  vertex({init, v0});
  for (size_t q = 0; q < queue.size(); ++q) {
    VV cur = keys[queue[q]];
    // can the play stay inside cur.v forever from here?
    Region stay = cur.v;
    auto sccs = scc_decompose(adj, stay);
    Region fwd = reachable_from(adj, stay, cur.s);
    bool cycles = false;
    for (auto v = fwd.find_first(); v != Region::npos && !cycles;
         v = fwd.find_next(v))
      cycles = on_cycle(adj, stay, sccs, static_cast<int>(v));
    if (cycles && visit_pred(cur.v))
      return true;
    for (int w : adj[cur.s]) {
      Region nv = cur.v;
      nv.set(w);
      vertex({w, nv});
    }
  }
  return false;
}

/// Fixed subgraph of one player's observation-based memoryless strategy
/// (or a perfect-information memoryless strategy when blocks are trivial).
std::vector<std::vector<int>> fix_player(const Arena& a, int player,
                                         const std::vector<int>& action_of_state) {
  std::vector<std::vector<int>> adj(a.n_states());
  for (int s = 0; s < a.n_states(); ++s) {
    if (a.owner[s] == player) {
      adj[s].push_back(a.step(s, action_of_state[s]));
    } else {
      for (int act = 0; act < a.n_actions(); ++act)
        adj[s].push_back(a.step(s, act));
      std::sort(adj[s].begin(), adj[s].end());
      adj[s].erase(std::unique(adj[s].begin(), adj[s].end()), adj[s].end());
    }
  }
  return adj;
}

bool profile_is_de(const Arena& a, const ObjectiveProfile& profile,
                   const std::vector<int>& action_of_state) {
  // condition 1: the unique outcome wins for everyone
  std::vector<int> pos(a.n_states(), -1);
  std::vector<int> states{a.init};
  pos[a.init] = 0;
  int s = a.init;
  while (true) {
    int t = a.step(s, action_of_state[s]);
    if (pos[t] >= 0) {
      Lasso l;
      l.stem.states.assign(states.begin(), states.begin() + pos[t] + 1);
      for (int k = 0; k < pos[t]; ++k)
        l.stem.actions.push_back(action_of_state[states[k]]);
      l.cycle.states.assign(states.begin() + pos[t], states.end());
      l.cycle.states.push_back(t);
      for (size_t k = pos[t]; k < states.size(); ++k)
        l.cycle.actions.push_back(action_of_state[states[k]]);
      for (const auto& o : profile.players)
        if (!eval_lasso(l, o))
          return false;
      break;
    }
    pos[t] = static_cast<int>(states.size());
    states.push_back(t);
    s = t;
  }
  // condition 2 per player
  for (int i = 1; i <= a.n_players; ++i) {
    auto adj = fix_player(a, i, action_of_state);
    for (int j = 1; j <= a.n_players; ++j) {
      if (j == i)
        continue;
      const auto& oi = profile.of(i);
      const auto& oj = profile.of(j);
      bool visit_based =
          profile.cls == ObjClass::Safety || profile.cls == ObjClass::Reach;
      auto visit_pred = [&](const Region& v) {
        if (profile.cls == ObjClass::Safety)
          return !v.is_subset_of(oi.target) && v.is_subset_of(oj.target);
        return !v.intersects(oi.target) && v.intersects(oj.target);
      };
      auto inf_pred = [&](const Region& c) {
        switch (profile.cls) {
          case ObjClass::Buchi:
            return !c.intersects(oi.target) && c.intersects(oj.target);
          case ObjClass::CoBuchi:
            return !c.is_subset_of(oi.target) && c.is_subset_of(oj.target);
          case ObjClass::Parity: {
            int mi = INT32_MAX, mj = INT32_MAX;
            for (auto v = c.find_first(); v != Region::npos;
                 v = c.find_next(v)) {
              mi = std::min(mi, oi.priority[v]);
              mj = std::min(mj, oj.priority[v]);
            }
            return mi % 2 == 1 && mj % 2 == 0;
          }
          default:
            return false;
        }
      };
      if (exists_play_with(a, adj, a.init, visit_pred, visit_based, inf_pred))
        return false;
    }
  }
  return true;
}

} // namespace

bool exists_memoryless_de(const Arena& a, const ObjectiveProfile& profile) {
  profile.validate(a);
  std::vector<int> action_of_state(a.n_states(), 0);
  std::function<bool(int)> rec = [&](int s) -> bool {
    if (s == a.n_states())
      return profile_is_de(a, profile, action_of_state);
    for (int act = 0; act < a.n_actions(); ++act) {
      action_of_state[s] = act;
      if (rec(s + 1))
        return true;
    }
    return false;
  };
  return rec(0);
}

bool exists_obs_memoryless_de(const ImperfectArena& ia,
                              const ObjectiveProfile& profile) {
  const Arena& a = ia.base;
  profile.validate(a);
  // choice per (player, own block); represented per state with the block
  // constraint enforced during enumeration
  std::vector<std::pair<int, int>> cells;  // (player, block)
  std::map<std::pair<int, int>, int> cell_of;
  for (int s = 0; s < a.n_states(); ++s) {
    auto key = std::make_pair(a.owner[s], ia.block_of(a.owner[s], s));
    if (!cell_of.count(key)) {
      cell_of[key] = static_cast<int>(cells.size());
      cells.push_back(key);
    }
  }
  std::vector<int> cell_action(cells.size(), 0);
  std::vector<int> action_of_state(a.n_states(), 0);
  auto apply = [&]() {
    for (int s = 0; s < a.n_states(); ++s)
      action_of_state[s] =
          cell_action[cell_of.at({a.owner[s], ia.block_of(a.owner[s], s)})];
  };
  std::function<bool(size_t)> rec = [&](size_t c) -> bool {
    if (c == cells.size()) {
      apply();
      return profile_is_de(a, profile, action_of_state);
    }
    for (int act = 0; act < a.n_actions(); ++act) {
      cell_action[c] = act;
      if (rec(c + 1))
        return true;
    }
    return false;
  };
  return rec(0);
}

bool zero_sum_buchi_wins(const Arena& src, const Region& target) {
  TwoPlayerGame g = coalition_lift(src, {1});
  Region all(g.size());
  all.set();
  return solve_one_pair_streett(g, all, target).test(src.init);
}

namespace {

bool zero_sum_parity_pair(const Arena& src, const std::vector<int>& p1,
                          const std::vector<int>& p2, bool conjunction) {
  // protagonist = player 1; LAR memory for the conjunction, plain vertices
  // suffice for the disjunction (a union of parity pairs)
  BruteBuild b;
  if (conjunction) {
    LarBuild lb = build_state_lar(src, 1);
    b.game = std::move(lb.game);
    b.entry = std::move(lb.entry);
  } else {
    b = build_plain(src, 1);
  }
  int d1 = *std::max_element(p1.begin(), p1.end());
  int d2 = *std::max_element(p2.begin(), p2.end());
  auto has_bad = [&](const std::vector<int>& assign, const Region& reach) {
    auto adj = fixed_adj(b.game, assign, reach);
    auto f1 = std::function<int(int)>(
        [&](int v) { return p1[b.game.state[v]]; });
    auto f2 = std::function<int(int)>(
        [&](int v) { return p2[b.game.state[v]]; });
    if (conjunction) {
      for (int pa = 1; pa <= d1; pa += 2)
        if (exists_cycle_minima(adj, reach, f1, pa))
          return true;
      for (int pb = 1; pb <= d2; pb += 2)
        if (exists_cycle_minima(adj, reach, f2, pb))
          return true;
      return false;
    }
    for (int pa = 1; pa <= d1; pa += 2)
      for (int pb = 1; pb <= d2; pb += 2)
        if (exists_cycle_minima(adj, reach, f1, pa, &f2, pb))
          return true;
    return false;
  };
  return exists_winning_choice(b.game, b.entry[src.init], has_bad);
}

} // namespace

bool zero_sum_conj_parity_wins(const Arena& src, const std::vector<int>& p1,
                               const std::vector<int>& p2) {
  return zero_sum_parity_pair(src, p1, p2, true);
}

bool zero_sum_disj_parity_wins(const Arena& src, const std::vector<int>& p1,
                               const std::vector<int>& p2) {
  return zero_sum_parity_pair(src, p1, p2, false);
}

} // namespace doomsday
