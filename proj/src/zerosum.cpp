#include "doomsday/zerosum.hpp"

#include <algorithm>
#include <deque>

namespace doomsday {

int TwoPlayerGame::add_vertex(Side s, int orig, int mem) {
  owner.push_back(s == Side::Protagonist ? 1 : 0);
  succ.emplace_back();
  origin.push_back(orig);
  memory.push_back(mem);
  return size() - 1;
}

void TwoPlayerGame::add_edge(int from, int to, int action) {
  succ[from].push_back({to, action});
}

const TwoPlayerGame::Edge& MemorylessStrategy::at(const TwoPlayerGame& g,
                                                  int v) const {
  if (v < 0 || static_cast<size_t>(v) >= domain.size() || !domain.test(v) ||
      choice[v] < 0)
    raise(Err::NotWinning, "no strategy at vertex " + std::to_string(v));
  return g.succ[v][choice[v]];
}

namespace {

/// Attractor for `side` towards `target`, restricted to `mask`.  Fills the
/// attracting side's edge choices (rank-decreasing) and BFS ranks.
Region attr_masked(const TwoPlayerGame& g, const Region& mask,
                   const Region& target, Side side,
                   std::vector<int>* strat = nullptr,
                   std::vector<int>* rank = nullptr) {
  const int n = g.size();
  Region result = target & mask;
  std::vector<int> cnt(n, 0);
  std::vector<std::vector<std::pair<int, int>>> pred(n);  // (vertex, edge idx)
  for (auto v = mask.find_first(); v != Region::npos; v = mask.find_next(v)) {
    int iv = static_cast<int>(v);
    for (size_t e = 0; e < g.succ[iv].size(); ++e) {
      int w = g.succ[iv][e].to;
      if (!mask.test(w))
        continue;
      pred[w].emplace_back(iv, static_cast<int>(e));
      if (!g.owned_by(iv, side))
        ++cnt[iv];
    }
  }
  std::deque<int> queue;
  if (rank)
    rank->assign(n, -1);
  for (auto v = result.find_first(); v != Region::npos; v = result.find_next(v)) {
    queue.push_back(static_cast<int>(v));
    if (rank)
      (*rank)[v] = 0;
  }
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (auto [v, e] : pred[w]) {
      if (result.test(v))
        continue;
      if (g.owned_by(v, side)) {
        result.set(v);
        if (strat)
          (*strat)[v] = e;
        if (rank)
          (*rank)[v] = (*rank)[w] + 1;
        queue.push_back(v);
      } else if (--cnt[v] == 0) {
        result.set(v);
        if (rank)
          (*rank)[v] = (*rank)[w] + 1;
        queue.push_back(v);
      }
    }
  }
  return result;
}

/// Zielonka recursion on the subgame `mask`.  `strat[v]` receives the edge
/// choice of whichever side wins v (owned vertices only).
void zielonka(const TwoPlayerGame& g, const std::vector<int>& prio,
              const Region& mask, Region& win_p, Region& win_a,
              std::vector<int>& strat) {
  if (mask.none())
    return;
  int p = -1;
  for (auto v = mask.find_first(); v != Region::npos; v = mask.find_next(v))
    p = p < 0 ? prio[v] : std::min(p, prio[v]);
  Side sigma = p % 2 == 0 ? Side::Protagonist : Side::Antagonist;
  Region U(mask.size());
  for (auto v = mask.find_first(); v != Region::npos; v = mask.find_next(v))
    if (prio[v] == p)
      U.set(v);

  std::vector<int> attr_strat(g.size(), -1);
  Region A = attr_masked(g, mask, U, sigma, &attr_strat);

  Region sub_p(mask.size()), sub_a(mask.size());
  std::vector<int> sub_strat(g.size(), -1);
  zielonka(g, prio, mask - A, sub_p, sub_a, sub_strat);
  Region& sub_opp = sigma == Side::Protagonist ? sub_a : sub_p;

  if (sub_opp.none()) {
    // sigma wins the whole mask: subgame strategy outside A, attractor
    // choices on A\U, and on U any edge staying in the mask.
    (sigma == Side::Protagonist ? win_p : win_a) |= mask;
    for (auto v = mask.find_first(); v != Region::npos; v = mask.find_next(v)) {
      int iv = static_cast<int>(v);
      if (!g.owned_by(iv, sigma))
        continue;
      if (U.test(iv)) {
        for (size_t e = 0; e < g.succ[iv].size(); ++e)
          if (mask.test(g.succ[iv][e].to)) {
            strat[iv] = static_cast<int>(e);
            break;
          }
      } else if (A.test(iv)) {
        strat[iv] = attr_strat[iv];
      } else {
        strat[iv] = sub_strat[iv];
      }
    }
    return;
  }

  std::vector<int> attr_b(g.size(), -1);
  Side opp = other(sigma);
  Region B = attr_masked(g, mask, sub_opp, opp, &attr_b);
  Region rest_p(mask.size()), rest_a(mask.size());
  std::vector<int> rest_strat(g.size(), -1);
  zielonka(g, prio, mask - B, rest_p, rest_a, rest_strat);

  win_p |= rest_p;
  win_a |= rest_a;
  (opp == Side::Protagonist ? win_p : win_a) |= B;
  for (auto v = mask.find_first(); v != Region::npos; v = mask.find_next(v)) {
    int iv = static_cast<int>(v);
    if (B.test(iv)) {
      if (!g.owned_by(iv, opp))
        continue;
      strat[iv] = sub_opp.test(iv) ? sub_strat[iv] : attr_b[iv];
    } else {
      if (rest_strat[iv] >= 0)
        strat[iv] = rest_strat[iv];
    }
  }
}

} // namespace

Region attractor(const TwoPlayerGame& g, const Region& target, Side side,
                 MemorylessStrategy* strat, std::vector<int>* rank) {
  Region mask(g.size());
  mask.set();
  std::vector<int> choices(g.size(), -1);
  Region r = attr_masked(g, mask, target, side, &choices, rank);
  if (strat) {
    strat->domain = r;
    strat->choice = std::move(choices);
  }
  return r;
}

Region safe_region(const TwoPlayerGame& g, const Region& safe, Side side,
                   MemorylessStrategy* strat) {
  Region mask(g.size());
  mask.set();
  Region escape = attr_masked(g, mask, mask - safe, other(side));
  Region r = mask - escape;
  if (strat) {
    strat->domain = r;
    strat->choice.assign(g.size(), -1);
    for (auto v = r.find_first(); v != Region::npos; v = r.find_next(v)) {
      int iv = static_cast<int>(v);
      if (!g.owned_by(iv, side))
        continue;
      for (size_t e = 0; e < g.succ[iv].size(); ++e)
        if (r.test(g.succ[iv][e].to)) {
          strat->choice[iv] = static_cast<int>(e);
          break;
        }
    }
  }
  return r;
}

ParityResult solve_parity(const TwoPlayerGame& g,
                          const std::vector<int>& priority) {
  ParityResult res;
  res.win_protagonist = Region(g.size());
  res.win_antagonist = Region(g.size());
  std::vector<int> strat(g.size(), -1);
  Region mask(g.size());
  mask.set();
  zielonka(g, priority, mask, res.win_protagonist, res.win_antagonist, strat);
  res.strat_protagonist.domain = res.win_protagonist;
  res.strat_antagonist.domain = res.win_antagonist;
  res.strat_protagonist.choice.assign(g.size(), -1);
  res.strat_antagonist.choice.assign(g.size(), -1);
  for (int v = 0; v < g.size(); ++v) {
    if (strat[v] < 0)
      continue;
    if (res.win_protagonist.test(v) && g.owned_by(v, Side::Protagonist))
      res.strat_protagonist.choice[v] = strat[v];
    if (res.win_antagonist.test(v) && g.owned_by(v, Side::Antagonist))
      res.strat_antagonist.choice[v] = strat[v];
  }
  return res;
}

static std::vector<int> streett1_priorities(const TwoPlayerGame& g,
                                            const Region& E, const Region& F) {
  std::vector<int> prio(g.size(), 2);
  for (int v = 0; v < g.size(); ++v) {
    if (F.test(v))
      prio[v] = 0;
    else if (E.test(v))
      prio[v] = 1;
  }
  return prio;
}

Region solve_one_pair_streett(const TwoPlayerGame& g, const Region& E,
                              const Region& F, MemorylessStrategy* strat) {
  auto res = solve_parity(g, streett1_priorities(g, E, F));
  if (strat)
    *strat = res.strat_protagonist;
  return res.win_protagonist;
}

Region solve_generalized_reachability(const TwoPlayerGame& g,
                                      const std::vector<Region>& targets,
                                      int max_targets) {
  const int k = static_cast<int>(targets.size());
  if (k > max_targets)
    raise(Err::TooManyTargets, std::to_string(k) + " target sets");
  if (k == 0) {
    Region all(g.size());
    all.set();
    return all;
  }
  const int n_masks = 1 << k;
  auto bits_of = [&](int v) {
    int m = 0;
    for (int t = 0; t < k; ++t)
      if (targets[t].test(v))
        m |= 1 << t;
    return m;
  };
  // product vertex (v, mask), mask already includes v's own memberships
  auto id = [&](int v, int m) { return v * n_masks + m; };
  TwoPlayerGame prod;
  prod.owner.assign(static_cast<size_t>(g.size()) * n_masks, 0);
  prod.succ.resize(static_cast<size_t>(g.size()) * n_masks);
  prod.origin.assign(static_cast<size_t>(g.size()) * n_masks, -1);
  prod.memory.assign(static_cast<size_t>(g.size()) * n_masks, 0);
  for (int v = 0; v < g.size(); ++v)
    for (int m = 0; m < n_masks; ++m) {
      int pv = id(v, m);
      prod.owner[pv] = g.owner[v];
      prod.origin[pv] = v;
      prod.memory[pv] = m;
      for (const auto& e : g.succ[v])
        prod.succ[pv].push_back({id(e.to, m | bits_of(e.to)), e.action});
    }
  Region goal(prod.size());
  for (int v = 0; v < g.size(); ++v)
    goal.set(id(v, n_masks - 1));
  Region win = attractor(prod, goal, Side::Protagonist);
  Region out(g.size());
  for (int v = 0; v < g.size(); ++v)
    if (win.test(id(v, bits_of(v))))
      out.set(v);
  return out;
}

TwoPlayerGame coalition_lift(const Arena& a,
                             const std::vector<int>& protagonist_players) {
  Region prot(a.n_players + 1);
  for (int p : protagonist_players)
    prot.set(p);
  TwoPlayerGame g;
  for (int s = 0; s < a.n_states(); ++s)
    g.add_vertex(prot.test(a.owner[s]) ? Side::Protagonist : Side::Antagonist,
                 s, 0);
  for (int s = 0; s < a.n_states(); ++s)
    for (int act = 0; act < a.n_actions(); ++act)
      g.add_edge(s, a.step(s, act), act);
  return g;
}

MemorylessStrategy extract_memoryless_strategy(const TwoPlayerGame& g,
                                               const Region& winning,
                                               CertificateKind kind,
                                               const Region* a, const Region* b,
                                               const std::vector<int>* prio) {
  MemorylessStrategy s;
  switch (kind) {
    case CertificateKind::Reach:
      attractor(g, *a, Side::Protagonist, &s);
      break;
    case CertificateKind::Safe:
      safe_region(g, *a, Side::Protagonist, &s);
      break;
    case CertificateKind::Parity:
      s = solve_parity(g, *prio).strat_protagonist;
      break;
    case CertificateKind::Streett1:
      s = solve_parity(g, streett1_priorities(g, *a, *b)).strat_protagonist;
      break;
  }
  s.domain &= winning;
  return s;
}

} // namespace doomsday
