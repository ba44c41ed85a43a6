#include <doctest.h>

#include <functional>
#include <random>

#include "doomsday/zerosum.hpp"
#include "helpers.hpp"

using namespace doomsday;
using namespace doomsday::testing;

namespace {

TwoPlayerGame random_game(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  TwoPlayerGame g;
  for (int v = 0; v < n; ++v)
    g.add_vertex(rng() % 2 ? Side::Protagonist : Side::Antagonist, v, 0);
  for (int v = 0; v < n; ++v) {
    int deg = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < deg; ++e)
      g.add_edge(v, static_cast<int>(rng() % n), -1);
  }
  return g;
}

/// All vertex sets hosting a cycle of the one-side-fixed subgraph reachable
/// from `from`; calls `bad` on each and reports whether any violates.
bool has_bad_cycle(const TwoPlayerGame& g, Side side,
                   const std::vector<int>& choice, int from,
                   const std::function<bool(const Region&)>& bad) {
  const int n = g.size();
  auto succs = [&](int v) {
    std::vector<int> out;
    if (g.owned_by(v, side))
      out.push_back(g.succ[v][choice[v]].to);
    else
      for (const auto& e : g.succ[v])
        out.push_back(e.to);
    return out;
  };
  Region reach(n);
  reach.set(from);
  std::vector<int> queue{from};
  for (size_t q = 0; q < queue.size(); ++q)
    for (int w : succs(queue[q]))
      if (!reach.test(w)) {
        reach.set(w);
        queue.push_back(w);
      }
  auto members = region_ids(reach);
  int k = static_cast<int>(members.size());
  for (unsigned sub = 1; sub < (1u << k); ++sub) {
    Region c(n);
    for (int t = 0; t < k; ++t)
      if (sub >> t & 1u)
        c.set(members[t]);
    bool sc = true;
    int edges = 0;
    for (auto v = c.find_first(); v != Region::npos && sc; v = c.find_next(v)) {
      Region r(n);
      r.set(v);
      std::vector<int> q2{static_cast<int>(v)};
      for (size_t qq = 0; qq < q2.size(); ++qq)
        for (int w : succs(q2[qq]))
          if (c.test(w) && !r.test(w)) {
            r.set(w);
            q2.push_back(w);
          }
      if ((c - r).any())
        sc = false;
      for (int w : succs(static_cast<int>(v)))
        if (c.test(w))
          ++edges;
    }
    if (sc && edges > 0 && bad(c))
      return true;
  }
  return false;
}

/// Memoryless enumeration: does `side` have a strategy from `from` whose
/// every cycle satisfies `good`?
bool brute_side_wins(const TwoPlayerGame& g, Side side, int from,
                     const std::function<bool(const Region&)>& good) {
  std::vector<int> choice(g.size(), 0);
  std::vector<int> own;
  for (int v = 0; v < g.size(); ++v)
    if (g.owned_by(v, side))
      own.push_back(v);
  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (k == own.size())
      return !has_bad_cycle(g, side, choice, from,
                            [&](const Region& c) { return !good(c); });
    for (size_t e = 0; e < g.succ[own[k]].size(); ++e) {
      choice[own[k]] = static_cast<int>(e);
      if (rec(k + 1))
        return true;
    }
    return false;
  };
  return rec(0);
}

} // namespace

TEST_CASE("attractor basics") {
  TwoPlayerGame g = coalition_lift(a2(), {1});
  Region all = make_region(2, true);
  CHECK(attractor(g, all, Side::Protagonist) == all);
  CHECK(attractor(g, make_region(2), Side::Protagonist) == make_region(2));
  // player 1 owns vertex 0 and can play a into {1}
  CHECK(attractor(g, region_from(2, {1}), Side::Protagonist) == all);
}

TEST_CASE("safe_region basics") {
  TwoPlayerGame g = coalition_lift(a2(), {1});
  Region all = make_region(2, true);
  CHECK(safe_region(g, all, Side::Protagonist) == all);
  CHECK(safe_region(g, make_region(2), Side::Protagonist) == make_region(2));
  MemorylessStrategy strat;
  Region r = safe_region(g, region_from(2, {0}), Side::Protagonist, &strat);
  CHECK(r == region_from(2, {0}));
  CHECK(strat.at(g, 0).action == 1);  // keep playing b
}

TEST_CASE("solve_parity trivial games") {
  TwoPlayerGame g = random_game(4, 11);
  auto all0 = solve_parity(g, {0, 0, 0, 0});
  CHECK(all0.win_protagonist == make_region(4, true));
  auto all1 = solve_parity(g, {1, 1, 1, 1});
  CHECK(all1.win_protagonist == make_region(4));

  TwoPlayerGame single;
  single.add_vertex(Side::Protagonist, 0, 0);
  single.add_edge(0, 0, -1);
  single.add_edge(0, 0, -1);  // two parallel self-loops via memory labels
  auto res = solve_parity(single, {1});
  CHECK(res.win_antagonist == make_region(1, true));
}

TEST_CASE("solve_one_pair_streett basics") {
  TwoPlayerGame g = random_game(4, 5);
  Region all = make_region(4, true);
  CHECK(solve_one_pair_streett(g, make_region(4), make_region(4)) == all);
  CHECK(solve_one_pair_streett(g, all, all) == all);

  TwoPlayerGame single;
  single.add_vertex(Side::Antagonist, 0, 0);
  single.add_edge(0, 0, -1);
  CHECK(solve_one_pair_streett(single, make_region(1, true), make_region(1)) ==
        make_region(1));
}

TEST_CASE("generalized reachability") {
  TwoPlayerGame g = random_game(4, 9);
  CHECK(solve_generalized_reachability(g, {}) == make_region(4, true));
  CHECK(solve_generalized_reachability(g, {make_region(4, true)}) ==
        make_region(4, true));

  // two sinks behind one choice: both targets cannot be visited
  TwoPlayerGame fork;
  fork.add_vertex(Side::Protagonist, 0, 0);
  fork.add_vertex(Side::Antagonist, 1, 0);
  fork.add_vertex(Side::Antagonist, 2, 0);
  fork.add_edge(0, 1, -1);
  fork.add_edge(0, 2, -1);
  fork.add_edge(1, 1, -1);
  fork.add_edge(2, 2, -1);
  Region win = solve_generalized_reachability(
      fork, {region_from(3, {1}), region_from(3, {2})});
  CHECK_FALSE(win.test(0));
  CHECK(win == make_region(3));

  std::vector<Region> many(13, make_region(3, true));
  try {
    solve_generalized_reachability(fork, many);
    FAIL("expected TooManyTargets");
  } catch (const Error& e) {
    CHECK(e.code() == Err::TooManyTargets);
  }
}

TEST_CASE("coalition_lift ownership") {
  Arena a = a2();
  TwoPlayerGame everyone = coalition_lift(a, {1, 2});
  CHECK(everyone.owned_by(0, Side::Protagonist));
  CHECK(everyone.owned_by(1, Side::Protagonist));
  TwoPlayerGame nobody = coalition_lift(a, {});
  CHECK(nobody.owned_by(0, Side::Antagonist));
  CHECK(nobody.owned_by(1, Side::Antagonist));
  TwoPlayerGame first = coalition_lift(a, {1});
  CHECK(first.owned_by(0, Side::Protagonist));
  CHECK(first.owned_by(1, Side::Antagonist));
}

TEST_CASE("extract_memoryless_strategy certificates") {
  Arena a = a2();
  TwoPlayerGame g = coalition_lift(a, {1});
  Region safe0 = region_from(2, {0});
  auto keep = extract_memoryless_strategy(g, safe0, CertificateKind::Safe,
                                          &safe0);
  CHECK(keep.at(g, 0).action == 1);

  Region t1 = region_from(2, {1});
  Region win = attractor(g, t1, Side::Protagonist);
  auto go = extract_memoryless_strategy(g, win, CertificateKind::Reach, &t1);
  CHECK(go.at(g, 0).action == 0);

  try {
    keep.at(g, 1);
    FAIL("expected NotWinning");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotWinning);
  }
}

TEST_CASE("determinacy and containment properties") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    TwoPlayerGame g = random_game(2 + seed % 5, seed * 2654435761ull);
    std::mt19937_64 rng(seed);
    std::vector<int> prio(g.size());
    for (auto& p : prio)
      p = static_cast<int>(rng() % 4);
    auto res = solve_parity(g, prio);
    CHECK((res.win_protagonist | res.win_antagonist) ==
          make_region(g.size(), true));
    CHECK((res.win_protagonist & res.win_antagonist).none());

    Region t(g.size()), t2(g.size());
    for (int v = 0; v < g.size(); ++v) {
      if (rng() % 2)
        t.set(v);
      if (rng() % 2)
        t2.set(v);
    }
    Region bigger = t | t2;
    CHECK(attractor(g, t, Side::Protagonist)
              .is_subset_of(attractor(g, bigger, Side::Protagonist)));
    CHECK(t.is_subset_of(attractor(g, t, Side::Protagonist)));
    CHECK(safe_region(g, t, Side::Protagonist).is_subset_of(t));
  }
}

TEST_CASE("one-pair Streett agrees with memoryless enumeration") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    int n = 2 + static_cast<int>(seed % 4);
    TwoPlayerGame g = random_game(n, seed * 97 + 3);
    std::mt19937_64 rng(seed);
    Region e(n), f(n);
    for (int v = 0; v < n; ++v) {
      if (rng() % 2)
        e.set(v);
      if (rng() % 2)
        f.set(v);
    }
    Region solved = solve_one_pair_streett(g, e, f);
    auto good = [&](const Region& c) {
      return !c.intersects(e) || c.intersects(f);
    };
    for (int v = 0; v < n; ++v)
      CHECK(solved.test(v) == brute_side_wins(g, Side::Protagonist, v, good));
  }
}

TEST_CASE("parity solver agrees with enumeration for both sides") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    int n = 2 + static_cast<int>(seed % 4);
    TwoPlayerGame g = random_game(n, seed * 131 + 7);
    std::mt19937_64 rng(seed ^ 0xabcdef);
    std::vector<int> prio(n);
    for (auto& p : prio)
      p = static_cast<int>(rng() % 4);
    auto res = solve_parity(g, prio);
    auto min_even = [&](const Region& c) {
      int m = INT32_MAX;
      for (auto v = c.find_first(); v != Region::npos; v = c.find_next(v))
        m = std::min(m, prio[v]);
      return m % 2 == 0;
    };
    auto min_odd = [&](const Region& c) { return !min_even(c); };
    for (int v = 0; v < n; ++v) {
      CHECK(res.win_protagonist.test(v) ==
            brute_side_wins(g, Side::Protagonist, v, min_even));
      CHECK(res.win_antagonist.test(v) ==
            brute_side_wins(g, Side::Antagonist, v, min_odd));
    }
  }
}

TEST_CASE("extracted strategies leave no violating cycle") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    int n = 2 + static_cast<int>(seed % 4);
    TwoPlayerGame g = random_game(n, seed * 977 + 11);
    std::mt19937_64 rng(seed + 42);
    std::vector<int> prio(n);
    for (auto& p : prio)
      p = static_cast<int>(rng() % 4);
    auto res = solve_parity(g, prio);
    auto min_even = [&](const Region& c) {
      int m = INT32_MAX;
      for (auto v = c.find_first(); v != Region::npos; v = c.find_next(v))
        m = std::min(m, prio[v]);
      return m % 2 == 0;
    };
    std::vector<int> choice(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
      if (res.strat_protagonist.choice[v] >= 0)
        choice[v] = res.strat_protagonist.choice[v];
    for (auto v = res.win_protagonist.find_first(); v != Region::npos;
         v = res.win_protagonist.find_next(v))
      CHECK_FALSE(has_bad_cycle(
          g, Side::Protagonist, choice, static_cast<int>(v),
          [&](const Region& c) { return !min_even(c); }));
  }
}
