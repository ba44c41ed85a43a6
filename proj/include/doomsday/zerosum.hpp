#pragma once

#include <vector>

#include "doomsday/arena.hpp"
#include "doomsday/region.hpp"

namespace doomsday {

enum class Side { Protagonist, Antagonist };

inline Side other(Side s) {
  return s == Side::Protagonist ? Side::Antagonist : Side::Protagonist;
}

/// Two-player zero-sum game graph.  Vertices may carry the arena state and
/// memory annotation they were built from (products keep both so strategies
/// can be read back).  Every vertex has at least one successor.
struct TwoPlayerGame {
  struct Edge {
    int to;
    int action;  // arena action id, or -1 when not applicable
  };
  std::vector<char> owner;  // 1 = Protagonist-owned
  std::vector<std::vector<Edge>> succ;
  std::vector<int> origin;  // arena state per vertex, or -1
  std::vector<int> memory;  // memory annotation per vertex, 0 by default

  int size() const { return static_cast<int>(succ.size()); }
  bool owned_by(int v, Side s) const {
    return (owner[v] != 0) == (s == Side::Protagonist);
  }
  int add_vertex(Side s, int orig = -1, int mem = 0);
  void add_edge(int from, int to, int action = -1);
};

/// Memoryless strategy: chosen outgoing edge index per vertex, valid on
/// `domain`.  Querying outside the domain throws NotWinning.
struct MemorylessStrategy {
  Region domain;
  std::vector<int> choice;  // edge index into succ[v], or -1

  const TwoPlayerGame::Edge& at(const TwoPlayerGame& g, int v) const;
};

/// Least fixpoint of states from which `side` forces a visit to `target`.
/// Optionally returns the rank-decreasing strategy and the BFS ranks.
Region attractor(const TwoPlayerGame& g, const Region& target, Side side,
                 MemorylessStrategy* strat = nullptr,
                 std::vector<int>* rank = nullptr);

/// Greatest fixpoint: vertices from which `side` keeps the play inside
/// `safe` forever.
Region safe_region(const TwoPlayerGame& g, const Region& safe, Side side,
                   MemorylessStrategy* strat = nullptr);

struct ParityResult {
  Region win_protagonist;
  Region win_antagonist;
  MemorylessStrategy strat_protagonist;
  MemorylessStrategy strat_antagonist;
};

/// Zielonka recursion for MIN-EVEN parity; returns the full partition with
/// memoryless strategies for both sides.
ParityResult solve_parity(const TwoPlayerGame& g,
                          const std::vector<int>& priority);

/// Protagonist region for the single Streett pair
/// "Inf visits E infinitely often -> Inf visits F infinitely often",
/// via the priority encoding 0 on F, 1 on E\F, 2 elsewhere.
Region solve_one_pair_streett(const TwoPlayerGame& g, const Region& E,
                              const Region& F,
                              MemorylessStrategy* strat = nullptr);

/// Protagonist region for "visit every target set at least once", solved on
/// the explicit product with the monotone visited-set memory.  Throws
/// TooManyTargets beyond `max_targets`.
Region solve_generalized_reachability(const TwoPlayerGame& g,
                                      const std::vector<Region>& targets,
                                      int max_targets = 12);

/// Lift of an arena to the two-player game where the given players form the
/// protagonist coalition and everyone else the antagonist.
TwoPlayerGame coalition_lift(const Arena& a,
                             const std::vector<int>& protagonist_players);

enum class CertificateKind { Reach, Safe, Parity, Streett1 };

/// Recomputes the winning certificate of the given kind restricted to
/// `winning`.  `a`/`b` carry target/safe set or the Streett pair (E,F);
/// `prio` the priority map for the parity kind.
MemorylessStrategy extract_memoryless_strategy(
    const TwoPlayerGame& g, const Region& winning, CertificateKind kind,
    const Region* a = nullptr, const Region* b = nullptr,
    const std::vector<int>* prio = nullptr);

} // namespace doomsday
