#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "doomsday/imperfect.hpp"
#include "doomsday/objectives.hpp"

namespace doomsday {

/// Enumeration bounds; DOOMSDAY_ORACLE_MAX_STATES overrides both.
int oracle_max_states(ObjClass cls);

/// Reference retaliation region by strategy enumeration: player i's
/// strategies are enumerated memoryless over the class-specific memory
/// product (plain states for reachability and Buchi, round counter for
/// co-Buchi, monotone bit vectors for safety, a state LAR for parity), and a
/// strategy is accepted iff no play of the fixed graph violates
/// "phi_i or everyone loses".  Throws TooLarge beyond the bounds.
Region brute_region(const Arena& a, const ObjectiveProfile& profile, int i);

/// Reference decision: brute regions, then an exhaustive search for a play
/// inside their intersection winning for everyone (pivot search with brute
/// attractors for the reachability class).
bool brute_de(const Arena& a, const ObjectiveProfile& profile);

/// Both-players-winning secure equilibrium existence for 2-player games,
/// via the per-player retaliation formulation.  Throws NotTwoPlayer.
bool brute_secure_eq_2p(const Arena& a, const ObjectiveProfile& profile);

/// Exhaustive check over memoryless strategy profiles (perfect information):
/// true iff some profile satisfies both equilibrium conditions.
bool exists_memoryless_de(const Arena& a, const ObjectiveProfile& profile);

/// Same over observation-based memoryless profiles (action per own block).
bool exists_obs_memoryless_de(const ImperfectArena& ia,
                              const ObjectiveProfile& profile);

/// Zero-sum ground truths for the reduction sources (player 1 = protagonist),
/// by strategy enumeration (LAR memory for the conjunction).
bool zero_sum_buchi_wins(const Arena& src, const Region& target);
bool zero_sum_conj_parity_wins(const Arena& src, const std::vector<int>& p1,
                               const std::vector<int>& p2);
bool zero_sum_disj_parity_wins(const Arena& src, const std::vector<int>& p1,
                               const std::vector<int>& p2);

/// A generated hardness-reduction instance together with the independently
/// solved source game.
struct ReductionInstance {
  Arena arena;
  ObjectiveProfile profile;
  Arena source;  // after preprocessing (alternation padding, target gating)
  bool source_winner = false;
  std::vector<Region> source_targets;   // multireach
  std::vector<int> source_p1, source_p2;  // parity reductions
  Region source_buchi;                  // buchi reduction
};

/// Copy of the source with profile (Buchi(T), Buchi(all)); DE exists iff
/// player 1 wins the source Buchi game.
ReductionInstance gen_buchi_reduction(const Arena& src, const Region& target);

/// 3-player parity instance; DE exists iff player 1 wins the conjunction of
/// the two parity objectives in the source.  Non-alternating sources get
/// pass-through padding states copying their origin's priorities.
ReductionInstance gen_conj_parity_reduction(const Arena& src,
                                            const std::vector<int>& p1,
                                            const std::vector<int>& p2);

/// 2-player parity instance; DE exists iff player 1 wins the disjunction.
ReductionInstance gen_disj_parity_reduction(const Arena& src,
                                            const std::vector<int>& p1,
                                            const std::vector<int>& p2);

/// (k+1)-player safety instance; DE exists iff player 1 wins the
/// multi-reachability game.  Targets are gated onto fresh forced player-2
/// states so they become pairwise disjoint subsets of player-2 territory.
ReductionInstance gen_multireach_to_safety(const Arena& src,
                                           std::vector<Region> targets);

/// Deterministic random profile of the given class.
ObjectiveProfile random_profile(const Arena& a, ObjClass cls, uint64_t seed,
                                int max_priority = 3);

struct SuiteParams {
  ObjClass cls = ObjClass::Safety;
  int instances = 100;
  int max_states = 6;
  int max_players = 3;
  int n_actions = 2;
  uint64_t seed = 1;
  bool check_witnesses = false;  // also synthesize+verify on positives
};

struct SuiteMismatch {
  Arena arena;
  ObjectiveProfile profile;
  bool solver = false, brute = false;
};

struct SuiteResult {
  int instances = 0;
  int positives = 0;
  int mismatches = 0;
  int witness_failures = 0;
  std::vector<SuiteMismatch> dumps;
};

/// Solver-vs-oracle differential run; instances fan out across a worker
/// pool, each solve stays single-threaded.
SuiteResult run_differential_suite(const SuiteParams& p);

} // namespace doomsday
