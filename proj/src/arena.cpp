#include "doomsday/arena.hpp"

#include <algorithm>
#include <random>

namespace doomsday {

const char* err_name(Err e) {
  switch (e) {
    case Err::SyntaxError: return "SyntaxError";
    case Err::MissingTransition: return "MissingTransition";
    case Err::BadOwner: return "BadOwner";
    case Err::BadInit: return "BadInit";
    case Err::DuplicateState: return "DuplicateState";
    case Err::BadParams: return "BadParams";
    case Err::MixedClasses: return "MixedClasses";
    case Err::BadShift: return "BadShift";
    case Err::NotWinning: return "NotWinning";
    case Err::TooManyTargets: return "TooManyTargets";
    case Err::TooManyPlayers: return "TooManyPlayers";
    case Err::LarBoundExceeded: return "LarBoundExceeded";
    case Err::NoEquilibrium: return "NoEquilibrium";
    case Err::MalformedWitness: return "MalformedWitness";
    case Err::UnsupportedClass: return "UnsupportedClass";
    case Err::TooLarge: return "TooLarge";
    case Err::NotTwoPlayer: return "NotTwoPlayer";
    case Err::BadTargets: return "BadTargets";
  }
  return "Error";
}

Region Arena::states_of(int p) const {
  Region r(owner.size());
  for (size_t s = 0; s < owner.size(); ++s)
    if (owner[s] == p)
      r.set(s);
  return r;
}

void Arena::validate() const {
  if (n_players < 1)
    raise(Err::BadParams, "n_players must be >= 1");
  if (owner.empty())
    raise(Err::BadParams, "arena needs at least one state");
  if (actions.empty())
    raise(Err::BadParams, "arena needs at least one action");
  for (size_t s = 0; s < owner.size(); ++s)
    if (owner[s] < 1 || owner[s] > n_players)
      raise(Err::BadOwner, "state " + std::to_string(s) + " owned by player " +
                               std::to_string(owner[s]));
  if (init < 0 || init >= n_states())
    raise(Err::BadInit, "init state " + std::to_string(init));
  if (delta_tab.size() != owner.size() * actions.size())
    raise(Err::MissingTransition, "delta table has " +
                                      std::to_string(delta_tab.size()) +
                                      " entries, expected " +
                                      std::to_string(owner.size() * actions.size()));
  for (int s = 0; s < n_states(); ++s)
    for (int a = 0; a < n_actions(); ++a) {
      int t = step(s, a);
      if (t < 0 || t >= n_states())
        raise(Err::MissingTransition, "delta(" + std::to_string(s) + ", " +
                                          actions[a] + ")");
    }
  if (!state_names.empty() && state_names.size() != owner.size())
    raise(Err::BadParams, "state_names size mismatch");
}

void validate_prefix(const Arena& a, const PlayPrefix& p) {
  if (p.states.empty() || p.actions.size() + 1 != p.states.size())
    raise(Err::MalformedWitness, "play prefix shape");
  for (size_t k = 0; k < p.actions.size(); ++k) {
    int s = p.states[k], act = p.actions[k];
    if (s < 0 || s >= a.n_states() || act < 0 || act >= a.n_actions() ||
        a.step(s, act) != p.states[k + 1])
      raise(Err::MalformedWitness,
            "step " + std::to_string(k) + " does not follow delta");
  }
}

void validate_lasso(const Arena& a, const Lasso& l) {
  validate_prefix(a, l.stem);
  validate_prefix(a, l.cycle);
  if (l.stem.states.front() != a.init)
    raise(Err::MalformedWitness, "stem does not start at the initial state");
  if (l.cycle.actions.empty())
    raise(Err::MalformedWitness, "cycle needs at least one transition");
  if (l.cycle.states.front() != l.stem.states.back())
    raise(Err::MalformedWitness, "cycle does not continue the stem");
  if (l.cycle.states.back() != l.cycle.states.front())
    raise(Err::MalformedWitness, "cycle is not closed");
}

Arena rebase(const Arena& a, int s) {
  if (s < 0 || s >= a.n_states())
    raise(Err::BadInit, "rebase to state " + std::to_string(s));
  Arena b = a;
  b.init = s;
  return b;
}

Digraph restrict_graph(const Arena& a, const Region& r) {
  Digraph g;
  g.verts = r;
  g.succ.assign(a.n_states(), {});
  for (auto s = r.find_first(); s != Region::npos; s = r.find_next(s)) {
    auto& out = g.succ[s];
    for (int act = 0; act < a.n_actions(); ++act) {
      int t = a.step(static_cast<int>(s), act);
      if (r.test(t))
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return g;
}

int action_for(const Arena& a, int s, int t) {
  for (int act = 0; act < a.n_actions(); ++act)
    if (a.step(s, act) == t)
      return act;
  return -1;
}

static std::vector<int> shuffled_owners(int n_states, int n_players,
                                        std::mt19937_64& rng) {
  std::vector<int> owner(n_states);
  for (int s = 0; s < n_states; ++s)
    owner[s] = (s % n_players) + 1;
  std::shuffle(owner.begin(), owner.end(), rng);
  return owner;
}

Arena random_arena(int n_states, int n_players, int n_actions, uint64_t seed) {
  if (n_states < 1 || n_players < 1 || n_actions < 1)
    raise(Err::BadParams, "random_arena counts must be >= 1");
  std::mt19937_64 rng(seed);
  Arena a;
  a.n_players = n_players;
  a.owner = shuffled_owners(n_states, n_players, rng);
  a.init = 0;
  for (int k = 0; k < n_actions; ++k)
    a.actions.push_back(std::string(1, static_cast<char>('a' + k % 26)) +
                        (k >= 26 ? std::to_string(k / 26) : ""));
  std::uniform_int_distribution<int> pick(0, n_states - 1);
  a.delta_tab.resize(static_cast<size_t>(n_states) * n_actions);
  for (int s = 0; s < n_states; ++s)
    for (int k = 0; k < n_actions; ++k)
      a.delta_tab[s * n_actions + k] = pick(rng);
  a.validate();
  return a;
}

Arena random_round_robin_arena(int n_states, int n_players, int n_actions,
                               uint64_t seed) {
  if (n_states < n_players || n_players < 1 || n_actions < 1)
    raise(Err::BadParams, "round-robin arena needs n_states >= n_players");
  std::mt19937_64 rng(seed);
  Arena a;
  a.n_players = n_players;
  a.owner.resize(n_states);
  // contiguous owner classes, each nonempty, in playing order
  std::vector<int> class_of(n_states);
  for (int s = 0; s < n_states; ++s)
    class_of[s] = s % n_players;
  std::vector<std::vector<int>> members(n_players);
  for (int s = 0; s < n_states; ++s) {
    a.owner[s] = class_of[s] + 1;
    members[class_of[s]].push_back(s);
  }
  a.init = 0;
  for (int k = 0; k < n_actions; ++k)
    a.actions.push_back(std::string(1, static_cast<char>('a' + k % 26)) +
                        (k >= 26 ? std::to_string(k / 26) : ""));
  a.delta_tab.resize(static_cast<size_t>(n_states) * n_actions);
  for (int s = 0; s < n_states; ++s) {
    const auto& nxt = members[(class_of[s] + 1) % n_players];
    std::uniform_int_distribution<size_t> pick(0, nxt.size() - 1);
    for (int k = 0; k < n_actions; ++k)
      a.delta_tab[s * n_actions + k] = nxt[pick(rng)];
  }
  a.validate();
  return a;
}

} // namespace doomsday
