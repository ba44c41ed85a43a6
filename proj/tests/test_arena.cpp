#include <doctest.h>

#include "doomsday/arena.hpp"
#include "doomsday/json_io.hpp"
#include "helpers.hpp"

using namespace doomsday;
using namespace doomsday::testing;

static const char* k_a2_doc = R"({
  "n_players": 2,
  "states": [{"id": 0, "owner": 1}, {"id": 1, "owner": 2}],
  "init": 0,
  "actions": ["a", "b"],
  "delta": [[0,0,1],[0,1,0],[1,0,0],[1,1,1]]
})";

TEST_CASE("parse_arena smallest legal arena") {
  Arena a = parse_arena(R"({
    "n_players": 1,
    "states": [{"id": 0, "owner": 1}],
    "init": 0,
    "actions": ["a"],
    "delta": [[0,0,0]]
  })");
  CHECK(a.n_states() == 1);
  CHECK(a.step(0, 0) == 0);
}

TEST_CASE("parse_arena transcribes the two-state arena") {
  Arena a = parse_arena(k_a2_doc);
  CHECK(a.n_states() == 2);
  CHECK(a.delta_tab.size() == 4);
  CHECK(a.step(0, 0) == 1);
  CHECK(a.step(0, 1) == 0);
  CHECK(a.step(1, 0) == 0);
  CHECK(a.step(1, 1) == 1);
  CHECK(a.owner[0] == 1);
  CHECK(a.owner[1] == 2);
}

TEST_CASE("parse_arena rejects a missing transition") {
  try {
    parse_arena(R"({
      "n_players": 2,
      "states": [{"id": 0, "owner": 1}, {"id": 1, "owner": 2}],
      "init": 0,
      "actions": ["a", "b"],
      "delta": [[0,0,1],[0,1,0],[1,0,0]]
    })");
    FAIL("expected MissingTransition");
  } catch (const Error& e) {
    CHECK(e.code() == Err::MissingTransition);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
}

TEST_CASE("parse_arena rejects bad owners, init, duplicates") {
  CHECK_THROWS_AS(parse_arena(R"({"n_players": 1,
    "states": [{"id": 0, "owner": 2}], "init": 0,
    "actions": ["a"], "delta": [[0,0,0]]})"),
                  Error);
  try {
    parse_arena(R"({"n_players": 1, "states": [{"id": 0, "owner": 1}],
      "init": 3, "actions": ["a"], "delta": [[0,0,0]]})");
    FAIL("expected BadInit");
  } catch (const Error& e) {
    CHECK(e.code() == Err::BadInit);
  }
  try {
    parse_arena(R"({"n_players": 1,
      "states": [{"id": 0, "owner": 1}, {"id": 0, "owner": 1}],
      "init": 0, "actions": ["a"], "delta": [[0,0,0],[1,0,0]]})");
    FAIL("expected DuplicateState");
  } catch (const Error& e) {
    CHECK(e.code() == Err::DuplicateState);
  }
  try {
    parse_arena("not json at all");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == Err::SyntaxError);
  }
}

TEST_CASE("rebase") {
  Arena a = a2();
  CHECK(rebase(a, 1).init == 1);
  Arena same = rebase(a, 0);
  CHECK(same.init == a.init);
  CHECK(same.delta_tab == a.delta_tab);
  try {
    rebase(a, 7);
    FAIL("expected BadInit");
  } catch (const Error& e) {
    CHECK(e.code() == Err::BadInit);
  }
}

TEST_CASE("restrict_graph") {
  Arena a = a2();
  Region full = make_region(2, true);
  Digraph g = restrict_graph(a, full);
  CHECK(g.succ[0] == std::vector<int>{0, 1});
  CHECK(g.succ[1] == std::vector<int>{0, 1});

  Digraph empty = restrict_graph(a, make_region(2));
  CHECK(empty.succ[0].empty());
  CHECK(empty.succ[1].empty());

  // expected successors of {0}: enumerate delta entries staying inside
  std::vector<int> expect;
  for (int act = 0; act < a.n_actions(); ++act)
    if (a.step(0, act) == 0)
      expect.push_back(0);
  expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
  Digraph self = restrict_graph(a, region_from(2, {0}));
  CHECK(self.succ[0] == expect);
  CHECK(self.succ[0] == std::vector<int>{0});
}

TEST_CASE("random_arena determinism and validity") {
  Arena unique1 = random_arena(1, 1, 1, 7);
  CHECK(unique1.n_states() == 1);
  CHECK(unique1.step(0, 0) == 0);

  Arena x = random_arena(6, 3, 2, 42);
  Arena y = random_arena(6, 3, 2, 42);
  CHECK(x.delta_tab == y.delta_tab);
  CHECK(x.owner == y.owner);

  CHECK_THROWS_AS(random_arena(0, 1, 1, 1), Error);

  // every player owns a state when n_states >= n_players
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Arena a = random_arena(5, 3, 2, seed);
    for (int p = 1; p <= 3; ++p)
      CHECK(a.states_of(p).any());
  }
}

TEST_CASE("round-robin arena respects the playing order") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Arena a = random_round_robin_arena(5, 2, 2, seed);
    for (int s = 0; s < a.n_states(); ++s)
      for (int k = 0; k < a.n_actions(); ++k)
        CHECK(a.owner[a.step(s, k)] == (a.owner[s] % 2) + 1);
  }
}

TEST_CASE("serialize/parse round-trip is the identity") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Arena a = random_arena(1 + seed % 7, 1 + seed % 3, 1 + seed % 3, seed);
    Arena b = parse_arena(serialize_arena(a));
    CHECK(a.n_players == b.n_players);
    CHECK(a.owner == b.owner);
    CHECK(a.init == b.init);
    CHECK(a.actions == b.actions);
    CHECK(a.delta_tab == b.delta_tab);
    // serialized form is byte-stable
    CHECK(serialize_arena(a) == serialize_arena(b));
  }
}

TEST_CASE("every delta entry of a random arena is a valid state") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Arena a = random_arena(1 + seed % 8, 1 + seed % 4, 1 + seed % 3, seed * 31);
    for (int s = 0; s < a.n_states(); ++s)
      for (int k = 0; k < a.n_actions(); ++k) {
        int t = a.step(s, k);
        CHECK(t >= 0);
        CHECK(t < a.n_states());
      }
  }
}

TEST_CASE("restrict_graph over all states collapses duplicate edges") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Arena a = random_arena(1 + seed % 6, 2, 3, seed * 17);
    Digraph g = restrict_graph(a, make_region(a.n_states(), true));
    for (int s = 0; s < a.n_states(); ++s) {
      std::vector<int> expect;
      for (int k = 0; k < a.n_actions(); ++k)
        expect.push_back(a.step(s, k));
      std::sort(expect.begin(), expect.end());
      expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
      CHECK(g.succ[s] == expect);
    }
  }
}

TEST_CASE("lasso validation") {
  Arena a = a2();
  Lasso ok = make_lasso({0, 1}, {0}, {1, 0, 1}, {0, 0});
  validate_lasso(a, ok);

  Lasso bad_seam = make_lasso({0}, {}, {1, 1}, {1});
  CHECK_THROWS_AS(validate_lasso(a, bad_seam), Error);
  Lasso not_closed = make_lasso({0}, {}, {0, 1}, {0});
  CHECK_THROWS_AS(validate_lasso(a, not_closed), Error);
}
