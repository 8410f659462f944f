#include <doctest.h>

#include <algorithm>
#include <functional>

#include "oracles.hpp"
#include "padlock/game.hpp"
#include "padlock/schemes.hpp"

using namespace padlock;

namespace {

Instance inst3(std::vector<std::pair<KeyId, BoxId>> placement) {
  const std::vector<KeyId> retained{0};
  return Instance::make(3, retained, placement);
}

// Every maximal sequential opening order, each completed by opening the
// remaining boxes in every order with a master key.
void for_each_realizable_order(const Instance& inst, const std::function<void(const std::vector<BoxId>&)>& visit) {
  std::vector<BoxId> order;
  const std::function<void(const GameState&)> rec = [&](const GameState& s) {
    const auto options = s.openable();
    if (options.empty()) {
      std::vector<BoxId> rest;
      for (std::size_t b = 0; b < s.box_count(); ++b) {
        if (!s.is_open(static_cast<BoxId>(b))) rest.push_back(static_cast<BoxId>(b));
      }
      do {
        auto full = order;
        full.insert(full.end(), rest.begin(), rest.end());
        visit(full);
      } while (std::next_permutation(rest.begin(), rest.end()));
      return;
    }
    for (const BoxId b : options) {
      GameState next = s;
      next.open(inst, b);
      order.push_back(b);
      rec(next);
      order.pop_back();
    }
  };
  rec(GameState(inst));
}

}  // namespace

TEST_CASE("wins on small examples") {
  CHECK(wins(inst3({{1, 0}, {2, 1}})));
  CHECK_FALSE(wins(inst3({{1, 2}, {2, 1}})));
  const std::vector<KeyId> r{0};
  CHECK(wins(Instance::make(1, r, {})));
}

TEST_CASE("instance validation") {
  const std::vector<KeyId> none;
  const std::vector<std::pair<KeyId, BoxId>> all{{0, 0}};
  CHECK_THROWS_AS(Instance::make(1, none, all), std::invalid_argument);
  CHECK_THROWS_AS(Instance({0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(Instance({Instance::kRetained, Instance::kRetained}, Rows::from_sizes(std::vector<int>{3})),
                  std::invalid_argument);
  CHECK_THROWS_AS(Rows({{0, 1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(Rows({{0}, {2}}), std::invalid_argument);
  const Instance i({Instance::kRetained, 0, 0});
  CHECK(i.contents(0).size() == 2);
  CHECK(i.contents(1).empty());
}

TEST_CASE("rooted tree examples") {
  CHECK(is_rooted_tree(inst3({{1, 0}, {2, 0}})));
  CHECK_FALSE(is_rooted_tree(inst3({{1, 1}, {2, 0}})));
  CHECK_THROWS_AS(is_rooted_tree(Instance({Instance::kRetained, Instance::kRetained, 0})), std::invalid_argument);

  int trees = 0;
  for_each_outcome(UniformIID{4, 1}, kDefaultBudget, [&](const Instance& inst, std::uint64_t) {
    trees += is_rooted_tree(inst) ? 1 : 0;
  });
  CHECK(trees == 16);
}

TEST_CASE("tree and forest criteria agree with wins") {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      for_each_outcome(UniformIID{n, k}, kDefaultBudget, [&](const Instance& inst, std::uint64_t) {
        const bool w = wins(inst);
        CHECK(w == is_spanning_forest(inst));
        if (k == 1) CHECK(w == is_rooted_tree(inst));
      });
    }
  }
}

TEST_CASE("forest criterion counts match a parent-function oracle") {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      std::uint64_t forests = 0;
      for_each_outcome(UniformIID{n, k}, kDefaultBudget, [&](const Instance& inst, std::uint64_t) {
        forests += is_spanning_forest(inst) ? 1 : 0;
      });
      CHECK(forests == oracle::rooted_forests(n, k));
    }
  }
}

TEST_CASE("play traces") {
  const auto win = inst3({{1, 0}, {2, 1}});
  const auto t = play(win, PlayMode::Sequential);
  CHECK(t.order() == std::vector<BoxId>{0, 1, 2});
  CHECK(t.won);
  REQUIRE(t.initial.hidden.size() == 1);
  CHECK(*t.initial.hidden[0] == ExactProb(2, 3));
  CHECK(*t.initial.held[0] == ExactProb(1, 3));
  CHECK(*t.steps[0].after.hidden[0] == ExactProb(1, 2));
  CHECK(*t.steps[1].after.hidden[0] == 0);
  // All boxes open: both ratios have an empty denominator.
  CHECK_FALSE(t.steps[2].after.hidden[0].has_value());

  const auto lose = inst3({{1, 2}, {2, 1}});
  for (const OrderPolicy& policy : {OrderPolicy{LowestKeyFirst{}}, OrderPolicy{RngChoice{5}}}) {
    const auto tl = play(lose, PlayMode::Sequential, policy);
    CHECK(tl.order() == std::vector<BoxId>{0});
    CHECK_FALSE(tl.won);
    CHECK(*tl.steps.back().after.hidden[0] == 1);
  }
}

TEST_CASE("given sequences are checked") {
  const auto win = inst3({{1, 0}, {2, 1}});
  CHECK_THROWS_AS(play(win, PlayMode::Sequential, GivenSequence{{1}}), OrderViolation);
  CHECK(play(win, PlayMode::Sequential, GivenSequence{{0}}).order() == std::vector<BoxId>{0, 1, 2});
}

TEST_CASE("rounds mode opens everything openable at once") {
  const Instance star({Instance::kRetained, 0, 0, 1});
  const auto t = play(star, PlayMode::Rounds);
  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[0].opened == std::vector<BoxId>{0});
  CHECK(t.steps[1].opened == std::vector<BoxId>{1, 2});
  CHECK(t.steps[1].keys_found == std::vector<KeyId>{3});
  CHECK(t.won);
}

TEST_CASE("won flag does not depend on policy or mode") {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= 2 && k <= n; ++k) {
      for_each_outcome(UniformIID{n, k}, kDefaultBudget, [&](const Instance& inst, std::uint64_t) {
        const bool w = wins(inst);
        CHECK(play(inst, PlayMode::Sequential).won == w);
        CHECK(play(inst, PlayMode::Rounds).won == w);
        for (std::uint64_t seed = 0; seed < 3; ++seed) CHECK(play(inst, PlayMode::Sequential, RngChoice{seed}).won == w);
      });
    }
  }
}

TEST_CASE("every play order ends the same way (n <= 4)") {
  for (int n = 1; n <= 4; ++n) {
    for_each_outcome(UniformIID{n, 1}, kDefaultBudget, [&](const Instance& inst, std::uint64_t) {
      const bool w = wins(inst);
      for_each_realizable_order(inst, [&](const std::vector<BoxId>& order) {
        std::vector<BoxId> prefix;
        GameState s(inst);
        for (const BoxId b : order) {
          if (!s.holds(b)) break;
          s.open(inst, b);
          prefix.push_back(b);
        }
        CHECK((s.locked() == 0) == w);
        CHECK(play(inst, PlayMode::Sequential, GivenSequence{prefix}).won == w);
      });
    });
  }
}

TEST_CASE("solvency examples") {
  const std::vector<BoxId> ltr{0, 1, 2};
  CHECK(solvent(inst3({{1, 0}, {2, 1}}), ltr));
  CHECK_FALSE(solvent(inst3({{1, 2}, {2, 1}}), ltr));
  const std::vector<BoxId> bad{0, 0, 1};
  CHECK_THROWS_AS(solvent(inst3({{1, 0}, {2, 1}}), bad), std::invalid_argument);

  int solvent_ltr = 0;
  int won = 0;
  const std::vector<BoxId> ltr4{0, 1, 2, 3};
  for_each_outcome(UniformIID{4, 1}, kDefaultBudget, [&](const Instance& inst, std::uint64_t) {
    solvent_ltr += solvent(inst, ltr4) ? 1 : 0;
    won += wins(inst) ? 1 : 0;
  });
  CHECK(solvent_ltr == 16);
  CHECK(won == 16);
}

TEST_CASE("ratios") {
  const std::vector<KeyId> r{0};
  const std::vector<std::pair<KeyId, BoxId>> p{{1, 0}, {2, 0}, {3, 0}, {4, 0}};
  const auto single = Instance::make(5, r, p);
  const auto ra = ratios(GameState(single));
  CHECK(ra.held[0] == ExactProb(1, 5));
  CHECK(ra.hidden[0] == ExactProb(4, 5));

  // Bipartite start with m = 3, n = 2: X_1 = 2/2, X_2 = 2/3.
  const Instance bip({Instance::kRetained, 3, 4, 0, 1}, Rows::from_sizes(std::vector<int>{3, 2}));
  const auto rb = ratios(GameState(bip));
  CHECK(rb.hidden[0] == ExactProb(2, 2));
  CHECK(rb.hidden[1] == ExactProb(2, 3));

  GameState done(single);
  done.open(single, 0);
  for (const auto& x : ratios(done).hidden) CHECK(x == 0);
  for (BoxId b = 1; b < 5; ++b) done.open(single, b);
  CHECK_THROWS_AS(ratios(done), DegenerateState);
}
