#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "padlock/estimate.hpp"
#include "padlock/formulas.hpp"
#include "padlock/schemes.hpp"

using namespace padlock;

namespace {

std::vector<std::vector<int>> partitions_upto(int max_total, int min_parts = 2) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  const std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(cur.size()) >= min_parts) out.push_back(cur);
    for (int s = 1; s <= left; ++s) {
      cur.push_back(s);
      rec(left - s);
      cur.pop_back();
    }
  };
  rec(max_total);
  return out;
}

}  // namespace

TEST_CASE("space sizes") {
  CHECK(space_size(UniformIID{4, 1}) == 64);
  CHECK(space_size(PairedTriples{2}) == 75);
  CHECK(space_size(Multipartite{{1, 2, 2}}) == 81);
  CHECK(space_size(Permutation{3, {0}}) == 6);
  CHECK(space_size(OddPermutation3{}) == 3);
  CHECK(space_size(WeightedIID{{ExactProb(1, 3), ExactProb(1, 3), ExactProb(1, 3)}, 1}) == 9);
  CHECK_THROWS_AS(space_size(WeightedIID{{ExactProb(1, 2), ExactProb(1, 4), ExactProb(1, 4)}, 1}), NotEquiprobable);
}

TEST_CASE("validation rejects bad parameters") {
  CHECK_THROWS_AS(validate(UniformIID{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(UniformIID{3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(validate(WeightedIID{{ExactProb(1, 2), ExactProb(1, 4)}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(DegreeConditioned{{2, 2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Multipartite{{3}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Permutation{3, {}}), std::invalid_argument);
}

TEST_CASE("placement_at is a bijection") {
  CHECK(placement_at(UniformIID{3, 1}, 0).key_boxes() == std::vector<BoxId>{Instance::kRetained, 0, 0});
  CHECK_THROWS(placement_at(UniformIID{3, 1}, 9));
  for (const SchemeSpec& spec : std::vector<SchemeSpec>{UniformIID{3, 1}, Permutation{4, {1}}, DegreeConditioned{{2, 2, 1, 1}}, Bipartite{2, 3},
                                                        Multipartite{{1, 2, 2}}, KeyRing{{2, 2, 1}}, OddPermutation3{}}) {
    const auto size = space_size(spec).convert_to<std::uint64_t>();
    std::set<std::vector<BoxId>> seen;
    for (std::uint64_t i = 0; i < size; ++i) seen.insert(placement_at(spec, i).key_boxes());
    CHECK(seen.size() == size);
  }
  // Pairings {12|34}, {13|24}, {14|23} with both pairs in one box coincide:
  // 75 outcomes, 75 - 2 * 5 distinct placements.
  std::set<std::vector<BoxId>> paired;
  for (int i = 0; i < 75; ++i) paired.insert(placement_at(PairedTriples{2}, i).key_boxes());
  CHECK(paired.size() == 65);
}

TEST_CASE("permutation outcomes are the injections of the placed keys") {
  // n = 3 with key 1 kept: keys 0 and 2 go to distinct boxes.
  std::set<std::vector<BoxId>> seen;
  for (int i = 0; i < 6; ++i) {
    const auto kb = placement_at(Permutation{3, {1}}, i).key_boxes();
    CHECK(kb[1] == Instance::kRetained);
    CHECK(kb[0] != kb[2]);
    seen.insert(kb);
  }
  CHECK(seen.size() == 6);
  CHECK(exact_win_count(Permutation{3, {0}}) == 2);
}

TEST_CASE("odd permutation outcomes") {
  std::set<std::vector<BoxId>> seen;
  for (int i = 0; i < 3; ++i) seen.insert(placement_at(OddPermutation3{}, i).key_boxes());
  CHECK(seen == std::set<std::vector<BoxId>>{{-1, 0, 2}, {-1, 1, 0}, {-1, 2, 1}});
  // Each key is uniform over the three boxes.
  for (int key = 1; key <= 2; ++key) {
    std::set<BoxId> boxes;
    for (const auto& kb : seen) boxes.insert(kb[static_cast<std::size_t>(key)]);
    CHECK(boxes.size() == 3);
  }
}

TEST_CASE("win probabilities from the examples") {
  CHECK(exact_win_probability(UniformIID{4, 1}) == ExactProb(1, 4));
  CHECK(exact_win_probability(UniformIID{4, 2}) == ExactProb(1, 2));
  CHECK(exact_win_probability(OddPermutation3{}) == 0);
  CHECK(exact_win_probability(Multipartite{{1, 2, 2}}) == ExactProb(5, 9));
  CHECK(exact_win_count(UniformIID{4, 1}) == 16);
  const auto bt = exact_win_tally(Bipartite{2, 3});
  CHECK(bt.wins == 12);
  CHECK(bt.total == 24);
  const auto pt = exact_win_tally(PairedTriples{2});
  CHECK(pt.wins == 15);
  CHECK(pt.total == 75);
  CHECK(exact_win_count(DegreeConditioned{{2, 2, 1, 1}}) == 2);
  CHECK_THROWS_AS(exact_win_probability(UniformIID{6, 1}, {1000, 1}), TooLarge);
}

TEST_CASE("uniform scheme counts trees and forests") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(exact_win_count(UniformIID{n, 1}) == oracle::spanning_trees(n, oracle::complete_edges(n)));
    for (int k = 1; k <= n; ++k) CHECK(exact_win_count(UniformIID{n, k}) == oracle::rooted_forests(n, k));
  }
}

TEST_CASE("weighted scheme wins with the mass of box 0") {
  const std::vector<std::vector<ExactProb>> cases{
      {ExactProb(1, 2), ExactProb(1, 2)},
      {ExactProb(1, 2), ExactProb(1, 4), ExactProb(1, 4)},
      {ExactProb(1, 4), ExactProb(3, 4), ExactProb(0)},
      {ExactProb(1, 3), ExactProb(1, 6), ExactProb(1, 2)},
      {ExactProb(1, 4), ExactProb(1, 4), ExactProb(1, 4), ExactProb(1, 4)},
      {ExactProb(1, 6), ExactProb(1, 3), ExactProb(1, 6), ExactProb(1, 3)},
  };
  for (const auto& w : cases) {
    CHECK(exact_win_probability(WeightedIID{w, 1}) == w[0]);
    // Same value from a direct sum over placements with their probabilities.
    const auto n = w.size();
    ExactProb direct = 0;
    std::vector<std::size_t> digits(n - 1, 0);
    while (true) {
      std::vector<BoxId> kb{Instance::kRetained};
      ExactProb p = 1;
      for (const auto d : digits) {
        kb.push_back(static_cast<BoxId>(d));
        p *= w[d];
      }
      if (wins(Instance(kb))) direct += p;
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == n) digits[i++] = 0;
      if (i == digits.size()) break;
    }
    CHECK(direct == w[0]);
  }
  CHECK(exact_win_probability(WeightedIID{{ExactProb(1, 4), ExactProb(1, 4), ExactProb(1, 2)}, 2}) == ExactProb(1, 2));
}

TEST_CASE("permutation scheme and cycle covers") {
  CHECK(cycle_cover_probability(3, 1) == ExactProb(1, 3));
  CHECK(cycle_cover_probability(4, 2) == ExactProb(1, 2));
  CHECK(cycle_cover_probability(5, 5) == 1);
  CHECK_THROWS_AS(cycle_cover_probability(9, 1), TooLarge);
  for (int n = 1; n <= 7; ++n) {
    for (int k = 1; k <= n; ++k) {
      CHECK(cycle_cover_probability(n, k) == ExactProb(k, n));
      if (n <= 6) {
        std::vector<KeyId> r;
        for (int i = 0; i < k; ++i) r.push_back(i);
        CHECK(exact_win_probability(Permutation{n, r}) == ExactProb(k, n));
      }
    }
  }
  CHECK(exact_win_probability(Permutation{5, {1, 3}}) == ExactProb(2, 5));
}

TEST_CASE("paired triples count triangle hypertrees") {
  for (int p = 1; p <= 3; ++p) CHECK(exact_win_count(PairedTriples{p}) == oracle::triangle_hypertrees(p));
}

TEST_CASE("degree conditioned scheme counts trees with given degrees") {
  // Every degree sequence on n <= 6 vertices with sum 2(n-1).
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> d(static_cast<std::size_t>(n), 1);
    while (true) {
      int sum = 0;
      for (const int x : d) sum += x;
      if (sum == 2 * (n - 1)) {
        const auto brute = oracle::spanning_trees(n, oracle::complete_edges(n), [&](const std::vector<oracle::Edge>& t) {
          std::vector<int> deg(static_cast<std::size_t>(n), 0);
          for (const auto& [a, b] : t) {
            ++deg[static_cast<std::size_t>(a)];
            ++deg[static_cast<std::size_t>(b)];
          }
          return deg == d;
        });
        CHECK(exact_win_count(DegreeConditioned{d}) == brute);
      }
      std::size_t i = 0;
      while (i < d.size() && ++d[i] > n - 1) d[i++] = 1;
      if (i == d.size()) break;
    }
  }
}

TEST_CASE("bipartite and multipartite counts against spanning-tree oracles") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; m + n <= 6; ++n) {
      const std::vector<int> parts{m, n};
      CHECK(exact_win_count(Bipartite{m, n}) == oracle::kirchhoff(m + n, oracle::multipartite_edges(parts)));
      CHECK(exact_win_probability(Bipartite{m, n}) == ExactProb(1, m));
    }
  }
  for (const auto& parts : partitions_upto(6)) {
    const int n = std::accumulate(parts.begin(), parts.end(), 0);
    const auto edges = oracle::multipartite_edges(parts);
    CHECK(exact_win_count(Multipartite{parts}) == oracle::spanning_trees(n, edges));
    CHECK(exact_win_count(Multipartite{parts}) == oracle::kirchhoff(n, edges));
  }
}

TEST_CASE("key rings win as often as loose keys") {
  CHECK(space_size(KeyRing{{1, 2, 2}}) == 9);
  CHECK(exact_win_count(KeyRing{{1, 2, 2}}) == 5);
  CHECK(keyring_equivalence_check({1, 2, 2}));
  CHECK(keyring_equivalence_check({1, 1, 1}));
  CHECK(exact_win_probability(KeyRing{{1, 1, 1}}) == ExactProb(3, 4));
  CHECK(keyring_equivalence_check({2, 1, 1}));
  CHECK(space_size(KeyRing{{2, 1, 1}}) == space_size(Multipartite{{2, 1, 1}}));
  for (const auto& parts : partitions_upto(5)) CHECK(keyring_equivalence_check(parts));
}

TEST_CASE("parallel chunking gives the same tally") {
  const auto one = exact_win_tally(Multipartite{{2, 2, 2}}, {kDefaultBudget, 1});
  const auto four = exact_win_tally(Multipartite{{2, 2, 2}}, {kDefaultBudget, 4});
  CHECK(one.wins == four.wins);
  CHECK(one.total == four.total);
}

TEST_CASE("left-to-right solvency counts parking functions") {
  for (int n = 2; n <= 6; ++n) CHECK(left_to_right_solvent_count(n) == oracle::parking_functions(n));
}

TEST_CASE("sampling is seeded and matches the outcome distribution") {
  std::mt19937_64 a(42);
  std::mt19937_64 b(42);
  for (int i = 0; i < 20; ++i) CHECK(sample(PairedTriples{3}, a) == sample(PairedTriples{3}, b));

  std::mt19937_64 rng(7);
  const auto degenerate = WeightedIID{{ExactProb(1), ExactProb(0), ExactProb(0)}, 1};
  for (int i = 0; i < 50; ++i) {
    const auto inst = sample(degenerate, rng);
    CHECK(inst.contents(0).size() == 2);
    CHECK(wins(inst));
  }

  // Each of the 9 outcomes of UniformIID{3,1} within its 99% interval.
  std::map<std::vector<BoxId>, std::uint64_t> freq;
  const std::uint64_t trials = 100000;
  for (std::uint64_t i = 0; i < trials; ++i) {
    auto r = trial_rng(11, i);
    ++freq[sample(UniformIID{3, 1}, r).key_boxes()];
  }
  CHECK(freq.size() == 9);
  for (const auto& [kb, f] : freq) {
    const auto [lo, hi] = wilson_interval(f, trials, 0.001);
    CHECK(lo <= 1.0 / 9.0);
    CHECK(1.0 / 9.0 <= hi);
  }
}

TEST_CASE("sampled win rates fall in the interval around the exact value") {
  for (const SchemeSpec& spec : std::vector<SchemeSpec>{UniformIID{4, 1}, Permutation{5, {0, 1}}, PairedTriples{2},
                                                        DegreeConditioned{{3, 1, 2, 1, 1}}, Bipartite{2, 3},
                                                        Multipartite{{1, 2, 2}}, KeyRing{{2, 2, 1}},
                                                        WeightedIID{{ExactProb(1, 2), ExactProb(1, 4), ExactProb(1, 4)}, 1}}) {
    const auto report = monte_carlo(spec, 100000, 2024, 1, 1e-4);
    INFO(scheme_name(spec));
    CHECK(report.contains(exact_win_probability(spec)));
  }
}
