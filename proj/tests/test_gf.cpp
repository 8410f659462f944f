#include <doctest.h>

#include "oracles.hpp"
#include "padlock/formulas.hpp"
#include "padlock/gf.hpp"

using namespace padlock;
using namespace padlock::gf;

namespace {

// Nilpotent iff some power below the dimension vanishes, by plain powering.
bool nilpotent_by_powers(const FMatrix& a) {
  FMatrix p = a;
  for (int i = 0; i < a.rows(); ++i) {
    if (p.is_zero()) return true;
    p = mat_mul(p, a);
  }
  return p.is_zero();
}

}  // namespace

TEST_CASE("field and matrix basics") {
  CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(17), std::invalid_argument);
  const PrimeField f(3);
  CHECK(f.add(2, 2) == 1);
  CHECK(f.mul(2, 2) == 1);
  CHECK(f.reduce(-1) == 2);
  CHECK_THROWS_AS(FMatrix(f, 2, 2, {0, 1, 2}), std::invalid_argument);
  CHECK(FMatrix(f, 1, 1, {4}).at(0, 0) == 1);

  const FMatrix a(f, 2, 2, {1, 2, 0, 1});
  CHECK(mat_mul(a, FMatrix::identity(f, 2)) == a);
  CHECK(mat_mul(a, a) == FMatrix(f, 2, 2, {1, 1, 0, 1}));
  CHECK(FMatrix::from_index(f, 2, 2, 0).is_zero());
  CHECK(FMatrix::from_index(f, 1, 2, 5) == FMatrix(f, 1, 2, {2, 1}));
  CHECK_THROWS_AS(mat_mul(a, FMatrix::zero(f, 3, 1)), std::invalid_argument);
}

TEST_CASE("nilpotency examples") {
  const PrimeField f(2);
  CHECK(is_nilpotent(FMatrix(f, 2, 2, {0, 1, 0, 0})));
  CHECK(is_nilpotent(FMatrix(f, 2, 2, {1, 1, 1, 1})));
  CHECK_FALSE(is_nilpotent(FMatrix(f, 2, 2, {1, 0, 0, 0})));
  CHECK_FALSE(is_nilpotent(FMatrix::identity(f, 3)));
  CHECK(is_nilpotent(FMatrix(f, 3, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0})));
}

TEST_CASE("vector encoding round-trips") {
  for (int q : {2, 3, 5}) {
    for (std::uint64_t i = 0; i < 125; ++i) {
      if (i >= static_cast<std::uint64_t>(q * q * q)) break;
      const auto v = decode(i, q, 3);
      CHECK(encode(v, q) == i);
    }
  }
  const PrimeField f(3);
  const FMatrix a(f, 2, 2, {0, 1, 1, 0});
  // (1, 2) -> (2, 1): index 1 + 2*3 = 7 maps to 2 + 1*3 = 5.
  CHECK(apply(a, 7) == 5);
}

TEST_CASE("linear placement") {
  const PrimeField f(2);
  const FMatrix a(f, 2, 2, {0, 1, 0, 0});
  const auto inst = linear_placement(a);
  CHECK(inst.box_count() == 4);
  CHECK(inst.is_retained(0));
  for (std::uint64_t v = 1; v < 4; ++v) CHECK(inst.box_of(static_cast<KeyId>(v)) == static_cast<BoxId>(apply(a, v)));
  CHECK(wins(inst));
  CHECK_FALSE(wins(linear_placement(FMatrix::identity(f, 2))));
  CHECK_THROWS_AS(linear_placement(FMatrix::zero(f, 4, 4), 8), TooLarge);
}

TEST_CASE("game wins exactly for nilpotent matrices") {
  for (const auto& [q, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
    const PrimeField f(q);
    std::uint64_t total = 1;
    for (int i = 0; i < n * n; ++i) total *= static_cast<std::uint64_t>(q);
    std::uint64_t won = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
      const auto a = FMatrix::from_index(f, n, n, i);
      const bool nil = is_nilpotent(a);
      CHECK(nil == nilpotent_by_powers(a));
      CHECK(wins(linear_placement(a)) == nil);
      won += nil ? 1 : 0;
    }
    CHECK(won == oracle::nilpotent_matrices(q, n));
    CHECK(brute_nilpotent_count(q, n) == formulas::nilpotent_count(q, n));
  }
  CHECK(brute_nilpotent_count(2, 4) == formulas::nilpotent_count(2, 4));
}

TEST_CASE("bipartite linear placement wins exactly when AB is nilpotent") {
  for (const auto& [q, m, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {2, 2, 1}, {2, 1, 2}, {3, 1, 1}}) {
    const PrimeField f(q);
    std::uint64_t per = 1;
    for (int i = 0; i < m * n; ++i) per *= static_cast<std::uint64_t>(q);
    std::uint64_t won = 0;
    for (std::uint64_t ia = 0; ia < per; ++ia) {
      const auto a = FMatrix::from_index(f, m, n, ia);
      for (std::uint64_t ib = 0; ib < per; ++ib) {
        const auto b = FMatrix::from_index(f, n, m, ib);
        const auto inst = bipartite_linear_placement(a, b);
        CHECK(inst.row_count() == 2);
        const bool nil = is_nilpotent(mat_mul(a, b));
        CHECK(wins(inst) == nil);
        won += nil ? 1 : 0;
      }
    }
    CHECK(ExactProb(won, per * per) == formulas::nilpotent_product_probability(q, m, n));
  }
}

TEST_CASE("product nilpotency probabilities") {
  for (const auto& [q, m, n] :
       std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {3, 1, 1}, {2, 1, 3}}) {
    CHECK(brute_product_nilpotent_probability(q, m, n) == formulas::nilpotent_product_probability(q, m, n));
  }
  CHECK_THROWS_AS(brute_product_nilpotent_probability(2, 3, 3, 1000), TooLarge);
}

TEST_CASE("hidden keys stay uniform round by round") {
  CHECK(round_uniformity_check(2, 2));
  CHECK(round_uniformity_check(3, 2));
  CHECK(round_uniformity_check(2, 1));
  CHECK(bipartite_round_uniformity_check(2, 1, 1));
  CHECK(bipartite_round_uniformity_check(2, 2, 1));
}
