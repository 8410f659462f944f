#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

#include "padlock/exact.hpp"
#include "padlock/game.hpp"
#include "padlock/schemes.hpp"

namespace padlock {

// Monte Carlo ---------------------------------------------------------------

struct TrialReport {
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  std::uint64_t seed = 0;
  double alpha = 0.01;
  ExactProb estimate;
  /// Wilson score interval; its endpoints are irrational, so they are doubles.
  double lo = 0.0;
  double hi = 1.0;

  bool contains(const ExactProb& p) const;
};

/// Wilson score interval at confidence 1 - alpha.
std::pair<double, double> wilson_interval(std::uint64_t wins, std::uint64_t trials, double alpha = 0.01);

enum class CardGame {
  Hearts,     ///< thirteen piles of three, hand of 13
  LazyHearts, ///< the same with a talon
  Clock,
  Barbier,    ///< hearts fraction of a prefix reaches 1/3
  LazyHcp,    ///< hand of 12, talon pickup by high-card points
  HcpReach,   ///< some prefix has at least as many points as cards
};

/// Uniform random square matrix (n == 0) or pair of m x n / n x m matrices
/// over F_q, played as the linear key game.
struct LinearGame {
  int q = 2;
  int m = 1;
  int n = 0;
};

using Target = std::variant<SchemeSpec, CardGame, LinearGame>;

/// Generator for trial `index`; depends only on (seed, index).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// One trial of `target`.
bool run_trial(const Target& target, std::mt19937_64& rng);

/// Wins among trials [begin, end).
std::uint64_t count_wins(const Target& target, std::uint64_t seed, std::uint64_t begin, std::uint64_t end);

/// `trials` independent trials in `threads` contiguous chunks.
TrialReport monte_carlo(const Target& target, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1,
                        double alpha = 0.01);

/// Same, for an arbitrary trial function of (index, generator).
TrialReport monte_carlo(const std::function<bool(std::uint64_t, std::mt19937_64&)>& trial, std::uint64_t trials,
                        std::uint64_t seed, unsigned threads = 1, double alpha = 0.01);

// Martingale checks ---------------------------------------------------------

struct Observation {
  BoxId box = 0;
  std::vector<KeyId> keys;  ///< ascending

  friend bool operator==(const Observation&, const Observation&) = default;
};
using ObservationHistory = std::vector<Observation>;

/// Single-row weighted hidden-keys ratio: the weights of hidden keys over
/// the weights of locked boxes (box_weights; a key weighs what its box
/// weighs). Zero when no weighted key is hidden.
ExactProb weighted_hidden_ratio(const GameState& state, const std::vector<Count>& weights);

struct MartingaleCheck {
  bool holds = false;
  ExactProb current;
  ExactProb expected;
};

/// Conditions the outcome space on `history` (boxes opened in order, with
/// their contents) and compares the ratio now with its exact expectation
/// after opening `next_box`. Single-row schemes only. Throws
/// std::invalid_argument if no outcome is consistent or a box is not
/// openable.
MartingaleCheck martingale_check_exact(const SchemeSpec& spec, const ObservationHistory& history, BoxId next_box,
                                       std::uint64_t budget = kDefaultBudget);

struct SweepResult {
  bool holds = true;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
};

/// The same check for every reachable history and every openable box.
SweepResult martingale_check_all(const SchemeSpec& spec, std::uint64_t budget = kDefaultBudget);

/// Rounds of a history: for each round the boxes opened and keys found.
using RoundHistory = std::vector<std::vector<Observation>>;

struct MonomialCheck {
  bool holds = false;
  /// fk at the conditioned state and its expectation after the next round.
  ExactProb fk_now;
  ExactProb fk_next;
};

/// Multipartite scheme in rounds: after `history`, every product of
/// distinct X_i (and hence fk) keeps its exact expectation over the next
/// round. A history after which at most one row still hides keys is
/// finished and holds trivially.
MonomialCheck monomial_martingale_check(const std::vector<int>& parts, const RoundHistory& history,
                                        std::uint64_t budget = kDefaultBudget);

/// The monomial check at every reachable round history.
SweepResult monomial_martingale_check_all(const std::vector<int>& parts, std::uint64_t budget = kDefaultBudget);

/// Exact win probability against the start value of the martingale: the
/// weighted retained share for one row, fk(X) at the start for several.
struct StoppedValue {
  bool holds = false;
  ExactProb win_probability;
  ExactProb start_value;
};
StoppedValue stopped_value_equals_probability(const SchemeSpec& spec, std::uint64_t budget = kDefaultBudget);

}  // namespace padlock
