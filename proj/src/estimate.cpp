#include "padlock/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "padlock/cards.hpp"
#include "padlock/formulas.hpp"
#include "padlock/gf.hpp"
#include "padlock/parallel.hpp"

namespace padlock {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

gf::FMatrix random_matrix(const gf::PrimeField& f, int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> digit(0, f.order() - 1);
  std::vector<int> e(static_cast<std::size_t>(rows * cols));
  for (auto& x : e) x = digit(rng);
  return gf::FMatrix(f, rows, cols, std::move(e));
}

bool play_card_game(CardGame game, std::mt19937_64& rng) {
  using namespace cards;
  switch (game) {
    case CardGame::Hearts: {
      static const DeckSpec deck = hearts_deck();
      static const PileLayout layout = hearts_layout();
      return play_pile_game(deck, layout, random_shuffle(deck, rng));
    }
    case CardGame::LazyHearts: {
      static const DeckSpec deck = hearts_deck();
      return play_lazy_talon(deck, kHeartsHand, random_shuffle(deck, rng)).won;
    }
    case CardGame::Clock: {
      static const DeckSpec deck = clock_deck();
      return play_clock(random_shuffle(deck, rng));
    }
    case CardGame::Barbier: {
      static const DeckSpec deck = hearts_deck();
      return threshold_reach(deck, random_shuffle(deck, rng), 1, 3);
    }
    case CardGame::LazyHcp: {
      static const DeckSpec deck = hcp_deck();
      return play_lazy_talon(deck, kHcpHand, random_shuffle(deck, rng)).won;
    }
    case CardGame::HcpReach: {
      static const DeckSpec deck = hcp_deck();
      return points_reach(deck, random_shuffle(deck, rng));
    }
  }
  throw std::invalid_argument("unknown card game");
}

TrialReport make_report(std::uint64_t wins, std::uint64_t trials, std::uint64_t seed, double alpha) {
  TrialReport r;
  r.trials = trials;
  r.wins = wins;
  r.seed = seed;
  r.alpha = alpha;
  r.estimate = make_prob(wins, trials);
  std::tie(r.lo, r.hi) = wilson_interval(wins, trials, alpha);
  return r;
}

// State variable X_i = H_i / (L - L_i), taken as 0 when row i hides nothing.
std::vector<ExactProb> state_vector(const GameState& s) {
  std::vector<ExactProb> x;
  for (std::size_t i = 0; i < s.row_count(); ++i) {
    x.push_back(s.hidden(i) == 0 ? ExactProb(0) : ExactProb(s.hidden(i), s.locked() - s.locked(i)));
  }
  return x;
}

bool finished(const GameState& s) {
  std::size_t rows_hiding = 0;
  for (std::size_t i = 0; i < s.row_count(); ++i) rows_hiding += s.hidden(i) > 0 ? 1 : 0;
  return rows_hiding <= 1;
}

// Compares every product of distinct X_i and fk at `now` with their mean
// over the equally likely successor states.
MonomialCheck check_round(const GameState& now, std::span<const GameState> next) {
  MonomialCheck out;
  const auto x = state_vector(now);
  out.fk_now = formulas::fk(x);
  const std::size_t k = x.size();
  std::vector<std::vector<ExactProb>> xs;
  xs.reserve(next.size());
  for (const auto& s : next) xs.push_back(state_vector(s));

  out.holds = true;
  for (std::uint32_t subset = 1; subset < (1U << k); ++subset) {
    ExactProb lhs = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (subset >> i & 1U) lhs *= x[i];
    }
    ExactProb sum = 0;
    for (const auto& xn : xs) {
      ExactProb term = 1;
      for (std::size_t i = 0; i < k; ++i) {
        if (subset >> i & 1U) term *= xn[i];
      }
      sum += term;
    }
    if (sum / static_cast<long long>(next.size()) != lhs) out.holds = false;
  }
  ExactProb fk_sum = 0;
  for (const auto& xn : xs) fk_sum += formulas::fk(xn);
  out.fk_next = fk_sum / static_cast<long long>(next.size());
  if (out.fk_next != out.fk_now) out.holds = false;
  return out;
}

std::vector<Instance> multipartite_ensemble(const std::vector<int>& parts, std::uint64_t budget) {
  std::vector<Instance> ensemble;
  for_each_outcome(Multipartite{parts}, budget, [&](const Instance& inst, std::uint64_t) { ensemble.push_back(inst); });
  return ensemble;
}

std::vector<Observation> normalized(std::vector<Observation> round) {
  for (auto& o : round) std::sort(o.keys.begin(), o.keys.end());
  std::sort(round.begin(), round.end(), [](const Observation& a, const Observation& b) { return a.box < b.box; });
  return round;
}

using ObservationKey = std::vector<std::pair<BoxId, std::vector<KeyId>>>;

}  // namespace

bool TrialReport::contains(const ExactProb& p) const {
  const double v = to_double(p);
  return lo <= v && v <= hi;
}

std::pair<double, double> wilson_interval(std::uint64_t wins, std::uint64_t trials, double alpha) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  if (wins > trials) throw std::invalid_argument("wilson_interval: more wins than trials");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("wilson_interval: alpha must lie in (0, 1)");
  const double z = boost::math::quantile(boost::math::normal(), 1.0 - alpha / 2.0);
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(wins) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // Pin the endpoints to the estimate when rounding would exclude it.
  return {std::min(p, std::max(0.0, center - half)), std::max(p, std::min(1.0, center + half))};
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

bool run_trial(const Target& target, std::mt19937_64& rng) {
  if (const auto* spec = std::get_if<SchemeSpec>(&target)) return wins(sample(*spec, rng));
  if (const auto* game = std::get_if<CardGame>(&target)) return play_card_game(*game, rng);
  const auto& lin = std::get<LinearGame>(target);
  const gf::PrimeField f(lin.q);
  if (lin.n == 0) return wins(gf::linear_placement(random_matrix(f, lin.m, lin.m, rng)));
  const auto a = random_matrix(f, lin.m, lin.n, rng);
  return wins(gf::bipartite_linear_placement(a, random_matrix(f, lin.n, lin.m, rng)));
}

std::uint64_t count_wins(const Target& target, std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
  std::uint64_t w = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    auto rng = trial_rng(seed, i);
    w += run_trial(target, rng) ? 1 : 0;
  }
  return w;
}

TrialReport monte_carlo(const Target& target, std::uint64_t trials, std::uint64_t seed, unsigned threads,
                        double alpha) {
  if (const auto* spec = std::get_if<SchemeSpec>(&target)) validate(*spec);
  return monte_carlo([&](std::uint64_t, std::mt19937_64& rng) { return run_trial(target, rng); }, trials, seed,
                     threads, alpha);
}

TrialReport monte_carlo(const std::function<bool(std::uint64_t, std::mt19937_64&)>& trial, std::uint64_t trials,
                        std::uint64_t seed, unsigned threads, double alpha) {
  if (trials == 0) throw std::invalid_argument("monte_carlo: need at least one trial");
  const auto wins = parallel_reduce<std::uint64_t>(trials, threads, 0, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t w = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      auto rng = trial_rng(seed, i);
      w += trial(i, rng) ? 1 : 0;
    }
    return w;
  });
  return make_report(wins, trials, seed, alpha);
}

ExactProb weighted_hidden_ratio(const GameState& state, const std::vector<Count>& weights) {
  if (weights.size() != state.box_count()) throw std::invalid_argument("weighted_hidden_ratio: weight count mismatch");
  Count num = 0;
  Count den = 0;
  for (std::size_t b = 0; b < weights.size(); ++b) {
    if (!state.has_key(static_cast<KeyId>(b))) num += weights[b];
    if (!state.is_open(static_cast<BoxId>(b))) den += weights[b];
  }
  if (num == 0) return 0;
  if (den == 0) throw DegenerateState("weighted_hidden_ratio: hidden weight but no locked weight");
  return ExactProb(num, den);
}

MartingaleCheck martingale_check_exact(const SchemeSpec& spec, const ObservationHistory& history, BoxId next_box,
                                       std::uint64_t budget) {
  validate(spec);
  if (is_multi_row(spec)) throw std::invalid_argument("martingale_check_exact: single-row schemes only");
  const auto weights = box_weights(spec);

  std::vector<Instance> members;
  std::vector<std::uint64_t> mult;
  for_each_outcome(spec, budget, [&](const Instance& inst, std::uint64_t m) {
    for (const auto& obs : history) {
      if (obs.box < 0 || static_cast<std::size_t>(obs.box) >= inst.box_count()) return;
      auto keys = obs.keys;
      std::sort(keys.begin(), keys.end());
      const auto c = inst.contents(obs.box);
      if (!std::equal(c.begin(), c.end(), keys.begin(), keys.end())) return;
    }
    members.push_back(inst);
    mult.push_back(m);
  });
  if (members.empty()) throw std::invalid_argument("martingale_check_exact: no outcome is consistent with the history");

  GameState state(members.front());
  for (const auto& obs : history) {
    if (!state.holds(obs.box)) throw std::invalid_argument("martingale_check_exact: history opens a box without its key");
    state.open(members.front(), obs.box);
  }
  if (next_box < 0 || static_cast<std::size_t>(next_box) >= state.box_count() || !state.holds(next_box)) {
    throw std::invalid_argument("martingale_check_exact: next box is not openable");
  }

  MartingaleCheck out;
  out.current = weighted_hidden_ratio(state, weights);
  ExactProb sum = 0;
  Count total = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    GameState after = state;
    after.open(members[i], next_box);
    sum += weighted_hidden_ratio(after, weights) * mult[i];
    total += mult[i];
  }
  out.expected = sum / total;
  out.holds = out.expected == out.current;
  return out;
}

SweepResult martingale_check_all(const SchemeSpec& spec, std::uint64_t budget) {
  validate(spec);
  if (is_multi_row(spec)) throw std::invalid_argument("martingale_check_all: single-row schemes only");
  const auto weights = box_weights(spec);
  std::vector<Instance> outcomes;
  std::vector<std::uint64_t> mult;
  for_each_outcome(spec, budget, [&](const Instance& inst, std::uint64_t m) {
    outcomes.push_back(inst);
    mult.push_back(m);
  });

  SweepResult result;
  std::set<ObservationKey> visited;
  // Histories with the same set of observations condition on the same
  // outcomes, so each set is expanded once.
  const std::function<void(const GameState&, const std::vector<std::size_t>&, const ObservationKey&)> visit =
      [&](const GameState& state, const std::vector<std::size_t>& members, const ObservationKey& seen) {
        const ExactProb now = weighted_hidden_ratio(state, weights);
        Count total = 0;
        for (const auto i : members) total += mult[i];
        for (const BoxId box : state.openable()) {
          std::map<std::vector<KeyId>, std::vector<std::size_t>> groups;
          for (const auto i : members) {
            const auto c = outcomes[i].contents(box);
            groups[std::vector<KeyId>(c.begin(), c.end())].push_back(i);
          }
          ExactProb sum = 0;
          std::vector<std::pair<GameState, ObservationKey>> children;
          for (const auto& [keys, group] : groups) {
            GameState after = state;
            after.open(outcomes[group.front()], box);
            Count w = 0;
            for (const auto i : group) w += mult[i];
            sum += weighted_hidden_ratio(after, weights) * w;
            ObservationKey next = seen;
            next.emplace_back(box, keys);
            std::sort(next.begin(), next.end());
            if (visited.insert(next).second) visit(after, group, next);
          }
          ++result.checks;
          if (sum / total != now) {
            ++result.failures;
            result.holds = false;
          }
        }
      };
  std::vector<std::size_t> all(outcomes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  visit(GameState(outcomes.front()), all, {});
  return result;
}

MonomialCheck monomial_martingale_check(const std::vector<int>& parts, const RoundHistory& history,
                                        std::uint64_t budget) {
  const auto ensemble = multipartite_ensemble(parts, budget);
  std::vector<RoundHistory::value_type> wanted;
  for (const auto& round : history) wanted.push_back(normalized(round));

  std::vector<GameState> after_history;
  std::vector<GameState> next;
  for (const auto& inst : ensemble) {
    GameState s(inst);
    bool consistent = true;
    for (const auto& round : wanted) {
      if (s.stuck()) {
        consistent = false;
        break;
      }
      std::vector<Observation> seen;
      for (auto& [box, keys] : s.open_round(inst)) seen.push_back({box, keys});
      if (normalized(std::move(seen)) != round) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    after_history.push_back(s);
    if (!s.stuck()) {
      s.open_round(inst);
      next.push_back(s);
    }
  }
  if (after_history.empty()) throw std::invalid_argument("monomial_martingale_check: no placement is consistent with the history");
  const GameState& now = after_history.front();
  if (finished(now) || next.empty()) {
    const ExactProb v = formulas::fk(state_vector(now));
    return {true, v, v};
  }
  return check_round(now, next);
}

SweepResult monomial_martingale_check_all(const std::vector<int>& parts, std::uint64_t budget) {
  const auto ensemble = multipartite_ensemble(parts, budget);
  SweepResult result;
  walk_round_histories(ensemble, [&](const GameState& state, std::span<const std::size_t>, std::span<const GameState> next) {
    if (next.empty() || finished(state)) return;
    ++result.checks;
    if (!check_round(state, next).holds) {
      ++result.failures;
      result.holds = false;
    }
  });
  return result;
}

StoppedValue stopped_value_equals_probability(const SchemeSpec& spec, std::uint64_t budget) {
  validate(spec);
  StoppedValue out;
  out.win_probability = exact_win_probability(spec, {budget, 1});
  const Instance first = OutcomeSpace(spec).at(0);
  if (is_multi_row(spec)) {
    out.start_value = formulas::fk(state_vector(GameState(first)));
  } else {
    const auto weights = box_weights(spec);
    Count kept = 0;
    Count total = 0;
    for (std::size_t b = 0; b < weights.size(); ++b) {
      total += weights[b];
      if (first.is_retained(static_cast<KeyId>(b))) kept += weights[b];
    }
    out.start_value = make_prob(kept, total);
  }
  out.holds = out.start_value == out.win_probability;
  return out;
}

}  // namespace padlock
