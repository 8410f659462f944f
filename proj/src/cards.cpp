#include "padlock/cards.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace padlock::cards {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

Shuffle sorted_deck(const DeckSpec& deck) {
  Shuffle cards;
  cards.reserve(static_cast<std::size_t>(deck.size()));
  for (int k = 0; k < deck.kinds(); ++k) cards.insert(cards.end(), static_cast<std::size_t>(deck.multiplicity[static_cast<std::size_t>(k)]), k);
  return cards;
}

Count arrangement_count(const DeckSpec& deck) {
  Count c = factorial(static_cast<unsigned>(deck.size()));
  for (const int m : deck.multiplicity) c /= factorial(static_cast<unsigned>(m));
  return c;
}

void validate_clock(std::span<const int> shuffle, int ranks, int suits) {
  require(ranks >= 1 && suits >= 1, "clock: need at least one rank and one suit");
  require(shuffle.size() == static_cast<std::size_t>(ranks * suits), "clock: wrong deck size");
  std::vector<int> seen(static_cast<std::size_t>(ranks), 0);
  for (const int c : shuffle) {
    require(c >= 0 && c < ranks, "clock: rank out of range");
    ++seen[static_cast<std::size_t>(c)];
  }
  for (const int s : seen) require(s == suits, "clock: every rank needs one card per suit");
}

void validate_colors(std::span<const int> cards, int reds, int blacks, const char* what) {
  require(cards.size() == static_cast<std::size_t>(reds + blacks), std::string(what) + ": wrong deck size");
  int r = 0;
  for (const int c : cards) {
    require(c == 0 || c == 1, std::string(what) + ": cards must be 0 (black) or 1 (red)");
    r += c;
  }
  require(r == reds, std::string(what) + ": wrong number of red cards");
}

Count count_colored(int reds, int blacks, std::uint64_t budget, const char* what,
                    bool (*wins)(std::span<const int>)) {
  checked_size(binomial(static_cast<unsigned>(reds + blacks), static_cast<unsigned>(reds)), budget, what);
  std::vector<int> cards(static_cast<std::size_t>(blacks), 0);
  cards.insert(cards.end(), static_cast<std::size_t>(reds), 1);
  std::uint64_t count = 0;
  do {
    count += wins(cards) ? 1 : 0;
  } while (std::next_permutation(cards.begin(), cards.end()));
  return count;
}

}  // namespace

int DeckSpec::size() const { return std::accumulate(multiplicity.begin(), multiplicity.end(), 0); }

int DeckSpec::total_pickup() const {
  int total = 0;
  for (std::size_t k = 0; k < multiplicity.size() && k < pickup.size(); ++k) total += multiplicity[k] * pickup[k];
  return total;
}

void validate(const DeckSpec& deck) {
  require(!deck.multiplicity.empty(), "deck: no card kinds");
  require(deck.pickup.size() == deck.multiplicity.size(), "deck: pickup and multiplicity lengths differ");
  for (std::size_t k = 0; k < deck.multiplicity.size(); ++k) {
    require(deck.multiplicity[k] >= 1, "deck: multiplicities must be positive");
    require(deck.pickup[k] >= 0, "deck: pickup values must be nonnegative");
  }
  require(deck.total_pickup() <= deck.size(), "deck: total pickup exceeds the number of cards");
}

void validate(const DeckSpec& deck, const PileLayout& layout) {
  validate(deck);
  require(layout.hand_size >= 0, "layout: negative hand size");
  int total = layout.hand_size;
  std::vector<char> used(static_cast<std::size_t>(deck.kinds()), 0);
  for (const auto& pile : layout.piles) {
    require(pile.size >= 0, "layout: negative pile size");
    require(pile.label >= 0 && pile.label < deck.kinds(), "layout: pile label is not a card kind");
    require(deck.multiplicity[static_cast<std::size_t>(pile.label)] == 1, "layout: pile label must be a single key card");
    require(!used[static_cast<std::size_t>(pile.label)], "layout: two piles share a label");
    used[static_cast<std::size_t>(pile.label)] = 1;
    total += pile.size;
  }
  require(total == deck.size(), "layout: hand and piles do not use the whole deck");
}

void validate(const DeckSpec& deck, std::span<const int> shuffle) {
  require(shuffle.size() == static_cast<std::size_t>(deck.size()), "shuffle: wrong number of cards");
  std::vector<int> seen(static_cast<std::size_t>(deck.kinds()), 0);
  for (const int c : shuffle) {
    require(c >= 0 && c < deck.kinds(), "shuffle: unknown card kind");
    ++seen[static_cast<std::size_t>(c)];
  }
  require(seen == deck.multiplicity, "shuffle: multiplicities differ from the deck");
}

Shuffle random_shuffle(const DeckSpec& deck, std::mt19937_64& rng) {
  Shuffle cards = sorted_deck(deck);
  std::shuffle(cards.begin(), cards.end(), rng);
  return cards;
}

void for_each_arrangement(const DeckSpec& deck, std::uint64_t budget,
                          const std::function<void(std::span<const int>)>& visit) {
  validate(deck);
  checked_size(arrangement_count(deck), budget, "for_each_arrangement");
  Shuffle cards = sorted_deck(deck);
  do {
    visit(cards);
  } while (std::next_permutation(cards.begin(), cards.end()));
}

ExactProb exact_probability(const DeckSpec& deck, const std::function<bool(std::span<const int>)>& event,
                            std::uint64_t budget) {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for_each_arrangement(deck, budget, [&](std::span<const int> s) {
    hits += event(s) ? 1 : 0;
    ++total;
  });
  return make_prob(hits, total);
}

bool play_pile_game(const DeckSpec& deck, const PileLayout& layout, std::span<const int> shuffle) {
  validate(deck, layout);
  validate(deck, shuffle);
  std::vector<int> pile_of_label(static_cast<std::size_t>(deck.kinds()), -1);
  std::vector<std::size_t> start(layout.piles.size());
  std::size_t pos = static_cast<std::size_t>(layout.hand_size);
  for (std::size_t p = 0; p < layout.piles.size(); ++p) {
    pile_of_label[static_cast<std::size_t>(layout.piles[p].label)] = static_cast<int>(p);
    start[p] = pos;
    pos += static_cast<std::size_t>(layout.piles[p].size);
  }

  std::vector<int> pending(shuffle.begin(), shuffle.begin() + layout.hand_size);
  std::vector<char> picked(layout.piles.size(), 0);
  std::size_t picked_count = 0;
  while (!pending.empty()) {
    const int card = pending.back();
    pending.pop_back();
    const int p = pile_of_label[static_cast<std::size_t>(card)];
    if (p < 0 || picked[static_cast<std::size_t>(p)]) continue;
    picked[static_cast<std::size_t>(p)] = 1;
    ++picked_count;
    const auto first = shuffle.begin() + static_cast<std::ptrdiff_t>(start[static_cast<std::size_t>(p)]);
    pending.insert(pending.end(), first, first + layout.piles[static_cast<std::size_t>(p)].size);
  }
  return picked_count == layout.piles.size();
}

ExactProb exact_pile_game_probability(const DeckSpec& deck, const PileLayout& layout, std::uint64_t budget) {
  validate(deck, layout);
  if (deck.size() > 10) throw TooLarge("exact_pile_game_probability: decks are limited to 10 cards");
  return exact_probability(deck, [&](std::span<const int> s) { return play_pile_game(deck, layout, s); }, budget);
}

DeckSpec key_deck(int cards, int keys) {
  require(keys >= 1 && keys <= cards, "key_deck: need 1 <= keys <= cards");
  DeckSpec deck;
  deck.multiplicity.assign(static_cast<std::size_t>(keys), 1);
  deck.pickup.assign(static_cast<std::size_t>(keys), 0);
  if (cards > keys) {
    deck.multiplicity.push_back(cards - keys);
    deck.pickup.push_back(0);
  }
  return deck;
}

bool pile_invariance_check(int cards, int keys, int hand_size, std::uint64_t budget) {
  const DeckSpec deck = key_deck(cards, keys);
  require(hand_size >= 0 && hand_size <= cards, "pile_invariance_check: hand size out of range");
  const ExactProb expected(hand_size, cards);
  const int rest = cards - hand_size;

  std::vector<int> sizes(static_cast<std::size_t>(keys), 0);
  // Fills sizes[i..] with every composition of `left`; empty piles allowed.
  const std::function<bool(std::size_t, int)> fill = [&](std::size_t i, int left) {
    if (i + 1 == sizes.size()) {
      sizes[i] = left;
      PileLayout layout{hand_size, {}};
      for (std::size_t k = 0; k < sizes.size(); ++k) layout.piles.push_back({static_cast<int>(k), sizes[k]});
      return exact_pile_game_probability(deck, layout, budget) == expected;
    }
    for (int s = 0; s <= left; ++s) {
      sizes[i] = s;
      if (!fill(i + 1, left - s)) return false;
    }
    return true;
  };
  return fill(0, rest);
}

LazyResult play_lazy_talon(const DeckSpec& deck, int hand_size, std::span<const int> shuffle) {
  validate(deck);
  validate(deck, shuffle);
  const int n = deck.size();
  require(hand_size >= 0 && hand_size <= n, "play_lazy_talon: hand size out of range");
  int reachable = hand_size;
  int played = 0;
  while (played < reachable) {
    reachable = std::min(n, reachable + deck.pickup[static_cast<std::size_t>(shuffle[static_cast<std::size_t>(played)])]);
    ++played;
  }
  LazyResult r;
  r.won = reachable == n;
  r.talon_remaining = n - reachable;
  for (int i = reachable; i < n; ++i) {
    const int p = deck.pickup[static_cast<std::size_t>(shuffle[static_cast<std::size_t>(i)])];
    r.keys_remaining += p > 0 ? 1 : 0;
    r.points_remaining += p;
  }
  return r;
}

bool threshold_reach(const DeckSpec& deck, std::span<const int> shuffle, int num, int den) {
  validate(deck, shuffle);
  require(den >= 1 && num >= 0, "threshold_reach: need num >= 0 and den >= 1");
  long long keys = 0;
  long long length = 0;
  for (const int c : shuffle) {
    ++length;
    keys += deck.pickup[static_cast<std::size_t>(c)] > 0 ? 1 : 0;
    if (keys * den >= num * length) return true;
  }
  return false;
}

bool points_reach(const DeckSpec& deck, std::span<const int> shuffle) {
  validate(deck, shuffle);
  long long points = 0;
  long long length = 0;
  for (const int c : shuffle) {
    ++length;
    points += deck.pickup[static_cast<std::size_t>(c)];
    if (points >= length) return true;
  }
  return false;
}

DeckSpec hearts_deck() {
  DeckSpec deck;
  deck.multiplicity.assign(13, 1);
  deck.pickup.assign(13, 3);
  deck.multiplicity.push_back(39);
  deck.pickup.push_back(0);
  return deck;
}

PileLayout hearts_layout() {
  PileLayout layout{kHeartsHand, {}};
  for (int k = 0; k < 13; ++k) layout.piles.push_back({k, 3});
  return layout;
}

DeckSpec hcp_deck() { return DeckSpec{{4, 4, 4, 4, 36}, {1, 2, 3, 4, 0}}; }

DeckSpec clock_deck(int ranks, int suits) {
  require(ranks >= 1 && suits >= 1, "clock_deck: need at least one rank and one suit");
  return DeckSpec{std::vector<int>(static_cast<std::size_t>(ranks), suits), std::vector<int>(static_cast<std::size_t>(ranks), 0)};
}

std::vector<ClockReveal> clock_reveal_order(std::span<const int> shuffle, int ranks, int suits) {
  validate_clock(shuffle, ranks, suits);
  std::vector<int> drawn(static_cast<std::size_t>(ranks), 0);
  std::vector<ClockReveal> order;
  int pile = ranks - 1;
  while (drawn[static_cast<std::size_t>(pile)] < suits) {
    const int rank = shuffle[static_cast<std::size_t>(pile * suits + drawn[static_cast<std::size_t>(pile)]++)];
    order.push_back({pile, rank});
    pile = rank;
  }
  return order;
}

bool play_clock(std::span<const int> shuffle, int ranks, int suits) {
  return clock_reveal_order(shuffle, ranks, suits).size() == shuffle.size();
}

std::vector<int> clock_extended_order(std::span<const int> shuffle, int ranks, int suits) {
  const auto reveals = clock_reveal_order(shuffle, ranks, suits);
  std::vector<int> drawn(static_cast<std::size_t>(ranks), 0);
  std::vector<int> order;
  order.reserve(shuffle.size());
  for (const auto& r : reveals) {
    order.push_back(r.rank);
    ++drawn[static_cast<std::size_t>(r.pile)];
  }
  for (int p = 0; p < ranks; ++p) {
    for (int i = drawn[static_cast<std::size_t>(p)]; i < suits; ++i) order.push_back(shuffle[static_cast<std::size_t>(p * suits + i)]);
  }
  return order;
}

bool clock_bottom_tree(std::span<const int> shuffle, int ranks, int suits) {
  validate_clock(shuffle, ranks, suits);
  const int king = ranks - 1;
  for (int start = 0; start < king; ++start) {
    int p = start;
    int steps = 0;
    while (p != king && steps < ranks) {
      p = shuffle[static_cast<std::size_t>(p * suits + suits - 1)];
      ++steps;
    }
    if (p != king) return false;
  }
  return true;
}

ExactProb exact_clock_probability(int ranks, int suits, std::uint64_t budget) {
  return exact_probability(clock_deck(ranks, suits), [&](std::span<const int> s) { return play_clock(s, ranks, suits); },
                           budget);
}

bool pilesplit_wins(std::span<const int> cards) {
  require(cards.size() % 2 == 1, "pilesplit: need 2n+1 cards");
  const int n = static_cast<int>(cards.size() / 2);
  validate_colors(cards, n, n + 1, "pilesplit");
  int keys = cards[0];
  int opened = 1;
  while (opened <= n && keys > 0) {
    --keys;
    keys += cards[static_cast<std::size_t>(2 * opened - 1)] + cards[static_cast<std::size_t>(2 * opened)];
    ++opened;
  }
  return opened == n + 1;
}

bool stackdeal_wins(std::span<const int> cards) {
  require(cards.size() % 2 == 0, "stackdeal: need 2n cards");
  const int n = static_cast<int>(cards.size() / 2);
  validate_colors(cards, n, n, "stackdeal");
  std::size_t pos = 0;
  int keys = 1;
  int opened = 0;
  while (opened <= n && keys > 0) {
    --keys;
    ++opened;
    while (pos < cards.size() && cards[pos] == 1) {
      ++keys;
      ++pos;
    }
    if (pos < cards.size()) ++pos;  // the black card closing this box
  }
  return opened == n + 1;
}

Count catalan_pilesplit_count(int n, std::uint64_t budget) {
  require(n >= 0, "catalan_pilesplit_count: n must be nonnegative");
  if (n > 12) throw TooLarge("catalan_pilesplit_count: n is limited to 12");
  return count_colored(n, n + 1, budget, "catalan_pilesplit_count", &pilesplit_wins);
}

Count catalan_stackdeal_count(int n, std::uint64_t budget) {
  require(n >= 0, "catalan_stackdeal_count: n must be nonnegative");
  if (n > 12) throw TooLarge("catalan_stackdeal_count: n is limited to 12");
  return count_colored(n, n, budget, "catalan_stackdeal_count", &stackdeal_wins);
}

}  // namespace padlock::cards
