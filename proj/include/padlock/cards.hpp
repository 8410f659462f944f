#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "padlock/exact.hpp"

namespace padlock::cards {

/// Cards are abstract kinds 0..K-1. `pickup[k]` is the number of talon cards
/// drawn when a card of kind k is played (0 for plain cards).
struct DeckSpec {
  std::vector<int> multiplicity;
  std::vector<int> pickup;

  int size() const;
  int kinds() const { return static_cast<int>(multiplicity.size()); }
  int total_pickup() const;
};

/// Throws std::invalid_argument unless multiplicities are positive, the
/// pickup vector matches and the total pickup does not exceed the deck size.
void validate(const DeckSpec& deck);

struct Pile {
  int label = 0;  ///< key kind that opens this pile (multiplicity 1)
  int size = 0;
};

/// The first hand_size cards form the hand; piles are then dealt
/// consecutively in the listed order.
struct PileLayout {
  int hand_size = 0;
  std::vector<Pile> piles;
};

void validate(const DeckSpec& deck, const PileLayout& layout);

/// One arrangement of the deck, top card first.
using Shuffle = std::vector<int>;

/// Throws std::invalid_argument if `shuffle` is not an arrangement of `deck`.
void validate(const DeckSpec& deck, std::span<const int> shuffle);

/// Uniform arrangement of the deck.
Shuffle random_shuffle(const DeckSpec& deck, std::mt19937_64& rng);

/// Visits every distinct arrangement of the deck once, in lexicographic
/// order. Throws TooLarge if there are more than `budget`.
void for_each_arrangement(const DeckSpec& deck, std::uint64_t budget,
                          const std::function<void(std::span<const int>)>& visit);

/// Fraction of distinct arrangements satisfying `event`.
ExactProb exact_probability(const DeckSpec& deck, const std::function<bool(std::span<const int>)>& event,
                            std::uint64_t budget = kDefaultBudget);

// Pile game ---------------------------------------------------------------

/// Plays hand cards and picked-up piles; a key card picks up the pile with
/// its label. True iff every pile is picked up.
bool play_pile_game(const DeckSpec& deck, const PileLayout& layout, std::span<const int> shuffle);

/// Exact win probability over all arrangements. Decks up to 10 cards.
ExactProb exact_pile_game_probability(const DeckSpec& deck, const PileLayout& layout,
                                      std::uint64_t budget = kDefaultBudget);

/// Deck of `keys` single key cards (kinds 0..keys-1) padded with plain cards
/// up to `cards`.
DeckSpec key_deck(int cards, int keys);

/// For the key deck with the given hand size, every way of splitting the
/// remaining cards into `keys` piles (empty piles allowed) gives win
/// probability hand_size / cards.
bool pile_invariance_check(int cards, int keys, int hand_size, std::uint64_t budget = kDefaultBudget);

// Lazy talon --------------------------------------------------------------

struct LazyResult {
  bool won = false;
  int talon_remaining = 0;  ///< cards never reached
  int keys_remaining = 0;   ///< cards with positive pickup among them
  int points_remaining = 0; ///< their total pickup
};

/// Hand of `hand_size` cards, the rest is the talon. Every played card
/// draws its pickup value from the talon; won when the talon runs out.
LazyResult play_lazy_talon(const DeckSpec& deck, int hand_size, std::span<const int> shuffle);

// Ballot events -----------------------------------------------------------

/// Some nonempty prefix has key fraction >= num/den, where key cards are
/// those with positive pickup.
bool threshold_reach(const DeckSpec& deck, std::span<const int> shuffle, int num = 1, int den = 3);

/// Some nonempty prefix has total pickup >= its length.
bool points_reach(const DeckSpec& deck, std::span<const int> shuffle);

// Decks -------------------------------------------------------------------

/// Kinds 0..12 are the hearts (pickup 3); kind 13 is the other 39 cards.
DeckSpec hearts_deck();
/// Hand of 13, thirteen piles of three labeled by the hearts.
PileLayout hearts_layout();
/// Kinds J, Q, K, A (four each, pickup 1..4) and 36 plain cards.
DeckSpec hcp_deck();
inline constexpr int kHcpHand = 12;
inline constexpr int kHeartsHand = 13;

// Clock solitaire ---------------------------------------------------------

/// Ranks 0..ranks-1, `suits` cards each; rank ranks-1 plays the king.
DeckSpec clock_deck(int ranks = 13, int suits = 4);

/// Pile p holds shuffle positions p*suits .. p*suits+suits-1, top first.
/// Play starts at the king pile; each revealed card goes under the pile of
/// its rank and the next card is taken from that pile. Returns the revealed
/// cards as (pile, rank) in order.
struct ClockReveal {
  int pile = 0;
  int rank = 0;
};
std::vector<ClockReveal> clock_reveal_order(std::span<const int> shuffle, int ranks = 13, int suits = 4);

bool play_clock(std::span<const int> shuffle, int ranks = 13, int suits = 4);

/// Revealed ranks followed by the unrevealed cards pile by pile. A bijection
/// on deals; the game is won iff its last card is a king.
std::vector<int> clock_extended_order(std::span<const int> shuffle, int ranks = 13, int suits = 4);

/// Bottom-card criterion: following each non-king pile to the pile named by
/// its bottom card always ends at the king pile.
bool clock_bottom_tree(std::span<const int> shuffle, int ranks = 13, int suits = 4);

ExactProb exact_clock_probability(int ranks, int suits, std::uint64_t budget = kDefaultBudget);

// Catalan deals -----------------------------------------------------------

/// n red and n+1 black cards in piles of 1, 2, ..., 2; any red card opens
/// the next pile. Counts winning arrangements.
Count catalan_pilesplit_count(int n, std::uint64_t budget = kDefaultBudget);

/// n red and n black cards; each opened box deals cards up to a black one,
/// the reds before it being keys. Counts arrangements opening all n+1 boxes.
Count catalan_stackdeal_count(int n, std::uint64_t budget = kDefaultBudget);

/// Single deals of the two constructions; cards are 1 (red) or 0 (black).
bool pilesplit_wins(std::span<const int> cards);
bool stackdeal_wins(std::span<const int> cards);

}  // namespace padlock::cards
