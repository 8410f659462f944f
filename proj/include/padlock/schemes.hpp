#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "padlock/exact.hpp"
#include "padlock/game.hpp"

namespace padlock {

// Key-distribution schemes. Retained keys are listed first (keys 0..k-1)
// unless a scheme says otherwise; all other keys are placed.

/// Every placed key independently uniform over all n boxes.
struct UniformIID {
  int n = 1;
  int retained = 1;
};

/// Every placed key independently in box i with probability weights[i].
struct WeightedIID {
  std::vector<ExactProb> weights;
  int retained = 1;
};

/// Key j lies in box sigma(j) for a uniform permutation sigma; keys in
/// `retained` are withheld, so their target boxes stay empty.
struct Permutation {
  int n = 1;
  std::vector<KeyId> retained{0};
};

/// Three boxes, key 0 kept; uniform over the placements of keys 1 and 2
/// given by the three odd permutations.
struct OddPermutation3 {};

/// 2p+1 boxes, key 0 kept; the other 2p keys are paired uniformly and each
/// pair lands uniformly in one box.
struct PairedTriples {
  int pairs = 1;
};

/// Key 0 kept; uniform over placements with degrees[0] keys in box 0 and
/// degrees[i]-1 keys in box i.
struct DegreeConditioned {
  std::vector<int> degrees;
};

/// Rows A (m boxes) and B (n boxes); key A_1 kept, every other key uniform
/// over the opposite row.
struct Bipartite {
  int m = 1;
  int n = 1;
};

/// Rows of the given sizes; first key of row 0 kept, every other key
/// uniform over the boxes of the other rows.
struct Multipartite {
  std::vector<int> parts;
};

/// As Multipartite, but the placed keys of each row travel on one ring that
/// lands uniformly in a box of the other rows.
struct KeyRing {
  std::vector<int> parts;
};

using SchemeSpec = std::variant<UniformIID, WeightedIID, Permutation, OddPermutation3, PairedTriples,
                                DegreeConditioned, Bipartite, Multipartite, KeyRing>;

/// Throws std::invalid_argument on bad parameters.
void validate(const SchemeSpec& spec);

std::string scheme_name(const SchemeSpec& spec);
std::size_t box_count(const SchemeSpec& spec);
/// True for the schemes whose instances carry more than one row.
bool is_multi_row(const SchemeSpec& spec);

/// Relative probability of a key landing in each box (for the weighted
/// hidden-keys ratio): the weights' numerators over their common
/// denominator, the degree slots, or all ones.
std::vector<Count> box_weights(const SchemeSpec& spec);

/// Mixed-radix indexed outcome space. Each index carries a multiplicity; it
/// is 1 for every equiprobable scheme and the product of per-key weight
/// numerators for WeightedIID, which realizes the common-denominator
/// refinement without listing each slot.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(const SchemeSpec& spec);
  ~OutcomeSpace();
  OutcomeSpace(OutcomeSpace&&) noexcept;
  OutcomeSpace& operator=(OutcomeSpace&&) noexcept;

  const SchemeSpec& spec() const;
  /// Number of indices.
  Count size() const;
  /// Sum of multiplicities over all indices.
  Count total_weight() const;
  bool equiprobable() const;

  Instance at(std::uint64_t index) const;
  std::uint64_t multiplicity(std::uint64_t index) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct EnumOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
};

/// Number of equally likely outcomes. Throws NotEquiprobable for
/// WeightedIID with unequal weights.
Count space_size(const SchemeSpec& spec);

/// Outcome `index` in [0, space_size). Distinct indices give distinct
/// instances, except for PairedTriples: two pairings whose pairs share a box
/// place the keys identically.
Instance placement_at(const SchemeSpec& spec, const Count& index);

/// Draws one instance from the scheme's distribution.
Instance sample(const SchemeSpec& spec, std::mt19937_64& rng);

struct WinTally {
  Count wins;
  Count total;
};

/// Winning outcomes and total, both counted with multiplicity.
WinTally exact_win_tally(const SchemeSpec& spec, const EnumOptions& options = {});
Count exact_win_count(const SchemeSpec& spec, const EnumOptions& options = {});
ExactProb exact_win_probability(const SchemeSpec& spec, const EnumOptions& options = {});

/// Calls `visit(instance, multiplicity)` for every outcome in index order.
void for_each_outcome(const SchemeSpec& spec, std::uint64_t budget,
                      const std::function<void(const Instance&, std::uint64_t)>& visit);

/// Probability over all n! permutations of {0..n-1} that every cycle
/// contains one of 0..k-1. Enumerates permutations directly.
ExactProb cycle_cover_probability(int n, int k);

/// Exact win probabilities of KeyRing{parts} and Multipartite{parts} agree.
bool keyring_equivalence_check(const std::vector<int>& parts, const EnumOptions& options = {});

/// UniformIID{n,1} placements solvent when the boxes are opened left to
/// right with a master key (the parking-function count).
Count left_to_right_solvent_count(int n, const EnumOptions& options = {});

}  // namespace padlock
