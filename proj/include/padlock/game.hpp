#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "padlock/exact.hpp"

namespace padlock {

/// Box and key identifiers are 0-based; key k opens box k.
using BoxId = int;
using KeyId = int;

/// A ratio was requested over an empty set of locked boxes.
class DegenerateState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A GivenSequence policy asked to open a box whose key is not in hand.
class OrderViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partition of the boxes into rows. Keys belong to the row of their box.
class Rows {
 public:
  /// Contiguous rows: the first `sizes[0]` boxes form row 0, and so on.
  static Rows from_sizes(std::span<const int> sizes);

  /// Arbitrary partition; parts must be nonempty, disjoint and cover 0..n-1.
  explicit Rows(std::vector<std::vector<BoxId>> parts);

  std::size_t count() const { return parts_.size(); }
  std::size_t box_count() const { return row_of_.size(); }
  std::size_t row_of(BoxId box) const { return row_of_.at(static_cast<std::size_t>(box)); }
  std::size_t size(std::size_t row) const { return parts_.at(row).size(); }
  const std::vector<BoxId>& boxes(std::size_t row) const { return parts_.at(row); }
  std::vector<int> sizes() const;

  friend bool operator==(const Rows&, const Rows&) = default;

 private:
  std::vector<std::vector<BoxId>> parts_;
  std::vector<std::size_t> row_of_;
};

/// One game of padlock solitaire: which keys are kept and where every other
/// key is locked up.
class Instance {
 public:
  static constexpr BoxId kRetained = -1;

  /// `key_box[k]` is the box holding key k, or kRetained. The box count is
  /// key_box.size(). At least one key must be retained.
  explicit Instance(std::vector<BoxId> key_box, std::optional<Rows> rows = std::nullopt);

  /// Builds an instance from a retained set and explicit (key, box) pairs.
  static Instance make(int box_count, std::span<const KeyId> retained,
                       std::span<const std::pair<KeyId, BoxId>> placement,
                       std::optional<Rows> rows = std::nullopt);

  std::size_t box_count() const { return key_box_.size(); }
  bool is_retained(KeyId key) const { return key_box_.at(static_cast<std::size_t>(key)) == kRetained; }
  /// Box holding `key`, or kRetained.
  BoxId box_of(KeyId key) const { return key_box_.at(static_cast<std::size_t>(key)); }
  const std::vector<BoxId>& key_boxes() const { return key_box_; }
  std::vector<KeyId> retained() const;
  /// Keys locked inside `box`, ascending.
  std::span<const KeyId> contents(BoxId box) const;

  const std::optional<Rows>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_ ? rows_->count() : 1; }
  std::size_t row_of(BoxId box) const { return rows_ ? rows_->row_of(box) : 0; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.key_box_ == b.key_box_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<BoxId> key_box_;
  std::vector<std::uint32_t> content_begin_;
  std::vector<KeyId> content_keys_;
  std::optional<Rows> rows_;
};

/// Observable state of a game in progress: opened boxes, keys in hand and
/// the per-row counters H_i (hidden keys), L_i (locked boxes, including those
/// whose key is already held) and the number of held-but-unused keys.
class GameState {
 public:
  explicit GameState(const Instance& instance);

  std::size_t box_count() const { return opened_.size(); }
  std::size_t row_count() const { return hidden_.size(); }
  bool is_open(BoxId box) const { return opened_.at(static_cast<std::size_t>(box)) != 0; }
  /// Key obtained (retained or found), whether or not it was used.
  bool has_key(KeyId key) const { return have_key_.at(static_cast<std::size_t>(key)) != 0; }
  /// Key in hand whose box is still locked.
  bool holds(KeyId key) const { return has_key(key) && !is_open(key); }

  std::size_t hidden(std::size_t row) const { return hidden_.at(row); }
  std::size_t locked(std::size_t row) const { return locked_.at(row); }
  std::size_t held(std::size_t row) const { return locked(row) - hidden(row); }
  std::size_t hidden() const;
  std::size_t locked() const;
  std::size_t held() const { return locked() - hidden(); }

  /// Locked boxes whose key is in hand, ascending.
  std::vector<BoxId> openable() const;
  bool stuck() const { return held() == 0; }
  bool all_found() const { return hidden() == 0; }

  /// Opens one box and returns the keys found in it.
  std::vector<KeyId> open(const Instance& instance, BoxId box);
  /// Opens every box whose key is currently in hand; keys found during the
  /// round are not used until the next round.
  std::vector<std::pair<BoxId, std::vector<KeyId>>> open_round(const Instance& instance);

  const std::vector<char>& opened_mask() const { return opened_; }

 private:
  std::vector<char> opened_;
  std::vector<char> have_key_;
  std::vector<std::size_t> row_of_;
  std::vector<std::size_t> hidden_;
  std::vector<std::size_t> locked_;
};

/// Per-row state ratios. With a single row: hidden/locked and held/locked.
/// With several rows: hidden_i = H_i / (L - L_i) and held_i = held_i / L_i.
struct Ratios {
  std::vector<ExactProb> hidden;
  std::vector<ExactProb> held;
};

/// Throws DegenerateState when any denominator is zero.
Ratios ratios(const GameState& state);
ExactProb hidden_ratio(const GameState& state, std::size_t row);
ExactProb held_ratio(const GameState& state, std::size_t row);

enum class PlayMode { Sequential, Rounds };

struct LowestKeyFirst {};
/// Explicit box order. Once exhausted, play continues with LowestKeyFirst.
struct GivenSequence {
  std::vector<BoxId> order;
};
struct RngChoice {
  std::uint64_t seed = 0;
};
using OrderPolicy = std::variant<LowestKeyFirst, GivenSequence, RngChoice>;

struct RatioSnapshot {
  /// nullopt where the ratio's denominator is zero.
  std::vector<std::optional<ExactProb>> hidden;
  std::vector<std::optional<ExactProb>> held;
};

struct TraceStep {
  std::vector<BoxId> opened;
  std::vector<KeyId> keys_found;
  RatioSnapshot after;
};

struct Trace {
  RatioSnapshot initial;
  std::vector<TraceStep> steps;
  bool won = false;

  /// Boxes in the order they were opened.
  std::vector<BoxId> order() const;
};

/// True iff every box can be reached from the retained keys.
bool wins(const Instance& instance);

/// Spanning forest test: every box's parent chain (the box holding its key)
/// ends at a retained box. Independent of the reachability search in wins().
bool is_spanning_forest(const Instance& instance);

/// Rooted spanning tree test. Requires exactly one retained key.
bool is_rooted_tree(const Instance& instance);

/// Plays until no held key opens a locked box. In Rounds mode the policy is
/// ignored: every openable box is opened in each step.
Trace play(const Instance& instance, PlayMode mode, const OrderPolicy& policy = LowestKeyFirst{});

/// Walks every observable history of Rounds-mode play over an ensemble of
/// equally likely instances. For each history `visit(state, members, next)`
/// is called, where `members` indexes the instances consistent with it and
/// `next[i]` is the state of instance members[i] after the coming round
/// (empty once the history is stuck). Children are visited in the order of
/// their observations.
void walk_round_histories(
    std::span<const Instance> ensemble,
    const std::function<void(const GameState&, std::span<const std::size_t>, std::span<const GameState>)>& visit);

/// Master-key solvency of an opening order: for every k < n the retained
/// keys plus the keys in the first k boxes number at least k + 1.
/// `order` must be a permutation of all boxes.
bool solvent(const Instance& instance, std::span<const BoxId> order);

}  // namespace padlock
