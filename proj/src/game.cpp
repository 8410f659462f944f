#include "padlock/game.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

namespace padlock {

// ---------------------------------------------------------------- Rows

Rows Rows::from_sizes(std::span<const int> sizes) {
  std::vector<std::vector<BoxId>> parts;
  BoxId next = 0;
  for (const int s : sizes) {
    if (s <= 0) throw std::invalid_argument("Rows: part sizes must be positive");
    std::vector<BoxId> part(static_cast<std::size_t>(s));
    std::iota(part.begin(), part.end(), next);
    next += s;
    parts.push_back(std::move(part));
  }
  return Rows(std::move(parts));
}

Rows::Rows(std::vector<std::vector<BoxId>> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("Rows: need at least one part");
  std::size_t n = 0;
  for (const auto& p : parts_) {
    if (p.empty()) throw std::invalid_argument("Rows: empty part");
    n += p.size();
  }
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  row_of_.assign(n, kUnset);
  for (std::size_t r = 0; r < parts_.size(); ++r) {
    std::sort(parts_[r].begin(), parts_[r].end());
    for (const BoxId b : parts_[r]) {
      if (b < 0 || static_cast<std::size_t>(b) >= n || row_of_[static_cast<std::size_t>(b)] != kUnset) {
        throw std::invalid_argument("Rows: parts must be disjoint and cover 0..n-1");
      }
      row_of_[static_cast<std::size_t>(b)] = r;
    }
  }
}

std::vector<int> Rows::sizes() const {
  std::vector<int> s;
  for (const auto& p : parts_) s.push_back(static_cast<int>(p.size()));
  return s;
}

// ---------------------------------------------------------------- Instance

Instance::Instance(std::vector<BoxId> key_box, std::optional<Rows> rows)
    : key_box_(std::move(key_box)), rows_(std::move(rows)) {
  const auto n = key_box_.size();
  if (n == 0) throw std::invalid_argument("Instance: need at least one box");
  if (rows_ && rows_->box_count() != n) throw std::invalid_argument("Instance: rows do not match box count");
  content_begin_.assign(n + 1, 0);
  bool any_retained = false;
  for (const BoxId b : key_box_) {
    if (b == kRetained) {
      any_retained = true;
      continue;
    }
    if (b < 0 || static_cast<std::size_t>(b) >= n) throw std::invalid_argument("Instance: box id out of range");
    ++content_begin_[static_cast<std::size_t>(b) + 1];
  }
  if (!any_retained) throw std::invalid_argument("Instance: at least one key must be retained");
  std::partial_sum(content_begin_.begin(), content_begin_.end(), content_begin_.begin());
  content_keys_.resize(content_begin_[n]);
  auto fill = content_begin_;
  for (std::size_t k = 0; k < n; ++k) {
    if (key_box_[k] == kRetained) continue;
    content_keys_[fill[static_cast<std::size_t>(key_box_[k])]++] = static_cast<KeyId>(k);
  }
}

Instance Instance::make(int box_count, std::span<const KeyId> retained,
                        std::span<const std::pair<KeyId, BoxId>> placement, std::optional<Rows> rows) {
  if (box_count <= 0) throw std::invalid_argument("Instance: box count must be positive");
  constexpr BoxId kUnset = -2;
  std::vector<BoxId> key_box(static_cast<std::size_t>(box_count), kUnset);
  auto slot = [&](KeyId k) -> BoxId& {
    if (k < 0 || k >= box_count) throw std::invalid_argument("Instance: key id out of range");
    auto& s = key_box[static_cast<std::size_t>(k)];
    if (s != kUnset) throw std::invalid_argument("Instance: key listed twice");
    return s;
  };
  for (const KeyId k : retained) slot(k) = kRetained;
  for (const auto& [k, b] : placement) slot(k) = b;
  if (std::find(key_box.begin(), key_box.end(), kUnset) != key_box.end()) {
    throw std::invalid_argument("Instance: every key must be retained or placed");
  }
  return Instance(std::move(key_box), std::move(rows));
}

std::vector<KeyId> Instance::retained() const {
  std::vector<KeyId> r;
  for (std::size_t k = 0; k < key_box_.size(); ++k) {
    if (key_box_[k] == kRetained) r.push_back(static_cast<KeyId>(k));
  }
  return r;
}

std::span<const KeyId> Instance::contents(BoxId box) const {
  const auto b = static_cast<std::size_t>(box);
  if (box < 0 || b >= key_box_.size()) throw std::out_of_range("Instance::contents: box id out of range");
  return {content_keys_.data() + content_begin_[b], content_begin_[b + 1] - content_begin_[b]};
}

// ---------------------------------------------------------------- GameState

GameState::GameState(const Instance& instance)
    : opened_(instance.box_count(), 0),
      have_key_(instance.box_count(), 0),
      row_of_(instance.box_count()),
      hidden_(instance.row_count(), 0),
      locked_(instance.row_count(), 0) {
  for (std::size_t b = 0; b < instance.box_count(); ++b) {
    row_of_[b] = instance.row_of(static_cast<BoxId>(b));
    ++locked_[row_of_[b]];
    if (instance.is_retained(static_cast<KeyId>(b))) {
      have_key_[b] = 1;
    } else {
      ++hidden_[row_of_[b]];
    }
  }
}

std::size_t GameState::hidden() const { return std::accumulate(hidden_.begin(), hidden_.end(), std::size_t{0}); }

std::size_t GameState::locked() const { return std::accumulate(locked_.begin(), locked_.end(), std::size_t{0}); }

std::vector<BoxId> GameState::openable() const {
  std::vector<BoxId> out;
  for (std::size_t b = 0; b < opened_.size(); ++b) {
    if (have_key_[b] && !opened_[b]) out.push_back(static_cast<BoxId>(b));
  }
  return out;
}

std::vector<KeyId> GameState::open(const Instance& instance, BoxId box) {
  if (box < 0 || static_cast<std::size_t>(box) >= opened_.size() || !holds(box)) {
    throw OrderViolation("box " + std::to_string(box) + " cannot be opened: its key is not in hand");
  }
  const auto b = static_cast<std::size_t>(box);
  opened_[b] = 1;
  --locked_[row_of_[b]];
  const auto keys = instance.contents(box);
  for (const KeyId k : keys) {
    have_key_[static_cast<std::size_t>(k)] = 1;
    --hidden_[row_of_[static_cast<std::size_t>(k)]];
  }
  return {keys.begin(), keys.end()};
}

std::vector<std::pair<BoxId, std::vector<KeyId>>> GameState::open_round(const Instance& instance) {
  std::vector<std::pair<BoxId, std::vector<KeyId>>> seen;
  for (const BoxId b : openable()) seen.emplace_back(b, open(instance, b));
  return seen;
}

// ---------------------------------------------------------------- ratios

ExactProb hidden_ratio(const GameState& state, std::size_t row) {
  const std::size_t den = state.row_count() == 1 ? state.locked() : state.locked() - state.locked(row);
  if (den == 0) throw DegenerateState("hidden ratio of row " + std::to_string(row) + " has no locked boxes");
  return ExactProb(state.hidden(row), den);
}

ExactProb held_ratio(const GameState& state, std::size_t row) {
  const std::size_t den = state.locked(row);
  if (den == 0) throw DegenerateState("held ratio of row " + std::to_string(row) + " has no locked boxes");
  return ExactProb(state.held(row), den);
}

Ratios ratios(const GameState& state) {
  Ratios r;
  for (std::size_t i = 0; i < state.row_count(); ++i) {
    r.hidden.push_back(hidden_ratio(state, i));
    r.held.push_back(held_ratio(state, i));
  }
  return r;
}

namespace {

RatioSnapshot snapshot(const GameState& state) {
  RatioSnapshot s;
  for (std::size_t i = 0; i < state.row_count(); ++i) {
    try {
      s.hidden.emplace_back(hidden_ratio(state, i));
    } catch (const DegenerateState&) {
      s.hidden.emplace_back(std::nullopt);
    }
    try {
      s.held.emplace_back(held_ratio(state, i));
    } catch (const DegenerateState&) {
      s.held.emplace_back(std::nullopt);
    }
  }
  return s;
}

}  // namespace

std::vector<BoxId> Trace::order() const {
  std::vector<BoxId> out;
  for (const auto& s : steps) out.insert(out.end(), s.opened.begin(), s.opened.end());
  return out;
}

Trace play(const Instance& instance, PlayMode mode, const OrderPolicy& policy) {
  GameState state(instance);
  Trace trace;
  trace.initial = snapshot(state);

  std::size_t given_pos = 0;
  std::mt19937_64 rng(std::holds_alternative<RngChoice>(policy) ? std::get<RngChoice>(policy).seed : 0);

  while (!state.stuck()) {
    TraceStep step;
    if (mode == PlayMode::Rounds) {
      for (auto& [box, keys] : state.open_round(instance)) {
        step.opened.push_back(box);
        step.keys_found.insert(step.keys_found.end(), keys.begin(), keys.end());
      }
    } else {
      const auto options = state.openable();
      BoxId box = options.front();
      if (const auto* given = std::get_if<GivenSequence>(&policy); given && given_pos < given->order.size()) {
        box = given->order[given_pos++];
        if (!state.holds(box)) {
          throw OrderViolation("given sequence names box " + std::to_string(box) + " at step " +
                               std::to_string(given_pos - 1) + " but its key is not in hand");
        }
      } else if (std::holds_alternative<RngChoice>(policy)) {
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        box = options[pick(rng)];
      }
      step.opened.push_back(box);
      step.keys_found = state.open(instance, box);
    }
    std::sort(step.keys_found.begin(), step.keys_found.end());
    step.after = snapshot(state);
    trace.steps.push_back(std::move(step));
  }
  trace.won = state.locked() == 0;
  return trace;
}

// ---------------------------------------------------------------- criteria

bool wins(const Instance& instance) {
  const auto n = instance.box_count();
  std::vector<char> reached(n, 0);
  std::vector<BoxId> stack = instance.retained();
  for (const BoxId b : stack) reached[static_cast<std::size_t>(b)] = 1;
  std::size_t count = stack.size();
  while (!stack.empty()) {
    const BoxId b = stack.back();
    stack.pop_back();
    for (const KeyId k : instance.contents(b)) {
      if (!reached[static_cast<std::size_t>(k)]) {
        reached[static_cast<std::size_t>(k)] = 1;
        ++count;
        stack.push_back(k);
      }
    }
  }
  return count == n;
}

bool is_spanning_forest(const Instance& instance) {
  // 0 = unvisited, 1 = on the current parent chain, 2 = reaches a root.
  const auto n = instance.box_count();
  std::vector<char> mark(n, 0);
  std::vector<BoxId> chain;
  for (std::size_t start = 0; start < n; ++start) {
    BoxId v = static_cast<BoxId>(start);
    chain.clear();
    while (mark[static_cast<std::size_t>(v)] == 0) {
      mark[static_cast<std::size_t>(v)] = 1;
      chain.push_back(v);
      const BoxId parent = instance.box_of(v);
      if (parent == Instance::kRetained) {
        mark[static_cast<std::size_t>(v)] = 2;
        break;
      }
      v = parent;
    }
    if (mark[static_cast<std::size_t>(v)] == 1) return false;  // cycle
    for (const BoxId c : chain) mark[static_cast<std::size_t>(c)] = 2;
  }
  return true;
}

bool is_rooted_tree(const Instance& instance) {
  if (instance.retained().size() != 1) {
    throw std::invalid_argument("is_rooted_tree: exactly one key must be retained");
  }
  return is_spanning_forest(instance);
}

namespace {

void walk_rounds(std::span<const Instance> ensemble, const GameState& state, const std::vector<std::size_t>& members,
                 const std::function<void(const GameState&, std::span<const std::size_t>,
                                          std::span<const GameState>)>& visit) {
  if (state.stuck()) {
    visit(state, members, {});
    return;
  }
  std::vector<GameState> next;
  next.reserve(members.size());
  std::map<std::vector<KeyId>, std::vector<std::size_t>> children;
  for (std::size_t i = 0; i < members.size(); ++i) {
    next.push_back(state);
    std::vector<KeyId> observation;
    for (const auto& [box, keys] : next.back().open_round(ensemble[members[i]])) {
      observation.push_back(-1 - box);
      observation.insert(observation.end(), keys.begin(), keys.end());
    }
    children[std::move(observation)].push_back(i);
  }
  visit(state, members, next);
  for (const auto& [observation, local] : children) {
    std::vector<std::size_t> child_members;
    child_members.reserve(local.size());
    for (const std::size_t i : local) child_members.push_back(members[i]);
    walk_rounds(ensemble, next[local.front()], child_members, visit);
  }
}

}  // namespace

void walk_round_histories(
    std::span<const Instance> ensemble,
    const std::function<void(const GameState&, std::span<const std::size_t>, std::span<const GameState>)>& visit) {
  if (ensemble.empty()) return;
  for (const auto& inst : ensemble) {
    if (inst.retained() != ensemble.front().retained() || inst.rows() != ensemble.front().rows()) {
      throw std::invalid_argument("walk_round_histories: ensemble members must share retained keys and rows");
    }
  }
  std::vector<std::size_t> all(ensemble.size());
  std::iota(all.begin(), all.end(), 0);
  walk_rounds(ensemble, GameState(ensemble.front()), all, visit);
}

bool solvent(const Instance& instance, std::span<const BoxId> order) {
  const auto n = instance.box_count();
  if (order.size() != n) throw std::invalid_argument("solvent: order must list every box once");
  std::vector<char> seen(n, 0);
  for (const BoxId b : order) {
    if (b < 0 || static_cast<std::size_t>(b) >= n || seen[static_cast<std::size_t>(b)]) {
      throw std::invalid_argument("solvent: order is not a permutation of the boxes");
    }
    seen[static_cast<std::size_t>(b)] = 1;
  }
  std::size_t keys = instance.retained().size();
  for (std::size_t k = 1; k < n; ++k) {
    keys += instance.contents(order[k - 1]).size();
    if (keys < k + 1) return false;
  }
  return true;
}

}  // namespace padlock
