#include "padlock/schemes.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "padlock/parallel.hpp"

namespace padlock {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void validate_parts(const std::vector<int>& parts, const char* name) {
  require(parts.size() >= 2, std::string(name) + ": need at least two rows");
  for (const int p : parts) require(p >= 1, std::string(name) + ": row sizes must be positive");
}

Count common_denominator(const std::vector<ExactProb>& weights) {
  Count d = 1;
  for (const auto& w : weights) d = boost::multiprecision::lcm(d, Count(denominator(w)));
  return d;
}

// Per-key-group digit: every key of `keys` goes to allowed[digit].
struct Group {
  std::vector<KeyId> keys;
  std::vector<BoxId> allowed;
};

std::vector<BoxId> boxes_outside(const Rows& rows, std::size_t row) {
  std::vector<BoxId> out;
  for (std::size_t b = 0; b < rows.box_count(); ++b) {
    if (rows.row_of(static_cast<BoxId>(b)) != row) out.push_back(static_cast<BoxId>(b));
  }
  return out;
}

// Multiset-permutation count for the given remaining slot counts.
std::uint64_t multinomial(const std::vector<int>& counts) {
  std::uint64_t result = 1;
  std::uint64_t total = 0;
  for (const int c : counts) {
    for (int i = 1; i <= c; ++i) {
      ++total;
      result = static_cast<std::uint64_t>(static_cast<unsigned __int128>(result) * total / static_cast<unsigned>(i));
    }
  }
  return result;
}

}  // namespace

void validate(const SchemeSpec& spec) {
  std::visit(Overloaded{
                 [](const UniformIID& s) {
                   require(s.n >= 1, "UniformIID: n must be positive");
                   require(s.retained >= 1 && s.retained <= s.n, "UniformIID: need 1 <= retained <= n");
                 },
                 [](const WeightedIID& s) {
                   require(!s.weights.empty(), "WeightedIID: need at least one box");
                   ExactProb sum = 0;
                   for (const auto& w : s.weights) {
                     require(w >= 0, "WeightedIID: weights must be nonnegative");
                     sum += w;
                   }
                   require(sum == 1, "WeightedIID: weights must sum to 1");
                   require(s.retained >= 1 && s.retained <= static_cast<int>(s.weights.size()),
                           "WeightedIID: need 1 <= retained <= n");
                 },
                 [](const Permutation& s) {
                   require(s.n >= 1, "Permutation: n must be positive");
                   require(!s.retained.empty(), "Permutation: retained set must be nonempty");
                   std::vector<char> seen(static_cast<std::size_t>(s.n), 0);
                   for (const KeyId k : s.retained) {
                     require(k >= 0 && k < s.n, "Permutation: retained key out of range");
                     require(!seen[static_cast<std::size_t>(k)], "Permutation: retained key repeated");
                     seen[static_cast<std::size_t>(k)] = 1;
                   }
                 },
                 [](const OddPermutation3&) {},
                 [](const PairedTriples& s) { require(s.pairs >= 1, "PairedTriples: need at least one pair"); },
                 [](const DegreeConditioned& s) {
                   const auto n = static_cast<int>(s.degrees.size());
                   require(n >= 2, "DegreeConditioned: need at least two vertices");
                   int sum = 0;
                   for (const int d : s.degrees) {
                     require(d >= 1, "DegreeConditioned: degrees must be positive");
                     sum += d;
                   }
                   require(sum == 2 * (n - 1), "DegreeConditioned: degrees must sum to 2(n-1)");
                 },
                 [](const Bipartite& s) { require(s.m >= 1 && s.n >= 1, "Bipartite: row sizes must be positive"); },
                 [](const Multipartite& s) { validate_parts(s.parts, "Multipartite"); },
                 [](const KeyRing& s) { validate_parts(s.parts, "KeyRing"); },
             },
             spec);
}

std::string scheme_name(const SchemeSpec& spec) {
  return std::visit(Overloaded{
                        [](const UniformIID&) { return std::string("uniform"); },
                        [](const WeightedIID&) { return std::string("weighted"); },
                        [](const Permutation&) { return std::string("permutation"); },
                        [](const OddPermutation3&) { return std::string("odd-perm3"); },
                        [](const PairedTriples&) { return std::string("paired-triples"); },
                        [](const DegreeConditioned&) { return std::string("degree"); },
                        [](const Bipartite&) { return std::string("bipartite"); },
                        [](const Multipartite&) { return std::string("multipartite"); },
                        [](const KeyRing&) { return std::string("keyring"); },
                    },
                    spec);
}

std::size_t box_count(const SchemeSpec& spec) {
  auto sum = [](const std::vector<int>& v) { return static_cast<std::size_t>(std::accumulate(v.begin(), v.end(), 0)); };
  return std::visit(Overloaded{
                        [](const UniformIID& s) { return static_cast<std::size_t>(s.n); },
                        [](const WeightedIID& s) { return s.weights.size(); },
                        [](const Permutation& s) { return static_cast<std::size_t>(s.n); },
                        [](const OddPermutation3&) { return std::size_t{3}; },
                        [](const PairedTriples& s) { return static_cast<std::size_t>(2 * s.pairs + 1); },
                        [](const DegreeConditioned& s) { return s.degrees.size(); },
                        [](const Bipartite& s) { return static_cast<std::size_t>(s.m + s.n); },
                        [&](const Multipartite& s) { return sum(s.parts); },
                        [&](const KeyRing& s) { return sum(s.parts); },
                    },
                    spec);
}

bool is_multi_row(const SchemeSpec& spec) {
  return std::holds_alternative<Bipartite>(spec) || std::holds_alternative<Multipartite>(spec) ||
         std::holds_alternative<KeyRing>(spec);
}

std::vector<Count> box_weights(const SchemeSpec& spec) {
  validate(spec);
  if (const auto* w = std::get_if<WeightedIID>(&spec)) {
    const Count d = common_denominator(w->weights);
    std::vector<Count> out;
    for (const auto& p : w->weights) out.push_back(Count(numerator(p)) * (d / Count(denominator(p))));
    return out;
  }
  if (const auto* d = std::get_if<DegreeConditioned>(&spec)) {
    std::vector<Count> out;
    for (std::size_t i = 0; i < d->degrees.size(); ++i) out.emplace_back(d->degrees[i] - (i == 0 ? 0 : 1));
    return out;
  }
  return std::vector<Count>(box_count(spec), Count(1));
}

// ---------------------------------------------------------------- OutcomeSpace

struct OutcomeSpace::Impl {
  enum class Kind { Groups, Injection, Table, Pairing, Multiset };

  SchemeSpec spec;
  Kind kind = Kind::Groups;
  std::size_t n = 0;
  std::optional<Rows> rows;
  std::vector<KeyId> retained;
  Count size;
  Count total_weight;
  bool equiprobable = true;

  // Groups: one digit per group, little-endian.
  std::vector<Group> groups;
  std::vector<std::uint64_t> slot_weight;  // per box, WeightedIID only
  // Injection: placed keys ascending, digit t chooses among unused boxes.
  std::vector<KeyId> placed;
  // Table: explicit list of key_box vectors.
  std::vector<std::vector<BoxId>> table;
  // Pairing: matching index (high part) times box digits (low part).
  std::uint64_t pair_box_space = 0;
  // Multiset: slot count per box.
  std::vector<int> slots;

  std::vector<BoxId> blank() const {
    std::vector<BoxId> kb(n, 0);
    for (const KeyId k : retained) kb[static_cast<std::size_t>(k)] = Instance::kRetained;
    return kb;
  }

  Instance make(std::vector<BoxId> kb) const { return Instance(std::move(kb), rows); }

  void add_groups_size() {
    size = 1;
    for (const auto& g : groups) size *= g.allowed.size();
  }

  std::uint64_t checked_index(std::uint64_t index) const {
    if (index >= size) throw std::out_of_range("outcome index out of range");
    return index;
  }

  Instance at(std::uint64_t index) const {
    checked_index(index);
    auto kb = blank();
    switch (kind) {
      case Kind::Groups:
        for (const auto& g : groups) {
          const auto r = g.allowed.size();
          const BoxId box = g.allowed[index % r];
          index /= r;
          for (const KeyId k : g.keys) kb[static_cast<std::size_t>(k)] = box;
        }
        break;
      case Kind::Injection: {
        std::vector<BoxId> unused(n);
        std::iota(unused.begin(), unused.end(), 0);
        for (const KeyId k : placed) {
          const auto r = unused.size();
          const auto pick = static_cast<std::size_t>(index % r);
          index /= r;
          kb[static_cast<std::size_t>(k)] = unused[pick];
          unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        break;
      }
      case Kind::Table:
        kb = table[index];
        break;
      case Kind::Pairing: {
        if (pair_box_space == 0) throw TooLarge("PairedTriples: outcome space exceeds 64-bit indexing");
        std::uint64_t box_digits = index % pair_box_space;
        std::uint64_t matching = index / pair_box_space;
        // Matching digits are big-endian so that indices follow
        // lexicographic matching order.
        std::vector<std::uint64_t> digits;
        for (std::uint64_t r = 1; r < placed.size(); r += 2) {
          digits.push_back(matching % r);
          matching /= r;
        }
        std::reverse(digits.begin(), digits.end());
        std::vector<KeyId> remaining = placed;
        std::size_t d = 0;
        while (!remaining.empty()) {
          const KeyId first = remaining.front();
          remaining.erase(remaining.begin());
          const auto pick = static_cast<std::size_t>(digits[d++]);
          const KeyId partner = remaining[pick];
          remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
          const auto box = static_cast<BoxId>(box_digits % n);
          box_digits /= n;
          kb[static_cast<std::size_t>(first)] = box;
          kb[static_cast<std::size_t>(partner)] = box;
        }
        break;
      }
      case Kind::Multiset: {
        auto left = slots;
        for (const KeyId k : placed) {
          for (std::size_t b = 0; b < left.size(); ++b) {
            if (left[b] == 0) continue;
            --left[b];
            const std::uint64_t completions = multinomial(left);
            if (index < completions) {
              kb[static_cast<std::size_t>(k)] = static_cast<BoxId>(b);
              break;
            }
            index -= completions;
            ++left[b];
          }
        }
        break;
      }
    }
    return make(std::move(kb));
  }

  std::uint64_t multiplicity(std::uint64_t index) const {
    if (slot_weight.empty()) return 1;
    checked_index(index);
    std::uint64_t m = 1;
    for (const auto& g : groups) {
      const auto r = g.allowed.size();
      m *= slot_weight[static_cast<std::size_t>(g.allowed[index % r])];
      index /= r;
    }
    return m;
  }
};

OutcomeSpace::OutcomeSpace(const SchemeSpec& spec) : impl_(std::make_unique<Impl>()) {
  validate(spec);
  auto& s = *impl_;
  s.spec = spec;
  s.n = box_count(spec);

  auto iid_groups = [&](int retained) {
    for (int k = 0; k < retained; ++k) s.retained.push_back(k);
    std::vector<BoxId> all(s.n);
    std::iota(all.begin(), all.end(), 0);
    for (auto k = static_cast<std::size_t>(retained); k < s.n; ++k) s.groups.push_back({{static_cast<KeyId>(k)}, all});
    s.add_groups_size();
  };
  auto row_groups = [&](const std::vector<int>& parts, bool rings) {
    s.rows = Rows::from_sizes(parts);
    s.retained = {0};
    for (std::size_t r = 0; r < parts.size(); ++r) {
      const auto outside = boxes_outside(*s.rows, r);
      Group ring{{}, outside};
      for (const BoxId b : s.rows->boxes(r)) {
        if (b == 0) continue;
        if (rings) {
          ring.keys.push_back(b);
        } else {
          s.groups.push_back({{b}, outside});
        }
      }
      if (rings && !ring.keys.empty()) s.groups.push_back(std::move(ring));
    }
    s.add_groups_size();
  };

  std::visit(Overloaded{
                 [&](const UniformIID& u) { iid_groups(u.retained); },
                 [&](const WeightedIID& w) {
                   iid_groups(w.retained);
                   const auto weights = box_weights(spec);
                   const Count d = common_denominator(w.weights);
                   s.equiprobable = std::all_of(weights.begin(), weights.end(),
                                                [&](const Count& c) { return c == weights.front(); });
                   if (!s.equiprobable) {
                     for (const auto& c : weights) {
                       if (c > Count(std::numeric_limits<std::uint32_t>::max())) {
                         throw TooLarge("WeightedIID: weight denominator too large to refine");
                       }
                       s.slot_weight.push_back(c.convert_to<std::uint64_t>());
                     }
                   }
                   s.total_weight = s.equiprobable ? s.size : ipow(d, static_cast<unsigned>(s.groups.size()));
                 },
                 [&](const Permutation& p) {
                   s.kind = Impl::Kind::Injection;
                   s.retained = p.retained;
                   std::sort(s.retained.begin(), s.retained.end());
                   for (int k = 0; k < p.n; ++k) {
                     if (!std::binary_search(s.retained.begin(), s.retained.end(), k)) s.placed.push_back(k);
                   }
                   s.size = factorial(static_cast<unsigned>(p.n)) / factorial(static_cast<unsigned>(s.retained.size()));
                 },
                 [&](const OddPermutation3&) {
                   s.kind = Impl::Kind::Table;
                   s.retained = {0};
                   // Transpositions (0 1), (0 2), (1 2): key j sits in box sigma(j).
                   s.table = {{Instance::kRetained, 0, 2}, {Instance::kRetained, 1, 0}, {Instance::kRetained, 2, 1}};
                   s.size = 3;
                 },
                 [&](const PairedTriples& t) {
                   s.kind = Impl::Kind::Pairing;
                   s.retained = {0};
                   for (std::size_t k = 1; k < s.n; ++k) s.placed.push_back(static_cast<KeyId>(k));
                   const Count boxes = ipow(Count(s.n), static_cast<unsigned>(t.pairs));
                   s.size = double_factorial_odd(static_cast<unsigned>(t.pairs)) * boxes;
                   s.pair_box_space = boxes > Count(std::numeric_limits<std::uint64_t>::max())
                                          ? 0
                                          : boxes.convert_to<std::uint64_t>();
                 },
                 [&](const DegreeConditioned& d) {
                   s.kind = Impl::Kind::Multiset;
                   s.retained = {0};
                   for (std::size_t k = 1; k < s.n; ++k) s.placed.push_back(static_cast<KeyId>(k));
                   s.slots.push_back(d.degrees[0]);
                   for (std::size_t i = 1; i < d.degrees.size(); ++i) s.slots.push_back(d.degrees[i] - 1);
                   Count size = factorial(static_cast<unsigned>(s.n - 1));
                   for (const int c : s.slots) size /= factorial(static_cast<unsigned>(c));
                   s.size = size;
                 },
                 [&](const Bipartite& b) { row_groups({b.m, b.n}, false); },
                 [&](const Multipartite& m) { row_groups(m.parts, false); },
                 [&](const KeyRing& r) { row_groups(r.parts, true); },
             },
             spec);
  if (s.total_weight == 0) s.total_weight = s.size;
}

OutcomeSpace::~OutcomeSpace() = default;
OutcomeSpace::OutcomeSpace(OutcomeSpace&&) noexcept = default;
OutcomeSpace& OutcomeSpace::operator=(OutcomeSpace&&) noexcept = default;

const SchemeSpec& OutcomeSpace::spec() const { return impl_->spec; }
Count OutcomeSpace::size() const { return impl_->size; }
Count OutcomeSpace::total_weight() const { return impl_->total_weight; }
bool OutcomeSpace::equiprobable() const { return impl_->equiprobable; }
Instance OutcomeSpace::at(std::uint64_t index) const { return impl_->at(index); }
std::uint64_t OutcomeSpace::multiplicity(std::uint64_t index) const { return impl_->multiplicity(index); }

// ---------------------------------------------------------------- operations

Count space_size(const SchemeSpec& spec) {
  const OutcomeSpace space(spec);
  if (!space.equiprobable()) throw NotEquiprobable("space_size: WeightedIID with unequal weights");
  return space.size();
}

Instance placement_at(const SchemeSpec& spec, const Count& index) {
  const OutcomeSpace space(spec);
  if (!space.equiprobable()) throw NotEquiprobable("placement_at: WeightedIID with unequal weights");
  if (index < 0 || index >= space.size()) throw std::out_of_range("placement_at: index out of range");
  return space.at(index.convert_to<std::uint64_t>());
}

Instance sample(const SchemeSpec& spec, std::mt19937_64& rng) {
  validate(spec);
  const auto n = box_count(spec);
  auto uniform = [&rng](std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
  };
  auto iid = [&](int retained, auto&& draw) {
    std::vector<BoxId> kb(n);
    for (std::size_t k = 0; k < n; ++k) {
      kb[k] = static_cast<int>(k) < retained ? Instance::kRetained : draw();
    }
    return Instance(std::move(kb));
  };
  auto rows_sample = [&](const std::vector<int>& parts, bool rings) {
    Rows rows = Rows::from_sizes(parts);
    std::vector<BoxId> kb(n, Instance::kRetained);
    for (std::size_t r = 0; r < rows.count(); ++r) {
      const auto outside = boxes_outside(rows, r);
      BoxId ring_box = outside[uniform(outside.size())];
      for (const BoxId b : rows.boxes(r)) {
        if (b == 0) continue;
        kb[static_cast<std::size_t>(b)] = rings ? ring_box : outside[uniform(outside.size())];
      }
    }
    return Instance(std::move(kb), std::move(rows));
  };

  return std::visit(
      Overloaded{
          [&](const UniformIID& u) { return iid(u.retained, [&] { return static_cast<BoxId>(uniform(n)); }); },
          [&](const WeightedIID& w) {
            const auto weights = box_weights(spec);
            const Count d = common_denominator(w.weights);
            if (d > Count(std::numeric_limits<std::uint64_t>::max() / 2)) {
              throw TooLarge("WeightedIID: weight denominator too large to sample exactly");
            }
            std::vector<std::uint64_t> cumulative;
            std::uint64_t acc = 0;
            for (const auto& c : weights) cumulative.push_back(acc += c.convert_to<std::uint64_t>());
            std::uniform_int_distribution<std::uint64_t> slot(0, acc - 1);
            return iid(w.retained, [&] {
              const auto s = slot(rng);
              return static_cast<BoxId>(std::upper_bound(cumulative.begin(), cumulative.end(), s) - cumulative.begin());
            });
          },
          [&](const Permutation& p) {
            std::vector<BoxId> sigma(n);
            std::iota(sigma.begin(), sigma.end(), 0);
            std::shuffle(sigma.begin(), sigma.end(), rng);
            for (const KeyId k : p.retained) sigma[static_cast<std::size_t>(k)] = Instance::kRetained;
            return Instance(std::move(sigma));
          },
          [&](const OddPermutation3&) { return OutcomeSpace(spec).at(uniform(3)); },
          [&](const PairedTriples&) {
            std::vector<KeyId> keys(n - 1);
            std::iota(keys.begin(), keys.end(), 1);
            std::shuffle(keys.begin(), keys.end(), rng);
            std::vector<BoxId> kb(n, Instance::kRetained);
            for (std::size_t i = 0; i + 1 < keys.size(); i += 2) {
              const auto box = static_cast<BoxId>(uniform(n));
              kb[static_cast<std::size_t>(keys[i])] = box;
              kb[static_cast<std::size_t>(keys[i + 1])] = box;
            }
            return Instance(std::move(kb));
          },
          [&](const DegreeConditioned& d) {
            std::vector<BoxId> seq;
            for (std::size_t b = 0; b < n; ++b) {
              const int slots = d.degrees[b] - (b == 0 ? 0 : 1);
              seq.insert(seq.end(), static_cast<std::size_t>(slots), static_cast<BoxId>(b));
            }
            std::shuffle(seq.begin(), seq.end(), rng);
            seq.insert(seq.begin(), Instance::kRetained);
            return Instance(std::move(seq));
          },
          [&](const Bipartite& b) { return rows_sample({b.m, b.n}, false); },
          [&](const Multipartite& m) { return rows_sample(m.parts, false); },
          [&](const KeyRing& r) { return rows_sample(r.parts, true); },
      },
      spec);
}

WinTally exact_win_tally(const SchemeSpec& spec, const EnumOptions& options) {
  const OutcomeSpace space(spec);
  const auto size = checked_size(space.size(), options.budget, scheme_name(spec));
  if (space.total_weight() > Count(std::numeric_limits<std::uint64_t>::max())) {
    throw TooLarge("exact_win_tally: refined weight total exceeds 64 bits");
  }
  using Pair = std::pair<std::uint64_t, std::uint64_t>;
  const auto [win_weight, total_weight] = parallel_reduce(
      size, options.threads, Pair{0, 0},
      [&space](std::uint64_t begin, std::uint64_t end) {
        Pair acc{0, 0};
        for (auto i = begin; i < end; ++i) {
          const auto m = space.multiplicity(i);
          if (m == 0) continue;
          acc.second += m;
          if (wins(space.at(i))) acc.first += m;
        }
        return acc;
      },
      [](Pair a, Pair b) { return Pair{a.first + b.first, a.second + b.second}; });
  return {Count(win_weight), Count(total_weight)};
}

Count exact_win_count(const SchemeSpec& spec, const EnumOptions& options) {
  return exact_win_tally(spec, options).wins;
}

ExactProb exact_win_probability(const SchemeSpec& spec, const EnumOptions& options) {
  const auto t = exact_win_tally(spec, options);
  return make_prob(t.wins, t.total);
}

void for_each_outcome(const SchemeSpec& spec, std::uint64_t budget,
                      const std::function<void(const Instance&, std::uint64_t)>& visit) {
  const OutcomeSpace space(spec);
  const auto size = checked_size(space.size(), budget, scheme_name(spec));
  for (std::uint64_t i = 0; i < size; ++i) {
    const auto m = space.multiplicity(i);
    if (m != 0) visit(space.at(i), m);
  }
}

ExactProb cycle_cover_probability(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("cycle_cover_probability: need 1 <= k <= n");
  if (n > 8) throw TooLarge("cycle_cover_probability: n > 8");
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<char> seen(sigma.size());
  std::uint64_t good = 0;
  std::uint64_t total = 0;
  do {
    ++total;
    std::fill(seen.begin(), seen.end(), 0);
    bool ok = true;
    for (int start = 0; start < n && ok; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      bool marked = false;
      int v = start;
      while (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        marked = marked || v < k;
        v = sigma[static_cast<std::size_t>(v)];
      }
      ok = marked;
    }
    if (ok) ++good;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return make_prob(good, total);
}

bool keyring_equivalence_check(const std::vector<int>& parts, const EnumOptions& options) {
  validate_parts(parts, "keyring_equivalence_check");
  if (std::accumulate(parts.begin(), parts.end(), 0) > 7) {
    throw TooLarge("keyring_equivalence_check: more than 7 boxes");
  }
  return exact_win_probability(KeyRing{parts}, options) == exact_win_probability(Multipartite{parts}, options);
}

Count left_to_right_solvent_count(int n, const EnumOptions& options) {
  const SchemeSpec spec = UniformIID{n, 1};
  const OutcomeSpace space(spec);
  const auto size = checked_size(space.size(), options.budget, "left_to_right_solvent_count");
  std::vector<BoxId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto count = parallel_reduce(size, options.threads, std::uint64_t{0},
                                     [&](std::uint64_t begin, std::uint64_t end) {
                                       std::uint64_t c = 0;
                                       for (auto i = begin; i < end; ++i) c += solvent(space.at(i), order) ? 1 : 0;
                                       return c;
                                     });
  return count;
}

}  // namespace padlock
