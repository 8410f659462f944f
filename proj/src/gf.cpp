#include "padlock/gf.hpp"

#include <stdexcept>
#include <string>

#include "padlock/formulas.hpp"

namespace padlock::gf {

PrimeField::PrimeField(int p) : p_(p) {
  if (p < 2 || p > 13 || !formulas::is_prime(p)) {
    throw std::invalid_argument("PrimeField: order must be a prime between 2 and 13, got " + std::to_string(p));
  }
}

FMatrix::FMatrix(PrimeField field, int rows, int cols, std::vector<int> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("FMatrix: dimensions must be positive");
  if (entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::invalid_argument("FMatrix: entry count does not match shape");
  }
  for (int& e : entries_) e = field_.reduce(e);
}

FMatrix FMatrix::zero(PrimeField field, int rows, int cols) {
  return FMatrix(field, rows, cols, std::vector<int>(static_cast<std::size_t>(rows * cols), 0));
}

FMatrix FMatrix::identity(PrimeField field, int n) {
  std::vector<int> e(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = 1;
  return FMatrix(field, n, n, std::move(e));
}

FMatrix FMatrix::from_index(PrimeField field, int rows, int cols, std::uint64_t index) {
  std::vector<int> e(static_cast<std::size_t>(rows * cols));
  const auto q = static_cast<std::uint64_t>(field.order());
  for (auto& x : e) {
    x = static_cast<int>(index % q);
    index /= q;
  }
  return FMatrix(field, rows, cols, std::move(e));
}

bool FMatrix::is_zero() const {
  for (const int e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

FMatrix mat_mul(const FMatrix& a, const FMatrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("mat_mul: matrices over different fields");
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  const auto& f = a.field();
  std::vector<int> out(static_cast<std::size_t>(a.rows() * b.cols()), 0);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      long long acc = 0;
      for (int k = 0; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
      out[static_cast<std::size_t>(i * b.cols() + j)] = f.reduce(acc);
    }
  }
  return FMatrix(f, a.rows(), b.cols(), std::move(out));
}

bool is_nilpotent(const FMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("is_nilpotent: matrix is not square");
  FMatrix power = a;
  for (int i = 1; i < a.rows() && !power.is_zero(); ++i) power = mat_mul(power, a);
  return power.is_zero();
}

std::uint64_t encode(std::span<const int> vector, int q) {
  std::uint64_t index = 0;
  for (auto it = vector.rbegin(); it != vector.rend(); ++it) index = index * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(*it);
  return index;
}

std::vector<int> decode(std::uint64_t index, int q, int dim) {
  std::vector<int> v(static_cast<std::size_t>(dim));
  for (auto& x : v) {
    x = static_cast<int>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  return v;
}

std::uint64_t apply(const FMatrix& a, std::uint64_t index) {
  const int q = a.field().order();
  const auto v = decode(index, q, a.cols());
  std::vector<int> image(static_cast<std::size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i) {
    long long acc = 0;
    for (int j = 0; j < a.cols(); ++j) acc += a.at(i, j) * v[static_cast<std::size_t>(j)];
    image[static_cast<std::size_t>(i)] = a.field().reduce(acc);
  }
  return encode(image, q);
}

namespace {

std::uint64_t space_points(int q, int dim, std::uint64_t budget, const char* what) {
  return checked_size(ipow(Count(q), static_cast<unsigned>(dim)), budget, what);
}

// Each hidden key must be equally often in every unopened box outside its row.
bool hidden_keys_uniform(std::span<const Instance> ensemble) {
  bool ok = true;
  walk_round_histories(ensemble, [&](const GameState& state, std::span<const std::size_t> members,
                                     std::span<const GameState>) {
    if (!ok) return;
    const auto& first = ensemble[members.front()];
    const auto n = first.box_count();
    std::vector<std::uint64_t> freq(n);
    for (std::size_t key = 0; key < n; ++key) {
      if (state.has_key(static_cast<KeyId>(key))) continue;
      std::fill(freq.begin(), freq.end(), 0);
      for (const std::size_t m : members) ++freq[static_cast<std::size_t>(ensemble[m].box_of(static_cast<KeyId>(key)))];
      std::uint64_t expected = 0;
      bool have_expected = false;
      for (std::size_t box = 0; box < n; ++box) {
        if (state.is_open(static_cast<BoxId>(box))) continue;
        if (first.row_of(static_cast<BoxId>(box)) == first.row_of(static_cast<BoxId>(key)) && first.row_count() > 1) {
          continue;
        }
        if (!have_expected) {
          expected = freq[box];
          have_expected = true;
        } else if (freq[box] != expected) {
          ok = false;
          return;
        }
      }
    }
  });
  return ok;
}

}  // namespace

Instance linear_placement(const FMatrix& a, std::uint64_t budget) {
  if (a.rows() != a.cols()) throw std::invalid_argument("linear_placement: matrix is not square");
  const auto boxes = space_points(a.field().order(), a.rows(), budget, "linear_placement");
  std::vector<BoxId> key_box(boxes);
  key_box[0] = Instance::kRetained;
  for (std::uint64_t v = 1; v < boxes; ++v) key_box[v] = static_cast<BoxId>(apply(a, v));
  return Instance(std::move(key_box));
}

Instance bipartite_linear_placement(const FMatrix& a, const FMatrix& b, std::uint64_t budget) {
  if (!(a.field() == b.field())) throw std::invalid_argument("bipartite_linear_placement: different fields");
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw std::invalid_argument("bipartite_linear_placement: need A m x n and B n x m");
  }
  const int q = a.field().order();
  const auto first = space_points(q, a.rows(), budget, "bipartite_linear_placement");
  const auto second = space_points(q, a.cols(), budget, "bipartite_linear_placement");
  checked_size(Count(first) + second, budget, "bipartite_linear_placement");
  std::vector<BoxId> key_box(first + second);
  key_box[0] = Instance::kRetained;
  key_box[first] = Instance::kRetained;
  for (std::uint64_t v = 1; v < first; ++v) key_box[v] = static_cast<BoxId>(first + apply(b, v));
  for (std::uint64_t w = 1; w < second; ++w) key_box[first + w] = static_cast<BoxId>(apply(a, w));
  return Instance(std::move(key_box), Rows::from_sizes(std::vector<int>{static_cast<int>(first), static_cast<int>(second)}));
}

Count brute_nilpotent_count(int q, int n, std::uint64_t budget) {
  const PrimeField f(q);
  if (n < 1) throw std::invalid_argument("brute_nilpotent_count: n must be positive");
  const auto total = space_points(q, n * n, budget, "brute_nilpotent_count");
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < total; ++i) count += is_nilpotent(FMatrix::from_index(f, n, n, i)) ? 1 : 0;
  return count;
}

ExactProb brute_product_nilpotent_probability(int q, int m, int n, std::uint64_t budget) {
  const PrimeField f(q);
  if (m < 1 || n < 1) throw std::invalid_argument("brute_product_nilpotent_probability: sizes must be positive");
  const auto per_matrix = space_points(q, m * n, budget, "brute_product_nilpotent_probability");
  checked_size(Count(per_matrix) * per_matrix, budget, "brute_product_nilpotent_probability");
  std::uint64_t good = 0;
  for (std::uint64_t i = 0; i < per_matrix; ++i) {
    const auto a = FMatrix::from_index(f, m, n, i);
    for (std::uint64_t j = 0; j < per_matrix; ++j) {
      good += is_nilpotent(mat_mul(a, FMatrix::from_index(f, n, m, j))) ? 1 : 0;
    }
  }
  return make_prob(good, Count(per_matrix) * per_matrix);
}

bool round_uniformity_check(int q, int n, std::uint64_t budget) {
  const PrimeField f(q);
  if (n < 1) throw std::invalid_argument("round_uniformity_check: n must be positive");
  const auto total = space_points(q, n * n, budget, "round_uniformity_check");
  std::vector<Instance> ensemble;
  ensemble.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) ensemble.push_back(linear_placement(FMatrix::from_index(f, n, n, i), budget));
  return hidden_keys_uniform(ensemble);
}

bool bipartite_round_uniformity_check(int q, int m, int n, std::uint64_t budget) {
  const PrimeField f(q);
  if (m < 1 || n < 1) throw std::invalid_argument("bipartite_round_uniformity_check: sizes must be positive");
  const auto per_matrix = space_points(q, m * n, budget, "bipartite_round_uniformity_check");
  checked_size(Count(per_matrix) * per_matrix, budget, "bipartite_round_uniformity_check");
  std::vector<Instance> ensemble;
  for (std::uint64_t i = 0; i < per_matrix; ++i) {
    const auto a = FMatrix::from_index(f, m, n, i);
    for (std::uint64_t j = 0; j < per_matrix; ++j) {
      ensemble.push_back(bipartite_linear_placement(a, FMatrix::from_index(f, n, m, j), budget));
    }
  }
  return hidden_keys_uniform(ensemble);
}

}  // namespace padlock::gf
