#pragma once

#include <cstdint>
#include <vector>

#include "padlock/exact.hpp"
#include "padlock/game.hpp"

namespace padlock::gf {

/// Prime field F_p for 2 <= p <= 13.
class PrimeField {
 public:
  explicit PrimeField(int p);

  int order() const { return p_; }
  int add(int a, int b) const { return (a + b) % p_; }
  int mul(int a, int b) const { return (a * b) % p_; }
  int reduce(long long a) const { return static_cast<int>(((a % p_) + p_) % p_); }

  friend bool operator==(PrimeField, PrimeField) = default;

 private:
  int p_;
};

/// Dense row-major matrix over a prime field.
class FMatrix {
 public:
  FMatrix(PrimeField field, int rows, int cols, std::vector<int> entries);

  static FMatrix zero(PrimeField field, int rows, int cols);
  static FMatrix identity(PrimeField field, int n);
  /// The matrix whose row-major entries are the base-p digits of `index`,
  /// least significant first. Enumerates all p^(rows*cols) matrices.
  static FMatrix from_index(PrimeField field, int rows, int cols, std::uint64_t index);

  PrimeField field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int at(int r, int c) const { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
  const std::vector<int>& entries() const { return entries_; }
  bool is_zero() const;

  friend bool operator==(const FMatrix&, const FMatrix&) = default;

 private:
  PrimeField field_;
  int rows_;
  int cols_;
  std::vector<int> entries_;
};

FMatrix mat_mul(const FMatrix& a, const FMatrix& b);

/// a^rows == 0.
bool is_nilpotent(const FMatrix& a);

/// Box index of a vector: base-q digits, coordinate 0 least significant.
std::uint64_t encode(std::span<const int> vector, int q);
std::vector<int> decode(std::uint64_t index, int q, int dim);

/// Applies a to the vector encoded by `index` and returns the encoded image.
std::uint64_t apply(const FMatrix& a, std::uint64_t index);

/// q^n boxes, one per vector; key 0 kept, the key of box v lies in box A v.
Instance linear_placement(const FMatrix& a, std::uint64_t budget = kDefaultBudget);

/// Rows V_1 = F^m (boxes 0..q^m-1) and V_2 = F^n (the next q^n boxes); both
/// zero keys kept; the key of v in V_1 lies in box B v of V_2 and the key of
/// w in V_2 lies in box A w of V_1. a is m x n, b is n x m.
Instance bipartite_linear_placement(const FMatrix& a, const FMatrix& b, std::uint64_t budget = kDefaultBudget);

/// Nilpotent n x n matrices over F_q by exhaustion.
Count brute_nilpotent_count(int q, int n, std::uint64_t budget = kDefaultBudget);

/// Fraction of pairs (A m x n, B n x m) with AB nilpotent, by exhaustion.
ExactProb brute_product_nilpotent_probability(int q, int m, int n, std::uint64_t budget = kDefaultBudget);

/// Over the uniform n x n matrix ensemble played in rounds, after every
/// round and for every observable history, each hidden key is equally often
/// in each unopened box.
bool round_uniformity_check(int q, int n, std::uint64_t budget = kDefaultBudget);

/// The same uniformity for the two-space game of uniform (A, B) pairs, where
/// a hidden key must be equally often in each unopened box of the other space.
bool bipartite_round_uniformity_check(int q, int m, int n, std::uint64_t budget = kDefaultBudget);

}  // namespace padlock::gf
