#include "padlock/formulas.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace padlock::formulas {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_prime(int q) {
  if (!is_prime(q)) throw std::invalid_argument("field order " + std::to_string(q) + " is not prime");
}

int total(std::span<const int> parts) { return std::accumulate(parts.begin(), parts.end(), 0); }

void require_parts(std::span<const int> parts) {
  require(parts.size() >= 2, "need at least two parts");
  for (const int p : parts) require(p >= 1, "part sizes must be positive");
}

}  // namespace

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

Count cayley(int n) {
  require(n >= 1, "cayley: n must be positive");
  return n <= 2 ? Count(1) : ipow(Count(n), static_cast<unsigned>(n - 2));
}

Count forest_count(int n, int k) {
  require(k >= 1 && k <= n, "forest_count: need 1 <= k <= n");
  if (k == n) return 1;
  return Count(k) * ipow(Count(n), static_cast<unsigned>(n - k - 1));
}

Count parking_count(int n) {
  require(n >= 2, "parking_count: n must be at least 2");
  return ipow(Count(n), static_cast<unsigned>(n - 2));
}

Count hypergraph_count(int n) {
  require(n >= 1, "hypergraph_count: n must be positive");
  return double_factorial_odd(static_cast<unsigned>(n)) * ipow(Count(2 * n + 1), static_cast<unsigned>(n - 1));
}

Count degree_tree_count(std::span<const int> degrees) {
  const auto n = static_cast<int>(degrees.size());
  require(n >= 2, "degree_tree_count: need at least two vertices");
  int sum = 0;
  for (const int d : degrees) {
    require(d >= 1, "degree_tree_count: degrees must be positive");
    sum += d;
  }
  require(sum == 2 * (n - 1), "degree_tree_count: degrees must sum to 2(n-1)");
  Count r = factorial(static_cast<unsigned>(n - 2));
  for (const int d : degrees) r /= factorial(static_cast<unsigned>(d - 1));
  return r;
}

Count catalan(int n) {
  require(n >= 0, "catalan: n must be nonnegative");
  const auto u = static_cast<unsigned>(n);
  return factorial(2 * u) / (factorial(u) * factorial(u + 1));
}

Count catalan_central(int n) {
  require(n >= 0, "catalan: n must be nonnegative");
  const auto u = static_cast<unsigned>(n);
  return binomial(2 * u, u) / (u + 1);
}

Count catalan_odd(int n) {
  require(n >= 0, "catalan: n must be nonnegative");
  const auto u = static_cast<unsigned>(n);
  return binomial(2 * u + 1, u) / (2 * u + 1);
}

Count bipartite_count(int m, int n) {
  require(m >= 1 && n >= 1, "bipartite_count: sizes must be positive");
  return ipow(Count(m), static_cast<unsigned>(n - 1)) * ipow(Count(n), static_cast<unsigned>(m - 1));
}

Count multipartite_count(std::span<const int> parts) {
  require_parts(parts);
  const int n = total(parts);
  Count r = ipow(Count(n), static_cast<unsigned>(parts.size() - 2));
  for (const int p : parts) r *= ipow(Count(n - p), static_cast<unsigned>(p - 1));
  return r;
}

Count multipartite_placements(std::span<const int> parts) {
  require_parts(parts);
  const int n = total(parts);
  Count r = ipow(Count(n - parts[0]), static_cast<unsigned>(parts[0] - 1));
  for (std::size_t i = 1; i < parts.size(); ++i) r *= ipow(Count(n - parts[i]), static_cast<unsigned>(parts[i]));
  return r;
}

ExactProb start_probability_multipartite(std::span<const int> parts) {
  require_parts(parts);
  const int n = total(parts);
  Count den = 1;
  for (std::size_t i = 1; i < parts.size(); ++i) den *= n - parts[i];
  return ExactProb(ipow(Count(n), static_cast<unsigned>(parts.size() - 2)), den);
}

ExactProb fk(std::span<const ExactProb> x) {
  require(!x.empty(), "fk: need at least one coordinate");
  ExactProb product = 1;
  ExactProb bracket = 1;
  for (const auto& xi : x) {
    require(xi != -1, "fk: coordinate equal to -1");
    product *= 1 + xi;
    bracket -= xi / (1 + xi);
  }
  return product * bracket;
}

ExactProb determinant(std::vector<ExactProb> a, std::size_t dim) {
  require(a.size() == dim * dim, "determinant: matrix is not square");
  ExactProb det = 1;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    while (pivot < dim && a[pivot * dim + col] == 0) ++pivot;
    if (pivot == dim) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < dim; ++j) std::swap(a[pivot * dim + j], a[col * dim + j]);
      det = -det;
    }
    const ExactProb p = a[col * dim + col];
    det *= p;
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (a[r * dim + col] == 0) continue;
      const ExactProb factor = a[r * dim + col] / p;
      for (std::size_t j = col; j < dim; ++j) a[r * dim + j] -= factor * a[col * dim + j];
    }
  }
  return det;
}

// Unit diagonal, -X_i off the diagonal of row i. Putting 1 - X_i on the
// diagonal instead gives 1 - sum X_i, which differs from fk once k >= 2.
ExactProb fk_det(std::span<const ExactProb> x) {
  require(!x.empty(), "fk_det: need at least one coordinate");
  const auto k = x.size();
  std::vector<ExactProb> m(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i * k + j] = i == j ? ExactProb(1) : ExactProb(-x[i]);
  }
  return determinant(std::move(m), k);
}

Count nilpotent_count(int q, int n) {
  require_prime(q);
  require(n >= 1, "nilpotent_count: n must be positive");
  return ipow(Count(q), static_cast<unsigned>(n * (n - 1)));
}

ExactProb nilpotent_product_probability(int q, int m, int n) {
  require_prime(q);
  require(m >= 1 && n >= 1, "nilpotent_product_probability: sizes must be positive");
  const Count qm = ipow(Count(q), static_cast<unsigned>(m));
  const Count qn = ipow(Count(q), static_cast<unsigned>(n));
  return ExactProb(1, qm) + ExactProb(1, qn) - ExactProb(1, qm * qn);
}

}  // namespace padlock::formulas
