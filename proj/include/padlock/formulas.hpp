#pragma once

#include <span>
#include <vector>

#include "padlock/exact.hpp"

namespace padlock::formulas {

/// Labeled trees on n vertices, n^(n-2); 1 for n = 1 and n = 2.
Count cayley(int n);

/// Rooted forests on n labeled vertices with k given roots, k n^(n-k-1).
Count forest_count(int n, int k);

/// Parking functions {1..n-1} -> {1..n-1}, which number n^(n-2).
Count parking_count(int n);

/// Spanning trees of 2n+1 vertices by n triangles: (2n-1)!! (2n+1)^(n-1).
Count hypergraph_count(int n);

/// Labeled trees with prescribed degrees: (n-2)! / prod (d_i - 1)!.
Count degree_tree_count(std::span<const int> degrees);

/// (2n)! / (n! (n+1)!).
Count catalan(int n);
/// binom(2n, n) / (n+1).
Count catalan_central(int n);
/// binom(2n+1, n) / (2n+1).
Count catalan_odd(int n);

/// Spanning trees of K_{m,n}: m^(n-1) n^(m-1).
Count bipartite_count(int m, int n);

/// Spanning trees of K(n_1..n_k): n^(k-2) prod (n - n_i)^(n_i - 1).
Count multipartite_count(std::span<const int> parts);

/// Key placements of the multipartite game:
/// (n - n_1)^(n_1 - 1) prod_{i>=2} (n - n_i)^(n_i).
Count multipartite_placements(std::span<const int> parts);

/// Winning probability of the multipartite game from its start:
/// n^(k-2) / prod_{i>=2} (n - n_i).
ExactProb start_probability_multipartite(std::span<const int> parts);

/// State-value function (1+X_1)...(1+X_k) [1 - sum X_i / (1+X_i)].
ExactProb fk(std::span<const ExactProb> x);

/// Determinant of the k x k matrix with 1 on the diagonal and -X_i elsewhere
/// in row i. Equal to fk.
ExactProb fk_det(std::span<const ExactProb> x);

/// Exact determinant of a square row-major rational matrix.
ExactProb determinant(std::vector<ExactProb> matrix, std::size_t dim);

/// Nilpotent n x n matrices over F_q, q^(n(n-1)). q must be prime.
Count nilpotent_count(int q, int n);

/// Probability that AB is nilpotent for uniform A (m x n), B (n x m) over
/// F_q: 1/q^m + 1/q^n - 1/q^(m+n). q must be prime.
ExactProb nilpotent_product_probability(int q, int m, int n);

bool is_prime(int q);

}  // namespace padlock::formulas
