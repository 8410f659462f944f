#pragma once
// Brute-force oracles, written without the library's enumeration code.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "padlock/exact.hpp"

namespace oracle {

using padlock::Count;
using padlock::ExactProb;
using Edge = std::pair<int, int>;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

// Spanning trees of the graph on n vertices with the given edges, counted by
// trying every (n-1)-subset. `accept` may filter trees (e.g. by degrees).
inline std::uint64_t spanning_trees(int n, const std::vector<Edge>& edges,
                                    const std::function<bool(const std::vector<Edge>&)>& accept = {}) {
  if (n == 1) return 1;
  const auto e = edges.size();
  const auto need = static_cast<std::size_t>(n - 1);
  if (need > e) return 0;
  std::vector<char> pick(e, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(need), 1);
  std::uint64_t count = 0;
  do {
    UnionFind uf(n);
    std::vector<Edge> chosen;
    bool ok = true;
    for (std::size_t i = 0; i < e && ok; ++i) {
      if (!pick[i]) continue;
      ok = uf.unite(edges[i].first, edges[i].second);
      chosen.push_back(edges[i]);
    }
    if (ok && (!accept || accept(chosen))) ++count;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return count;
}

// Edges between vertices of different parts (parts listed as sizes).
inline std::vector<Edge> multipartite_edges(const std::vector<int>& parts) {
  std::vector<int> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) part_of.insert(part_of.end(), static_cast<std::size_t>(parts[p]), static_cast<int>(p));
  std::vector<Edge> edges;
  const int n = static_cast<int>(part_of.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (part_of[static_cast<std::size_t>(a)] != part_of[static_cast<std::size_t>(b)]) edges.emplace_back(a, b);
    }
  }
  return edges;
}

inline std::vector<Edge> complete_edges(int n) { return multipartite_edges(std::vector<int>(static_cast<std::size_t>(n), 1)); }

// Matrix tree theorem: any cofactor of the Laplacian, in exact arithmetic.
inline Count kirchhoff(int n, const std::vector<Edge>& edges) {
  if (n == 1) return 1;
  const auto m = static_cast<std::size_t>(n - 1);
  std::vector<std::vector<ExactProb>> a(m, std::vector<ExactProb>(m, 0));
  for (const auto& [u, v] : edges) {
    for (const auto& [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
      if (x == n - 1) continue;
      a[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] += 1;
      if (y != n - 1) a[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] -= 1;
    }
  }
  ExactProb det = 1;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < m; ++r) {
      const ExactProb f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return boost::multiprecision::numerator(det);
}

// Parent functions on the non-root vertices k..n-1 that reach a root 0..k-1.
inline std::uint64_t rooted_forests(int n, int k) {
  const int free = n - k;
  std::vector<int> parent(static_cast<std::size_t>(free), 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (int v = k; v < n && ok; ++v) {
      int x = v;
      for (int steps = 0; x >= k && steps <= n; ++steps) x = parent[static_cast<std::size_t>(x - k)];
      ok = x < k;
    }
    count += ok ? 1 : 0;
    int i = 0;
    while (i < free && ++parent[static_cast<std::size_t>(i)] == n) parent[static_cast<std::size_t>(i++)] = 0;
    if (i == free) break;
  }
  return count;
}

// Functions {1..n-1} -> {1..n} with at least k values in {1..k} for all k < n.
inline std::uint64_t parking_functions(int n) {
  const int len = n - 1;
  std::vector<int> f(static_cast<std::size_t>(len), 1);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (int k = 1; k < n && ok; ++k) {
      ok = std::count_if(f.begin(), f.end(), [k](int v) { return v <= k; }) >= k;
    }
    count += ok ? 1 : 0;
    int i = 0;
    while (i < len && ++f[static_cast<std::size_t>(i)] > n) f[static_cast<std::size_t>(i++)] = 1;
    if (i == len) break;
  }
  return count;
}

// Sets of `pairs` triangles on 2*pairs+1 vertices forming a hypertree.
inline std::uint64_t triangle_hypertrees(int pairs) {
  const int v = 2 * pairs + 1;
  std::vector<std::vector<int>> triples;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      for (int c = b + 1; c < v; ++c) triples.push_back({a, b, c});
  std::vector<char> pick(triples.size(), 0);
  std::fill(pick.begin(), pick.begin() + pairs, 1);
  std::uint64_t count = 0;
  do {
    UnionFind uf(v);
    bool ok = true;
    for (std::size_t i = 0; i < triples.size() && ok; ++i) {
      if (!pick[i]) continue;
      ok = uf.unite(triples[i][0], triples[i][1]) && uf.unite(triples[i][0], triples[i][2]);
    }
    if (ok) ++count;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return count;
}

// Dyck paths of semilength n by dynamic programming over heights.
inline Count dyck_paths(int n) {
  std::vector<Count> ways(static_cast<std::size_t>(n + 2), 0);
  ways[0] = 1;
  for (int step = 0; step < 2 * n; ++step) {
    std::vector<Count> next(ways.size(), 0);
    for (std::size_t h = 0; h + 1 < ways.size(); ++h) {
      if (ways[h] == 0) continue;
      next[h + 1] += ways[h];
      if (h > 0) next[h - 1] += ways[h];
    }
    ways = next;
  }
  return ways[0];
}

// n x n matrices over F_q (q prime) with A^(2^t) = 0 for 2^t >= n.
inline std::uint64_t nilpotent_matrices(int q, int n) {
  using Mat = std::vector<int>;
  const auto mul = [&](const Mat& a, const Mat& b) {
    Mat c(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          c[static_cast<std::size_t>(i * n + j)] = (c[static_cast<std::size_t>(i * n + j)] + a[static_cast<std::size_t>(i * n + k)] * b[static_cast<std::size_t>(k * n + j)]) % q;
    return c;
  };
  Mat a(static_cast<std::size_t>(n * n), 0);
  std::uint64_t count = 0;
  while (true) {
    Mat p = a;
    for (int reach = 1; reach < n; reach *= 2) p = mul(p, p);
    count += std::all_of(p.begin(), p.end(), [](int x) { return x == 0; }) ? 1 : 0;
    std::size_t i = 0;
    while (i < a.size() && ++a[i] == q) a[i++] = 0;
    if (i == a.size()) break;
  }
  return count;
}

// Clock solitaire with physical piles: draw from the front, tuck under the
// back; play stops when the needed pile shows only face-up cards.
inline bool clock_physical(const std::vector<int>& deck, int ranks, int suits) {
  std::vector<std::deque<std::pair<int, bool>>> piles(static_cast<std::size_t>(ranks));
  for (int p = 0; p < ranks; ++p)
    for (int i = 0; i < suits; ++i) piles[static_cast<std::size_t>(p)].emplace_back(deck[static_cast<std::size_t>(p * suits + i)], false);
  int pile = ranks - 1;
  int revealed = 0;
  while (!piles[static_cast<std::size_t>(pile)].front().second) {
    const int card = piles[static_cast<std::size_t>(pile)].front().first;
    piles[static_cast<std::size_t>(pile)].pop_front();
    piles[static_cast<std::size_t>(card)].emplace_back(card, true);
    ++revealed;
    pile = card;
  }
  return revealed == ranks * suits;
}

// Pile game on N distinct cards over all N! orders. Cards 0..keys-1 are
// keys; pile i (size sizes[i]) opens with key i.
inline ExactProb pile_game_all_orders(int cards, int keys, int hand, const std::vector<int>& sizes) {
  std::vector<int> deck(static_cast<std::size_t>(cards));
  std::iota(deck.begin(), deck.end(), 0);
  std::uint64_t wins = 0;
  std::uint64_t total = 0;
  do {
    std::vector<std::vector<int>> piles;
    int pos = hand;
    for (const int s : sizes) {
      piles.emplace_back(deck.begin() + pos, deck.begin() + pos + s);
      pos += s;
    }
    std::vector<int> todo(deck.begin(), deck.begin() + hand);
    std::set<int> opened;
    while (!todo.empty()) {
      const int c = todo.back();
      todo.pop_back();
      if (c < keys && opened.insert(c).second) todo.insert(todo.end(), piles[static_cast<std::size_t>(c)].begin(), piles[static_cast<std::size_t>(c)].end());
    }
    wins += static_cast<int>(opened.size()) == keys ? 1 : 0;
    ++total;
  } while (std::next_permutation(deck.begin(), deck.end()));
  return ExactProb(wins, total);
}

}  // namespace oracle
