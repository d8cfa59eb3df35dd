#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "structobs/error.hpp"
#include "structobs/structural_matrix.hpp"

namespace structobs {

/// Bipartite graph of a pattern: row vertices 1..left_count, column vertices
/// 1..right_count, an edge per star. Optional non-negative integer weights are
/// stored parallel to edges.
class Bipartite {
 public:
  Bipartite() = default;

  Bipartite(std::size_t rows, std::size_t cols, std::vector<Entry> edges,
            std::vector<std::int64_t> weights = {})
      : rows_(rows), cols_(cols), edges_(std::move(edges)), weights_(std::move(weights)) {
    if (!weights_.empty() && weights_.size() != edges_.size()) {
      throw ValidationError(ValidationKind::DimensionMismatch,
                            "bipartite: weight count differs from edge count");
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Entry& e = edges_[i];
      if (e.row < 1 || e.row > rows_ || e.col < 1 || e.col > cols_) {
        throw ValidationError(ValidationKind::OutOfRange, "bipartite: edge out of range");
      }
      if (!weights_.empty() && weights_[i] < 0) {
        throw ValidationError(ValidationKind::OutOfRange, "bipartite: negative weight");
      }
    }
  }

  static Bipartite from_pattern(const StructuralMatrix& m) {
    return {m.rows(), m.cols(), std::vector<Entry>(m.entries().begin(), m.entries().end())};
  }

  std::size_t left_count() const noexcept { return rows_; }
  std::size_t right_count() const noexcept { return cols_; }
  const std::vector<Entry>& edges() const noexcept { return edges_; }
  const std::vector<std::int64_t>& weights() const noexcept { return weights_; }
  bool weighted() const noexcept { return !weights_.empty(); }
  std::int64_t weight(std::size_t edge) const { return weights_.empty() ? 0 : weights_[edge]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> edges_;
  std::vector<std::int64_t> weights_;
};

struct Matching {
  std::vector<Entry> pairs;  // (row, col), sorted
  std::int64_t total_weight = 0;

  std::size_t size() const noexcept { return pairs.size(); }
};

namespace detail {

inline constexpr std::size_t kFree = static_cast<std::size_t>(-1);

// Column-side adjacency (0-based); each entry is (row, edge id).
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> column_adjacency(
    const Bipartite& b) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(b.right_count());
  const auto& edges = b.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].col - 1].emplace_back(edges[i].row - 1, i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

/// Hopcroft-Karp over columns. `allowed` filters edges; match vectors are
/// 0-based and updated in place so callers can seed a partial matching.
template <class Allowed>
void hopcroft_karp(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj,
                   std::size_t rows, std::vector<std::size_t>& col_match,
                   std::vector<std::size_t>& row_match, Allowed allowed) {
  const std::size_t cols = adj.size();
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(cols);
  std::vector<std::size_t> it(cols);
  (void)rows;

  auto bfs = [&]() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_match[c] == kFree) {
        dist[c] = 0;
        q.push(c);
      } else {
        dist[c] = inf;
      }
    }
    while (!q.empty()) {
      const std::size_t c = q.front();
      q.pop();
      for (const auto& [r, e] : adj[c]) {
        if (!allowed(e)) continue;
        const std::size_t c2 = row_match[r];
        if (c2 == kFree) {
          found = true;
        } else if (dist[c2] == inf) {
          dist[c2] = dist[c] + 1;
          q.push(c2);
        }
      }
    }
    return found;
  };

  // Iterative layered DFS.
  auto dfs = [&](std::size_t start) {
    std::vector<std::size_t> path{start};
    std::vector<std::size_t> via;  // rows taken along the path
    while (!path.empty()) {
      const std::size_t c = path.back();
      bool advanced = false;
      while (it[c] < adj[c].size()) {
        const auto [r, e] = adj[c][it[c]++];
        if (!allowed(e)) continue;
        const std::size_t c2 = row_match[r];
        if (c2 == kFree) {
          via.push_back(r);
          for (std::size_t i = 0; i < path.size(); ++i) {
            col_match[path[i]] = via[i];
            row_match[via[i]] = path[i];
          }
          return true;
        }
        if (dist[c2] == dist[c] + 1) {
          via.push_back(r);
          path.push_back(c2);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[c] = inf;
        path.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_match[c] == kFree) dfs(c);
    }
  }
}

}  // namespace detail

/// Maximum-cardinality matching (Hopcroft-Karp).
inline Matching max_matching(const Bipartite& b) {
  const auto adj = detail::column_adjacency(b);
  std::vector<std::size_t> col_match(b.right_count(), detail::kFree);
  std::vector<std::size_t> row_match(b.left_count(), detail::kFree);
  detail::hopcroft_karp(adj, b.left_count(), col_match, row_match, [](std::size_t) { return true; });

  Matching m;
  for (std::size_t c = 0; c < col_match.size(); ++c) {
    if (col_match[c] != detail::kFree) m.pairs.push_back({col_match[c] + 1, c + 1});
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

/// Generic rank of a pattern, i.e. the size of a maximum matching of its bipartite graph.
inline std::size_t grank(const StructuralMatrix& m) {
  return max_matching(Bipartite::from_pattern(m)).size();
}

/// Among all maximum-cardinality matchings, one of minimum total weight.
///
/// Successive shortest augmenting paths with Johnson potentials (the primal-dual
/// form of the Hungarian method) on the sparse graph. The zero-weight subgraph
/// is matched first with Hopcroft-Karp; that matching is optimal for its size,
/// so zero potentials are feasible and every later augmentation keeps the
/// matching minimum-weight for its cardinality.
inline Matching min_weight_max_matching(const Bipartite& b) {
  using Cost = std::int64_t;
  constexpr Cost inf = std::numeric_limits<Cost>::max() / 4;
  const std::size_t C = b.right_count();
  const std::size_t R = b.left_count();
  const auto adj = detail::column_adjacency(b);

  std::vector<std::size_t> col_match(C, detail::kFree);
  std::vector<std::size_t> row_match(R, detail::kFree);
  std::vector<std::size_t> col_edge(C, detail::kFree);  // edge id of each column's match
  detail::hopcroft_karp(adj, R, col_match, row_match,
                        [&](std::size_t e) { return b.weight(e) == 0; });
  for (std::size_t c = 0; c < C; ++c) {
    if (col_match[c] == detail::kFree) continue;
    for (const auto& [r, e] : adj[c]) {
      if (r == col_match[c] && b.weight(e) == 0) {
        col_edge[c] = e;
        break;
      }
    }
  }

  // Residual graph: source S, columns, rows, sink T.
  //   S -> free column (0), column -> row on unmatched edge (w),
  //   row -> its matched column (-w), free row -> T (0).
  const std::size_t S = 0;
  const std::size_t T = C + R + 1;
  auto col_node = [](std::size_t c) { return c + 1; };
  auto row_node = [C](std::size_t r) { return C + 1 + r; };
  std::vector<Cost> pot(C + R + 2, 0);
  std::vector<Cost> dist(C + R + 2);
  std::vector<std::size_t> parent(C + R + 2);
  std::vector<std::size_t> parent_edge(C + R + 2);
  std::vector<bool> done(C + R + 2);

  for (;;) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(done.begin(), done.end(), false);
    using Item = std::pair<Cost, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[S] = 0;
    pq.push({0, S});

    auto relax = [&](std::size_t from, std::size_t to, Cost cost, std::size_t edge) {
      const Cost nd = dist[from] + cost + pot[from] - pot[to];
      if (nd < dist[to]) {
        dist[to] = nd;
        parent[to] = from;
        parent_edge[to] = edge;
        pq.push({nd, to});
      }
    };

    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (done[u] || d != dist[u]) continue;
      done[u] = true;
      if (u == T) continue;
      if (u == S) {
        for (std::size_t c = 0; c < C; ++c) {
          if (col_match[c] == detail::kFree) relax(S, col_node(c), 0, detail::kFree);
        }
      } else if (u <= C) {
        const std::size_t c = u - 1;
        for (const auto& [r, e] : adj[c]) {
          if (col_match[c] == r) continue;
          relax(u, row_node(r), b.weight(e), e);
        }
      } else {
        const std::size_t r = u - C - 1;
        const std::size_t c = row_match[r];
        if (c == detail::kFree) {
          relax(u, T, 0, detail::kFree);
        } else {
          relax(u, col_node(c), -b.weight(col_edge[c]), col_edge[c]);
        }
      }
    }
    if (dist[T] >= inf) break;

    // Walk back from T: alternate row <- column pairs.
    std::size_t v = parent[T];  // free row node
    while (v != S) {
      const std::size_t r = v - C - 1;
      const std::size_t cn = parent[v];
      const std::size_t c = cn - 1;
      const std::size_t e = parent_edge[v];
      const std::size_t prev = parent[cn];  // S or a row node
      row_match[r] = c;
      col_match[c] = r;
      col_edge[c] = e;
      v = prev;
    }
    for (std::size_t i = 0; i < pot.size(); ++i) {
      if (dist[i] < inf) pot[i] += dist[i];
    }
  }

  Matching m;
  for (std::size_t c = 0; c < C; ++c) {
    if (col_match[c] == detail::kFree) continue;
    m.pairs.push_back({col_match[c] + 1, c + 1});
    m.total_weight += b.weight(col_edge[c]);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

}  // namespace structobs
