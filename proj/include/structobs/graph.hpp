#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "structobs/structural_matrix.hpp"
#include "structobs/system.hpp"

namespace structobs {

/// Directed graph on vertices 1..vertex_count(). Out-neighbour lists are
/// sorted and duplicate-free; self-loops are allowed.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t vertex_count) : out_(vertex_count) {}

  /// Edge j -> i for every star at (i, j): column is the source, row the destination.
  static Digraph from_pattern(const StructuralMatrix& pattern) {
    Digraph g(std::max(pattern.rows(), pattern.cols()));
    for (const Entry& e : pattern.entries()) g.out_[e.col - 1].push_back(e.row);
    for (auto& nbrs : g.out_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
  }

  void add_edge(std::size_t from, std::size_t to) {
    auto& nbrs = out_[from - 1];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), to);
    if (it == nbrs.end() || *it != to) nbrs.insert(it, to);
  }

  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::span<const std::size_t> out(std::size_t v) const { return out_[v - 1]; }

  bool has_edge(std::size_t from, std::size_t to) const {
    const auto& nbrs = out_[from - 1];
    return std::binary_search(nbrs.begin(), nbrs.end(), to);
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto& nbrs : out_) c += nbrs.size();
    return c;
  }

  Digraph reversed() const {
    Digraph r(vertex_count());
    for (std::size_t v = 1; v <= vertex_count(); ++v) {
      for (std::size_t w : out(v)) r.out_[w - 1].push_back(v);
    }
    return r;  // lists are already ascending: v is visited in order
  }

 private:
  std::vector<std::vector<std::size_t>> out_;
};

inline Digraph build_union_digraph(const AugmentedSystem& aug) {
  return Digraph::from_pattern(aug.union_pattern);
}

struct SccDecomposition {
  std::vector<std::size_t> component_of;             // vertex v -> component_of[v - 1]
  std::vector<std::vector<std::size_t>> components;  // sorted members, ordered by min member
  std::vector<std::vector<std::size_t>> condensation;  // component -> successor components
  std::vector<bool> is_target;

  std::size_t component_count() const noexcept { return components.size(); }
  std::size_t target_count() const {
    return static_cast<std::size_t>(std::count(is_target.begin(), is_target.end(), true));
  }
};

/// Tarjan's algorithm with an explicit stack. Components are renumbered by
/// their smallest vertex so the output does not depend on DFS order.
inline SccDecomposition scc_decompose(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> raw;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const auto nbrs = g.out(f.v + 1);
      if (f.next < nbrs.size()) {
        const std::size_t w = nbrs[f.next++] - 1;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w + 1);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        raw.push_back(std::move(comp));
      }
    }
  }

  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  SccDecomposition d;
  d.components = std::move(raw);
  d.component_of.assign(n, 0);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    for (std::size_t v : d.components[c]) d.component_of[v - 1] = c;
  }
  d.condensation.assign(d.components.size(), {});
  for (std::size_t v = 1; v <= n; ++v) {
    const std::size_t cv = d.component_of[v - 1];
    for (std::size_t w : g.out(v)) {
      const std::size_t cw = d.component_of[w - 1];
      if (cw != cv) d.condensation[cv].push_back(cw);
    }
  }
  for (auto& succ : d.condensation) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  d.is_target.resize(d.components.size());
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    d.is_target[c] = d.condensation[c].empty();
  }
  return d;
}

/// Target-SCCs (no outgoing condensation edge) in ascending order of smallest member.
inline std::vector<std::vector<std::size_t>> target_sccs(const SccDecomposition& d) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    if (d.is_target[c]) out.push_back(d.components[c]);
  }
  return out;
}

struct Accessibility {
  bool all_reach = false;
  std::vector<std::size_t> non_accessible;  // ascending
};

/// Reverse BFS from the measured set: a vertex is accessible iff it has a
/// directed path to some measured vertex (measured vertices trivially are).
inline Accessibility all_vertices_reach_outputs(const Digraph& g,
                                                std::span<const std::size_t> measured) {
  const std::size_t n = g.vertex_count();
  const Digraph rev = g.reversed();
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t v : measured) {
    if (v >= 1 && v <= n && !seen[v - 1]) {
      seen[v - 1] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : rev.out(v)) {
      if (!seen[u - 1]) {
        seen[u - 1] = true;
        queue.push_back(u);
      }
    }
  }
  Accessibility acc;
  for (std::size_t v = 1; v <= n; ++v) {
    if (!seen[v - 1]) acc.non_accessible.push_back(v);
  }
  acc.all_reach = acc.non_accessible.empty();
  return acc;
}

}  // namespace structobs
