#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "structobs/error.hpp"
#include "structobs/system.hpp"

namespace structobs {

// Nodes of the class-1 network.
//
// Every state x keeps its self-loop row in its base mode b_x (lowest mode with
// A(x,x) = *) matched to column x; that pair is a transit node Row(x,b_x) ->
// Column(x). Rows (x,k) with k != b_x are spare: reaching one ends a path
// without a sensor. Column(d) of an input is fed by the source and may go
// straight to the sink. Column(y) -> Row(x,k) whenever A'_k(x,y) = *, and
// Column(y) -> Ancillary(i) when y lies in target-SCC i.
//
// With one mode this is the usual split-node network: Row(x,1) is the in-half
// of x and Column(x) its out-half.
enum class NodeKind { Source, Sink, Ancillary, Row, Column };

struct FlowNode {
  NodeKind kind = NodeKind::Source;
  std::size_t vertex = 0;  // augmented index (Row, Column) or target ordinal (Ancillary)
  std::size_t mode = 0;    // Row only
};

struct FlowArc {
  std::size_t from = 0;
  std::size_t to = 0;
  int capacity = 1;
  std::int64_t cost = 0;
};

struct FlowNetwork {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t alpha = 0;
  std::vector<FlowNode> nodes;
  std::vector<FlowArc> arcs;
  std::vector<std::vector<std::size_t>> targets;  // target-SCC members, by ordinal
  std::size_t source = 0;
  std::size_t sink = 1;

  std::size_t add_node(FlowNode node) {
    nodes.push_back(node);
    return nodes.size() - 1;
  }
  void add_arc(std::size_t from, std::size_t to, std::int64_t cost = 0) {
    arcs.push_back({from, to, 1, cost});
  }
  std::size_t column_node(std::size_t v) const { return 1 + v; }  // columns follow s, t
};

struct NetworkOptions {
  bool direct_arcs = true;
};

/// Base mode of every state: the lowest mode whose A has the diagonal entry.
/// Throws WrongClass unless Q_k = 0 for all k and every state has a self-loop
/// in some mode.
inline std::vector<std::size_t> class1_base_modes(const SwitchedSystem& sys) {
  for (std::size_t k = 0; k < sys.m(); ++k) {
    if (!sys.modes[k].Q.empty()) {
      throw WrongClass("class 1 needs Q = 0 in every mode; mode " + std::to_string(k + 1) +
                       " has input dynamics");
    }
  }
  std::vector<std::size_t> base(sys.n + 1, 0);
  for (std::size_t x = 1; x <= sys.n; ++x) {
    for (std::size_t k = 0; k < sys.m() && base[x] == 0; ++k) {
      if (sys.modes[k].A.contains(x, x)) base[x] = k + 1;
    }
    if (base[x] == 0) {
      throw WrongClass("class 1 needs a self-loop on every state; x" + std::to_string(x) +
                       " has none");
    }
  }
  return base;
}

inline FlowNetwork build_class1_network(const SwitchedSystem& sys,
                                        std::span<const std::vector<std::size_t>> targets,
                                        NetworkOptions opts = {}) {
  const auto base = class1_base_modes(sys);
  const AugmentedSystem aug = augment(sys);
  const std::size_t n = sys.n;
  const std::size_t p = sys.p;
  const std::size_t N = n + p;

  FlowNetwork net;
  net.n = n;
  net.p = p;
  net.alpha = targets.size();
  net.targets.assign(targets.begin(), targets.end());
  net.source = net.add_node({NodeKind::Source});
  net.sink = net.add_node({NodeKind::Sink});
  for (std::size_t v = 1; v <= N; ++v) net.add_node({NodeKind::Column, v});

  // Row nodes: only rows with at least one entry matter.
  std::vector<std::vector<std::size_t>> row_node(N + 1, std::vector<std::size_t>(sys.m() + 1, 0));
  for (std::size_t k = 1; k <= sys.m(); ++k) {
    for (const Entry& e : aug.aug_modes[k - 1].entries()) row_node[e.row][k] = 1;
  }
  for (std::size_t x = 1; x <= n; ++x) {
    for (std::size_t k = 1; k <= sys.m(); ++k) {
      if (row_node[p + x][k] != 0) row_node[p + x][k] = net.add_node({NodeKind::Row, p + x, k});
    }
  }
  std::vector<std::size_t> anc(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    anc[i] = net.add_node({NodeKind::Ancillary, i + 1});
  }

  // Direct arcs are priced above any saving from re-routing so the flow uses
  // as few as possible; spare-row endings cost 1 so ancillary endings win ties.
  const std::int64_t direct_cost = static_cast<std::int64_t>(p + targets.size() + 1);
  for (std::size_t d = 1; d <= p; ++d) {
    net.add_arc(net.source, net.column_node(d));
    if (opts.direct_arcs) net.add_arc(net.column_node(d), net.sink, direct_cost);
  }
  for (std::size_t k = 1; k <= sys.m(); ++k) {
    for (const Entry& e : aug.aug_modes[k - 1].entries()) {
      const std::size_t x = e.row;  // augmented, > p since Q = 0
      if (e.col == x && k == base[x - p]) continue;  // the matched pair itself
      net.add_arc(net.column_node(e.col), row_node[x][k]);
    }
  }
  for (std::size_t x = 1; x <= n; ++x) {
    for (std::size_t k = 1; k <= sys.m(); ++k) {
      const std::size_t r = row_node[p + x][k];
      if (r == 0) continue;
      if (k == base[x]) {
        net.add_arc(r, net.column_node(p + x));
      } else {
        net.add_arc(r, net.sink, 1);
      }
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t v : targets[i]) net.add_arc(net.column_node(v), anc[i]);
    net.add_arc(anc[i], net.sink);
  }
  return net;
}

enum class PathEnd { Ancillary, SpareRow, Direct };

struct FlowPath {
  std::vector<std::size_t> vertices;  // augmented indices from the input onwards
  PathEnd end = PathEnd::Direct;
  std::size_t ancillary = 0;  // target ordinal when end == Ancillary
};

struct DisjointPaths {
  std::vector<FlowPath> paths;
  std::int64_t cost = 0;

  std::size_t flow_value() const noexcept { return paths.size(); }
};

/// Integral min-cost maximum flow (successive shortest paths, Dijkstra with
/// potentials) followed by path decomposition, lowest-index neighbour first.
inline DisjointPaths max_flow_disjoint_paths(const FlowNetwork& net) {
  using Cost = std::int64_t;
  constexpr Cost inf = std::numeric_limits<Cost>::max() / 4;
  struct Res {
    std::size_t to;
    std::size_t rev;
    int cap;
    Cost cost;
    bool forward;
  };
  const std::size_t V = net.nodes.size();
  std::vector<std::vector<Res>> g(V);
  for (const FlowArc& a : net.arcs) {
    g[a.from].push_back({a.to, g[a.to].size(), a.capacity, a.cost, true});
    g[a.to].push_back({a.from, g[a.from].size() - 1, 0, -a.cost, false});
  }

  std::vector<Cost> pot(V, 0);
  std::vector<Cost> dist(V);
  std::vector<std::pair<std::size_t, std::size_t>> prev(V);  // (node, arc slot)
  DisjointPaths out;
  for (;;) {
    std::fill(dist.begin(), dist.end(), inf);
    using Item = std::pair<Cost, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[net.source] = 0;
    pq.push({0, net.source});
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d != dist[u]) continue;
      for (std::size_t i = 0; i < g[u].size(); ++i) {
        const Res& r = g[u][i];
        if (r.cap <= 0) continue;
        const Cost nd = d + r.cost + pot[u] - pot[r.to];
        if (nd < dist[r.to]) {
          dist[r.to] = nd;
          prev[r.to] = {u, i};
          pq.push({nd, r.to});
        }
      }
    }
    if (dist[net.sink] >= inf) break;
    for (std::size_t v = 0; v < V; ++v) {
      if (dist[v] < inf) pot[v] += dist[v];
    }
    for (std::size_t v = net.sink; v != net.source; v = prev[v].first) {
      Res& r = g[prev[v].first][prev[v].second];
      r.cap -= 1;
      g[v][r.rev].cap += 1;
      out.cost += r.cost;
    }
  }

  // Decompose: unit capacities mean each node other than s carries at most one unit.
  auto flow_succ = [&](std::size_t u) {
    std::vector<std::size_t> succ;
    for (const Res& r : g[u]) {
      if (r.forward && r.cap == 0) succ.push_back(r.to);
    }
    std::sort(succ.begin(), succ.end(), [&](std::size_t a, std::size_t b) {
      const FlowNode& na = net.nodes[a];
      const FlowNode& nb = net.nodes[b];
      return std::tie(na.vertex, na.mode, a) < std::tie(nb.vertex, nb.mode, b);
    });
    return succ;
  };
  for (std::size_t first : flow_succ(net.source)) {
    FlowPath path;
    std::size_t u = first;
    std::size_t last = u;
    while (u != net.sink) {
      const FlowNode& node = net.nodes[u];
      if (node.kind == NodeKind::Column) {
        path.vertices.push_back(node.vertex);
      } else if (node.kind == NodeKind::Ancillary) {
        path.end = PathEnd::Ancillary;
        path.ancillary = node.vertex;
      }
      const auto succ = flow_succ(u);
      if (succ.empty()) throw InternalVerificationFailure("flow decomposition lost a unit");
      last = u;
      u = succ.front();
    }
    const FlowNode& tail = net.nodes[last];
    if (tail.kind == NodeKind::Row) {
      path.end = PathEnd::SpareRow;
      path.vertices.push_back(tail.vertex);
    } else if (tail.kind == NodeKind::Column) {
      path.end = PathEnd::Direct;
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

}  // namespace structobs
