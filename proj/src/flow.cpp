#include "aerolink/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>

namespace aerolink {

namespace {

void check_endpoints(const FlowNetwork& n) {
  if (n.source >= n.node_count || n.sink >= n.node_count)
    throw std::out_of_range("flow network source/sink out of range");
  if (n.source == n.sink) throw std::invalid_argument("flow network source equals sink");
}

// Residual graph: arc 2e is edge e forward, arc 2e+1 its reverse.
struct Residual {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> head;
  std::vector<double> cap;
};

Residual make_residual(const FlowNetwork& n) {
  Residual r;
  r.out.resize(n.node_count);
  r.head.resize(2 * n.edges.size());
  r.cap.resize(2 * n.edges.size(), 0.0);
  for (std::size_t e = 0; e < n.edges.size(); ++e) {
    const FlowEdge& fe = n.edges[e];
    if (fe.from >= n.node_count || fe.to >= n.node_count)
      throw std::out_of_range("flow edge endpoint out of range");
    if (!(fe.capacity >= 0.0) || !std::isfinite(fe.capacity))
      throw std::domain_error("flow capacities must be finite and nonnegative");
    r.head[2 * e] = fe.to;
    r.head[2 * e + 1] = fe.from;
    if (fe.capacity >= kMinCapacity && fe.from != fe.to) {
      r.cap[2 * e] = fe.capacity;
      r.out[fe.from].push_back(2 * e);
      r.out[fe.to].push_back(2 * e + 1);
    }
  }
  return r;
}

}  // namespace

FlowNetwork from_adjacency(const Matrix& adjacency, std::size_t source, std::size_t sink) {
  if (adjacency.rows() != adjacency.cols()) throw std::invalid_argument("adjacency is not square");
  FlowNetwork net;
  net.node_count = static_cast<std::size_t>(adjacency.rows());
  net.source = source;
  net.sink = sink;
  check_endpoints(net);
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    for (Eigen::Index j = 0; j < adjacency.cols(); ++j) {
      const double a = adjacency(i, j);
      const double b = adjacency(j, i);
      if (std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}))
        throw std::domain_error("adjacency is not symmetric");
      if (i != j && a >= kMinCapacity)
        net.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), a});
    }
  }
  return net;
}

MaxFlowResult max_flow(const FlowNetwork& n) {
  check_endpoints(n);
  Residual r = make_residual(n);

  double max_cap = 0.0;
  for (const FlowEdge& e : n.edges) max_cap = std::max(max_cap, e.capacity);
  const double tol = kMinCapacity * std::max(1.0, max_cap);

  std::vector<std::size_t> parent_arc(n.node_count);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<bool> reached(n.node_count);

  auto bfs = [&]() {
    std::fill(reached.begin(), reached.end(), false);
    std::fill(parent_arc.begin(), parent_arc.end(), kNone);
    std::queue<std::size_t> q;
    q.push(n.source);
    reached[n.source] = true;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t arc : r.out[u]) {
        const std::size_t v = r.head[arc];
        if (reached[v] || r.cap[arc] <= tol) continue;
        reached[v] = true;
        parent_arc[v] = arc;
        if (v == n.sink) return true;
        q.push(v);
      }
    }
    return false;
  };

  double value = 0.0;
  while (bfs()) {
    double bottleneck = std::numeric_limits<double>::infinity();
    for (std::size_t v = n.sink; v != n.source; v = r.head[parent_arc[v] ^ 1u])
      bottleneck = std::min(bottleneck, r.cap[parent_arc[v]]);
    for (std::size_t v = n.sink; v != n.source; v = r.head[parent_arc[v] ^ 1u]) {
      r.cap[parent_arc[v]] -= bottleneck;
      r.cap[parent_arc[v] ^ 1u] += bottleneck;
    }
    value += bottleneck;
  }

  MaxFlowResult out;
  out.value = value;
  out.flow.resize(n.edges.size(), 0.0);
  for (std::size_t e = 0; e < n.edges.size(); ++e) {
    // Flow on an edge is what its reverse arc has accumulated.
    out.flow[e] = std::clamp(r.cap[2 * e + 1], 0.0, n.edges[e].capacity);
  }
  out.source_side = reached;  // final BFS failed: exactly the residual-reachable set
  return out;
}

double cut_capacity(const FlowNetwork& n, const std::vector<bool>& source_side) {
  double v = 0.0;
  for (const FlowEdge& e : n.edges)
    if (e.capacity >= kMinCapacity && source_side[e.from] && !source_side[e.to]) v += e.capacity;
  return v;
}

CutResult min_cut(const FlowNetwork& n) {
  const MaxFlowResult mf = max_flow(n);
  CutResult c;
  for (std::size_t i = 0; i < n.node_count; ++i)
    if (mf.source_side[i]) c.source_side.push_back(i);
  c.value = cut_capacity(n, mf.source_side);
  return c;
}

CutResult brute_force_min_cut(const FlowNetwork& n) {
  check_endpoints(n);
  if (n.node_count > 16) throw std::length_error("brute_force_min_cut: more than 16 nodes");

  std::vector<std::size_t> free_nodes;
  for (std::size_t i = 0; i < n.node_count; ++i)
    if (i != n.source && i != n.sink) free_nodes.push_back(i);

  CutResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<bool> side(n.node_count);
  const std::uint32_t combos = 1u << free_nodes.size();
  for (std::uint32_t mask = 0; mask < combos; ++mask) {
    std::fill(side.begin(), side.end(), false);
    side[n.source] = true;
    for (std::size_t k = 0; k < free_nodes.size(); ++k)
      if (mask & (1u << k)) side[free_nodes[k]] = true;
    const double v = cut_capacity(n, side);
    if (v < best.value) {
      best.value = v;
      best.source_side.clear();
      for (std::size_t i = 0; i < n.node_count; ++i)
        if (side[i]) best.source_side.push_back(i);
    }
  }
  return best;
}

}  // namespace aerolink
