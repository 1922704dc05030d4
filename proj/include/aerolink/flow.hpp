#pragma once

#include <cstddef>
#include <vector>

#include "aerolink/linalg.hpp"

namespace aerolink {

struct FlowEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double capacity = 0.0;
};

/// Directed capacitated network with a single source and sink.
struct FlowNetwork {
  std::size_t node_count = 0;
  std::vector<FlowEdge> edges;
  std::size_t source = 0;
  std::size_t sink = 0;
};

struct MaxFlowResult {
  double value = 0.0;
  std::vector<double> flow;         ///< per edge of the network, same order
  std::vector<bool> source_side;    ///< residual reachability from the source
};

struct CutResult {
  double value = 0.0;
  std::vector<std::size_t> source_side;  ///< sorted, contains the source
};

/// Capacities below this are treated as absent edges.
inline constexpr double kMinCapacity = 1e-12;

/// Each undirected rate a_ij becomes arcs i->j and j->i of capacity a_ij.
/// Throws std::domain_error if the adjacency is asymmetric beyond 1e-9 (relative).
FlowNetwork from_adjacency(const Matrix& adjacency, std::size_t source, std::size_t sink);

/// Edmonds-Karp: breadth-first shortest augmenting paths.
MaxFlowResult max_flow(const FlowNetwork& n);

/// Source side = nodes reachable from the source in the final residual graph.
CutResult min_cut(const FlowNetwork& n);

/// Exhaustive minimum over every S with source in S and sink outside; N <= 16.
CutResult brute_force_min_cut(const FlowNetwork& n);

/// Sum of capacities leaving `source_side`.
double cut_capacity(const FlowNetwork& n, const std::vector<bool>& source_side);

}  // namespace aerolink
