#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "aerolink/channel.hpp"
#include "aerolink/linalg.hpp"
#include "aerolink/scenario.hpp"

namespace aerolink {

/// Rate-weighted adjacency A, degree D = diag(row sums of A), Laplacian L = D - A.
struct GraphMatrices {
  Matrix adjacency;
  Matrix degree;
  Matrix laplacian;
};

enum class LaplacianMode {
  CombinatorialWeighted,  ///< W^-1/2 L W^-1/2
  NormalizedWeighted,     ///< W^-1/2 D^-1/2 L D^-1/2 W^-1/2
};

const char* to_string(LaplacianMode m);

/// Degree and Laplacian for the given adjacency.
GraphMatrices matrices_from_adjacency(Matrix adjacency);

/// Edge rates on topology edges, nodes ordered [s, uav_1 .. uav_K, d].
/// Topology edges are evaluated in parallel; the result is bitwise identical
/// to reference::build_matrices.
GraphMatrices build_matrices(const Scenario& s, const FadingModel& f);

Matrix weighted_laplacian(const GraphMatrices& m, std::span<const double> weights,
                          LaplacianMode mode);

/// Second-smallest eigenpair of a PSD Laplacian-like matrix.
struct FiedlerPair {
  double lambda2 = 0.0;
  Vector fiedler;
  double spectral_gap = 0.0;  ///< lambda3 - lambda2 (+inf for 2x2)
  bool degenerate = false;    ///< gap below 1e-9 relative to the spectral radius
};

FiedlerPair fiedler_pair(const Matrix& lw);

struct LaplacianBundle {
  GraphMatrices matrices;
  Matrix weighted_laplacian;
  LaplacianMode mode = LaplacianMode::CombinatorialWeighted;
  double lambda2 = 0.0;
  Vector fiedler;
  double delta_max = 0.0;  ///< largest weighted degree
  double w_min = 0.0;
  double spectral_gap = 0.0;
  bool degenerate = false;
};

LaplacianBundle laplacian_bundle(const GraphMatrices& m, std::span<const double> weights,
                                 LaplacianMode mode);
LaplacianBundle laplacian_bundle(const Scenario& s, const FadingModel& f, LaplacianMode mode);

/// lambda2 of the weighted Laplacian of the scenario.
double weighted_lambda2(const Scenario& s, const FadingModel& f, LaplacianMode mode);

struct CheegerReport {
  double h = 0.0;
  std::vector<std::size_t> argmin_cut;  ///< the minimizing subset S
  double lambda2 = 0.0;
  double delta_max = 0.0;
  double w_min = 0.0;
  double lower_bound = 0.0;  ///< lambda2 / 2
  double upper_bound = 0.0;  ///< sqrt(2 delta_max lambda2 / w_min)
  bool bounds_hold = false;
};

/// Exact (weighted) Cheeger constant by enumerating every nonempty proper
/// subset. Without weights every node counts 1. lambda2 is taken from the
/// weighted Laplacian in `mode`. Refuses graphs with more than 20 nodes.
CheegerReport cheeger_bruteforce(const GraphMatrices& m,
                                 std::optional<std::span<const double>> weights,
                                 LaplacianMode mode = LaplacianMode::CombinatorialWeighted);

namespace reference {
/// Serial build_matrices.
GraphMatrices build_matrices(const Scenario& s, const FadingModel& f);
}  // namespace reference

}  // namespace aerolink
