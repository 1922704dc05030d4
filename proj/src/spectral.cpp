#include "aerolink/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <stdexcept>

namespace aerolink {

const char* to_string(LaplacianMode m) {
  return m == LaplacianMode::CombinatorialWeighted ? "combinatorial" : "normalized";
}

GraphMatrices matrices_from_adjacency(Matrix adjacency) {
  GraphMatrices m;
  const Eigen::Index n = adjacency.rows();
  m.degree = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m.degree(i, i) = adjacency.row(i).sum();
  m.laplacian = m.degree - adjacency;
  m.adjacency = std::move(adjacency);
  return m;
}

namespace reference {

GraphMatrices build_matrices(const Scenario& s, const FadingModel& f) {
  const auto n = static_cast<Eigen::Index>(s.num_primary());
  Matrix a = Matrix::Zero(n, n);
  for (const Edge& e : s.topology) {
    const double rate = edge_rate(e.a, e.b, s, f);
    a(static_cast<Eigen::Index>(e.a), static_cast<Eigen::Index>(e.b)) = rate;
    a(static_cast<Eigen::Index>(e.b), static_cast<Eigen::Index>(e.a)) = rate;
  }
  return matrices_from_adjacency(std::move(a));
}

}  // namespace reference

GraphMatrices build_matrices(const Scenario& s, const FadingModel& f) {
  const auto n = static_cast<Eigen::Index>(s.num_primary());
  const auto edges = static_cast<long>(s.topology.size());
  std::vector<double> rates(s.topology.size());
  std::exception_ptr error;

#pragma omp parallel for schedule(static) if (edges > 16)
  for (long k = 0; k < edges; ++k) {
    try {
      const Edge& e = s.topology[static_cast<std::size_t>(k)];
      rates[static_cast<std::size_t>(k)] = edge_rate(e.a, e.b, s, f);
    } catch (...) {
#pragma omp critical(aerolink_build_matrices_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  Matrix a = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < s.topology.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(s.topology[k].a);
    const auto j = static_cast<Eigen::Index>(s.topology[k].b);
    a(i, j) = rates[k];
    a(j, i) = rates[k];
  }
  return matrices_from_adjacency(std::move(a));
}

Matrix weighted_laplacian(const GraphMatrices& m, std::span<const double> weights,
                          LaplacianMode mode) {
  const Eigen::Index n = m.laplacian.rows();
  if (static_cast<Eigen::Index>(weights.size()) != n)
    throw std::invalid_argument("weight count does not match matrix size");
  Vector scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = weights[static_cast<std::size_t>(i)];
    if (!(w > 0.0)) throw std::domain_error("node weights must be positive");
    double s = 1.0 / std::sqrt(w);
    if (mode == LaplacianMode::NormalizedWeighted) {
      const double beta = m.degree(i, i);
      if (!(beta > 0.0)) throw std::domain_error("isolated node");
      s /= std::sqrt(beta);
    }
    scale[i] = s;
  }
  // Scale by the product s_i s_j so the result is exactly symmetric.
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = m.laplacian(i, j) * (scale[i] * scale[j]);
  return out;
}

FiedlerPair fiedler_pair(const Matrix& lw) {
  if (lw.rows() < 2) throw std::invalid_argument("fiedler_pair needs at least two nodes");
  const SymmetricEigen eig = eig_sym(lw);
  FiedlerPair out;
  out.lambda2 = std::max(0.0, eig.values[1]);
  out.fiedler = eig.vectors.col(1);
  out.fiedler.normalize();

  // Fix the sign: the largest-magnitude entry is positive.
  Eigen::Index arg = 0;
  out.fiedler.cwiseAbs().maxCoeff(&arg);
  if (out.fiedler[arg] < 0.0) out.fiedler = -out.fiedler;

  const double radius = std::max(std::abs(eig.values[0]), std::abs(eig.values[eig.values.size() - 1]));
  if (lw.rows() >= 3) {
    out.spectral_gap = eig.values[2] - eig.values[1];
    out.degenerate = out.spectral_gap < 1e-9 * std::max(radius, std::numeric_limits<double>::min());
  } else {
    out.spectral_gap = std::numeric_limits<double>::infinity();
  }
  return out;
}

LaplacianBundle laplacian_bundle(const GraphMatrices& m, std::span<const double> weights,
                                 LaplacianMode mode) {
  LaplacianBundle b;
  b.matrices = m;
  b.mode = mode;
  b.weighted_laplacian = weighted_laplacian(m, weights, mode);
  const FiedlerPair fp = fiedler_pair(b.weighted_laplacian);
  b.lambda2 = fp.lambda2;
  b.fiedler = fp.fiedler;
  b.spectral_gap = fp.spectral_gap;
  b.degenerate = fp.degenerate;
  b.delta_max = m.degree.diagonal().maxCoeff();
  b.w_min = *std::min_element(weights.begin(), weights.end());
  return b;
}

LaplacianBundle laplacian_bundle(const Scenario& s, const FadingModel& f, LaplacianMode mode) {
  return laplacian_bundle(build_matrices(s, f), s.weights, mode);
}

double weighted_lambda2(const Scenario& s, const FadingModel& f, LaplacianMode mode) {
  return fiedler_pair(weighted_laplacian(build_matrices(s, f), s.weights, mode)).lambda2;
}

CheegerReport cheeger_bruteforce(const GraphMatrices& m,
                                 std::optional<std::span<const double>> weights,
                                 LaplacianMode mode) {
  const auto n = static_cast<std::size_t>(m.adjacency.rows());
  if (n > 20) throw std::length_error("cheeger_bruteforce: more than 20 nodes");
  if (n < 2) throw std::invalid_argument("cheeger_bruteforce: needs at least two nodes");

  std::vector<double> w(n, 1.0);
  if (weights) {
    if (weights->size() != n) throw std::invalid_argument("weight count does not match matrix size");
    w.assign(weights->begin(), weights->end());
  }
  double total_w = 0.0;
  for (double x : w) total_w += x;

  CheegerReport r;
  r.h = std::numeric_limits<double>::infinity();
  // Each cut is visited from both sides; fixing node n-1 outside S halves the work.
  const std::uint32_t last = 1u << (n - 1);
  for (std::uint32_t mask = 1; mask < last; ++mask) {
    double cut = 0.0;
    double ws = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      ws += w[i];
      for (std::size_t j = 0; j < n; ++j)
        if (!(mask & (1u << j))) cut += m.adjacency(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const double h = cut / std::min(ws, total_w - ws);
    if (h < r.h) {
      r.h = h;
      r.argmin_cut.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) r.argmin_cut.push_back(i);
    }
  }

  const FiedlerPair fp = fiedler_pair(weighted_laplacian(m, w, mode));
  r.lambda2 = fp.lambda2;
  r.delta_max = m.degree.diagonal().maxCoeff();
  r.w_min = *std::min_element(w.begin(), w.end());
  r.lower_bound = 0.5 * r.lambda2;
  r.upper_bound = std::sqrt(2.0 * r.delta_max * r.lambda2 / r.w_min);
  // Relative slack covers rounding in the eigenvalue at tight instances.
  const double slack = 1e-9 * std::max(1.0, r.h);
  r.bounds_hold = r.lower_bound <= r.h + slack && r.h <= r.upper_bound + slack;
  return r;
}

}  // namespace aerolink
