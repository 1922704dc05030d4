#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aerolink/channel.hpp"
#include "aerolink/scenario.hpp"

namespace aerolink {

enum class BindingKind { PMaxCap, InterferenceCap, Interior };

struct Binding {
  BindingKind kind = BindingKind::Interior;
  std::size_t interferer = 0;  ///< meaningful for InterferenceCap
  friend bool operator==(const Binding&, const Binding&) = default;
};

struct PowerSolution {
  std::vector<double> powers;    ///< per primary node, Watts
  double eta = 0.0;              ///< bottleneck rate, bits/s
  std::vector<Binding> binding;  ///< per primary node
  bool feasible = false;
  int bisection_steps = 0;
};

/// cap_i = min(P_max, min_j I_j^max / |h_ij|^2) for every primary transmitter.
std::vector<double> power_caps(const Scenario& s, const FadingModel& f);

/// The s..d path of a line topology, in order. Throws std::invalid_argument
/// when the topology is not a simple path from source to sink.
std::vector<std::size_t> line_path(const Scenario& s);

/// Minimum of a_ij over consecutive line links at the given powers.
double bottleneck_rate(const Scenario& s, std::span<const double> powers, const FadingModel& f);

/// Max-min bottleneck-rate power allocation under the per-node ceiling and
/// per-interferer caps, by bisection on the bottleneck rate.
///
/// Feasibility of a candidate rate inverts every link constraint into the
/// smallest transmit power that meets it with the partner at its cap (SIR is
/// affine in the transmitter's power), and checks that against the caps.
/// No transmitter power enters any SIR denominator, so the optimum puts every
/// transmitter at its cap; that allocation is returned with the bisected rate.
PowerSolution solve_maxmin(const Scenario& s, const FadingModel& f);

struct InterferenceEntry {
  std::size_t transmitter = 0;  ///< primary index
  std::size_t interferer = 0;   ///< interferer index
  double received_w = 0.0;
  double margin_w = 0.0;        ///< I_j^max - P_i |h_ij|^2
};

struct InterferenceReport {
  std::vector<InterferenceEntry> entries;
  double min_margin_w = 0.0;  ///< +inf when there are no interferers
  bool pass = true;
};

/// Received power at every interferer from every primary transmitter.
/// Passes when P_i |h_ij|^2 <= I_j^max (1 + 1e-12) for every pair.
InterferenceReport verify_interference(const Scenario& s, std::span<const double> powers,
                                       const FadingModel& f);

}  // namespace aerolink
