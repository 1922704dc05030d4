#pragma once

#include <cstddef>
#include <cstdint>

#include "aerolink/scenario.hpp"

namespace aerolink {

enum class LinkClass { A2A, A2G };

/// Small-scale fading |g|^2 per unordered node pair.
///
/// UnitGain is pure line of sight. Rayleigh draws |g|^2 ~ Exp(1) (unit-variance
/// circular complex Gaussian) from a hash of (seed, min id, max id), so gains
/// are reciprocal and independent of evaluation order.
struct FadingModel {
  enum class Kind { UnitGain, Rayleigh };
  Kind kind = Kind::UnitGain;
  std::uint64_t seed = 0;

  static FadingModel unit() { return {}; }
  static FadingModel rayleigh(std::uint64_t seed) { return {Kind::Rayleigh, seed}; }

  double gain_sq(std::size_t a, std::size_t b) const;

  friend bool operator==(const FadingModel&, const FadingModel&) = default;
};

struct LinkGain {
  double gain_sq;
  double distance;
  LinkClass link_class;
};

/// Partial derivative target: one axis of one relay UAV (primary index).
struct Coordinate {
  std::size_t node;
  std::size_t axis;
};

LinkClass link_class(const Scenario& s, std::size_t i, std::size_t j);

/// alpha*10*log10(d) + eta for the link class. Throws std::domain_error on d <= 0.
double path_loss_db(LinkClass c, double d, const ChannelParams& p);

/// |h_ij|^2 = |g_ij|^2 / 10^(PL/10) over global node ids.
LinkGain link_gain(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f);

/// zeta * sigma(-kappa*y - ln y0), a decreasing step from zeta to 0.
double smoothed_step(double y, const SafetyParams& p);
double smoothed_step_derivative(double y, const SafetyParams& p);

/// Denominator of SIR_ij: received interferer power at j plus the weighted
/// separation penalty over primary nodes other than i and j.
double sir_denominator(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f);

/// SIR_ij / P_i. SIR is affine in the transmitter's power.
double sir_per_watt(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f);

/// SIR of primary link i -> j. Throws std::domain_error on a zero denominator.
double sir(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f);

/// (B/2)(log2(1+SIR_ij) + log2(1+SIR_ji)); zero when i == j.
double edge_rate(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f);

/// Gradient of SIR_ij with respect to the position of relay UAV v.
Vec3 sir_position_gradient(std::size_t i, std::size_t j, std::size_t v, const Scenario& s,
                           const FadingModel& f);

/// Gradient of edge_rate(p, q) with respect to the position of relay UAV v.
Vec3 rate_position_gradient(std::size_t p, std::size_t q, std::size_t v, const Scenario& s,
                            const FadingModel& f);

double sir_spatial_gradient(std::size_t i, std::size_t j, Coordinate wrt, const Scenario& s,
                            const FadingModel& f);
double rate_spatial_gradient(std::size_t p, std::size_t q, Coordinate wrt, const Scenario& s,
                             const FadingModel& f);

}  // namespace aerolink
