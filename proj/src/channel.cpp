#include "aerolink/channel.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace aerolink {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Logistic sigma(t) without overflow for large |t|.
double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// d|h|^2/d(position of `mover`) for the link between `a` and `b`, where mover
// is one of the endpoints. gain_sq = G * 10^(-eta/10) * d^-alpha.
Vec3 gain_gradient(const LinkGain& g, const Position& mover, const Position& other,
                   double alpha) {
  const double scale = -alpha * g.gain_sq / (g.distance * g.distance);
  return scale * (mover - other);
}

double alpha_for(LinkClass c, const ChannelParams& p) {
  return c == LinkClass::A2A ? p.alpha_a2a : p.alpha_a2g;
}

void require_primary_pair(const Scenario& s, std::size_t i, std::size_t j) {
  if (i >= s.num_primary() || j >= s.num_primary())
    throw std::out_of_range("link endpoints must be primary nodes");
}

void require_uav(const Scenario& s, std::size_t v) {
  if (!s.is_uav(v)) throw std::domain_error("gradient target is not a relay uav");
}

}  // namespace

double FadingModel::gain_sq(std::size_t a, std::size_t b) const {
  if (kind == Kind::UnitGain) return 1.0;
  const std::uint64_t lo = std::min(a, b);
  const std::uint64_t hi = std::max(a, b);
  const std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(lo)) + hi);
  // u in (0, 1]; -ln(u) is Exp(1), the squared magnitude of CN(0, 1).
  const double u = (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
  return -std::log(u) + 0.0;
}

LinkClass link_class(const Scenario& s, std::size_t i, std::size_t j) {
  return is_aerial(s, i) && is_aerial(s, j) ? LinkClass::A2A : LinkClass::A2G;
}

double path_loss_db(LinkClass c, double d, const ChannelParams& p) {
  if (!(d > 0.0)) throw std::domain_error("nonpositive distance");
  const double eta = c == LinkClass::A2A ? p.eta_a2a_db : p.eta_a2g_db;
  return alpha_for(c, p) * 10.0 * std::log10(d) + eta;
}

LinkGain link_gain(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f) {
  if (i == j) throw std::domain_error("link gain requires distinct nodes");
  const double d = distance(s.position(i), s.position(j));
  if (!(d > 0.0)) throw std::domain_error("coincident node positions");
  const LinkClass c = link_class(s, i, j);
  const double pl_linear = std::pow(10.0, path_loss_db(c, d, s.channel) / 10.0);
  return {f.gain_sq(i, j) / pl_linear, d, c};
}

double smoothed_step(double y, const SafetyParams& p) {
  return p.zeta * logistic(-p.kappa * y - std::log(p.y0));
}

double smoothed_step_derivative(double y, const SafetyParams& p) {
  const double t = -p.kappa * y - std::log(p.y0);
  return -p.kappa * p.zeta * logistic(t) * logistic(-t);
}

double sir_denominator(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f) {
  const std::size_t n = s.num_primary();
  double interference = 0.0;
  for (std::size_t m = 0; m < s.num_interferers(); ++m) {
    interference += s.si_power_w[m] * link_gain(n + m, j, s, f).gain_sq;
  }
  double penalty = 0.0;
  if (s.safety.chi != 0.0) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      penalty += smoothed_step(distance(s.primary[j], s.primary[k]) / s.safety.r_int, s.safety);
    }
  }
  return interference + s.safety.chi * penalty;
}

double sir_per_watt(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f) {
  require_primary_pair(s, i, j);
  const double den = sir_denominator(i, j, s, f);
  if (!(den > 0.0)) throw std::domain_error("zero denominator: no interference and no safety term");
  return link_gain(i, j, s, f).gain_sq / den;
}

double sir(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f) {
  return s.tx_power_w.at(i) * sir_per_watt(i, j, s, f);
}

double edge_rate(std::size_t i, std::size_t j, const Scenario& s, const FadingModel& f) {
  if (i == j) return 0.0;
  const double b = s.channel.bandwidth_hz;
  return 0.5 * b * (std::log1p(sir(i, j, s, f)) + std::log1p(sir(j, i, s, f))) / std::numbers::ln2;
}

Vec3 sir_position_gradient(std::size_t i, std::size_t j, std::size_t v, const Scenario& s,
                           const FadingModel& f) {
  require_primary_pair(s, i, j);
  require_uav(s, v);
  if (i == j) return {};

  const std::size_t n = s.num_primary();
  const SafetyParams& sp = s.safety;
  const LinkGain signal = link_gain(i, j, s, f);
  const double numerator = s.tx_power_w[i] * signal.gain_sq;
  const double denominator = sir_denominator(i, j, s, f);
  if (!(denominator > 0.0)) throw std::domain_error("zero denominator: no interference and no safety term");

  Vec3 d_num{};
  if (v == i || v == j) {
    const Position& mover = s.primary[v];
    const Position& other = s.primary[v == i ? j : i];
    d_num = s.tx_power_w[i] * gain_gradient(signal, mover, other, alpha_for(signal.link_class, s.channel));
  }

  Vec3 d_den{};
  if (v == j) {
    for (std::size_t m = 0; m < s.num_interferers(); ++m) {
      const LinkGain g = link_gain(n + m, j, s, f);
      d_den += s.si_power_w[m] *
               gain_gradient(g, s.primary[j], s.interferers[m], alpha_for(g.link_class, s.channel));
    }
    if (sp.chi != 0.0) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double d = distance(s.primary[j], s.primary[k]);
        const double du = smoothed_step_derivative(d / sp.r_int, sp) / (sp.r_int * d);
        d_den += (sp.chi * du) * (s.primary[j] - s.primary[k]);
      }
    }
  } else if (v != i && sp.chi != 0.0) {
    const double d = distance(s.primary[j], s.primary[v]);
    const double du = smoothed_step_derivative(d / sp.r_int, sp) / (sp.r_int * d);
    d_den = (sp.chi * du) * (s.primary[v] - s.primary[j]);
  }

  const double inv = 1.0 / (denominator * denominator);
  return {(d_num.x * denominator - numerator * d_den.x) * inv,
          (d_num.y * denominator - numerator * d_den.y) * inv,
          (d_num.z * denominator - numerator * d_den.z) * inv};
}

Vec3 rate_position_gradient(std::size_t p, std::size_t q, std::size_t v, const Scenario& s,
                            const FadingModel& f) {
  require_uav(s, v);
  if (p == q) return {};
  const double scale = s.channel.bandwidth_hz / (2.0 * std::numbers::ln2);
  const double w_pq = 1.0 / (1.0 + sir(p, q, s, f));
  const double w_qp = 1.0 / (1.0 + sir(q, p, s, f));
  const Vec3 g_pq = sir_position_gradient(p, q, v, s, f);
  const Vec3 g_qp = sir_position_gradient(q, p, v, s, f);
  return scale * (w_pq * g_pq + w_qp * g_qp);
}

double sir_spatial_gradient(std::size_t i, std::size_t j, Coordinate wrt, const Scenario& s,
                            const FadingModel& f) {
  if (wrt.axis > 2) throw std::domain_error("axis must be 0, 1 or 2");
  return sir_position_gradient(i, j, wrt.node, s, f)[wrt.axis];
}

double rate_spatial_gradient(std::size_t p, std::size_t q, Coordinate wrt, const Scenario& s,
                             const FadingModel& f) {
  if (wrt.axis > 2) throw std::domain_error("axis must be 0, 1 or 2");
  return rate_position_gradient(p, q, wrt.node, s, f)[wrt.axis];
}

}  // namespace aerolink
