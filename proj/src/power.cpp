#include "aerolink/power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <stdexcept>

namespace aerolink {

namespace {

struct Caps {
  std::vector<double> value;
  std::vector<Binding> binding;
};

Caps compute_caps(const Scenario& s, const FadingModel& f) {
  const std::size_t n = s.num_primary();
  Caps c;
  c.value.assign(n, s.p_max_w);
  c.binding.assign(n, Binding{BindingKind::PMaxCap, 0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < s.num_interferers(); ++m) {
      const double limit = s.i_max_w[m];
      if (std::isinf(limit)) continue;
      const double cap = limit / link_gain(i, n + m, s, f).gain_sq;
      if (cap < c.value[i]) {
        c.value[i] = cap;
        c.binding[i] = Binding{BindingKind::InterferenceCap, m};
      }
    }
  }
  return c;
}

// Per-watt SIR of both directions of every consecutive line link.
struct LinkTerms {
  std::size_t p, q;
  double spw_pq, spw_qp;
};

}  // namespace

std::vector<double> power_caps(const Scenario& s, const FadingModel& f) {
  return compute_caps(s, f).value;
}

std::vector<std::size_t> line_path(const Scenario& s) {
  const std::size_t n = s.num_primary();
  if (s.topology.size() + 1 != n) throw std::invalid_argument("topology is not a line graph");
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : s.topology) {
    if (e.a >= n || e.b >= n || e.a == e.b) throw std::invalid_argument("topology is not a line graph");
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<std::size_t> path{s.source()};
  std::vector<bool> seen(n, false);
  seen[s.source()] = true;
  while (path.size() < n) {
    const std::size_t u = path.back();
    const std::size_t unseen = static_cast<std::size_t>(
        std::count_if(adj[u].begin(), adj[u].end(), [&](std::size_t v) { return !seen[v]; }));
    if (unseen != 1) throw std::invalid_argument("topology is not a line graph");
    const std::size_t next = *std::find_if(adj[u].begin(), adj[u].end(), [&](std::size_t v) { return !seen[v]; });
    seen[next] = true;
    path.push_back(next);
  }
  if (path.back() != s.sink()) throw std::invalid_argument("line graph does not end at the destination");
  return path;
}

double bottleneck_rate(const Scenario& s, std::span<const double> powers, const FadingModel& f) {
  if (powers.size() != s.num_primary()) throw std::invalid_argument("power count mismatch");
  Scenario sc = s;
  sc.tx_power_w.assign(powers.begin(), powers.end());
  const auto path = line_path(sc);
  double rate = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < path.size(); ++k) rate = std::min(rate, edge_rate(path[k], path[k + 1], sc, f));
  return rate;
}

PowerSolution solve_maxmin(const Scenario& s, const FadingModel& f) {
  const auto path = line_path(s);
  const Caps caps = compute_caps(s, f);
  const double bandwidth = s.channel.bandwidth_hz;

  PowerSolution sol;
  sol.binding = caps.binding;
  sol.feasible = std::all_of(caps.value.begin(), caps.value.end(), [](double c) { return c > 0.0; });
  if (!sol.feasible) {
    sol.powers.resize(caps.value.size());
    std::transform(caps.value.begin(), caps.value.end(), sol.powers.begin(),
                   [](double c) { return std::max(c, 0.0); });
    return sol;
  }

  std::vector<LinkTerms> links;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const std::size_t p = path[k];
    const std::size_t q = path[k + 1];
    links.push_back({p, q, sir_per_watt(p, q, s, f), sir_per_watt(q, p, s, f)});
  }

  // Smallest P_tx with rate(tx->rx at P_tx) + rate(rx->tx at cap_rx) >= 2 eta / B.
  auto required_power = [&](double eta, double spw_tx, double spw_back, double cap_rx) {
    const double back = std::log1p(cap_rx * spw_back) / std::numbers::ln2;
    const double need = 2.0 * eta / bandwidth - back;
    if (need <= 0.0) return 0.0;
    return std::expm1(need * std::numbers::ln2) / spw_tx;
  };
  auto feasible = [&](double eta) {
    for (const LinkTerms& l : links) {
      if (required_power(eta, l.spw_pq, l.spw_qp, caps.value[l.q]) > caps.value[l.p]) return false;
      if (required_power(eta, l.spw_qp, l.spw_pq, caps.value[l.p]) > caps.value[l.q]) return false;
    }
    return true;
  };

  // Everything at the ceiling bounds the optimum from above.
  double hi = std::numeric_limits<double>::infinity();
  for (const LinkTerms& l : links) {
    const double r = 0.5 * bandwidth *
                     (std::log1p(s.p_max_w * l.spw_pq) + std::log1p(s.p_max_w * l.spw_qp)) / std::numbers::ln2;
    hi = std::min(hi, r);
  }
  double lo = 0.0;
  const double width = std::min(1e-6 * bandwidth, 1e-10 * hi);
  int steps = 0;
  while (hi - lo > width && steps < 200) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
    ++steps;
  }

  sol.powers = caps.value;
  sol.eta = lo;
  sol.bisection_steps = steps;
  return sol;
}

InterferenceReport verify_interference(const Scenario& s, std::span<const double> powers,
                                       const FadingModel& f) {
  if (powers.size() != s.num_primary()) throw std::invalid_argument("power count mismatch");
  const std::size_t n = s.num_primary();
  InterferenceReport r;
  r.min_margin_w = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < s.num_interferers(); ++m) {
      InterferenceEntry e;
      e.transmitter = i;
      e.interferer = m;
      e.received_w = powers[i] * link_gain(i, n + m, s, f).gain_sq;
      e.margin_w = s.i_max_w[m] - e.received_w;
      if (e.received_w > s.i_max_w[m] * (1.0 + 1e-12)) r.pass = false;
      r.min_margin_w = std::min(r.min_margin_w, e.margin_w);
      r.entries.push_back(e);
    }
  }
  return r;
}

}  // namespace aerolink
