#include "doctest.h"

#include <cmath>
#include <limits>

#include "aerolink/channel.hpp"
#include "support.hpp"

using namespace aerolink;

namespace {

constexpr double kFreeSpaceEta2GHz = 38.4623720993283;

// BS, two relays, UE on a line; no interferers unless added.
Scenario small_line() {
  Scenario s = build_default_scenario(1, 25.0, {.num_uavs = 2, .num_interferers = 0});
  s.primary = {{0, 0, 15}, {60, 0, 30}, {120, 0, 30}, {180, 0, 25}};
  return s;
}

Scenario with_interferer(Scenario s, Position p, double power_w = 1.0) {
  s.interferers.push_back(p);
  s.si_power_w.push_back(power_w);
  s.i_max_w.push_back(dbm_to_watts(-30.0));
  return s;
}

double fd_sir(std::size_t i, std::size_t j, std::size_t v, std::size_t axis, Scenario s,
              const FadingModel& f, double h) {
  Scenario up = s, down = s;
  up.primary[v][axis] += h;
  down.primary[v][axis] -= h;
  return (sir(i, j, up, f) - sir(i, j, down, f)) / (2.0 * h);
}

double fd_rate(std::size_t p, std::size_t q, std::size_t v, std::size_t axis, Scenario s,
               const FadingModel& f, double h) {
  Scenario up = s, down = s;
  up.primary[v][axis] += h;
  down.primary[v][axis] -= h;
  return (edge_rate(p, q, up, f) - edge_rate(p, q, down, f)) / (2.0 * h);
}

}  // namespace

TEST_CASE("path loss reference values") {
  const ChannelParams p;
  CHECK(path_loss_db(LinkClass::A2A, 1.0, p) == p.eta_a2a_db);
  CHECK(free_space_eta_db(2.0e9) == doctest::Approx(kFreeSpaceEta2GHz).epsilon(1e-13));

  const ChannelParams fs = ChannelParams::free_space(2.0e9, 1.0e4);
  CHECK(fs.alpha_a2a == 2.0);
  CHECK(fs.alpha_a2g == 2.0);
  CHECK(path_loss_db(LinkClass::A2G, 1.0, fs) == doctest::Approx(38.46).epsilon(1e-4));
  CHECK(path_loss_db(LinkClass::A2G, 10.0, fs) - path_loss_db(LinkClass::A2G, 1.0, fs) ==
        doctest::Approx(20.0).epsilon(1e-13));
  CHECK(path_loss_db(LinkClass::A2G, 10.0, p) - path_loss_db(LinkClass::A2G, 1.0, p) ==
        doctest::Approx(23.2).epsilon(1e-13));
  CHECK_THROWS_AS(path_loss_db(LinkClass::A2A, 0.0, p), std::domain_error);
}

TEST_CASE("link gain and link classes") {
  Scenario s = small_line();
  s.channel = ChannelParams::free_space(2.0e9, 1.0e4);
  s.primary[2] = {61, 0, 30};  // 1 m from relay 1
  const FadingModel unit = FadingModel::unit();

  const LinkGain g = link_gain(1, 2, s, unit);
  CHECK(g.link_class == LinkClass::A2A);
  CHECK(g.gain_sq == doctest::Approx(std::pow(10.0, -kFreeSpaceEta2GHz / 10.0)).epsilon(1e-12));

  s.primary[2] = {140, 0, 30};
  s.primary[3] = {240, 0, 30};  // 100 m from relay 2
  s.ue_aerial = false;
  const LinkGain g100 = link_gain(2, 3, s, unit);
  CHECK(g100.link_class == LinkClass::A2G);
  CHECK(g100.gain_sq == doctest::Approx(1.4248291449703789e-08).epsilon(1e-12));
  s.ue_aerial = true;
  CHECK(link_gain(2, 3, s, unit).link_class == LinkClass::A2A);
  CHECK(link_gain(0, 1, s, unit).link_class == LinkClass::A2G);

  const FadingModel ray = FadingModel::rayleigh(42);
  for (std::size_t i = 0; i < s.num_primary(); ++i)
    for (std::size_t j = 0; j < s.num_primary(); ++j)
      if (i != j) CHECK(link_gain(i, j, s, ray).gain_sq == link_gain(j, i, s, ray).gain_sq);
  CHECK_THROWS_AS(link_gain(1, 1, s, unit), std::domain_error);
}

TEST_CASE("rayleigh draws are exponential with unit mean") {
  const FadingModel f = FadingModel::rayleigh(5);
  double sum = 0.0, sum_sq = 0.0;
  bool nonnegative = true;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double g = f.gain_sq(static_cast<std::size_t>(k), static_cast<std::size_t>(k) + 100000);
    nonnegative = nonnegative && g >= 0.0;
    sum += g;
    sum_sq += g * g;
  }
  CHECK(nonnegative);
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(sum_sq / n == doctest::Approx(2.0).epsilon(0.03));  // E[X^2] = 2 for Exp(1)
  CHECK(FadingModel::rayleigh(5).gain_sq(3, 9) == FadingModel::rayleigh(5).gain_sq(9, 3));
  CHECK(FadingModel::rayleigh(5).gain_sq(3, 9) != FadingModel::rayleigh(6).gain_sq(3, 9));
}

TEST_CASE("smoothed step") {
  const SafetyParams p;
  CHECK(smoothed_step(0.0, p) == doctest::Approx(0.9990009990009991).epsilon(1e-15));
  CHECK(smoothed_step(-std::log(p.y0) / p.kappa, p) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(smoothed_step(1e6, p) == 0.0);
  CHECK(smoothed_step(10.0, p) == doctest::Approx(3.7200759760208347e-41).epsilon(1e-12));

  for (double y : {0.0, 0.3, 0.69, 1.0, 2.5}) {
    const double h = 1e-6;
    const double fd = (smoothed_step(y + h, p) - smoothed_step(y - h, p)) / (2 * h);
    CHECK(smoothed_step_derivative(y, p) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("sir denominators") {
  Scenario s = small_line();
  const FadingModel unit = FadingModel::unit();

  s.safety.chi = 0.0;
  CHECK_THROWS_WITH_AS(sir(1, 2, s, unit), "zero denominator: no interference and no safety term",
                       std::domain_error);

  // Every third party is farther than 10 r_int from the receiver, so the
  // penalty is a sum of terms no larger than u(10).
  s.safety.chi = 1.0;
  const double u10 = smoothed_step(10.0, s.safety);
  const double den = sir_denominator(1, 2, s, unit);
  CHECK(den > 0.0);
  CHECK(den <= 2.0 * u10);
  CHECK(sir(1, 2, s, unit) == doctest::Approx(s.tx_power_w[1] * link_gain(1, 2, s, unit).gain_sq / den));

  Scenario a = with_interferer(small_line(), {60, 30, 20});
  a.safety.chi = 0.0;
  Scenario b = a;
  b.si_power_w[0] *= 2.0;
  CHECK(sir(1, 2, b, unit) == doctest::Approx(0.5 * sir(1, 2, a, unit)).epsilon(1e-13));
}

TEST_CASE("edge rate") {
  Scenario s = with_interferer(small_line(), {60, 30, 20});
  const FadingModel unit = FadingModel::unit();
  CHECK(edge_rate(1, 1, s, unit) == 0.0);
  CHECK(edge_rate(1, 2, s, unit) == edge_rate(2, 1, s, unit));

  // Pick the transmit powers that make both directions exactly SIR 1.
  s.tx_power_w[1] = 1.0 / sir_per_watt(1, 2, s, unit);
  s.tx_power_w[2] = 1.0 / sir_per_watt(2, 1, s, unit);
  CHECK(edge_rate(1, 2, s, unit) == doctest::Approx(1.0e4).epsilon(1e-13));
}

TEST_CASE("sir gradient matches finite differences") {
  testing::Rng rng(2024);
  const FadingModel fadings[] = {FadingModel::unit(), FadingModel::rayleigh(3)};
  for (int trial = 0; trial < 20; ++trial) {
    Scenario s = testing::random_scenario(rng, {.min_uavs = 2, .max_uavs = 4, .min_sis = 1, .max_sis = 3,
                                                .min_separation_m = 6.0});
    if (trial % 3 == 0) {
      // Cluster two relays so the safety coupling is active.
      s.primary[2] = s.primary[1] + Position{4.0, 3.0, 2.0};
    }
    const FadingModel& f = fadings[trial % 2];
    for (std::size_t i = 0; i < s.num_primary(); ++i) {
      for (std::size_t j = 0; j < s.num_primary(); ++j) {
        if (i == j) continue;
        for (std::size_t v = 1; v + 1 < s.num_primary(); ++v) {
          const Vec3 g = sir_position_gradient(i, j, v, s, f);
          const Vec3 r = rate_position_gradient(i, j, v, s, f);
          // Central differences lose about eps |f| / h to cancellation.
          constexpr double h = 1e-3;
          const double g_noise = 64.0 * 2.2e-16 * std::abs(sir(i, j, s, f)) / h;
          const double r_noise = 64.0 * 2.2e-16 * std::abs(edge_rate(i, j, s, f)) / h;
          double gmax = 0.0, rmax = 0.0;
          Vec3 gfd, rfd;
          for (std::size_t axis = 0; axis < 3; ++axis) {
            gfd[axis] = fd_sir(i, j, v, axis, s, f, h);
            rfd[axis] = fd_rate(i, j, v, axis, s, f, h);
            gmax = std::max(gmax, std::abs(gfd[axis]));
            rmax = std::max(rmax, std::abs(rfd[axis]));
          }
          for (std::size_t axis = 0; axis < 3; ++axis) {
            CHECK(std::abs(g[axis] - gfd[axis]) <= 1e-6 * std::max(std::abs(gfd[axis]), 1e-3 * gmax) + g_noise);
            CHECK(std::abs(r[axis] - rfd[axis]) <= 1e-6 * std::max(std::abs(rfd[axis]), 1e-3 * rmax) + r_noise);
          }
        }
      }
    }
  }
}

TEST_CASE("gradient structure") {
  Scenario s = with_interferer(small_line(), {60, 30, 20});
  const FadingModel unit = FadingModel::unit();

  s.safety.chi = 0.0;
  CHECK(sir_position_gradient(0, 1, 2, s, unit) == Vec3{});
  CHECK(rate_spatial_gradient(0, 1, {2, 0}, s, unit) == 0.0);
  CHECK(rate_position_gradient(1, 1, 2, s, unit) == Vec3{});

  // Relay 1 sits at x=60 and transmits to relay 2 at x=120; moving it toward
  // relay 2 raises the SIR.
  CHECK(sir_spatial_gradient(1, 2, {1, 0}, s, unit) > 0.0);

  s.safety.chi = 1.0;
  s.primary[2] = {64, 2, 30};
  CHECK(sir_position_gradient(0, 1, 2, s, unit) != Vec3{});

  CHECK_THROWS_AS(sir_position_gradient(1, 2, 0, s, unit), std::domain_error);
  CHECK_THROWS_AS(sir_spatial_gradient(1, 2, {1, 3}, s, unit), std::domain_error);
}
