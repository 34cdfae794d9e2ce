#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>

#include "flock/contraction.hpp"
#include "flock/robustness.hpp"

#include "fixtures.hpp"

using namespace flock;

namespace {

/* Gain product over a dwell vector, for oracle-side evaluation. */
double gain_product(int m, const std::vector<int>& alphas, const std::vector<double>& tau) {
  double c = layer_gain(0, tau[0], m, 0);
  for (std::size_t k = 1; k < tau.size(); ++k) {
    c *= layer_gain(static_cast<int>(k), tau[k], m, alphas[k - 1]);
  }
  return c;
}

}  // namespace

TEST_CASE("layer gains vanish at zero dwell time and stay below one") {
  for (int m = 1; m <= 4; ++m) {
    CHECK(layer_gain(0, 0.0, m, 0) == 0.0);
    for (int alpha = 1; alpha <= m; ++alpha) {
      CHECK(layer_gain(1, 0.0, m, alpha) == 0.0);
      for (double tau : {0.1, 1.0, 8.0}) {
        const double g = layer_gain(1, tau, m, alpha);
        CHECK(g >= 0.0);
        CHECK(g < 1.0);
      }
      // saturates to 1 at double precision for huge dwell times, never above
      CHECK(layer_gain(1, 80.0, m, alpha) <= 1.0);
    }
  }
}

TEST_CASE("layer gain reference values") {
  // m = 1: c_1(tau) = 1 - e^{-tau}, c_0(tau) = (1 - e^{-2 tau}) / 2
  CHECK(layer_gain(1, 1.0239, 1, 1) == doctest::Approx(0.6408).epsilon(1e-4));
  CHECK(layer_gain(0, 0.7596, 1, 0) == doctest::Approx(0.3906).epsilon(1e-4));
}

TEST_CASE("stable and direct gain forms agree") {
  // e^{-(m-a) tau} (1 - e^{-a tau}) == e^{-m tau} (e^{a tau} - 1)
  std::mt19937 rng(211);
  std::uniform_real_distribution<double> dwell(0.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 5);
    const int alpha = 1 + static_cast<int>(rng() % m);
    const double tau = dwell(rng);
    const double direct = std::exp(-m * tau) * (std::exp(alpha * tau) - 1.0);
    CHECK(layer_gain(1, tau, m, alpha) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("layer gain input validation") {
  CHECK_THROWS_AS(layer_gain(0, -0.5, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(layer_gain(1, 1.0, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(layer_gain(1, 1.0, 2, 3), std::invalid_argument);
}

TEST_CASE("schedule for the depth-2 single-flow hierarchy") {
  const std::vector<int> alphas{1};
  const ContractionSchedule s = solve_schedule(1, alphas);
  CHECK(s.period == doctest::Approx(1.78264009862144222).epsilon(1e-9));
  CHECK(s.dwell_times[0] == doctest::Approx(0.75923994581251938).epsilon(1e-9));
  CHECK(s.dwell_times[1] == doctest::Approx(1.02340015280892284).epsilon(1e-9));
  CHECK(s.gain == doctest::Approx(0.25015135843166002).epsilon(1e-9));
  CHECK(s.ratio == doctest::Approx(0.14032633879665783).epsilon(1e-9));
  CHECK_FALSE(s.depth1_convention);
}

TEST_CASE("dwell times sum to the period") {
  std::mt19937 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 5);
    const int depth = 1 + static_cast<int>(rng() % 6);
    std::vector<int> alphas(depth - 1);
    for (int& a : alphas) a = 1 + static_cast<int>(rng() % m);
    const ContractionSchedule s = solve_schedule(m, alphas);
    double sum = 0.0;
    for (double tau : s.dwell_times) {
      CHECK(tau > 0.0);
      sum += tau;
    }
    CHECK(sum == doctest::Approx(s.period).epsilon(1e-10));
    CHECK(s.gain > 0.0);
    CHECK(s.gain < 1.0);
    CHECK(s.gain ==
          doctest::Approx(gain_product(m, alphas, s.dwell_times)).epsilon(1e-12));
  }
}

TEST_CASE("period satisfies the stationarity equation") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 5);
    const int depth = 2 + static_cast<int>(rng() % 5);
    std::vector<int> alphas(depth - 1);
    for (int& a : alphas) a = 1 + static_cast<int>(rng() % m);
    const ContractionSchedule s = solve_schedule(m, alphas);
    // log residual of e^T = ((m+1)T+1)^{1/(m+1)} prod ((mT+1)/((m-a)T+1))^{1/a}
    double rhs = std::log1p((m + 1) * s.period) / (m + 1);
    for (int a : alphas) {
      rhs += std::log((m * s.period + 1.0) / ((m - a) * s.period + 1.0)) / a;
    }
    CHECK(std::abs(rhs - s.period) < 1e-10);
  }
}

TEST_CASE("schedule is a stationary point of gain over period") {
  std::mt19937 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const int depth = 2 + static_cast<int>(rng() % 4);
    std::vector<int> alphas(depth - 1);
    for (int& a : alphas) a = 1 + static_cast<int>(rng() % m);
    const ContractionSchedule s = solve_schedule(m, alphas);
    const double base = s.ratio;
    const double h = 1e-6;
    for (int k = 0; k < depth; ++k) {
      std::vector<double> up = s.dwell_times;
      std::vector<double> down = s.dwell_times;
      up[k] += h;
      down[k] -= h;
      const double fu = gain_product(m, alphas, up) / (s.period + h);
      const double fd = gain_product(m, alphas, down) / (s.period - h);
      const double gradient = (fu - fd) / (2.0 * h);
      CHECK(std::abs(gradient) < 1e-6 * base / s.period);
    }
  }
}

TEST_CASE("no feasible dwell vector beats the schedule's ratio") {
  std::mt19937 rng(89);
  std::uniform_real_distribution<double> dwell(1e-3, 6.0);
  const std::vector<int> cases_m{1, 2, 3};
  for (int m : cases_m) {
    std::vector<int> alphas{1, std::min(2, m)};
    const ContractionSchedule s = solve_schedule(m, alphas);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> tau(3);
      for (double& t : tau) t = dwell(rng);
      const double ratio = gain_product(m, alphas, tau) / (tau[0] + tau[1] + tau[2]);
      CHECK(ratio <= s.ratio + 1e-9);
    }
  }
}

TEST_CASE("maximal flow layers need no special casing") {
  for (int m = 1; m <= 4; ++m) {
    const std::vector<int> alphas{m, m};
    const ContractionSchedule s = solve_schedule(m, alphas);
    CHECK(s.period > 0.0);
    CHECK(s.gain > 0.0);
    for (double tau : s.dwell_times) CHECK(std::isfinite(tau));
  }
}

TEST_CASE("depth-1 schedules use the documented fixed-dwell convention") {
  for (int m = 1; m <= 3; ++m) {
    const ContractionSchedule s = solve_schedule(m, {});
    CHECK(s.depth1_convention);
    CHECK(s.dwell_times.size() == 1);
    CHECK(s.dwell_times[0] == doctest::Approx(std::log(2.0) / (m + 1)));
    CHECK(s.gain == doctest::Approx(0.5 / (m + 1)));
    CHECK(s.ratio == doctest::Approx(0.5 / std::log(2.0)));
  }
}

TEST_CASE("solve_schedule validates flows") {
  CHECK_THROWS_AS(solve_schedule(2, std::vector<int>{0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_schedule(2, std::vector<int>{3}), std::invalid_argument);
  CHECK_THROWS_AS(solve_schedule(0, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("bound sweep on the reference line") {
  const BoundResult result = optimize_bound(fixtures::line4_positions(), 2, 1);
  REQUIRE(result.certifiable);
  CHECK(result.best_rho == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(result.best_root == 1);
  CHECK(result.bound == doctest::Approx(0.014032633879665783).epsilon(1e-8));
  // the only surviving candidate rho is the graph robustness; roots 1 and 2
  // both reach every agent there, root 2 with the shallower (better) tree
  REQUIRE(result.table.size() == 2);
  CHECK(result.table[0].root == 0);
  CHECK(result.table[0].depth == 3);
  CHECK(result.table[0].flows == std::vector<int>{1, 1});
  CHECK(result.table[0].bound == doctest::Approx(0.0066054920498912204).epsilon(1e-8));
  CHECK(result.table[1].root == 1);
  CHECK(result.table[1].depth == 2);
}

TEST_CASE("fully symmetric layout collapses the sweep to root selection") {
  // unit square with m = 1: every edge robustness is 0, so the candidate
  // set is the single value rho = 0 and only the root choice matters
  const std::vector<double> square{0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0};
  const BoundResult result = optimize_bound(square, 2, 1);
  REQUIRE(result.certifiable);
  for (const CandidateRow& row : result.table) CHECK(row.rho == 0.0);
  CHECK(result.best_rho == 0.0);
  CHECK(result.bound == 0.0);
  CHECK(result.table.size() >= 2);  // several roots compete at the lone rho
}

TEST_CASE("sweep tables only contain supportable candidates") {
  std::mt19937 rng(97);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const int n = m + 2 + static_cast<int>(rng() % 3);
    const auto positions = fixtures::random_positions(rng, n, 2);
    const BoundResult result = optimize_bound(positions, 2, m);
    if (!result.certifiable) continue;
    for (const CandidateRow& row : result.table) {
      const InteractionGraph core = perturbed_core_graph(positions, 2, m, row.rho);
      CHECK(core.spanning_root() >= 0);
      CHECK(build_hierarchy(core, row.root).ok);
    }
  }
}

TEST_CASE("bound is invariant under rigid motions of the positions") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> shift(-20.0, 20.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const int n = m + 2 + static_cast<int>(rng() % 3);
    const auto positions = fixtures::random_positions(rng, n, 2);
    const BoundResult base = optimize_bound(positions, 2, m);
    const double theta = angle(rng);
    const double ca = std::cos(theta), sa = std::sin(theta);
    const double ox = shift(rng), oy = shift(rng);
    std::vector<double> moved(positions.size());
    for (int i = 0; i < n; ++i) {
      const double x = positions[2 * i], y = positions[2 * i + 1];
      moved[2 * i] = ca * x - sa * y + ox;
      moved[2 * i + 1] = sa * x + ca * y + oy;
    }
    const BoundResult rotated = optimize_bound(moved, 2, m);
    CHECK(base.certifiable == rotated.certifiable);
    if (base.certifiable) {
      CHECK(rotated.bound == doctest::Approx(base.bound).epsilon(1e-9));
      CHECK(rotated.best_root == base.best_root);
    }
  }
}

TEST_CASE("gain-over-period ratio never grows with rho") {
  std::mt19937 rng(103);
  int tables = 0;
  while (tables < 40) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const int n = m + 2 + static_cast<int>(rng() % 4);
    const auto positions = fixtures::random_positions(rng, n, 2);
    const BoundResult result = optimize_bound(positions, 2, m);
    if (!result.certifiable || result.table.size() < 2) continue;
    ++tables;
    // per root, ratios are non-increasing along ascending rho
    for (std::size_t a = 0; a < result.table.size(); ++a) {
      for (std::size_t b = a + 1; b < result.table.size(); ++b) {
        const CandidateRow& lo = result.table[a];
        const CandidateRow& hi = result.table[b];
        if (lo.root != hi.root || lo.rho >= hi.rho) continue;
        const double lo_ratio = lo.degenerate_zero_flow ? 0.0 : lo.schedule.ratio;
        const double hi_ratio = hi.degenerate_zero_flow ? 0.0 : hi.schedule.ratio;
        CHECK(hi_ratio <= lo_ratio + 1e-12);
      }
    }
  }
}
