#include <cmath>
#include <random>

#include "doctest.h"
#include "freqsec/dynamics.hpp"
#include "test_helpers.hpp"

using namespace freqsec;
using namespace freqsec::testing;

namespace {

// independent oracle: trapezoid quadrature of the swing equation at 1 ms
double delta_f_quadrature(double t, const SystemSnapshot& snap, const SecuritySpec& spec,
                          double dt = 1e-3) {
  double integral = 0.0;
  double prev = dynamics::fr_total(0.0, snap.portfolio) - snap.p_loss;
  double tau = 0.0;
  while (tau < t) {
    const double step = std::min(dt, t - tau);
    const double next = dynamics::fr_total(tau + step, snap.portfolio) - snap.p_loss;
    integral += 0.5 * (prev + next) * step;
    prev = next;
    tau += step;
  }
  return spec.f_nominal / (2.0 * snap.total_inertia()) * integral;
}

}  // namespace

TEST_CASE("decompose: reference portfolio breakpoints") {
  const auto dec = dynamics::decompose(reference_portfolio());
  const std::vector<double> expected = {0.5, 1.0, 3.0, 5.5, 9.0, 10.0};
  REQUIRE(dec.breakpoints.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(dec.breakpoints[i] == doctest::Approx(expected[i]));
  }
  // segment (5.5, 9]: FR1 and FR3 complete, FR2 and FR4 ramping
  const auto& iv = dec.intervals[4];
  CHECK(iv.t_start == doctest::Approx(5.5));
  CHECK(iv.t_end == doctest::Approx(9.0));
  CHECK(iv.complete == std::vector<std::size_t>{0, 1});
  CHECK(iv.ramping == std::vector<std::size_t>{2, 3});
  CHECK(iv.slope == doctest::Approx(980.0 / 10.0 + 600.0 / 8.0));
  CHECK(iv.delivered == doctest::Approx(700.0));
}

TEST_CASE("decompose: two undelayed services") {
  Portfolio p;
  p.services = {{"a", 1000.0, 1.0, 0.0, 0.0}, {"b", 1000.0, 10.0, 0.0, 0.0}};
  p.allocations = {100.0, 400.0};
  const auto dec = dynamics::decompose(validate_portfolio(p));
  REQUIRE(dec.breakpoints.size() == 2);
  CHECK(dec.breakpoints[0] == doctest::Approx(1.0));
  CHECK(dec.breakpoints[1] == doctest::Approx(10.0));
  CHECK(dec.intervals[0].ramping == std::vector<std::size_t>{0, 1});
  CHECK(dec.intervals[0].complete.empty());
  CHECK(dec.intervals[1].complete == std::vector<std::size_t>{0});
  CHECK(dec.intervals[1].ramping == std::vector<std::size_t>{1});
}

TEST_CASE("decompose: leading dead interval for a delayed service") {
  Portfolio p;
  p.services = {{"late", 1000.0, 3.0, 2.0, 0.0}};
  p.allocations = {300.0};
  const auto dec = dynamics::decompose(validate_portfolio(p));
  REQUIRE(dec.breakpoints.size() == 2);
  CHECK(dec.breakpoints[0] == doctest::Approx(2.0));
  CHECK(dec.breakpoints[1] == doctest::Approx(5.0));
  CHECK(dec.intervals[0].slope == doctest::Approx(0.0));
  CHECK(dec.intervals[0].ramping.empty());
  CHECK(dec.intervals[1].slope == doctest::Approx(100.0));
}

TEST_CASE("decompose rejects an empty portfolio") {
  CHECK_THROWS_WITH_AS(dynamics::decompose(Portfolio{}), doctest::Contains("EmptyPortfolio"),
                       Error);
}

TEST_CASE("fr_total: reference values") {
  const Portfolio p = reference_portfolio();
  CHECK(dynamics::fr_total(3.0, p) == doctest::Approx(894.0).epsilon(1e-12));
  CHECK(dynamics::fr_total(0.0, p) == 0.0);
  CHECK(dynamics::fr_total(20.0, p) == doctest::Approx(2280.0).epsilon(1e-12));
  CHECK(dynamics::fr_total(5.5, p) == doctest::Approx(1576.5).epsilon(1e-12));
}

TEST_CASE("fr_total is non-decreasing and piecewise affine") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const SystemSnapshot snap = random_feasible_snapshot(rng, 10);
    const auto dec = dynamics::decompose(snap.portfolio);
    double prev = 0.0;
    for (double t = 0.0; t <= dec.breakpoints.back() + 1.0; t += 0.05) {
      const double fr = dynamics::fr_total(t, snap.portfolio);
      CHECK(fr >= prev - 1e-9);
      prev = fr;
    }
    // slopes agree with centered finite differences at interval midpoints;
    // the response is affine inside the interval, so a quarter-width step is
    // exact up to float cancellation
    for (const auto& iv : dec.intervals) {
      const double mid = 0.5 * (iv.t_start + iv.t_end);
      const double fr_mid = dynamics::fr_total(mid, snap.portfolio);
      CHECK(fr_mid == doctest::Approx(iv.fr_at(mid)).epsilon(1e-12));
      if (iv.t_end - iv.t_start < 0.5) continue; // cancellation dominates on slivers
      const double h = 0.25 * (iv.t_end - iv.t_start);
      const double fd = (dynamics::fr_total(mid + h, snap.portfolio) -
                         dynamics::fr_total(mid - h, snap.portfolio)) /
                        (2.0 * h);
      const double tol = 1e-12 * std::max({1.0, iv.slope, fr_mid});
      CHECK(std::abs(fd - iv.slope) <= tol);
    }
  }
}

TEST_CASE("delta_f: pure linear decline with no response") {
  SystemSnapshot snap;
  snap.h_gen = 180000.0;
  snap.p_loss = 1800.0;
  snap.portfolio.services = {{"idle", 100.0, 10.0, 0.0, 0.0}};
  snap.portfolio.allocations = {0.0};
  const SecuritySpec spec = reference_spec();
  CHECK(dynamics::delta_f(1.0, snap, spec) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(dynamics::delta_f(4.0, snap, spec) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(dynamics::delta_f(0.0, snap, spec) == 0.0);
}

TEST_CASE("delta_f: single service meeting the loss at completion") {
  SystemSnapshot snap;
  snap.h_gen = 150000.0;
  snap.p_loss = 1000.0;
  snap.portfolio.services = {{"solo", 2000.0, 10.0, 0.0, 0.0}};
  snap.portfolio.allocations = {1000.0};
  const SecuritySpec spec = reference_spec();
  CHECK(dynamics::delta_f(10.0, snap, spec) == doctest::Approx(-5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("delta_f: zero inertia is an error") {
  SystemSnapshot snap;
  snap.p_loss = 100.0;
  snap.portfolio.services = {{"s", 10.0, 1.0, 0.0, 0.0}};
  snap.portfolio.allocations = {10.0};
  CHECK_THROWS_WITH_AS(dynamics::delta_f(1.0, snap, reference_spec()),
                       doctest::Contains("ZeroInertia"), Error);
}

TEST_CASE("delta_f agrees with trapezoid quadrature of the swing equation") {
  std::mt19937_64 rng(2026);
  const SecuritySpec spec = reference_spec();
  for (int trial = 0; trial < 25; ++trial) {
    const SystemSnapshot snap = random_feasible_snapshot(rng, 10);
    const double horizon = dynamics::decompose(snap.portfolio).breakpoints.back();
    for (double frac : {0.3, 0.7, 1.0, 1.3}) {
      const double t = frac * horizon;
      const double closed = dynamics::delta_f(t, snap, spec);
      const double quad = delta_f_quadrature(t, snap, spec);
      CHECK(std::abs(closed - quad) <= 1e-6);
    }
  }
}

TEST_CASE("rocof_initial values") {
  SystemSnapshot snap;
  snap.h_gen = 90000.0;
  snap.p_loss = 1800.0;
  snap.portfolio.services = {{"s", 10.0, 1.0, 0.0, 0.0}};
  snap.portfolio.allocations = {0.0};
  const SecuritySpec spec = reference_spec();
  CHECK(dynamics::rocof_initial(snap, spec) == doctest::Approx(0.5).epsilon(1e-12));

  snap.p_loss = 0.0;
  CHECK(dynamics::rocof_initial(snap, spec) == 0.0);

  CHECK(dynamics::rocof_initial(reference_snapshot(), spec) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("nadir: single service exactly covering the loss") {
  SystemSnapshot snap;
  snap.h_gen = 150000.0;
  snap.p_loss = 1000.0;
  snap.portfolio.services = {{"solo", 2000.0, 10.0, 0.0, 0.0}};
  snap.portfolio.allocations = {1000.0};
  const auto point = dynamics::nadir(snap, reference_spec());
  CHECK(point.time == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(point.interval == 0);
  CHECK(point.depth == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("nadir: reference operating point") {
  const auto point = dynamics::nadir(reference_snapshot(), reference_spec());
  CHECK(point.time == doctest::Approx(1175.0 / 173.0).epsilon(1e-12));
  CHECK(point.interval == 4); // the (5.5, 9] segment
  // binding operating point: depth within 0.5% of the 0.8 Hz limit
  CHECK(point.depth == doctest::Approx(0.8).epsilon(0.005));
  CHECK(point.depth < 0.8);
}

TEST_CASE("nadir: dead leading interval is skipped") {
  SystemSnapshot snap;
  snap.h_gen = 100000.0;
  snap.p_loss = 500.0;
  snap.portfolio.services = {{"late", 2000.0, 4.0, 2.0, 0.0}};
  snap.portfolio.allocations = {1000.0};
  const auto point = dynamics::nadir(snap, reference_spec());
  // crossing happens inside (2, 6], never inside the flat (0, 2]
  CHECK(point.time == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(point.interval == 1);
}

TEST_CASE("nadir: infeasible steady state is reported, not faked") {
  SystemSnapshot snap;
  snap.h_gen = 100000.0;
  snap.p_loss = 2000.0;
  snap.portfolio.services = {{"small", 2000.0, 5.0, 0.0, 0.0}};
  snap.portfolio.allocations = {1500.0};
  CHECK_THROWS_WITH_AS(dynamics::nadir(snap, reference_spec()),
                       doctest::Contains("SteadyStateInfeasible"), Error);
}

TEST_CASE("nadir: zero loss means no excursion") {
  SystemSnapshot snap = reference_snapshot();
  snap.p_loss = 0.0;
  const auto point = dynamics::nadir(snap, reference_spec());
  CHECK(point.time == 0.0);
  CHECK(point.depth == 0.0);
  CHECK(point.interval == 0);
}

TEST_CASE("property: response meets the loss at the nadir and the slope turns") {
  std::mt19937_64 rng(31337);
  const SecuritySpec spec = reference_spec();
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const SystemSnapshot snap = random_feasible_snapshot(rng);
    const auto point = dynamics::nadir(snap, spec);
    const double tol = 1e-9 * snap.p_loss;
    CHECK(dynamics::fr_total(point.time, snap.portfolio) >= snap.p_loss - tol);
    // immediately before the nadir the system is still in deficit
    if (point.time > 1e-6) {
      CHECK(dynamics::fr_total(point.time * (1.0 - 1e-7), snap.portfolio) <=
            snap.p_loss + tol);
      CHECK(std::abs(dynamics::delta_f(point.time, snap, spec)) >=
            std::abs(dynamics::delta_f(point.time * (1.0 - 1e-4), snap, spec)) - 1e-12);
      ++checked;
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("property: zero-delay nadir matches the undelayed closed form") {
  std::mt19937_64 rng(424242);
  const SecuritySpec spec = reference_spec();
  for (int trial = 0; trial < 300; ++trial) {
    const SystemSnapshot snap = random_feasible_snapshot(rng, 6, /*allow_delays=*/false);
    const auto point = dynamics::nadir(snap, spec);
    const auto dec = dynamics::decompose(snap.portfolio);
    const auto& iv = dec.intervals[std::min<std::size_t>(point.interval, dec.intervals.size() - 1)];
    // t_nadir = (P_L - sum_K R) / (sum_L R/T) with zero delays
    double delivered = 0.0;
    for (std::size_t k : iv.complete) delivered += snap.portfolio.allocations[k];
    double slope = 0.0;
    for (std::size_t l : iv.ramping) {
      slope += snap.portfolio.allocations[l] / snap.portfolio.services[l].ramp_duration;
    }
    if (slope > 0.0) {
      CHECK(point.time ==
            doctest::Approx((snap.p_loss - delivered) / slope).epsilon(1e-12));
    }
  }
}
