#include <cmath>
#include <random>

#include "doctest.h"
#include "freqsec/dynamics.hpp"
#include "freqsec/security.hpp"
#include "test_helpers.hpp"

using namespace freqsec;
using namespace freqsec::testing;

TEST_CASE("RoCoF margin") {
  const SecuritySpec spec = reference_spec();
  SystemSnapshot snap;
  snap.h_gen = 90000.0;
  snap.p_loss = 1800.0;
  CHECK(security::check_rocof(snap, spec) == doctest::Approx(0.0).scale(1.0));

  snap.p_loss = 0.0;
  CHECK(security::check_rocof(snap, spec) == doctest::Approx(90000.0));

  CHECK(security::check_rocof(reference_snapshot(), spec) == doctest::Approx(90000.0));
}

TEST_CASE("steady-state margin") {
  const Portfolio ref = reference_portfolio();
  CHECK(security::check_steady_state(ref, 1800.0) == doctest::Approx(480.0));
  CHECK(security::check_steady_state(ref, 2280.0) == doctest::Approx(0.0).scale(1.0));

  Portfolio empty_alloc;
  empty_alloc.services = {{"s", 100.0, 5.0, 0.0, 0.0}};
  empty_alloc.allocations = {0.0};
  CHECK(security::check_steady_state(empty_alloc, 500.0) == doctest::Approx(-500.0));
}

TEST_CASE("nadir interval bracketing") {
  CHECK(security::nadir_interval_conditions(reference_portfolio(), 1800.0) == 4);

  Portfolio solo;
  solo.services = {{"solo", 2000.0, 10.0, 0.0, 0.0}};
  solo.allocations = {1000.0};
  solo = validate_portfolio(solo);
  CHECK(security::nadir_interval_conditions(solo, 1000.0) == 0); // last == only

  CHECK(security::nadir_interval_conditions(reference_portfolio(), 0.0) == 0);

  CHECK_THROWS_WITH_AS(security::nadir_interval_conditions(solo, 1500.0),
                       doctest::Contains("SteadyStateInfeasible"), Error);
}

TEST_CASE("nadir cone terms at the reference point") {
  const Portfolio p = reference_portfolio();
  const SecuritySpec spec = reference_spec();
  const auto terms = security::nadir_soc_terms(p, 1800.0, spec, 4);

  CHECK(terms.y1 == doctest::Approx(-1101.5625).epsilon(1e-12));
  CHECK(terms.y2 == doctest::Approx(173.0).epsilon(1e-12));
  CHECK(terms.y3_sq == doctest::Approx(431445.3125).epsilon(1e-12));

  const double lhs = terms.lhs(180000.0, 50.0);
  CHECK(lhs == doctest::Approx(432229.6875).epsilon(1e-12));
  const double slack_ratio = (lhs - terms.y3_sq) / terms.y3_sq;
  CHECK(slack_ratio == doctest::Approx(0.0018).epsilon(0.02));
  CHECK(slack_ratio < 0.005); // the published point makes the cone bind
}

TEST_CASE("nadir cone violated when the response is too slow") {
  Portfolio solo;
  solo.services = {{"solo", 2000.0, 10.0, 0.0, 0.0}};
  solo.allocations = {1000.0};
  solo = validate_portfolio(solo);
  const auto terms = security::nadir_soc_terms(solo, 1000.0, reference_spec(), 0);
  CHECK(terms.lhs(150000.0, 50.0) == doctest::Approx(300000.0));
  CHECK(terms.y3_sq == doctest::Approx(312500.0));
  CHECK(terms.slack(150000.0, 50.0) < 0.0);
}

TEST_CASE("zero-delay terms reduce to the undelayed cone exactly") {
  std::mt19937_64 rng(555);
  const SecuritySpec spec = reference_spec();
  for (int trial = 0; trial < 300; ++trial) {
    const SystemSnapshot snap = random_feasible_snapshot(rng, 6, /*allow_delays=*/false);
    const std::size_t n = security::nadir_interval_conditions(snap.portfolio, snap.p_loss);
    const auto terms = security::nadir_soc_terms(snap.portfolio, snap.p_loss, spec, n);

    const auto dec = dynamics::decompose(snap.portfolio);
    const auto& iv = dec.intervals[n];
    double y1 = 0.0, y2 = 0.0, delivered = 0.0;
    for (std::size_t k : iv.complete) {
      y1 -= snap.portfolio.allocations[k] * snap.portfolio.services[k].ramp_duration /
            (4.0 * spec.delta_f_max);
      delivered += snap.portfolio.allocations[k];
    }
    for (std::size_t l : iv.ramping) {
      y2 += snap.portfolio.allocations[l] / snap.portfolio.services[l].ramp_duration;
    }
    const double y3_sq =
        (snap.p_loss - delivered) * (snap.p_loss - delivered) / (4.0 * spec.delta_f_max);

    CHECK(terms.y1 == doctest::Approx(y1).epsilon(1e-12));
    CHECK(terms.y2 == doctest::Approx(y2).epsilon(1e-12));
    CHECK(terms.y3_sq == doctest::Approx(y3_sq).epsilon(1e-12));
  }
}

TEST_CASE("probit: frozen values and bisection oracle") {
  CHECK(security::normal_inv_cdf(0.5) == doctest::Approx(0.0).scale(1.0));
  CHECK(security::normal_inv_cdf(0.99) == doctest::Approx(2.3263479).epsilon(1e-6));
  CHECK(security::normal_inv_cdf(0.01) == doctest::Approx(-2.3263479).epsilon(1e-6));
  CHECK_THROWS_WITH_AS(security::normal_inv_cdf(0.0),
                       doctest::Contains("ProbabilityOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(security::normal_inv_cdf(1.0),
                       doctest::Contains("ProbabilityOutOfRange"), Error);

  // independent oracle: bisection on the erfc-based CDF
  for (double p : {1e-6, 1e-3, 0.05, 0.25, 0.5, 0.9, 0.975, 0.99, 0.999, 1.0 - 1e-7}) {
    double lo = -10.0, hi = 10.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (security::normal_cdf(mid) < p ? lo : hi) = mid;
    }
    const double oracle = 0.5 * (lo + hi);
    CHECK(security::normal_inv_cdf(p) == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
    CHECK(std::abs(security::normal_cdf(security::normal_inv_cdf(p)) - p) <= 1e-9);
  }

  // antisymmetry
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pd(1e-9, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double p = pd(rng);
    CHECK(security::normal_inv_cdf(p) ==
          doctest::Approx(-security::normal_inv_cdf(1.0 - p)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("chance-adjusted inertia") {
  ChanceSpec chance;
  chance.h_mu = 5000.0;
  chance.sigma = 0.0;
  chance.alpha = chance.eta = 0.99;
  CHECK(security::chance_adjusted_inertia(1000.0, chance, 0.99) == doctest::Approx(6000.0));

  chance.sigma = 1000.0;
  CHECK(security::chance_adjusted_inertia(1000.0, chance, 0.5) == doctest::Approx(6000.0));
  CHECK(security::chance_adjusted_inertia(0.0, chance, 0.99) ==
        doctest::Approx(2673.65).epsilon(1e-5));
}

TEST_CASE("chance adjustment is monotone in confidence and spread") {
  ChanceSpec chance;
  chance.h_mu = 10000.0;
  chance.sigma = 2000.0;
  double prev = security::chance_adjusted_inertia(0.0, chance, 0.5);
  for (double p : {0.6, 0.8, 0.9, 0.99, 0.999}) {
    const double cur = security::chance_adjusted_inertia(0.0, chance, p);
    CHECK(cur < prev);
    prev = cur;
  }
  prev = security::chance_adjusted_inertia(0.0, ChanceSpec{10000.0, 0.0, 0.99, 0.99}, 0.9);
  for (double sigma : {500.0, 1000.0, 4000.0, 8000.0}) {
    const double cur =
        security::chance_adjusted_inertia(0.0, ChanceSpec{10000.0, sigma, 0.99, 0.99}, 0.9);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("assess: reference point is secure with a thin cone slack") {
  const SecurityReport report = security::assess(reference_snapshot(), reference_spec());
  CHECK(report.rocof_ok);
  CHECK(report.steady_state_ok);
  CHECK(report.nadir_ok);
  CHECK(report.all_ok());
  CHECK(report.rocof_value == doctest::Approx(0.25));
  CHECK(report.steady_state_margin == doctest::Approx(480.0));
  CHECK(report.nadir_interval == 4);
  const double ratio = report.soc_slack / 431445.3125;
  CHECK(ratio == doctest::Approx(0.0018).epsilon(0.02));
}

TEST_CASE("assess: demand-inertia uncertainty can break the nadir") {
  ChanceSpec chance;
  chance.h_mu = 0.0;
  chance.sigma = 5000.0;
  chance.alpha = chance.eta = 0.99;
  const SecurityReport report =
      security::assess(reference_snapshot(), reference_spec(), chance);
  // effective inertia drops by about 11632 MW·s, below the binding point
  CHECK_FALSE(report.nadir_ok);
  CHECK(report.rocof_ok); // 168 GW·s still clears the 90 GW·s RoCoF floor
  CHECK(report.steady_state_ok);
}

TEST_CASE("assess: zero loss is trivially secure") {
  SystemSnapshot snap = reference_snapshot();
  snap.p_loss = 0.0;
  const SecurityReport report = security::assess(snap, reference_spec());
  CHECK(report.all_ok());
  CHECK(report.nadir_depth == 0.0);
}

TEST_CASE("equivalence: cone test matches the closed-form depth test") {
  std::mt19937_64 rng(123456);
  const SecuritySpec spec = reference_spec();
  int disagreements = 0;
  int boundary_band = 0;
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    const SystemSnapshot snap = random_feasible_snapshot(rng);
    const SecurityReport report = security::assess(snap, spec);
    const auto point = dynamics::nadir(snap, spec);
    const bool depth_ok = point.depth <= spec.delta_f_max;
    if (report.nadir_ok != depth_ok) {
      // only permissible inside the relative boundary band
      if (std::abs(point.depth - spec.delta_f_max) <= 1e-9 * spec.delta_f_max) {
        ++boundary_band;
      } else {
        ++disagreements;
      }
    }
  }
  CHECK(disagreements == 0);
  CHECK(boundary_band <= 2);
}

TEST_CASE("monte carlo: binding chance constraints hit their confidence") {
  // construct a snapshot whose eta-adjusted RoCoF constraint binds exactly
  const SecuritySpec spec = reference_spec();
  ChanceSpec chance;
  chance.h_mu = 20000.0;
  chance.sigma = 2000.0;
  chance.alpha = chance.eta = 0.99;
  const double phi = security::normal_inv_cdf(0.99);

  SystemSnapshot snap;
  snap.p_loss = 1400.0;
  snap.portfolio.services = {{"fast", 3000.0, 6.0, 0.0, 0.0}};
  snap.portfolio.allocations = {2000.0};
  const double requirement = snap.p_loss * spec.f_nominal / (2.0 * spec.rocof_max);
  snap.h_gen = requirement - chance.h_mu + phi * chance.sigma;
  CHECK(security::chance_adjusted_inertia(snap.h_gen, chance, chance.eta) ==
        doctest::Approx(requirement).epsilon(1e-12));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> hd(chance.h_mu, chance.sigma);
  const int n_samples = 20000;
  int rocof_hits = 0;
  for (int i = 0; i < n_samples; ++i) {
    SystemSnapshot sample = snap;
    sample.h_demand = hd(rng);
    if (security::check_rocof(sample, spec) >= 0.0) ++rocof_hits;
  }
  const double freq = double(rocof_hits) / n_samples;
  const double band = 4.0 * std::sqrt(0.99 * 0.01 / n_samples);
  CHECK(std::abs(freq - 0.99) <= band);
}
