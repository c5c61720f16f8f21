#include <random>

#include "doctest.h"
#include "freqsec/json_io.hpp"
#include "freqsec/types.hpp"
#include "test_helpers.hpp"

using namespace freqsec;

TEST_CASE("portfolio sorts by completion time") {
  Portfolio p;
  p.services = {
      {"FR1", 2000.0, 3.0, 0.0, 0.0},
      {"FR2", 2000.0, 10.0, 0.0, 0.0},
      {"FR3", 2000.0, 5.0, 0.5, 0.0},
      {"FR4", 2000.0, 8.0, 1.0, 0.0},
  };
  p.allocations = {200.0, 980.0, 500.0, 600.0};
  const Portfolio sorted = validate_portfolio(p);

  REQUIRE(sorted.services.size() == 4);
  CHECK(sorted.services[0].completion_time() == doctest::Approx(3.0));
  CHECK(sorted.services[1].completion_time() == doctest::Approx(5.5));
  CHECK(sorted.services[2].completion_time() == doctest::Approx(9.0));
  CHECK(sorted.services[3].completion_time() == doctest::Approx(10.0));
  CHECK(sorted.services[0].id == "FR1");
  CHECK(sorted.services[1].id == "FR3");
  CHECK(sorted.services[2].id == "FR4");
  CHECK(sorted.services[3].id == "FR2");
  // allocations travel with their services
  CHECK(sorted.allocations == std::vector<double>{200.0, 500.0, 600.0, 980.0});
}

TEST_CASE("singleton portfolio is already ordered") {
  Portfolio p;
  p.services = {{"only", 100.0, 10.0, 0.0, 0.0}};
  p.allocations = {50.0};
  const Portfolio sorted = validate_portfolio(p);
  CHECK(sorted.services.size() == 1);
  CHECK(sorted.services[0].completion_time() == doctest::Approx(10.0));
}

TEST_CASE("invalid service parameters are rejected") {
  Portfolio p;
  p.services = {{"bad", 100.0, 0.0, 0.0, 0.0}};
  p.allocations = {0.0};
  CHECK_THROWS_WITH_AS(validate_portfolio(p), doctest::Contains("NonPositiveRamp"), Error);

  p.services = {{"bad", 100.0, 5.0, -1.0, 0.0}};
  CHECK_THROWS_WITH_AS(validate_portfolio(p), doctest::Contains("NegativeDelay"), Error);

  p.services = {{"bad", 100.0, 5.0, 0.0, 0.0}};
  p.allocations = {150.0};
  CHECK_THROWS_WITH_AS(validate_portfolio(p), doctest::Contains("AllocationOutOfBounds"),
                       Error);
  p.allocations = {-1.0};
  CHECK_THROWS_WITH_AS(validate_portfolio(p), doctest::Contains("AllocationOutOfBounds"),
                       Error);
}

TEST_CASE("validation is idempotent on random portfolios") {
  std::mt19937_64 rng(20260810);
  for (int trial = 0; trial < 200; ++trial) {
    const SystemSnapshot snap = testing::random_feasible_snapshot(rng, 8);
    const Portfolio once = snap.portfolio; // already validated
    const Portfolio twice = validate_portfolio(once);
    REQUIRE(twice.services.size() == once.services.size());
    for (std::size_t i = 0; i < once.services.size(); ++i) {
      CHECK(twice.services[i].id == once.services[i].id);
      CHECK(twice.allocations[i] == once.allocations[i]);
    }
  }
}

TEST_CASE("system document round-trips numeric fields bit-exactly") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    io::SystemInput input;
    input.spec = testing::reference_spec();
    input.spec.delta_f_max = 0.5 + noise(rng);
    input.spec.f_nominal = 49.0 + noise(rng);
    input.snapshot = testing::random_feasible_snapshot(rng);
    input.snapshot.h_demand = 1000.0 * noise(rng);
    if (trial % 2 == 0) {
      input.chance = ChanceSpec{5000.0 * noise(rng), 500.0 * noise(rng), 0.99, 0.95};
    }

    const std::string text = io::system_to_json(input).dump();
    const io::SystemInput back = io::system_from_json(nlohmann::json::parse(text));

    CHECK(back.spec.delta_f_max == input.spec.delta_f_max);
    CHECK(back.spec.f_nominal == input.spec.f_nominal);
    CHECK(back.snapshot.h_gen == input.snapshot.h_gen);
    CHECK(back.snapshot.h_demand == input.snapshot.h_demand);
    CHECK(back.snapshot.p_loss == input.snapshot.p_loss);
    REQUIRE(back.snapshot.portfolio.services.size() ==
            input.snapshot.portfolio.services.size());
    for (std::size_t s = 0; s < input.snapshot.portfolio.services.size(); ++s) {
      CHECK(back.snapshot.portfolio.allocations[s] == input.snapshot.portfolio.allocations[s]);
      CHECK(back.snapshot.portfolio.services[s].ramp_duration ==
            input.snapshot.portfolio.services[s].ramp_duration);
      CHECK(back.snapshot.portfolio.services[s].activation_delay ==
            input.snapshot.portfolio.services[s].activation_delay);
    }
    if (input.chance) {
      REQUIRE(back.chance.has_value());
      CHECK(back.chance->h_mu == input.chance->h_mu);
      CHECK(back.chance->sigma == input.chance->sigma);
    }
  }
}

TEST_CASE("malformed system documents are rejected") {
  nlohmann::json j;
  j["spec"] = {{"f0", 50.0}, {"delta_f_max", 0.8}, {"rocof_max", 0.5}, {"p_loss_max", 1800.0}};
  CHECK_THROWS_AS(io::system_from_json(j), Error); // snapshot and services missing

  j["snapshot"] = {{"h_gen", 100000.0}, {"p_loss", 1000.0}};
  j["services"] = nlohmann::json::array();
  CHECK_THROWS_AS(io::system_from_json(j), Error); // empty services

  j["services"] = {{{"id", "FR1"}, {"capacity_max", 100.0}, {"ramp_duration", 10.0}}};
  CHECK_THROWS_AS(io::system_from_json(j), Error); // activation_delay missing
}
