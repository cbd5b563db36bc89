#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace uqeval;
using testutil::record;

TEST_SUITE("aggregate") {
  TEST_CASE("two-member decomposition") {
    const AggregatedPrediction a = aggregate(record("a", 0.0, {{0.0, 1.0}, {2.0, 1.0}}));
    CHECK(a.mean_hat == doctest::Approx(1.0));
    CHECK(a.mvar == doctest::Approx(1.0));
    CHECK(a.varm == doctest::Approx(1.0));
    CHECK(a.tvar == doctest::Approx(2.0));
  }

  TEST_CASE("identical members collapse") {
    const AggregatedPrediction a =
        aggregate(record("a", 0.0, {{0.7, 1.3}, {0.7, 1.3}, {0.7, 1.3}}));
    CHECK(a.mean_hat == doctest::Approx(0.7));
    CHECK(a.mvar == doctest::Approx(1.3));
    CHECK(a.varm == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.tvar == doctest::Approx(1.3));
    REQUIRE(a.epkl.has_value());
    CHECK(*a.epkl == 0.0);
  }

  TEST_CASE("single member: varm exactly zero, epkl absent") {
    const AggregatedPrediction a = aggregate(record("a", 0.0, {{3.0, 0.5}}));
    CHECK(a.mean_hat == 3.0);
    CHECK(a.mvar == 0.5);
    CHECK(a.varm == 0.0);
    CHECK(a.tvar == 0.5);
    CHECK_FALSE(a.epkl.has_value());
  }

  TEST_CASE("zero member variance leaves epkl absent") {
    const AggregatedPrediction a = aggregate(record("a", 0.0, {{0.0, 0.0}, {1.0, 1.0}}));
    CHECK_FALSE(a.epkl.has_value());
    CHECK(a.tvar == doctest::Approx(0.75));
  }

  TEST_CASE("tvar decomposes exactly on random records") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t m = 1 + rng() % 10;
      const AggregatedPrediction a = aggregate(testutil::random_record(rng, m));
      CHECK(a.tvar == a.mvar + a.varm);  // exact: tvar is constructed as the sum
    }
  }

  TEST_CASE("translation invariance") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      PredictionRecord r = testutil::random_record(rng, 5);
      const AggregatedPrediction before = aggregate(r);

      const double c = testutil::uniform(rng, -100.0, 100.0);
      r.y_true += c;
      for (MemberPrediction& p : r.members) p.mean += c;
      const AggregatedPrediction after = aggregate(r);

      CHECK(after.mvar == before.mvar);  // untouched by the shift
      CHECK(after.varm == doctest::Approx(before.varm).epsilon(1e-12));
      CHECK(after.tvar == doctest::Approx(before.tvar).epsilon(1e-12));
      CHECK(*after.epkl == doctest::Approx(*before.epkl).epsilon(1e-12));
    }
  }
}

TEST_SUITE("epkl") {
  TEST_CASE("symmetric two-member case") {
    CHECK(epkl(record("a", 0.0, {{0.0, 1.0}, {2.0, 1.0}})) == doctest::Approx(2.0));
  }

  TEST_CASE("identical members give exactly zero") {
    CHECK(epkl(record("a", 0.0, {{0.5, 2.0}, {0.5, 2.0}})) == 0.0);
  }

  TEST_CASE("asymmetric variances") {
    // KL(N(0,1)||N(0,2)) = ln(sqrt 2) + 1/4 - 1/2, KL back = -ln(sqrt 2) + 1/2
    CHECK(epkl(record("a", 0.0, {{0.0, 1.0}, {0.0, 2.0}})) == doctest::Approx(0.125));
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(epkl(record("a", 0.0, {{0.0, 1.0}})), Error);
    CHECK_THROWS_AS(epkl(record("a", 0.0, {{0.0, 0.0}, {1.0, 1.0}})), Error);
  }

  TEST_CASE("closed form matches the ordered-pair double loop") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t m = 2 + rng() % 9;  // M in [2, 10]
      const PredictionRecord r = testutil::random_record(rng, m);
      const double expected = testutil::naive_epkl(r);
      CHECK(epkl(r) == doctest::Approx(expected).epsilon(1e-10));
    }
  }

  TEST_CASE("member permutation invariance") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; ++trial) {
      PredictionRecord r = testutil::random_record(rng, 6);
      const double before = epkl(r);
      std::shuffle(r.members.begin(), r.members.end(), rng);
      CHECK(epkl(r) == doctest::Approx(before).epsilon(1e-12));
    }
  }

  TEST_CASE("non-negative, zero only for identical members") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
      const PredictionRecord r = testutil::random_record(rng, 2 + rng() % 5);
      CHECK(epkl(r) > 0.0);  // random distinct members
    }
    const PredictionRecord same = record("a", 0.0, {{1.0, 0.3}, {1.0, 0.3}, {1.0, 0.3}});
    CHECK(epkl(same) == 0.0);
  }
}

TEST_SUITE("uncertainty_vector") {
  TEST_CASE("tvar over three records") {
    std::mt19937_64 rng(16);
    const EvaluationSet set = testutil::random_set(rng, 3, 4);
    const UncertaintyVector v = uncertainty_vector(set, Measure::tvar);
    REQUIRE(v.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      const AggregatedPrediction a = aggregate(set[i]);
      CHECK(v.values[i] == a.mvar + a.varm);
    }
  }

  TEST_CASE("epkl needs an ensemble") {
    const EvaluationSet single = validate_set({record("a", 0.0, {{0.0, 1.0}})});
    CHECK_THROWS_AS(uncertainty_vector(single, Measure::epkl), Error);
  }

  TEST_CASE("raw variance is the single-model measure") {
    const EvaluationSet single = validate_set(
        {record("a", 0.0, {{0.0, 0.25}}), record("b", 0.0, {{0.0, 4.0}})});
    const UncertaintyVector v = uncertainty_vector(single, Measure::variance);
    CHECK(v.values == std::vector<double>{0.25, 4.0});

    std::mt19937_64 rng(17);
    const EvaluationSet ensemble = testutil::random_set(rng, 3, 2);
    CHECK_THROWS_AS(uncertainty_vector(ensemble, Measure::variance), Error);
  }

  TEST_CASE("llfu is routed elsewhere") {
    const EvaluationSet single = validate_set({record("a", 0.0, {{0.0, 1.0}})});
    CHECK_THROWS_AS(uncertainty_vector(single, Measure::llfu), Error);
  }

  TEST_CASE("epkl zero-variance reports the record id") {
    const EvaluationSet set = validate_set(
        {record("ok", 0.0, {{0.0, 1.0}, {1.0, 1.0}}), record("degenerate", 0.0, {{0.0, 0.0}, {1.0, 1.0}})});
    try {
      uncertainty_vector(set, Measure::epkl);
      FAIL("expected ZeroVariance");
    } catch (const Error& e) {
      CHECK(e.code() == errc::zero_variance);
      CHECK(std::string(e.what()).find("degenerate") != std::string::npos);
    }
  }

  TEST_CASE("default measure switches on member count") {
    const EvaluationSet single = validate_set({record("a", 0.0, {{0.0, 1.0}})});
    std::mt19937_64 rng(18);
    const EvaluationSet ensemble = testutil::random_set(rng, 2, 3);
    CHECK(default_measure(single) == Measure::variance);
    CHECK(default_measure(ensemble) == Measure::tvar);
  }
}
