#include <catch_amalgamated.hpp>

#include "affq/verify.hpp"

TEST_CASE("run configuration validation") {
  affq::RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.tol.rk4 = 0.0;
  CHECK_THROWS_AS(c.validate(), affq::ParseError);
  c = {};
  c.sigma = 2;
  CHECK_THROWS_AS(c.validate(), affq::ParseError);
  c = {};
  c.format = "xml";
  CHECK_THROWS_AS(c.validate(), affq::ParseError);
}

TEST_CASE("config JSON overlays defaults and round-trips") {
  affq::RunConfig c;
  affq::merge_config(c, affq::json::parse(R"({"seed": 7, "sigma": -1, "evolution": "rk4",
                                                "tolerances": {"rk4": 1e-5}, "grid": {"n_p": 128}})"));
  CHECK(c.seed == 7);
  CHECK(c.sigma == -1);
  CHECK(c.evolution == affq::EvolutionChoice::RK4);
  CHECK(c.tol.rk4 == 1e-5);
  CHECK(c.tol.unitarity == 1e-8);
  CHECK(c.grid.n_p == 128);
  CHECK(c.grid.n_q == 256);

  affq::RunConfig d;
  affq::merge_config(d, affq::json(c));
  CHECK(affq::json(d) == affq::json(c));
}

TEST_CASE("the exact suite passes and is reproducible") {
  affq::RunConfig c;
  c.lie_samples = 40;
  c.orbit_samples = 100;
  const auto a = affq::run_suite("lie-hom", c);
  const auto b = affq::run_suite("lie-hom", c);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].pass);
    CHECK(affq::json(a[i]).dump() == affq::json(b[i]).dump());
  }
  CHECK_THROWS_AS(affq::run_suite("nope", c), affq::ParseError);
}

TEST_CASE("a failing tolerance is reported as a failure") {
  affq::RunConfig c;
  c.lie_samples = 10;
  c.orbit_samples = 10;
  c.tol.exp_group = 1e-300;
  bool any_failed = false;
  for (const auto& r : affq::run_suite("lie-hom", c)) any_failed = any_failed || !r.pass;
  CHECK(any_failed);
}

TEST_CASE("matrix exponential helper") {
  const auto e = affq::expm2({{{1.0, 1.0}, {0.0, 0.0}}});
  CHECK(std::abs(e[0][0] - std::exp(1.0)) < 1e-15);
  CHECK(std::abs(e[0][1] - (std::exp(1.0) - 1.0)) < 1e-15);
  CHECK(e[1][0] == 0.0);
  CHECK(std::abs(e[1][1] - 1.0) < 1e-15);
}
