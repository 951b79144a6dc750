#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include "sigmkt/config.hpp"

using namespace sigmkt;

namespace {

const char* kFullConfig = R"({
  "model": {
    "s0": 1.5,
    "ell_w": {"@": 0.2, "1": 0.05},
    "ell_nu": {"@": 0.1}
  },
  "market": {
    "brownian_variance": 1.0,
    "atoms": [{"size": -0.5, "intensity": 2.0}, {"size": 0.25, "intensity": 1.0}],
    "moment_count": 3,
    "trunc_level": 4
  },
  "simulation": {"horizon": 2.0, "steps": 16, "paths": 500, "seed": 99},
  "task": {
    "payoff": {"1.1": 1.0, "@": 0.5},
    "fit_level": 2,
    "fit_target": "terminal",
    "measure_change": {"f": {"2": 0.3}, "g": [0.1, -0.2], "allow_letter_one": true}
  }
})";

template <typename F>
std::string thrown_message(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

std::string patch(const std::string& from, const std::string& to) {
  std::string text = kFullConfig;
  const std::size_t at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("a full config parses into every field") {
  const RunConfig cfg = parse_run_config(kFullConfig);
  CHECK(cfg.s0 == 1.5);
  CHECK(cfg.ell_w.terms().at(Word{}) == 0.2);
  CHECK(cfg.ell_w.terms().at(Word{1}) == 0.05);
  CHECK(cfg.ell_nu.terms().at(Word{}) == 0.1);
  CHECK(cfg.brownian_variance == 1.0);
  REQUIRE(cfg.atoms.size() == 2);
  CHECK(cfg.atoms[0].size == -0.5);
  CHECK(cfg.atoms[0].intensity == 2.0);
  CHECK(cfg.atoms[1].size == 0.25);
  CHECK(cfg.moment_count == 3);
  CHECK(cfg.trunc_level == 4);
  CHECK(cfg.horizon == 2.0);
  CHECK(cfg.steps == 16);
  CHECK(cfg.paths == 500);
  CHECK(cfg.seed == 99);
  CHECK(cfg.payoff.terms().at(Word{1, 1}) == 1.0);
  CHECK(cfg.payoff.terms().at(Word{}) == 0.5);
  CHECK(cfg.fit_level == 2);
  CHECK(cfg.fit_target == "terminal");
  REQUIRE(cfg.has_measure_change);
  CHECK(cfg.measure_change.f.terms().at(Word{2}) == 0.3);
  CHECK(cfg.measure_change.g == std::vector<double>{0.1, -0.2});
  CHECK(cfg.measure_change.allow_letter_one);

  const SigModelParams params = cfg.model_params();
  CHECK(params.s0() == 1.5);
  CHECK(params.max_moment() == 3);
  const LevyTriplet trip = cfg.market_triplet();
  CHECK(trip.alphabet() == params.alphabet());
  CHECK(cfg.sig_payoff().max_length() == 2);
}

TEST_CASE("omitted task block falls back to defaults") {
  std::string text = kFullConfig;
  const std::size_t at = text.find(",\n  \"task\"");
  REQUIRE(at != std::string::npos);
  text = text.substr(0, at) + "\n}";
  const RunConfig cfg = parse_run_config(text);
  CHECK(cfg.payoff.empty());
  CHECK(cfg.fit_level == cfg.trunc_level);
  CHECK(cfg.fit_target == "running-max");
  CHECK(!cfg.has_measure_change);
}

TEST_CASE("structural bound violations cite the inequality") {
  // ell_w word (1,1) makes n = 2, d = 1, so n d + 1 = 3 exceeds K = 2.
  const std::string text =
      patch("\"ell_w\": {\"@\": 0.2, \"1\": 0.05}",
            "\"ell_w\": {\"1.1\": 0.2}");
  const std::string shrunk =
      [&] {
        std::string t = text;
        const std::size_t at = t.find("\"moment_count\": 3");
        return t.replace(at, 17, "\"moment_count\": 2");
      }();
  const RunConfig cfg = parse_run_config(shrunk);
  const std::string message = thrown_message([&] { cfg.model_params(); });
  CHECK(message.find("n d + 1 <= N") != std::string::npos);
}

TEST_CASE("parse errors name the offending token or key") {
  CHECK(thrown_message([] { parse_run_config("not json"); })
            .find("invalid JSON") != std::string::npos);

  CHECK(thrown_message([&] { parse_run_config(patch("\"s0\": 1.5,", "")); })
            .find("missing key 'model.s0'") != std::string::npos);

  CHECK(thrown_message([&] {
          parse_run_config(patch("\"ell_nu\": {\"@\": 0.1}",
                                 "\"ell_nu\": {\"1.x\": 0.1}"));
        }).find("'x' is not an integer") != std::string::npos);

  CHECK(thrown_message([&] {
          parse_run_config(patch("\"s0\": 1.5", "\"s0\": 1.5, \"sO\": 2"));
        }).find("unknown key 'model.sO'") != std::string::npos);

  CHECK(thrown_message([&] {
          parse_run_config(patch("\"fit_target\": \"terminal\"",
                                 "\"fit_target\": \"median\""));
        }).find("fit_target") != std::string::npos);

  CHECK(thrown_message([&] {
          parse_run_config(patch("\"steps\": 16", "\"steps\": 2.5"));
        }).find("'simulation.steps' must be an integer") != std::string::npos);

  CHECK(thrown_message([&] {
          parse_run_config(patch("\"seed\": 99", "\"seed\": -1"));
        }).find("nonnegative") != std::string::npos);
}

TEST_CASE("payoff letters outside the price alphabet are rejected") {
  const RunConfig cfg =
      parse_run_config(patch("\"payoff\": {\"1.1\": 1.0, \"@\": 0.5}",
                             "\"payoff\": {\"2\": 1.0}"));
  CHECK_THROWS_AS(cfg.sig_payoff(), std::invalid_argument);
}

TEST_CASE("missing config files fail loudly") {
  CHECK(thrown_message([] { load_run_config("/nonexistent/run.json"); })
            .find("cannot open file") != std::string::npos);
}
