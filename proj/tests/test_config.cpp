#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "leland/config.hpp"

using namespace leland;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string kBaseline = std::string(CONFIG_DIR) + "/baseline_config.json";

} // namespace

TEST_CASE("baseline config parses") {
    RunConfig cfg = RunConfig::load(kBaseline);
    CHECK(cfg.sigma == 0.2);
    CHECK(cfg.drift_c.has_value());
    CHECK(*cfg.drift_c == -0.24767);
    CHECK(!cfg.calibrate);
    CHECK(cfg.jump_rate == 0.5);
    CHECK(cfg.jump_preset == "folded-normal-ph6");
    CHECK(cfg.r == 0.075);
    CHECK(cfg.vt_rule == TaxThresholdRule::ProportionalToP);
    CHECK(cfg.resolved_V_T() == doctest::Approx(50.0 * 0.08162 / 0.07).epsilon(1e-14));
    CHECK(cfg.mode == ObservationMode::Periodic);
    CHECK(cfg.lambda.has_value());
    CHECK(*cfg.lambda == 4.0);

    LevyModel model = cfg.build_model();
    CHECK(model.sigma() == 0.2);
    CHECK(model.drift_c() == -0.24767);
    MarketParams mkt = cfg.build_market();
    CHECK(mkt.V_T == doctest::Approx(cfg.resolved_V_T()).epsilon(1e-14));
}

TEST_CASE("serialize/parse round trip is byte-identical") {
    RunConfig cfg = RunConfig::load(kBaseline);
    std::string once = cfg.serialize();
    RunConfig again = RunConfig::parse(once);
    CHECK(again.serialize() == once);

    // explicit phase-type round trip
    std::string text = R"({
      "model": {"sigma": 0.1, "drift_c": -0.2, "jump_rate": 0.3,
                "jump_distribution": {"alpha": [0.6, 0.4],
                                      "T": [[-2.0, 1.0], [0.0, -3.0]]}},
      "market": {"r": 0.05, "delta": 0.02, "m": 0.1, "rho": 0.06,
                 "kappa": 0.3, "eta": 0.4, "P": 10.0, "V_T": 0.0},
      "observation": {"mode": "continuous"}
    })";
    RunConfig c2 = RunConfig::parse(text);
    std::string s2 = c2.serialize();
    CHECK(RunConfig::parse(s2).serialize() == s2);
    CHECK(c2.build_model().has_jumps());
}

TEST_CASE("parse rejects malformed input") {
    std::string base = read_file(kBaseline);
    CHECK_THROWS_AS(RunConfig::parse("not json"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::parse("[1,2]"), std::invalid_argument);

    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string text = base;
        auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
        return text;
    };
    // unknown keys anywhere are an error
    CHECK_THROWS_AS(RunConfig::parse(mutate("\"sigma\"", "\"sgima\"")),
                    std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::parse(mutate("\"r\":", "\"rr\":")), std::invalid_argument);
    // missing section
    CHECK_THROWS_AS(RunConfig::parse(mutate("\"market\"", "\"markets\"")),
                    std::invalid_argument);
    // lambda is only meaningful in periodic mode
    CHECK_THROWS_AS(RunConfig::parse(mutate("\"periodic\"", "\"continuous\"")),
                    std::invalid_argument);
    // periodic mode needs lambda
    CHECK_THROWS_AS(RunConfig::parse(mutate(",\n    \"lambda\": 4.0", "")),
                    std::invalid_argument);
    // unknown preset and bad V_T strings
    CHECK_THROWS_AS(RunConfig::parse(mutate("folded-normal-ph6", "mystery")),
                    std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::parse(mutate("P*rho/delta", "P*rho")), std::invalid_argument);
    // drift must come from somewhere
    CHECK_THROWS_AS(RunConfig::parse(mutate("\"drift_c\": -0.24767,", "")),
                    std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/path.json"), std::invalid_argument);
}

TEST_CASE("drift calibration through the config") {
    std::string base = read_file(kBaseline);
    auto pos = base.find("\"calibrate\": false");
    REQUIRE(pos != std::string::npos);
    std::string text = base;
    text.replace(pos, std::string("\"calibrate\": false").size(), "\"calibrate\": true");
    RunConfig cfg = RunConfig::parse(text);

    LevyModel cal = cfg.build_model();
    CHECK(std::abs(-laplace_exponent(cal, 1.0) - (cfg.r - cfg.delta)) < 1e-13);
    // the raw drift survives when calibration is suppressed
    LevyModel raw = cfg.build_model(true);
    CHECK(raw.drift_c() == -0.24767);
}
