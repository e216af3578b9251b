#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "twinbeam/config.hpp"
#include "twinbeam/dispersion.hpp"

using namespace tbl;
using nlohmann::json;

TEST_CASE("minimal config fills defaults and digests stably") {
  const json doc = {{"label", "reference"}, {"r_db", -3.0}};
  const RunConfig cfg = parse_config(doc);
  CHECK(cfg.label == "reference");
  // r_db = -3 means e^{-2r} = 10^{-0.3}, i.e. r = 0.345388.
  CHECK(cfg.source.r == doctest::Approx(0.345388).epsilon(1e-4));
  CHECK(cfg.acquisition.length == 1000000);
  CHECK(cfg.acquisition.trials == 100);
  CHECK(cfg.acquisition.sample_period_s == doctest::Approx(0.4e-9));
  CHECK(cfg.analysis.band.f_lo_hz == doctest::Approx(100e3));
  CHECK(cfg.analysis.band.f_hi_hz == doctest::Approx(2e6));
  CHECK_FALSE(cfg.acquisition.trigger.enabled);

  // Same content, different key order: identical digest.
  const json reordered = {{"r_db", -3.0}, {"label", "reference"}};
  CHECK(parse_config(reordered).digest() == cfg.digest());
  CHECK_FALSE(cfg.digest().empty());
}

TEST_CASE("schema violations name the offending field") {
  CHECK_THROWS_WITH_AS(parse_config({{"label", "reference"}, {"typo", 1}}),
                       doctest::Contains("typo"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_config({{"label", "reference"},
                    {"source", {{"band_hi_hz", 2e9}}}}),
      doctest::Contains("band_hi_hz"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config({{"label", "warp"}}),
                       doctest::Contains("label"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_config({{"label", "reference"}, {"r_db", 2.0}}),
      doctest::Contains("r_db"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_config({{"label", "reference"},
                    {"medium", {{"propagate_mode", "sideways"}}}}),
      doctest::Contains("propagate_mode"), std::invalid_argument);
}

TEST_CASE("config file round trip") {
  const auto path = std::filesystem::temp_directory_path() /
                    "twinbeam_cfg_roundtrip.json";
  RunConfig cfg;
  cfg.label = "slow";
  cfg.medium.lines = {{0.0, 1e6, 0.2}};
  cfg.medium.propagate_mode = TraceMode::Probe;
  cfg.acquisition.seed = 42;
  save_config(path, cfg);
  const RunConfig back = load_config(path);
  CHECK(back.digest() == cfg.digest());
  CHECK(back.medium.propagate_mode == TraceMode::Probe);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_config("/nonexistent/twinbeam.json"),
                  std::invalid_argument);
}

TEST_CASE("shipped presets parse and are calibrated") {
  const std::filesystem::path presets = TWINBEAM_PRESET_DIR;

  const RunConfig ref = load_config(presets / "reference.json");
  CHECK(ref.label == "reference");
  CHECK(ref.medium.lines.empty());
  CHECK(ref.source.r == doctest::Approx(0.345388).epsilon(1e-4));

  const RunConfig fast = load_config(presets / "fast.json");
  CHECK(fast.label == "fast");
  CHECK(fast.medium.propagate_mode == TraceMode::Conjugate);
  REQUIRE(fast.medium.lines.size() == 2);

  const RunConfig slow = load_config(presets / "slow.json");
  CHECK(slow.label == "slow");
  CHECK(slow.medium.propagate_mode == TraceMode::Conjugate);

  // Fast preset: G at the center of the measurement band is ~1.1 and the
  // band-averaged group delay is the calibrated -3.7 ns advance.
  {
    const auto resp = kramers_kronig_phase(
        synth_gain_profile(fast.medium.lines, fast.medium.grid()));
    const double off = fast.medium.detuning_offset_hz;
    const double mid = 0.5 * (fast.analysis.band.f_lo_hz +
                              fast.analysis.band.f_hi_hz);
    const auto t = transfer_at(resp, mid + off);
    CHECK(std::norm(t.amplitude) == doctest::Approx(1.1).epsilon(0.02));
    const double tg = group_delay_in_band(resp, fast.analysis.band.f_lo_hz + off,
                                          fast.analysis.band.f_hi_hz + off);
    CHECK(tg == doctest::Approx(-3.7e-9).epsilon(0.01));
  }

  // Slow preset: G ~ 1.2 at band center, positive band-averaged delay.
  {
    const auto resp = kramers_kronig_phase(
        synth_gain_profile(slow.medium.lines, slow.medium.grid()));
    const double off = slow.medium.detuning_offset_hz;
    const double mid = 0.5 * (slow.analysis.band.f_lo_hz +
                              slow.analysis.band.f_hi_hz);
    const auto t = transfer_at(resp, mid + off);
    CHECK(std::norm(t.amplitude) == doctest::Approx(1.2).epsilon(0.02));
    const double tg = group_delay_in_band(resp, slow.analysis.band.f_lo_hz + off,
                                          slow.analysis.band.f_hi_hz + off);
    CHECK(tg > 3e-9);
  }
}

TEST_CASE("validation catches physics-breaking settings") {
  RunConfig cfg;
  cfg.analysis.band.f_hi_hz = 3e9;  // beyond Nyquist at 0.4 ns sampling
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  RunConfig cfg2;
  cfg2.acquisition.trials = 0;
  CHECK_THROWS_AS(cfg2.validate(), std::invalid_argument);

  RunConfig cfg3;
  cfg3.medium.lines = {{95e6, 1e6, 0.1}};  // too close to the grid edge
  CHECK_THROWS_AS(cfg3.validate(), std::invalid_argument);
}
