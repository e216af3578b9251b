#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "twinbeam/dispersion.hpp"
#include "twinbeam/dsp.hpp"
#include "twinbeam/trace.hpp"
#include "twinbeam/trace_sim.hpp"

// Run configuration: source, medium, acquisition and analysis settings for
// one experimental condition. JSON on disk, strict about unknown keys so a
// typo cannot silently change a comparison.

namespace tbl {

struct TriggerConfig {
  bool enabled = false;
  double threshold_db = -2.0;  // keep shots squeezed at least this much
  double center_hz = 750e3;
  double rbw_hz = 30e3;
};

struct SourceConfig {
  double r = 0.34657;  // -3 dB of two-mode squeezing
  double band_lo_hz = 20e3;
  double band_hi_hz = 3e6;
  double rolloff_frac = 0.1;

  SqueezingSpectrum spectrum() const {
    return SqueezingSpectrum{r, band_lo_hz, band_hi_hz, rolloff_frac};
  }
};

struct MediumConfig {
  std::vector<LorentzianLine> lines;  // empty: transparent medium
  TraceMode propagate_mode = TraceMode::Conjugate;
  double detuning_offset_hz = 0.0;  // detection f -> detuning f + offset
  double grid_span_hz = 100e6;      // grid covers [-span, +span]
  double grid_step_hz = 10e3;

  std::vector<double> grid() const;
};

struct AcquisitionConfig {
  std::size_t length = 1000000;
  double sample_period_s = 0.4e-9;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  TriggerConfig trigger;
};

struct AnalysisConfig {
  NoiseBand band{100e3, 2e6};
  BandpassSpec filter;
  double delay_min_s = -200e-9;
  double delay_max_s = 200e-9;
  double delay_step_s = 0.4e-9;

  std::vector<double> delay_grid() const {
    return make_delay_grid(delay_min_s, delay_max_s, delay_step_s);
  }
};

struct RunConfig {
  std::string label = "reference";  // reference | fast | slow
  SourceConfig source;
  MediumConfig medium;
  AcquisitionConfig acquisition;
  AnalysisConfig analysis;

  nlohmann::json to_json() const;
  // FNV-1a 64 of the canonical (key-sorted) serialization.
  std::string digest() const;
  void validate() const;
};

// Parses and validates; fills defaults; rejects unknown keys with an error
// naming the field path. Accepts "r_db" as an alternative to source.r.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const RunConfig& config);

std::string fnv1a_digest(const std::string& data);

}  // namespace tbl
