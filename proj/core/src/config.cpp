#include "twinbeam/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tbl {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

double get_num(const json& obj, const std::string& path, const char* key,
               double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

}  // namespace

std::vector<double> MediumConfig::grid() const {
  const auto n = static_cast<std::size_t>(
      std::floor(2.0 * grid_span_hz / grid_step_hz)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = -grid_span_hz + grid_step_hz * static_cast<double>(i);
  }
  return g;
}

json RunConfig::to_json() const {
  json j;
  j["label"] = label;
  j["source"] = {{"r", source.r},
                 {"band_lo_hz", source.band_lo_hz},
                 {"band_hi_hz", source.band_hi_hz},
                 {"rolloff_frac", source.rolloff_frac}};
  json lines = json::array();
  for (const auto& line : medium.lines) {
    lines.push_back({{"center_hz", line.center_hz},
                     {"width_hz", line.width_hz},
                     {"peak_gain", line.peak_gain}});
  }
  j["medium"] = {{"lines", lines},
                 {"propagate_mode", to_string(medium.propagate_mode)},
                 {"detuning_offset_hz", medium.detuning_offset_hz},
                 {"grid_span_hz", medium.grid_span_hz},
                 {"grid_step_hz", medium.grid_step_hz}};
  j["acquisition"] = {{"length", acquisition.length},
                      {"sample_period_s", acquisition.sample_period_s},
                      {"trials", acquisition.trials},
                      {"seed", acquisition.seed},
                      {"trigger",
                       {{"enabled", acquisition.trigger.enabled},
                        {"threshold_db", acquisition.trigger.threshold_db},
                        {"center_hz", acquisition.trigger.center_hz},
                        {"rbw_hz", acquisition.trigger.rbw_hz}}}};
  j["analysis"] = {{"band_lo_hz", analysis.band.f_lo_hz},
                   {"band_hi_hz", analysis.band.f_hi_hz},
                   {"highpass_corner_hz", analysis.filter.highpass_corner_hz},
                   {"lowpass_flat_hz", analysis.filter.lowpass_flat_hz},
                   {"lowpass_3db_hz", analysis.filter.lowpass_3db_hz},
                   {"delay_min_s", analysis.delay_min_s},
                   {"delay_max_s", analysis.delay_max_s},
                   {"delay_step_s", analysis.delay_step_s}};
  return j;
}

std::string fnv1a_digest(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string RunConfig::digest() const {
  // nlohmann::json objects are key-sorted, so dump() is canonical.
  return fnv1a_digest(to_json().dump());
}

void RunConfig::validate() const {
  if (label != "reference" && label != "fast" && label != "slow") {
    fail("label", "must be one of reference|fast|slow");
  }
  if (source.r < 0.0) fail("source.r", "must be >= 0");
  const double nyquist = 0.5 / acquisition.sample_period_s;
  if (!(source.band_lo_hz < source.band_hi_hz)) {
    fail("source.band_lo_hz", "band must be non-empty");
  }
  if (source.band_hi_hz > nyquist) {
    fail("source.band_hi_hz", "band exceeds the Nyquist frequency");
  }
  if (!(analysis.band.f_lo_hz < analysis.band.f_hi_hz)) {
    fail("analysis.band_lo_hz", "band must be non-empty");
  }
  if (analysis.band.f_hi_hz > nyquist) {
    fail("analysis.band_hi_hz", "band exceeds the Nyquist frequency");
  }
  analysis.filter.validate(nyquist);
  if (acquisition.trials < 1) fail("acquisition.trials", "must be >= 1");
  if (acquisition.length < 16) fail("acquisition.length", "trace too short");
  if (!(acquisition.sample_period_s > 0.0)) {
    fail("acquisition.sample_period_s", "must be > 0");
  }
  for (std::size_t i = 0; i < medium.lines.size(); ++i) {
    const auto& line = medium.lines[i];
    const std::string p = "medium.lines[" + std::to_string(i) + "]";
    if (!(line.width_hz > 0.0)) fail(p + ".width_hz", "must be > 0");
    if (line.peak_gain < 0.0) fail(p + ".peak_gain", "must be >= 0");
    if (std::abs(line.center_hz) > 0.9 * medium.grid_span_hz) {
      fail(p + ".center_hz", "line too close to the medium grid edge");
    }
  }
  if (!(medium.grid_step_hz > 0.0) || !(medium.grid_span_hz > 0.0)) {
    fail("medium.grid_step_hz", "grid span and step must be > 0");
  }
}

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  check_keys(doc, "$",
             {"label", "r_db", "source", "medium", "acquisition", "analysis"});
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail("$.label", "expected a string");
    cfg.label = doc["label"].get<std::string>();
  }
  if (doc.contains("r_db")) {
    // Shorthand: squeezed noise power in dB, e.g. -3 -> r = -ln(10^(-3/10))/2.
    const double db = get_num(doc, "$", "r_db", 0.0);
    if (db > 0.0) fail("$.r_db", "squeezing must be <= 0 dB");
    cfg.source.r = -0.5 * std::log(std::pow(10.0, db / 10.0));
  }
  if (doc.contains("source")) {
    const json& s = doc["source"];
    check_keys(s, "source", {"r", "r_db", "band_lo_hz", "band_hi_hz", "rolloff_frac"});
    if (s.contains("r_db")) {
      const double db = get_num(s, "source", "r_db", 0.0);
      if (db > 0.0) fail("source.r_db", "squeezing must be <= 0 dB");
      cfg.source.r = -0.5 * std::log(std::pow(10.0, db / 10.0));
    }
    cfg.source.r = get_num(s, "source", "r", cfg.source.r);
    cfg.source.band_lo_hz = get_num(s, "source", "band_lo_hz", cfg.source.band_lo_hz);
    cfg.source.band_hi_hz = get_num(s, "source", "band_hi_hz", cfg.source.band_hi_hz);
    cfg.source.rolloff_frac =
        get_num(s, "source", "rolloff_frac", cfg.source.rolloff_frac);
  }
  if (doc.contains("medium")) {
    const json& m = doc["medium"];
    check_keys(m, "medium",
               {"lines", "propagate_mode", "detuning_offset_hz", "grid_span_hz",
                "grid_step_hz"});
    if (m.contains("lines")) {
      if (!m["lines"].is_array()) fail("medium.lines", "expected an array");
      for (std::size_t i = 0; i < m["lines"].size(); ++i) {
        const json& l = m["lines"][i];
        const std::string p = "medium.lines[" + std::to_string(i) + "]";
        check_keys(l, p, {"center_hz", "width_hz", "peak_gain"});
        cfg.medium.lines.push_back({get_num(l, p, "center_hz", 0.0),
                                    get_num(l, p, "width_hz", 0.0),
                                    get_num(l, p, "peak_gain", 0.0)});
      }
    }
    if (m.contains("propagate_mode")) {
      const std::string mode = m["propagate_mode"].get<std::string>();
      if (mode == "probe") {
        cfg.medium.propagate_mode = TraceMode::Probe;
      } else if (mode == "conjugate") {
        cfg.medium.propagate_mode = TraceMode::Conjugate;
      } else {
        fail("medium.propagate_mode", "must be probe|conjugate");
      }
    }
    cfg.medium.detuning_offset_hz =
        get_num(m, "medium", "detuning_offset_hz", cfg.medium.detuning_offset_hz);
    cfg.medium.grid_span_hz = get_num(m, "medium", "grid_span_hz", cfg.medium.grid_span_hz);
    cfg.medium.grid_step_hz = get_num(m, "medium", "grid_step_hz", cfg.medium.grid_step_hz);
  }
  if (doc.contains("acquisition")) {
    const json& a = doc["acquisition"];
    check_keys(a, "acquisition",
               {"length", "sample_period_s", "trials", "seed", "trigger"});
    cfg.acquisition.length = static_cast<std::size_t>(
        get_num(a, "acquisition", "length",
                static_cast<double>(cfg.acquisition.length)));
    cfg.acquisition.sample_period_s = get_num(
        a, "acquisition", "sample_period_s", cfg.acquisition.sample_period_s);
    cfg.acquisition.trials = static_cast<std::size_t>(get_num(
        a, "acquisition", "trials", static_cast<double>(cfg.acquisition.trials)));
    if (a.contains("seed")) {
      if (!a["seed"].is_number_unsigned()) fail("acquisition.seed", "expected an unsigned integer");
      cfg.acquisition.seed = a["seed"].get<std::uint64_t>();
    }
    if (a.contains("trigger")) {
      const json& t = a["trigger"];
      check_keys(t, "acquisition.trigger",
                 {"enabled", "threshold_db", "center_hz", "rbw_hz"});
      if (t.contains("enabled")) {
        if (!t["enabled"].is_boolean()) fail("acquisition.trigger.enabled", "expected a boolean");
        cfg.acquisition.trigger.enabled = t["enabled"].get<bool>();
      }
      cfg.acquisition.trigger.threshold_db = get_num(
          t, "acquisition.trigger", "threshold_db", cfg.acquisition.trigger.threshold_db);
      cfg.acquisition.trigger.center_hz = get_num(
          t, "acquisition.trigger", "center_hz", cfg.acquisition.trigger.center_hz);
      cfg.acquisition.trigger.rbw_hz =
          get_num(t, "acquisition.trigger", "rbw_hz", cfg.acquisition.trigger.rbw_hz);
    }
  }
  if (doc.contains("analysis")) {
    const json& an = doc["analysis"];
    check_keys(an, "analysis",
               {"band_lo_hz", "band_hi_hz", "highpass_corner_hz",
                "lowpass_flat_hz", "lowpass_3db_hz", "delay_min_s", "delay_max_s",
                "delay_step_s"});
    cfg.analysis.band.f_lo_hz = get_num(an, "analysis", "band_lo_hz", cfg.analysis.band.f_lo_hz);
    cfg.analysis.band.f_hi_hz = get_num(an, "analysis", "band_hi_hz", cfg.analysis.band.f_hi_hz);
    cfg.analysis.filter.highpass_corner_hz = get_num(
        an, "analysis", "highpass_corner_hz", cfg.analysis.filter.highpass_corner_hz);
    cfg.analysis.filter.lowpass_flat_hz = get_num(
        an, "analysis", "lowpass_flat_hz", cfg.analysis.filter.lowpass_flat_hz);
    cfg.analysis.filter.lowpass_3db_hz = get_num(
        an, "analysis", "lowpass_3db_hz", cfg.analysis.filter.lowpass_3db_hz);
    cfg.analysis.delay_min_s = get_num(an, "analysis", "delay_min_s", cfg.analysis.delay_min_s);
    cfg.analysis.delay_max_s = get_num(an, "analysis", "delay_max_s", cfg.analysis.delay_max_s);
    cfg.analysis.delay_step_s = get_num(an, "analysis", "delay_step_s", cfg.analysis.delay_step_s);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path.string());
  json doc;
  try {
    is >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

void save_config(const std::filesystem::path& path, const RunConfig& config) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("config: cannot write " + path.string());
  os << config.to_json().dump(2) << '\n';
}

}  // namespace tbl
