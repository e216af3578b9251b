// twinbeam: simulation and analysis pipeline for delay-dependent
// entanglement and mutual information of twin beams behind a dispersive
// gain medium.
//
// Subcommands compose over files: `simulate` writes shot directories,
// `propagate` pushes them through a medium, `analyze` reduces shots to a
// covariance matrix, `sweep` runs the full delay sweep for one or more
// configurations and plots it, `kk` turns a gain profile CSV into a complex
// medium response, `theory-curves` tabulates the closed-form gain channel,
// and `report` re-renders every figure from its backing CSV.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "twinbeam/config.hpp"
#include "twinbeam/dispersion.hpp"
#include "twinbeam/dsp.hpp"
#include "twinbeam/gaussian.hpp"
#include "twinbeam/svg.hpp"
#include "twinbeam/trace_io.hpp"
#include "twinbeam/trace_sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tbl;

namespace {

constexpr const char* kToolVersion = "twinbeam 0.1.0";

// Reference trace shot index: keeps the shot-noise normalization stream
// disjoint from the data shots under the same seed.
constexpr std::uint64_t kRefShotIndex = 1000000;

bool log_enabled() {
  const char* v = std::getenv("TBL_LOG");
  return v != nullptr && std::string(v) != "0" && std::string(v) != "";
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::fprintf(stderr, "[twinbeam] %s\n", msg.c_str());
}

void ensure_out_dir(const fs::path& dir, bool force) {
  if (fs::exists(dir)) {
    if (!force && !fs::is_empty(dir)) {
      throw std::runtime_error("output directory " + dir.string() +
                               " is not empty (use --force to overwrite)");
    }
  } else {
    fs::create_directories(dir);
  }
}

void write_text(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
  }
  fs::rename(tmp, path);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  int jobs = 1;
  bool force = false;
};

RunConfig load_with_overrides(const CommonFlags& flags) {
  RunConfig cfg = load_config(flags.config_path);
  if (flags.seed) cfg.acquisition.seed = *flags.seed;
  if (flags.trials) cfg.acquisition.trials = *flags.trials;
  cfg.validate();
  return cfg;
}

std::optional<MediumResponse> medium_response(const RunConfig& cfg) {
  if (cfg.medium.lines.empty()) return std::nullopt;
  return kramers_kronig_phase(
      synth_gain_profile(cfg.medium.lines, cfg.medium.grid()));
}

// Synthesis plus optional software trigger: shots failing the band-power
// threshold are discarded and the underlying shot index advances, so the
// kept sequence is still deterministic per seed.
ExperimentShot next_source_shot(const RunConfig& cfg, std::uint64_t& raw_index,
                                const QuadratureTrace& shot_ref) {
  for (;;) {
    ExperimentShot shot = synthesize_shot(
        cfg.source.spectrum(), cfg.acquisition.length,
        cfg.acquisition.sample_period_s, cfg.acquisition.seed, raw_index);
    ++raw_index;
    shot.config_digest = cfg.digest();
    if (!cfg.acquisition.trigger.enabled) return shot;
    const double db = joint_squeezing_db(
        shot, shot.squeezed_joint, cfg.acquisition.trigger.center_hz,
        cfg.acquisition.trigger.rbw_hz, shot_ref);
    if (db <= cfg.acquisition.trigger.threshold_db) return shot;
    log_line("trigger rejected shot (joint band power " + std::to_string(db) +
             " dB)");
  }
}

fs::path shot_dir_name(const fs::path& root, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "shot_%04zu", i);
  return root / buf;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const CommonFlags& flags) {
  const RunConfig cfg = load_with_overrides(flags);
  ensure_out_dir(flags.out_dir, flags.force);
  const auto shot_ref = shot_noise_reference(
      cfg.acquisition.length, cfg.acquisition.sample_period_s,
      cfg.acquisition.seed, kRefShotIndex);

  json manifest;
  manifest["tool"] = kToolVersion;
  manifest["label"] = cfg.label;
  manifest["config_digest"] = cfg.digest();
  manifest["shots"] = json::array();

  std::uint64_t raw = 0;
  for (std::size_t i = 0; i < cfg.acquisition.trials; ++i) {
    const auto shot = next_source_shot(cfg, raw, shot_ref);
    const fs::path dir = shot_dir_name(flags.out_dir, i);
    write_shot(dir, shot);
    manifest["shots"].push_back(dir.filename().string());
    log_line("wrote " + dir.string());
  }
  write_trace(fs::path(flags.out_dir) / "shot_ref.tbtr", shot_ref);
  save_config(fs::path(flags.out_dir) / "config.json", cfg);
  write_text(fs::path(flags.out_dir) / "manifest.json", manifest.dump(2) + "\n");
  std::printf("simulate: %zu shots in %s\n", cfg.acquisition.trials,
              flags.out_dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// propagate

int cmd_propagate(const CommonFlags& flags, const std::string& in_dir) {
  const RunConfig cfg = load_with_overrides(flags);
  const auto resp = medium_response(cfg);
  if (!resp) {
    throw std::runtime_error("config " + flags.config_path +
                             " has no medium lines; nothing to propagate");
  }
  const json manifest = json::parse(read_text(fs::path(in_dir) / "manifest.json"));
  ensure_out_dir(flags.out_dir, flags.force);

  json out_manifest = manifest;
  out_manifest["propagated_with"] = cfg.digest();
  std::size_t i = 0;
  for (const auto& name : manifest.at("shots")) {
    const auto shot = read_shot(fs::path(in_dir) / name.get<std::string>());
    const auto out = propagate_through_medium(
        shot, *resp, cfg.medium.propagate_mode, cfg.medium.detuning_offset_hz,
        cfg.acquisition.seed, i);
    write_shot(fs::path(flags.out_dir) / name.get<std::string>(), out);
    log_line("propagated " + name.get<std::string>());
    ++i;
  }
  if (fs::exists(fs::path(in_dir) / "shot_ref.tbtr")) {
    fs::copy_file(fs::path(in_dir) / "shot_ref.tbtr",
                  fs::path(flags.out_dir) / "shot_ref.tbtr",
                  fs::copy_options::overwrite_existing);
  }
  save_config(fs::path(flags.out_dir) / "config.json", cfg);
  write_text(fs::path(flags.out_dir) / "manifest.json",
             out_manifest.dump(2) + "\n");
  std::printf("propagate: %zu shots -> %s\n", i, flags.out_dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const CommonFlags& flags, const std::string& in_dir,
                double delay_ns) {
  const RunConfig cfg = load_with_overrides(flags);
  const json manifest = json::parse(read_text(fs::path(in_dir) / "manifest.json"));
  std::vector<ExperimentShot> shots;
  for (const auto& name : manifest.at("shots")) {
    shots.push_back(read_shot(fs::path(in_dir) / name.get<std::string>()));
  }
  QuadratureTrace shot_ref;
  if (fs::exists(fs::path(in_dir) / "shot_ref.tbtr")) {
    shot_ref = read_trace(fs::path(in_dir) / "shot_ref.tbtr");
  } else {
    shot_ref = shot_noise_reference(shots.front().size(),
                                    shots.front().sample_period_s(),
                                    cfg.acquisition.seed, kRefShotIndex);
  }
  ensure_out_dir(flags.out_dir, flags.force);

  const auto est =
      estimate_covariance(shots, delay_ns * 1e-9, cfg.analysis.band,
                          cfg.analysis.filter, shot_ref);
  write_text(fs::path(flags.out_dir) / "covariance.csv",
             covariance_to_csv(est.cov));

  json summary;
  summary["tool"] = kToolVersion;
  summary["label"] = cfg.label;
  summary["config_digest"] = cfg.digest();
  summary["shots"] = shots.size();
  summary["delay_ns"] = delay_ns;
  summary["inseparability"] = inseparability(est.cov);
  summary["squeezing_db"] = 10.0 * std::log10(0.5 * inseparability(est.cov));
  const auto [mi_bits, min_nu] = estimated_mutual_information(est.cov);
  summary["mutual_information_bits"] = mi_bits;
  summary["min_symplectic"] = std::min(est.min_symplectic, min_nu);
  summary["physical"] = est.physical;
  write_text(fs::path(flags.out_dir) / "analysis.json", summary.dump(2) + "\n");
  std::printf("analyze: I = %.4f, MI = %.4f bits -> %s\n",
              inseparability(est.cov), mi_bits, flags.out_dir.c_str());
  return est.physical ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep

std::string sweep_csv(const DelaySweepResult& r) {
  std::ostringstream out;
  out << "delay_ns,insep_mean,insep_sem,sqz_db_mean,sqz_db_sem,"
         "mi_bits_mean,mi_bits_sem\n";
  out.precision(12);
  for (std::size_t j = 0; j < r.delays_s.size(); ++j) {
    out << r.delays_s[j] * 1e9 << ',' << r.insep_mean[j] << ','
        << r.insep_sem[j] << ',' << r.sqz_db_mean[j] << ',' << r.sqz_db_sem[j]
        << ',' << r.mi_mean[j] << ',' << r.mi_sem[j] << '\n';
  }
  return out.str();
}

struct SweepCsvData {
  std::string label;
  std::vector<double> delay_ns, insep, insep_sem, sqz, sqz_sem, mi, mi_sem;
};

SweepCsvData parse_sweep_csv(const fs::path& path) {
  SweepCsvData d;
  d.label = path.stem().string();
  if (d.label.rfind("sweep_", 0) == 0) d.label = d.label.substr(6);
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty sweep CSV: " + path.string());
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 7) {
      throw std::runtime_error("bad sweep CSV row in " + path.string());
    }
    d.delay_ns.push_back(vals[0]);
    d.insep.push_back(vals[1]);
    d.insep_sem.push_back(vals[2]);
    d.sqz.push_back(vals[3]);
    d.sqz_sem.push_back(vals[4]);
    d.mi.push_back(vals[5]);
    d.mi_sem.push_back(vals[6]);
  }
  return d;
}

const std::vector<std::string> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                           "#9467bd", "#ff7f0e"};

// Figures are drawn exclusively from the CSV files so that `report` can
// reproduce them byte-for-byte.
void render_sweep_figures(const fs::path& dir) {
  std::vector<fs::path> csvs;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("sweep_", 0) == 0 && e.path().extension() == ".csv") {
      csvs.push_back(e.path());
    }
  }
  std::sort(csvs.begin(), csvs.end());
  if (csvs.empty()) return;

  std::vector<svg::Series> insep_series, mi_series;
  std::size_t color = 0;
  for (const auto& path : csvs) {
    const auto d = parse_sweep_csv(path);
    const std::string c = kPalette[color++ % kPalette.size()];
    insep_series.push_back({d.label, c, d.delay_ns, d.insep, d.insep_sem});
    mi_series.push_back({d.label, c, d.delay_ns, d.mi, d.mi_sem});
  }
  write_text(dir / "fig3.svg",
             svg::render_plot("Inseparability vs detection delay",
                              "delay (ns)", "I", insep_series));
  write_text(dir / "fig4.svg",
             svg::render_plot("Mutual information vs detection delay",
                              "delay (ns)", "MI (bits)", mi_series));
}

int cmd_sweep(CommonFlags flags, const std::vector<std::string>& config_paths,
              std::optional<double> dmin_ns, std::optional<double> dmax_ns,
              std::optional<double> dstep_ns) {
  ensure_out_dir(flags.out_dir, flags.force);
  json summary;
  summary["tool"] = kToolVersion;
  summary["runs"] = json::object();

  std::map<std::string, DelaySweepResult> results;
  std::map<std::string, double> calibrated;
  bool all_physical = true;

  for (const auto& path : config_paths) {
    flags.config_path = path;
    RunConfig cfg = load_with_overrides(flags);
    if (dmin_ns) cfg.analysis.delay_min_s = *dmin_ns * 1e-9;
    if (dmax_ns) cfg.analysis.delay_max_s = *dmax_ns * 1e-9;
    if (dstep_ns) cfg.analysis.delay_step_s = *dstep_ns * 1e-9;
    cfg.validate();

    const auto resp = medium_response(cfg);
    double tg = 0.0;
    if (resp) {
      tg = group_delay_in_band(
          *resp, cfg.analysis.band.f_lo_hz + cfg.medium.detuning_offset_hz,
          cfg.analysis.band.f_hi_hz + cfg.medium.detuning_offset_hz);
    }
    calibrated[cfg.label] = tg;

    const auto shot_ref = shot_noise_reference(
        cfg.acquisition.length, cfg.acquisition.sample_period_s,
        cfg.acquisition.seed, kRefShotIndex);

    DelaySweepOptions opt;
    opt.band = cfg.analysis.band;
    opt.filter = cfg.analysis.filter;
    opt.delays_s = cfg.analysis.delay_grid();
    opt.jobs = flags.jobs;

    std::uint64_t raw = 0;
    auto source = [&](std::size_t) {
      ExperimentShot shot = next_source_shot(cfg, raw, shot_ref);
      if (resp) {
        shot = propagate_through_medium(
            shot, *resp, cfg.medium.propagate_mode,
            cfg.medium.detuning_offset_hz, cfg.acquisition.seed, raw - 1);
      }
      return shot;
    };
    // The trigger mutates `raw`; keep the source single-threaded then.
    if (cfg.acquisition.trigger.enabled) opt.jobs = 1;
    log_line("sweeping " + cfg.label + " (" +
             std::to_string(cfg.acquisition.trials) + " trials)");
    const auto res =
        delay_sweep_stream(source, cfg.acquisition.trials, shot_ref, opt);

    write_text(fs::path(flags.out_dir) / ("sweep_" + cfg.label + ".csv"),
               sweep_csv(res));

    json run;
    run["config_digest"] = cfg.digest();
    run["trials"] = cfg.acquisition.trials;
    run["calibrated_group_delay_ns"] = tg * 1e9;
    run["unphysical_flags"] = res.unphysical_flags;
    const auto lead = leading_edge(res.delays_s, res.mi_mean, res.mi_sem);
    const auto trail = trailing_edge(res.delays_s, res.mi_mean, res.mi_sem);
    run["mi_leading_edge_ns"] = lead.time_s * 1e9;
    run["mi_leading_edge_unc_ns"] = lead.uncertainty_s * 1e9;
    run["mi_trailing_edge_ns"] = trail.time_s * 1e9;
    run["mi_trailing_edge_unc_ns"] = trail.uncertainty_s * 1e9;
    run["mi_fwhm_ns"] = (trail.time_s - lead.time_s) * 1e9;
    summary["runs"][cfg.label] = run;
    if (res.unphysical_flags > 0) all_physical = false;
    results.emplace(cfg.label, res);
  }

  // Correlation-peak advance of every medium run relative to the reference.
  const auto ref_it = results.find("reference");
  if (ref_it != results.end()) {
    for (const auto& [label, res] : results) {
      if (label == "reference") continue;
      const auto est = peak_advance(ref_it->second.corr_curves,
                                    res.corr_curves, res.delays_s, true);
      summary["runs"][label]["peak_advance_ns"] = est.advance_s * 1e9;
      summary["runs"][label]["peak_advance_sem_ns"] = est.sem_s * 1e9;
      summary["runs"][label]["peak_advance_mode_ns"] =
          est.histogram_mode_s * 1e9;
    }
  }

  write_text(fs::path(flags.out_dir) / "summary.json", summary.dump(2) + "\n");
  render_sweep_figures(flags.out_dir);
  std::printf("sweep: %zu run(s) -> %s\n", results.size(),
              flags.out_dir.c_str());
  return all_physical ? 0 : 1;
}

// ---------------------------------------------------------------------------
// kk

int cmd_kk(const std::string& gain_csv, const std::string& out_csv) {
  const auto profile = gain_profile_from_csv(read_text(gain_csv));
  const auto resp = kramers_kronig_phase(profile);
  write_text(out_csv, medium_response_to_csv(resp));
  std::printf("kk: %zu points -> %s\n", resp.freq_hz.size(), out_csv.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// theory-curves

std::string theory_csv(const std::vector<double>& r_dbs,
                       const std::vector<double>& gains) {
  std::ostringstream out;
  out << "r_db,gain,inseparability,mi_bits\n";
  out.precision(12);
  for (double rdb : r_dbs) {
    const double r = -0.5 * std::log(std::pow(10.0, rdb / 10.0));
    for (double g : gains) {
      const auto cov =
          apply_phase_insensitive_gain(epr_covariance(r), g, Mode::Conjugate);
      out << rdb << ',' << g << ',' << inseparability(cov) << ','
          << mutual_information(cov) << '\n';
    }
  }
  return out.str();
}

void render_theory_figure(const fs::path& dir) {
  const fs::path csv = dir / "theory_curves.csv";
  if (!fs::exists(csv)) return;
  std::istringstream in(read_text(csv));
  std::string line;
  std::getline(in, line);
  std::map<double, svg::Series> insep_by_r, mi_by_r;
  std::size_t color = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 4) throw std::runtime_error("bad theory CSV row");
    auto [it, fresh] = insep_by_r.try_emplace(vals[0]);
    if (fresh) {
      std::ostringstream label;
      label << vals[0] << " dB";
      it->second.label = label.str();
      it->second.color = kPalette[color % kPalette.size()];
      mi_by_r[vals[0]] = it->second;
      ++color;
    }
    it->second.x.push_back(vals[1]);
    it->second.y.push_back(vals[2]);
    mi_by_r[vals[0]].x.push_back(vals[1]);
    mi_by_r[vals[0]].y.push_back(vals[3]);
  }
  std::vector<svg::Series> insep_series, mi_series;
  for (auto& [r, s] : insep_by_r) insep_series.push_back(s);
  for (auto& [r, s] : mi_by_r) mi_series.push_back(s);
  write_text(dir / "figS4.svg",
             svg::render_plot("Gain channel: inseparability growth and MI "
                              "decay",
                              "gain G", "I (solid set) / MI bits (second set)",
                              [&] {
                                auto all = insep_series;
                                all.insert(all.end(), mi_series.begin(),
                                           mi_series.end());
                                return all;
                              }()));
}

int cmd_theory_curves(const std::string& out_dir,
                      std::vector<double> r_dbs, double g_max, double g_step,
                      bool force) {
  ensure_out_dir(out_dir, force);
  if (r_dbs.empty()) r_dbs = {-1.0, -2.0, -3.0, -4.0};
  std::vector<double> gains;
  for (double g = 1.0; g <= g_max + 1e-12; g += g_step) gains.push_back(g);
  write_text(fs::path(out_dir) / "theory_curves.csv", theory_csv(r_dbs, gains));

  json summary;
  summary["tool"] = kToolVersion;
  for (double rdb : r_dbs) {
    const double r = -0.5 * std::log(std::pow(10.0, rdb / 10.0));
    std::ostringstream key;
    key << rdb;
    summary["entanglement_breaking_gain"][key.str()] =
        entanglement_breaking_gain(r);
  }
  write_text(fs::path(out_dir) / "theory_summary.json", summary.dump(2) + "\n");
  render_theory_figure(out_dir);
  std::printf("theory-curves: %zu r values -> %s\n", r_dbs.size(),
              out_dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const std::string& out_dir) {
  render_sweep_figures(out_dir);
  render_theory_figure(out_dir);
  std::printf("report: figures refreshed in %s\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twin-beam entanglement through dispersive gain media: "
               "simulation, delay-sweep analysis and plotting"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string in_dir;
  double delay_ns = 0.0;
  std::vector<std::string> sweep_configs;
  std::optional<double> dmin_ns, dmax_ns, dstep_ns;
  std::string gain_csv, out_csv;
  std::vector<double> r_dbs;
  double g_max = 3.0, g_step = 0.05;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    if (needs_config) {
      cmd->add_option("--config", flags.config_path, "run configuration JSON")
          ->required()
          ->check(CLI::ExistingFile);
    }
    cmd->add_option("--out", flags.out_dir, "output directory")->required();
    cmd->add_option("--seed", flags.seed, "override acquisition seed");
    cmd->add_option("--trials", flags.trials, "override trial count");
    cmd->add_option("--jobs", flags.jobs, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--force", flags.force, "overwrite non-empty output");
  };

  auto* simulate = app.add_subcommand("simulate", "synthesize shot directories");
  add_common(simulate);

  auto* propagate =
      app.add_subcommand("propagate", "push shots through the config's medium");
  add_common(propagate);
  propagate->add_option("--in", in_dir, "input shot directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto* analyze =
      app.add_subcommand("analyze", "covariance and entanglement measures");
  add_common(analyze);
  analyze->add_option("--in", in_dir, "input shot directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  analyze->add_option("--delay-ns", delay_ns,
                      "conjugate detection delay in ns");

  auto* sweep = app.add_subcommand(
      "sweep", "full delay sweep for one or more configurations");
  sweep
      ->add_option("--config", sweep_configs,
                   "configuration JSON (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", flags.out_dir, "output directory")->required();
  sweep->add_option("--seed", flags.seed, "override acquisition seed");
  sweep->add_option("--trials", flags.trials, "override trial count");
  sweep->add_option("--jobs", flags.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--force", flags.force, "overwrite non-empty output");
  sweep->add_option("--delay-min", dmin_ns, "sweep start (ns)");
  sweep->add_option("--delay-max", dmax_ns, "sweep end (ns)");
  sweep->add_option("--delay-step", dstep_ns, "sweep step (ns)");

  auto* kk = app.add_subcommand(
      "kk", "Kramers-Kronig phase from a gain profile CSV");
  kk->add_option("--gain-csv", gain_csv, "input CSV (freq_hz,gain)")
      ->required()
      ->check(CLI::ExistingFile);
  kk->add_option("--out", out_csv, "output medium response CSV")->required();

  auto* theory = app.add_subcommand(
      "theory-curves", "closed-form inseparability and MI vs gain");
  theory->add_option("--out", flags.out_dir, "output directory")->required();
  theory->add_option("--r-db", r_dbs, "squeezing levels in dB (repeatable)");
  theory->add_option("--g-max", g_max, "maximum gain");
  theory->add_option("--g-step", g_step, "gain step");
  theory->add_flag("--force", flags.force, "overwrite non-empty output");

  auto* report = app.add_subcommand(
      "report", "re-render every figure from its backing CSV");
  report->add_option("--out", flags.out_dir, "directory holding the CSVs")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(flags);
    if (propagate->parsed()) return cmd_propagate(flags, in_dir);
    if (analyze->parsed()) return cmd_analyze(flags, in_dir, delay_ns);
    if (sweep->parsed()) {
      return cmd_sweep(flags, sweep_configs, dmin_ns, dmax_ns, dstep_ns);
    }
    if (kk->parsed()) return cmd_kk(gain_csv, out_csv);
    if (theory->parsed()) {
      return cmd_theory_curves(flags.out_dir, r_dbs, g_max, g_step,
                               flags.force);
    }
    if (report->parsed()) return cmd_report(flags.out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "twinbeam: %s\n", e.what());
    return 1;
  }
  return 0;
}
