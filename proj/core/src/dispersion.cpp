#include "twinbeam/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "twinbeam/fft.hpp"

namespace tbl {

namespace {

constexpr double kPi = std::numbers::pi;

// Discrete Hilbert transform (H[cos] = sin convention) on a mirrored
// periodic extension of 16x the input length. The input is assumed to decay
// to ~0 at both edges; the long period pushes the periodic images far
// enough out that their 1/distance phase tails stay well under 1% of peak.
std::vector<double> hilbert_mirrored(const std::vector<double>& s) {
  const std::size_t n = s.size();
  std::vector<std::complex<double>> ext;
  ext.reserve(16 * n);
  // [reverse(s), s] repeated: continuous at every join, period 16n.
  for (std::size_t rep = 0; rep < 8; ++rep) {
    for (std::size_t i = 0; i < n; ++i) ext.emplace_back(s[n - 1 - i], 0.0);
    for (std::size_t i = 0; i < n; ++i) ext.emplace_back(s[i], 0.0);
  }
  auto spec = fft::complex_dft(ext, -1);
  const std::size_t m = spec.size();
  spec[0] = 0.0;
  spec[m / 2] = 0.0;
  for (std::size_t k = 1; k < m / 2; ++k) {
    spec[k] *= std::complex<double>(0.0, -1.0);
    spec[m - k] *= std::complex<double>(0.0, 1.0);
  }
  auto back = fft::complex_dft(spec, +1);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) out[i] = back[n + i].real() * scale;
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream is(line);
  std::string cell;
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

GainProfile::GainProfile(std::vector<double> freq_hz, std::vector<double> gain)
    : freq_(std::move(freq_hz)), gain_(std::move(gain)) {
  if (freq_.size() < 4 || freq_.size() != gain_.size()) {
    throw std::invalid_argument("GainProfile: need matching grids, >= 4 points");
  }
  const double step = freq_[1] - freq_[0];
  if (!(step > 0.0)) throw std::invalid_argument("GainProfile: grid not increasing");
  for (std::size_t i = 1; i < freq_.size(); ++i) {
    if (std::abs((freq_[i] - freq_[i - 1]) - step) > 1e-6 * step) {
      throw std::invalid_argument("GainProfile: grid spacing not uniform");
    }
  }
  for (double g : gain_) {
    if (!std::isfinite(g) || g < 0.0) {
      throw std::invalid_argument("GainProfile: gain must be finite and >= 0");
    }
  }
}

GainProfile synth_gain_profile(const std::vector<LorentzianLine>& lines,
                               const std::vector<double>& freq_hz) {
  if (freq_hz.size() < 4) throw std::invalid_argument("synth_gain_profile: grid too small");
  const double lo = freq_hz.front();
  const double hi = freq_hz.back();
  const double margin = 0.05 * (hi - lo);
  for (const auto& line : lines) {
    if (!(line.width_hz > 0.0)) {
      throw std::invalid_argument("synth_gain_profile: line width must be > 0");
    }
    if (line.peak_gain < 0.0) {
      throw std::invalid_argument("synth_gain_profile: peak gain must be >= 0");
    }
    if (line.center_hz < lo + margin || line.center_hz > hi - margin) {
      throw std::invalid_argument(
          "synth_gain_profile: line center too close to the grid edge");
    }
  }
  std::vector<double> gain(freq_hz.size(), 1.0);
  for (const auto& line : lines) {
    const double g2 = line.width_hz * line.width_hz;
    for (std::size_t i = 0; i < freq_hz.size(); ++i) {
      const double d = freq_hz[i] - line.center_hz;
      gain[i] += line.peak_gain * g2 / (d * d + g2);
    }
  }
  return GainProfile(std::vector<double>(freq_hz), std::move(gain));
}

MediumResponse kramers_kronig_phase(const GainProfile& profile,
                                    double edge_tol) {
  const auto& g = profile.gain();
  const std::size_t n = g.size();
  if (std::abs(g.front() - 1.0) > edge_tol || std::abs(g.back() - 1.0) > edge_tol) {
    throw std::invalid_argument(
        "kramers_kronig_phase: gain does not settle to 1 at the grid edges");
  }
  std::vector<double> log_amp(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i] < 1.0 - 1e-12) {
      throw std::invalid_argument(
          "kramers_kronig_phase: gain < 1 (absorption is out of scope)");
    }
    log_amp[i] = 0.5 * std::log(std::max(g[i], 1.0));
  }
  const std::vector<double> h = hilbert_mirrored(log_amp);

  MediumResponse resp;
  resp.freq_hz = profile.freq();
  resp.amplitude.resize(n);
  resp.phase_rad.resize(n);
  resp.group_delay_s.resize(n);
  resp.noise_coupling.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    resp.amplitude[i] = std::sqrt(std::max(g[i], 1.0));
    resp.phase_rad[i] = -h[i];
    resp.noise_coupling[i] = std::max(g[i], 1.0) - 1.0;
  }
  // tau_g = -dphi/d(2 pi f), centered second-order, one-sided at the ends.
  const double df = profile.spacing_hz();
  for (std::size_t i = 0; i < n; ++i) {
    double dphi;
    if (i == 0) {
      dphi = (resp.phase_rad[1] - resp.phase_rad[0]) / df;
    } else if (i == n - 1) {
      dphi = (resp.phase_rad[n - 1] - resp.phase_rad[n - 2]) / df;
    } else {
      dphi = (resp.phase_rad[i + 1] - resp.phase_rad[i - 1]) / (2.0 * df);
    }
    resp.group_delay_s[i] = -dphi / (2.0 * kPi);
  }
  return resp;
}

double group_delay_in_band(const MediumResponse& resp, double f_lo_hz,
                           double f_hi_hz) {
  if (!(f_lo_hz < f_hi_hz)) {
    throw std::invalid_argument("group_delay_in_band: empty band");
  }
  if (f_lo_hz < resp.freq_hz.front() || f_hi_hz > resp.freq_hz.back()) {
    throw std::invalid_argument("group_delay_in_band: band outside grid");
  }
  double wsum = 0.0;
  double tsum = 0.0;
  for (std::size_t i = 0; i < resp.freq_hz.size(); ++i) {
    const double f = resp.freq_hz[i];
    if (f < f_lo_hz || f > f_hi_hz) continue;
    const double w = resp.amplitude[i] * resp.amplitude[i];  // intensity gain
    wsum += w;
    tsum += w * resp.group_delay_s[i];
  }
  if (wsum == 0.0) {
    throw std::invalid_argument("group_delay_in_band: no grid points in band");
  }
  return tsum / wsum;
}

TransferPoint transfer_at(const MediumResponse& resp, double f_hz) {
  const auto& freq = resp.freq_hz;
  if (f_hz < freq.front() || f_hz > freq.back()) {
    throw std::invalid_argument("transfer_at: frequency outside grid");
  }
  const auto it = std::upper_bound(freq.begin(), freq.end(), f_hz);
  std::size_t hi = std::min<std::size_t>(it - freq.begin(), freq.size() - 1);
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double w = (f_hz - freq[lo]) / (freq[hi] - freq[lo]);
  const double amp = (1.0 - w) * resp.amplitude[lo] + w * resp.amplitude[hi];
  const double ph = (1.0 - w) * resp.phase_rad[lo] + w * resp.phase_rad[hi];
  const double nc =
      (1.0 - w) * resp.noise_coupling[lo] + w * resp.noise_coupling[hi];
  return TransferPoint{std::polar(amp, ph), nc};
}

TransferPoint transfer_or_identity(const MediumResponse& resp, double f_hz) {
  if (f_hz < resp.freq_hz.front() || f_hz > resp.freq_hz.back()) {
    return TransferPoint{{1.0, 0.0}, 0.0};
  }
  return transfer_at(resp, f_hz);
}

std::string gain_profile_to_csv(const GainProfile& profile) {
  std::ostringstream os;
  os.precision(15);
  os << "freq_hz,gain\n";
  for (std::size_t i = 0; i < profile.freq().size(); ++i) {
    os << profile.freq()[i] << ',' << profile.gain()[i] << '\n';
  }
  return os.str();
}

GainProfile gain_profile_from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || split_line(line) != std::vector<std::string>{"freq_hz", "gain"}) {
    throw std::invalid_argument("gain profile CSV: missing 'freq_hz,gain' header");
  }
  std::vector<double> freq, gain;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != 2) {
      throw std::invalid_argument("gain profile CSV: row " + std::to_string(row) +
                                  ": expected 2 columns");
    }
    try {
      freq.push_back(std::stod(cells[0]));
      gain.push_back(std::stod(cells[1]));
    } catch (const std::exception&) {
      throw std::invalid_argument("gain profile CSV: row " + std::to_string(row) +
                                  ": non-numeric value");
    }
  }
  return GainProfile(std::move(freq), std::move(gain));
}

std::string medium_response_to_csv(const MediumResponse& resp) {
  std::ostringstream os;
  os.precision(15);
  os << "freq_hz,amplitude,phase_rad,group_delay_s,noise_coupling\n";
  for (std::size_t i = 0; i < resp.freq_hz.size(); ++i) {
    os << resp.freq_hz[i] << ',' << resp.amplitude[i] << ',' << resp.phase_rad[i]
       << ',' << resp.group_delay_s[i] << ',' << resp.noise_coupling[i] << '\n';
  }
  return os.str();
}

MediumResponse medium_response_from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  const std::vector<std::string> header = {"freq_hz", "amplitude", "phase_rad",
                                           "group_delay_s", "noise_coupling"};
  if (!std::getline(is, line) || split_line(line) != header) {
    throw std::invalid_argument("medium response CSV: bad header");
  }
  MediumResponse resp;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != 5) {
      throw std::invalid_argument("medium response CSV: row " +
                                  std::to_string(row) + ": expected 5 columns");
    }
    try {
      resp.freq_hz.push_back(std::stod(cells[0]));
      resp.amplitude.push_back(std::stod(cells[1]));
      resp.phase_rad.push_back(std::stod(cells[2]));
      resp.group_delay_s.push_back(std::stod(cells[3]));
      resp.noise_coupling.push_back(std::stod(cells[4]));
    } catch (const std::exception&) {
      throw std::invalid_argument("medium response CSV: row " +
                                  std::to_string(row) + ": non-numeric value");
    }
  }
  return resp;
}

}  // namespace tbl
