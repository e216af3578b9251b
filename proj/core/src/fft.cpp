#include "twinbeam/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace tbl::fft {

namespace {
// FFTW planning is not thread-safe; execution of a private plan is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

std::vector<std::complex<double>> real_forward(const std::vector<double>& in) {
  if (in.empty()) throw std::invalid_argument("fft: empty input");
  const std::size_t n = in.size();
  std::vector<double> buf(in);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<double> real_inverse(const std::vector<std::complex<double>>& in,
                                 std::size_t n) {
  if (in.size() != n / 2 + 1) {
    throw std::invalid_argument("fft: spectrum size does not match n");
  }
  std::vector<std::complex<double>> buf(in);
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(buf.data()),
                                out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

std::vector<std::complex<double>> complex_dft(
    const std::vector<std::complex<double>>& in, int sign) {
  if (in.empty()) throw std::invalid_argument("fft: empty input");
  std::vector<std::complex<double>> buf(in);
  std::vector<std::complex<double>> out(in.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(in.size()),
                            reinterpret_cast<fftw_complex*>(buf.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace tbl::fft
