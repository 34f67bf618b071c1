#include "core/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "core/errors.hpp"

namespace hvbk {

namespace {

// fftw's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int g_fft_threads = 1;

}  // namespace

int set_fft_threads(int threads) {
  std::lock_guard lock(planner_mutex());
  static bool initialized = false;
  if (threads < 1) threads = 1;
  if (!initialized) {
    fftw_init_threads();
    initialized = true;
  }
  fftw_plan_with_nthreads(threads);
  g_fft_threads = threads;
  return g_fft_threads;
}

std::shared_ptr<const Grid> Grid::create(int n, double length) {
  if (n < 8 || n % 2 != 0) {
    throw Error(ErrorCode::invalid_argument,
                "grid.n must be even and >= 8, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::invalid_argument, "grid.length must be positive");
  }
  return std::shared_ptr<const Grid>(new Grid(n, length));
}

Grid::Grid(int n, double length)
    : n_(n), length_(length), k0_(2.0 * std::numbers::pi / length) {
  const std::size_t ns = spectral_size();
  kx_.resize(ns);
  ky_.resize(ns);
  k2_.resize(ns);
  dkx_.resize(ns);
  dky_.resize(ns);
  weight_.resize(ns);
  mask_.resize(ns);
  const int half = n_ / 2;
  for (int ix = 0; ix < n_; ++ix) {
    const int jx = kx_index(ix);
    for (int jy = 0; jy < nky(); ++jy) {
      const std::size_t s = std::size_t(ix) * nky() + jy;
      kx_[s] = k0_ * jx;
      ky_[s] = k0_ * jy;
      k2_[s] = kx_[s] * kx_[s] + ky_[s] * ky_[s];
      dkx_[s] = (ix == half) ? 0.0 : kx_[s];
      dky_[s] = (jy == half) ? 0.0 : ky_[s];
      weight_[s] = (jy == 0 || jy == half) ? 1.0 : 2.0;
      // Two-thirds rule on each axis.
      mask_[s] = (3 * std::abs(jx) < n_ && 3 * jy < n_) ? 1 : 0;
    }
  }

  std::vector<double> phys(physical_size());
  std::vector<Complex> spec(ns);
  auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plan_r2c_ = fftw_plan_dft_r2c_2d(n_, n_, phys.data(), cspec, flags);
  plan_c2r_ = fftw_plan_dft_c2r_2d(n_, n_, cspec, phys.data(), flags);
  if (plan_r2c_ == nullptr || plan_c2r_ == nullptr) {
    throw Error(ErrorCode::invalid_argument, "fftw planning failed");
  }
}

Grid::~Grid() {
  std::lock_guard lock(planner_mutex());
  if (plan_r2c_) fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  if (plan_c2r_) fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

void Grid::forward(std::span<const double> phys, std::span<Complex> spec) const {
  if (phys.size() != physical_size() || spec.size() != spectral_size()) {
    throw Error(ErrorCode::invalid_argument, "forward transform: size mismatch");
  }
  // r2c does not modify its input.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_),
                       const_cast<double*>(phys.data()),
                       reinterpret_cast<fftw_complex*>(spec.data()));
  const double scale = 1.0 / double(physical_size());
  for (auto& c : spec) c *= scale;
}

void Grid::inverse(std::span<const Complex> spec, std::span<double> phys) const {
  if (phys.size() != physical_size() || spec.size() != spectral_size()) {
    throw Error(ErrorCode::invalid_argument, "inverse transform: size mismatch");
  }
  // c2r destroys its input.
  std::vector<Complex> scratch(spec.begin(), spec.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_),
                       reinterpret_cast<fftw_complex*>(scratch.data()),
                       phys.data());
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::gauge_violation: return "gauge_violation";
    case ErrorCode::not_divergence_free: return "not_divergence_free";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
    case ErrorCode::checkpoint_corrupt: return "checkpoint_corrupt";
    case ErrorCode::checkpoint_truncated: return "checkpoint_truncated";
    case ErrorCode::checkpoint_version: return "checkpoint_version";
    case ErrorCode::blowup: return "blowup";
  }
  return "unknown";
}

}  // namespace hvbk
