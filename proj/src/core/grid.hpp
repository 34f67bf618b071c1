#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace hvbk {

using Complex = std::complex<double>;

// Periodic square [0, L)^2 sampled on n x n points, with the real-to-complex
// half spectrum as the spectral layout.
//
// Physical layout: row-major, index ix * n + iy (y fastest), x = ix * L / n.
// Spectral layout: index ix * (n/2 + 1) + jy. The x wavenumber index follows
// the standard transform ordering (ix for ix < n/2, ix - n otherwise); the y
// index covers 0..n/2 only. Coefficients are stored normalized, i.e.
//   f(x) = sum_k c_k exp(i k.x),   c_0 = mean of f.
class Grid {
 public:
  // n >= 8 and even.
  static std::shared_ptr<const Grid> create(int n, double length);

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n() const noexcept { return n_; }
  int nky() const noexcept { return n_ / 2 + 1; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / n_; }
  double cell_area() const noexcept { return dx() * dx(); }
  // 2 pi / L
  double k0() const noexcept { return k0_; }

  std::size_t physical_size() const noexcept { return std::size_t(n_) * n_; }
  std::size_t spectral_size() const noexcept { return std::size_t(n_) * nky(); }

  // Integer wavenumber indices.
  int kx_index(int ix) const noexcept { return ix < n_ / 2 ? ix : ix - n_; }
  int ky_index(int jy) const noexcept { return jy; }

  // Physical wavenumbers for spectral index s.
  double kx(std::size_t s) const noexcept { return kx_[s]; }
  double ky(std::size_t s) const noexcept { return ky_[s]; }
  double k2(std::size_t s) const noexcept { return k2_[s]; }
  // Wavenumbers used by first derivatives: zero on the Nyquist lines, where a
  // real field cannot carry an odd derivative.
  double dkx(std::size_t s) const noexcept { return dkx_[s]; }
  double dky(std::size_t s) const noexcept { return dky_[s]; }
  bool dealias(std::size_t s) const noexcept { return mask_[s] != 0; }
  // Number of full-spectrum modes represented by half-spectrum entry s (1 or 2).
  double weight(std::size_t s) const noexcept { return weight_[s]; }

  double x(int ix) const noexcept { return ix * dx(); }
  double y(int iy) const noexcept { return iy * dx(); }

  bool same_as(const Grid& other) const noexcept {
    return this == &other || (n_ == other.n_ && length_ == other.length_);
  }

  // Physical -> normalized coefficients.
  void forward(std::span<const double> phys, std::span<Complex> spec) const;
  // Normalized coefficients -> physical.
  void inverse(std::span<const Complex> spec, std::span<double> phys) const;

 private:
  Grid(int n, double length);

  int n_;
  double length_;
  double k0_;
  std::vector<double> kx_, ky_, k2_, dkx_, dky_, weight_;
  std::vector<unsigned char> mask_;
  void* plan_r2c_ = nullptr;
  void* plan_c2r_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

// Threads used by transform plans created after this call. Returns the value
// in effect.
int set_fft_threads(int threads);

}  // namespace hvbk
