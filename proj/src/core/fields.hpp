#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "core/errors.hpp"
#include "core/grid.hpp"

namespace hvbk {

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!a.same_as(b)) {
    throw Error(ErrorCode::grid_mismatch, std::string(where) + ": fields live on different grids");
  }
}

// Real scalar field sampled on the collocation points.
class PhysicalField {
 public:
  PhysicalField() = default;
  explicit PhysicalField(GridPtr grid) : grid_(std::move(grid)), v_(grid_->physical_size(), 0.0) {}
  PhysicalField(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), v_(std::move(values)) {
    if (v_.size() != grid_->physical_size()) {
      throw Error(ErrorCode::invalid_argument, "physical field: wrong number of samples");
    }
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return v_.size(); }

  double& operator()(int ix, int iy) { return v_[std::size_t(ix) * grid_->n() + iy]; }
  double operator()(int ix, int iy) const { return v_[std::size_t(ix) * grid_->n() + iy]; }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }

  std::span<double> values() { return v_; }
  std::span<const double> values() const { return v_; }

 private:
  GridPtr grid_;
  std::vector<double> v_;
};

// Half-spectrum coefficients of a real field; see Grid for the layout.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(GridPtr grid) : grid_(std::move(grid)), c_(grid_->spectral_size()) {}

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return c_.size(); }

  Complex& operator[](std::size_t s) { return c_[s]; }
  const Complex& operator[](std::size_t s) const { return c_[s]; }

  std::span<Complex> coefficients() { return c_; }
  std::span<const Complex> coefficients() const { return c_; }

  Complex mean() const { return c_[0]; }

  SpectralField& operator+=(const SpectralField& o) {
    require_same_grid(grid(), o.grid(), "operator+=");
    for (std::size_t s = 0; s < c_.size(); ++s) c_[s] += o.c_[s];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same_grid(grid(), o.grid(), "operator-=");
    for (std::size_t s = 0; s < c_.size(); ++s) c_[s] -= o.c_[s];
    return *this;
  }
  SpectralField& operator*=(double a) {
    for (auto& c : c_) c *= a;
    return *this;
  }
  // this += a * o
  SpectralField& axpy(double a, const SpectralField& o) {
    require_same_grid(grid(), o.grid(), "axpy");
    for (std::size_t s = 0; s < c_.size(); ++s) c_[s] += a * o.c_[s];
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

 private:
  GridPtr grid_;
  std::vector<Complex> c_;
};

struct PhysicalVector {
  PhysicalField x, y;
};

struct SpectralVector {
  SpectralField x, y;

  const Grid& grid() const { return x.grid(); }

  SpectralVector& operator+=(const SpectralVector& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  SpectralVector& operator-=(const SpectralVector& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  SpectralVector& operator*=(double a) {
    x *= a;
    y *= a;
    return *this;
  }
  SpectralVector& axpy(double a, const SpectralVector& o) {
    x.axpy(a, o.x);
    y.axpy(a, o.y);
    return *this;
  }
  friend SpectralVector operator+(SpectralVector a, const SpectralVector& b) { return a += b; }
  friend SpectralVector operator-(SpectralVector a, const SpectralVector& b) { return a -= b; }
  friend SpectralVector operator*(double a, SpectralVector v) { return v *= a; }
};

}  // namespace hvbk
