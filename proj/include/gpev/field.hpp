#pragma once

#include <complex>
#include <vector>

#include "gpev/grid.hpp"

namespace gpev {

/// Complex samples of the wave function on a tensor grid, row-major
/// [iy * nx + ix] with x fastest. The grid's layout tag distinguishes the
/// physical square from a mirrored extension.
struct WaveField {
  std::vector<std::complex<double>> values;
  Grid2D grid;
  double time = 0;

  std::size_t nx() const { return grid.gx.size(); }
  std::size_t ny() const { return grid.gy.size(); }

  std::complex<double>& at(std::size_t ix, std::size_t iy) {
    return values[iy * nx() + ix];
  }
  const std::complex<double>& at(std::size_t ix, std::size_t iy) const {
    return values[iy * nx() + ix];
  }
};

}  // namespace gpev
