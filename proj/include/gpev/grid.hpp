#pragma once

#include <cstddef>
#include <vector>

namespace gpev {

enum class GridKind { uniform, geometric };

/// Node closure of a 1D grid on [-L, L].
///   closed:   x_0 = -L, x_{m-1} = +L; m-1 steps (finite differences).
///   periodic: x_i = -L + i*2L/m, +L excluded; the wrap step completes 2L
///             (Fourier side). Quadrature weights are then uniform.
enum class Closure { closed, periodic };

struct Grid1D {
  std::vector<double> x;  // strictly increasing nodes
  std::vector<double> h;  // steps x_{i+1}-x_i; for periodic grids the wrap
                          // step 2L - (x_last - x_0) is appended
  std::vector<double> w;  // trapezoidal quadrature weights, sum = 2L
  GridKind kind = GridKind::uniform;
  Closure closure = Closure::closed;
  double L = 0;
  double delta = 0;    // geometric growth rate (0 for uniform)
  double ratio_K = 1;  // h_max / h_min on a half-domain

  std::size_t size() const { return x.size(); }
};

enum class Layout { physical, mirrored };

struct Grid2D {
  Grid1D gx, gy;
  Layout layout = Layout::physical;

  std::size_t points() const { return gx.size() * gy.size(); }
};

Grid1D build_uniform(double L, std::size_t m, Closure closure);

/// Geometric grid symmetric about the origin: on each half, n = round(L/mean)
/// steps starting at h_min with ratio 1+delta chosen by bisection so the half
/// sums to L exactly. m = 2n+1 nodes. Warns (ratio_K recorded) outside [2,50].
Grid1D build_geometric(double L, double h_min, double target_mean);

/// Step-count-doubled refinement with ratio sqrt(1+delta) and the first step
/// re-solved so the boundary is still hit exactly.
Grid1D refine_geometric(const Grid1D& g);

/// Trapezoidal weights of a grid (same vector stored in Grid1D::w).
std::vector<double> trapezoidal_weights(const Grid1D& g);

Grid2D make_grid2d(const Grid1D& axis, Layout layout = Layout::physical);

/// Flattened tensor-product weights, row-major [iy][ix].
std::vector<double> tensor_weights(const Grid2D& g);

}  // namespace gpev
