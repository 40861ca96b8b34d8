#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "gpev/grid.hpp"

namespace gpev {

using cd = std::complex<double>;

/// Tridiagonal rows: entry (i,i) = diag[i], (i,i-1) = lower[i],
/// (i,i+1) = upper[i]; lower[0] and upper[m-1] are zero.
struct Tridiag {
  std::vector<double> diag, lower, upper;

  std::size_t size() const { return diag.size(); }
};

/// One-dimensional nonuniform FD Laplacian with the homogeneous-Neumann
/// boundary rows exactly as printed: first row (-2/h1^2, 2/h1^2), interior
/// three-point stencil, mirrored last row. Nonsymmetric.
Tridiag laplacian_rows(const Grid1D& g);

struct Symmetrized {
  Tridiag aw;     // W^{1/2} A W^{-1/2}, symmetric tridiagonal
  double defect;  // max |(WA)_ij - (WA)_ji| / max |WA|
};

/// Similarity transform by the trapezoidal weights; throws if WA fails the
/// symmetry certification at 1e-12 relative (weight/grid mismatch).
Symmetrized symmetrize(const Tridiag& a, const std::vector<double>& w);

/// Coordinate-format text dump (row col value), for small operators.
void dump_matrix(const Tridiag& a, std::ostream& os);

/// Two-dimensional Kronecker-sum Laplacian I (x) Ax + Ay (x) I on a tensor
/// grid, with the per-axis symmetrized forms and flattened weights. Fields
/// are row-major [iy][ix].
class FdLaplacian {
 public:
  explicit FdLaplacian(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t points() const { return nx_ * ny_; }
  const std::vector<double>& weights() const { return w_; }
  double symmetry_defect() const { return defect_; }
  const Tridiag& axis_x() const { return ax_; }
  const Tridiag& axis_y() const { return ay_; }
  const Tridiag& axis_x_sym() const { return sx_; }
  const Tridiag& axis_y_sym() const { return sy_; }

  /// out = A v (nonsymmetric operator; reference path for tests).
  void apply(const cd* v, cd* out) const;
  /// out = A_w v (symmetrized operator; used by the exp-action).
  void apply_sym(const cd* v, cd* out) const;

  void to_z(std::vector<cd>& y) const;    // y <- W^{1/2} y
  void from_z(std::vector<cd>& z) const;  // z <- W^{-1/2} z

 private:
  Grid2D grid_;
  std::size_t nx_ = 0, ny_ = 0;
  Tridiag ax_, ay_, sx_, sy_;
  std::vector<double> w_, sqrtw_, isqrtw_;
  // duplicated per re/im lane coefficient arrays for the x-sweep kernels
  std::vector<double> sxd2_, sxl2_, sxu2_, axd2_, axl2_, axu2_;
  double defect_ = 0;

  void sweep(const Tridiag& tx, const std::vector<double>& d2,
             const std::vector<double>& l2, const std::vector<double>& u2,
             const Tridiag& ty, const cd* v, cd* out) const;
};

struct ExpActionOptions {
  double rel_tol = 1e-12;
  int max_basis = 128;
  int max_restarts = 1;
};

struct ExpActionStats {
  int basis = 0;     // largest Lanczos basis used
  int restarts = 0;  // time-step splittings taken
  double err_est = 0;
};

/// z <- exp(i (tau/2) A_w) z by symmetric Lanczos with full
/// reorthogonalization; relative error controlled to opts.rel_tol.
ExpActionStats expi_action(const FdLaplacian& l, double tau,
                           std::vector<cd>& z,
                           const ExpActionOptions& opts = {});

/// Kinetic half of the splitting on the physical samples:
/// y <- W^{-1/2} exp(i (tau/2) A_w) W^{1/2} y. Preserves the weighted mass
/// w^T |y|^2 to the exp-action tolerance.
ExpActionStats kinetic_step_fd(const FdLaplacian& l, double tau,
                               std::vector<cd>& y,
                               const ExpActionOptions& opts = {});

}  // namespace gpev
