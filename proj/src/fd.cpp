#include "gpev/fd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>

#include "gpev/kernels.hpp"
#include "gpev/parallel.hpp"

namespace gpev {
namespace {

void duplicate_lanes(const std::vector<double>& c, std::vector<double>& out) {
  out.resize(2 * c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[2 * i] = out[2 * i + 1] = c[i];
}

}  // namespace

Tridiag laplacian_rows(const Grid1D& g) {
  const std::size_t m = g.size();
  if (m < 3) throw std::invalid_argument("laplacian_rows: need m >= 3");
  const auto& h = g.h;
  for (double hi : h)
    if (!(hi > 0)) throw std::invalid_argument("laplacian_rows: step h <= 0");
  Tridiag a;
  a.diag.assign(m, 0.0);
  a.lower.assign(m, 0.0);
  a.upper.assign(m, 0.0);
  a.diag[0] = -2.0 / (h[0] * h[0]);
  a.upper[0] = 2.0 / (h[0] * h[0]);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double hm = h[i - 1], hp = h[i];
    a.lower[i] = 2.0 / (hm * (hm + hp));
    a.diag[i] = -2.0 / (hm * hp);
    a.upper[i] = 2.0 / (hp * (hm + hp));
  }
  const double hl = h[m - 2];
  a.lower[m - 1] = 2.0 / (hl * hl);
  a.diag[m - 1] = -2.0 / (hl * hl);
  return a;
}

Symmetrized symmetrize(const Tridiag& a, const std::vector<double>& w) {
  const std::size_t m = a.size();
  if (w.size() != m)
    throw std::invalid_argument("symmetrize: weight/grid size mismatch");
  double maxwa = 0, defect = 0;
  for (std::size_t i = 0; i < m; ++i) {
    maxwa = std::max(maxwa, std::abs(w[i] * a.diag[i]));
    if (i + 1 < m) {
      const double up = w[i] * a.upper[i], lo = w[i + 1] * a.lower[i + 1];
      maxwa = std::max({maxwa, std::abs(up), std::abs(lo)});
      defect = std::max(defect, std::abs(up - lo));
    }
  }
  Symmetrized s;
  s.defect = defect / maxwa;
  if (!(s.defect <= 1e-12))
    throw std::runtime_error("symmetrize: WA symmetry check failed");
  s.aw.diag = a.diag;
  s.aw.lower.assign(m, 0.0);
  s.aw.upper.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double off = std::sqrt(a.upper[i] * a.lower[i + 1]);
    s.aw.upper[i] = off;
    s.aw.lower[i + 1] = off;
  }
  return s;
}

void dump_matrix(const Tridiag& a, std::ostream& os) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0 && a.lower[i] != 0) os << i << ' ' << i - 1 << ' ' << a.lower[i] << '\n';
    os << i << ' ' << i << ' ' << a.diag[i] << '\n';
    if (i + 1 < a.size() && a.upper[i] != 0)
      os << i << ' ' << i + 1 << ' ' << a.upper[i] << '\n';
  }
}

FdLaplacian::FdLaplacian(const Grid2D& grid) : grid_(grid) {
  nx_ = grid.gx.size();
  ny_ = grid.gy.size();
  ax_ = laplacian_rows(grid.gx);
  ay_ = laplacian_rows(grid.gy);
  auto symx = symmetrize(ax_, grid.gx.w);
  auto symy = symmetrize(ay_, grid.gy.w);
  sx_ = std::move(symx.aw);
  sy_ = std::move(symy.aw);
  defect_ = std::max(symx.defect, symy.defect);

  w_ = tensor_weights(grid_);
  sqrtw_.resize(w_.size());
  isqrtw_.resize(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) {
    sqrtw_[i] = std::sqrt(w_[i]);
    isqrtw_[i] = 1.0 / sqrtw_[i];
  }
  duplicate_lanes(sx_.diag, sxd2_);
  duplicate_lanes(sx_.lower, sxl2_);
  duplicate_lanes(sx_.upper, sxu2_);
  duplicate_lanes(ax_.diag, axd2_);
  duplicate_lanes(ax_.lower, axl2_);
  duplicate_lanes(ax_.upper, axu2_);
}

void FdLaplacian::sweep(const Tridiag& /*tx*/, const std::vector<double>& d2,
                        const std::vector<double>& l2,
                        const std::vector<double>& u2, const Tridiag& ty,
                        const cd* v, cd* out) const {
  const auto& ops = kernels::active();
  const std::size_t nx = nx_, ny = ny_;
  parallel_for(0, ny, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t iy = lo; iy < hi; ++iy) {
      auto* orow = reinterpret_cast<double*>(out + iy * nx);
      const auto* vrow = reinterpret_cast<const double*>(v + iy * nx);
      std::fill(orow, orow + 2 * nx, 0.0);
      ops.stencil3(orow, vrow, d2.data(), l2.data(), u2.data(), 2 * nx);
      const auto* vm = iy > 0 ? vrow - 2 * nx : nullptr;
      const auto* vp = iy + 1 < ny ? vrow + 2 * nx : nullptr;
      ops.acc3(orow, ty.lower[iy], vm, ty.diag[iy], vrow, ty.upper[iy], vp,
               2 * nx);
    }
  });
}

void FdLaplacian::apply(const cd* v, cd* out) const {
  sweep(ax_, axd2_, axl2_, axu2_, ay_, v, out);
}

void FdLaplacian::apply_sym(const cd* v, cd* out) const {
  sweep(sx_, sxd2_, sxl2_, sxu2_, sy_, v, out);
}

void FdLaplacian::to_z(std::vector<cd>& y) const {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= sqrtw_[i];
}

void FdLaplacian::from_z(std::vector<cd>& z) const {
  for (std::size_t i = 0; i < z.size(); ++i) z[i] *= isqrtw_[i];
}

namespace {

// exp(i theta T_m) e1 for the symmetric tridiagonal Lanczos projection
Eigen::VectorXcd expi_tridiag_e1(const std::vector<double>& alpha,
                                 const std::vector<double>& beta,
                                 double theta) {
  const int m = int(alpha.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd e(m > 1 ? m - 1 : 1);
  for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e.head(std::max(0, m - 1)),
                            Eigen::ComputeEigenvectors);
  const auto& U = es.eigenvectors();
  Eigen::VectorXcd c(m);
  for (int k = 0; k < m; ++k)
    c[k] = std::polar(1.0, theta * es.eigenvalues()[k]) * U(0, k);
  return U * c;
}

ExpActionStats expi_action_rec(const FdLaplacian& l, double tau,
                               std::vector<cd>& z,
                               const ExpActionOptions& opts, int depth) {
  const auto& ops = kernels::active();
  const std::size_t n = z.size();
  const double theta = tau / 2;

  const double beta0sq = ops.nrm2sq(z.data(), n);
  ExpActionStats stats;
  if (beta0sq == 0.0) return stats;
  const double beta0 = std::sqrt(beta0sq);

  std::vector<std::vector<cd>> V;
  V.emplace_back(z);
  ops.scal(1.0 / beta0, V[0].data(), n);

  std::vector<double> alpha, betas;
  std::vector<cd> w(n);
  Eigen::VectorXcd coef;

  for (int j = 0; j < opts.max_basis; ++j) {
    l.apply_sym(V[j].data(), w.data());
    const double aj = ops.dotc(V[j].data(), w.data(), n).real();
    alpha.push_back(aj);
    ops.axpy(cd(-aj, 0.0), V[j].data(), w.data(), n);
    if (j > 0) ops.axpy(cd(-betas[j - 1], 0.0), V[j - 1].data(), w.data(), n);
    // two-pass reorthogonalization keeps the basis orthonormal to machine
    // precision, which the per-step mass budget relies on
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) {
        const cd c = ops.dotc(V[i].data(), w.data(), n);
        ops.axpy(-c, V[i].data(), w.data(), n);
      }
    const double b = std::sqrt(ops.nrm2sq(w.data(), n));

    coef = expi_tridiag_e1(alpha, betas, theta);
    const int m = j + 1;
    const double est = beta0 * std::abs(b * theta * coef[m - 1]);
    const bool breakdown = b <= 1e-14 * std::abs(aj == 0 ? 1.0 : aj);
    if (est <= opts.rel_tol * beta0 || breakdown || m == opts.max_basis) {
      if (est <= opts.rel_tol * beta0 || breakdown) {
        std::fill(z.begin(), z.end(), cd(0));
        for (int i = 0; i < m; ++i)
          ops.axpy(beta0 * cd(coef[i]), V[i].data(), z.data(), n);
        stats.basis = m;
        stats.err_est = est / beta0;
        return stats;
      }
      break;  // basis exhausted; restart below
    }
    betas.push_back(b);
    V.emplace_back(w);
    ops.scal(1.0 / b, V.back().data(), n);
  }

  if (depth >= opts.max_restarts)
    throw std::runtime_error(
        "expi_action: Krylov basis exhausted without convergence");
  // restart: split the step in half; each half gets the full basis budget
  auto s1 = expi_action_rec(l, tau / 2, z, opts, depth + 1);
  auto s2 = expi_action_rec(l, tau / 2, z, opts, depth + 1);
  stats.basis = std::max(s1.basis, s2.basis);
  stats.restarts = 1 + std::max(s1.restarts, s2.restarts);
  stats.err_est = s1.err_est + s2.err_est;
  return stats;
}

}  // namespace

ExpActionStats expi_action(const FdLaplacian& l, double tau,
                           std::vector<cd>& z, const ExpActionOptions& opts) {
  if (z.size() != l.points())
    throw std::invalid_argument("expi_action: field/grid size mismatch");
  return expi_action_rec(l, tau, z, opts, 0);
}

ExpActionStats kinetic_step_fd(const FdLaplacian& l, double tau,
                               std::vector<cd>& y,
                               const ExpActionOptions& opts) {
  l.to_z(y);
  auto stats = expi_action(l, tau, y, opts);
  l.from_z(y);
  return stats;
}

}  // namespace gpev
