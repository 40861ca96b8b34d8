#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "gpev/fd.hpp"
#include "gpev/grid.hpp"

using namespace gpev;

namespace {

std::vector<cd> random_field(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cd> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

// dense Kronecker-sum oracle I (x) Ax + Ay (x) I
Eigen::MatrixXd dense_2d(const Tridiag& ax, const Tridiag& ay) {
  const int nx = int(ax.size()), ny = int(ay.size());
  auto dense1 = [](const Tridiag& a) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(a.size(), a.size());
    for (int i = 0; i < int(a.size()); ++i) {
      M(i, i) = a.diag[i];
      if (i > 0) M(i, i - 1) = a.lower[i];
      if (i + 1 < int(a.size())) M(i, i + 1) = a.upper[i];
    }
    return M;
  };
  Eigen::MatrixXd Ax = dense1(ax), Ay = dense1(ay);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nx * ny, nx * ny);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const int row = iy * nx + ix;
      for (int jx = 0; jx < nx; ++jx) K(row, iy * nx + jx) += Ax(ix, jx);
      for (int jy = 0; jy < ny; ++jy) K(row, jy * nx + ix) += Ay(iy, jy);
    }
  return K;
}

}  // namespace

TEST_SUITE("fd") {

TEST_CASE("1d rows match the printed operator") {
  auto g = build_uniform(1.0, 5, Closure::closed);  // h = 0.5
  auto a = laplacian_rows(g);
  const double h2 = 1.0 / (0.5 * 0.5);
  CHECK(a.diag[0] == doctest::Approx(-2 * h2));
  CHECK(a.upper[0] == doctest::Approx(2 * h2));
  CHECK(a.lower[2] == doctest::Approx(h2));
  CHECK(a.diag[2] == doctest::Approx(-2 * h2));
  CHECK(a.upper[2] == doctest::Approx(h2));
  CHECK(a.lower[4] == doctest::Approx(2 * h2));
  CHECK(a.diag[4] == doctest::Approx(-2 * h2));

  auto geo = build_geometric(10.0, 0.05, 0.2);
  auto ag = laplacian_rows(geo);
  const auto& h = geo.h;
  for (std::size_t i : {1u, 50u, 99u}) {
    CHECK(ag.lower[i] == doctest::Approx(2 / (h[i - 1] * (h[i - 1] + h[i]))));
    CHECK(ag.diag[i] == doctest::Approx(-2 / (h[i - 1] * h[i])));
    CHECK(ag.upper[i] == doctest::Approx(2 / (h[i] * (h[i - 1] + h[i]))));
  }
}

TEST_CASE("annihilates constants, exact on quadratics") {
  auto g2 = make_grid2d(build_geometric(10.0, 0.1, 0.4));
  FdLaplacian l(g2);
  const std::size_t nx = l.nx(), ny = l.ny();

  std::vector<cd> ones(l.points(), cd(1.0, -0.5)), out(l.points());
  l.apply(ones.data(), out.data());
  for (auto v : out) CHECK(std::abs(v) <= 1e-12);

  std::vector<cd> quad(l.points());
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix)
      quad[iy * nx + ix] = g2.gx.x[ix] * g2.gx.x[ix];
  l.apply(quad.data(), out.data());
  for (std::size_t iy = 1; iy + 1 < ny; ++iy)
    for (std::size_t ix = 1; ix + 1 < nx; ++ix)
      CHECK(out[iy * nx + ix].real() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("kronecker apply matches the dense oracle") {
  auto g2 = make_grid2d(build_geometric(5.0, 0.3, 1.0));
  FdLaplacian l(g2);
  auto K = dense_2d(l.axis_x(), l.axis_y());
  auto v = random_field(l.points(), 7);
  std::vector<cd> out(l.points());
  l.apply(v.data(), out.data());
  for (std::size_t i = 0; i < l.points(); ++i) {
    cd expect = 0;
    for (std::size_t j = 0; j < l.points(); ++j) expect += K(i, j) * v[j];
    CHECK(std::abs(out[i] - expect) <= 1e-12 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("trapezoidal symmetrization") {
  auto geo = build_geometric(20.0, 0.05, 0.2);
  auto a = laplacian_rows(geo);
  auto s = symmetrize(a, geo.w);
  CHECK(s.defect <= 1e-12);
  for (std::size_t i = 0; i + 1 < s.aw.size(); ++i)
    CHECK(s.aw.upper[i] == s.aw.lower[i + 1]);

  // uniform grid: boundary couplings gain sqrt(2), interior unchanged
  auto uni = build_uniform(1.0, 4, Closure::closed);
  auto au = laplacian_rows(uni);
  auto su = symmetrize(au, uni.w);
  const double h2 = 1.0 / (uni.h[0] * uni.h[0]);
  CHECK(su.aw.upper[0] == doctest::Approx(std::sqrt(2.0) * h2));
  CHECK(su.aw.upper[1] == doctest::Approx(h2));
  CHECK(su.aw.upper[2] == doctest::Approx(std::sqrt(2.0) * h2));

  // mismatched weights must be rejected
  auto bad = uni.w;
  bad[1] *= 1.5;
  CHECK_THROWS(symmetrize(au, bad));
}

TEST_CASE("A_w spectrum is real nonpositive (m = 8 dense oracle)") {
  auto g = build_uniform(4.0, 8, Closure::closed);
  auto s = symmetrize(laplacian_rows(g), g.w);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    M(i, i) = s.aw.diag[i];
    if (i > 0) M(i, i - 1) = s.aw.lower[i];
    if (i < 7) M(i, i + 1) = s.aw.upper[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  for (int i = 0; i < 8; ++i) CHECK(es.eigenvalues()[i] <= 1e-12);
}

TEST_CASE("convergence order: uniform second order, geometric refinement") {
  auto err1d = [](const Grid1D& g) {
    auto a = laplacian_rows(g);
    const double L = g.L;
    double emax = 0;
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      f[i] = std::cos(M_PI * g.x[i] / L);
    for (std::size_t i = 0; i < g.size(); ++i) {
      double af = a.diag[i] * f[i];
      if (i > 0) af += a.lower[i] * f[i - 1];
      if (i + 1 < g.size()) af += a.upper[i] * f[i + 1];
      const double exact = -(M_PI / L) * (M_PI / L) * f[i];
      emax = std::max(emax, std::abs(af - exact));
    }
    return emax;
  };
  double u1 = err1d(build_uniform(20.0, 51, Closure::closed));
  double u2 = err1d(build_uniform(20.0, 101, Closure::closed));
  double u3 = err1d(build_uniform(20.0, 201, Closure::closed));
  CHECK(std::log2(u1 / u2) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log2(u2 / u3) == doctest::Approx(2.0).epsilon(0.05));

  auto g0 = build_geometric(20.0, 0.05, 0.2);
  auto g1 = refine_geometric(g0);
  auto g2 = refine_geometric(g1);
  double e0 = err1d(g0), e1 = err1d(g1), e2 = err1d(g2);
  CHECK(std::log2(e0 / e1) >= 1.9);
  CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("exp-action matches the dense exponential on a 16^2 grid") {
  auto g2 = make_grid2d(build_uniform(20.0, 16, Closure::closed));
  FdLaplacian l(g2);
  const std::size_t n = l.points();

  Eigen::MatrixXd Aw = dense_2d(l.axis_x_sym(), l.axis_y_sym());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Aw);

  auto z0 = random_field(n, 42);
  for (double tau : {0.01, 0.1, 1.0}) {
    // dense oracle: Q exp(i tau/2 D) Q^T z
    Eigen::VectorXcd zv(n);
    for (std::size_t i = 0; i < n; ++i) zv[i] = z0[i];
    Eigen::VectorXcd proj = es.eigenvectors().transpose() * zv;
    for (std::size_t i = 0; i < n; ++i)
      proj[i] *= std::polar(1.0, 0.5 * tau * es.eigenvalues()[i]);
    Eigen::VectorXcd expect = es.eigenvectors() * proj;

    auto z = z0;
    auto stats = expi_action(l, tau, z);
    CHECK(stats.basis >= 1);
    double maxdiff = 0;
    for (std::size_t i = 0; i < n; ++i)
      maxdiff = std::max(maxdiff, std::abs(z[i] - expect[i]));
    CHECK(maxdiff <= 1e-10);
  }
}

TEST_CASE("kinetic step: constants fixed, weighted mass invariant") {
  auto g2 = make_grid2d(build_geometric(20.0, 0.05, 0.2));
  FdLaplacian l(g2);
  CHECK(l.symmetry_defect() <= 1e-12);

  std::vector<cd> c(l.points(), cd(0.7, -0.2));
  auto c0 = c;
  kinetic_step_fd(l, 0.01, c);
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(std::abs(c[i] - c0[i]) <= 1e-13);

  auto y = random_field(l.points(), 5);
  const auto& w = l.weights();
  auto mass = [&](const std::vector<cd>& f) {
    double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * std::norm(f[i]);
    return s;
  };
  const double m0 = mass(y);
  for (int step = 0; step < 20; ++step) kinetic_step_fd(l, 0.01, y);
  CHECK(std::abs(mass(y) - m0) / m0 <= 1e-12);
}

TEST_CASE("restart splits the step rather than failing") {
  auto g2 = make_grid2d(build_geometric(20.0, 0.05, 0.2));
  FdLaplacian l(g2);
  auto z = random_field(l.points(), 9);
  ExpActionOptions opts;
  opts.max_basis = 34;  // below the ~45 needed at tau = 0.02, above a half step
  auto zref = z;
  expi_action(l, 0.02, zref);
  auto stats = expi_action(l, 0.02, z, opts);
  CHECK(stats.restarts >= 1);
  double maxdiff = 0;
  for (std::size_t i = 0; i < z.size(); ++i)
    maxdiff = std::max(maxdiff, std::abs(z[i] - zref[i]));
  CHECK(maxdiff <= 1e-10);

  opts.max_restarts = 0;
  auto z2 = random_field(l.points(), 9);
  CHECK_THROWS(expi_action(l, 0.02, z2, opts));
}

TEST_CASE("matrix dump is coordinate formatted") {
  auto g = build_uniform(1.0, 3, Closure::closed);
  std::ostringstream os;
  dump_matrix(laplacian_rows(g), os);
  CHECK(os.str().substr(0, 4) == "0 0 ");
}

}  // TEST_SUITE
