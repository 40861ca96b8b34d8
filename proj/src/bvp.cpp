#include "gpev/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gpev {
namespace {

// Interior residual of the transformed equation at rows i = 1..N-1:
//   (s-1)^4 g'' + 2(s-1)^3 g' - ((s-1)^3/s) g' - ((s-1)^2/s^2) g + (1-g^2) g
struct Discretization {
  std::vector<double> c2, c1, c0;  // g'' , g' and g row weights
  double ds;

  explicit Discretization(std::size_t N) : ds(1.0 / double(N)) {
    c2.resize(N - 1);
    c1.resize(N - 1);
    c0.resize(N - 1);
    for (std::size_t i = 1; i < N; ++i) {
      const double s = double(i) * ds;
      const double sm = s - 1.0;
      c2[i - 1] = sm * sm * sm * sm / (ds * ds);
      c1[i - 1] = (2.0 * sm * sm * sm - sm * sm * sm / s) / (2.0 * ds);
      c0[i - 1] = -sm * sm / (s * s);
    }
  }

  void residual(const std::vector<double>& g, std::vector<double>& F) const {
    const std::size_t n = c2.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double gm = g[i], gi = g[i + 1], gp = g[i + 2];
      F[i] = c2[i] * (gp - 2.0 * gi + gm) + c1[i] * (gp - gm) + c0[i] * gi +
             (1.0 - gi * gi) * gi;
    }
  }
};

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Thomas solve of the tridiagonal system (lo, di, up) x = rhs, in place.
void thomas(std::vector<double> lo, std::vector<double> di,
            std::vector<double> up, std::vector<double>& rhs) {
  const std::size_t n = di.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lo[i] / di[i - 1];
    di[i] -= m * up[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= di[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / di[i];
}

}  // namespace

RadialProfile solve_profile(std::size_t N) {
  if (N < 100) throw std::invalid_argument("solve_profile: need N >= 100");
  const Discretization d(N);
  const std::size_t n = N - 1;

  RadialProfile out;
  out.subdivisions = N;
  out.s.resize(N + 1);
  for (std::size_t i = 0; i <= N; ++i) out.s[i] = double(i) / double(N);

  // initial guess g(s) = s satisfies both boundary values
  std::vector<double> g(out.s);
  g.front() = 0.0;
  g.back() = 1.0;

  std::vector<double> F(n), rhs(n), lo(n), di(n), up(n);
  const double tol = 1e-12;
  const int max_iters = 100;
  bool converged = false;

  for (int it = 0; it < max_iters; ++it) {
    d.residual(g, F);
    const double f0 = max_abs(F);
    for (std::size_t i = 0; i < n; ++i) {
      const double gi = g[i + 1];
      lo[i] = d.c2[i] - d.c1[i];
      di[i] = -2.0 * d.c2[i] + d.c0[i] + 1.0 - 3.0 * gi * gi;
      up[i] = d.c2[i] + d.c1[i];
      rhs[i] = -F[i];
    }
    thomas(lo, di, up, rhs);

    double lambda = 1.0;
    std::vector<double> trial(g);
    double step = 0;
    for (int halving = 0; halving <= 20; ++halving) {
      for (std::size_t i = 0; i < n; ++i)
        trial[i + 1] = g[i + 1] + lambda * rhs[i];
      d.residual(trial, F);
      step = lambda * max_abs(rhs);
      if (max_abs(F) < f0 || step <= tol) break;
      lambda *= 0.5;
    }
    g.swap(trial);
    out.newton_iterations = it + 1;
    if (step <= tol) {
      converged = true;
      break;
    }
  }
  d.residual(g, F);
  out.residual = max_abs(F);
  if (!converged)
    throw std::runtime_error(
        "solve_profile: Newton did not converge in 100 iterations; "
        "last residual " +
        std::to_string(out.residual));

  out.g = std::move(g);
  out.r.resize(N);
  for (std::size_t i = 0; i < N; ++i) out.r[i] = out.s[i] / (1.0 - out.s[i]);
  return out;
}

double RadialProfile::rho(double radius) const {
  if (!(radius >= 0) || !std::isfinite(radius))
    throw std::invalid_argument("rho_num: need finite radius >= 0");
  const std::size_t N = subdivisions;
  if (radius >= r[N - 1]) {
    // beyond the last finite node: linear in s toward g(1) = 1
    const double sq = radius / (1.0 + radius);
    const double t = (sq - s[N - 1]) / (s[N] - s[N - 1]);
    const double gl = g[N - 1] + (g[N] - g[N - 1]) * t;
    return gl * gl;
  }
  auto it = std::upper_bound(r.begin(), r.end(), radius);
  const std::size_t i = std::max<std::ptrdiff_t>(0, it - r.begin() - 1);
  const double t = (radius - r[i]) / (r[i + 1] - r[i]);
  const double lo = g[i] * g[i], hi = g[i + 1] * g[i + 1];
  return lo + (hi - lo) * t;
}

}  // namespace gpev
