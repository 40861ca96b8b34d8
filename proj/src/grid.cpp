#include "gpev/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpev {
namespace {

void finish_weights(Grid1D& g) {
  g.w = trapezoidal_weights(g);
}

// half-domain geometric sum h1*((1+d)^n - 1)/d as a function of d
double geom_sum(double h1, double d, int n) {
  return h1 * std::expm1(n * std::log1p(d)) / d;
}

}  // namespace

std::vector<double> trapezoidal_weights(const Grid1D& g) {
  const std::size_t m = g.x.size();
  std::vector<double> w(m);
  if (g.closure == Closure::periodic) {
    // uniform periodic sampling: rectangle rule == trapezoid
    for (auto& v : w) v = g.h.front();
    return w;
  }
  w[0] = 0.5 * g.h.front();
  w[m - 1] = 0.5 * g.h.back();
  for (std::size_t i = 1; i + 1 < m; ++i) w[i] = 0.5 * (g.h[i - 1] + g.h[i]);
  return w;
}

Grid1D build_uniform(double L, std::size_t m, Closure closure) {
  if (m < 2) throw std::invalid_argument("build_uniform: need m >= 2");
  if (!(L > 0)) throw std::invalid_argument("build_uniform: need L > 0");
  Grid1D g;
  g.kind = GridKind::uniform;
  g.closure = closure;
  g.L = L;
  const double h = closure == Closure::closed ? 2 * L / double(m - 1)
                                              : 2 * L / double(m);
  g.x.resize(m);
  for (std::size_t i = 0; i < m; ++i) g.x[i] = -L + double(i) * h;
  if (closure == Closure::closed) g.x[m - 1] = L;
  g.h.assign(closure == Closure::closed ? m - 1 : m, h);
  finish_weights(g);
  return g;
}

Grid1D build_geometric(double L, double h_min, double target_mean) {
  if (!(h_min > 0 && h_min < target_mean && target_mean < L))
    throw std::invalid_argument("build_geometric: need 0 < h_min < mean < L");
  const int n = int(std::lround(L / target_mean));
  if (n < 1 || h_min * n >= L)
    throw std::invalid_argument(
        "build_geometric: no delta > 0 reaches the boundary (h_min*n >= L)");

  // bisection for delta on [1e-12, 1]; geom_sum is increasing in delta
  double lo = 1e-12, hi = 1.0;
  if (geom_sum(h_min, hi, n) < L)
    throw std::invalid_argument("build_geometric: ratio bound exceeded");
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (geom_sum(h_min, mid, n) < L ? lo : hi) = mid;
  }
  const double delta = 0.5 * (lo + hi);

  Grid1D g;
  g.kind = GridKind::geometric;
  g.closure = Closure::closed;
  g.L = L;
  g.delta = delta;
  g.ratio_K = std::pow(1 + delta, n - 1);

  std::vector<double> half(n);
  half[0] = h_min;
  for (int i = 1; i < n; ++i) half[i] = half[i - 1] * (1 + delta);
  // steps ordered left boundary -> origin -> right boundary
  g.h.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    g.h[i] = half[n - 1 - i];
    g.h[n + i] = half[i];
  }
  g.x.resize(2 * n + 1);
  g.x[n] = 0.0;
  for (int i = n - 1; i >= 0; --i) g.x[i] = g.x[i + 1] - g.h[i];
  for (int i = n; i < 2 * n; ++i) g.x[i + 1] = g.x[i] + g.h[i];
  g.x.front() = -L;  // bisection hits L to ~1e-16 relative; pin exactly
  g.x.back() = L;
  g.h.front() = g.x[1] - g.x[0];
  g.h.back() = g.x[2 * n] - g.x[2 * n - 1];
  finish_weights(g);
  return g;
}

Grid1D refine_geometric(const Grid1D& g) {
  if (g.kind != GridKind::geometric)
    throw std::invalid_argument("refine_geometric: geometric grid required");
  const int n = int(g.h.size() / 2);
  const double ratio = std::sqrt(1 + g.delta);
  const double dprime = ratio - 1;
  // h1' chosen so the refined half still sums to L exactly:
  // h1' * (ratio^{2n} - 1)/(ratio - 1) = L with ratio^{2n} = (1+delta)^n
  const double h1 = g.L * dprime / std::expm1(n * std::log1p(g.delta));

  Grid1D r;
  r.kind = GridKind::geometric;
  r.closure = Closure::closed;
  r.L = g.L;
  r.delta = dprime;
  r.ratio_K = std::pow(ratio, 2 * n - 1);
  const int n2 = 2 * n;
  std::vector<double> half(n2);
  half[0] = h1;
  for (int i = 1; i < n2; ++i) half[i] = half[i - 1] * ratio;
  r.h.resize(2 * n2);
  for (int i = 0; i < n2; ++i) {
    r.h[i] = half[n2 - 1 - i];
    r.h[n2 + i] = half[i];
  }
  r.x.resize(2 * n2 + 1);
  r.x[n2] = 0.0;
  for (int i = n2 - 1; i >= 0; --i) r.x[i] = r.x[i + 1] - r.h[i];
  for (int i = n2; i < 2 * n2; ++i) r.x[i + 1] = r.x[i] + r.h[i];
  r.x.front() = -r.L;
  r.x.back() = r.L;
  r.h.front() = r.x[1] - r.x[0];
  r.h.back() = r.x[2 * n2] - r.x[2 * n2 - 1];
  finish_weights(r);
  return r;
}

Grid2D make_grid2d(const Grid1D& axis, Layout layout) {
  Grid2D g;
  g.gx = axis;
  g.gy = axis;
  g.layout = layout;
  return g;
}

std::vector<double> tensor_weights(const Grid2D& g) {
  const auto& wx = g.gx.w;
  const auto& wy = g.gy.w;
  std::vector<double> w(wx.size() * wy.size());
  for (std::size_t iy = 0; iy < wy.size(); ++iy)
    for (std::size_t ix = 0; ix < wx.size(); ++ix)
      w[iy * wx.size() + ix] = wy[iy] * wx[ix];
  return w;
}

}  // namespace gpev
