#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "gpev/pade.hpp"
#include "gpev/spectral.hpp"

using namespace gpev;
using cd = std::complex<double>;

namespace {

WaveField random_physical(double L, std::size_t m, unsigned seed) {
  WaveField u;
  u.grid.gx = build_uniform(L, m, Closure::periodic);
  u.grid.gy = u.grid.gx;
  u.grid.layout = Layout::physical;
  u.values.resize(m * m);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (auto& z : u.values) z = {d(rng), d(rng)};
  return u;
}

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("mirror extension: blocks, involution, discrete symmetry") {
  const std::size_t m = 8;
  auto u = random_physical(20.0, m, 3);
  auto ext = mirror_extend(u);
  CHECK(ext.nx() == 2 * m);
  CHECK(ext.grid.layout == Layout::mirrored);

  // extension index maps to 2m-1-j of the physical block
  for (std::size_t iy = 0; iy < m; ++iy)
    for (std::size_t ix = 0; ix < m; ++ix) {
      CHECK(ext.at(2 * m - 1 - ix, iy) == u.at(ix, iy));
      CHECK(ext.at(ix, 2 * m - 1 - iy) == u.at(ix, iy));
      CHECK(ext.at(2 * m - 1 - ix, 2 * m - 1 - iy) == u.at(ix, iy));
    }
  // exact discrete mirror symmetry of the whole extension
  for (std::size_t iy = 0; iy < 2 * m; ++iy)
    for (std::size_t ix = 0; ix < 2 * m; ++ix) {
      CHECK(ext.at(ix, iy) == ext.at(2 * m - 1 - ix, iy));
      CHECK(ext.at(ix, iy) == ext.at(ix, 2 * m - 1 - iy));
    }

  // restriction returns the original samples bit-exactly
  auto back = restrict_physical(ext);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    CHECK(back.values[i] == u.values[i]);

  // constant field stays constant
  WaveField cfield = u;
  for (auto& z : cfield.values) z = cd(2.5, -1.0);
  auto cext = mirror_extend(cfield);
  for (auto z : cext.values) CHECK(z == cd(2.5, -1.0));

  // tent profile: mirror of f(x) = x matches values (not derivatives) at seams
  WaveField lin = u;
  for (std::size_t iy = 0; iy < m; ++iy)
    for (std::size_t ix = 0; ix < m; ++ix)
      lin.at(ix, iy) = lin.grid.gx.x[ix];
  auto lext = mirror_extend(lin);
  CHECK(lext.at(m, 0) == lext.at(m - 1, 0));  // same value across the seam
  CHECK(lext.at(m + 2, 0) == lext.at(m - 3, 0));

  // non-uniform input is rejected
  WaveField bad;
  bad.grid.gx = build_geometric(20.0, 0.05, 0.2);
  bad.grid.gy = bad.grid.gx;
  bad.values.resize(bad.grid.points());
  CHECK_THROWS(mirror_extend(bad));
}

TEST_CASE("analyze/synthesize round trip") {
  auto u = random_physical(20.0, 16, 4);
  auto ext = mirror_extend(u);
  auto s = analyze(ext);
  auto back = synthesize(s);
  CHECK(max_abs_diff(back.values, ext.values) <= 1e-12);

  auto s2 = analyze(back);
  CHECK(max_abs_diff(s2.modes, s.modes) <= 1e-12);
}

TEST_CASE("kinetic flow: diagonal, unitary, composes exactly") {
  auto u = random_physical(10.0, 12, 5);
  auto s = analyze(mirror_extend(u));

  // constant field: only the k = 0 mode; unchanged for any tau
  WaveField c = u;
  for (auto& z : c.values) z = cd(0.8, 0.1);
  auto sc = analyze(mirror_extend(c));
  auto sc0 = sc;
  kinetic_step_spectral(sc, 0.37);
  CHECK(max_abs_diff(sc.modes, sc0.modes) <= 1e-15);

  // modulus of every mode is preserved; l2 preserved to 1e-15 relative
  auto s1 = s;
  kinetic_step_spectral(s1, 0.05);
  double n0 = 0, n1 = 0;
  for (std::size_t i = 0; i < s.modes.size(); ++i) {
    CHECK(std::abs(std::abs(s1.modes[i]) - std::abs(s.modes[i])) <= 1e-15);
    n0 += std::norm(s.modes[i]);
    n1 += std::norm(s1.modes[i]);
  }
  CHECK(std::abs(n1 - n0) <= 1e-15 * n0);

  // composition: step(t1) then step(t2) == step(t1 + t2)
  auto sa = s, sb = s;
  kinetic_step_spectral(sa, 0.02);
  kinetic_step_spectral(sa, 0.07);
  kinetic_step_spectral(sb, 0.09);
  CHECK(max_abs_diff(sa.modes, sb.modes) <= 1e-13);

  // single mode gains exactly the phase exp(-i tau |k|^2 / 2)
  SpectralField one;
  one.m = 8;
  one.L = 10.0;
  one.modes.assign(256, cd(0));
  const std::size_t j1 = 3, j2 = 14;  // n = (3, -2)
  one.modes[j2 * 16 + j1] = cd(1, 0);
  kinetic_step_spectral(one, 0.4);
  const double k1 = M_PI * 3 / 20.0, k2 = M_PI * -2 / 20.0;
  const cd expect = std::polar(1.0, -0.4 * (k1 * k1 + k2 * k2) / 2.0);
  CHECK(std::abs(one.modes[j2 * 16 + j1] - expect) <= 1e-15);

  // cached propagator matches the direct step
  auto sd = s, se = s;
  kinetic_step_spectral(sd, 0.013);
  SpectralKinetic prop(s.m, s.L, 0.013);
  prop.apply(se);
  CHECK(max_abs_diff(sd.modes, se.modes) <= 1e-15);
}

TEST_CASE("point evaluation matches the inverse transform at grid nodes") {
  auto u = random_physical(20.0, 10, 6);
  auto ext = mirror_extend(u);
  auto s = analyze(ext);

  std::vector<Point> pts;
  for (std::size_t iy = 0; iy < 2 * s.m; iy += 3)
    for (std::size_t ix = 0; ix < 2 * s.m; ix += 3)
      pts.push_back({ext.grid.gx.x[ix], ext.grid.gy.x[iy]});
  auto vals = eval_at_points(s, pts);
  std::size_t k = 0;
  for (std::size_t iy = 0; iy < 2 * s.m; iy += 3)
    for (std::size_t ix = 0; ix < 2 * s.m; ix += 3)
      CHECK(std::abs(vals[k++] - ext.at(ix, iy)) <= 1e-12);

  // constant field evaluates to the constant anywhere
  WaveField c = u;
  for (auto& z : c.values) z = cd(1.5, 0.5);
  auto sc = analyze(mirror_extend(c));
  auto v = eval_at_points(sc, {{0.123, -7.7}, {19.0, 3.3}});
  CHECK(std::abs(v[0] - cd(1.5, 0.5)) <= 1e-12);
  CHECK(std::abs(v[1] - cd(1.5, 0.5)) <= 1e-12);

  // outside the mirrored domain: rejected
  CHECK_THROWS(eval_at_points(sc, {{3 * 20.0 + 1.0, 0.0}}));

  // tensor path agrees with the scattered path
  std::vector<double> xs = {-18.63, -3.2, 0.0, 4.71, 15.5};
  std::vector<double> ys = {-12.0, 1.1, 8.88};
  auto tens = eval_on_tensor_grid(s, xs, ys);
  std::vector<Point> scat;
  for (double y : ys)
    for (double x : xs) scat.push_back({x, y});
  auto ref = eval_at_points(s, scat);
  CHECK(max_abs_diff(tens, ref) <= 1e-12);
}

TEST_CASE("regularity family values") {
  const double L = 20.0;
  // (q=1, ell=inf, c=1): the straight vortex sqrt(rho4) e^{i theta}
  auto v = regularity_family({1.0, std::numeric_limits<double>::infinity(), 1},
                             L, 32);
  auto p4 = build_pade(4);
  CHECK(std::abs(v.at(16, 16)) == 0.0);  // origin node
  const double x = v.grid.gx.x[24], y = v.grid.gy.x[20];
  const cd expect = std::sqrt(eval_rho(p4, std::hypot(x, y))) *
                    std::polar(1.0, std::atan2(y, x));
  CHECK(std::abs(v.at(24, 20) - expect) <= 1e-14);

  // c = 0: value at the origin is 0 for any q, ell
  auto w = regularity_family({10.0, 5.0, 0}, L, 32);
  CHECK(std::abs(w.at(16, 16)) == 0.0);
  CHECK(w.at(24, 20).imag() == 0.0);

  CHECK_THROWS(regularity_family({0.5, 5.0, 0}, L, 16));
  CHECK_THROWS(regularity_family({1.0, -1.0, 0}, L, 16));
  CHECK_THROWS(regularity_family({1.0, 5.0, 2}, L, 16));
}

TEST_CASE("truncation study: parseval route equals the synthesis route") {
  const double L = 20.0;
  const std::vector<RegularityParams> ps = {{10.0, 5.0, 0}};
  auto rows = truncation_study(ps, {16, 32}, 128, L);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].l2_error == 0.0);  // reference vs itself

  // independent route: zero out the discarded modes, synthesize, quadrature
  auto field = regularity_family(ps[0], L, 64);
  auto s = analyze(mirror_extend(field));
  for (std::size_t idx = 0; idx < 2; ++idx) {
    const std::size_t keep = rows[idx].m / 2, n = 128;
    auto st = s;
    for (std::size_t j2 = 0; j2 < n; ++j2)
      for (std::size_t j1 = 0; j1 < n; ++j1) {
        const bool in1 = j1 < keep || j1 >= n - keep;
        const bool in2 = j2 < keep || j2 >= n - keep;
        if (!(in1 && in2)) st.modes[j2 * n + j1] = cd(0);
      }
    auto full = synthesize(s);
    auto trunc = synthesize(st);
    const double h = 4.0 * L / double(n);
    double acc = 0;
    for (std::size_t i = 0; i < full.values.size(); ++i)
      acc += std::norm(full.values[i] - trunc.values[i]) * h * h;
    CHECK(std::sqrt(acc) == doctest::Approx(rows[idx].l2_error).epsilon(1e-10));
  }

  // error decreases with m for the smooth member
  CHECK(rows[1].l2_error < rows[0].l2_error);

  CHECK_THROWS(truncation_study(ps, {64}, 128, L));  // m_ref < 4*max
}

}  // TEST_SUITE
