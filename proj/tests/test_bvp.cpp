#include <cmath>

#include "doctest.h"
#include "gpev/bvp.hpp"
#include "gpev/pade.hpp"

using namespace gpev;

TEST_SUITE("bvp") {

TEST_CASE("solution shape and boundary behavior") {
  auto p = solve_profile(625);
  CHECK(p.g.front() == 0.0);
  CHECK(p.g.back() == 1.0);
  // monotone nondecreasing up to tolerance
  for (std::size_t i = 0; i + 1 < p.g.size(); ++i)
    CHECK(p.g[i + 1] - p.g[i] >= -1e-10);
  // bounded in [0, 1 + eps]
  for (double v : p.g) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-10);
  }
  // node spacing concentrates points near the core: >95% of r_i in [0, 20]
  std::size_t in20 = 0;
  for (double rr : p.r)
    if (rr <= 20.0) ++in20;
  CHECK(double(in20) / double(p.r.size()) > 0.95);
  // interior residual at the converged solution
  CHECK(p.residual <= 1e-10);
  CHECK(p.newton_iterations <= 20);
}

TEST_CASE("residual floor also holds at N=1250") {
  CHECK(solve_profile(1250).residual <= 1e-10);
}

TEST_CASE("second-order self-convergence") {
  auto g625 = solve_profile(625);
  auto g1250 = solve_profile(1250);
  auto g2500 = solve_profile(2500);
  auto g5000 = solve_profile(5000);
  auto diff = [](const RadialProfile& a, const RadialProfile& b) {
    // b is the finer profile; compare at the shared nodes
    const std::size_t k = b.subdivisions / a.subdivisions;
    double m = 0;
    for (std::size_t i = 0; i < a.g.size(); ++i)
      m = std::max(m, std::abs(a.g[i] - b.g[i * k]));
    return m;
  };
  const double d1 = diff(g625, g1250);
  const double d2 = diff(g1250, g2500);
  const double d3 = diff(g2500, g5000);
  CHECK(std::log2(d1 / d2) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::log2(d2 / d3) == doctest::Approx(2.0).epsilon(0.1));
  // spec example form: difference against N=5000 shrinks ~4x per doubling
  const double v1 = diff(g625, g5000);
  const double v2 = diff(g1250, g5000);
  const double v3 = diff(g2500, g5000);
  CHECK(v1 / v2 > 3.5);
  CHECK(v2 / v3 > 3.5);
}

TEST_CASE("interpolation reproduces nodes and handles the tail") {
  auto p = solve_profile(625);
  CHECK(p.rho(0.0) == 0.0);
  for (std::size_t i : {1u, 7u, 300u, 623u}) {
    double expect = p.g[i] * p.g[i];
    CHECK(p.rho(p.r[i]) == doctest::Approx(expect).epsilon(1e-14));
  }
  // beyond the last finite node: s-linear limit toward 1
  double far = p.rho(1e6);
  CHECK(far > p.g[624] * p.g[624]);
  CHECK(far <= 1.0 + 1e-12);
  CHECK(std::isfinite(p.rho(1e12)));
  CHECK_THROWS(p.rho(-0.5));
}

TEST_CASE("relative-error curves against the Pade family (ordering, max < 10)") {
  auto p = solve_profile(5000);
  auto p2 = build_pade(2);
  auto p3 = build_pade(3);
  auto p4 = build_pade(4);

  double max2 = 0, max3 = 0, max4 = 0, at2 = 0, at3 = 0, at4 = 0;
  bool ordered = true;
  for (std::size_t i = 1; i < p.r.size(); ++i) {
    const double rr = p.r[i];
    if (rr > 20.0) break;
    const double rn = p.g[i] * p.g[i];
    const double e2 = std::abs(eval_rho(p2, rr) - rn) / rn;
    const double e3 = std::abs(eval_rho(p3, rr) - rn) / rn;
    const double e4 = std::abs(eval_rho(p4, rr) - rn) / rn;
    if (rr >= 0.5 && !(e4 < e3 && e3 < e2)) ordered = false;
    if (e2 > max2) { max2 = e2; at2 = rr; }
    if (e3 > max3) { max3 = e3; at3 = rr; }
    if (e4 > max4) { max4 = e4; at4 = rr; }
  }
  CHECK(ordered);
  CHECK(at2 < 10.0);
  CHECK(at3 < 10.0);
  CHECK(at4 < 10.0);
  // magnitudes pinned loosely to the observed curves
  CHECK(max2 == doctest::Approx(2.03e-2).epsilon(0.02));
  CHECK(max3 == doctest::Approx(2.36e-3).epsilon(0.02));
  CHECK(max4 == doctest::Approx(1.23e-4).epsilon(0.02));
}

TEST_CASE("input validation") {
  CHECK_THROWS(solve_profile(50));
}

}  // TEST_SUITE
