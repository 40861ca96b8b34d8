#pragma once

#include <cstddef>
#include <vector>

namespace gpev {

/// Numerical vortex amplitude g(s) on the compactified coordinate
/// s = r/(1+r) in (0,1], from a central-difference Newton solve of the
/// transformed profile equation; rho_num(r) = g(s(r))^2.
struct RadialProfile {
  std::size_t subdivisions = 0;  // N
  std::vector<double> s;         // s_i = i/N, i = 0..N
  std::vector<double> g;         // solution values, g_0 = 0, g_N = 1
  std::vector<double> r;         // r_i = s_i/(1-s_i), i = 0..N-1 (r_N = inf)
  double residual = 0;           // max-norm interior residual at the solution
  int newton_iterations = 0;

  /// Piecewise-linear interpolation of g^2 in r between nodes; beyond the
  /// last finite node, linear in s toward g(1) = 1.
  double rho(double radius) const;
};

/// Solves the profile equation on N equispaced s-subdivisions (N >= 100)
/// by damped Newton iteration on the tridiagonal Jacobian; converged when
/// the max-norm update is <= 1e-12.
RadialProfile solve_profile(std::size_t N);

inline double rho_num(const RadialProfile& p, double radius) {
  return p.rho(radius);
}

}  // namespace gpev
