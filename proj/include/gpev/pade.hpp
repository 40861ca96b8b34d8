#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gpev {

/// Diagonal rational approximation of the steady-vortex density,
///   rho_q(r) = (a_1 r^2 + ... + a_q r^{2q}) /
///              (1 + b_1 r^2 + ... + b_{q-1} r^{2q-2} + a_q r^{2q}),
/// with the r^{2q} denominator coefficient equal to a_q by construction.
struct PadeProfile {
  int q = 0;
  std::array<double, 4> a{};  // a[j-1] = a_j, j = 1..q
  std::array<double, 3> b{};  // b[k-1] = b_k, k = 1..q-1

  double a1() const { return a[0]; }
};

/// Builds the order-q profile, q in {2,3,4}. For q = 2 the coefficients are
/// exact rationals; for q = 3,4 the head coefficient a_1 is the physically
/// admissible root of the closure polynomial (bracketed on [0.2, 0.5],
/// bisection + Newton, validated by positivity and monotonicity of rho_q on
/// (0, 100] at 1e4 samples).
PadeProfile build_pade(int q);

double eval_rho(const PadeProfile& p, double r);
double eval_rho_prime(const PadeProfile& p, double r);

/// Coefficients of r^{2k}, k = 1..k_max, of the residual numerator obtained
/// by substituting rho_q into the steady density equation and clearing
/// denominators. The first 2q-1 vanish (exactly for q = 2, to extended
/// precision otherwise); the rest form the irreducible tail.
/// Requires k_max > 2q-1. Computed in exact rational arithmetic for q = 2
/// and in 50-digit floats for q = 3,4.
std::vector<double> residual_coefficients(const PadeProfile& p, int k_max);

struct Rational64 {
  std::int64_t num = 0, den = 1;
};

/// Exact q = 2 coefficients {a1, b1, a2} as reduced rationals.
std::array<Rational64, 3> pade2_exact();

/// Decimal expansion of the solved a_1 root at extended precision.
std::string pade_a1_decimal(int q, int digits = 25);

/// |P(a1)| / |lead * a1^deg| for the order-q closure polynomial.
double pade_root_residual(int q);

}  // namespace gpev
