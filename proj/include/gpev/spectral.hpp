#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gpev/field.hpp"

namespace gpev {

/// Fourier modes of a mirrored field on [-L, 3L)^2. The mode grid is
/// 2m x 2m (m = physical points per axis) in FFT index order, row-major
/// [j2 * 2m + j1]; index j maps to the integer frequency n = j (j < m) or
/// j - 2m (j >= m), with wavenumber k_n = 2 pi n / (4L).
struct SpectralField {
  std::size_t m = 0;
  double L = 0;
  std::vector<std::complex<double>> modes;

  std::size_t axis() const { return 2 * m; }
};

/// Half-shift reflection about the far boundaries: the extension block in x
/// is column 2m-1-j of the physical block, likewise in y, giving the four
/// blocks [u, flip_x(u); flip_y(u), flip_xy(u)]. Requires a uniform periodic
/// physical grid.
WaveField mirror_extend(const WaveField& u);

/// Physical block of a mirrored field (inverse of mirror_extend on its image).
WaveField restrict_physical(const WaveField& u);

SpectralField analyze(const WaveField& mirrored);   // forward DFT, / (2m)^2
WaveField synthesize(const SpectralField& s);       // inverse DFT

/// Multiplies mode (n1, n2) by exp(-i tau (k1^2 + k2^2)/2): the exact-in-time
/// free flow. Each factor is unimodular, so the mode l2 norm is preserved.
void kinetic_step_spectral(SpectralField& s, double tau);

/// Cached per-mode phase factors for repeated steps at fixed tau.
class SpectralKinetic {
 public:
  SpectralKinetic(std::size_t m, double L, double tau);
  void apply(SpectralField& s) const;
  double tau() const { return tau_; }

 private:
  std::size_t m_;
  double L_, tau_;
  std::vector<std::complex<double>> factors_;
};

struct Point {
  double x = 0, y = 0;
};

/// Direct evaluation of the trigonometric polynomial at arbitrary points of
/// the mirrored domain [-L, 3L)^2; points outside are rejected.
std::vector<std::complex<double>> eval_at_points(const SpectralField& s,
                                                 const std::vector<Point>& pts);

/// Tensor-product fast path: evaluates on {xs} x {ys}, row-major
/// [iy * xs.size() + ix], by partial summation along each axis.
std::vector<std::complex<double>> eval_on_tensor_grid(
    const SpectralField& s, const std::vector<double>& xs,
    const std::vector<double>& ys);

/// Parameters of the initial-data family
///   psi0 = (1 - (1 - rho4^{q/2}) e^{-r^2/l^2}) exp(i c theta e^{-r^2/l^2});
/// ell may be infinite (both Gaussian factors become 1).
struct RegularityParams {
  double q = 1;
  double ell = 0;  // > 0, or +infinity
  int c = 0;       // 0 or 1
};

WaveField regularity_family(const RegularityParams& p, double L,
                            std::size_t m_physical);

struct TruncationRow {
  RegularityParams params;
  std::size_t m;   // per-axis modes kept
  double l2_error;  // L2(Omega) norm of the discarded part
};

/// Fourier truncation study: expands each family member at m_ref modes per
/// axis (mirrored), truncates to every m in m_list, and reports the L2 error
/// on the reference grid. Requires m_ref >= 4 * max(m_list).
std::vector<TruncationRow> truncation_study(
    const std::vector<RegularityParams>& params,
    const std::vector<std::size_t>& m_list, std::size_t m_ref, double L);

}  // namespace gpev
