#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gpev/bvp.hpp"
#include "gpev/fd.hpp"
#include "gpev/field.hpp"
#include "gpev/pade.hpp"
#include "gpev/spectral.hpp"

namespace gpev {

/// Radial density used to seed the vortex amplitude.
class DensityProfile {
 public:
  static DensityProfile pade(int q);
  static DensityProfile numerical(std::shared_ptr<const RadialProfile> p);
  /// One of pade2 | pade3 | pade4 | num (num solved at bvp_n subdivisions,
  /// cached).
  static DensityProfile named(const std::string& name, std::size_t bvp_n = 5000);

  double rho(double r) const { return f_(r); }
  const std::string& name() const { return name_; }

 private:
  std::function<double(double)> f_;
  std::string name_;
};

/// Exact flow of the potential part for duration dt: pointwise unimodular
/// multiplication by exp(i (dt/2) (1 - |u|^2)); |u| is preserved.
void potential_step(WaveField& u, double dt);

/// sqrt(rho(r)) e^{i theta} sampled at the grid nodes; exactly 0 at r = 0.
WaveField build_vortex(const Grid2D& grid, const DensityProfile& profile);

/// max over evaluation points with 0 < r <= R of |now - ref|/|ref|.
/// The origin is excluded; throws if the disk contains no points.
double relative_error(const std::vector<cd>& now, const std::vector<cd>& ref,
                      const std::vector<double>& radii, double R);

enum class Backend { spectral, fd };

/// One Strang step: half potential, full kinetic, half potential.
/// The spectral stepper owns the cached mode propagator and expects a
/// mirrored field; the fd stepper shares the assembled operator and expects
/// a physical field on its grid.
class SplitStepper {
 public:
  static SplitStepper spectral(std::size_t m_physical, double L, double tau);
  static SplitStepper fd(std::shared_ptr<const FdLaplacian> lap, double tau,
                         ExpActionOptions opts = {});

  void step(WaveField& u);
  double tau() const { return tau_; }
  Backend backend() const { return backend_; }
  const ExpActionStats& last_exp_stats() const { return exp_stats_; }

 private:
  SplitStepper() = default;
  Backend backend_ = Backend::spectral;
  double tau_ = 0;
  std::shared_ptr<SpectralKinetic> kinetic_;
  std::shared_ptr<const FdLaplacian> lap_;
  ExpActionOptions exp_opts_;
  ExpActionStats exp_stats_;
};

/// Total energy E = 1/2 int |grad psi|^2 + 1/4 int (1 - |psi|^2)^2 over the
/// physical domain; gradients in mode space on uniform periodic grids and by
/// centered differences on closed grids. Diagnostic (splitting does not
/// conserve it exactly).
double energy(const WaveField& u);

struct RunConfig {
  Backend backend = Backend::spectral;
  double L = 20.0;
  // spectral: modes per mirrored axis (paper's "m = 2*200" -> 400);
  // fd uniform: points per axis. Ignored for fd geometric grids.
  std::size_t m = 400;
  std::string grid = "geometric";  // fd: uniform | geometric
  double hmin = 0.05, mean = 0.2;  // fd geometric construction
  std::string profile = "pade4";   // pade2 | pade3 | pade4 | num
  std::size_t bvp_n = 5000;
  double tau = 0.01, T = 10.0;
  std::vector<double> disks = {2, 5, 10, 20};
  // evaluation point set for the error metric: grid nodes, or a geometric
  // tensor grid evaluated through the trigonometric polynomial (spectral only)
  std::string eval = "grid";
  double eval_hmin = 0.05, eval_mean = 0.4;
  int record_every = 1;
  bool with_energy = true;
  bool keep_final_state = false;
};

struct RunRecord {
  double t = 0;
  std::vector<double> disk_errors;
  double mass = 0;
  double energy = 0;
};

struct RunResult {
  std::vector<RunRecord> records;
  double mass0 = 0;   // discrete mass of the initial state
  double energy0 = 0;
  int max_basis = 0;  // largest Krylov basis over the run (fd)
  WaveField final_state;  // populated when keep_final_state is set
};

/// Steady-vortex preservation experiment: T/tau Strang steps recording the
/// disk errors, discrete mass, and energy at each recorded step.
RunResult run_preservation(const RunConfig& config);

}  // namespace gpev
