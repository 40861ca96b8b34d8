#include "gpev/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "gpev/kernels.hpp"
#include "gpev/parallel.hpp"

namespace gpev {
namespace {

using kernels::cd;

std::shared_ptr<const RadialProfile> cached_bvp(std::size_t n) {
  static std::mutex m;
  static std::map<std::size_t, std::shared_ptr<const RadialProfile>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<RadialProfile>(solve_profile(n));
  cache.emplace(n, p);
  return p;
}

}  // namespace

DensityProfile DensityProfile::pade(int q) {
  DensityProfile d;
  const PadeProfile p = build_pade(q);
  d.f_ = [p](double r) { return eval_rho(p, r); };
  d.name_ = "pade" + std::to_string(q);
  return d;
}

DensityProfile DensityProfile::numerical(
    std::shared_ptr<const RadialProfile> p) {
  DensityProfile d;
  d.f_ = [p](double r) { return p->rho(r); };
  d.name_ = "num";
  return d;
}

DensityProfile DensityProfile::named(const std::string& name,
                                     std::size_t bvp_n) {
  if (name == "pade2") return pade(2);
  if (name == "pade3") return pade(3);
  if (name == "pade4") return pade(4);
  if (name == "num") return numerical(cached_bvp(bvp_n));
  throw std::invalid_argument("unknown profile: " + name);
}

void potential_step(WaveField& u, double dt) {
  const double half = dt / 2;
  parallel_for(0, u.values.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      cd& z = u.values[i];
      const double phase = half * (1.0 - std::norm(z));
      z *= cd(std::cos(phase), std::sin(phase));
    }
  });
}

WaveField build_vortex(const Grid2D& grid, const DensityProfile& profile) {
  WaveField u;
  u.grid = grid;
  const auto& xs = grid.gx.x;
  const auto& ys = grid.gy.x;
  u.values.resize(xs.size() * ys.size());
  parallel_for(0, ys.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t iy = lo; iy < hi; ++iy)
      for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        const double x = xs[ix], y = ys[iy];
        cd v(0.0, 0.0);
        if (x != 0.0 || y != 0.0) {
          const double amp =
              std::sqrt(std::max(0.0, profile.rho(std::hypot(x, y))));
          v = std::polar(amp, std::atan2(y, x));
        }
        u.values[iy * xs.size() + ix] = v;
      }
  });
  return u;
}

double relative_error(const std::vector<cd>& now, const std::vector<cd>& ref,
                      const std::vector<double>& radii, double R) {
  if (now.size() != ref.size() || now.size() != radii.size())
    throw std::invalid_argument("relative_error: size mismatch");
  double m = -1;
  for (std::size_t i = 0; i < now.size(); ++i) {
    if (!(radii[i] > 0.0) || radii[i] > R) continue;
    m = std::max(m, std::abs(now[i] - ref[i]) / std::abs(ref[i]));
  }
  if (m < 0)
    throw std::invalid_argument("relative_error: no points inside the disk");
  return m;
}

SplitStepper SplitStepper::spectral(std::size_t m_physical, double L,
                                    double tau) {
  SplitStepper s;
  s.backend_ = Backend::spectral;
  s.tau_ = tau;
  s.kinetic_ = std::make_shared<SpectralKinetic>(m_physical, L, tau);
  return s;
}

SplitStepper SplitStepper::fd(std::shared_ptr<const FdLaplacian> lap,
                              double tau, ExpActionOptions opts) {
  SplitStepper s;
  s.backend_ = Backend::fd;
  s.tau_ = tau;
  s.lap_ = std::move(lap);
  s.exp_opts_ = opts;
  return s;
}

void SplitStepper::step(WaveField& u) {
  potential_step(u, tau_ / 2);
  if (backend_ == Backend::spectral) {
    if (u.grid.layout != Layout::mirrored)
      throw std::invalid_argument("spectral step: mirrored field required");
    auto s = analyze(u);
    kinetic_->apply(s);
    auto back = synthesize(s);
    u.values.swap(back.values);
  } else {
    if (u.values.size() != lap_->points())
      throw std::invalid_argument("fd step: field/grid mismatch");
    exp_stats_ = kinetic_step_fd(*lap_, tau_, u.values, exp_opts_);
  }
  potential_step(u, tau_ / 2);
  u.time += tau_;
}

namespace {

// mode-space gradient magnitude squared integrated over the physical block
double spectral_gradient_energy(const WaveField& mirrored) {
  auto s = analyze(mirrored);
  const std::size_t n = s.axis(), m = s.m;
  SpectralField dx = s, dy = s;
  for (std::size_t j2 = 0; j2 < n; ++j2)
    for (std::size_t j1 = 0; j1 < n; ++j1) {
      const std::ptrdiff_t n1 =
          j1 < m ? std::ptrdiff_t(j1) : std::ptrdiff_t(j1) - std::ptrdiff_t(n);
      const std::ptrdiff_t n2 =
          j2 < m ? std::ptrdiff_t(j2) : std::ptrdiff_t(j2) - std::ptrdiff_t(n);
      const double k1 = M_PI * double(n1) / (2 * s.L);
      const double k2 = M_PI * double(n2) / (2 * s.L);
      dx.modes[j2 * n + j1] *= cd(0, k1);
      dy.modes[j2 * n + j1] *= cd(0, k2);
    }
  auto gx = synthesize(dx);
  auto gy = synthesize(dy);
  const double h = 2 * s.L / double(m);
  double acc = 0;
  for (std::size_t iy = 0; iy < m; ++iy)
    for (std::size_t ix = 0; ix < m; ++ix)
      acc += std::norm(gx.values[iy * n + ix]) +
             std::norm(gy.values[iy * n + ix]);
  return acc * h * h;
}

double fd_gradient_energy(const WaveField& u) {
  const auto& gx = u.grid.gx;
  const auto& gy = u.grid.gy;
  const std::size_t nx = gx.size(), ny = gy.size();
  double acc = 0;
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix) {
      cd ddx, ddy;
      if (ix == 0)
        ddx = (u.at(1, iy) - u.at(0, iy)) / gx.h[0];
      else if (ix + 1 == nx)
        ddx = (u.at(nx - 1, iy) - u.at(nx - 2, iy)) / gx.h[nx - 2];
      else
        ddx = (u.at(ix + 1, iy) - u.at(ix - 1, iy)) / (gx.h[ix - 1] + gx.h[ix]);
      if (iy == 0)
        ddy = (u.at(ix, 1) - u.at(ix, 0)) / gy.h[0];
      else if (iy + 1 == ny)
        ddy = (u.at(ix, ny - 1) - u.at(ix, ny - 2)) / gy.h[ny - 2];
      else
        ddy = (u.at(ix, iy + 1) - u.at(ix, iy - 1)) / (gy.h[iy - 1] + gy.h[iy]);
      acc += gx.w[ix] * gy.w[iy] * (std::norm(ddx) + std::norm(ddy));
    }
  return acc;
}

}  // namespace

double energy(const WaveField& u) {
  const bool periodic = u.grid.gx.closure == Closure::periodic;
  double grad = 0, pot = 0;
  if (periodic) {
    const WaveField* mir = &u;
    WaveField tmp;
    if (u.grid.layout == Layout::physical) {
      tmp = mirror_extend(u);
      mir = &tmp;
    }
    grad = spectral_gradient_energy(*mir);
    const std::size_t n = mir->nx(), m = n / 2;
    const double h = 2 * mir->grid.gx.L / double(m);
    for (std::size_t iy = 0; iy < m; ++iy)
      for (std::size_t ix = 0; ix < m; ++ix) {
        const double d = 1.0 - std::norm(mir->values[iy * n + ix]);
        pot += d * d;
      }
    pot *= h * h;
  } else {
    grad = fd_gradient_energy(u);
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
      for (std::size_t ix = 0; ix < u.nx(); ++ix) {
        const double d = 1.0 - std::norm(u.at(ix, iy));
        pot += u.grid.gx.w[ix] * u.grid.gy.w[iy] * d * d;
      }
  }
  return 0.5 * grad + 0.25 * pot;
}

namespace {

struct EvalSet {
  std::vector<double> radii;       // per evaluation point
  std::vector<cd> reference;       // psi0 there
  std::vector<std::size_t> index;  // node index into the state (grid eval)
  std::vector<double> xs, ys;      // tensor coordinates (nonuniform eval)
};

void record_diagnostics(const RunConfig& cfg, const EvalSet& ev,
                        const std::vector<cd>& now, double t, double mass,
                        double en, RunResult& out) {
  RunRecord rec;
  rec.t = t;
  rec.mass = mass;
  rec.energy = en;
  rec.disk_errors.reserve(cfg.disks.size());
  for (double R : cfg.disks)
    rec.disk_errors.push_back(relative_error(now, ev.reference, ev.radii, R));
  out.records.push_back(std::move(rec));
}

double amplitude_guard(const std::vector<cd>& v) {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::norm(z));
  return std::sqrt(m);
}

}  // namespace

RunResult run_preservation(const RunConfig& cfg) {
  const double steps_real = cfg.T / cfg.tau;
  const long nsteps = std::lround(steps_real);
  if (nsteps < 1 || std::abs(steps_real - double(nsteps)) > 1e-9)
    throw std::invalid_argument("run_preservation: T/tau must be an integer");
  if (cfg.disks.empty())
    throw std::invalid_argument("run_preservation: no disks configured");
  const DensityProfile profile = DensityProfile::named(cfg.profile, cfg.bvp_n);

  RunResult out;
  if (cfg.backend == Backend::spectral) {
    if (cfg.m % 2 || cfg.m < 8)
      throw std::invalid_argument("spectral run: m (mirrored modes) must be even");
    const std::size_t m_phys = cfg.m / 2;
    Grid2D phys = make_grid2d(build_uniform(cfg.L, m_phys, Closure::periodic));
    WaveField psi0 = build_vortex(phys, profile);
    WaveField u = mirror_extend(psi0);
    SplitStepper stepper = SplitStepper::spectral(m_phys, cfg.L, cfg.tau);

    EvalSet ev;
    const bool tensor_eval = cfg.eval == "nonuniform";
    if (tensor_eval) {
      Grid1D geo = build_geometric(cfg.L, cfg.eval_hmin, cfg.eval_mean);
      Grid2D g2 = make_grid2d(geo);
      WaveField ref = build_vortex(g2, profile);
      ev.xs = geo.x;
      ev.ys = geo.x;
      ev.reference = std::move(ref.values);
      ev.radii.resize(ev.reference.size());
      for (std::size_t iy = 0; iy < geo.size(); ++iy)
        for (std::size_t ix = 0; ix < geo.size(); ++ix)
          ev.radii[iy * geo.size() + ix] = std::hypot(geo.x[ix], geo.x[iy]);
    } else if (cfg.eval == "grid") {
      ev.reference = psi0.values;
      ev.radii.resize(ev.reference.size());
      for (std::size_t iy = 0; iy < m_phys; ++iy)
        for (std::size_t ix = 0; ix < m_phys; ++ix)
          ev.radii[iy * m_phys + ix] =
              std::hypot(phys.gx.x[ix], phys.gy.x[iy]);
    } else {
      throw std::invalid_argument("unknown eval mode: " + cfg.eval);
    }

    const double hm = 2 * cfg.L / double(m_phys);
    out.mass0 = hm * hm *
                kernels::active().nrm2sq(u.values.data(), u.values.size());
    out.energy0 = cfg.with_energy ? energy(u) : 0.0;

    std::vector<cd> now;
    for (long s = 1; s <= nsteps; ++s) {
      stepper.step(u);
      if (s % cfg.record_every) continue;
      if (amplitude_guard(u.values) > 1.5)
        throw std::runtime_error("run_preservation: field left the steady regime");
      if (tensor_eval) {
        auto sf = analyze(u);
        now = eval_on_tensor_grid(sf, ev.xs, ev.ys);
      } else {
        now = restrict_physical(u).values;
      }
      const double mass =
          hm * hm * kernels::active().nrm2sq(u.values.data(), u.values.size());
      const double en = cfg.with_energy ? energy(u) : 0.0;
      record_diagnostics(cfg, ev, now, u.time, mass, en, out);
    }
    if (cfg.keep_final_state) out.final_state = std::move(u);
    return out;
  }

  // fd backend
  if (cfg.eval != "grid")
    throw std::invalid_argument("fd runs evaluate on their own grid");
  Grid1D axis;
  if (cfg.grid == "geometric")
    axis = build_geometric(cfg.L, cfg.hmin, cfg.mean);
  else if (cfg.grid == "uniform")
    axis = build_uniform(cfg.L, cfg.m, Closure::closed);
  else
    throw std::invalid_argument("unknown fd grid kind: " + cfg.grid);
  Grid2D g2 = make_grid2d(axis);
  auto lap = std::make_shared<const FdLaplacian>(g2);
  WaveField psi0 = build_vortex(g2, profile);
  WaveField u = psi0;
  SplitStepper stepper = SplitStepper::fd(lap, cfg.tau);

  EvalSet ev;
  ev.reference = psi0.values;
  ev.radii.resize(ev.reference.size());
  for (std::size_t iy = 0; iy < axis.size(); ++iy)
    for (std::size_t ix = 0; ix < axis.size(); ++ix)
      ev.radii[iy * axis.size() + ix] = std::hypot(axis.x[ix], axis.x[iy]);

  const auto& w = lap->weights();
  out.mass0 = kernels::active().wnrm2sq(w.data(), u.values.data(), w.size());
  out.energy0 = cfg.with_energy ? energy(u) : 0.0;

  for (long s = 1; s <= nsteps; ++s) {
    stepper.step(u);
    out.max_basis = std::max(out.max_basis, stepper.last_exp_stats().basis);
    if (s % cfg.record_every) continue;
    if (amplitude_guard(u.values) > 1.5)
      throw std::runtime_error("run_preservation: field left the steady regime");
    const double mass =
        kernels::active().wnrm2sq(w.data(), u.values.data(), w.size());
    const double en = cfg.with_energy ? energy(u) : 0.0;
    record_diagnostics(cfg, ev, u.values, u.time, mass, en, out);
  }
  if (cfg.keep_final_state) out.final_state = std::move(u);
  return out;
}

}  // namespace gpev
