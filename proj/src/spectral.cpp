#include "gpev/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "gpev/kernels.hpp"
#include "gpev/pade.hpp"
#include "gpev/parallel.hpp"

namespace gpev {
namespace {

using kernels::cd;

std::mutex g_plan_mutex;  // FFTW planning is not thread-safe

// In-place 2D transforms of size n x n. FFTW_ESTIMATE keeps plan selection
// deterministic; FFTW_UNALIGNED lets one plan serve any buffer.
class Fft2D {
 public:
  explicit Fft2D(std::size_t n) : n_(n) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    std::vector<cd> scratch(n * n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fwd_ = fftw_plan_dft_2d(int(n), int(n), p, p, FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_2d(int(n), int(n), p, p, FFTW_BACKWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
  }
  ~Fft2D() {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  }
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  void forward(cd* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), p, p);
  }
  void backward(cd* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), p, p);
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  void* fwd_;
  void* bwd_;
};

// plan cache per transform size (plans are expensive enough to keep)
const Fft2D& plans_for(std::size_t n) {
  static std::mutex m;
  static std::vector<std::unique_ptr<Fft2D>> cache;
  std::lock_guard<std::mutex> lock(m);
  for (const auto& p : cache)
    if (p->size() == n) return *p;
  cache.push_back(std::make_unique<Fft2D>(n));
  return *cache.back();
}

void require_uniform_periodic(const Grid2D& g, const char* who) {
  if (g.gx.kind != GridKind::uniform || g.gx.closure != Closure::periodic ||
      g.gy.kind != GridKind::uniform || g.gy.closure != Closure::periodic)
    throw std::invalid_argument(std::string(who) +
                                ": uniform periodic grid required");
}

Grid1D mirrored_axis(const Grid1D& phys) {
  Grid1D g;
  g.kind = GridKind::uniform;
  g.closure = Closure::periodic;
  g.L = phys.L;
  const std::size_t m = phys.size();
  const double h = phys.h.front();
  g.x.resize(2 * m);
  for (std::size_t j = 0; j < 2 * m; ++j) g.x[j] = -phys.L + double(j) * h;
  g.h.assign(2 * m, h);
  g.w.assign(2 * m, h);
  return g;
}

double wavenumber(std::size_t j, std::size_t n2m, double L) {
  const std::ptrdiff_t n =
      j < n2m / 2 ? std::ptrdiff_t(j) : std::ptrdiff_t(j) - std::ptrdiff_t(n2m);
  return M_PI * double(n) / (2.0 * L);
}

}  // namespace

WaveField mirror_extend(const WaveField& u) {
  require_uniform_periodic(u.grid, "mirror_extend");
  if (u.grid.layout != Layout::physical)
    throw std::invalid_argument("mirror_extend: physical layout required");
  const std::size_t m = u.nx();
  if (u.ny() != m) throw std::invalid_argument("mirror_extend: square grid");

  WaveField out;
  out.time = u.time;
  out.grid.gx = mirrored_axis(u.grid.gx);
  out.grid.gy = out.grid.gx;
  out.grid.layout = Layout::mirrored;
  out.values.resize(4 * m * m);
  for (std::size_t iy = 0; iy < m; ++iy) {
    const cd* src = u.values.data() + iy * m;
    cd* lo = out.values.data() + iy * 2 * m;
    cd* hi = out.values.data() + (2 * m - 1 - iy) * 2 * m;
    for (std::size_t ix = 0; ix < m; ++ix) {
      lo[ix] = src[ix];
      lo[2 * m - 1 - ix] = src[ix];
      hi[ix] = src[ix];
      hi[2 * m - 1 - ix] = src[ix];
    }
  }
  return out;
}

WaveField restrict_physical(const WaveField& u) {
  if (u.grid.layout != Layout::mirrored)
    throw std::invalid_argument("restrict_physical: mirrored layout required");
  const std::size_t n = u.nx(), m = n / 2;
  WaveField out;
  out.time = u.time;
  out.grid.layout = Layout::physical;
  out.grid.gx = build_uniform(u.grid.gx.L, m, Closure::periodic);
  out.grid.gy = out.grid.gx;
  out.values.resize(m * m);
  for (std::size_t iy = 0; iy < m; ++iy)
    for (std::size_t ix = 0; ix < m; ++ix)
      out.values[iy * m + ix] = u.values[iy * n + ix];
  return out;
}

SpectralField analyze(const WaveField& mirrored) {
  if (mirrored.grid.layout != Layout::mirrored)
    throw std::invalid_argument("analyze: mirrored field required");
  const std::size_t n = mirrored.nx();
  SpectralField s;
  s.m = n / 2;
  s.L = mirrored.grid.gx.L;
  s.modes = mirrored.values;
  plans_for(n).forward(s.modes.data());
  kernels::active().scal(1.0 / double(n * n), s.modes.data(), s.modes.size());
  return s;
}

WaveField synthesize(const SpectralField& s) {
  const std::size_t n = s.axis();
  WaveField out;
  out.grid.gx = mirrored_axis(build_uniform(s.L, s.m, Closure::periodic));
  out.grid.gy = out.grid.gx;
  out.grid.layout = Layout::mirrored;
  out.values = s.modes;
  plans_for(n).backward(out.values.data());
  return out;
}

void kinetic_step_spectral(SpectralField& s, double tau) {
  const std::size_t n = s.axis();
  std::vector<cd> f(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = wavenumber(j, n, s.L);
    f[j] = std::polar(1.0, -tau * k * k / 2.0);
  }
  for (std::size_t j2 = 0; j2 < n; ++j2) {
    cd* row = s.modes.data() + j2 * n;
    const cd fy = f[j2];
    for (std::size_t j1 = 0; j1 < n; ++j1) row[j1] *= fy * f[j1];
  }
}

SpectralKinetic::SpectralKinetic(std::size_t m, double L, double tau)
    : m_(m), L_(L), tau_(tau) {
  const std::size_t n = 2 * m;
  std::vector<cd> f(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = wavenumber(j, n, L);
    f[j] = std::polar(1.0, -tau * k * k / 2.0);
  }
  factors_.resize(n * n);
  for (std::size_t j2 = 0; j2 < n; ++j2)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      factors_[j2 * n + j1] = f[j2] * f[j1];
}

void SpectralKinetic::apply(SpectralField& s) const {
  if (s.m != m_ || s.L != L_)
    throw std::invalid_argument("SpectralKinetic: field shape mismatch");
  kernels::active().cmul(s.modes.data(), factors_.data(), factors_.size());
}

namespace {

// e^{i k_j (x + L)} for all mode indices; the +L offset anchors FFT index 0
// at the domain corner
void phase_column(const SpectralField& s, double x, cd* out) {
  const std::size_t n = s.axis();
  for (std::size_t j = 0; j < n; ++j)
    out[j] = std::polar(1.0, wavenumber(j, n, s.L) * (x + s.L));
}

}  // namespace

std::vector<cd> eval_at_points(const SpectralField& s,
                               const std::vector<Point>& pts) {
  const std::size_t n = s.axis();
  for (const auto& p : pts)
    if (!(p.x >= -s.L && p.x < 3 * s.L && p.y >= -s.L && p.y < 3 * s.L))
      throw std::invalid_argument("eval_at_points: point outside [-L, 3L)^2");
  std::vector<cd> out(pts.size());
  const auto& ops = kernels::active();
  parallel_for(0, pts.size(), [&](std::size_t lo, std::size_t hi) {
    std::vector<cd> px(n), py(n), rowsum(n);
    for (std::size_t i = lo; i < hi; ++i) {
      phase_column(s, pts[i].x, px.data());
      phase_column(s, pts[i].y, py.data());
      for (std::size_t j2 = 0; j2 < n; ++j2)
        rowsum[j2] = ops.dotu(s.modes.data() + j2 * n, px.data(), n);
      out[i] = ops.dotu(py.data(), rowsum.data(), n);
    }
  });
  return out;
}

std::vector<cd> eval_on_tensor_grid(const SpectralField& s,
                                    const std::vector<double>& xs,
                                    const std::vector<double>& ys) {
  const std::size_t n = s.axis();
  const std::size_t nx = xs.size(), ny = ys.size();
  for (double x : xs)
    if (!(x >= -s.L && x < 3 * s.L))
      throw std::invalid_argument("eval_on_tensor_grid: x outside [-L, 3L)");
  for (double y : ys)
    if (!(y >= -s.L && y < 3 * s.L))
      throw std::invalid_argument("eval_on_tensor_grid: y outside [-L, 3L)");

  // PX[j][ix] = e^{i k_j (x_ix + L)}, rows contiguous over ix
  std::vector<cd> PX(n * nx), PY(n * ny);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = wavenumber(j, n, s.L);
    for (std::size_t ix = 0; ix < nx; ++ix)
      PX[j * nx + ix] = std::polar(1.0, k * (xs[ix] + s.L));
    for (std::size_t iy = 0; iy < ny; ++iy)
      PY[j * ny + iy] = std::polar(1.0, k * (ys[iy] + s.L));
  }

  const auto& ops = kernels::active();
  // stage 1: partial sums along x -> S[j2][ix]
  std::vector<cd> S(n * nx, cd(0));
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j2 = lo; j2 < hi; ++j2) {
      const cd* mrow = s.modes.data() + j2 * n;
      cd* srow = S.data() + j2 * nx;
      for (std::size_t j1 = 0; j1 < n; ++j1)
        ops.axpy(mrow[j1], PX.data() + j1 * nx, srow, nx);
    }
  });
  // stage 2: sum along y -> out[iy][ix]
  std::vector<cd> out(nx * ny, cd(0));
  parallel_for(0, ny, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t iy = lo; iy < hi; ++iy) {
      cd* orow = out.data() + iy * nx;
      for (std::size_t j2 = 0; j2 < n; ++j2)
        ops.axpy(PY[j2 * ny + iy], S.data() + j2 * nx, orow, nx);
    }
  });
  return out;
}

WaveField regularity_family(const RegularityParams& p, double L,
                            std::size_t m_physical) {
  if (p.q < 1 || !(p.ell > 0) || (p.c != 0 && p.c != 1))
    throw std::invalid_argument("regularity_family: invalid parameters");
  static const PadeProfile rho4 = build_pade(4);
  const bool finite_ell = std::isfinite(p.ell);

  WaveField u;
  u.grid.gx = build_uniform(L, m_physical, Closure::periodic);
  u.grid.gy = u.grid.gx;
  u.grid.layout = Layout::physical;
  u.values.resize(m_physical * m_physical);
  const auto& xs = u.grid.gx.x;
  parallel_for(0, m_physical, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t iy = lo; iy < hi; ++iy)
      for (std::size_t ix = 0; ix < m_physical; ++ix) {
        const double x = xs[ix], y = xs[iy];
        const double r = std::hypot(x, y);
        const double gauss =
            finite_ell ? std::exp(-r * r / (p.ell * p.ell)) : 1.0;
        const double dens =
            1.0 - (1.0 - std::pow(eval_rho(rho4, r), p.q / 2.0)) * gauss;
        cd v(dens, 0.0);
        if (p.c == 1) {
          const double theta = (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x);
          v *= std::polar(1.0, theta * gauss);
        }
        u.values[iy * m_physical + ix] = v;
      }
  });
  return u;
}

std::vector<TruncationRow> truncation_study(
    const std::vector<RegularityParams>& params,
    const std::vector<std::size_t>& m_list, std::size_t m_ref, double L) {
  std::size_t m_max = 0;
  for (auto m : m_list) m_max = std::max(m_max, m);
  if (m_ref < 4 * m_max)
    throw std::invalid_argument(
        "truncation_study: need m_ref >= 4 * max(m_list)");

  std::vector<TruncationRow> rows;
  const std::size_t n = m_ref;
  const double area = (4.0 * L) * (4.0 * L);
  for (const auto& p : params) {
    auto field = regularity_family(p, L, m_ref / 2);
    auto s = analyze(mirror_extend(field));

    // discrete Parseval: the trapezoidal L2 norm of the discarded part on
    // the reference grid equals area * sum of discarded |c|^2
    const double total = kernels::active().nrm2sq(s.modes.data(), n * n);
    for (auto m : m_list) {
      const std::size_t half = m / 2;
      double kept = 0;
      for (std::size_t j2 = 0; j2 < n; ++j2) {
        if (j2 >= half && j2 < n - half) continue;
        const cd* row = s.modes.data() + j2 * n;
        kept += kernels::active().nrm2sq(row, half);
        kept += kernels::active().nrm2sq(row + n - half, half);
      }
      rows.push_back({p, m, std::sqrt(area * std::max(0.0, total - kept))});
    }
    rows.push_back({p, m_ref, 0.0});  // truncation to the reference itself
  }
  return rows;
}

}  // namespace gpev
