#include "gpev/acceptance.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>

#include "gpev/bvp.hpp"
#include "gpev/dynamics.hpp"
#include "gpev/fd.hpp"
#include "gpev/grid.hpp"
#include "gpev/pade.hpp"
#include "gpev/spectral.hpp"

namespace gpev::acceptance {
namespace {

using cd = std::complex<double>;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << "FAIL: " << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

// ---------------------------------------------------------------- criterion 1
CriterionResult pade_q2_exactness() {
  Check c;
  auto [a1, b1, a2] = pade2_exact();
  c.require(a1.num == 11 && a1.den == 32, "a1 != 11/32");
  c.require(b1.num == 1 && b1.den == 3, "b1 != 1/3");
  c.require(a2.num == 11 && a2.den == 384, "a2 != 11/384");
  auto tail = residual_coefficients(build_pade(2), 8);
  c.require(tail[0] == 0.0 && tail[1] == 0.0 && tail[2] == 0.0,
            "leading residual coefficients nonzero");
  double prev = 1e9;
  for (int k = 3; k < 6; ++k) {
    c.require(std::abs(tail[k]) <= 1.5e-4, "tail exceeds 1.5e-4");
    c.require(std::abs(tail[k]) < prev, "tail not decreasing");
    prev = std::abs(tail[k]);
  }
  c.note("max tail " + fmt(std::abs(tail[3])));
  return {1, "pade exactness (q=2)", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------- criterion 2
CriterionResult pade_roots() {
  Check c;
  const long double ref3 = 0.34003812123694735361L;
  const long double ref4 = 0.34010790700196714760L;
  const long double r3 = strtold(pade_a1_decimal(3).c_str(), nullptr);
  const long double r4 = strtold(pade_a1_decimal(4).c_str(), nullptr);
  c.require(std::abs(double((r3 - ref3) / ref3)) <= 1e-14, "q=3 a1 mismatch");
  c.require(std::abs(double((r4 - ref4) / ref4)) <= 1e-14, "q=4 a1 mismatch");
  c.require(pade_root_residual(3) <= 1e-12, "q=3 root residual");
  c.require(pade_root_residual(4) <= 1e-12, "q=4 root residual");

  auto t3 = residual_coefficients(build_pade(3), 12);
  for (int k = 0; k < 5; ++k)
    c.require(std::abs(t3[k]) <= 1e-14, "q=3 leading coefficients");
  for (int k = 5; k < 10; ++k)
    c.require(std::abs(t3[k]) <= 4.0e-4, "q=3 tail exceeds 4.0e-4");
  auto t4 = residual_coefficients(build_pade(4), 16);
  for (int k = 0; k < 7; ++k)
    c.require(std::abs(t4[k]) <= 1e-14, "q=4 leading coefficients");
  for (int k = 7; k < 14; ++k)
    c.require(std::abs(t4[k]) <= 1.9e-11, "q=4 tail exceeds 1.9e-11");
  c.note("tails " + fmt(std::abs(t3[5])) + " / " + fmt(std::abs(t4[7])));
  return {2, "pade roots (q=3,4)", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------- criterion 3
CriterionResult rho2_pathology() {
  Check c;
  auto p2 = build_pade(2);
  // bracket the derivative zero
  double lo = 10.0, hi = 20.0;
  c.require(eval_rho_prime(p2, lo) > 0 && eval_rho_prime(p2, hi) < 0,
            "derivative does not change sign on [10, 20]");
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (eval_rho_prime(p2, mid) > 0 ? lo : hi) = mid;
  }
  const double r0 = (lo + hi) / 2;
  c.require(std::abs(r0 - 14.065) <= 1e-3, "r0 != 14.065 +- 1e-3");
  c.require(eval_rho(p2, r0) > 1.0, "rho2(r0) <= 1");
  // uniqueness of the positive zero: no other sign change
  double prev = eval_rho_prime(p2, 1e-3);
  int sign_changes = 0;
  for (int i = 1; i <= 10000; ++i) {
    const double v = eval_rho_prime(p2, 1e-3 + (100.0 - 1e-3) * i / 10000.0);
    if ((v > 0) != (prev > 0)) ++sign_changes;
    prev = v;
  }
  c.require(sign_changes == 1, "rho2' has multiple positive zeros");

  for (int q : {3, 4}) {
    auto p = build_pade(q);
    double last = 0.0;
    bool mono = true;
    for (int i = 1; i <= 10000; ++i) {
      const double r = 1000.0 * double(i) / 10000.0;
      const double v = eval_rho(p, r);
      if (v <= last || eval_rho_prime(p, r) <= 0.0) mono = false;
      last = v;
    }
    c.require(mono, "rho" + std::to_string(q) + " not monotone on (0,1e3]");
  }
  c.note("r0 = " + fmt(r0) + ", rho2(r0) = " + fmt(eval_rho(p2, r0)));
  return {3, "rho2 pathology, rho3/rho4 monotone", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------- criterion 4
CriterionResult bvp_consistency() {
  Check c;
  auto g625 = solve_profile(625);
  auto g1250 = solve_profile(1250);
  auto g2500 = solve_profile(2500);
  auto g5000 = solve_profile(5000);
  auto diff = [](const RadialProfile& a, const RadialProfile& b) {
    const std::size_t k = b.subdivisions / a.subdivisions;
    double m = 0;
    for (std::size_t i = 0; i < a.g.size(); ++i)
      m = std::max(m, std::abs(a.g[i] - b.g[i * k]));
    return m;
  };
  const double p1 = std::log2(diff(g625, g1250) / diff(g1250, g2500));
  const double p2 = std::log2(diff(g1250, g2500) / diff(g2500, g5000));
  c.require(std::abs(p1 - 2.0) <= 0.2, "order p1 = " + fmt(p1));
  c.require(std::abs(p2 - 2.0) <= 0.2, "order p2 = " + fmt(p2));

  auto p4 = build_pade(4);
  auto p3 = build_pade(3);
  auto p2p = build_pade(2);
  double max4 = -1, argmax4 = 0;
  bool ordered = true;
  for (std::size_t i = 1; i < g5000.r.size(); ++i) {
    const double r = g5000.r[i];
    if (r > 20.0) break;
    const double rn = g5000.g[i] * g5000.g[i];
    const double e2 = std::abs(eval_rho(p2p, r) - rn) / rn;
    const double e3 = std::abs(eval_rho(p3, r) - rn) / rn;
    const double e4 = std::abs(eval_rho(p4, r) - rn) / rn;
    if (e4 > max4) {
      max4 = e4;
      argmax4 = r;
    }
    if (r >= 0.5 && !(e4 < e3 && e3 < e2)) ordered = false;
  }
  c.require(argmax4 < 10.0, "rho4 error max at r = " + fmt(argmax4));
  c.require(ordered, "error curves not strictly ordered on [0.5, 20]");
  c.note("orders " + fmt(p1) + "/" + fmt(p2) + ", argmax " + fmt(argmax4));
  return {4, "bvp consistency", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------- criterion 5
CriterionResult symmetrization_and_mass() {
  Check c;
  auto axis = build_geometric(20.0, 0.05, 0.2);
  FdLaplacian lap(make_grid2d(axis));
  c.require(lap.symmetry_defect() <= 1e-12,
            "WA symmetry defect " + fmt(lap.symmetry_defect()));

  RunConfig cfg;
  cfg.backend = Backend::fd;
  cfg.grid = "geometric";
  cfg.L = 20.0;
  cfg.hmin = 0.05;
  cfg.mean = 0.2;
  cfg.profile = "pade4";
  cfg.tau = 0.01;
  cfg.T = 10.0;
  cfg.disks = {2.0, 5.0, 10.0};
  cfg.with_energy = false;
  auto res = run_preservation(cfg);
  double drift = 0;
  for (const auto& rec : res.records)
    drift = std::max(drift, std::abs(rec.mass - res.mass0) / res.mass0);
  c.require(drift <= 1e-11, "mass drift " + fmt(drift));
  c.note("drift " + fmt(drift) + ", max basis " + std::to_string(res.max_basis));
  return {5, "symmetrization and discrete mass", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------- criterion 6
CriterionResult exp_action_oracle() {
  Check c;
  auto g2 = make_grid2d(build_uniform(20.0, 16, Closure::closed));
  FdLaplacian lap(g2);
  const std::size_t n = lap.points();

  // dense A_w via the Kronecker sum of the per-axis symmetrized operators
  Eigen::MatrixXd Aw = Eigen::MatrixXd::Zero(n, n);
  const auto& sx = lap.axis_x_sym();
  const auto& sy = lap.axis_y_sym();
  const std::size_t m = sx.size();
  for (std::size_t iy = 0; iy < m; ++iy)
    for (std::size_t ix = 0; ix < m; ++ix) {
      const std::size_t row = iy * m + ix;
      Aw(row, row) += sx.diag[ix] + sy.diag[iy];
      if (ix > 0) Aw(row, row - 1) += sx.lower[ix];
      if (ix + 1 < m) Aw(row, row + 1) += sx.upper[ix];
      if (iy > 0) Aw(row, row - m) += sy.lower[iy];
      if (iy + 1 < m) Aw(row, row + m) += sy.upper[iy];
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Aw);

  std::vector<cd> z0(n);
  std::srand(12345);
  for (auto& z : z0)
    z = {double(std::rand()) / RAND_MAX - 0.5,
         double(std::rand()) / RAND_MAX - 0.5};

  double worst = 0;
  for (double tau : {0.01, 0.1, 1.0}) {
    Eigen::VectorXcd zv(n);
    for (std::size_t i = 0; i < n; ++i) zv[i] = z0[i];
    Eigen::VectorXcd proj = es.eigenvectors().transpose() * zv;
    for (std::size_t i = 0; i < n; ++i)
      proj[i] *= std::polar(1.0, 0.5 * tau * es.eigenvalues()[i]);
    Eigen::VectorXcd dense = es.eigenvectors() * proj;

    auto z = z0;
    expi_action(lap, tau, z);
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(z[i] - dense[i]));
  }
  c.require(worst <= 1e-10, "max deviation " + fmt(worst));
  c.note("max deviation " + fmt(worst));
  return {6, "exp-action vs dense exponential", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------- criterion 7
CriterionResult regularity_dichotomy() {
  Check c;
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<RegularityParams> smooth = {{10.0, 5.0, 0}};
  const std::vector<RegularityParams> singular = {
      {1.0, 5.0, 0}, {10.0, inf, 0}, {10.0, 5.0, 1}, {1.0, inf, 1}};
  const std::vector<std::size_t> mlist = {16, 32, 64, 128, 256};

  auto slopes_of = [&](const RegularityParams& p) {
    auto rows = truncation_study({p}, mlist, 1024, 20.0);
    std::vector<double> s;
    for (std::size_t i = 0; i + 2 < rows.size(); ++i)  // last row is m_ref
      s.push_back(std::log2(rows[i].l2_error / rows[i + 1].l2_error));
    return s;
  };

  auto ss = slopes_of(smooth[0]);
  std::ostringstream sm;
  bool increasing = true;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (i && ss[i] <= ss[i - 1]) increasing = false;
    sm << (i ? "," : "") << fmt(ss[i]);
  }
  c.require(increasing, "smooth slopes not increasing: " + sm.str());
  c.note("smooth slopes " + sm.str());

  const double bound = 6.0;
  for (const auto& p : singular) {
    auto sv = slopes_of(p);
    double mx = 0;
    for (double s : sv) mx = std::max(mx, s);
    std::ostringstream name;
    name << "(q=" << p.q << ",ell=" << p.ell << ",c=" << p.c << ")";
    c.require(mx <= bound, name.str() + " slope " + fmt(mx) + " above bound");
  }
  return {7, "spectral regularity dichotomy", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------- criterion 8
CriterionResult steady_vortex_ordering() {
  Check c;
  RunConfig base;
  base.backend = Backend::spectral;
  base.m = 400;
  base.L = 20.0;
  base.tau = 0.01;
  base.T = 10.0;
  base.disks = {2.0, 5.0, 10.0, 20.0, 29.0};  // 29 covers the full square
  base.with_energy = false;

  std::vector<std::string> profiles = {"pade2", "pade3", "pade4", "num"};
  std::vector<RunResult> runs;
  for (const auto& p : profiles) {
    RunConfig cfg = base;
    cfg.profile = p;
    runs.push_back(run_preservation(cfg));
  }

  // pade2 curve dominates pade4 on every disk at every step
  const auto& r2 = runs[0].records;
  const auto& r4 = runs[2].records;
  for (std::size_t d = 0; d < base.disks.size(); ++d) {
    bool dominates = true;
    for (std::size_t t = 0; t < r2.size(); ++t)
      if (r2[t].disk_errors[d] < r4[t].disk_errors[d]) dominates = false;
    c.require(dominates, "pade2 does not dominate pade4 on R=" +
                             fmt(base.disks[d]));
  }
  // collapse within 10% on the largest disk
  const std::size_t dl = base.disks.size() - 1;
  double worst = 0;
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = 0; j < runs.size(); ++j) {
      if (i == j) continue;
      for (std::size_t t = 0; t < runs[i].records.size(); ++t) {
        const double a = runs[i].records[t].disk_errors[dl];
        const double b = runs[j].records[t].disk_errors[dl];
        worst = std::max(worst, std::abs(a - b) / b);
      }
    }
  c.require(worst <= 0.10, "largest-disk collapse gap " + fmt(worst));
  c.note("collapse gap " + fmt(worst));
  return {8, "steady-vortex profile ordering", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------- criterion 9
CriterionResult domain_size_effect() {
  Check c;
  auto run_L = [](double L) {
    RunConfig cfg;
    cfg.backend = Backend::fd;
    cfg.grid = "geometric";
    cfg.L = L;
    cfg.hmin = 0.05;
    cfg.mean = 0.2;
    cfg.profile = "pade4";
    cfg.tau = 0.01;
    cfg.T = 10.0;
    cfg.disks = {2.0, 5.0, 10.0};
    cfg.with_energy = false;
    return run_preservation(cfg);
  };
  auto rL10 = run_L(10.0);
  auto rL20 = run_L(20.0);
  auto rL30 = run_L(30.0);

  for (std::size_t d = 0; d < 3; ++d) {
    bool uniformly_larger = true;
    for (std::size_t t = 0; t < rL10.records.size(); ++t)
      if (rL10.records[t].disk_errors[d] <= rL20.records[t].disk_errors[d])
        uniformly_larger = false;
    c.require(uniformly_larger, "L=10 not uniformly worse on disk " +
                                    std::to_string(d));
    bool late_ok = true;
    for (std::size_t t = 0; t < rL20.records.size(); ++t) {
      if (rL20.records[t].t < 7.5) continue;
      if (rL30.records[t].disk_errors[d] > rL20.records[t].disk_errors[d])
        late_ok = false;
    }
    c.require(late_ok, "L=30 above L=20 at late times on disk " +
                           std::to_string(d));
  }
  c.note("final R=2 errors " + fmt(rL10.records.back().disk_errors[0]) + " / " +
         fmt(rL20.records.back().disk_errors[0]) + " / " +
         fmt(rL30.records.back().disk_errors[0]));
  return {9, "domain-size effect", c.ok, c.detail.str(), 0};
}

// --------------------------------------------------------------- criterion 10
CriterionResult splitting_order() {
  Check c;
  const double L = 20.0, T = 0.5;
  auto run_tau = [&](double tau) {
    auto u = mirror_extend(regularity_family({10.0, 5.0, 0}, L, 64));
    auto st = SplitStepper::spectral(64, L, tau);
    const long n = std::lround(T / tau);
    for (long i = 0; i < n; ++i) st.step(u);
    return u.values;
  };
  auto maxdiff = [](const std::vector<cd>& a, const std::vector<cd>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  };
  auto ref = run_tau(T / 320.0);
  const double e1 = maxdiff(run_tau(T / 10.0), ref);
  const double e2 = maxdiff(run_tau(T / 20.0), ref);
  const double e3 = maxdiff(run_tau(T / 40.0), ref);
  const double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
  c.require(std::abs(p1 - 2.0) <= 0.2, "order " + fmt(p1));
  c.require(std::abs(p2 - 2.0) <= 0.2, "order " + fmt(p2));

  // identity preservation to 1 ulp
  WaveField ones;
  ones.grid = make_grid2d(build_uniform(L, 32, Closure::periodic));
  ones.values.assign(32 * 32, cd(1.0, 0.0));
  auto mir = mirror_extend(ones);
  auto st = SplitStepper::spectral(32, L, 0.17);
  st.step(mir);
  bool exact = true;
  for (auto z : mir.values)
    if (std::abs(z - cd(1.0, 0.0)) >
        2 * std::numeric_limits<double>::epsilon())
      exact = false;
  c.require(exact, "uniform background not exactly preserved");

  // reversibility on both backends
  auto phys = make_grid2d(build_uniform(L, 32, Closure::periodic));
  auto u = mirror_extend(build_vortex(phys, DensityProfile::pade(4)));
  auto orig = u.values;
  auto fwd = SplitStepper::spectral(32, L, 0.02);
  auto bwd = SplitStepper::spectral(32, L, -0.02);
  for (int i = 0; i < 10; ++i) fwd.step(u);
  for (int i = 0; i < 10; ++i) bwd.step(u);
  c.require(maxdiff(u.values, orig) <= 1e-11,
            "spectral reversal " + fmt(maxdiff(u.values, orig)));

  auto g2 = make_grid2d(build_geometric(10.0, 0.1, 0.4));
  auto lap = std::make_shared<const FdLaplacian>(g2);
  auto v = build_vortex(g2, DensityProfile::pade(4));
  auto vorig = v.values;
  auto ff = SplitStepper::fd(lap, 0.02);
  auto fb = SplitStepper::fd(lap, -0.02);
  for (int i = 0; i < 10; ++i) ff.step(v);
  for (int i = 0; i < 10; ++i) fb.step(v);
  c.require(maxdiff(v.values, vorig) <= 1e-11,
            "fd reversal " + fmt(maxdiff(v.values, vorig)));
  c.note("orders " + fmt(p1) + "/" + fmt(p2));
  return {10, "splitting order and reversibility", c.ok, c.detail.str(), 0};
}

// --------------------------------------------------------------- criterion 11
CriterionResult nonuniform_evaluation() {
  Check c;
  auto run_h = [](double hmin) {
    RunConfig cfg;
    cfg.backend = Backend::spectral;
    cfg.m = 200;
    cfg.L = 20.0;
    cfg.profile = "pade4";
    cfg.tau = 0.01;
    cfg.T = 10.0;
    cfg.disks = {2.0, 5.0, 10.0, 20.0, 29.0};
    cfg.eval = "nonuniform";
    cfg.eval_hmin = hmin;
    cfg.eval_mean = 0.4;
    cfg.with_energy = false;
    return run_preservation(cfg);
  };
  std::vector<RunResult> runs;
  for (double h : {0.05, 0.1, 0.2}) runs.push_back(run_h(h));

  // beyond t = 2 the three series agree within 20% on the largest disk
  const std::size_t dl = 4;
  double worst = 0;
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = 0; j < runs.size(); ++j) {
      if (i == j) continue;
      for (std::size_t t = 0; t < runs[i].records.size(); ++t) {
        if (runs[i].records[t].t <= 2.0) continue;
        const double a = runs[i].records[t].disk_errors[dl];
        const double b = runs[j].records[t].disk_errors[dl];
        worst = std::max(worst, std::abs(a - b) / b);
      }
    }
  c.require(worst <= 0.20, "late-time gap " + fmt(worst));
  c.note("late-time gap " + fmt(worst));
  return {11, "nonuniform evaluation agreement", c.ok, c.detail.str(), 0};
}

}  // namespace

std::vector<CriterionResult> run_all(const Options& opts) {
  using clock = std::chrono::steady_clock;
  std::vector<std::function<CriterionResult()>> criteria = {
      pade_q2_exactness,    pade_roots,
      rho2_pathology,       bvp_consistency,
      symmetrization_and_mass, exp_action_oracle,
      regularity_dichotomy, steady_vortex_ordering,
      domain_size_effect,   splitting_order,
      nonuniform_evaluation};

  std::vector<CriterionResult> results;
  for (auto& fn : criteria) {
    const auto t0 = clock::now();
    CriterionResult r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.id = int(results.size()) + 1;
      r.name = "criterion " + std::to_string(r.id);
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    if (opts.log) {
      *opts.log << (r.passed ? "PASS" : "FAIL") << "  [" << std::setw(2)
                << r.id << "] " << r.name << "  (" << std::fixed
                << std::setprecision(1) << r.seconds << " s)"
                << (r.detail.empty() ? "" : "  -- " + r.detail) << std::endl;
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

void print_table(const std::vector<CriterionResult>& results,
                 std::ostream& os) {
  int npass = 0;
  for (const auto& r : results) npass += r.passed;
  os << "acceptance: " << npass << "/" << results.size() << " criteria passed\n";
  for (const auto& r : results) {
    os << (r.passed ? "  PASS" : "  FAIL") << "  [" << r.id << "] " << r.name;
    if (!r.detail.empty()) os << "  -- " << r.detail;
    os << "\n";
  }
}

}  // namespace gpev::acceptance
