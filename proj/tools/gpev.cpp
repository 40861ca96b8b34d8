// Experiment driver: one subcommand per study, deterministic CSV artifacts.
// Exit codes: 0 success, 2 invalid parameters, 3 numerical failure.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gpev/acceptance.hpp"
#include "gpev/bvp.hpp"
#include "gpev/dynamics.hpp"
#include "gpev/fd.hpp"
#include "gpev/grid.hpp"
#include "gpev/io.hpp"
#include "gpev/pade.hpp"
#include "gpev/parallel.hpp"
#include "gpev/spectral.hpp"

namespace {

using namespace gpev;

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write output file: " + path);
  return os;
}

// every CSV starts with a comment row carrying the full parameter set
void write_params(std::ofstream& os, const std::string& cmd,
                  const std::map<std::string, std::string>& kv) {
  os << "# gpev " << cmd;
  for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
  os << '\n';
}

std::string ell_str(double ell) {
  return std::isfinite(ell) ? g17(ell) : "inf";
}

// ----------------------------------------------------------------- profile
int cmd_profile(int q, double rmax, std::size_t n, const std::string& out) {
  auto p = build_pade(q);
  auto os = open_out(out);
  write_params(os, "profile",
               {{"q", std::to_string(q)},
                {"rmax", g17(rmax)},
                {"n", std::to_string(n)}});
  os << "r,rho,rho_prime\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rmax * double(i) / double(n - 1);
    os << g17(r) << ',' << g17(eval_rho(p, r)) << ','
       << g17(eval_rho_prime(p, r)) << '\n';
  }
  return 0;
}

// --------------------------------------------------------------------- bvp
int cmd_bvp(std::size_t n, const std::string& out) {
  auto p = solve_profile(n);
  auto os = open_out(out);
  write_params(os, "bvp", {{"n", std::to_string(n)}});
  os << "s,g,r,rho_num\n";
  for (std::size_t i = 0; i <= n; ++i) {
    os << g17(p.s[i]) << ',' << g17(p.g[i]) << ',';
    if (i < n)
      os << g17(p.r[i]) << ',' << g17(p.g[i] * p.g[i]) << '\n';
    else
      os << "inf," << g17(1.0) << '\n';
  }
  return 0;
}

// ----------------------------------------------------------- profile-error
int cmd_profile_error(int q, std::size_t n, const std::string& out) {
  auto prof = solve_profile(n);
  auto p = build_pade(q);
  auto os = open_out(out);
  write_params(os, "profile-error",
               {{"q", std::to_string(q)}, {"n", std::to_string(n)}});
  os << "r,rel_error\n";
  for (std::size_t i = 1; i < prof.r.size(); ++i) {
    const double rn = prof.g[i] * prof.g[i];
    os << g17(prof.r[i]) << ','
       << g17(std::abs(eval_rho(p, prof.r[i]) - rn) / rn) << '\n';
  }
  return 0;
}

// -------------------------------------------------------------------- grid
int cmd_grid(double L, double hmin, double mean, const std::string& out) {
  auto g = build_geometric(L, hmin, mean);
  auto os = open_out(out);
  write_params(os, "grid",
               {{"L", g17(L)},
                {"hmin", g17(hmin)},
                {"mean", g17(mean)},
                {"delta", g17(g.delta)},
                {"K", g17(g.ratio_K)}});
  os << "i,x,h,w\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double h = i + 1 < g.size() ? g.h[i] : 0.0;
    os << i << ',' << g17(g.x[i]) << ',' << g17(h) << ',' << g17(g.w[i])
       << '\n';
  }
  return 0;
}

// -------------------------------------------------------------- regularity
int cmd_regularity(std::size_t mref, std::vector<std::size_t> mlist, double L,
                   const std::string& out) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<RegularityParams> params = {{10.0, 5.0, 0},
                                                {1.0, 5.0, 0},
                                                {10.0, inf, 0},
                                                {10.0, 5.0, 1},
                                                {1.0, inf, 1}};
  auto rows = truncation_study(params, mlist, mref, L);
  auto os = open_out(out);
  std::ostringstream ml;
  for (std::size_t i = 0; i < mlist.size(); ++i)
    ml << (i ? ";" : "") << mlist[i];
  write_params(os, "regularity",
               {{"mref", std::to_string(mref)}, {"mlist", ml.str()},
                {"L", g17(L)}});
  os << "q,ell,c,M,l2_error\n";
  for (const auto& row : rows) {
    if (row.m == mref) continue;  // reference row is trivially zero
    os << g17(row.params.q) << ',' << ell_str(row.params.ell) << ','
       << row.params.c << ',' << row.m * row.m << ',' << g17(row.l2_error)
       << '\n';
  }
  return 0;
}

// ------------------------------------------------------------- eval-points
int cmd_eval_points(const std::string& field_file,
                    const std::string& points_file, const std::string& out) {
  auto field = load_spectral_field(field_file);
  auto pts = load_points_csv(points_file);
  auto vals = eval_at_points(field, pts);
  auto os = open_out(out);
  write_params(os, "eval-points",
               {{"field", field_file}, {"points", points_file}});
  os << "x,y,re,im\n";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << g17(pts[i].x) << ',' << g17(pts[i].y) << ',' << g17(vals[i].real())
       << ',' << g17(vals[i].imag()) << '\n';
  return 0;
}

// ---------------------------------------------------------------- preserve
std::map<std::string, std::string> run_params(const RunConfig& c) {
  std::map<std::string, std::string> kv = {
      {"backend", c.backend == Backend::spectral ? "spectral" : "fd"},
      {"L", g17(c.L)},
      {"profile", c.profile},
      {"tau", g17(c.tau)},
      {"T", g17(c.T)},
      {"eval", c.eval},
      {"record", std::to_string(c.record_every)}};
  if (c.backend == Backend::spectral) {
    kv["m"] = std::to_string(c.m);
  } else {
    kv["grid"] = c.grid;
    if (c.grid == "geometric") {
      kv["hmin"] = g17(c.hmin);
      kv["mean"] = g17(c.mean);
    } else {
      kv["m"] = std::to_string(c.m);
    }
  }
  if (c.eval == "nonuniform") {
    kv["eval_hmin"] = g17(c.eval_hmin);
    kv["eval_mean"] = g17(c.eval_mean);
  }
  std::ostringstream d;
  for (std::size_t i = 0; i < c.disks.size(); ++i)
    d << (i ? ";" : "") << g17(c.disks[i]);
  kv["disks"] = d.str();
  return kv;
}

void write_run_csv(std::ofstream& os, const RunConfig& cfg,
                   const RunResult& res) {
  os << "t,R,rel_error,mass,energy\n";
  for (const auto& rec : res.records)
    for (std::size_t d = 0; d < cfg.disks.size(); ++d)
      os << g17(rec.t) << ',' << g17(cfg.disks[d]) << ','
         << g17(rec.disk_errors[d]) << ',' << g17(rec.mass) << ','
         << g17(rec.energy) << '\n';
}

int cmd_preserve(RunConfig cfg, const std::string& out,
                 const std::string& save_field) {
  if (!save_field.empty() && cfg.backend != Backend::spectral)
    throw std::invalid_argument("--save-field requires the spectral backend");
  cfg.keep_final_state = !save_field.empty();
  auto res = run_preservation(cfg);
  auto os = open_out(out);
  write_params(os, "preserve", run_params(cfg));
  write_run_csv(os, cfg, res);
  if (!save_field.empty())
    save_spectral_field(analyze(res.final_state), save_field);
  return 0;
}

// -------------------------------------------------------------- resolution
int cmd_resolution(std::vector<std::size_t> mlist, double tau0, double T,
                   double L, const std::string& out) {
  auto os = open_out(out);
  std::ostringstream ml;
  for (std::size_t i = 0; i < mlist.size(); ++i)
    ml << (i ? ";" : "") << mlist[i];
  write_params(os, "resolution",
               {{"mlist", ml.str()}, {"tau0", g17(tau0)}, {"T", g17(T)},
                {"L", g17(L)}});
  os << "m,tau,t,R,rel_error\n";
  const std::size_t m0 = mlist.front();
  for (std::size_t m : mlist) {
    RunConfig cfg;
    cfg.backend = Backend::spectral;
    cfg.m = m;
    cfg.L = L;
    cfg.profile = "pade4";
    cfg.tau = tau0 * double(m0) / double(m);  // steps scale with modes
    cfg.T = T;
    cfg.disks = {2.0, 10.0};
    cfg.with_energy = false;
    auto res = run_preservation(cfg);
    for (const auto& rec : res.records)
      for (std::size_t d = 0; d < cfg.disks.size(); ++d)
        os << m << ',' << g17(cfg.tau) << ',' << g17(rec.t) << ','
           << g17(cfg.disks[d]) << ',' << g17(rec.disk_errors[d]) << '\n';
  }
  return 0;
}

// --------------------------------------------------------- nonuniform-eval
int cmd_nonuniform_eval(std::vector<double> hmins, double mean, std::size_t m,
                        double L, const std::string& out) {
  auto os = open_out(out);
  std::ostringstream hl;
  for (std::size_t i = 0; i < hmins.size(); ++i)
    hl << (i ? ";" : "") << g17(hmins[i]);
  write_params(os, "nonuniform-eval",
               {{"hmins", hl.str()}, {"mean", g17(mean)},
                {"m", std::to_string(m)}, {"L", g17(L)}});
  os << "hmin,t,R,rel_error\n";
  for (double hmin : hmins) {
    RunConfig cfg;
    cfg.backend = Backend::spectral;
    cfg.m = m;
    cfg.L = L;
    cfg.profile = "pade4";
    cfg.tau = 0.01;
    cfg.T = 10.0;
    cfg.disks = {2.0, 5.0, 10.0, 20.0, 29.0};
    cfg.eval = "nonuniform";
    cfg.eval_hmin = hmin;
    cfg.eval_mean = mean;
    cfg.with_energy = false;
    auto res = run_preservation(cfg);
    for (const auto& rec : res.records)
      for (std::size_t d = 0; d < cfg.disks.size(); ++d)
        os << g17(hmin) << ',' << g17(rec.t) << ',' << g17(cfg.disks[d]) << ','
           << g17(rec.disk_errors[d]) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady quantum-vortex preservation studies for the "
               "Gross-Pitaevskii equation"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker thread cap")
      ->capture_default_str();
  app.set_config("--config", "", "flat key=value configuration file");

  // profile
  auto* sp = app.add_subcommand("profile", "Pade density profile table");
  int q = 4;
  double rmax = 20.0;
  std::size_t pn = 400;
  std::string out;
  sp->add_option("--q", q, "order")->check(CLI::Range(2, 4))->required();
  sp->add_option("--rmax", rmax, "largest radius");
  sp->add_option("--n", pn, "rows")->check(CLI::Range(std::size_t(2), std::size_t(10000000)));
  sp->add_option("--out", out, "output CSV")->required();

  // bvp
  auto* sb = app.add_subcommand("bvp", "numerical profile solve");
  std::size_t bn = 5000;
  std::string bout;
  sb->add_option("--n", bn, "subdivisions")->required();
  sb->add_option("--out", bout, "output CSV")->required();

  // profile-error
  auto* se = app.add_subcommand("profile-error",
                                "relative error of a Pade profile vs the "
                                "numerical solution");
  int eq = 4;
  std::size_t en = 5000;
  std::string eout;
  se->add_option("--q", eq, "order")->check(CLI::Range(2, 4))->required();
  se->add_option("--n", en, "subdivisions");
  se->add_option("--out", eout, "output CSV")->required();

  // grid
  auto* sg = app.add_subcommand("grid", "geometric grid table");
  double gL = 20.0, ghmin = 0.05, gmean = 0.2;
  std::string gout;
  sg->add_option("--L", gL, "half-width")->required();
  sg->add_option("--hmin", ghmin, "core step")->required();
  sg->add_option("--mean", gmean, "mean step")->required();
  sg->add_option("--out", gout, "output CSV")->required();

  // regularity
  auto* sr = app.add_subcommand("regularity", "Fourier truncation study");
  std::size_t mref = 1024;
  std::vector<std::size_t> mlist = {16, 32, 64, 128, 256};
  double rL = 20.0;
  std::string rout;
  sr->add_option("--mref", mref, "reference modes per axis");
  sr->add_option("--mlist", mlist, "modes per axis to test")->delimiter(',');
  sr->add_option("--L", rL, "half-width");
  sr->add_option("--out", rout, "output CSV")->required();

  // eval-points
  auto* sv = app.add_subcommand("eval-points",
                                "evaluate a saved spectral field at points");
  std::string vfield, vpoints, vout;
  sv->add_option("--field", vfield, "field file")->required();
  sv->add_option("--points", vpoints, "points CSV")->required();
  sv->add_option("--out", vout, "output CSV")->required();

  // preserve
  auto* su = app.add_subcommand("preserve", "steady-vortex preservation run");
  RunConfig cfg;
  std::string backend = "spectral", uout, save_field;
  bool no_energy = false;
  su->add_option("--backend", backend, "spectral | fd")
      ->check(CLI::IsMember({"spectral", "fd"}));
  su->add_option("--m", cfg.m,
                 "spectral: modes per mirrored axis; fd uniform: points");
  su->add_option("--L", cfg.L, "half-width");
  su->add_option("--grid", cfg.grid, "fd grid: uniform | geometric")
      ->check(CLI::IsMember({"uniform", "geometric"}));
  su->add_option("--hmin", cfg.hmin, "fd geometric core step");
  su->add_option("--mean", cfg.mean, "fd geometric mean step");
  su->add_option("--profile", cfg.profile, "pade2|pade3|pade4|num");
  su->add_option("--bvp-n", cfg.bvp_n, "subdivisions for profile=num");
  su->add_option("--tau", cfg.tau, "time step");
  su->add_option("--T", cfg.T, "final time");
  su->add_option("--disks", cfg.disks, "disk radii")->delimiter(',');
  su->add_option("--eval", cfg.eval, "grid | nonuniform")
      ->check(CLI::IsMember({"grid", "nonuniform"}));
  su->add_option("--eval-hmin", cfg.eval_hmin, "evaluation grid core step");
  su->add_option("--eval-mean", cfg.eval_mean, "evaluation grid mean step");
  su->add_option("--record", cfg.record_every, "record every k-th step");
  su->add_flag("--no-energy", no_energy, "skip the energy diagnostic");
  su->add_option("--out", uout, "output CSV")->required();
  su->add_option("--save-field", save_field,
                 "write the final spectral state to this file");

  // resolution
  auto* ss = app.add_subcommand("resolution",
                                "error vs mode count at proportional steps");
  std::vector<std::size_t> rmlist = {100, 200, 400};
  double tau0 = 0.04, rT = 10.0, resL = 20.0;
  std::string sout;
  ss->add_option("--mlist", rmlist, "mirrored modes per axis")->delimiter(',');
  ss->add_option("--tau0", tau0, "time step at the first entry of mlist");
  ss->add_option("--T", rT, "final time");
  ss->add_option("--L", resL, "half-width");
  ss->add_option("--out", sout, "output CSV")->required();

  // nonuniform-eval
  auto* sn = app.add_subcommand("nonuniform-eval",
                                "spectral run evaluated on geometric grids");
  std::vector<double> hmins = {0.05, 0.1, 0.2};
  double nmean = 0.4, nL = 20.0;
  std::size_t nm = 200;
  std::string nout;
  sn->add_option("--hmins", hmins, "evaluation grid core steps")
      ->delimiter(',');
  sn->add_option("--mean", nmean, "evaluation grid mean step");
  sn->add_option("--m", nm, "mirrored modes per axis");
  sn->add_option("--L", nL, "half-width");
  sn->add_option("--out", nout, "output CSV")->required();

  // verify
  auto* sy = app.add_subcommand("verify", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    set_threads(threads);
    if (*sp) return cmd_profile(q, rmax, pn, out);
    if (*sb) return cmd_bvp(bn, bout);
    if (*se) return cmd_profile_error(eq, en, eout);
    if (*sg) return cmd_grid(gL, ghmin, gmean, gout);
    if (*sr) return cmd_regularity(mref, mlist, rL, rout);
    if (*sv) return cmd_eval_points(vfield, vpoints, vout);
    if (*su) {
      cfg.backend = backend == "fd" ? Backend::fd : Backend::spectral;
      cfg.with_energy = !no_energy;
      return cmd_preserve(cfg, uout, save_field);
    }
    if (*ss) return cmd_resolution(rmlist, tau0, rT, resL, sout);
    if (*sn) return cmd_nonuniform_eval(hmins, nmean, nm, nL, nout);
    if (*sy) {
      gpev::acceptance::Options aopts;
      aopts.log = &std::cout;
      auto results = gpev::acceptance::run_all(aopts);
      std::cout << "\n";
      gpev::acceptance::print_table(results, std::cout);
      return gpev::acceptance::all_passed(results) ? 0 : 3;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
