#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gpev/io.hpp"

using namespace gpev;

namespace {

struct TempPath {
  std::string path;
  explicit TempPath(const std::string& name)
      : path(std::string("/tmp/gpev_io_") + name) {}
  ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("g17 round-trips doubles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double v = d(rng) * std::pow(10.0, int(rng() % 30) - 15);
    CHECK(std::stod(g17(v)) == v);
  }
  CHECK(g17(0.0) == "0");
}

TEST_CASE("spectral field files round-trip bit-exactly") {
  SpectralField s;
  s.m = 6;
  s.L = 20.0;
  s.modes.resize(144);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (auto& c : s.modes) c = {d(rng), d(rng)};

  TempPath tp("field.txt");
  save_spectral_field(s, tp.path);
  auto back = load_spectral_field(tp.path);
  CHECK(back.m == s.m);
  CHECK(back.L == s.L);
  REQUIRE(back.modes.size() == s.modes.size());
  for (std::size_t i = 0; i < s.modes.size(); ++i)
    CHECK(back.modes[i] == s.modes[i]);

  CHECK_THROWS(load_spectral_field("/nonexistent/field.txt"));
  TempPath bad("bad.txt");
  std::ofstream(bad.path) << "not a field file\n";
  CHECK_THROWS(load_spectral_field(bad.path));
}

TEST_CASE("points csv accepts headers and comments") {
  TempPath tp("points.csv");
  std::ofstream(tp.path) << "# produced by hand\nx,y\n1.5,-2\n0,3.25\n";
  auto pts = load_points_csv(tp.path);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].x == 1.5);
  CHECK(pts[0].y == -2.0);
  CHECK(pts[1].x == 0.0);
  CHECK(pts[1].y == 3.25);

  TempPath empty("empty.csv");
  std::ofstream(empty.path) << "x,y\n";
  CHECK_THROWS(load_points_csv(empty.path));
}

}  // TEST_SUITE
