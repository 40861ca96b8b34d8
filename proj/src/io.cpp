#include "gpev/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gpev {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_spectral_field(const SpectralField& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write field file: " + path);
  os << "# gpev spectral field v1\n";
  os << "# L=" << g17(s.L) << " m=" << s.m << "\n";
  os << "re,im\n";
  for (const auto& c : s.modes)
    os << g17(c.real()) << ',' << g17(c.imag()) << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

SpectralField load_spectral_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read field file: " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("# gpev spectral field", 0) != 0)
    throw std::runtime_error("not a gpev field file: " + path);
  SpectralField s;
  if (!std::getline(is, line) ||
      std::sscanf(line.c_str(), "# L=%lf m=%zu", &s.L, &s.m) != 2)
    throw std::runtime_error("bad field header: " + path);
  std::getline(is, line);  // column header
  const std::size_t n = 2 * s.m;
  s.modes.resize(n * n);
  for (auto& c : s.modes) {
    double re, im;
    char comma;
    if (!(is >> re >> comma >> im) || comma != ',')
      throw std::runtime_error("truncated field file: " + path);
    c = {re, im};
  }
  return s;
}

std::vector<Point> load_points_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read points file: " + path);
  std::vector<Point> pts;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // first data-ish line may be the x,y header
      header_seen = true;
      if (line.find_first_not_of("xy, \t\r") == std::string::npos) continue;
    }
    Point p;
    if (std::sscanf(line.c_str(), "%lf,%lf", &p.x, &p.y) != 2)
      throw std::runtime_error("bad points row: " + line);
    pts.push_back(p);
  }
  if (pts.empty()) throw std::runtime_error("no points in " + path);
  return pts;
}

}  // namespace gpev
