#pragma once

#include <string>
#include <vector>

#include "gpev/spectral.hpp"

namespace gpev {

/// Shortest fixed formatting that round-trips doubles (%.17g).
std::string g17(double v);

/// Text field file: a two-line header recording L and m, then one
/// "re,im" row per mode in FFT row-major order.
void save_spectral_field(const SpectralField& s, const std::string& path);
SpectralField load_spectral_field(const std::string& path);

/// CSV with an x,y header row; '#' lines ignored.
std::vector<Point> load_points_csv(const std::string& path);

}  // namespace gpev
