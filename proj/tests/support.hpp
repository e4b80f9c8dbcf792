#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "vformation/analysis.hpp"

namespace testing_support {

inline std::filesystem::path source_dir() { return VFORMATION_SOURCE_DIR; }
inline std::filesystem::path base_config() { return source_dir() / "configs" / "base_v.cfg"; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vformation_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Baseline V with a coarse lattice, for tests that only need trends.
inline vform::FormationLayout coarse_v_layout(int n_span = 12, int n_chord = 3) {
  auto layout = vform::baseline_v_layout();
  for (auto& m : layout.members) {
    m.wing.n_span = n_span;
    m.wing.n_chord = n_chord;
  }
  return layout;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Zero-lift angle of a thin cambered section (rad), by midpoint quadrature
// of -(1/pi) * integral of dz/dx (cos t - 1) dt, with x = (1 - cos t) / 2 and
// the camber slope written out independently of the library.
inline double thin_airfoil_zero_lift_angle(double m, double p, int n = 200000) {
  double sum = 0.0;
  const double h = std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * h;
    const double x = 0.5 * (1.0 - std::cos(t));
    const double slope = x < p ? 2.0 * m / (p * p) * (p - x) : 2.0 * m / ((1 - p) * (1 - p)) * (p - x);
    sum += slope * (std::cos(t) - 1.0) * h;
  }
  return -sum / std::numbers::pi;
}

}  // namespace testing_support
