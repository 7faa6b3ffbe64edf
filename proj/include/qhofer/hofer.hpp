#pragma once

// Hofer length functionals for sampled Hamiltonian paths and the explicit
// circle-action Hamiltonians on the one-point blow-up of CP^2, realized as
// the shell a^2 <= |z1|^2 + |z2|^2 <= 1 in C^2.

#include "qhofer/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qhofer {

/// Function of s = |z1|^2 + |z2|^2 on [a^2, 1].
struct RadialHamiltonian {
  /// H(s) = constant + slope * s
  struct Affine {
    double constant = 0;
    double slope = 0;
  };
  /// Values on a uniform grid over [a^2, 1], linearly interpolated.
  struct Sampled {
    std::vector<double> values;
  };

  std::variant<Affine, Sampled> profile;
  Rational a_squared;

  /// pi (c - s), the normalized generator of the loop 2*alpha when c is the mean of s.
  static RadialHamiltonian blowup_rotation(const Rational& a_squared, double c);

  double operator()(double s) const;
  double lower() const { return to_double(a_squared); }
  double upper() const { return 1.0; }
};

/// Mean of H for the radial measure s ds on [a^2, 1] (push-forward of the
/// Liouville volume), by composite Simpson with quad_points intervals rounded
/// up to even. Requires quad_points >= 16.
double radial_mean(const RadialHamiltonian& h, int quad_points);
double radial_mean_serial(const RadialHamiltonian& h, int quad_points);

struct Lengths {
  double plus = 0;   ///< L+ = int (max - mean) dt
  double minus = 0;  ///< L- = int (mean - min) dt
  double total() const { return plus + minus; }
};

/// Lengths of the circle-action generators: k = 2 is the diagonal action
/// (H = pi(c - s)), k = 1 the action generated by K = -pi |z1|^2.
Lengths lengths_blowup_loop(int k, const Rational& a_squared, int quad_points = 10000);

/// H[t_i][x_j] on a uniform time grid.
struct SampledPath {
  std::vector<std::vector<double>> values;
  double time_step = 0;
  std::string label;
  /// Spatial weights for the mean; empty means uniform.
  std::vector<double> weights;

  std::size_t slices() const { return values.size(); }
  std::size_t points() const { return values.empty() ? 0 : values.front().size(); }
  /// Throws std::invalid_argument on ragged rows, bad weights, or a grid
  /// smaller than 2 x 2.
  void check() const;
};

/// Trapezoid rule in t of per-slice (max - mean) and (mean - min).
Lengths path_lengths(const SampledPath& path);
Lengths path_lengths_serial(const SampledPath& path);

struct WindowWitness {
  std::size_t start = 0;  ///< first time index
  std::size_t end = 0;    ///< last time index, inclusive
  std::optional<std::size_t> max_point;
  std::optional<std::size_t> min_point;
};

struct ExtremumReport {
  std::size_t window = 0;
  bool has_fixed_max_each_moment = false;
  bool has_fixed_min_each_moment = false;
  std::vector<WindowWitness> windows;
  bool geodesic_criterion() const { return has_fixed_max_each_moment && has_fixed_min_each_moment; }
};

/// For every run of `window` consecutive slices, looks for one sample point
/// attaining the spatial max (resp. min) on all of them. A window longer
/// than the path covers the whole path.
ExtremumReport fixed_extremum_check(const SampledPath& path, std::size_t window = 2);
ExtremumReport fixed_extremum_check_serial(const SampledPath& path, std::size_t window = 2);

nlohmann::json to_json(const ExtremumReport& report);
nlohmann::json to_json(const Lengths& lengths);

/// Rows are time slices, columns sample points. A first row whose first
/// cell is "weights" supplies spatial weights. Blank lines and lines
/// starting with '#' are skipped. time_step defaults to 1/(rows-1).
SampledPath read_path_csv(std::istream& in, const std::string& label = "");
SampledPath load_path_csv(const std::string& filename);

/// Autonomous path: every slice samples h at `points` uniform radii,
/// weighted by the radius.
SampledPath sample_radial(const RadialHamiltonian& h, std::size_t slices, std::size_t points);

}  // namespace qhofer
