#include "qhofer/hofer.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qhofer {

namespace {

int even_intervals(int quad_points) {
  if (quad_points < 16) throw std::invalid_argument("radial_mean needs at least 16 quadrature points");
  return quad_points % 2 == 0 ? quad_points : quad_points + 1;
}

double simpson_weight(int i, int n) {
  if (i == 0 || i == n) return 1.0;
  return i % 2 == 1 ? 4.0 : 2.0;
}

}  // namespace

RadialHamiltonian RadialHamiltonian::blowup_rotation(const Rational& a_squared, double c) {
  return {Affine{std::numbers::pi * c, -std::numbers::pi}, a_squared};
}

double RadialHamiltonian::operator()(double s) const {
  if (const auto* affine = std::get_if<Affine>(&profile)) return affine->constant + affine->slope * s;
  const auto& v = std::get<Sampled>(profile).values;
  if (v.size() < 2) throw std::invalid_argument("sampled radial profile needs at least 2 values");
  double t = (s - lower()) / (upper() - lower()) * static_cast<double>(v.size() - 1);
  t = std::clamp(t, 0.0, static_cast<double>(v.size() - 1));
  auto i = std::min(static_cast<std::size_t>(t), v.size() - 2);
  double frac = t - static_cast<double>(i);
  return v[i] * (1 - frac) + v[i + 1] * frac;
}

double radial_mean_serial(const RadialHamiltonian& h, int quad_points) {
  const int n = even_intervals(quad_points);
  const double lo = h.lower(), step = (h.upper() - lo) / n;
  double num = 0, den = 0;
  for (int i = 0; i <= n; ++i) {
    double s = lo + i * step, w = simpson_weight(i, n) * s;
    num += w * h(s);
    den += w;
  }
  return num / den;
}

double radial_mean(const RadialHamiltonian& h, int quad_points) {
  const int n = even_intervals(quad_points);
  const double lo = h.lower(), step = (h.upper() - lo) / n;
  double num = 0, den = 0;
#pragma omp parallel for schedule(static) reduction(+ : num, den)
  for (int i = 0; i <= n; ++i) {
    double s = lo + i * step, w = simpson_weight(i, n) * s;
    num += w * h(s);
    den += w;
  }
  return num / den;
}

Lengths lengths_blowup_loop(int k, const Rational& a_squared, int quad_points) {
  if (a_squared <= 0 || a_squared >= 1) throw std::invalid_argument("a^2 must lie in (0, 1)");
  const double lo = to_double(a_squared);
  if (k == 2) {
    // Generator -pi s, normalized by subtracting its mean.
    RadialHamiltonian generator{RadialHamiltonian::Affine{0.0, -std::numbers::pi}, a_squared};
    double mean = radial_mean(generator, quad_points);
    double hi = std::max(generator(lo), generator(1.0)), low = std::min(generator(lo), generator(1.0));
    return {hi - mean, mean - low};
  }
  if (k == 1) {
    // K = -pi |z1|^2 = -pi s u with u = |z1|^2/s uniform on [0, 1] over each
    // sphere. Tensor Simpson in (s, u) for the mean, grid nodes for extrema.
    const int n = even_intervals(quad_points);
    const int m = even_intervals(std::max(16, quad_points / 100));
    const double s_step = (1.0 - lo) / n, u_step = 1.0 / m;
    auto hamiltonian = [](double s, double u) { return -std::numbers::pi * s * u; };
    double num = 0, den = 0, hi = -INFINITY, low = INFINITY;
#pragma omp parallel for schedule(static) reduction(+ : num, den) reduction(max : hi) reduction(min : low)
    for (int i = 0; i <= n; ++i) {
      double s = lo + i * s_step;
      for (int j = 0; j <= m; ++j) {
        double u = j * u_step, value = hamiltonian(s, u);
        double w = simpson_weight(i, n) * simpson_weight(j, m) * s;
        num += w * value;
        den += w;
        hi = std::max(hi, value);
        low = std::min(low, value);
      }
    }
    double mean = num / den;
    return {hi - mean, mean - low};
  }
  throw std::invalid_argument("lengths_blowup_loop supports k = 1 or k = 2");
}

void SampledPath::check() const {
  if (values.size() < 2) throw std::invalid_argument("sampled path needs at least 2 time slices");
  const std::size_t n = values.front().size();
  if (n < 2) throw std::invalid_argument("sampled path needs at least 2 sample points");
  for (const auto& row : values)
    if (row.size() != n) throw std::invalid_argument("sampled path rows have different lengths");
  if (!(time_step > 0)) throw std::invalid_argument("time step must be positive");
  if (!weights.empty()) {
    if (weights.size() != n) throw std::invalid_argument("weights row length does not match sample points");
    double total = 0;
    for (double w : weights) {
      if (w < 0) throw std::invalid_argument("weights must be nonnegative");
      total += w;
    }
    if (!(total > 0)) throw std::invalid_argument("weights must not all vanish");
  }
}

namespace {

struct SliceStats {
  double max, mean, min;
};

SliceStats slice_stats(const SampledPath& path, std::size_t t) {
  const auto& row = path.values[t];
  double mx = row.front(), mn = row.front(), num = 0, den = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    double w = path.weights.empty() ? 1.0 : path.weights[j];
    mx = std::max(mx, row[j]);
    mn = std::min(mn, row[j]);
    num += w * row[j];
    den += w;
  }
  // The weighted mean may round just outside [min, max].
  double mean = std::clamp(num / den, mn, mx);
  return {mx, mean, mn};
}

double trapezoid_weight(std::size_t t, std::size_t slices, double dt) {
  return (t == 0 || t + 1 == slices) ? dt / 2 : dt;
}

}  // namespace

Lengths path_lengths_serial(const SampledPath& path) {
  path.check();
  Lengths out;
  for (std::size_t t = 0; t < path.slices(); ++t) {
    SliceStats s = slice_stats(path, t);
    double w = trapezoid_weight(t, path.slices(), path.time_step);
    out.plus += w * (s.max - s.mean);
    out.minus += w * (s.mean - s.min);
  }
  return out;
}

Lengths path_lengths(const SampledPath& path) {
  path.check();
  double plus = 0, minus = 0;
  const auto slices = static_cast<long>(path.slices());
#pragma omp parallel for schedule(static) reduction(+ : plus, minus)
  for (long t = 0; t < slices; ++t) {
    SliceStats s = slice_stats(path, static_cast<std::size_t>(t));
    double w = trapezoid_weight(static_cast<std::size_t>(t), path.slices(), path.time_step);
    plus += w * (s.max - s.mean);
    minus += w * (s.mean - s.min);
  }
  return {plus, minus};
}

namespace {

bool attains(double value, double extreme) { return std::abs(value - extreme) <= 1e-12 * (1.0 + std::abs(extreme)); }

WindowWitness check_window(const SampledPath& path, std::size_t start, std::size_t end) {
  const std::size_t n = path.points();
  std::vector<char> max_ok(n, 1), min_ok(n, 1);
  for (std::size_t t = start; t <= end; ++t) {
    const auto& row = path.values[t];
    double mx = *std::max_element(row.begin(), row.end());
    double mn = *std::min_element(row.begin(), row.end());
    for (std::size_t j = 0; j < n; ++j) {
      max_ok[j] = max_ok[j] && attains(row[j], mx);
      min_ok[j] = min_ok[j] && attains(row[j], mn);
    }
  }
  WindowWitness w{start, end, std::nullopt, std::nullopt};
  auto first = [](const std::vector<char>& ok) -> std::optional<std::size_t> {
    auto it = std::find(ok.begin(), ok.end(), 1);
    if (it == ok.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ok.begin());
  };
  w.max_point = first(max_ok);
  w.min_point = first(min_ok);
  return w;
}

ExtremumReport summarize(std::size_t window, std::vector<WindowWitness> windows) {
  ExtremumReport r;
  r.window = window;
  r.has_fixed_max_each_moment = std::all_of(windows.begin(), windows.end(), [](const auto& w) { return w.max_point.has_value(); });
  r.has_fixed_min_each_moment = std::all_of(windows.begin(), windows.end(), [](const auto& w) { return w.min_point.has_value(); });
  r.windows = std::move(windows);
  return r;
}

std::size_t effective_window(const SampledPath& path, std::size_t window) {
  if (window < 1) throw std::invalid_argument("window must be at least 1");
  return std::min(window, path.slices());
}

}  // namespace

ExtremumReport fixed_extremum_check_serial(const SampledPath& path, std::size_t window) {
  path.check();
  const std::size_t w = effective_window(path, window);
  std::vector<WindowWitness> windows;
  for (std::size_t start = 0; start + w <= path.slices(); ++start) windows.push_back(check_window(path, start, start + w - 1));
  return summarize(window, std::move(windows));
}

ExtremumReport fixed_extremum_check(const SampledPath& path, std::size_t window) {
  path.check();
  const std::size_t w = effective_window(path, window);
  const auto count = static_cast<long>(path.slices() - w + 1);
  std::vector<WindowWitness> windows(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
  for (long start = 0; start < count; ++start) {
    auto s = static_cast<std::size_t>(start);
    windows[s] = check_window(path, s, s + w - 1);
  }
  return summarize(window, std::move(windows));
}

nlohmann::json to_json(const ExtremumReport& report) {
  using nlohmann::json;
  json windows = json::array();
  for (const auto& w : report.windows) {
    json entry{{"start", w.start}, {"end", w.end}};
    entry["max_witness"] = w.max_point ? json(*w.max_point) : json(nullptr);
    entry["min_witness"] = w.min_point ? json(*w.min_point) : json(nullptr);
    windows.push_back(entry);
  }
  return json{{"window", report.window},
              {"has_fixed_max_each_moment", report.has_fixed_max_each_moment},
              {"has_fixed_min_each_moment", report.has_fixed_min_each_moment},
              {"geodesic_criterion", report.geodesic_criterion()},
              {"windows", windows}};
}

nlohmann::json to_json(const Lengths& lengths) {
  return {{"Lplus", lengths.plus}, {"Lminus", lengths.minus}, {"L", lengths.total()}};
}

namespace {

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

double parse_double(const std::string& cell, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(cell, &used);
    if (used == cell.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(line_no) + ": not a number \"" + cell + "\"", line_no);
}

}  // namespace

SampledPath read_path_csv(std::istream& in, const std::string& label) {
  SampledPath path;
  path.label = label;
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    auto cells = split_cells(line);
    if (cells.empty() || (cells.size() == 1 && cells[0].empty()) || (!cells[0].empty() && cells[0][0] == '#')) continue;
    if (first_row && cells[0] == "weights") {
      for (std::size_t i = 1; i < cells.size(); ++i) path.weights.push_back(parse_double(cells[i], line_no));
      first_row = false;
      continue;
    }
    first_row = false;
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c, line_no));
    path.values.push_back(std::move(row));
  }
  if (path.values.size() >= 2) path.time_step = 1.0 / static_cast<double>(path.values.size() - 1);
  path.check();
  return path;
}

SampledPath load_path_csv(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::runtime_error("cannot open " + filename);
  return read_path_csv(in, filename);
}

SampledPath sample_radial(const RadialHamiltonian& h, std::size_t slices, std::size_t points) {
  if (slices < 2 || points < 2) throw std::invalid_argument("sample_radial needs at least 2 slices and 2 points");
  std::vector<double> row(points), radii(points);
  for (std::size_t j = 0; j < points; ++j) {
    radii[j] = h.lower() + (h.upper() - h.lower()) * static_cast<double>(j) / static_cast<double>(points - 1);
    row[j] = h(radii[j]);
  }
  SampledPath path;
  path.values.assign(slices, row);
  path.weights = radii;  // density s ds
  path.time_step = 1.0 / static_cast<double>(slices - 1);
  path.label = "radial";
  return path;
}

}  // namespace qhofer
