#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnaga {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tabulated CDF: sorted grid (dB) with nondecreasing probabilities; linear
// interpolation inside, clamped to the end probabilities outside.
struct CdfCurve {
  std::vector<double> grid;
  std::vector<double> probs;

  double eval(double x) const {
    if (grid.empty()) throw std::logic_error("CdfCurve: empty");
    if (x <= grid.front()) return probs.front();
    if (x >= grid.back()) return probs.back();
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return probs[i - 1] + t * (probs[i] - probs[i - 1]);
  }

  bool valid() const {
    if (grid.size() != probs.size() || grid.empty()) return false;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] < -1e-12 || probs[i] > 1.0 + 1e-12) return false;
      if (i && (grid[i] <= grid[i - 1] || probs[i] < probs[i - 1] - 1e-12)) return false;
    }
    return true;
  }
};

struct EmpiricalCdf {
  std::vector<double> samples;  // sorted ascending

  explicit EmpiricalCdf(std::vector<double> s = {}) : samples(std::move(s)) {
    std::sort(samples.begin(), samples.end());
  }

  std::size_t size() const { return samples.size(); }

  double eval(double x) const {
    auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
  }

  double quantile(double p) const {
    if (samples.empty()) throw std::logic_error("EmpiricalCdf: empty");
    double pos = p * static_cast<double>(samples.size() - 1);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= samples.size()) return samples.back();
    double t = pos - static_cast<double>(i);
    return samples[i] + t * (samples[i + 1] - samples[i]);
  }
};

// Two-sided KS statistic between an empirical sample and an analytic curve.
inline double ks_distance(const EmpiricalCdf& emp, const CdfCurve& analytic) {
  std::size_t n = emp.size();
  if (n == 0) throw std::invalid_argument("ks_distance: empty sample set");
  double n_inv = 1.0 / static_cast<double>(n);
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = analytic.eval(emp.samples[i]);
    double lo = f - static_cast<double>(i) * n_inv;
    double hi = static_cast<double>(i + 1) * n_inv - f;
    ks = std::max({ks, lo, hi});
  }
  return ks;
}

inline double max_cdf_deviation(const CdfCurve& a, const EmpiricalCdf& emp) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.grid.size(); ++i)
    dev = std::max(dev, std::fabs(a.probs[i] - emp.eval(a.grid[i])));
  return dev;
}

inline std::string format_sig15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline void write_cdf_csv(const CdfCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "value_db,cdf\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    out << format_sig15(curve.grid[i]) << ',' << format_sig15(curve.probs[i]) << '\n';
}

inline void write_empirical_cdf_csv(const EmpiricalCdf& emp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "value_db,cdf\n";
  double n = static_cast<double>(emp.size());
  for (std::size_t i = 0; i < emp.size(); ++i)
    out << format_sig15(emp.samples[i]) << ',' << format_sig15(static_cast<double>(i + 1) / n) << '\n';
}

inline CdfCurve read_cdf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  CdfCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw IoError(path + ": malformed CSV row: " + line);
    try {
      curve.grid.push_back(std::stod(a));
      curve.probs.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw IoError(path + ": non-numeric CSV row: " + line);
    }
  }
  if (curve.grid.empty()) throw IoError(path + ": no data rows");
  return curve;
}

}  // namespace dnaga
